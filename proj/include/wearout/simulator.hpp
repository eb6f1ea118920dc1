#pragma once

// Monte Carlo check of the alive-probability chain: draw the per-'1' damage
// process, count per-block survival, compare against the binomial CDF
// prediction.  Deterministic for a given (seed, trials) regardless of thread
// count: every trial owns a counter-derived RNG substream and the reductions
// are integer counts.

#include <cstdint>
#include <stdexcept>
#include <thread>
#include <vector>

#include "wearout/prob.hpp"
#include "wearout/schedule.hpp"

namespace wearout {

// SplitMix64: tiny, counter-friendly, passes BigCrush; fine for Bernoulli
// survival draws.
struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t s) : state(s) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
    double next_unit() { return (next() >> 11) * 0x1.0p-53; }
};

inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) {
    // two finalizer rounds spread (seed, index) into well-separated states
    SplitMix64 g(seed ^ (index * 0xD1B54A32D192ED03ULL + 0x8CB92BA72F3D8DD7ULL));
    g.next();
    return g.next();
}

struct SimResult {
    long long trials = 0;
    std::uint64_t seed = 0;
    std::vector<long long> alive_counts;       // per block
    std::vector<double> alive_fraction;        // counts / trials
    std::vector<double> predicted_alive;       // binomial CDF chain
    std::vector<double> ci_half_width;         // 4-sigma normal approx
    double empirical_log_volume = 0.0;         // sum fraction_j * log_m_j
};

inline SimResult simulate_schedule(const Schedule& sched, const DamageParams& dp,
                                   long long trials, std::uint64_t seed,
                                   int threads = 1) {
    if (trials < 1) throw std::domain_error("simulate_schedule: trials < 1");
    if (sched.blocks.empty()) throw std::domain_error("simulate_schedule: empty schedule");
    const std::size_t m = sched.blocks.size();

    auto run_range = [&](long long lo, long long hi, std::vector<long long>& counts) {
        counts.assign(m, 0);
        for (long long t = lo; t < hi; ++t) {
            SplitMix64 g(substream_seed(seed, static_cast<std::uint64_t>(t)));
            int damage = 0;
            bool dead = false;
            for (std::size_t j = 0; j < m && !dead; ++j) {
                for (int i = 0; i < sched.blocks[j].weight; ++i) {
                    if (g.next_unit() < dp.gamma && ++damage > dp.threshold) {
                        dead = true;
                        break;
                    }
                }
                if (!dead) ++counts[j];
            }
        }
    };

    std::vector<long long> total(m, 0);
    if (threads <= 1) {
        run_range(0, trials, total);
    } else {
        const int nt = threads;
        std::vector<std::vector<long long>> parts(static_cast<std::size_t>(nt));
        std::vector<std::thread> pool;
        const long long chunk = (trials + nt - 1) / nt;
        for (int i = 0; i < nt; ++i) {
            const long long lo = i * chunk;
            const long long hi = std::min(trials, lo + chunk);
            pool.emplace_back([&, i, lo, hi] {
                run_range(lo, std::max(lo, hi), parts[static_cast<std::size_t>(i)]);
            });
        }
        for (auto& th : pool) th.join();
        for (const auto& p : parts)
            for (std::size_t j = 0; j < m; ++j) total[j] += p[j];
    }

    SimResult r;
    r.trials = trials;
    r.seed = seed;
    r.alive_counts = total;
    r.alive_fraction.resize(m);
    r.predicted_alive.resize(m);
    r.ci_half_width.resize(m);
    kahan_sum vol;
    int cum = 0;
    for (std::size_t j = 0; j < m; ++j) {
        cum += sched.blocks[j].weight;
        r.alive_fraction[j] = static_cast<double>(total[j]) / trials;
        r.predicted_alive[j] = binom_cdf(dp.threshold, cum, dp.gamma);
        const double p = r.predicted_alive[j];
        r.ci_half_width[j] = 4.0 * std::sqrt(p * (1.0 - p) / trials);
        vol.add(r.alive_fraction[j] * sched.blocks[j].log_m);
    }
    r.empirical_log_volume = vol.get();
    return r;
}

// Splitting a weight budget across two rounds never changes overall
// survival: sum_d Pr[Bin(w1)=d] Pr[Bin(w2) <= S-d] == Pr[Bin(w1+w2) <= S].
struct FeedbackIdentity {
    double lhs = 0.0, rhs = 0.0;
    double gap() const { return lhs > rhs ? lhs - rhs : rhs - lhs; }
};

inline FeedbackIdentity feedback_identity(int w1, int w2, int s, double gamma) {
    if (w1 < 0 || w2 < 0 || s < 0)
        throw std::domain_error("feedback_identity: negative argument");
    FeedbackIdentity out;
    kahan_sum lhs;
    for (int d = 0; d <= s; ++d)
        lhs.add(binom_pmf(d, w1, gamma) * binom_cdf(s - d, w2, gamma));
    out.lhs = lhs.get();
    out.rhs = binom_cdf(s, w1 + w2, gamma);
    return out;
}

}  // namespace wearout
