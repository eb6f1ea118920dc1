#pragma once

// Best constant-composition block schedule by dynamic programming over
// (symbols used, cumulative weight).  The recursion peels the LAST block:
//   V(N,H) = max_{n,h} V(N-n, H-h) + Pr[alive after H ones] * log_m_ccc(n,h),
// so the peeled block's survival depends only on the state's total weight.
// States with cumulative weight beyond the prune cap (survival below
// prune_tol) are dropped.

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "wearout/code_size.hpp"
#include "wearout/prob.hpp"
#include "wearout/schedule.hpp"

namespace wearout {

// Largest cumulative weight whose survival probability still clears tol;
// tol <= 0 disables pruning.
inline int damage_prune_cap(const DamageParams& dp, double tol, int n_max) {
    if (tol <= 0.0) return n_max;
    int h = 0;
    while (h < n_max && binom_cdf(dp.threshold, h + 1, dp.gamma) >= tol) ++h;
    return h;
}

struct AchievabilityResult {
    int n_max = 0;
    int h_cap = 0;
    double prune_tol = 0.0;
    std::vector<double> curve;         // [N]: best multi-block volume, bits
    std::vector<double> single_curve;  // [N]: best one-block volume, bits
    std::vector<int> best_h;           // [N]: total weight of the best plan (0 = none)
    std::vector<int> single_best_h;    // [N]: weight attaining single_curve (0 = none)

    // DP internals kept for traceback
    std::vector<double> value;              // (n_max+1)*(h_cap+1)
    std::vector<std::pair<int, int>> back;  // last block (n,h) per state
    CodeSizeTable lm;                       // log_m_ccc(n,h)
    std::vector<double> alive;              // survival after H ones, H <= h_cap

    double value_at(int n, int h) const {
        return value[static_cast<std::size_t>(n) * (h_cap + 1) + h];
    }
};

inline AchievabilityResult solve_achievability(int n_max, const DamageParams& dp,
                                               double eta, const AliveChannel& ch,
                                               double third_order = 0.0,
                                               double prune_tol = 1e-12) {
    if (n_max < 1) throw std::domain_error("solve_achievability: n_max < 1");
    if (prune_tol < 0.0 || prune_tol >= 1.0)
        throw std::domain_error("solve_achievability: prune_tol outside [0,1)");

    AchievabilityResult r;
    r.n_max = n_max;
    r.prune_tol = prune_tol;
    r.h_cap = damage_prune_cap(dp, prune_tol, n_max);
    r.lm = build_ccc_table(n_max, std::min(n_max, r.h_cap), eta, ch, third_order);
    r.alive.resize(static_cast<std::size_t>(r.h_cap) + 1);
    for (int h = 0; h <= r.h_cap; ++h)
        r.alive[static_cast<std::size_t>(h)] = binom_cdf(dp.threshold, h, dp.gamma);

    const int hs = r.h_cap + 1;
    const double ninf = -std::numeric_limits<double>::infinity();
    r.value.assign(static_cast<std::size_t>(n_max + 1) * hs, ninf);
    r.back.assign(r.value.size(), {0, 0});
    r.value[0] = 0.0;  // state (0,0)

    for (int N = 1; N <= n_max; ++N) {
        const int wlim = std::min(N, r.h_cap);
        for (int H = 1; H <= wlim; ++H) {
            double best = ninf;
            int bn = 0, bh = 0;
            const double aliveH = r.alive[static_cast<std::size_t>(H)];
            for (int n = N; n >= 1; --n) {  // ties prefer the longest last block
                const int hmax = std::min(n, H);
                const int hmin = std::max(1, H - (N - n));
                for (int h = hmax; h >= hmin; --h) {
                    const double prev =
                        r.value[static_cast<std::size_t>(N - n) * hs + (H - h)];
                    if (prev == ninf) continue;
                    const double v = prev + aliveH * r.lm.at(n, h);
                    if (v > best) {
                        best = v;
                        bn = n;
                        bh = h;
                    }
                }
            }
            r.value[static_cast<std::size_t>(N) * hs + H] = best;
            r.back[static_cast<std::size_t>(N) * hs + H] = {bn, bh};
        }
    }

    r.curve.assign(static_cast<std::size_t>(n_max) + 1, 0.0);
    r.single_curve.assign(static_cast<std::size_t>(n_max) + 1, 0.0);
    r.best_h.assign(static_cast<std::size_t>(n_max) + 1, 0);
    r.single_best_h.assign(static_cast<std::size_t>(n_max) + 1, 0);
    for (int N = 2; N <= n_max; ++N) {
        double best = ninf;
        int bH = 0;
        const int wlim = std::min(N - 1, r.h_cap);  // strictly fewer ones than symbols
        for (int H = 1; H <= wlim; ++H) {
            const double v = r.value[static_cast<std::size_t>(N) * hs + H];
            if (v > best) {
                best = v;
                bH = H;
            }
        }
        if (best > 0.0) {
            r.curve[static_cast<std::size_t>(N)] = best;
            r.best_h[static_cast<std::size_t>(N)] = bH;
        }
        double sbest = 0.0;
        int sbh = 0;
        for (int h = 1; h <= wlim; ++h) {
            const double v = r.alive[static_cast<std::size_t>(h)] * r.lm.at(N, h);
            if (v > sbest) {
                sbest = v;
                sbh = h;
            }
        }
        r.single_curve[static_cast<std::size_t>(N)] = sbest;
        r.single_best_h[static_cast<std::size_t>(N)] = sbh;
    }
    return r;
}

// Recovers the optimal block plan for a given N; expected_log_volume is
// re-accumulated from the stored tables and matches curve[N] up to roundoff.
inline Schedule traceback(const AchievabilityResult& r, int N) {
    if (N < 0 || N > r.n_max) throw std::domain_error("traceback: N out of range");
    Schedule s;
    const int H0 = r.best_h[static_cast<std::size_t>(N)];
    if (H0 == 0) return s;
    const int hs = r.h_cap + 1;
    int cn = N, cH = H0;
    std::vector<std::pair<int, int>> rev;
    while (cn != 0 || cH != 0) {
        const auto [n, h] = r.back[static_cast<std::size_t>(cn) * hs + cH];
        if (n < 1) throw std::logic_error("traceback: broken back pointer");
        rev.emplace_back(n, h);
        cn -= n;
        cH -= h;
    }
    kahan_sum vol;
    int cum = 0;
    for (auto it = rev.rbegin(); it != rev.rend(); ++it) {
        BlockPlan b;
        b.n = it->first;
        b.weight = it->second;
        cum += b.weight;
        b.log_m = r.lm.at(b.n, b.weight);
        b.alive_prob = r.alive[static_cast<std::size_t>(cum)];
        vol.add(b.alive_prob * b.log_m);
        s.total_length += b.n;
        s.blocks.push_back(b);
    }
    s.total_weight = cum;
    s.expected_log_volume = vol.get();
    return s;
}

}  // namespace wearout
