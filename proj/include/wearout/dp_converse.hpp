#pragma once

// Upper bound on the expected decodable log volume of ANY block scheme, by
// dynamic programming over (symbols used, cumulative weight budget).  Each
// peeled last block of n symbols and incremental budget k contributes
//   alive_upper(log_m_avg(n, k+1), N, W) * log_m_avg(n, k+1),
// where alive_upper bounds the average survival probability of M codewords
// of mean weight <= W sent over N symbols, via the majorization corner
// profiles of the survival envelope f_n + f_be.
//
// Two evaluation regimes:
//  - small instances (n_max <= small_exact_nmax): exact corner enumeration
//    per transition, no caching — this is the reference behavior;
//  - full sweeps: relaxed LCRC mode uniformly, memoized per 1-bit log_m
//    bucket evaluated at the bucket's lower edge (bigger 2^-log_m slack, so
//    strictly looser), envelopes read from floor-node tables (again only
//    looser), and a running minimum along each DP row restores monotonicity
//    in the weight budget.  Every substitution loosens, so the result stays
//    an upper bound.

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "wearout/code_size.hpp"
#include "wearout/dp_achievability.hpp"
#include "wearout/envelope.hpp"
#include "wearout/majorization.hpp"
#include "wearout/parallel.hpp"
#include "wearout/prob.hpp"
#include "wearout/schedule.hpp"

namespace wearout {

struct ConverseOpts {
    double exact_m_limit = 1e6;    // exact corner enumeration while 2^log_m <= this
    double exact_ops_budget = 4e6; // ... and M * (b+1) stays enumerable
    int grid_size = 4096;
    int refine_iters = 40;
    int small_exact_nmax = 16;     // solve_converse switches regimes here
    double table_step = 1.0 / 1024.0;
    int threads = 1;
};

// Upper bound on the average survival probability of M = 2^log_m codewords
// with mean weight w_star over n_total symbols; clamped into [0,1].
inline double alive_upper(double log_m, int n_total, double w_star,
                          const DamageParams& dp, const ConverseOpts& opts = {},
                          const EnvelopeTable* tab = nullptr,
                          bool force_relaxed = false) {
    if (n_total < 1) throw std::domain_error("alive_upper: n_total < 1");
    if (!(log_m >= 0.0)) throw std::domain_error("alive_upper: log_m < 0");
    if (w_star < 0.0 || w_star > n_total + 1e-9)
        throw std::domain_error("alive_upper: w_star outside [0, n_total]");
    w_star = std::min(std::max(w_star, 0.0), static_cast<double>(n_total));

    const double b = static_cast<double>(n_total);
    const double m_real = std::exp2(log_m);
    const bool exact = !force_relaxed && m_real <= opts.exact_m_limit &&
                       m_real * (b + 1.0) <= opts.exact_ops_budget;

    double p;
    if (exact) {
        const long long m = std::max<long long>(1, std::llround(m_real));
        auto fn = [&](double w) { return f_n(w, dp.threshold, dp.gamma); };
        auto fbe = [&](double w) { return f_be(w, dp.gamma); };
        const LcrcSolution en = lcrc_max_exact(fn, m, 0, b, w_star);
        const LcrcSolution eb = lcrc_max_exact(fbe, m, 0, b, w_star);
        p = (en.objective + eb.objective) / static_cast<double>(m);
    } else if (tab != nullptr) {
        auto fn = [&](double w) { return tab->fn_at(w); };
        auto fbe = [&](double w) { return tab->fbe_at(w); };
        const LcrcSolution rn =
            lcrc_max_relaxed(fn, log_m, 0, b, w_star, opts.grid_size, opts.refine_iters);
        const LcrcSolution rb =
            lcrc_max_relaxed(fbe, log_m, 0, b, w_star, opts.grid_size, opts.refine_iters);
        p = rn.objective + rb.objective;
    } else {
        auto fn = [&](double w) { return f_n(w, dp.threshold, dp.gamma); };
        auto fbe = [&](double w) { return f_be(w, dp.gamma); };
        const LcrcSolution rn =
            lcrc_max_relaxed(fn, log_m, 0, b, w_star, opts.grid_size, opts.refine_iters);
        const LcrcSolution rb =
            lcrc_max_relaxed(fbe, log_m, 0, b, w_star, opts.grid_size, opts.refine_iters);
        p = rn.objective + rb.objective;
    }
    return std::min(1.0, p);
}

namespace detail {

constexpr int kLmBuckets = 41;  // id 0: log_m == 0; id i >= 1 covers (i-1, i]

inline int lm_bucket(double lm) {
    if (lm <= 0.0) return 0;
    const int id = static_cast<int>(std::ceil(lm));
    return std::min(id, kLmBuckets - 1);
}

inline double lm_bucket_lower(int id) { return id == 0 ? 0.0 : id - 1.0; }

// Repaired alive-bound row for total length N: entry [id][W] upper-bounds
// alive_upper at every log_m in bucket id and weight budget >= W (running
// min along W gives monotonicity in the budget).
inline std::vector<double> converse_alive_row(int N, int w_lim,
                                              const DamageParams& dp,
                                              const ConverseOpts& opts,
                                              const EnvelopeTable& tab) {
    std::vector<double> row(static_cast<std::size_t>(kLmBuckets) * (w_lim + 1), 1.0);
    parallel_for(kLmBuckets - 1, opts.threads, [&](std::size_t idx) {
        const int id = static_cast<int>(idx) + 1;
        double* r = row.data() + static_cast<std::size_t>(id) * (w_lim + 1);
        double run = 1.0;
        for (int W = 0; W <= w_lim; ++W) {
            const double raw =
                W == 0 ? 1.0
                       : alive_upper(lm_bucket_lower(id), N, W, dp, opts, &tab, true);
            run = std::min(run, raw);
            r[W] = run;
        }
    });
    return row;
}

}  // namespace detail

struct ConverseResult {
    int n_max = 0;
    int w_cap = 0;
    double prune_tol = 0.0;
    bool small_exact = false;
    std::vector<double> curve;         // [N]: upper bound, bits
    std::vector<double> single_curve;  // [N]: one-block restriction
    std::vector<int> best_w;           // [N]: total budget of the arg max (0 = none)
    std::vector<int> single_best_w;    // [N]: budget attaining single_curve (0 = none)

    std::vector<double> value;              // (n_max+1)*(w_cap+1)
    std::vector<std::pair<int, int>> back;  // last block (n,k) per state
    CodeSizeTable lm;                       // log_m_avg(n, w), w up to w_cap+1
    DamageParams dp;
    ConverseOpts opts;
    EnvelopeTable tab;

    double value_at(int n, int w) const {
        return value[static_cast<std::size_t>(n) * (w_cap + 1) + w];
    }
};

inline ConverseResult solve_converse(int n_max, const DamageParams& dp, double eta,
                                     const AliveChannel& ch, double prune_tol = 1e-12,
                                     const ConverseOpts& opts = {}) {
    if (n_max < 1) throw std::domain_error("solve_converse: n_max < 1");
    if (prune_tol < 0.0 || prune_tol >= 1.0)
        throw std::domain_error("solve_converse: prune_tol outside [0,1)");

    ConverseResult r;
    r.n_max = n_max;
    r.prune_tol = prune_tol;
    r.dp = dp;
    r.opts = opts;
    r.w_cap = damage_prune_cap(dp, prune_tol, n_max);
    r.small_exact = n_max <= opts.small_exact_nmax;
    r.lm = build_avg_table(n_max, std::min(n_max, r.w_cap + 1), eta, ch);
    if (!r.small_exact)
        r.tab = EnvelopeTable(dp.threshold, dp.gamma, n_max + 2.0, opts.table_step);

    const int ws = r.w_cap + 1;
    const double ninf = -std::numeric_limits<double>::infinity();
    r.value.assign(static_cast<std::size_t>(n_max + 1) * ws, ninf);
    r.back.assign(r.value.size(), {0, 0});
    r.value[0] = 0.0;
    r.curve.assign(static_cast<std::size_t>(n_max) + 1, 0.0);
    r.single_curve.assign(static_cast<std::size_t>(n_max) + 1, 0.0);
    r.best_w.assign(static_cast<std::size_t>(n_max) + 1, 0);
    r.single_best_w.assign(static_cast<std::size_t>(n_max) + 1, 0);

    for (int N = 1; N <= n_max; ++N) {
        const int wlim = std::min(N, r.w_cap);
        std::vector<double> row;
        if (!r.small_exact)
            row = detail::converse_alive_row(N, wlim, dp, opts, r.tab);
        auto alive_at = [&](double lmv, int W) {
            if (r.small_exact) return alive_upper(lmv, N, W, dp, opts);
            return row[static_cast<std::size_t>(detail::lm_bucket(lmv)) * (wlim + 1) + W];
        };

        for (int W = 0; W <= wlim; ++W) {
            double best = ninf;
            int bn = 0, bk = 0;
            for (int n = N; n >= 1; --n) {  // ties prefer longer, then heavier
                const int kmin = std::max(0, W - (N - n));
                for (int k = W; k >= kmin; --k) {
                    const double prev =
                        r.value[static_cast<std::size_t>(N - n) * ws + (W - k)];
                    if (prev == ninf) continue;
                    const double lmv = r.lm.at(n, k + 1);
                    const double v = prev + (lmv > 0.0 ? alive_at(lmv, W) * lmv : 0.0);
                    if (v > best) {
                        best = v;
                        bn = n;
                        bk = k;
                    }
                }
            }
            r.value[static_cast<std::size_t>(N) * ws + W] = best;
            r.back[static_cast<std::size_t>(N) * ws + W] = {bn, bk};
        }

        if (N >= 2) {
            double best = ninf;
            int bW = 0;
            const int lim = std::min(N - 1, r.w_cap);
            for (int W = 1; W <= lim; ++W) {
                const double v = r.value[static_cast<std::size_t>(N) * ws + W];
                if (v > best) {
                    best = v;
                    bW = W;
                }
            }
            if (best > 0.0) {
                r.curve[static_cast<std::size_t>(N)] = best;
                r.best_w[static_cast<std::size_t>(N)] = bW;
            }
            double sbest = 0.0;
            int sbW = 0;
            for (int W = 1; W <= lim; ++W) {
                const double lmv = r.lm.at(N, W + 1);
                if (lmv <= 0.0) continue;
                const double v = alive_at(lmv, W) * lmv;
                if (v > sbest) {
                    sbest = v;
                    sbW = W;
                }
            }
            r.single_curve[static_cast<std::size_t>(N)] = sbest;
            r.single_best_w[static_cast<std::size_t>(N)] = sbW;
        }
    }
    return r;
}

// Block plan behind curve[N].  With recompute_alive the per-block survival
// bounds are re-derived through the same machinery the solver used and the
// volume re-accumulated (matches curve[N] up to roundoff); otherwise only
// the (n, k) split is filled and the stored optimum is reported.
inline Schedule traceback_converse(const ConverseResult& r, int N,
                                   bool recompute_alive = false) {
    if (N < 0 || N > r.n_max)
        throw std::domain_error("traceback_converse: N out of range");
    Schedule s;
    const int W0 = r.best_w[static_cast<std::size_t>(N)];
    if (W0 == 0) return s;
    const int ws = r.w_cap + 1;
    int cn = N, cW = W0;
    std::vector<std::pair<int, int>> rev;
    while (cn != 0 || cW != 0) {
        const auto [n, k] = r.back[static_cast<std::size_t>(cn) * ws + cW];
        if (n < 1) throw std::logic_error("traceback_converse: broken back pointer");
        rev.emplace_back(n, k);
        cn -= n;
        cW -= k;
    }
    kahan_sum vol;
    int cum_n = 0, cum_w = 0;
    for (auto it = rev.rbegin(); it != rev.rend(); ++it) {
        BlockPlan b;
        b.n = it->first;
        b.weight = it->second;
        cum_n += b.n;
        cum_w += b.weight;
        b.log_m = r.lm.at(b.n, b.weight + 1);
        if (recompute_alive && b.log_m > 0.0) {
            if (r.small_exact) {
                b.alive_prob = alive_upper(b.log_m, cum_n, cum_w, r.dp, r.opts);
            } else {
                const int wlim = std::min(cum_n, r.w_cap);
                const auto row =
                    detail::converse_alive_row(cum_n, wlim, r.dp, r.opts, r.tab);
                b.alive_prob =
                    row[static_cast<std::size_t>(detail::lm_bucket(b.log_m)) * (wlim + 1) +
                        cum_w];
            }
        }
        vol.add(b.alive_prob * b.log_m);
        s.total_length += b.n;
        s.blocks.push_back(b);
    }
    s.total_weight = cum_w;
    s.expected_log_volume = recompute_alive ? vol.get() : r.curve[static_cast<std::size_t>(N)];
    return s;
}

}  // namespace wearout
