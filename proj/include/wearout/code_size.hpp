#pragma once

// Normal-approximation log code sizes (bits) for a block of n channel uses:
//   log_m_ccc: constant-composition codes with exactly h ones per codeword,
//   log_m_avg: average-weight-budget codes with at most w_star ones on average.
// Both clamp at 0, and a zero-information composition carries no volume at
// all (the +1/2 log2 n term is an n -> infinity artifact that must not pay
// out when I or C vanishes).

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "wearout/channel.hpp"
#include "wearout/prob.hpp"

namespace wearout {

inline double log_m_ccc(int n, int h, double eta, const AliveChannel& ch,
                        double third_order = 0.0) {
    if (n < 1) throw std::domain_error("log_m_ccc: n < 1");
    if (h < 0 || h > n) throw std::domain_error("log_m_ccc: h outside [0,n]");
    if (!(eta > 0.0 && eta < 1.0)) throw std::domain_error("log_m_ccc: eta outside (0,1)");
    const double p = static_cast<double>(h) / n;
    const double mi = mutual_information(p, ch);
    if (mi <= 0.0) return std::max(0.0, third_order);
    const double rho = cond_info_variance(p, ch);
    const double raw = n * mi - std::sqrt(n * rho) * q_inv(eta) +
                       0.5 * std::log2(static_cast<double>(n)) + third_order;
    return std::max(0.0, raw);
}

namespace detail {

inline double log_m_avg_raw(int n, double w, double eta, const AliveChannel& ch) {
    const CapacityCost cc = capacity_cost_full(w / n, ch);
    if (cc.capacity <= 0.0) return 0.0;
    const double raw = n * cc.capacity - std::sqrt(n * cc.dispersion) * q_inv(eta) +
                       0.5 * std::log2(static_cast<double>(n));
    return std::max(0.0, raw);
}

}  // namespace detail

// Non-decreasing in w_star by construction: the sqrt(nV) term can dip the raw
// value when the weight budget grows, so a running maximum over smaller
// integer budgets (plus w_star itself) repairs monotonicity.
inline double log_m_avg(int n, double w_star, double eta, const AliveChannel& ch) {
    if (n < 1) throw std::domain_error("log_m_avg: n < 1");
    if (!(w_star >= 0.0)) throw std::domain_error("log_m_avg: negative w_star");
    if (!(eta > 0.0 && eta < 1.0)) throw std::domain_error("log_m_avg: eta outside (0,1)");
    double best = 0.0;
    const int wi_max = static_cast<int>(std::floor(std::min(w_star, static_cast<double>(n))));
    for (int wi = 1; wi <= wi_max; ++wi)
        best = std::max(best, detail::log_m_avg_raw(n, wi, eta, ch));
    if (w_star > 0.0)
        best = std::max(best, detail::log_m_avg_raw(n, std::min(w_star, static_cast<double>(n)), eta, ch));
    return best;
}

// Dense tables used by the planners; table(n, w) indexed [n][w].
struct CodeSizeTable {
    int n_max = 0;
    int w_max = 0;
    std::vector<double> v;  // (n_max+1) x (w_max+1), row n, col w

    double at(int n, int w) const { return v[static_cast<std::size_t>(n) * (w_max + 1) + w]; }
    double& at(int n, int w) { return v[static_cast<std::size_t>(n) * (w_max + 1) + w]; }
};

inline CodeSizeTable build_ccc_table(int n_max, int h_max, double eta,
                                     const AliveChannel& ch, double third_order = 0.0) {
    CodeSizeTable t;
    t.n_max = n_max;
    t.w_max = h_max;
    t.v.assign(static_cast<std::size_t>(n_max + 1) * (h_max + 1), 0.0);
    for (int n = 1; n <= n_max; ++n)
        for (int h = 0; h <= std::min(n, h_max); ++h)
            t.at(n, h) = log_m_ccc(n, h, eta, ch, third_order);
    return t;
}

inline CodeSizeTable build_avg_table(int n_max, int w_max, double eta,
                                     const AliveChannel& ch) {
    CodeSizeTable t;
    t.n_max = n_max;
    t.w_max = w_max;
    t.v.assign(static_cast<std::size_t>(n_max + 1) * (w_max + 1), 0.0);
    for (int n = 1; n <= n_max; ++n) {
        double run = 0.0;  // running max keeps each row monotone in w
        for (int w = 0; w <= w_max; ++w) {
            if (w > 0)
                run = std::max(run, detail::log_m_avg_raw(n, std::min<double>(w, n), eta, ch));
            t.at(n, w) = run;
        }
    }
    return t;
}

}  // namespace wearout
