#pragma once

// Non-increasing concave/convex envelopes dominating the binomial survival
// CDF w -> Pr[Bin(w, gamma) <= threshold], extended to real w.  f_n is the
// Gaussian CDF surrogate, f_be the Berry-Esseen correction term; their sum
// dominates the true CDF for every w >= 0.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "wearout/prob.hpp"

namespace wearout {

// (sqrt(10)+3)/(6 sqrt(2 pi)) * (gamma^2 + (1-gamma)^2): the Berry-Esseen
// constant specialized to a Bernoulli(gamma) summand.
inline double be_constant(double gamma, double scale = 1.0) {
    if (!(gamma > 0.0 && gamma < 1.0))
        throw std::domain_error("be_constant: gamma outside (0,1)");
    const double c = (std::sqrt(10.0) + 3.0) / (6.0 * std::sqrt(2.0 * M_PI));
    return scale * c * (gamma * gamma + (1.0 - gamma) * (1.0 - gamma));
}

// Below this w the Berry-Esseen term saturates at 1.
inline double w_be_threshold(double gamma, double scale = 1.0) {
    const double c0 = be_constant(gamma, scale);
    return c0 * c0 / (gamma * (1.0 - gamma));
}

// Gaussian surrogate for Pr[Bin(w, gamma) <= s] at real w.
inline double f_n(double w, int s, double gamma) {
    if (!(gamma > 0.0 && gamma < 1.0))
        throw std::domain_error("f_n: gamma outside (0,1)");
    if (w < 0.0) throw std::domain_error("f_n: negative w");
    if (w == 0.0) return 1.0;
    const double sd = std::sqrt(2.0 * w * gamma * (1.0 - gamma));
    return 0.5 * std::erfc((w * gamma - s) / sd);
}

// Berry-Esseen slack, clamped at 1 below w_be_threshold.
inline double f_be(double w, double gamma, double scale = 1.0) {
    if (w < 0.0) throw std::domain_error("f_be: negative w");
    const double c0 = be_constant(gamma, scale);
    if (w * gamma * (1.0 - gamma) <= c0 * c0) return 1.0;
    return c0 / std::sqrt(w * gamma * (1.0 - gamma));
}

// The dominating envelope itself.
inline double be_envelope(double w, int s, double gamma, double scale = 1.0) {
    return f_n(w, s, gamma) + f_be(w, gamma, scale);
}

// Precomputed floor-node tables of f_n / f_be on a uniform w grid.  Both
// curves are non-increasing, so table[floor(w/step)] >= f(w): lookups stay on
// the upper-bound side, which is all the converse machinery needs.
class EnvelopeTable {
public:
    EnvelopeTable() = default;
    EnvelopeTable(int s, double gamma, double w_max, double step = 1.0 / 1024.0)
        : step_(step) {
        if (!(step > 0.0) || !(w_max > 0.0))
            throw std::domain_error("EnvelopeTable: non-positive step or w_max");
        const std::size_t n = static_cast<std::size_t>(std::ceil(w_max / step)) + 2;
        fn_.resize(n);
        fbe_.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double w = static_cast<double>(i) * step;
            fn_[i] = f_n(w, s, gamma);
            fbe_[i] = f_be(w, gamma);
        }
    }

    bool empty() const { return fn_.empty(); }

    double fn_at(double w) const { return fn_[index(w)]; }
    double fbe_at(double w) const { return fbe_[index(w)]; }

private:
    std::size_t index(double w) const {
        if (w <= 0.0) return 0;
        std::size_t i = static_cast<std::size_t>(w / step_);
        return std::min(i, fn_.size() - 1);
    }

    double step_ = 0.0;
    std::vector<double> fn_, fbe_;
};

}  // namespace wearout
