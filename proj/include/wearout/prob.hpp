#pragma once

// Binomial damage accounting and Gaussian tail helpers.

#include <cmath>
#include <stdexcept>

namespace wearout {

// Wear process: every transmitted '1' deals one unit of damage with
// probability gamma; the device survives while total damage <= threshold.
struct DamageParams {
    double gamma = 0.5;
    int threshold = 5;
};

// Pr[Bin(h, gamma) <= s].
// Anchored at the largest in-range pmf term and summed outward with the
// term recurrence, so deep tails neither under- nor overflow prematurely.
inline double binom_cdf(int s, int h, double gamma) {
    if (h < 0) throw std::domain_error("binom_cdf: negative trial count");
    if (!(gamma >= 0.0 && gamma <= 1.0))
        throw std::domain_error("binom_cdf: gamma outside [0,1]");
    if (s < 0) return 0.0;
    if (h <= s) return 1.0;
    if (gamma == 0.0) return 1.0;
    if (gamma == 1.0) return 0.0;  // h > s, all trials deal damage

    const int km = std::min(s, static_cast<int>(std::floor((h + 1) * gamma)));
    const double lg = std::lgamma(h + 1.0) - std::lgamma(km + 1.0) -
                      std::lgamma(h - km + 1.0) + km * std::log(gamma) +
                      (h - km) * std::log1p(-gamma);
    const double anchor = std::exp(lg);
    if (anchor == 0.0) return 0.0;  // whole CDF below double range

    long double acc = anchor;
    long double t = anchor;
    for (int k = km; k >= 1; --k) {  // terms shrink moving down from the mode
        t *= k * (1.0L - gamma) / ((h - k + 1.0L) * gamma);
        acc += t;
        if (t < acc * 1e-20L) break;
    }
    t = anchor;
    for (int k = km + 1; k <= s; ++k) {  // and moving up past it
        t *= (h - k + 1.0L) * gamma / (k * (1.0L - gamma));
        acc += t;
        if (t < acc * 1e-20L) break;
    }
    double out = static_cast<double>(acc);
    return out < 1.0 ? out : 1.0;
}

// Pr[Bin(h, gamma) = d].
inline double binom_pmf(int d, int h, double gamma) {
    if (h < 0) throw std::domain_error("binom_pmf: negative trial count");
    if (!(gamma >= 0.0 && gamma <= 1.0))
        throw std::domain_error("binom_pmf: gamma outside [0,1]");
    if (d < 0 || d > h) return 0.0;
    if (gamma == 0.0) return d == 0 ? 1.0 : 0.0;
    if (gamma == 1.0) return d == h ? 1.0 : 0.0;
    const double lg = std::lgamma(h + 1.0) - std::lgamma(d + 1.0) -
                      std::lgamma(h - d + 1.0) + d * std::log(gamma) +
                      (h - d) * std::log1p(-gamma);
    return std::exp(lg);
}

// Gaussian upper tail Q(x) = Pr[N(0,1) > x].
inline double gaussian_q(double x) {
    return 0.5 * std::erfc(x * 0.7071067811865475244);  // x / sqrt(2)
}

namespace detail {

// Acklam's rational approximation to the standard normal quantile,
// |relative error| < 1.15e-9; we polish it with Newton afterwards.
inline double probit_acklam(double p) {
    static const double a[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                -2.759285104469687e+02, 1.383577518672690e+02,
                                -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                -1.556989798598866e+02, 6.680131188771972e+01,
                                -1.328068155288572e+01};
    static const double c[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                -2.400758277161838e+00, -2.549732539343734e+00,
                                4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                                2.445134137142996e+00, 3.754408661907416e+00};
    const double p_low = 0.02425;
    if (p < p_low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    if (p <= 1.0 - p_low) {
        const double q = p - 0.5;
        const double r = q * q;
        return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
               (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    }
    const double q = std::sqrt(-2.0 * std::log1p(-p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
}

}  // namespace detail

// Inverse of the Gaussian upper tail: q_inv(eta) solves Q(x) = eta.
// Symmetry-reduced to eta <= 1/2 so the Newton polish always works on the
// well-conditioned tail side.
inline double q_inv(double eta) {
    if (!(eta > 0.0 && eta < 1.0))
        throw std::domain_error("q_inv: eta outside (0,1)");
    if (eta > 0.5) return -q_inv(1.0 - eta);
    double x = -detail::probit_acklam(eta);  // Q(x) = eta <=> Phi(-x) = eta
    for (int it = 0; it < 2; ++it) {
        const double pdf = 0.3989422804014327 * std::exp(-0.5 * x * x);
        if (pdf <= 0.0) break;
        x += (gaussian_q(x) - eta) / pdf;
    }
    return x;
}

}  // namespace wearout
