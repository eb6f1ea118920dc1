#pragma once

// Binary-input DMC seen while the device is alive, plus the first- and
// second-order statistics (mutual information, conditional information
// variance) of a Bernoulli(p) input against it.  All logs base 2.

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace wearout {

struct AliveChannel {
    // w[x][y] = Pr[Y = y | X = x]; two input letters, any output alphabet.
    std::array<std::vector<double>, 2> w;
    bool bsc_form = false;  // lets the capacity search use the known argmax
    double eps = 0.0;

    AliveChannel(std::vector<double> row0, std::vector<double> row1)
        : w{std::move(row0), std::move(row1)} {
        validate();
    }

    static AliveChannel bsc(double crossover) {
        if (!(crossover > 0.0 && crossover < 1.0))
            throw std::domain_error("AliveChannel::bsc: crossover outside (0,1)");
        AliveChannel ch({1.0 - crossover, crossover}, {crossover, 1.0 - crossover});
        ch.bsc_form = true;
        ch.eps = crossover;
        return ch;
    }

    std::size_t num_outputs() const { return w[0].size(); }

private:
    void validate() const {
        if (w[0].size() != w[1].size() || w[0].empty())
            throw std::domain_error("AliveChannel: malformed rows");
        for (const auto& row : w) {
            double sum = 0.0;
            for (double v : row) {
                if (!(v >= 0.0 && v <= 1.0))
                    throw std::domain_error("AliveChannel: entry outside [0,1]");
                sum += v;
            }
            if (std::abs(sum - 1.0) > 1e-12)
                throw std::domain_error("AliveChannel: row does not sum to 1");
        }
    }
};

inline double binary_entropy(double p) {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::domain_error("binary_entropy: p outside [0,1]");
    if (p == 0.0 || p == 1.0) return 0.0;
    return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

// I(X;Y) in bits for X ~ Bernoulli(p_one); 0 log 0 terms are dropped.
inline double mutual_information(double p_one, const AliveChannel& ch) {
    if (!(p_one >= 0.0 && p_one <= 1.0))
        throw std::domain_error("mutual_information: p outside [0,1]");
    const double px[2] = {1.0 - p_one, p_one};
    double mi = 0.0;
    for (std::size_t y = 0; y < ch.num_outputs(); ++y) {
        const double py = px[0] * ch.w[0][y] + px[1] * ch.w[1][y];
        if (py <= 0.0) continue;
        for (int x = 0; x < 2; ++x) {
            const double wxy = ch.w[x][y];
            if (px[x] <= 0.0 || wxy <= 0.0) continue;
            mi += px[x] * wxy * std::log2(wxy / py);
        }
    }
    return mi;
}

// Var of the information density given X, averaged over X (the channel
// dispersion functional at input Bernoulli(p_one)).
inline double cond_info_variance(double p_one, const AliveChannel& ch) {
    if (!(p_one >= 0.0 && p_one <= 1.0))
        throw std::domain_error("cond_info_variance: p outside [0,1]");
    const double px[2] = {1.0 - p_one, p_one};
    std::vector<double> py(ch.num_outputs(), 0.0);
    for (std::size_t y = 0; y < ch.num_outputs(); ++y)
        py[y] = px[0] * ch.w[0][y] + px[1] * ch.w[1][y];
    double var = 0.0;
    for (int x = 0; x < 2; ++x) {
        if (px[x] <= 0.0) continue;
        double mean = 0.0, second = 0.0;
        for (std::size_t y = 0; y < ch.num_outputs(); ++y) {
            const double wxy = ch.w[x][y];
            if (wxy <= 0.0 || py[y] <= 0.0) continue;
            const double d = std::log2(wxy / py[y]);
            mean += wxy * d;
            second += wxy * d * d;
        }
        var += px[x] * std::max(0.0, second - mean * mean);
    }
    return var;
}

// Closed forms for the BSC, used as cross-checks and fast paths.
inline double bsc_mutual_information(double p_one, double eps) {
    return binary_entropy(eps + p_one * (1.0 - 2.0 * eps)) - binary_entropy(eps);
}

inline double bsc_half_input_dispersion(double eps) {
    const double l = std::log2((1.0 - eps) / eps);
    return eps * (1.0 - eps) * l * l;
}

struct CapacityCost {
    double capacity = 0.0;    // max_{p <= beta} I(p)
    double dispersion = 0.0;  // cond_info_variance at the maximizing p
    double p_star = 0.0;
};

// Cost-constrained capacity: input weight fraction at most beta.  For the
// BSC the maximizer is min(beta, 1/2); otherwise golden-section on the
// concave I(p).
inline CapacityCost capacity_cost_full(double beta, const AliveChannel& ch) {
    if (!(beta >= 0.0)) throw std::domain_error("capacity_cost: negative beta");
    const double hi = std::min(beta, 1.0);
    CapacityCost out;
    if (ch.bsc_form) {
        out.p_star = std::min(hi, 0.5);
    } else {
        const double invphi = 0.6180339887498949;
        double lo = 0.0, up = hi;
        double x1 = up - invphi * (up - lo);
        double x2 = lo + invphi * (up - lo);
        double f1 = mutual_information(x1, ch);
        double f2 = mutual_information(x2, ch);
        while (up - lo > 1e-12) {
            if (f1 < f2) {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + invphi * (up - lo);
                f2 = mutual_information(x2, ch);
            } else {
                up = x2;
                x2 = x1;
                f2 = f1;
                x1 = up - invphi * (up - lo);
                f1 = mutual_information(x1, ch);
            }
        }
        out.p_star = 0.5 * (lo + up);
        // endpoint beta is a frequent maximizer; pick it on ties
        if (mutual_information(hi, ch) >= mutual_information(out.p_star, ch))
            out.p_star = hi;
    }
    out.capacity = mutual_information(out.p_star, ch);
    out.dispersion = cond_info_variance(out.p_star, ch);
    return out;
}

inline double capacity_cost(double beta, const AliveChannel& ch) {
    return capacity_cost_full(beta, ch).capacity;
}

inline double dispersion_cost(double beta, const AliveChannel& ch) {
    return capacity_cost_full(beta, ch).dispersion;
}

}  // namespace wearout
