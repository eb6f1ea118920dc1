#pragma once

// Majorization tools for bounding sums f(x_1)+...+f(x_m) over nonnegative
// tuples with mean x_star, where f is continuous, non-increasing and
// concave-then-convex (one inflection) on [a, inf).  The worst tuple puts
// j entries at the ceiling b, one leftover entry, and the rest at a common
// low value; lcrc_max_exact enumerates those corner profiles, and
// lcrc_max_relaxed maximizes the continuous j/m relaxation so astronomically
// large m stays tractable.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

namespace wearout {

// Worst-case profile from the mean constraint alone: j entries at b, one at
// r, the remaining m-j-1 at c; majorizes every tuple in [c,b]^m with mean
// x_star.
inline std::vector<double> majorizing_sequence(long long m, double c, double b,
                                               double x_star) {
    if (m < 1) throw std::domain_error("majorizing_sequence: m < 1");
    if (!(c < b)) throw std::domain_error("majorizing_sequence: needs c < b");
    if (!(x_star >= c && x_star <= b))
        throw std::domain_error("majorizing_sequence: x_star outside [c,b]");
    long long j = static_cast<long long>(std::floor(m * (x_star - c) / (b - c)));
    std::vector<double> seq;
    seq.reserve(static_cast<std::size_t>(m));
    if (j >= m) {  // x_star == b
        seq.assign(static_cast<std::size_t>(m), b);
        return seq;
    }
    double r = m * x_star - j * b - (m - j - 1) * c;
    r = std::min(std::max(r, c), b);
    seq.insert(seq.end(), static_cast<std::size_t>(j), b);
    seq.push_back(r);
    seq.insert(seq.end(), static_cast<std::size_t>(m - j - 1), c);
    return seq;
}

// True iff sum f(hi_i) >= sum f(lo_i) - 1e-9 for convex f, after verifying
// that hi majorizes lo (both non-increasing, prefix dominance, equal totals);
// precondition violations throw instead of returning false.
template <typename F>
bool karamata_check(const std::vector<double>& hi, const std::vector<double>& lo,
                    F&& f) {
    if (hi.size() != lo.size() || hi.empty())
        throw std::invalid_argument("karamata_check: size mismatch");
    const double tol = 1e-9;
    for (std::size_t i = 1; i < hi.size(); ++i) {
        if (hi[i] > hi[i - 1] + tol || lo[i] > lo[i - 1] + tol)
            throw std::invalid_argument("karamata_check: sequence not sorted");
    }
    double sh = 0.0, sl = 0.0;
    for (std::size_t i = 0; i < hi.size(); ++i) {
        sh += hi[i];
        sl += lo[i];
        if (sh < sl - tol)
            throw std::invalid_argument("karamata_check: prefix dominance fails");
    }
    if (std::abs(sh - sl) > tol)
        throw std::invalid_argument("karamata_check: totals differ");
    double fh = 0.0, fl = 0.0;
    for (std::size_t i = 0; i < hi.size(); ++i) {
        fh += f(hi[i]);
        fl += f(lo[i]);
    }
    return fh >= fl - tol;
}

struct LcrcSolution {
    double objective = 0.0;
    long long j = -1;  // corner profile: j entries pinned at b (exact mode)
    long long k = -1;  // value of the leftover integer entry (exact mode)
    double z = 0.0;    // common low value of the remaining entries
    double phi = 0.0;  // j/m in the continuous relaxation
    bool relaxed = false;
};

// max over corner profiles (j,k) of  j f(b) + f(k) + (m-j-1) f(z),
//   z = max{(m x_star - j b - k - 1) / (m - j - 1), a},
// over j in {0..m-1}, integer k in {a..floor(b)} with k+1 >= z.  The j = m-1
// column degenerates: the third group is empty and k is pinned to the
// leftover mass floor(m x_star - (m-1) b).  Ties resolve to smallest j, then
// smallest k.  Cost is O(m * b) in the worst case; callers keep m modest.
template <typename F>
LcrcSolution lcrc_max_exact(F&& f, long long m, long long a, double b,
                            double x_star) {
    if (m < 1) throw std::domain_error("lcrc_max_exact: m < 1");
    if (a < 0 || !(b > static_cast<double>(a)))
        throw std::domain_error("lcrc_max_exact: needs 0 <= a < b");
    if (x_star < a - 1e-9 || x_star > b + 1e-9)
        throw std::domain_error("lcrc_max_exact: x_star outside [a,b]");
    x_star = std::min(std::max(x_star, static_cast<double>(a)), b);

    const long long kb = static_cast<long long>(std::floor(b));
    std::vector<double> fk(static_cast<std::size_t>(kb - a + 1));
    for (long long k = a; k <= kb; ++k)
        fk[static_cast<std::size_t>(k - a)] = f(static_cast<double>(k));
    const double fb = f(b);

    LcrcSolution best;
    best.objective = -std::numeric_limits<double>::infinity();
    auto consider = [&](double val, long long j, long long k, double z) {
        if (val > best.objective ||
            (val == best.objective && (j < best.j || (j == best.j && k < best.k)))) {
            best.objective = val;
            best.j = j;
            best.k = k;
            best.z = z;
        }
    };

    for (long long k = a; k <= kb; ++k) {
        const double A = m * x_star - k - 1.0;
        // z is monotone in j with the sign of A - b(m-1); when it decreases
        // and has clamped to a, later columns only trade an f(z=a) for an
        // f(b) and can be skipped.
        const bool z_decreasing = A - b * (m - 1.0) <= 0.0;
        for (long long j = 0; j <= m - 2; ++j) {
            const double denom = static_cast<double>(m - j - 1);
            const double z_raw = (A - j * b) / denom;
            const double z = std::max(z_raw, static_cast<double>(a));
            if (k + 1.0 >= z) {
                const double val = j * fb + fk[static_cast<std::size_t>(k - a)] +
                                   denom * f(z);
                consider(val, j, k, z);
            }
            if (z_raw <= static_cast<double>(a) && z_decreasing) break;
        }
    }
    // degenerate column: m-1 entries at b force the last one
    {
        const double r = m * x_star - (m - 1.0) * b;
        if (r >= a - 1e-9) {
            long long kd = static_cast<long long>(std::floor(r));
            kd = std::min(std::max(kd, a), kb);
            const double val = (m - 1.0) * fb + fk[static_cast<std::size_t>(kd - a)];
            consider(val, m - 1, kd, static_cast<double>(a));
        }
    }
    if (!(best.objective > -std::numeric_limits<double>::infinity()))
        throw std::domain_error("lcrc_max_exact: empty feasible set");
    return best;
}

// Continuous relaxation for m = 2^log_m too large to enumerate: maximize
//   R(phi) = phi f(b) + (1-phi) f(z(phi)) + 2^-log_m,
//   z(phi) = max{(x_star - phi b - (b+1) 2^-log_m) / (1 - phi), a},
// over phi in [0, min(1, x_star/b)].  Dominates the exact per-entry average
// for every corner profile.  Grid scan plus golden-section refinement around
// the best grid cells; ties resolve to smallest phi.
template <typename F>
LcrcSolution lcrc_max_relaxed(F&& f, double log_m, long long a, double b,
                              double x_star, int grid_size = 4096,
                              int refine_iters = 40) {
    if (!(log_m >= 0.0)) throw std::domain_error("lcrc_max_relaxed: log_m < 0");
    if (a < 0 || !(b > static_cast<double>(a)))
        throw std::domain_error("lcrc_max_relaxed: needs 0 <= a < b");
    if (grid_size < 100) throw std::invalid_argument("lcrc_max_relaxed: grid_size < 100");
    if (x_star < a - 1e-9 || x_star > b + 1e-9)
        throw std::domain_error("lcrc_max_relaxed: x_star outside [a,b]");
    x_star = std::min(std::max(x_star, static_cast<double>(a)), b);

    const double slack = std::exp2(-log_m);
    const double shift = (b + 1.0) * slack;
    const double fb = f(b);
    auto zlow = [&](double phi) {
        if (phi >= 1.0) return static_cast<double>(a);
        return std::max((x_star - phi * b - shift) / (1.0 - phi),
                        static_cast<double>(a));
    };
    auto r_of = [&](double phi) {
        if (phi >= 1.0) return fb + slack;
        return phi * fb + (1.0 - phi) * f(zlow(phi)) + slack;
    };

    const double phi_max = std::min(1.0, x_star / b);
    LcrcSolution best;
    best.relaxed = true;
    best.objective = -std::numeric_limits<double>::infinity();
    auto consider = [&](double val, double phi) {
        if (val > best.objective || (val == best.objective && phi < best.phi)) {
            best.objective = val;
            best.phi = phi;
        }
    };

    std::vector<double> vals(static_cast<std::size_t>(grid_size));
    for (int i = 0; i < grid_size; ++i) {
        const double phi = phi_max * i / (grid_size - 1.0);
        vals[static_cast<std::size_t>(i)] = r_of(phi);
        consider(vals[static_cast<std::size_t>(i)], phi);
    }

    // refine around the strongest local maxima of the grid scan
    const double invphi = 0.6180339887498949;
    std::vector<int> peaks;
    for (int i = 0; i < grid_size; ++i) {
        const double v = vals[static_cast<std::size_t>(i)];
        const bool up = i == 0 || v >= vals[static_cast<std::size_t>(i - 1)];
        const bool down = i == grid_size - 1 || v >= vals[static_cast<std::size_t>(i + 1)];
        if (up && down) peaks.push_back(i);
    }
    std::sort(peaks.begin(), peaks.end(), [&](int l, int r) {
        return vals[static_cast<std::size_t>(l)] > vals[static_cast<std::size_t>(r)] ||
               (vals[static_cast<std::size_t>(l)] == vals[static_cast<std::size_t>(r)] && l < r);
    });
    if (peaks.size() > 3) peaks.resize(3);
    for (int pi : peaks) {
        double lo = phi_max * std::max(0, pi - 1) / (grid_size - 1.0);
        double up = phi_max * std::min(grid_size - 1, pi + 1) / (grid_size - 1.0);
        double x1 = up - invphi * (up - lo);
        double x2 = lo + invphi * (up - lo);
        double f1 = r_of(x1), f2 = r_of(x2);
        consider(f1, x1);
        consider(f2, x2);
        for (int it = 0; it < refine_iters && up - lo > 1e-15; ++it) {
            if (f1 < f2) {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + invphi * (up - lo);
                f2 = r_of(x2);
                consider(f2, x2);
            } else {
                up = x2;
                x2 = x1;
                f2 = f1;
                x1 = up - invphi * (up - lo);
                f1 = r_of(x1);
                consider(f1, x1);
            }
        }
    }
    best.z = zlow(best.phi);
    return best;
}

}  // namespace wearout
