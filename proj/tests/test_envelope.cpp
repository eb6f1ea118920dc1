#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "wearout/envelope.hpp"

using namespace wearout;

TEST_CASE("Berry-Esseen constant and threshold, frozen at gamma = 1/2") {
    CHECK(be_constant(0.5) == Catch::Approx(0.2048660918511982).margin(1e-12));
    CHECK(w_be_threshold(0.5) == Catch::Approx(0.1678804623615343).margin(1e-12));
    CHECK(f_be(100.0, 0.5) == Catch::Approx(0.0409732183702396).margin(1e-12));
}

TEST_CASE("f_be is continuous at its saturation point") {
    for (double gamma : {0.1, 0.3, 0.5, 0.8}) {
        const double wb = w_be_threshold(gamma);
        CHECK(f_be(wb, gamma) == Catch::Approx(1.0).margin(1e-12));
        CHECK(f_be(wb * (1.0 + 1e-9), gamma) == Catch::Approx(1.0).margin(1e-6));
    }
}

TEST_CASE("envelope dominates the binomial survival CDF") {
    for (double gamma : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        for (int s : {1, 5, 20}) {
            for (int w = 0; w <= 1000; ++w) {
                const double cdf = binom_cdf(s, w, gamma);
                const double env = be_envelope(static_cast<double>(w), s, gamma);
                INFO("gamma=" << gamma << " s=" << s << " w=" << w);
                REQUIRE(cdf <= env + 1e-15);
            }
        }
    }
}

TEST_CASE("shrinking the Berry-Esseen constant breaks dominance") {
    // sensitivity check: the envelope is not vacuously loose
    bool violated = false;
    for (int w = 0; w <= 200 && !violated; ++w) {
        const double cdf = binom_cdf(5, w, 0.5);
        if (cdf > be_envelope(static_cast<double>(w), 5, 0.5, 0.9)) violated = true;
    }
    CHECK(violated);
}

TEST_CASE("f_n and f_be are non-increasing in w") {
    for (double gamma : {0.3, 0.5}) {
        for (int s : {2, 5}) {
            double pn = 2.0, pb = 2.0;
            for (double w = 0.0; w <= 200.0; w += 0.01) {
                const double vn = f_n(w, s, gamma);
                const double vb = f_be(w, gamma);
                CHECK(vn <= pn + 1e-12);
                CHECK(vb <= pb + 1e-12);
                pn = vn;
                pb = vb;
            }
        }
    }
}

// Second finite difference flips sign (concave -> convex) at most once:
// the shape assumption the corner-profile maximization rests on.
static void check_single_inflection(const std::function<double(double)>& f) {
    const double step = 0.01;
    int state = 0;  // 0: still concave allowed, 1: convex tail
    for (double w = step; w + step <= 200.0; w += step) {
        const double d2 = f(w + step) - 2.0 * f(w) + f(w - step);
        if (d2 > 1e-9) state = 1;
        if (d2 < -1e-9) {
            INFO("w = " << w << " d2 = " << d2);
            REQUIRE(state == 0);
        }
    }
}

TEST_CASE("envelope curves have a single inflection") {
    for (double gamma : {0.3, 0.5, 0.7}) {
        for (int s : {2, 5, 20}) {
            check_single_inflection([=](double w) { return f_n(w, s, gamma); });
        }
        check_single_inflection([=](double w) { return f_be(w, gamma); });
    }
}

TEST_CASE("floor-node envelope tables stay on the upper side") {
    const EnvelopeTable tab(5, 0.5, 120.0);
    oracle::Rng rng(7);
    for (int i = 0; i < 20000; ++i) {
        const double w = rng.unit() * 119.0;
        CHECK(tab.fn_at(w) >= f_n(w, 5, 0.5) - 1e-15);
        CHECK(tab.fbe_at(w) >= f_be(w, 0.5) - 1e-15);
        CHECK(tab.fn_at(w) <= f_n(std::max(0.0, w - 2.0 / 1024.0), 5, 0.5) + 1e-15);
    }
}
