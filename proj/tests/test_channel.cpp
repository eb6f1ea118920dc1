#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "wearout/channel.hpp"
#include "wearout/code_size.hpp"

using namespace wearout;

TEST_CASE("generic mutual information matches the BSC closed form") {
    for (double eps : {0.02, 0.11, 0.3, 0.49}) {
        const AliveChannel ch = AliveChannel::bsc(eps);
        for (double p = 0.0; p <= 1.0; p += 1.0 / 64.0) {
            INFO("eps=" << eps << " p=" << p);
            REQUIRE(mutual_information(p, ch) ==
                    Catch::Approx(bsc_mutual_information(p, eps)).margin(1e-10));
        }
    }
}

TEST_CASE("information vanishes exactly at degenerate inputs and channels") {
    const AliveChannel ch = AliveChannel::bsc(0.11);
    CHECK(mutual_information(0.0, ch) == 0.0);
    CHECK(mutual_information(1.0, ch) == 0.0);
    const AliveChannel useless = AliveChannel::bsc(0.5);
    CHECK(mutual_information(0.3, useless) == 0.0);
    CHECK(cond_info_variance(0.3, useless) == 0.0);
}

TEST_CASE("dispersion at equiprobable input matches the BSC closed form") {
    for (double eps : {0.05, 0.11, 0.25}) {
        const AliveChannel ch = AliveChannel::bsc(eps);
        CHECK(cond_info_variance(0.5, ch) ==
              Catch::Approx(bsc_half_input_dispersion(eps)).margin(1e-12));
    }
}

TEST_CASE("cost-constrained capacity on the BSC caps the weight at one half") {
    const AliveChannel ch = AliveChannel::bsc(0.11);
    for (double beta : {0.05, 0.2, 0.5, 0.8, 1.3}) {
        const CapacityCost cc = capacity_cost_full(beta, ch);
        const double p = std::min(beta, 0.5);
        CHECK(cc.p_star == p);
        CHECK(cc.capacity == Catch::Approx(bsc_mutual_information(p, 0.11)).margin(1e-12));
        CHECK(cc.dispersion == Catch::Approx(cond_info_variance(p, ch)).margin(1e-12));
    }
    CHECK(capacity_cost(0.7, ch) == capacity_cost(0.5, ch));
}

TEST_CASE("generic golden-section capacity agrees with the BSC shortcut") {
    // same matrix, shortcut disabled
    AliveChannel generic({0.89, 0.11}, {0.11, 0.89});
    const AliveChannel ch = AliveChannel::bsc(0.11);
    for (double beta : {0.07, 0.23, 0.41, 0.6}) {
        CHECK(capacity_cost(beta, generic) ==
              Catch::Approx(capacity_cost(beta, ch)).margin(1e-8));
        CHECK(dispersion_cost(beta, generic) ==
              Catch::Approx(dispersion_cost(beta, ch)).margin(1e-6));
    }
}

TEST_CASE("channel validation") {
    CHECK_THROWS_AS(AliveChannel({0.5, 0.4}, {0.5, 0.5}), std::domain_error);
    CHECK_THROWS_AS(AliveChannel({1.2, -0.2}, {0.5, 0.5}), std::domain_error);
    CHECK_THROWS_AS(AliveChannel::bsc(0.0), std::domain_error);
    CHECK_NOTHROW(AliveChannel({0.25, 0.25, 0.5}, {0.1, 0.6, 0.3}));
}

TEST_CASE("log_m_ccc recomputed from closed-form ingredients") {
    const AliveChannel ch = AliveChannel::bsc(0.11);
    const double eta = 0.001;
    for (auto [n, h] : std::vector<std::pair<int, int>>{{200, 90}, {100, 25}, {400, 60}}) {
        const double p = static_cast<double>(h) / n;
        const double mi = bsc_mutual_information(p, 0.11);
        const double rho = cond_info_variance(p, ch);
        const double want = std::max(
            0.0, n * mi - std::sqrt(n * rho) * oracle::q_inv_bisect(eta) +
                     0.5 * std::log2(static_cast<double>(n)));
        CHECK(log_m_ccc(n, h, eta, ch) == Catch::Approx(want).margin(1e-7));
    }
}

TEST_CASE("log_m_ccc zero-information edge carries no volume") {
    const AliveChannel ch = AliveChannel::bsc(0.11);
    CHECK(log_m_ccc(100, 0, 0.001, ch) == 0.0);
    CHECK(log_m_ccc(100, 0, 0.001, ch, -0.5) == 0.0);
    CHECK(log_m_ccc(100, 0, 0.001, ch, 0.25) == 0.25);  // explicit positive offset
    const AliveChannel useless = AliveChannel::bsc(0.5);
    CHECK(log_m_ccc(64, 32, 0.001, useless) == 0.0);
}

TEST_CASE("third_order shifts log_m_ccc additively before the clamp") {
    const AliveChannel ch = AliveChannel::bsc(0.11);
    const double base = log_m_ccc(200, 90, 0.001, ch);
    REQUIRE(base > 1.0);
    CHECK(log_m_ccc(200, 90, 0.001, ch, -1.0) == Catch::Approx(base - 1.0).margin(1e-12));
    CHECK(log_m_ccc(200, 90, 0.001, ch, 2.5) == Catch::Approx(base + 2.5).margin(1e-12));
}

TEST_CASE("log_m_avg is non-decreasing on the integer budget grid") {
    // the planner only queries integer budgets; the running-max repair is
    // anchored there (the raw expansion has a genuine dip inside (0,1))
    const AliveChannel ch = AliveChannel::bsc(0.11);
    for (int n : {2, 5, 40, 150}) {
        double prev = 0.0;
        for (int w = 0; w <= n; ++w) {
            const double cur = log_m_avg(n, w, 0.001, ch);
            INFO("n=" << n << " w=" << w);
            REQUIRE(cur >= prev - 1e-12);
            prev = cur;
        }
    }
}

TEST_CASE("log_m_avg zero budget means zero volume") {
    const AliveChannel ch = AliveChannel::bsc(0.11);
    for (int n : {1, 2, 17, 300}) CHECK(log_m_avg(n, 0.0, 0.001, ch) == 0.0);
}

TEST_CASE("log_m_avg dominates the matching constant-composition size") {
    // a weight budget of h+1 covers every composition with h ones
    const AliveChannel ch = AliveChannel::bsc(0.11);
    for (int n : {10, 50, 200, 400}) {
        for (int h = 0; h <= n; h += std::max(1, n / 7)) {
            INFO("n=" << n << " h=" << h);
            REQUIRE(log_m_avg(n, h + 1.0, 0.4, ch) >= log_m_ccc(n, h, 0.4, ch) - 1e-9);
        }
    }
}

TEST_CASE("code-size tables match pointwise evaluation") {
    const AliveChannel ch = AliveChannel::bsc(0.11);
    const CodeSizeTable ccc = build_ccc_table(60, 60, 0.01, ch);
    const CodeSizeTable avg = build_avg_table(60, 30, 0.01, ch);
    oracle::Rng rng(11);
    for (int i = 0; i < 200; ++i) {
        const int n = rng.uniform_int(1, 60);
        const int h = rng.uniform_int(0, n);
        CHECK(ccc.at(n, std::min(h, 60)) ==
              Catch::Approx(log_m_ccc(n, std::min(h, 60), 0.01, ch)).margin(1e-12));
        const int w = rng.uniform_int(0, 30);
        CHECK(avg.at(n, w) == Catch::Approx(log_m_avg(n, w, 0.01, ch)).margin(1e-12));
    }
}
