#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "wearout/dp_achievability.hpp"

using namespace wearout;

namespace {
// parameters where blocks this short already carry volume
const DamageParams kSmall{0.5, 2};
const AliveChannel kCh = AliveChannel::bsc(0.05);
const double kEta = 0.4;
}  // namespace

TEST_CASE("planner equals exhaustive decomposition search up to N = 10") {
    const AchievabilityResult r = solve_achievability(10, kSmall, kEta, kCh);
    REQUIRE(r.curve[5] > 0.1);  // parameters are genuinely non-trivial
    for (int N = 1; N <= 10; ++N) {
        const double want = oracle::brute_achievability(N, kSmall, kEta, kCh);
        INFO("N = " << N);
        REQUIRE(r.curve[static_cast<std::size_t>(N)] == Catch::Approx(want).margin(1e-9));
    }
}

TEST_CASE("traceback reproduces the curve value") {
    const AchievabilityResult r = solve_achievability(40, kSmall, kEta, kCh);
    for (int N : {5, 17, 28, 40}) {
        const Schedule s = traceback(r, N);
        INFO("N = " << N);
        REQUIRE(s.expected_log_volume ==
                Catch::Approx(r.curve[static_cast<std::size_t>(N)]).margin(1e-9));
        REQUIRE(s.total_length == (s.blocks.empty() ? 0 : N));
        REQUIRE(s.total_weight <= N - 1);
        // independent re-evaluation of the same blocks
        std::vector<std::pair<int, int>> plain;
        for (const auto& b : s.blocks) plain.emplace_back(b.n, b.weight);
        if (!plain.empty()) {
            const Schedule again = evaluate_schedule(plain, kSmall, kEta, kCh);
            REQUIRE(again.expected_log_volume ==
                    Catch::Approx(s.expected_log_volume).margin(1e-9));
        }
    }
}

TEST_CASE("single-block curve never beats the planner") {
    const AchievabilityResult r = solve_achievability(60, kSmall, kEta, kCh);
    for (int N = 2; N <= 60; ++N) {
        CHECK(r.single_curve[static_cast<std::size_t>(N)] <=
              r.curve[static_cast<std::size_t>(N)] + 1e-12);
    }
}

TEST_CASE("pruning at 1e-12 does not move the curve") {
    // the cap at these parameters sits near 64, so n_max must exceed it
    const DamageParams dmg{0.5, 5};
    const AliveChannel ch = AliveChannel::bsc(0.11);
    const AchievabilityResult full = solve_achievability(80, dmg, 0.001, ch, 0.0, 0.0);
    const AchievabilityResult pruned = solve_achievability(80, dmg, 0.001, ch, 0.0, 1e-12);
    CHECK(pruned.h_cap < full.h_cap);  // pruning actually engaged
    double lm_max = 0.0;
    for (double v : full.lm.v) lm_max = std::max(lm_max, v);
    const double budget = 80.0 * lm_max * 1e-12 + 1e-15;
    for (int N = 0; N <= 80; ++N) {
        INFO("N = " << N);
        REQUIRE(std::abs(full.curve[static_cast<std::size_t>(N)] -
                         pruned.curve[static_cast<std::size_t>(N)]) <= budget);
    }
}

TEST_CASE("curve basics and determinism") {
    const AchievabilityResult a = solve_achievability(25, kSmall, kEta, kCh);
    const AchievabilityResult b = solve_achievability(25, kSmall, kEta, kCh);
    CHECK(a.curve == b.curve);
    CHECK(a.best_h == b.best_h);
    CHECK(a.curve[0] == 0.0);
    CHECK(a.curve[1] == 0.0);
    for (double v : a.curve) CHECK(v >= 0.0);
    CHECK_THROWS_AS(solve_achievability(0, kSmall, kEta, kCh), std::domain_error);
    CHECK_THROWS_AS(solve_achievability(5, kSmall, kEta, kCh, 0.0, 1.5), std::domain_error);
}
