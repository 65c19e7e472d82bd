#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "oracles.hpp"
#include "pathlens/episodes.hpp"

using namespace pathlens;
using Catch::Approx;

namespace {
const std::vector<double> kBenchE1{0.10, -0.20, 0.05, 0.10, 0.12};
const std::vector<double> kPortE1{0.08, -0.10, 0.04, 0.08, 0.09};
}  // namespace

TEST_CASE("worked benchmark path segments into one episode", "[episodes]") {
    const auto path = wealth_path(oracles::make_series(kBenchE1));
    const auto episodes = segment_episodes(path, 0.10);

    REQUIRE(episodes.size() == 1);
    const Episode& e = episodes[0];
    CHECK(e.peak_index == 0);  // the 1.10 high
    CHECK(e.trough_index == 1);
    REQUIRE(e.recovery_index.has_value());
    CHECK(*e.recovery_index == 4);  // 1.1384 >= 1.10
    CHECK(e.depth == Approx(0.20).margin(1e-12));
    CHECK(e.underwater_periods == 3);
    CHECK_FALSE(e.truncated);
    CHECK(e.peak_date == path.dates[0]);
    CHECK(e.recovery_date == path.dates[4]);
}

TEST_CASE("monotonically rising path has no episodes", "[episodes]") {
    const auto path = wealth_path(oracles::make_series({0.01, 0.02, 0.005, 0.03}));
    CHECK(segment_episodes(path, 0.10).empty());
}

TEST_CASE("path ending underwater yields a truncated episode", "[episodes]") {
    const auto path = wealth_path(oracles::make_series({0.10, -0.20, -0.15}));
    const auto episodes = segment_episodes(path, 0.10);
    REQUIRE(episodes.size() == 1);
    CHECK(episodes[0].truncated);
    CHECK_FALSE(episodes[0].recovery_index.has_value());
    CHECK(episodes[0].depth == Approx(1.0 - 0.88 * 0.85 / 1.10).margin(1e-12));
    CHECK(episodes[0].underwater_periods == 2);
}

TEST_CASE("an episode can begin at the sample start", "[episodes]") {
    const auto path = wealth_path(oracles::make_series({-0.15, 0.05, 0.25}));
    const auto episodes = segment_episodes(path, 0.10);
    REQUIRE(episodes.size() == 1);
    CHECK(episodes[0].peak_index == kSampleStartIndex);
    CHECK_FALSE(episodes[0].peak_date.has_value());
    CHECK(episodes[0].depth == Approx(0.15).margin(1e-12));
    REQUIRE(episodes[0].recovery_index.has_value());
    CHECK(*episodes[0].recovery_index == 2);
}

TEST_CASE("peak ties break to the latest index, recovery accepts equality", "[episodes]") {
    // wealth: 1.0, 1.1, 1.1, 0.9, 1.2 (exact tie via a zero return)
    const auto path = wealth_path(oracles::make_series({0.0, 0.10, 0.0, -0.20, 0.40}));
    REQUIRE(path.wealth[1] == path.wealth[2]);
    const auto episodes = segment_episodes(path, 0.10);
    REQUIRE(episodes.size() == 1);
    CHECK(episodes[0].peak_index == 2);  // latest index attaining the high

    // exact return to the prior high closes the episode (>=, not >);
    // dyadic returns make the wealth products exact
    const auto touch = wealth_path(oracles::make_series({0.25, -0.5, 1.0}));
    REQUIRE(touch.wealth[2] == touch.wealth[0]);
    const auto closed = segment_episodes(touch, 0.10);
    REQUIRE(closed.size() == 1);
    CHECK(closed[0].recovery_index == 2);
    CHECK_FALSE(closed[0].truncated);
}

TEST_CASE("sub-threshold stretches are skipped, not merged", "[episodes]") {
    // two dips: ~5% then ~15%, separated by a full recovery
    const std::vector<double> returns{0.10, -0.05, 0.08, -0.15, 0.25};
    const auto path = wealth_path(oracles::make_series(returns));

    const auto at_10 = segment_episodes(path, 0.10);
    REQUIRE(at_10.size() == 1);
    CHECK(at_10[0].depth == Approx(0.15).margin(1e-12));

    const auto at_4 = segment_episodes(path, 0.04);
    REQUIRE(at_4.size() == 2);
    CHECK(at_4[0].depth == Approx(0.05).margin(1e-12));
    CHECK(at_4[1].depth == Approx(0.15).margin(1e-12));
}

TEST_CASE("threshold outside (0,1) is rejected", "[episodes]") {
    const auto path = wealth_path(oracles::make_series({0.01}));
    CHECK_THROWS_AS(segment_episodes(path, 0.0), DomainError);
    CHECK_THROWS_AS(segment_episodes(path, 1.0), DomainError);
    CHECK_THROWS_AS(segment_episodes(path, -0.1), DomainError);
}

TEST_CASE("segmentation agrees with the quadratic oracle", "[episodes]") {
    auto rng = oracles::make_rng(90210);
    std::uniform_int_distribution<std::size_t> len(1, 200);
    for (int trial = 0; trial < 200; ++trial) {
        const auto series =
            oracles::make_series(oracles::random_returns(rng, len(rng), -0.07, 0.075));
        const auto path = wealth_path(series);
        for (double threshold : {0.05, 0.10, 0.20}) {
            const auto fast = segment_episodes(path, threshold);
            const auto slow = oracles::brute_force_episodes(path, threshold);
            REQUIRE(fast == slow);
        }
    }
}

TEST_CASE("lowering the threshold only adds episodes", "[episodes]") {
    auto rng = oracles::make_rng(31337);
    for (int trial = 0; trial < 50; ++trial) {
        const auto path =
            wealth_path(oracles::make_series(oracles::random_returns(rng, 150, -0.08, 0.08)));
        const auto coarse = segment_episodes(path, 0.15);
        const auto fine = segment_episodes(path, 0.05);
        CHECK(fine.size() >= coarse.size());
        for (const auto& e : coarse) {
            CHECK(std::find(fine.begin(), fine.end(), e) != fine.end());
            CHECK(e.depth >= 0.15);
        }
        for (const auto& e : fine) CHECK(e.depth >= 0.05);
    }
}

TEST_CASE("resolved episodes are stable under suffix extension", "[episodes]") {
    auto rng = oracles::make_rng(808);
    for (int trial = 0; trial < 30; ++trial) {
        const auto full_returns = oracles::random_returns(rng, 160, -0.08, 0.08);
        const std::vector<double> prefix_returns(full_returns.begin(),
                                                 full_returns.begin() + 100);
        const auto full = segment_episodes(
            wealth_path(oracles::make_series(full_returns)), 0.05);
        const auto prefix = segment_episodes(
            wealth_path(oracles::make_series(prefix_returns)), 0.05);
        for (const auto& e : prefix) {
            if (e.truncated) continue;
            CHECK(std::find(full.begin(), full.end(), e) != full.end());
        }
    }
}

TEST_CASE("portfolio drawdown over the benchmark window", "[episodes]") {
    const auto bench_path = wealth_path(oracles::make_series(kBenchE1));
    const auto episode = segment_episodes(bench_path, 0.10).at(0);

    SECTION("identity portfolio reproduces the benchmark depth") {
        CHECK(benchmark_window_drawdown(bench_path, episode) == episode.depth);
    }
    SECTION("worked portfolio loses exactly 10% in the window") {
        const auto port_path = wealth_path(oracles::make_series(kPortE1));
        CHECK(benchmark_window_drawdown(port_path, episode) == Approx(0.10).margin(1e-12));
    }
    SECTION("window exceeding the portfolio errors") {
        const auto short_path = wealth_path(oracles::make_series({0.01, 0.02}));
        CHECK_THROWS_AS(benchmark_window_drawdown(short_path, episode), WindowOutOfRange);
    }
}

TEST_CASE("rising portfolio clamps to zero drawdown on a start-anchored episode",
          "[episodes]") {
    const auto bench_path = wealth_path(oracles::make_series({-0.15, 0.05, 0.25}));
    const auto episode = segment_episodes(bench_path, 0.10).at(0);
    REQUIRE(episode.peak_index == kSampleStartIndex);
    const auto port_path = wealth_path(oracles::make_series({0.02, 0.02, 0.02}));
    CHECK(benchmark_window_drawdown(port_path, episode) == 0.0);
}

TEST_CASE("underwater duration inside and beyond the window", "[episodes]") {
    const auto bench_path = wealth_path(oracles::make_series(kBenchE1));
    const auto episode = segment_episodes(bench_path, 0.10).at(0);

    SECTION("identity portfolio matches the episode count") {
        const auto in_window = underwater_duration(bench_path, episode, false);
        CHECK(in_window.periods == episode.underwater_periods);
        CHECK_FALSE(in_window.truncated);
    }
    SECTION("worked portfolio spends two periods below the window start") {
        const auto port_path = wealth_path(oracles::make_series(kPortE1));
        CHECK(underwater_duration(port_path, episode, false).periods == 2);
        CHECK(underwater_duration(port_path, episode, true).periods == 2);
    }
    SECTION("portfolio never below the start counts zero") {
        const auto port_path = wealth_path(oracles::make_series({0.01, 0.01, 0.01, 0.01, 0.01}));
        CHECK(underwater_duration(port_path, episode, false).periods == 0);
        CHECK(underwater_duration(port_path, episode, true).periods == 0);
    }
}

TEST_CASE("extended duration scans past the benchmark recovery", "[episodes]") {
    const auto bench_path =
        wealth_path(oracles::make_series({0.10, -0.20, 0.30, 0.0, 0.0}));
    const auto episode = segment_episodes(bench_path, 0.10).at(0);
    REQUIRE(episode.recovery_index == 2);

    SECTION("portfolio recovers two periods later") {
        const auto port_path =
            wealth_path(oracles::make_series({0.10, -0.30, 0.10, 0.10, 0.20}));
        CHECK(underwater_duration(port_path, episode, false).periods == 2);
        const auto extended = underwater_duration(port_path, episode, true);
        CHECK(extended.periods == 3);
        CHECK_FALSE(extended.truncated);
    }
    SECTION("portfolio still under at sample end is flagged") {
        const auto port_path =
            wealth_path(oracles::make_series({0.10, -0.30, 0.10, 0.10, 0.05}));
        const auto extended = underwater_duration(port_path, episode, true);
        CHECK(extended.periods == 4);
        CHECK(extended.truncated);
    }
}
