#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "oracles.hpp"
#include "pathlens/scenarios.hpp"

using namespace pathlens;
using Catch::Approx;

TEST_CASE("constant rule at full weight reproduces the benchmark", "[scenarios]") {
    const auto benchmark = oracles::make_series({0.03, -0.02, 0.04, -0.05, 0.06}, "bench");
    const auto scaled = apply_rule(benchmark, ExposureRule::constant(1.0));

    CHECK(scaled.series.returns() == benchmark.returns());
    CHECK(scaled.series.dates() == benchmark.dates());
    CHECK(scaled.exposure == std::vector<double>(5, 1.0));

    const auto costs = design_costs(scaled.exposure, scaled.series.returns(),
                                    benchmark.returns(), 12);
    CHECK(costs.turnover == 0.0);
    CHECK(costs.tracking_error == 0.0);
    CHECK(costs.mean_exposure == 1.0);
}

TEST_CASE("constant rule scales every return by the weight", "[scenarios]") {
    const auto benchmark = oracles::make_series({0.03, -0.02, 0.04}, "bench");
    const auto scaled = apply_rule(benchmark, ExposureRule::constant(0.7));
    for (std::size_t t = 0; t < 3; ++t)
        CHECK(scaled.series.returns()[t] == 0.7 * benchmark.returns()[t]);
}

TEST_CASE("symmetric de-risking leaves no arithmetic capture asymmetry", "[scenarios]") {
    auto rng = oracles::make_rng(404);
    const auto benchmark =
        oracles::make_series(oracles::random_returns(rng, 90, -0.07, 0.08), "bench");
    const auto scaled = apply_rule(benchmark, ExposureRule::constant(0.7));
    const auto stats = capture_stats(align(scaled.series, benchmark));

    CHECK(stats.uc_arithmetic.value() == Approx(0.7).margin(1e-12));
    CHECK(stats.dc_arithmetic.value() == Approx(0.7).margin(1e-12));
    CHECK(std::abs(stats.uc_arithmetic.value() - stats.dc_arithmetic.value()) <= 1e-12);
}

TEST_CASE("exposure rule parameters are validated", "[scenarios]") {
    CHECK_THROWS_AS(ExposureRule::constant(-0.1), DomainError);
    CHECK_THROWS_AS(ExposureRule::vol_target(0.0, 12, 1.5), DomainError);
    CHECK_THROWS_AS(ExposureRule::vol_target(0.10, 1, 1.5), DomainError);
    CHECK_THROWS_AS(ExposureRule::vol_target(0.10, 12, -1.0), DomainError);
}

TEST_CASE("vol target needs more data than its lookback", "[scenarios]") {
    const auto benchmark = oracles::make_series({0.01, 0.02, 0.03});
    CHECK_THROWS_AS(apply_rule(benchmark, ExposureRule::vol_target(0.10, 3, 1.5)),
                    InsufficientData);
    CHECK_THROWS_AS(apply_rule(benchmark, ExposureRule::vol_target(0.10, 12, 1.5)),
                    InsufficientData);
}

TEST_CASE("vol target de-risks the high-volatility half", "[scenarios]") {
    // first half alternates +-4%, second half +-1%
    std::vector<double> returns;
    for (int i = 0; i < 60; ++i) returns.push_back(i % 2 ? -0.04 : 0.04);
    for (int i = 0; i < 60; ++i) returns.push_back(i % 2 ? -0.01 : 0.01);
    const auto benchmark = oracles::make_series(returns, "bench");
    const auto rule = ExposureRule::vol_target(0.10, 12, 1.5);
    const auto scaled = apply_rule(benchmark, rule);

    // oracle: trailing sample stdev of the 12 returns before t, annualized
    for (std::size_t t = 12; t < returns.size(); t += 17) {
        const std::span<const double> window(returns.data() + t - 12, 12);
        const double trailing = stats::sample_stdev(window) * std::sqrt(12.0);
        const double expected = trailing > 0.0 ? std::min(1.5, 0.10 / trailing) : 1.5;
        CHECK(scaled.exposure[t] == expected);
    }
    for (std::size_t t = 0; t < 12; ++t) CHECK(scaled.exposure[t] == 1.0);  // warm-up

    double high_vol_mean = 0.0, low_vol_mean = 0.0;
    for (std::size_t t = 12; t < 60; ++t) high_vol_mean += scaled.exposure[t];
    high_vol_mean /= 48.0;
    for (std::size_t t = 72; t < 120; ++t) low_vol_mean += scaled.exposure[t];
    low_vol_mean /= 48.0;
    CHECK(low_vol_mean > high_vol_mean);
}

TEST_CASE("vol target exposure never uses the current return", "[scenarios]") {
    auto rng = oracles::make_rng(112358);
    const auto returns = oracles::random_returns(rng, 80, -0.05, 0.05);
    const auto benchmark = oracles::make_series(returns, "bench");
    const auto rule = ExposureRule::vol_target(0.12, 10, 2.0);
    const auto full = apply_rule(benchmark, rule);

    for (std::size_t cut : {11UL, 40UL, 79UL}) {
        const std::vector<double> prefix_returns(returns.begin(),
                                                 returns.begin() + static_cast<long>(cut));
        const auto prefix = apply_rule(oracles::make_series(prefix_returns, "bench"), rule);
        for (std::size_t t = 0; t < cut; ++t) {
            REQUIRE(prefix.exposure[t] == full.exposure[t]);  // bit-exact
            REQUIRE(prefix.series.returns()[t] == full.series.returns()[t]);
        }
    }
}

TEST_CASE("constant scaling with weight below one never deepens the max drawdown",
          "[scenarios]") {
    auto rng = oracles::make_rng(2024);
    std::uniform_real_distribution<double> weight_dist(0.1, 1.0);
    for (int trial = 0; trial < 30; ++trial) {
        const auto benchmark =
            oracles::make_series(oracles::random_returns(rng, 100, -0.08, 0.08), "bench");
        const auto scaled = apply_rule(benchmark, ExposureRule::constant(weight_dist(rng)));
        const double dd_benchmark = summary_stats(benchmark).max_drawdown;
        const double dd_scaled = summary_stats(scaled.series).max_drawdown;
        CHECK(dd_scaled <= dd_benchmark + 1e-12);
    }
}

TEST_CASE("design costs aggregate turnover, tracking error, and mean exposure",
          "[scenarios]") {
    const std::vector<double> exposure{1.0, 0.5, 1.0, 0.5};
    const std::vector<double> portfolio{0.01, 0.02, 0.03, 0.04};
    const std::vector<double> benchmark{0.01, 0.03, 0.02, 0.04};
    const auto costs = design_costs(exposure, portfolio, benchmark, 12);

    // total |change| = 1.5 over 4 periods = 1/3 year
    CHECK(costs.turnover == Approx(1.5 * 12.0 / 4.0).margin(1e-12));
    CHECK(costs.mean_exposure == Approx(0.75).margin(1e-15));
    const std::vector<double> active{0.0, -0.01, 0.01, 0.0};
    CHECK(costs.tracking_error ==
          Approx(stats::sample_stdev(active) * std::sqrt(12.0)).margin(1e-12));
}

TEST_CASE("comparing the unit rule is a self-comparison", "[scenarios]") {
    const auto benchmark =
        oracles::make_series({0.06, -0.18, 0.04, 0.16, 0.09, -0.12, 0.20}, "bench");
    const auto rows = compare_designs(benchmark, {{"full", ExposureRule::constant(1.0)}},
                                      0.10);
    REQUIRE(rows.size() == 1);
    const DesignRow& row = rows[0];
    CHECK(row.label == "full");
    CHECK(row.costs.tracking_error == 0.0);
    CHECK(row.costs.turnover == 0.0);
    REQUIRE_FALSE(row.profiles.empty());
    for (const auto& p : row.profiles) CHECK(p.br.value() == 0.0);
    CHECK(row.capture.uc_geometric.value() == Approx(1.0).margin(1e-12));
}

TEST_CASE("comparison rows equal the manually composed pipeline", "[scenarios]") {
    auto rng = oracles::make_rng(909);
    const auto benchmark =
        oracles::make_series(oracles::random_returns(rng, 80, -0.08, 0.08), "bench");
    const std::vector<std::pair<std::string, ExposureRule>> rules{
        {"seventy", ExposureRule::constant(0.7)},
        {"voltarget", ExposureRule::vol_target(0.10, 12, 1.5)}};
    const auto rows = compare_designs(benchmark, rules, 0.10);
    REQUIRE(rows.size() == 2);

    for (std::size_t i = 0; i < rules.size(); ++i) {
        const auto scaled = apply_rule(benchmark, rules[i].second);
        const auto pair = align(scaled.series, benchmark);
        CHECK(rows[i].label == rules[i].first);
        CHECK(rows[i].stats == summary_stats(scaled.series));
        CHECK(rows[i].capture == capture_stats(pair));
        CHECK(rows[i].profiles == recovery_profiles(pair, 0.10));
        CHECK(rows[i].costs == design_costs(scaled.exposure, pair.portfolio, pair.benchmark,
                                            12));
    }
}

TEST_CASE("calm benchmark yields rows with no episodes", "[scenarios]") {
    const auto benchmark = oracles::make_series({0.01, 0.012, 0.008, 0.011}, "calm");
    const auto rows =
        compare_designs(benchmark, {{"w70", ExposureRule::constant(0.7)}}, 0.10);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].profiles.empty());
}

TEST_CASE("compare_designs requires at least one rule", "[scenarios]") {
    const auto benchmark = oracles::make_series({0.01, 0.02});
    CHECK_THROWS_AS(compare_designs(benchmark, {}, 0.10), EmptyInput);
}
