#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pathlens/errors.hpp"
#include "pathlens/pathcalc.hpp"
#include "pathlens/recovery.hpp"
#include "pathlens/series.hpp"

namespace pathlens {

/// Exposure rule that manufactures a candidate return stream from a
/// benchmark. `constant` scales every period by the same weight; `vol_target`
/// scales by target volatility over trailing realized volatility, capped,
/// using only returns strictly before the period being scaled.
struct ExposureRule {
    enum class Kind { constant, vol_target };

    Kind kind = Kind::constant;
    double weight = 1.0;      // constant
    double target_vol = 0.0;  // vol_target, annualized
    int lookback = 0;         // vol_target, periods
    double cap = 0.0;         // vol_target, max exposure

    static ExposureRule constant(double weight) {
        if (!(weight >= 0.0)) throw DomainError("constant exposure weight must be >= 0");
        ExposureRule rule;
        rule.kind = Kind::constant;
        rule.weight = weight;
        return rule;
    }

    static ExposureRule vol_target(double target_vol, int lookback, double cap) {
        if (!(target_vol > 0.0)) throw DomainError("target volatility must be > 0");
        if (lookback < 2) throw DomainError("volatility lookback must be >= 2 periods");
        if (!(cap >= 0.0)) throw DomainError("exposure cap must be >= 0");
        ExposureRule rule;
        rule.kind = Kind::vol_target;
        rule.target_vol = target_vol;
        rule.lookback = lookback;
        rule.cap = cap;
        return rule;
    }

    bool operator==(const ExposureRule&) const = default;
};

/// Scaled return stream plus the exposure applied at each period.
struct ScaledSeries {
    ReturnSeries series;
    std::vector<double> exposure;
};

/// Applies an exposure rule: scaled return P_t = w_t * B_t. For vol_target,
/// w_t = min(cap, target / trailing annualized vol of the lookback window
/// ending at t-1); the first `lookback` periods run at the neutral warm-up
/// exposure min(cap, 1), and a zero trailing vol puts the exposure at the
/// cap. Keeps the benchmark's dates and frequency.
inline ScaledSeries apply_rule(const ReturnSeries& benchmark, const ExposureRule& rule) {
    const auto& b = benchmark.returns();
    const std::size_t n = b.size();
    std::vector<double> exposure(n, 0.0);

    if (rule.kind == ExposureRule::Kind::constant) {
        for (std::size_t t = 0; t < n; ++t) exposure[t] = rule.weight;
    } else {
        const auto lookback = static_cast<std::size_t>(rule.lookback);
        if (n <= lookback)
            throw InsufficientData("vol_target needs more observations than its lookback");
        const double warmup = std::min(rule.cap, 1.0);
        const double ann = std::sqrt(static_cast<double>(benchmark.periods_per_year()));
        for (std::size_t t = 0; t < lookback; ++t) exposure[t] = warmup;
        for (std::size_t t = lookback; t < n; ++t) {
            const std::span<const double> window(b.data() + (t - lookback), lookback);
            const double trailing = stats::sample_stdev(window) * ann;
            exposure[t] = trailing > 0.0 ? std::min(rule.cap, rule.target_vol / trailing)
                                         : rule.cap;
        }
    }

    std::vector<double> scaled(n);
    for (std::size_t t = 0; t < n; ++t) scaled[t] = exposure[t] * b[t];
    std::string label = benchmark.label().empty() ? "scaled" : benchmark.label() + " (scaled)";
    return {ReturnSeries(benchmark.dates(), std::move(scaled), benchmark.frequency(),
                         std::move(label), benchmark.periods_per_year()),
            std::move(exposure)};
}

/// Disclosure costs of a design. Turnover is total |exposure change| per
/// year of sample; tracking error is the annualized sample stdev of the
/// active return; nothing is deducted from the return stream itself.
struct DesignCosts {
    double turnover = 0.0;
    double tracking_error = 0.0;
    double mean_exposure = 0.0;

    bool operator==(const DesignCosts&) const = default;
};

inline DesignCosts design_costs(std::span<const double> exposure,
                                std::span<const double> portfolio,
                                std::span<const double> benchmark, int periods_per_year) {
    if (exposure.empty() || portfolio.size() != benchmark.size())
        throw EmptyInput("design costs need matching non-empty inputs");
    DesignCosts costs;

    double total_change = 0.0;
    for (std::size_t t = 1; t < exposure.size(); ++t)
        total_change += std::abs(exposure[t] - exposure[t - 1]);
    const double years =
        static_cast<double>(exposure.size()) / static_cast<double>(periods_per_year);
    costs.turnover = total_change / years;

    if (portfolio.size() >= 2) {
        std::vector<double> active(portfolio.size());
        for (std::size_t t = 0; t < portfolio.size(); ++t)
            active[t] = portfolio[t] - benchmark[t];
        costs.tracking_error =
            stats::sample_stdev(active) * std::sqrt(static_cast<double>(periods_per_year));
    }
    costs.mean_exposure = stats::mean(exposure);
    return costs;
}

/// One comparison row: the candidate stream's full-period statistics,
/// capture vs the benchmark, per-episode recovery profiles, and costs.
struct DesignRow {
    std::string label;
    ExposureRule rule;
    SummaryStats stats;
    CaptureStats capture;
    std::vector<RecoveryProfile> profiles;
    DesignCosts costs;

    bool operator==(const DesignRow&) const = default;
};

/// Runs each rule through the full diagnostic pipeline against the same
/// benchmark. Row order matches input order.
inline std::vector<DesignRow> compare_designs(
    const ReturnSeries& benchmark,
    const std::vector<std::pair<std::string, ExposureRule>>& rules, double threshold) {
    if (rules.empty()) throw EmptyInput("compare_designs needs at least one rule");

    std::vector<DesignRow> rows;
    rows.reserve(rules.size());
    for (const auto& [label, rule] : rules) {
        ScaledSeries scaled = apply_rule(benchmark, rule);
        AlignedPair pair = align(scaled.series, benchmark);

        DesignRow row;
        row.label = label;
        row.rule = rule;
        row.stats = summary_stats(scaled.series);
        row.capture = capture_stats(pair);
        row.profiles = recovery_profiles(pair, threshold);
        row.costs = design_costs(scaled.exposure, pair.portfolio, pair.benchmark,
                                 benchmark.periods_per_year());
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace pathlens
