#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pathlens/capture.hpp"
#include "pathlens/episodes.hpp"
#include "pathlens/errors.hpp"
#include "pathlens/pathcalc.hpp"
#include "pathlens/recovery.hpp"
#include "pathlens/scenarios.hpp"
#include "pathlens/series.hpp"

namespace pathlens {

enum class EpisodeBasis { benchmark_defined, portfolio_defined, both };

constexpr std::string_view to_string(EpisodeBasis b) {
    switch (b) {
        case EpisodeBasis::benchmark_defined: return "benchmark_defined";
        case EpisodeBasis::portfolio_defined: return "portfolio_defined";
        case EpisodeBasis::both: return "both";
    }
    return "";
}

inline std::optional<EpisodeBasis> episode_basis_from_string(std::string_view s) {
    for (EpisodeBasis b : {EpisodeBasis::benchmark_defined, EpisodeBasis::portfolio_defined,
                           EpisodeBasis::both}) {
        if (to_string(b) == s) return b;
    }
    return std::nullopt;
}

/// Disclosed inputs of a report. Fee treatment, data source, and liquidity
/// assumptions are free-text declarations carried verbatim; nothing is
/// computed from them. Likewise the recovery constraint is an
/// institution-specific statement, not a formula.
struct ProtocolInputs {
    std::string benchmark_label;
    std::string strategy_label;
    Frequency frequency = Frequency::monthly;
    Date sample_start;
    Date sample_end;
    std::string fee_treatment = "as provided";
    std::string data_source = "unspecified";
    std::string liquidity_assumptions = "unspecified";
    std::string recovery_constraint;
    double drawdown_threshold = 0.10;
    EpisodeBasis episode_basis = EpisodeBasis::both;

    bool operator==(const ProtocolInputs&) const = default;
};

inline ProtocolInputs make_inputs(const AlignedPair& pair, double threshold,
                                  EpisodeBasis basis = EpisodeBasis::both) {
    ProtocolInputs inputs;
    inputs.benchmark_label = pair.benchmark_label;
    inputs.strategy_label = pair.portfolio_label;
    inputs.frequency = pair.frequency;
    inputs.sample_start = pair.dates.front();
    inputs.sample_end = pair.dates.back();
    inputs.drawdown_threshold = threshold;
    inputs.episode_basis = basis;
    return inputs;
}

struct FullPeriodProfile {
    SummaryStats portfolio;
    SummaryStats benchmark;
    CaptureStats capture;
    Metric coskewness;  // auxiliary cross third moment, portfolio vs benchmark

    bool operator==(const FullPeriodProfile&) const = default;
};

struct BenchmarkEpisodeRow {
    Episode episode;
    RecoveryProfile profile;

    bool operator==(const BenchmarkEpisodeRow&) const = default;
};

/// Assembled six-section report. Benchmark-defined and portfolio-own episode
/// views are computed independently; each answers a different question.
struct ProtocolReport {
    ProtocolInputs inputs;
    FullPeriodProfile full_period;
    std::vector<BenchmarkEpisodeRow> benchmark_episodes;
    std::vector<Episode> own_episodes;
    std::optional<DesignCosts> costs;              // absent: declared unavailable
    std::optional<std::vector<DesignRow>> comparisons;

    bool operator==(const ProtocolReport&) const = default;
};

inline ProtocolReport build_report(const AlignedPair& pair, const ProtocolInputs& inputs,
                                   std::optional<DesignCosts> costs = std::nullopt,
                                   std::optional<std::vector<DesignRow>> comparisons =
                                       std::nullopt) {
    if (pair.size() == 0) throw EmptyInput("cannot report on an empty pair");
    if (inputs.frequency != pair.frequency)
        throw MetadataMismatch("declared frequency " +
                               std::string(to_string(inputs.frequency)) +
                               " differs from series frequency " +
                               std::string(to_string(pair.frequency)));
    if (inputs.sample_start != pair.dates.front() || inputs.sample_end != pair.dates.back())
        throw MetadataMismatch("declared sample period " + inputs.sample_start.to_string() +
                               ".." + inputs.sample_end.to_string() +
                               " differs from series dates " +
                               pair.dates.front().to_string() + ".." +
                               pair.dates.back().to_string());
    if (!(inputs.drawdown_threshold > 0.0 && inputs.drawdown_threshold < 1.0))
        throw DomainError("drawdown threshold must lie in (0, 1)");
    if (inputs.benchmark_label.empty() || inputs.strategy_label.empty())
        throw MetadataMismatch("benchmark and strategy labels must be non-empty");

    ProtocolReport report;
    report.inputs = inputs;

    const ReturnSeries portfolio = pair.portfolio_series();
    const ReturnSeries benchmark = pair.benchmark_series();
    report.full_period.portfolio = summary_stats(portfolio);
    report.full_period.benchmark = summary_stats(benchmark);
    report.full_period.capture = capture_stats(pair);
    try {
        report.full_period.coskewness = Metric::of(coskewness(portfolio, benchmark));
    } catch (const InsufficientData&) {
        report.full_period.coskewness = Metric::absent(Reason::insufficient_data);
    } catch (const DegenerateInput&) {
        report.full_period.coskewness = Metric::absent(Reason::degenerate_input);
    }

    const bool want_benchmark_view = inputs.episode_basis != EpisodeBasis::portfolio_defined;
    const bool want_own_view = inputs.episode_basis != EpisodeBasis::benchmark_defined;

    if (want_benchmark_view) {
        const WealthPath benchmark_path = wealth_path(benchmark);
        const WealthPath portfolio_path = wealth_path(portfolio);
        int id = 1;
        for (const Episode& episode :
             segment_episodes(benchmark_path, inputs.drawdown_threshold)) {
            BenchmarkEpisodeRow row;
            row.episode = episode;
            row.profile = recovery_profile(pair, portfolio_path, episode, id++);
            report.benchmark_episodes.push_back(std::move(row));
        }
    }
    if (want_own_view)
        report.own_episodes =
            segment_episodes(wealth_path(portfolio), inputs.drawdown_threshold);

    report.costs = std::move(costs);
    report.comparisons = std::move(comparisons);
    return report;
}

}  // namespace pathlens
