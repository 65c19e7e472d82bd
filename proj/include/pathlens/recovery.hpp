#pragma once

#include <span>
#include <vector>

#include "pathlens/capture.hpp"
#include "pathlens/episodes.hpp"
#include "pathlens/errors.hpp"
#include "pathlens/metric.hpp"

namespace pathlens {

/// Gain required to regain the prior peak after a fractional loss d:
/// 1/(1-d) - 1. Strictly increasing and convex on [0, 1).
inline double required_recovery(double d) {
    if (!(d >= 0.0 && d < 1.0))
        throw DomainError("drawdown depth must lie in [0, 1)");
    return 1.0 / (1.0 - d) - 1.0;
}

struct RecoveryRow {
    double depth = 0.0;
    double value_after = 0.0;    // 1 - depth
    double required_gain = 0.0;  // required_recovery(depth)

    bool operator==(const RecoveryRow&) const = default;
};

/// Reference depth ladder for the standard recovery table.
inline const std::vector<double>& default_recovery_depths() {
    static const std::vector<double> depths = {0.05, 0.10, 0.15, 0.20, 0.25,
                                               0.30, 0.40, 0.50, 0.60, 0.80};
    return depths;
}

inline std::vector<RecoveryRow> recovery_table(std::span<const double> depths) {
    std::vector<RecoveryRow> rows;
    rows.reserve(depths.size());
    for (double d : depths)
        rows.push_back({d, 1.0 - d, required_recovery(d)});
    return rows;
}

inline std::vector<RecoveryRow> recovery_table() {
    return recovery_table(default_recovery_depths());
}

/// How much the portfolio lowered the gain needed to recover from a
/// benchmark episode: 1 - R(d_portfolio)/R(d_benchmark). Positive means a
/// lighter recovery burden, negative a heavier one; undefined when the
/// benchmark itself had no drawdown.
inline double burden_reduction(double d_benchmark, double d_portfolio) {
    if (!(d_benchmark >= 0.0 && d_benchmark < 1.0) || !(d_portfolio >= 0.0 && d_portfolio < 1.0))
        throw DomainError("drawdown depths must lie in [0, 1)");
    if (d_benchmark == 0.0)
        throw UndefinedMetric("burden reduction is undefined for a zero benchmark drawdown");
    return 1.0 - required_recovery(d_portfolio) / required_recovery(d_benchmark);
}

/// Per-episode recovery-efficiency profile: portfolio drawdown over the
/// benchmark window, time underwater (in-window and extended until the
/// portfolio's own recovery), recovery burden reduction, and upside capture
/// over the benchmark's trough-to-recovery interval.
struct RecoveryProfile {
    int episode_id = 0;  // 1-based, chronological
    double d_benchmark = 0.0;
    double d_portfolio = 0.0;
    double r_benchmark = 0.0;
    double r_portfolio = 0.0;
    Metric br;
    int underwater_in_window = 0;
    int underwater_extended = 0;
    bool underwater_extended_truncated = false;
    Metric uc_recovery;
    bool truncated = false;  // benchmark episode unresolved; br is provisional

    bool operator==(const RecoveryProfile&) const = default;
};

inline RecoveryProfile recovery_profile(const AlignedPair& pair,
                                        const WealthPath& portfolio_path,
                                        const Episode& episode, int episode_id) {
    RecoveryProfile profile;
    profile.episode_id = episode_id;
    profile.truncated = episode.truncated;
    profile.d_benchmark = episode.depth;
    profile.d_portfolio = benchmark_window_drawdown(portfolio_path, episode);
    profile.r_benchmark = required_recovery(profile.d_benchmark);
    profile.r_portfolio = required_recovery(profile.d_portfolio);
    profile.br = Metric::of(burden_reduction(profile.d_benchmark, profile.d_portfolio));

    const UnderwaterDuration in_window = underwater_duration(portfolio_path, episode, false);
    const UnderwaterDuration extended = underwater_duration(portfolio_path, episode, true);
    profile.underwater_in_window = in_window.periods;
    profile.underwater_extended = extended.periods;
    profile.underwater_extended_truncated = extended.truncated;

    if (!episode.recovery_index) {
        profile.uc_recovery = Metric::absent(Reason::truncated_episode);
    } else {
        // Returns accruing from the trough to the recovery date are those at
        // indices (m, b].
        const auto lo = static_cast<std::size_t>(episode.trough_index + 1);
        const auto hi = static_cast<std::size_t>(*episode.recovery_index);
        profile.uc_recovery = capture_over_window(pair, lo, hi).uc_geometric;
    }
    return profile;
}

/// One profile per benchmark episode at the given threshold.
inline std::vector<RecoveryProfile> recovery_profiles(const AlignedPair& pair,
                                                      double threshold) {
    const WealthPath benchmark_path = wealth_path(pair.benchmark_series());
    const WealthPath portfolio_path = wealth_path(pair.portfolio_series());
    const std::vector<Episode> episodes = segment_episodes(benchmark_path, threshold);

    std::vector<RecoveryProfile> profiles;
    profiles.reserve(episodes.size());
    int id = 1;
    for (const Episode& episode : episodes)
        profiles.push_back(recovery_profile(pair, portfolio_path, episode, id++));
    return profiles;
}

}  // namespace pathlens
