#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <vector>

#include "pathlens/errors.hpp"
#include "pathlens/pathcalc.hpp"

namespace pathlens {

/// Observation index of the implicit starting wealth (W = 1 before the first
/// observation). An episode whose peak is the sample start carries this.
inline constexpr std::ptrdiff_t kSampleStartIndex = -1;

/// One submergence episode: from the last index at the prior high, through
/// the trough, to the first index back at or above that high. The final
/// episode of a path that ends underwater has no recovery index and is
/// marked truncated; its depth is the depth observed so far.
struct Episode {
    std::ptrdiff_t peak_index = kSampleStartIndex;
    std::ptrdiff_t trough_index = 0;
    std::optional<std::ptrdiff_t> recovery_index;
    std::optional<Date> peak_date;  // empty when the peak is the sample start
    Date trough_date;
    std::optional<Date> recovery_date;
    double depth = 0.0;  // 1 - W_trough / W_peak, in (0, 1)
    int underwater_periods = 0;
    bool truncated = false;

    bool operator==(const Episode&) const = default;

    /// Last observation index of the episode window: the recovery index, or
    /// the end of the sample while unresolved.
    std::ptrdiff_t window_end(std::size_t path_size) const {
        return recovery_index ? *recovery_index
                              : static_cast<std::ptrdiff_t>(path_size) - 1;
    }
};

/// All maximal submergence episodes of depth >= threshold, in order.
/// Boundary conventions: the peak is the LAST index attaining the pre-episode
/// high, recovery is the FIRST index with wealth >= the peak value, trough
/// ties break to the earliest index. Sub-threshold underwater stretches are
/// dropped whole, never merged into neighbours.
inline std::vector<Episode> segment_episodes(const WealthPath& path, double threshold) {
    if (!(threshold > 0.0 && threshold < 1.0))
        throw DomainError("episode threshold must lie in (0, 1)");

    std::vector<Episode> out;
    double peak_wealth = 1.0;
    std::ptrdiff_t peak_index = kSampleStartIndex;
    bool underwater = false;
    std::ptrdiff_t trough_index = 0;
    double trough_wealth = 0.0;

    auto date_at = [&](std::ptrdiff_t i) { return path.dates[static_cast<std::size_t>(i)]; };
    auto emit = [&](std::optional<std::ptrdiff_t> recovery, int periods_below) {
        const double depth = 1.0 - trough_wealth / peak_wealth;
        if (depth >= threshold) {
            Episode ep;
            ep.peak_index = peak_index;
            ep.trough_index = trough_index;
            ep.recovery_index = recovery;
            if (peak_index >= 0) ep.peak_date = date_at(peak_index);
            ep.trough_date = date_at(trough_index);
            if (recovery) ep.recovery_date = date_at(*recovery);
            ep.depth = depth;
            ep.underwater_periods = periods_below;
            ep.truncated = !recovery.has_value();
            out.push_back(ep);
        }
    };

    const auto n = static_cast<std::ptrdiff_t>(path.size());
    for (std::ptrdiff_t t = 0; t < n; ++t) {
        const double w = path.wealth[static_cast<std::size_t>(t)];
        if (w >= peak_wealth) {
            if (underwater) {
                emit(t, static_cast<int>(t - peak_index - 1));
                underwater = false;
            }
            peak_wealth = w;
            peak_index = t;
        } else if (!underwater) {
            underwater = true;
            trough_index = t;
            trough_wealth = w;
        } else if (w < trough_wealth) {
            trough_index = t;
            trough_wealth = w;
        }
    }
    if (underwater) emit(std::nullopt, static_cast<int>(n - 1 - peak_index));
    return out;
}

/// Portfolio drawdown measured over a benchmark-defined episode window:
/// max(0, 1 - min_{a<=t<=b} W_t / W_a) on the portfolio path. The clamp
/// keeps a portfolio that never dips below its window-start value at 0.
inline double benchmark_window_drawdown(const WealthPath& portfolio, const Episode& episode) {
    const auto n = static_cast<std::ptrdiff_t>(portfolio.size());
    const std::ptrdiff_t start = episode.peak_index;
    const std::ptrdiff_t end = episode.window_end(portfolio.size());
    if (start < kSampleStartIndex || end >= n || end < start)
        throw WindowOutOfRange("episode window exceeds the portfolio path");

    const double ref = portfolio.wealth_at(start);
    double min_ratio = 1.0;
    for (std::ptrdiff_t t = std::max<std::ptrdiff_t>(start, 0); t <= end; ++t)
        min_ratio = std::min(min_ratio, portfolio.wealth_at(t) / ref);
    return std::max(0.0, 1.0 - min_ratio);
}

struct UnderwaterDuration {
    int periods = 0;
    /// Extended scans that hit the end of the sample before the portfolio
    /// regained its window-start value.
    bool truncated = false;

    bool operator==(const UnderwaterDuration&) const = default;
};

/// Periods the portfolio spent below its value at the episode start. The
/// in-window count covers (a, b]; with extended=true and the portfolio still
/// below that value at the window end, the count keeps running until the
/// portfolio first reaches it or the sample ends.
inline UnderwaterDuration underwater_duration(const WealthPath& portfolio,
                                              const Episode& episode, bool extended) {
    const auto n = static_cast<std::ptrdiff_t>(portfolio.size());
    const std::ptrdiff_t start = episode.peak_index;
    const std::ptrdiff_t end = episode.window_end(portfolio.size());
    if (start < kSampleStartIndex || end >= n || end < start)
        throw WindowOutOfRange("episode window exceeds the portfolio path");

    const double ref = portfolio.wealth_at(start);
    UnderwaterDuration result;
    for (std::ptrdiff_t t = start + 1; t <= end; ++t)
        if (portfolio.wealth_at(t) < ref) ++result.periods;

    if (extended && portfolio.wealth_at(end) < ref) {
        std::ptrdiff_t t = end + 1;
        for (; t < n && portfolio.wealth_at(t) < ref; ++t) ++result.periods;
        result.truncated = (t == n);
    }
    return result;
}

}  // namespace pathlens
