#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "pathlens/errors.hpp"
#include "pathlens/metric.hpp"
#include "pathlens/series.hpp"

namespace pathlens {

namespace stats {

inline double mean(std::span<const double> xs) {
    double sum = 0.0;
    for (double x : xs) sum += x;
    return sum / static_cast<double>(xs.size());
}

/// Central moment of given order, divide-by-n convention.
inline double central_moment(std::span<const double> xs, int order) {
    const double mu = mean(xs);
    double acc = 0.0;
    for (double x : xs) {
        const double d = x - mu;
        double term = d;
        for (int k = 1; k < order; ++k) term *= d;
        acc += term;
    }
    return acc / static_cast<double>(xs.size());
}

inline double population_variance(std::span<const double> xs) {
    if (xs.size() < 2) return 0.0;
    if (std::ranges::min(xs) == std::ranges::max(xs)) return 0.0;
    return central_moment(xs, 2);
}

inline double sample_variance(std::span<const double> xs) {
    if (xs.size() < 2) throw InsufficientData("sample variance needs at least 2 observations");
    const std::size_t n = xs.size();
    return population_variance(xs) * static_cast<double>(n) / static_cast<double>(n - 1);
}

inline double sample_stdev(std::span<const double> xs) {
    return std::sqrt(sample_variance(xs));
}

/// Standardized third central moment, divide-by-n moments. Zero-variance
/// input is a 0/0 and is rejected rather than silently defined.
inline double skewness(std::span<const double> xs) {
    if (xs.size() < 2) throw InsufficientData("skewness needs at least 2 observations");
    const double m2 = population_variance(xs);
    if (m2 == 0.0) throw DegenerateInput("skewness of a zero-variance series is undefined");
    return central_moment(xs, 3) / std::pow(m2, 1.5);
}

}  // namespace stats

/// Cumulative wealth path with the W_0 = 1 convention. The starting unit of
/// wealth is implicit: index t holds the wealth after observation t, and the
/// high-water mark includes the implicit starting point, so hwm >= 1 always.
struct WealthPath {
    std::vector<Date> dates;
    std::vector<double> wealth;    // prod_{s<=t} (1 + r_s)
    std::vector<double> hwm;       // max(1, max_{s<=t} wealth_s), non-decreasing
    std::vector<double> drawdown;  // 1 - wealth/hwm, in [0, 1)
    int periods_per_year = 0;

    std::size_t size() const noexcept { return wealth.size(); }

    /// Wealth at observation index, where index -1 is the implicit start.
    double wealth_at(std::ptrdiff_t index) const {
        return index < 0 ? 1.0 : wealth[static_cast<std::size_t>(index)];
    }
};

inline WealthPath wealth_path(const ReturnSeries& series) {
    WealthPath path;
    path.dates = series.dates();
    path.periods_per_year = series.periods_per_year();
    path.wealth.reserve(series.size());
    path.hwm.reserve(series.size());
    path.drawdown.reserve(series.size());

    double w = 1.0;
    double high = 1.0;
    for (double r : series.returns()) {
        w *= 1.0 + r;
        high = std::max(high, w);
        path.wealth.push_back(w);
        path.hwm.push_back(high);
        path.drawdown.push_back(1.0 - w / high);
    }
    return path;
}

/// Full-period summary. Reported volatility is the sample (n-1) convention;
/// the variance-drag term uses population moments, matching its definition
/// as a moment identity rather than an estimator.
struct SummaryStats {
    double arithmetic_mean = 0.0;   // per period
    double geometric_return = 0.0;  // per period
    Metric volatility;              // sample stdev per period
    double annualized_return = 0.0;
    Metric annualized_volatility;
    double drag_approx = 0.0;  // arithmetic_mean - population_variance / 2
    Metric skewness;
    double max_drawdown = 0.0;
    int longest_underwater = 0;  // longest run of consecutive periods with drawdown > 0

    bool operator==(const SummaryStats&) const = default;
};

inline SummaryStats summary_stats(const ReturnSeries& series) {
    const auto& r = series.returns();
    const auto n = static_cast<double>(r.size());
    const int ppy = series.periods_per_year();

    SummaryStats s;
    s.arithmetic_mean = stats::mean(r);

    double terminal = 1.0;
    for (double x : r) terminal *= 1.0 + x;
    s.geometric_return = std::pow(terminal, 1.0 / n) - 1.0;
    s.annualized_return = std::pow(1.0 + s.geometric_return, static_cast<double>(ppy)) - 1.0;

    s.drag_approx = s.arithmetic_mean - 0.5 * stats::population_variance(r);

    if (r.size() >= 2) {
        const double sd = stats::sample_stdev(r);
        s.volatility = Metric::of(sd);
        s.annualized_volatility = Metric::of(sd * std::sqrt(static_cast<double>(ppy)));
        try {
            s.skewness = Metric::of(stats::skewness(r));
        } catch (const DegenerateInput&) {
            s.skewness = Metric::absent(Reason::degenerate_input);
        }
    } else {
        s.volatility = Metric::absent(Reason::insufficient_data);
        s.annualized_volatility = Metric::absent(Reason::insufficient_data);
        s.skewness = Metric::absent(Reason::insufficient_data);
    }

    const WealthPath path = wealth_path(series);
    s.max_drawdown = *std::max_element(path.drawdown.begin(), path.drawdown.end());
    int run = 0;
    for (double dd : path.drawdown) {
        run = dd > 0.0 ? run + 1 : 0;
        s.longest_underwater = std::max(s.longest_underwater, run);
    }
    return s;
}

/// Standardized cross third moment E[(P-muP)(B-muB)^2] / (sigmaP sigmaB^2),
/// population moments. Auxiliary statistic; a constant portfolio contributes
/// nothing to benchmark asymmetry and scores 0, a constant benchmark leaves
/// the conditioning variable degenerate and is rejected.
inline double coskewness(const ReturnSeries& portfolio, const ReturnSeries& benchmark) {
    if (portfolio.dates() != benchmark.dates())
        throw AlignmentError("coskewness requires identically dated series");
    const auto& p = portfolio.returns();
    const auto& b = benchmark.returns();
    if (p.size() < 3) throw InsufficientData("coskewness needs at least 3 observations");

    const double var_b = stats::population_variance(b);
    if (var_b == 0.0) throw DegenerateInput("coskewness with a zero-variance benchmark");
    const double var_p = stats::population_variance(p);
    if (var_p == 0.0) return 0.0;

    const double mu_p = stats::mean(p);
    const double mu_b = stats::mean(b);
    double acc = 0.0;
    for (std::size_t t = 0; t < p.size(); ++t)
        acc += (p[t] - mu_p) * (b[t] - mu_b) * (b[t] - mu_b);
    acc /= static_cast<double>(p.size());
    return acc / (std::sqrt(var_p) * var_b);
}

}  // namespace pathlens
