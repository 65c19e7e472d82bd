#pragma once

#include <cmath>
#include <cstddef>

#include "pathlens/errors.hpp"
#include "pathlens/metric.hpp"
#include "pathlens/series.hpp"

namespace pathlens {

/// Per-period magnitude below which a benchmark conditional return makes
/// capture ratios numerically meaningless. Disclosed in every report.
inline constexpr double kCaptureGuardEpsilon = 1e-6;

/// Conditional capture in three conventions over benchmark-positive and
/// benchmark-negative periods. Zero-benchmark periods belong to neither set
/// and are counted separately. Underlying conditional returns and counts are
/// always populated when observations exist; ratio fields go absent (with a
/// reason, never 0) when a side has no observations or its benchmark
/// conditional return falls inside the guard band, in which case the guard
/// flag is set and no ratio of any convention is emitted for that side.
struct CaptureStats {
    int n_plus = 0;
    int n_minus = 0;
    int n_zero = 0;

    Metric portfolio_cond_up;    // conditional geometric per-period returns
    Metric portfolio_cond_down;
    Metric benchmark_cond_up;
    Metric benchmark_cond_down;

    Metric uc_geometric;
    Metric dc_geometric;
    Metric uc_arithmetic;
    Metric dc_arithmetic;
    Metric growth_factor_up;    // product-of-growth-factors ratio per side
    Metric growth_factor_down;

    Metric asymmetry;  // uc_geometric - dc_geometric, when both exist
    bool guard_up = false;
    bool guard_down = false;

    bool operator==(const CaptureStats&) const = default;
};

namespace detail {

struct ConditionalAccumulator {
    int n = 0;
    double product_portfolio = 1.0;
    double product_benchmark = 1.0;
    double sum_portfolio = 0.0;
    double sum_benchmark = 0.0;

    void add(double p, double b) {
        ++n;
        product_portfolio *= 1.0 + p;
        product_benchmark *= 1.0 + b;
        sum_portfolio += p;
        sum_benchmark += b;
    }
};

struct ConditionalSide {
    Metric portfolio_cond;
    Metric benchmark_cond;
    Metric geometric;
    Metric arithmetic;
    Metric growth_factor;
    bool guard = false;
};

inline ConditionalSide reduce_side(const ConditionalAccumulator& acc) {
    ConditionalSide side;
    if (acc.n == 0) {
        side.portfolio_cond = Metric::absent(Reason::insufficient_data);
        side.benchmark_cond = Metric::absent(Reason::insufficient_data);
        side.geometric = Metric::absent(Reason::insufficient_data);
        side.arithmetic = Metric::absent(Reason::insufficient_data);
        side.growth_factor = Metric::absent(Reason::insufficient_data);
        return side;
    }
    const double inv_n = 1.0 / static_cast<double>(acc.n);
    const double bench_cond = std::pow(acc.product_benchmark, inv_n) - 1.0;
    const double port_cond = std::pow(acc.product_portfolio, inv_n) - 1.0;
    side.benchmark_cond = Metric::of(bench_cond);
    side.portfolio_cond = Metric::of(port_cond);

    side.guard = std::abs(bench_cond) < kCaptureGuardEpsilon;
    if (side.guard) {
        side.geometric = Metric::absent(Reason::guard_epsilon);
        side.arithmetic = Metric::absent(Reason::guard_epsilon);
        side.growth_factor = Metric::absent(Reason::guard_epsilon);
        return side;
    }
    side.geometric = Metric::of(port_cond / bench_cond);
    // The conditional arithmetic mean can sit closer to zero than the
    // geometric return on the negative side; it gets its own stability check.
    const double mean_b = acc.sum_benchmark * inv_n;
    side.arithmetic = std::abs(mean_b) < kCaptureGuardEpsilon
                          ? Metric::absent(Reason::guard_epsilon)
                          : Metric::of(acc.sum_portfolio * inv_n / mean_b);
    side.growth_factor = Metric::of(acc.product_portfolio / acc.product_benchmark);
    return side;
}

inline CaptureStats capture_over_range(const AlignedPair& pair, std::size_t lo,
                                       std::size_t hi) {
    ConditionalAccumulator up, down;
    CaptureStats stats;
    for (std::size_t t = lo; t <= hi; ++t) {
        const double b = pair.benchmark[t];
        if (b > 0.0) {
            up.add(pair.portfolio[t], b);
        } else if (b < 0.0) {
            down.add(pair.portfolio[t], b);
        } else {
            ++stats.n_zero;
        }
    }
    stats.n_plus = up.n;
    stats.n_minus = down.n;

    const ConditionalSide u = reduce_side(up);
    const ConditionalSide d = reduce_side(down);
    stats.portfolio_cond_up = u.portfolio_cond;
    stats.benchmark_cond_up = u.benchmark_cond;
    stats.uc_geometric = u.geometric;
    stats.uc_arithmetic = u.arithmetic;
    stats.growth_factor_up = u.growth_factor;
    stats.guard_up = u.guard;

    stats.portfolio_cond_down = d.portfolio_cond;
    stats.benchmark_cond_down = d.benchmark_cond;
    stats.dc_geometric = d.geometric;
    stats.dc_arithmetic = d.arithmetic;
    stats.growth_factor_down = d.growth_factor;
    stats.guard_down = d.guard;

    if (stats.uc_geometric && stats.dc_geometric) {
        stats.asymmetry =
            Metric::of(stats.uc_geometric.value() - stats.dc_geometric.value());
    } else {
        stats.asymmetry = Metric::absent(!stats.uc_geometric ? stats.uc_geometric.reason()
                                                             : stats.dc_geometric.reason());
    }
    return stats;
}

}  // namespace detail

inline CaptureStats capture_stats(const AlignedPair& pair) {
    if (pair.size() == 0) throw EmptyInput("capture over an empty pair");
    return detail::capture_over_range(pair, 0, pair.size() - 1);
}

/// Capture restricted to the inclusive observation-index window [lo, hi].
inline CaptureStats capture_over_window(const AlignedPair& pair, std::size_t lo,
                                        std::size_t hi) {
    if (pair.size() == 0) throw EmptyInput("capture over an empty pair");
    if (lo > hi || hi >= pair.size())
        throw WindowOutOfRange("capture window [" + std::to_string(lo) + ", " +
                               std::to_string(hi) + "] exceeds pair of length " +
                               std::to_string(pair.size()));
    return detail::capture_over_range(pair, lo, hi);
}

}  // namespace pathlens
