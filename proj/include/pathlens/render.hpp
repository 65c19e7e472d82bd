#pragma once

#include <cmath>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include "pathlens/json_io.hpp"

namespace pathlens {

enum class RenderFormat { json, csv, markdown };

inline std::optional<RenderFormat> render_format_from_string(std::string_view s) {
    if (s == "json") return RenderFormat::json;
    if (s == "csv") return RenderFormat::csv;
    if (s == "markdown") return RenderFormat::markdown;
    return std::nullopt;
}

namespace textfmt {

inline std::string fixed(double v, int places) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", places, v);
    return buf;
}

/// One-decimal percent, the table convention: 0.111 -> "11.1%".
inline std::string pct1(double v) { return fixed(v * 100.0, 1) + "%"; }

/// Percent without a forced decimal for whole values: 0.05 -> "5%".
inline std::string pct_compact(double v) {
    const double scaled = v * 100.0;
    const double rounded = std::nearbyint(scaled);
    if (std::abs(scaled - rounded) < 1e-9)
        return std::to_string(static_cast<long long>(rounded)) + "%";
    return fixed(scaled, 1) + "%";
}

inline std::string absent_label(Reason r) {
    return "n/a (" + std::string(reason_code(r)) + ")";
}

inline std::string metric_pct1(const Metric& m) {
    return m ? pct1(m.value()) : absent_label(m.reason());
}

inline std::string metric_fixed(const Metric& m, int places) {
    return m ? fixed(m.value(), places) : absent_label(m.reason());
}

inline std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

inline std::string csv_double(double v) { return detail::format_double(v); }

inline std::string csv_metric(const Metric& m) {
    return m ? csv_double(m.value()) : std::string();
}

inline std::string csv_metric_reason(const Metric& m) {
    return m ? std::string() : std::string(reason_code(m.reason()));
}

}  // namespace textfmt

// ---------------------------------------------------------------------------
// Recovery reference table
// ---------------------------------------------------------------------------

inline std::string render_recovery_table_markdown(const std::vector<RecoveryRow>& rows) {
    std::string out =
        "| Drawdown depth D | Portfolio value after drawdown | Required recovery return "
        "R(D) |\n|---:|---:|---:|\n";
    for (const auto& row : rows) {
        out += "| " + textfmt::pct_compact(row.depth) + " | " +
               textfmt::fixed(row.value_after, 2) + " | " +
               textfmt::pct1(row.required_gain) + " |\n";
    }
    return out;
}

inline std::string render_recovery_table_csv(const std::vector<RecoveryRow>& rows) {
    std::string out = "depth,value_after,required_gain\n";
    for (const auto& row : rows) {
        out += textfmt::csv_double(row.depth) + "," + textfmt::csv_double(row.value_after) +
               "," + textfmt::csv_double(row.required_gain) + "\n";
    }
    return out;
}

inline std::string render_recovery_table(const std::vector<RecoveryRow>& rows,
                                         RenderFormat format) {
    switch (format) {
        case RenderFormat::markdown:
            return render_recovery_table_markdown(rows);
        case RenderFormat::csv:
            return render_recovery_table_csv(rows);
        case RenderFormat::json: {
            json j = json::array();
            for (const auto& row : rows) {
                json r;
                r["depth"] = row.depth;
                r["value_after"] = row.value_after;
                r["required_gain"] = row.required_gain;
                j.push_back(std::move(r));
            }
            return j.dump(2);
        }
    }
    return {};
}

// ---------------------------------------------------------------------------
// Capture statistics
// ---------------------------------------------------------------------------

inline std::string render_capture_markdown(const CaptureStats& c) {
    using namespace textfmt;
    std::string out = "| Measure | Up periods | Down periods |\n|---|---:|---:|\n";
    out += "| Observations | " + std::to_string(c.n_plus) + " | " + std::to_string(c.n_minus) +
           " |\n";
    out += "| Benchmark conditional return | " + metric_pct1(c.benchmark_cond_up) + " | " +
           metric_pct1(c.benchmark_cond_down) + " |\n";
    out += "| Portfolio conditional return | " + metric_pct1(c.portfolio_cond_up) + " | " +
           metric_pct1(c.portfolio_cond_down) + " |\n";
    out += "| Capture (geometric) | " + metric_pct1(c.uc_geometric) + " | " +
           metric_pct1(c.dc_geometric) + " |\n";
    out += "| Capture (arithmetic) | " + metric_pct1(c.uc_arithmetic) + " | " +
           metric_pct1(c.dc_arithmetic) + " |\n";
    out += "| Growth-factor ratio | " + metric_fixed(c.growth_factor_up, 4) + " | " +
           metric_fixed(c.growth_factor_down, 4) + " |\n";
    out += "| Guard triggered | " + std::string(c.guard_up ? "yes" : "no") + " | " +
           std::string(c.guard_down ? "yes" : "no") + " |\n";
    out += "\nCapture asymmetry (UC - DC, geometric): " + metric_pct1(c.asymmetry) + "\n";
    if (c.n_zero > 0)
        out += "Zero-benchmark periods excluded from both sides: " + std::to_string(c.n_zero) +
               "\n";
    return out;
}

inline std::string render_capture_csv(const CaptureStats& c) {
    using namespace textfmt;
    std::string out = "metric,value,reason\n";
    auto put_int = [&](const char* k, int v) {
        out += std::string(k) + "," + std::to_string(v) + ",\n";
    };
    auto put = [&](const char* k, const Metric& m) {
        out += std::string(k) + "," + csv_metric(m) + "," + csv_metric_reason(m) + "\n";
    };
    put_int("n_plus", c.n_plus);
    put_int("n_minus", c.n_minus);
    put_int("n_zero", c.n_zero);
    put("benchmark_cond_up", c.benchmark_cond_up);
    put("benchmark_cond_down", c.benchmark_cond_down);
    put("portfolio_cond_up", c.portfolio_cond_up);
    put("portfolio_cond_down", c.portfolio_cond_down);
    put("uc_geometric", c.uc_geometric);
    put("dc_geometric", c.dc_geometric);
    put("uc_arithmetic", c.uc_arithmetic);
    put("dc_arithmetic", c.dc_arithmetic);
    put("growth_factor_up", c.growth_factor_up);
    put("growth_factor_down", c.growth_factor_down);
    put("asymmetry", c.asymmetry);
    out += "guard_up," + std::string(c.guard_up ? "true" : "false") + ",\n";
    out += "guard_down," + std::string(c.guard_down ? "true" : "false") + ",\n";
    return out;
}

inline std::string render_capture(const CaptureStats& c, RenderFormat format) {
    switch (format) {
        case RenderFormat::markdown: return render_capture_markdown(c);
        case RenderFormat::csv: return render_capture_csv(c);
        case RenderFormat::json: return jsonio::to_json(c).dump(2);
    }
    return {};
}

// ---------------------------------------------------------------------------
// Episode tables
// ---------------------------------------------------------------------------

namespace textfmt {

inline std::string peak_label(const Episode& e) {
    return e.peak_date ? e.peak_date->to_string() : std::string("sample start");
}

inline std::string recovery_label(const Episode& e) {
    return e.recovery_date ? e.recovery_date->to_string() : std::string("unrecovered");
}

}  // namespace textfmt

inline std::string render_episodes_markdown(const std::vector<Episode>& episodes) {
    using namespace textfmt;
    if (episodes.empty()) return "No submergence episodes at this threshold.\n";
    std::string out =
        "| # | Peak | Trough | Recovery | Depth | Underwater periods | Truncated |\n"
        "|---:|---|---|---|---:|---:|---|\n";
    int id = 1;
    for (const auto& e : episodes) {
        out += "| " + std::to_string(id++) + " | " + peak_label(e) + " | " +
               e.trough_date.to_string() + " | " + recovery_label(e) + " | " + pct1(e.depth) +
               " | " + std::to_string(e.underwater_periods) + " | " +
               (e.truncated ? "yes" : "no") + " |\n";
    }
    return out;
}

inline std::string render_episodes_csv(const std::vector<Episode>& episodes) {
    std::string out =
        "episode_id,peak_date,trough_date,recovery_date,depth,underwater_periods,truncated\n";
    int id = 1;
    for (const auto& e : episodes) {
        out += std::to_string(id++) + "," +
               (e.peak_date ? e.peak_date->to_string() : std::string()) + "," +
               e.trough_date.to_string() + "," +
               (e.recovery_date ? e.recovery_date->to_string() : std::string()) + "," +
               textfmt::csv_double(e.depth) + "," + std::to_string(e.underwater_periods) +
               "," + (e.truncated ? "true" : "false") + "\n";
    }
    return out;
}

inline std::string render_episodes(const std::vector<Episode>& episodes,
                                   RenderFormat format) {
    switch (format) {
        case RenderFormat::markdown: return render_episodes_markdown(episodes);
        case RenderFormat::csv: return render_episodes_csv(episodes);
        case RenderFormat::json: {
            json j = json::array();
            for (const auto& e : episodes) j.push_back(jsonio::to_json(e));
            return j.dump(2);
        }
    }
    return {};
}

inline std::string render_benchmark_episodes_markdown(
    const std::vector<BenchmarkEpisodeRow>& rows) {
    using namespace textfmt;
    if (rows.empty()) return "No benchmark episodes at this threshold.\n";
    std::string out =
        "| # | Peak | Trough | Recovery | D benchmark | D portfolio | Required gain (B) | "
        "Required gain (P) | Burden reduction | Underwater (window) | Underwater (extended) | "
        "Recovery capture | Truncated |\n"
        "|---:|---|---|---|---:|---:|---:|---:|---:|---:|---:|---:|---|\n";
    for (const auto& row : rows) {
        const Episode& e = row.episode;
        const RecoveryProfile& p = row.profile;
        std::string extended = std::to_string(p.underwater_extended);
        if (p.underwater_extended_truncated) extended += "+";
        out += "| " + std::to_string(p.episode_id) + " | " + peak_label(e) + " | " +
               e.trough_date.to_string() + " | " + recovery_label(e) + " | " +
               pct1(p.d_benchmark) + " | " + pct1(p.d_portfolio) + " | " +
               pct1(p.r_benchmark) + " | " + pct1(p.r_portfolio) + " | " + metric_pct1(p.br) +
               (p.truncated ? " (provisional)" : "") + " | " +
               std::to_string(p.underwater_in_window) + " | " + extended + " | " +
               metric_pct1(p.uc_recovery) + " | " + (p.truncated ? "yes" : "no") + " |\n";
    }
    return out;
}

inline std::string render_benchmark_episodes_csv(const std::vector<BenchmarkEpisodeRow>& rows) {
    using namespace textfmt;
    std::string out =
        "episode_id,peak_date,trough_date,recovery_date,truncated,d_benchmark,d_portfolio,"
        "r_benchmark,r_portfolio,br,br_provisional,underwater_in_window,underwater_extended,"
        "underwater_extended_truncated,uc_recovery,uc_recovery_reason\n";
    for (const auto& row : rows) {
        const Episode& e = row.episode;
        const RecoveryProfile& p = row.profile;
        out += std::to_string(p.episode_id) + "," +
               (e.peak_date ? e.peak_date->to_string() : std::string()) + "," +
               e.trough_date.to_string() + "," +
               (e.recovery_date ? e.recovery_date->to_string() : std::string()) + "," +
               (e.truncated ? "true" : "false") + "," + csv_double(p.d_benchmark) + "," +
               csv_double(p.d_portfolio) + "," + csv_double(p.r_benchmark) + "," +
               csv_double(p.r_portfolio) + "," + csv_metric(p.br) + "," +
               (p.truncated ? "true" : "false") + "," +
               std::to_string(p.underwater_in_window) + "," +
               std::to_string(p.underwater_extended) + "," +
               (p.underwater_extended_truncated ? "true" : "false") + "," +
               csv_metric(p.uc_recovery) + "," + csv_metric_reason(p.uc_recovery) + "\n";
    }
    return out;
}

inline std::string render_benchmark_episodes(const std::vector<BenchmarkEpisodeRow>& rows,
                                             RenderFormat format) {
    switch (format) {
        case RenderFormat::markdown: return render_benchmark_episodes_markdown(rows);
        case RenderFormat::csv: return render_benchmark_episodes_csv(rows);
        case RenderFormat::json: {
            json j = json::array();
            for (const auto& row : rows) {
                json r;
                r["episode"] = jsonio::to_json(row.episode);
                r["profile"] = jsonio::to_json(row.profile);
                j.push_back(std::move(r));
            }
            return j.dump(2);
        }
    }
    return {};
}

// ---------------------------------------------------------------------------
// Design comparison
// ---------------------------------------------------------------------------

namespace textfmt {

inline std::string rule_label(const ExposureRule& r) {
    if (r.kind == ExposureRule::Kind::constant)
        return "constant w=" + fixed(r.weight, 2);
    return "vol_target " + pct1(r.target_vol) + ", lookback " + std::to_string(r.lookback) +
           ", cap " + fixed(r.cap, 2);
}

}  // namespace textfmt

/// With extended_underwater, the per-episode table shows the extended count
/// (portfolio scan past the benchmark recovery) instead of the in-window one.
inline std::string render_comparison_markdown(const std::vector<DesignRow>& rows,
                                              bool extended_underwater = false) {
    using namespace textfmt;
    std::string out =
        "| Design | Rule | Mean exposure | Ann. return | Ann. volatility | Max drawdown | "
        "Longest underwater | UC | DC | Asymmetry | Turnover/yr | Tracking error |\n"
        "|---|---|---:|---:|---:|---:|---:|---:|---:|---:|---:|---:|\n";
    for (const auto& row : rows) {
        out += "| " + row.label + " | " + rule_label(row.rule) + " | " +
               pct1(row.costs.mean_exposure) + " | " + pct1(row.stats.annualized_return) +
               " | " + metric_pct1(row.stats.annualized_volatility) + " | " +
               pct1(row.stats.max_drawdown) + " | " +
               std::to_string(row.stats.longest_underwater) + " | " +
               metric_pct1(row.capture.uc_geometric) + " | " +
               metric_pct1(row.capture.dc_geometric) + " | " +
               metric_pct1(row.capture.asymmetry) + " | " + fixed(row.costs.turnover, 3) +
               " | " + pct1(row.costs.tracking_error) + " |\n";
    }
    bool any_profiles = false;
    for (const auto& row : rows) any_profiles = any_profiles || !row.profiles.empty();
    if (any_profiles) {
        out += "\n| Design | Episode | D benchmark | D portfolio | Burden reduction | ";
        out += extended_underwater ? "Underwater (extended)" : "Underwater (window)";
        out +=
            " | Recovery capture | Truncated |\n"
            "|---|---:|---:|---:|---:|---:|---:|---|\n";
        for (const auto& row : rows) {
            for (const auto& p : row.profiles) {
                const int underwater =
                    extended_underwater ? p.underwater_extended : p.underwater_in_window;
                out += "| " + row.label + " | " + std::to_string(p.episode_id) + " | " +
                       pct1(p.d_benchmark) + " | " + pct1(p.d_portfolio) + " | " +
                       metric_pct1(p.br) + " | " + std::to_string(underwater) + " | " +
                       metric_pct1(p.uc_recovery) + " | " + (p.truncated ? "yes" : "no") +
                       " |\n";
            }
        }
    }
    return out;
}

inline std::string render_comparison_summary_csv(const std::vector<DesignRow>& rows) {
    using namespace textfmt;
    std::string out =
        "label,kind,weight,target_vol,lookback,cap,mean_exposure,annualized_return,"
        "annualized_volatility,max_drawdown,longest_underwater,uc_geometric,dc_geometric,"
        "asymmetry,turnover,tracking_error\n";
    for (const auto& row : rows) {
        out += csv_quote(row.label) + "," +
               (row.rule.kind == ExposureRule::Kind::constant ? "constant" : "vol_target") +
               "," + csv_double(row.rule.weight) + "," + csv_double(row.rule.target_vol) +
               "," + std::to_string(row.rule.lookback) + "," + csv_double(row.rule.cap) + "," +
               csv_double(row.costs.mean_exposure) + "," +
               csv_double(row.stats.annualized_return) + "," +
               csv_metric(row.stats.annualized_volatility) + "," +
               csv_double(row.stats.max_drawdown) + "," +
               std::to_string(row.stats.longest_underwater) + "," +
               csv_metric(row.capture.uc_geometric) + "," +
               csv_metric(row.capture.dc_geometric) + "," + csv_metric(row.capture.asymmetry) +
               "," + csv_double(row.costs.turnover) + "," +
               csv_double(row.costs.tracking_error) + "\n";
    }
    return out;
}

inline std::string render_comparison_profiles_csv(const std::vector<DesignRow>& rows) {
    using namespace textfmt;
    std::string out =
        "label,episode_id,d_benchmark,d_portfolio,br,underwater_in_window,"
        "underwater_extended,uc_recovery,uc_recovery_reason,truncated\n";
    for (const auto& row : rows) {
        for (const auto& p : row.profiles) {
            out += csv_quote(row.label) + "," + std::to_string(p.episode_id) + "," +
                   csv_double(p.d_benchmark) + "," + csv_double(p.d_portfolio) + "," +
                   csv_metric(p.br) + "," + std::to_string(p.underwater_in_window) + "," +
                   std::to_string(p.underwater_extended) + "," + csv_metric(p.uc_recovery) +
                   "," + csv_metric_reason(p.uc_recovery) + "," +
                   (p.truncated ? "true" : "false") + "\n";
        }
    }
    return out;
}

inline std::string render_comparison(const std::vector<DesignRow>& rows,
                                     RenderFormat format) {
    switch (format) {
        case RenderFormat::markdown: return render_comparison_markdown(rows);
        case RenderFormat::csv: {
            std::string out = render_comparison_summary_csv(rows);
            bool any_profiles = false;
            for (const auto& row : rows) any_profiles = any_profiles || !row.profiles.empty();
            if (any_profiles) out += "\n" + render_comparison_profiles_csv(rows);
            return out;
        }
        case RenderFormat::json: {
            json j = json::array();
            for (const auto& row : rows) j.push_back(jsonio::to_json(row));
            return j.dump(2);
        }
    }
    return {};
}

// ---------------------------------------------------------------------------
// Full protocol report
// ---------------------------------------------------------------------------

namespace detail {

inline std::string full_period_csv(const ProtocolReport& report) {
    using namespace textfmt;
    std::string out = "scope,metric,value,reason\n";
    auto stats_rows = [&](const char* scope, const SummaryStats& s) {
        auto put = [&](const char* k, const std::string& v, const std::string& reason = {}) {
            out += std::string(scope) + "," + k + "," + v + "," + reason + "\n";
        };
        put("arithmetic_mean", csv_double(s.arithmetic_mean));
        put("geometric_return", csv_double(s.geometric_return));
        put("volatility", csv_metric(s.volatility), csv_metric_reason(s.volatility));
        put("annualized_return", csv_double(s.annualized_return));
        put("annualized_volatility", csv_metric(s.annualized_volatility),
            csv_metric_reason(s.annualized_volatility));
        put("drag_approx", csv_double(s.drag_approx));
        put("skewness", csv_metric(s.skewness), csv_metric_reason(s.skewness));
        put("max_drawdown", csv_double(s.max_drawdown));
        put("longest_underwater", std::to_string(s.longest_underwater));
    };
    stats_rows("portfolio", report.full_period.portfolio);
    stats_rows("benchmark", report.full_period.benchmark);

    const CaptureStats& c = report.full_period.capture;
    auto cap = [&](const char* k, const Metric& m) {
        out += std::string("capture,") + k + "," + csv_metric(m) + "," +
               csv_metric_reason(m) + "\n";
    };
    out += "capture,n_plus," + std::to_string(c.n_plus) + ",\n";
    out += "capture,n_minus," + std::to_string(c.n_minus) + ",\n";
    out += "capture,n_zero," + std::to_string(c.n_zero) + ",\n";
    cap("benchmark_cond_up", c.benchmark_cond_up);
    cap("benchmark_cond_down", c.benchmark_cond_down);
    cap("portfolio_cond_up", c.portfolio_cond_up);
    cap("portfolio_cond_down", c.portfolio_cond_down);
    cap("uc_geometric", c.uc_geometric);
    cap("dc_geometric", c.dc_geometric);
    cap("uc_arithmetic", c.uc_arithmetic);
    cap("dc_arithmetic", c.dc_arithmetic);
    cap("growth_factor_up", c.growth_factor_up);
    cap("growth_factor_down", c.growth_factor_down);
    cap("asymmetry", c.asymmetry);
    out += "capture,guard_up," + std::string(c.guard_up ? "true" : "false") + ",\n";
    out += "capture,guard_down," + std::string(c.guard_down ? "true" : "false") + ",\n";
    out += "joint,coskewness," + csv_metric(report.full_period.coskewness) + "," +
           csv_metric_reason(report.full_period.coskewness) + "\n";
    return out;
}

inline std::string inputs_csv(const ProtocolInputs& in) {
    using namespace textfmt;
    std::string out = "key,value\n";
    auto put = [&](const char* k, const std::string& v) {
        out += std::string(k) + "," + csv_quote(v) + "\n";
    };
    put("benchmark_label", in.benchmark_label);
    put("strategy_label", in.strategy_label);
    put("frequency", std::string(to_string(in.frequency)));
    put("sample_start", in.sample_start.to_string());
    put("sample_end", in.sample_end.to_string());
    put("fee_treatment", in.fee_treatment);
    put("data_source", in.data_source);
    put("liquidity_assumptions", in.liquidity_assumptions);
    put("recovery_constraint", in.recovery_constraint);
    put("drawdown_threshold", csv_double(in.drawdown_threshold));
    put("episode_basis", std::string(to_string(in.episode_basis)));
    put("capture_guard_epsilon", csv_double(kCaptureGuardEpsilon));
    return out;
}

inline std::string costs_csv(const std::optional<DesignCosts>& costs) {
    if (!costs) return "status\ndeclared unavailable\n";
    std::string out = "turnover,tracking_error,mean_exposure\n";
    out += textfmt::csv_double(costs->turnover) + "," +
           textfmt::csv_double(costs->tracking_error) + "," +
           textfmt::csv_double(costs->mean_exposure) + "\n";
    return out;
}

inline std::size_t count_lines(const std::string& s) {
    std::size_t n = 0;
    for (char c : s)
        if (c == '\n') ++n;
    return n;
}

}  // namespace detail

/// CSV rendering of a report as named sections (one file each). The first
/// entry is a manifest listing exactly the populated sections and their data
/// row counts. The costs section always exists: step five of the protocol is
/// a mandatory disclosure, so an unsupplied cost model renders as a
/// declaration rather than an omission.
inline std::vector<std::pair<std::string, std::string>> render_csv_sections(
    const ProtocolReport& report) {
    std::vector<std::pair<std::string, std::string>> sections;
    sections.emplace_back("inputs", detail::inputs_csv(report.inputs));
    sections.emplace_back("full_period", detail::full_period_csv(report));
    sections.emplace_back("benchmark_episodes",
                          render_benchmark_episodes_csv(report.benchmark_episodes));
    sections.emplace_back("own_episodes", render_episodes_csv(report.own_episodes));
    sections.emplace_back("costs", detail::costs_csv(report.costs));
    if (report.comparisons) {
        sections.emplace_back("comparisons",
                              render_comparison_summary_csv(*report.comparisons));
        sections.emplace_back("comparisons_profiles",
                              render_comparison_profiles_csv(*report.comparisons));
    }

    std::string manifest = "section,data_rows\n";
    for (const auto& [name, text] : sections)
        manifest += name + "," + std::to_string(detail::count_lines(text) - 1) + "\n";
    sections.emplace(sections.begin(), "manifest", std::move(manifest));
    return sections;
}

inline std::string render_report_csv(const ProtocolReport& report) {
    std::string out;
    for (const auto& [name, text] : render_csv_sections(report)) {
        out += "# section: " + name + "\n";
        out += text;
        out += "\n";
    }
    return out;
}

inline std::string render_report_markdown(const ProtocolReport& report) {
    using namespace textfmt;
    const ProtocolInputs& in = report.inputs;
    std::string out = "# Recovery-Efficiency Report: " + in.strategy_label + " vs " +
                      in.benchmark_label + "\n\n";

    out += "## 1. Inputs\n\n";
    out += "- Benchmark: " + in.benchmark_label + "\n";
    out += "- Strategy: " + in.strategy_label + "\n";
    out += "- Frequency: " + std::string(to_string(in.frequency)) + "\n";
    out += "- Sample: " + in.sample_start.to_string() + " to " + in.sample_end.to_string() +
           "\n";
    out += "- Fee treatment: " + in.fee_treatment + "\n";
    out += "- Data source: " + in.data_source + "\n";
    out += "- Liquidity assumptions: " + in.liquidity_assumptions + "\n";
    out += "- Drawdown threshold: " + pct1(in.drawdown_threshold) + "\n";
    out += "- Episode basis: " + std::string(to_string(in.episode_basis)) + "\n";
    out += "- Capture guard epsilon: " + detail::format_double(kCaptureGuardEpsilon) + "\n\n";

    const SummaryStats& p = report.full_period.portfolio;
    const SummaryStats& b = report.full_period.benchmark;
    const CaptureStats& c = report.full_period.capture;
    out += "## 2. Full-Period Profile\n\n";
    out += "| Metric | Portfolio | Benchmark |\n|---|---:|---:|\n";
    out += "| Annualized return | " + pct1(p.annualized_return) + " | " +
           pct1(b.annualized_return) + " |\n";
    out += "| Annualized volatility | " + metric_pct1(p.annualized_volatility) + " | " +
           metric_pct1(b.annualized_volatility) + " |\n";
    out += "| Maximum drawdown | " + pct1(p.max_drawdown) + " | " + pct1(b.max_drawdown) +
           " |\n";
    out += "| Longest underwater (periods) | " + std::to_string(p.longest_underwater) +
           " | " + std::to_string(b.longest_underwater) + " |\n";
    out += "| Upside capture (geometric) | " + metric_pct1(c.uc_geometric) + " | — |\n";
    out += "| Downside capture (geometric) | " + metric_pct1(c.dc_geometric) + " | — |\n";
    out += "| Capture asymmetry | " + metric_pct1(c.asymmetry) + " | — |\n";
    out += "| Mean return (per period) | " + pct1(p.arithmetic_mean) + " | " +
           pct1(b.arithmetic_mean) + " |\n";
    out += "| Geometric return (per period) | " + pct1(p.geometric_return) + " | " +
           pct1(b.geometric_return) + " |\n";
    out += "| Variance drag approx (per period) | " + pct1(p.drag_approx) + " | " +
           pct1(b.drag_approx) + " |\n";
    out += "| Skewness | " + metric_fixed(p.skewness, 4) + " | " +
           metric_fixed(b.skewness, 4) + " |\n";
    out += "| Coskewness (auxiliary) | " +
           metric_fixed(report.full_period.coskewness, 4) + " | — |\n\n";

    out += "## 3. Benchmark Drawdown Episodes\n\n";
    out += render_benchmark_episodes_markdown(report.benchmark_episodes);
    out += "\n## 4. Portfolio Submergence Episodes\n\n";
    out += render_episodes_markdown(report.own_episodes);

    out += "\n## 5. Design Costs\n\n";
    if (report.costs) {
        out += "| Turnover per year | Tracking error | Mean exposure |\n|---:|---:|---:|\n";
        out += "| " + fixed(report.costs->turnover, 3) + " | " +
               pct1(report.costs->tracking_error) + " | " +
               pct1(report.costs->mean_exposure) + " |\n";
    } else {
        out += "Declared unavailable.\n";
    }

    out += "\n## 6. Recovery Constraint and Design Comparison\n\n";
    out += "Recovery constraint: " +
           (in.recovery_constraint.empty() ? std::string("not stated") :
                                             in.recovery_constraint) +
           "\n\n";
    if (report.comparisons) {
        out += render_comparison_markdown(*report.comparisons);
    } else {
        out += "No design comparison requested.\n";
    }
    return out;
}

inline std::string render(const ProtocolReport& report, RenderFormat format) {
    switch (format) {
        case RenderFormat::json: return report_to_json(report).dump(2);
        case RenderFormat::csv: return render_report_csv(report);
        case RenderFormat::markdown: return render_report_markdown(report);
    }
    return {};
}

}  // namespace pathlens
