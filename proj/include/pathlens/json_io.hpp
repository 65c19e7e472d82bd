#pragma once

#include <string>

#include <json.hpp>

#include "pathlens/capture.hpp"
#include "pathlens/episodes.hpp"
#include "pathlens/errors.hpp"
#include "pathlens/metric.hpp"
#include "pathlens/protocol.hpp"
#include "pathlens/recovery.hpp"
#include "pathlens/scenarios.hpp"

namespace pathlens {

using json = nlohmann::ordered_json;

inline constexpr std::string_view kReportVersion = "1.0";

namespace jsonio {

/// Absent metrics serialize as null plus a sibling `<name>_reason` code.
inline void put_metric(json& obj, const std::string& key, const Metric& m) {
    if (m.has_value()) {
        obj[key] = m.value();
    } else {
        obj[key] = nullptr;
        obj[key + "_reason"] = std::string(reason_code(m.reason()));
    }
}

inline Metric get_metric(const json& obj, const std::string& key) {
    const json& v = obj.at(key);
    if (!v.is_null()) return Metric::of(v.get<double>());
    const auto code = obj.at(key + "_reason").get<std::string>();
    const auto reason = reason_from_code(code);
    if (!reason) throw ParseError("unknown reason code '" + code + "' for " + key);
    return Metric::absent(*reason);
}

inline json to_json(const SummaryStats& s) {
    json j;
    j["arithmetic_mean"] = s.arithmetic_mean;
    j["geometric_return"] = s.geometric_return;
    put_metric(j, "volatility", s.volatility);
    j["annualized_return"] = s.annualized_return;
    put_metric(j, "annualized_volatility", s.annualized_volatility);
    j["drag_approx"] = s.drag_approx;
    put_metric(j, "skewness", s.skewness);
    j["max_drawdown"] = s.max_drawdown;
    j["longest_underwater"] = s.longest_underwater;
    return j;
}

inline SummaryStats summary_stats_from_json(const json& j) {
    SummaryStats s;
    s.arithmetic_mean = j.at("arithmetic_mean").get<double>();
    s.geometric_return = j.at("geometric_return").get<double>();
    s.volatility = get_metric(j, "volatility");
    s.annualized_return = j.at("annualized_return").get<double>();
    s.annualized_volatility = get_metric(j, "annualized_volatility");
    s.drag_approx = j.at("drag_approx").get<double>();
    s.skewness = get_metric(j, "skewness");
    s.max_drawdown = j.at("max_drawdown").get<double>();
    s.longest_underwater = j.at("longest_underwater").get<int>();
    return s;
}

inline json to_json(const CaptureStats& c) {
    json j;
    j["n_plus"] = c.n_plus;
    j["n_minus"] = c.n_minus;
    j["n_zero"] = c.n_zero;
    put_metric(j, "benchmark_cond_up", c.benchmark_cond_up);
    put_metric(j, "benchmark_cond_down", c.benchmark_cond_down);
    put_metric(j, "portfolio_cond_up", c.portfolio_cond_up);
    put_metric(j, "portfolio_cond_down", c.portfolio_cond_down);
    put_metric(j, "uc_geometric", c.uc_geometric);
    put_metric(j, "dc_geometric", c.dc_geometric);
    put_metric(j, "uc_arithmetic", c.uc_arithmetic);
    put_metric(j, "dc_arithmetic", c.dc_arithmetic);
    put_metric(j, "growth_factor_up", c.growth_factor_up);
    put_metric(j, "growth_factor_down", c.growth_factor_down);
    put_metric(j, "asymmetry", c.asymmetry);
    j["guard_up"] = c.guard_up;
    j["guard_down"] = c.guard_down;
    return j;
}

inline CaptureStats capture_stats_from_json(const json& j) {
    CaptureStats c;
    c.n_plus = j.at("n_plus").get<int>();
    c.n_minus = j.at("n_minus").get<int>();
    c.n_zero = j.at("n_zero").get<int>();
    c.benchmark_cond_up = get_metric(j, "benchmark_cond_up");
    c.benchmark_cond_down = get_metric(j, "benchmark_cond_down");
    c.portfolio_cond_up = get_metric(j, "portfolio_cond_up");
    c.portfolio_cond_down = get_metric(j, "portfolio_cond_down");
    c.uc_geometric = get_metric(j, "uc_geometric");
    c.dc_geometric = get_metric(j, "dc_geometric");
    c.uc_arithmetic = get_metric(j, "uc_arithmetic");
    c.dc_arithmetic = get_metric(j, "dc_arithmetic");
    c.growth_factor_up = get_metric(j, "growth_factor_up");
    c.growth_factor_down = get_metric(j, "growth_factor_down");
    c.asymmetry = get_metric(j, "asymmetry");
    c.guard_up = j.at("guard_up").get<bool>();
    c.guard_down = j.at("guard_down").get<bool>();
    return c;
}

inline json to_json(const Episode& e) {
    json j;
    j["peak_index"] = static_cast<std::int64_t>(e.peak_index);
    if (e.peak_date) {
        j["peak_date"] = e.peak_date->to_string();
    } else {
        j["peak_date"] = nullptr;
        j["peak_date_reason"] = std::string(reason_code(Reason::sample_start));
    }
    j["trough_index"] = static_cast<std::int64_t>(e.trough_index);
    j["trough_date"] = e.trough_date.to_string();
    if (e.recovery_index) {
        j["recovery_index"] = static_cast<std::int64_t>(*e.recovery_index);
        j["recovery_date"] = e.recovery_date->to_string();
    } else {
        j["recovery_index"] = nullptr;
        j["recovery_index_reason"] = std::string(reason_code(Reason::truncated_episode));
        j["recovery_date"] = nullptr;
        j["recovery_date_reason"] = std::string(reason_code(Reason::truncated_episode));
    }
    j["depth"] = e.depth;
    j["underwater_periods"] = e.underwater_periods;
    j["truncated"] = e.truncated;
    return j;
}

inline Date date_from_json(const json& v) {
    const auto text = v.get<std::string>();
    auto d = Date::parse(text);
    if (!d) throw ParseError("bad date '" + text + "'");
    return *d;
}

inline Episode episode_from_json(const json& j) {
    Episode e;
    e.peak_index = j.at("peak_index").get<std::int64_t>();
    if (!j.at("peak_date").is_null()) e.peak_date = date_from_json(j.at("peak_date"));
    e.trough_index = j.at("trough_index").get<std::int64_t>();
    e.trough_date = date_from_json(j.at("trough_date"));
    if (!j.at("recovery_index").is_null()) {
        e.recovery_index = j.at("recovery_index").get<std::int64_t>();
        e.recovery_date = date_from_json(j.at("recovery_date"));
    }
    e.depth = j.at("depth").get<double>();
    e.underwater_periods = j.at("underwater_periods").get<int>();
    e.truncated = j.at("truncated").get<bool>();
    return e;
}

inline json to_json(const RecoveryProfile& p) {
    json j;
    j["episode_id"] = p.episode_id;
    j["d_benchmark"] = p.d_benchmark;
    j["d_portfolio"] = p.d_portfolio;
    j["r_benchmark"] = p.r_benchmark;
    j["r_portfolio"] = p.r_portfolio;
    put_metric(j, "br", p.br);
    j["br_provisional"] = p.truncated;
    j["underwater_in_window"] = p.underwater_in_window;
    j["underwater_extended"] = p.underwater_extended;
    j["underwater_extended_truncated"] = p.underwater_extended_truncated;
    put_metric(j, "uc_recovery", p.uc_recovery);
    j["truncated"] = p.truncated;
    return j;
}

inline RecoveryProfile recovery_profile_from_json(const json& j) {
    RecoveryProfile p;
    p.episode_id = j.at("episode_id").get<int>();
    p.d_benchmark = j.at("d_benchmark").get<double>();
    p.d_portfolio = j.at("d_portfolio").get<double>();
    p.r_benchmark = j.at("r_benchmark").get<double>();
    p.r_portfolio = j.at("r_portfolio").get<double>();
    p.br = get_metric(j, "br");
    p.underwater_in_window = j.at("underwater_in_window").get<int>();
    p.underwater_extended = j.at("underwater_extended").get<int>();
    p.underwater_extended_truncated = j.at("underwater_extended_truncated").get<bool>();
    p.uc_recovery = get_metric(j, "uc_recovery");
    p.truncated = j.at("truncated").get<bool>();
    return p;
}

inline json to_json(const ExposureRule& r) {
    json j;
    j["kind"] = r.kind == ExposureRule::Kind::constant ? "constant" : "vol_target";
    j["weight"] = r.weight;
    j["target_vol"] = r.target_vol;
    j["lookback"] = r.lookback;
    j["cap"] = r.cap;
    return j;
}

inline ExposureRule exposure_rule_from_json(const json& j) {
    ExposureRule r;
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "constant") {
        r.kind = ExposureRule::Kind::constant;
    } else if (kind == "vol_target") {
        r.kind = ExposureRule::Kind::vol_target;
    } else {
        throw ParseError("unknown exposure rule kind '" + kind + "'");
    }
    r.weight = j.at("weight").get<double>();
    r.target_vol = j.at("target_vol").get<double>();
    r.lookback = j.at("lookback").get<int>();
    r.cap = j.at("cap").get<double>();
    return r;
}

inline json to_json(const DesignCosts& c) {
    json j;
    j["turnover"] = c.turnover;
    j["tracking_error"] = c.tracking_error;
    j["mean_exposure"] = c.mean_exposure;
    return j;
}

inline DesignCosts design_costs_from_json(const json& j) {
    DesignCosts c;
    c.turnover = j.at("turnover").get<double>();
    c.tracking_error = j.at("tracking_error").get<double>();
    c.mean_exposure = j.at("mean_exposure").get<double>();
    return c;
}

inline json to_json(const DesignRow& row) {
    json j;
    j["label"] = row.label;
    j["rule"] = to_json(row.rule);
    j["stats"] = to_json(row.stats);
    j["capture"] = to_json(row.capture);
    json profiles = json::array();
    for (const auto& p : row.profiles) profiles.push_back(to_json(p));
    j["profiles"] = std::move(profiles);
    j["costs"] = to_json(row.costs);
    return j;
}

inline DesignRow design_row_from_json(const json& j) {
    DesignRow row;
    row.label = j.at("label").get<std::string>();
    row.rule = exposure_rule_from_json(j.at("rule"));
    row.stats = summary_stats_from_json(j.at("stats"));
    row.capture = capture_stats_from_json(j.at("capture"));
    for (const auto& p : j.at("profiles")) row.profiles.push_back(recovery_profile_from_json(p));
    row.costs = design_costs_from_json(j.at("costs"));
    return row;
}

inline json to_json(const ProtocolInputs& in) {
    json j;
    j["benchmark_label"] = in.benchmark_label;
    j["strategy_label"] = in.strategy_label;
    j["frequency"] = std::string(to_string(in.frequency));
    j["sample_start"] = in.sample_start.to_string();
    j["sample_end"] = in.sample_end.to_string();
    j["fee_treatment"] = in.fee_treatment;
    j["data_source"] = in.data_source;
    j["liquidity_assumptions"] = in.liquidity_assumptions;
    j["recovery_constraint"] = in.recovery_constraint;
    j["drawdown_threshold"] = in.drawdown_threshold;
    j["episode_basis"] = std::string(to_string(in.episode_basis));
    j["capture_guard_epsilon"] = kCaptureGuardEpsilon;
    return j;
}

inline ProtocolInputs protocol_inputs_from_json(const json& j) {
    ProtocolInputs in;
    in.benchmark_label = j.at("benchmark_label").get<std::string>();
    in.strategy_label = j.at("strategy_label").get<std::string>();
    const auto freq = frequency_from_string(j.at("frequency").get<std::string>());
    if (!freq) throw ParseError("unknown frequency in report");
    in.frequency = *freq;
    in.sample_start = date_from_json(j.at("sample_start"));
    in.sample_end = date_from_json(j.at("sample_end"));
    in.fee_treatment = j.at("fee_treatment").get<std::string>();
    in.data_source = j.at("data_source").get<std::string>();
    in.liquidity_assumptions = j.at("liquidity_assumptions").get<std::string>();
    in.recovery_constraint = j.at("recovery_constraint").get<std::string>();
    in.drawdown_threshold = j.at("drawdown_threshold").get<double>();
    const auto basis = episode_basis_from_string(j.at("episode_basis").get<std::string>());
    if (!basis) throw ParseError("unknown episode basis in report");
    in.episode_basis = *basis;
    return in;
}

}  // namespace jsonio

inline json report_to_json(const ProtocolReport& report) {
    json j;
    j["report_version"] = std::string(kReportVersion);
    j["inputs"] = jsonio::to_json(report.inputs);

    json full;
    full["portfolio"] = jsonio::to_json(report.full_period.portfolio);
    full["benchmark"] = jsonio::to_json(report.full_period.benchmark);
    full["capture"] = jsonio::to_json(report.full_period.capture);
    jsonio::put_metric(full, "coskewness", report.full_period.coskewness);
    j["full_period"] = std::move(full);

    json episodes = json::array();
    for (const auto& row : report.benchmark_episodes) {
        json r;
        r["episode"] = jsonio::to_json(row.episode);
        r["profile"] = jsonio::to_json(row.profile);
        episodes.push_back(std::move(r));
    }
    j["benchmark_episodes"] = std::move(episodes);

    json own = json::array();
    for (const auto& e : report.own_episodes) own.push_back(jsonio::to_json(e));
    j["own_episodes"] = std::move(own);

    if (report.costs) {
        j["costs"] = jsonio::to_json(*report.costs);
    } else {
        j["costs"] = nullptr;
        j["costs_reason"] = std::string(reason_code(Reason::not_supplied));
    }
    if (report.comparisons) {
        json rows = json::array();
        for (const auto& row : *report.comparisons) rows.push_back(jsonio::to_json(row));
        j["comparisons"] = std::move(rows);
    } else {
        j["comparisons"] = nullptr;
        j["comparisons_reason"] = std::string(reason_code(Reason::not_supplied));
    }
    return j;
}

inline ProtocolReport report_from_json(const json& j) {
    const auto version = j.at("report_version").get<std::string>();
    if (version != kReportVersion)
        throw ParseError("unsupported report_version '" + version + "'");

    ProtocolReport report;
    report.inputs = jsonio::protocol_inputs_from_json(j.at("inputs"));

    const json& full = j.at("full_period");
    report.full_period.portfolio = jsonio::summary_stats_from_json(full.at("portfolio"));
    report.full_period.benchmark = jsonio::summary_stats_from_json(full.at("benchmark"));
    report.full_period.capture = jsonio::capture_stats_from_json(full.at("capture"));
    report.full_period.coskewness = jsonio::get_metric(full, "coskewness");

    for (const auto& r : j.at("benchmark_episodes")) {
        BenchmarkEpisodeRow row;
        row.episode = jsonio::episode_from_json(r.at("episode"));
        row.profile = jsonio::recovery_profile_from_json(r.at("profile"));
        report.benchmark_episodes.push_back(std::move(row));
    }
    for (const auto& e : j.at("own_episodes"))
        report.own_episodes.push_back(jsonio::episode_from_json(e));

    if (!j.at("costs").is_null())
        report.costs = jsonio::design_costs_from_json(j.at("costs"));
    if (!j.at("comparisons").is_null()) {
        std::vector<DesignRow> rows;
        for (const auto& r : j.at("comparisons"))
            rows.push_back(jsonio::design_row_from_json(r));
        report.comparisons = std::move(rows);
    }
    return report;
}

inline ProtocolReport report_from_json_text(const std::string& text) {
    return report_from_json(json::parse(text));
}

}  // namespace pathlens
