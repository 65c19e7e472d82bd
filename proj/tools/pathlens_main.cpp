// pathlens command-line interface: analyze, table-r, episodes, capture, compare.
//
// Exit codes: 0 success, 1 input/validation errors, 2 usage errors.
// stdout carries only the rendered artifact; diagnostics go to stderr.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pathlens/pathlens.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitUsage = 2;

struct Options {
    std::string config_path;  // consumed by a pre-parse scan; bound for help only
    std::string portfolio_path;
    std::string benchmark_path;
    std::string frequency = "monthly";
    double threshold = 0.10;
    std::string format = "json";
    std::string out;
    bool allow_inner_join = false;
    bool extended_underwater = false;
    int periods_per_year = 0;

    std::string benchmark_label;
    std::string strategy_label;
    std::string fee_treatment = "as provided";
    std::string data_source = "unspecified";
    std::string liquidity_assumptions = "unspecified";
    std::string recovery_constraint;
    std::string episode_basis = "both";

    std::vector<std::string> rule_specs;
    std::vector<double> depths;

    // defaults for a bare `voltarget` rule; lookback 0 means "by frequency"
    double rule_target_vol = 0.10;
    int rule_lookback = 0;
    double rule_cap = 1.5;
};

int default_lookback(pathlens::Frequency f) {
    switch (f) {
        case pathlens::Frequency::daily: return 21;
        case pathlens::Frequency::weekly: return 12;
        case pathlens::Frequency::monthly: return 12;
        case pathlens::Frequency::quarterly: return 4;
    }
    return 12;
}

/// `kind:params` rule spec: `constant:0.7` or `voltarget:0.10,12,1.5`
/// (target annualized vol, lookback periods, exposure cap). A bare
/// `voltarget` uses the configured defaults.
pathlens::ExposureRule parse_rule_spec(const std::string& spec, const Options& opt,
                                       pathlens::Frequency frequency) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos) {
        if (spec == "voltarget" || spec == "vol_target") {
            const int lookback =
                opt.rule_lookback > 0 ? opt.rule_lookback : default_lookback(frequency);
            return pathlens::ExposureRule::vol_target(opt.rule_target_vol, lookback,
                                                      opt.rule_cap);
        }
        throw pathlens::DomainError("rule spec '" + spec + "' is not of the form kind:params");
    }
    const std::string kind = spec.substr(0, colon);
    const std::string params = spec.substr(colon + 1);

    auto parse_num = [&](const std::string& text) {
        double v = 0.0;
        if (!pathlens::detail::parse_double(pathlens::detail::trim(text), v))
            throw pathlens::DomainError("bad number '" + text + "' in rule spec '" + spec + "'");
        return v;
    };

    if (kind == "constant") return pathlens::ExposureRule::constant(parse_num(params));
    if (kind == "voltarget" || kind == "vol_target") {
        std::vector<std::string> parts;
        std::size_t start = 0;
        while (true) {
            const auto comma = params.find(',', start);
            parts.push_back(params.substr(start, comma - start));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        if (parts.size() != 3)
            throw pathlens::DomainError("voltarget spec needs target,lookback,cap: '" + spec +
                                        "'");
        const double lookback = parse_num(parts[1]);
        if (lookback != static_cast<int>(lookback))
            throw pathlens::DomainError("lookback must be an integer in '" + spec + "'");
        return pathlens::ExposureRule::vol_target(parse_num(parts[0]),
                                                  static_cast<int>(lookback),
                                                  parse_num(parts[2]));
    }
    throw pathlens::DomainError("unknown rule kind '" + kind + "' (use constant or voltarget)");
}

/// Config file resolution: --config flag wins, then PATHLENS_CONFIG.
std::string find_config_path(int argc, char** argv) {
    for (int i = 1; i < argc; ++i) {
        const std::string_view arg = argv[i];
        if (arg == "--config" || arg == "-c") {
            if (i + 1 < argc) return argv[i + 1];
        } else if (arg.rfind("--config=", 0) == 0) {
            return std::string(arg.substr(9));
        }
    }
    if (const char* env = std::getenv("PATHLENS_CONFIG"); env && *env) return env;
    return {};
}

/// Flags override config values, which override built-in defaults.
void apply_config(const pathlens::Config& config, Options& opt) {
    auto text = [&](const char* key, std::string& target) {
        if (auto it = config.find(key); it != config.end()) target = it->second;
    };
    auto number = [&](const char* key, double& target) {
        if (auto it = config.find(key); it != config.end()) {
            if (!pathlens::detail::parse_double(it->second, target))
                throw pathlens::ConfigError("config value '" + it->second + "' for " + key +
                                            " is not a number");
        }
    };
    auto boolean = [&](const char* key, bool& target) {
        if (auto it = config.find(key); it != config.end()) {
            if (it->second == "true") {
                target = true;
            } else if (it->second == "false") {
                target = false;
            } else {
                throw pathlens::ConfigError("config value for " + std::string(key) +
                                            " must be true or false");
            }
        }
    };

    text("io.portfolio", opt.portfolio_path);
    text("io.benchmark", opt.benchmark_path);
    text("io.frequency", opt.frequency);
    text("io.format", opt.format);
    boolean("series.allow_inner_join", opt.allow_inner_join);
    if (auto it = config.find("series.periods_per_year"); it != config.end()) {
        double v = 0.0;
        if (!pathlens::detail::parse_double(it->second, v) || v < 1 ||
            v != static_cast<int>(v))
            throw pathlens::ConfigError("series.periods_per_year must be a positive integer");
        opt.periods_per_year = static_cast<int>(v);
    }
    number("episodes.threshold", opt.threshold);
    boolean("episodes.extended_underwater", opt.extended_underwater);
    text("protocol.benchmark_label", opt.benchmark_label);
    text("protocol.strategy_label", opt.strategy_label);
    text("protocol.fee_treatment", opt.fee_treatment);
    text("protocol.data_source", opt.data_source);
    text("protocol.liquidity_assumptions", opt.liquidity_assumptions);
    text("protocol.recovery_constraint", opt.recovery_constraint);
    text("protocol.episode_basis", opt.episode_basis);
    if (auto it = config.find("scenario.rules"); it != config.end() && opt.rule_specs.empty()) {
        std::istringstream words(it->second);
        std::string word;
        while (words >> word) opt.rule_specs.push_back(word);
    }
    number("scenario.target_vol", opt.rule_target_vol);
    number("scenario.cap", opt.rule_cap);
    if (auto it = config.find("scenario.lookback"); it != config.end()) {
        double v = 0.0;
        if (!pathlens::detail::parse_double(it->second, v) || v < 2 ||
            v != static_cast<int>(v))
            throw pathlens::ConfigError("scenario.lookback must be an integer >= 2");
        opt.rule_lookback = static_cast<int>(v);
    }
}

pathlens::RenderFormat resolve_format(const Options& opt) {
    auto format = pathlens::render_format_from_string(opt.format);
    if (!format)
        throw pathlens::ConfigError("unknown format '" + opt.format +
                                    "' (expected json, csv, or markdown)");
    return *format;
}

pathlens::Frequency resolve_frequency(const Options& opt) {
    auto freq = pathlens::frequency_from_string(opt.frequency);
    if (!freq)
        throw pathlens::ConfigError("unknown frequency '" + opt.frequency +
                                    "' (expected daily, weekly, monthly, or quarterly)");
    return *freq;
}

void check_threshold(const Options& opt) {
    if (!(opt.threshold > 0.0 && opt.threshold < 1.0))
        throw pathlens::DomainError("threshold must lie in (0, 1), got " +
                                    std::to_string(opt.threshold));
}

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw pathlens::ParseError("cannot write file '" + out_path + "'");
    out << text;
}

pathlens::ReturnSeries load_series(const std::string& path, const Options& opt) {
    return pathlens::load_csv(path, resolve_frequency(opt), {}, opt.periods_per_year);
}

pathlens::AlignedPair load_pair(const Options& opt) {
    const auto portfolio = load_series(opt.portfolio_path, opt);
    const auto benchmark = load_series(opt.benchmark_path, opt);
    return pathlens::align(portfolio, benchmark, opt.allow_inner_join);
}

std::vector<std::pair<std::string, pathlens::ExposureRule>> parse_rules(const Options& opt) {
    const pathlens::Frequency frequency = resolve_frequency(opt);
    std::vector<std::pair<std::string, pathlens::ExposureRule>> rules;
    rules.reserve(opt.rule_specs.size());
    for (const auto& spec : opt.rule_specs)
        rules.emplace_back(spec, parse_rule_spec(spec, opt, frequency));
    return rules;
}

int run_analyze(const Options& opt) {
    check_threshold(opt);
    auto pair = load_pair(opt);

    auto basis = pathlens::episode_basis_from_string(opt.episode_basis);
    if (!basis)
        throw pathlens::ConfigError("unknown episode basis '" + opt.episode_basis + "'");

    pathlens::ProtocolInputs inputs = pathlens::make_inputs(pair, opt.threshold, *basis);
    if (!opt.benchmark_label.empty()) inputs.benchmark_label = opt.benchmark_label;
    if (!opt.strategy_label.empty()) inputs.strategy_label = opt.strategy_label;
    inputs.fee_treatment = opt.fee_treatment;
    inputs.data_source = opt.data_source;
    inputs.liquidity_assumptions = opt.liquidity_assumptions;
    inputs.recovery_constraint = opt.recovery_constraint;

    std::optional<std::vector<pathlens::DesignRow>> comparisons;
    if (!opt.rule_specs.empty())
        comparisons =
            pathlens::compare_designs(pair.benchmark_series(), parse_rules(opt), opt.threshold);

    const auto report =
        pathlens::build_report(pair, inputs, std::nullopt, std::move(comparisons));
    const auto format = resolve_format(opt);

    if (format == pathlens::RenderFormat::csv && !opt.out.empty()) {
        for (const auto& [name, text] : pathlens::render_csv_sections(report))
            write_output(text, opt.out + "." + name + ".csv");
        return kExitOk;
    }
    write_output(pathlens::render(report, format), opt.out);
    return kExitOk;
}

int run_table_r(const Options& opt) {
    std::vector<double> depths =
        opt.depths.empty() ? pathlens::default_recovery_depths() : opt.depths;
    for (double d : depths) {
        if (!(d >= 0.0 && d < 1.0)) {
            std::cerr << "error: depth " << d << " outside [0, 1)\n";
            return kExitUsage;
        }
    }
    write_output(pathlens::render_recovery_table(pathlens::recovery_table(depths),
                                                 resolve_format(opt)),
                 opt.out);
    return kExitOk;
}

int run_episodes(const Options& opt) {
    check_threshold(opt);
    const auto format = resolve_format(opt);
    const bool have_portfolio = !opt.portfolio_path.empty();
    const bool have_benchmark = !opt.benchmark_path.empty();

    if (have_portfolio && have_benchmark) {
        auto pair = load_pair(opt);
        const auto benchmark_path = pathlens::wealth_path(pair.benchmark_series());
        const auto portfolio_path = pathlens::wealth_path(pair.portfolio_series());
        std::vector<pathlens::BenchmarkEpisodeRow> rows;
        int id = 1;
        for (const auto& episode :
             pathlens::segment_episodes(benchmark_path, opt.threshold)) {
            rows.push_back({episode, pathlens::recovery_profile(pair, portfolio_path, episode,
                                                                id++)});
        }
        write_output(pathlens::render_benchmark_episodes(rows, format), opt.out);
        return kExitOk;
    }

    const auto series =
        load_series(have_portfolio ? opt.portfolio_path : opt.benchmark_path, opt);
    const auto episodes =
        pathlens::segment_episodes(pathlens::wealth_path(series), opt.threshold);
    write_output(pathlens::render_episodes(episodes, format), opt.out);
    return kExitOk;
}

int run_capture(const Options& opt) {
    const auto pair = load_pair(opt);
    write_output(pathlens::render_capture(pathlens::capture_stats(pair), resolve_format(opt)),
                 opt.out);
    return kExitOk;
}

int run_compare(const Options& opt) {
    check_threshold(opt);
    const auto benchmark = load_series(opt.benchmark_path, opt);
    const auto rows = pathlens::compare_designs(benchmark, parse_rules(opt), opt.threshold);
    const auto format = resolve_format(opt);
    if (format == pathlens::RenderFormat::markdown) {
        write_output(pathlens::render_comparison_markdown(rows, opt.extended_underwater),
                     opt.out);
        return kExitOk;
    }
    write_output(pathlens::render_comparison(rows, format), opt.out);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pathlens: path-dependent portfolio risk diagnostics"};
    app.require_subcommand(1);

    Options opt;
    try {
        if (const std::string config_path = find_config_path(argc, argv);
            !config_path.empty()) {
            apply_config(pathlens::load_config(config_path), opt);
        }
    } catch (const pathlens::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }

    const auto add_common = [&](CLI::App* cmd, bool needs_series) {
        cmd->add_option("--config,-c", opt.config_path,
                        "config file (also via PATHLENS_CONFIG)");
        cmd->add_option("--format", opt.format, "output format")
            ->check(CLI::IsMember({"json", "csv", "markdown"}));
        cmd->add_option("--out", opt.out, "write output to this path instead of stdout");
        if (needs_series) {
            cmd->add_option("--frequency", opt.frequency, "return frequency")
                ->check(CLI::IsMember({"daily", "weekly", "monthly", "quarterly"}));
            cmd->add_flag("--allow-inner-join", opt.allow_inner_join,
                          "align on the date intersection instead of requiring equal sets");
        }
    };
    const auto add_threshold = [&](CLI::App* cmd) {
        cmd->add_option("--threshold", opt.threshold,
                        "episode drawdown threshold, fraction in (0,1)")
            ->check(CLI::Range(0.0, 1.0));
    };

    CLI::App* analyze = app.add_subcommand("analyze", "full recovery-efficiency report");
    analyze->add_option("--portfolio", opt.portfolio_path, "portfolio CSV")->required();
    analyze->add_option("--benchmark", opt.benchmark_path, "benchmark CSV")->required();
    add_common(analyze, true);
    add_threshold(analyze);
    analyze->add_option("--benchmark-label", opt.benchmark_label);
    analyze->add_option("--strategy-label", opt.strategy_label);
    analyze->add_option("--fee-treatment", opt.fee_treatment);
    analyze->add_option("--data-source", opt.data_source);
    analyze->add_option("--liquidity-assumptions", opt.liquidity_assumptions);
    analyze->add_option("--recovery-constraint", opt.recovery_constraint);
    analyze->add_option("--episode-basis", opt.episode_basis)
        ->check(CLI::IsMember({"benchmark_defined", "portfolio_defined", "both"}));
    analyze->add_option("--rule", opt.rule_specs,
                        "exposure rule spec for the comparison section (repeatable)");
    analyze->add_flag("--extended-underwater", opt.extended_underwater,
                      "prefer the extended underwater count in human-readable tables");

    CLI::App* table_r = app.add_subcommand("table-r", "drawdown depth vs required recovery");
    add_common(table_r, false);
    table_r->add_option("--depths", opt.depths, "drawdown depths, fractions in [0,1)")
        ->delimiter(',');
    table_r->get_option("--format")->default_str("markdown");

    CLI::App* episodes = app.add_subcommand("episodes", "submergence episode segmentation");
    episodes->add_option("--portfolio", opt.portfolio_path, "portfolio CSV");
    episodes->add_option("--benchmark", opt.benchmark_path, "benchmark CSV");
    add_common(episodes, true);
    add_threshold(episodes);
    episodes->add_flag("--extended-underwater", opt.extended_underwater);

    CLI::App* capture = app.add_subcommand("capture", "conditional capture ratios");
    capture->add_option("--portfolio", opt.portfolio_path, "portfolio CSV")->required();
    capture->add_option("--benchmark", opt.benchmark_path, "benchmark CSV")->required();
    add_common(capture, true);

    CLI::App* compare = app.add_subcommand("compare", "exposure-rule design comparison");
    compare->add_option("--benchmark", opt.benchmark_path, "benchmark CSV")->required();
    compare->add_option("--rule", opt.rule_specs, "exposure rule spec (repeatable)")
        ->required();
    add_common(compare, true);
    add_threshold(compare);
    compare->add_flag("--extended-underwater", opt.extended_underwater);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        // table-r defaults to markdown unless the user asked otherwise.
        if (app.got_subcommand(table_r) && table_r->get_option("--format")->empty() &&
            opt.format == "json") {
            opt.format = "markdown";
        }
        if (app.got_subcommand(analyze)) return run_analyze(opt);
        if (app.got_subcommand(table_r)) return run_table_r(opt);
        if (app.got_subcommand(episodes)) {
            if (opt.portfolio_path.empty() && opt.benchmark_path.empty()) {
                std::cerr << "error: episodes needs --portfolio and/or --benchmark\n";
                return kExitUsage;
            }
            return run_episodes(opt);
        }
        if (app.got_subcommand(capture)) return run_capture(opt);
        if (app.got_subcommand(compare)) return run_compare(opt);
    } catch (const pathlens::DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const pathlens::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitUsage;
}
