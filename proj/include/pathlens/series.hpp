#pragma once

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <fstream>
#include <istream>
#include <numeric>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pathlens/dates.hpp"
#include "pathlens/errors.hpp"

namespace pathlens {

enum class Frequency { daily, weekly, monthly, quarterly };

/// Conventional observation counts per year: 252 / 52 / 12 / 4.
constexpr int default_periods_per_year(Frequency f) {
    switch (f) {
        case Frequency::daily: return 252;
        case Frequency::weekly: return 52;
        case Frequency::monthly: return 12;
        case Frequency::quarterly: return 4;
    }
    return 0;
}

constexpr std::string_view to_string(Frequency f) {
    switch (f) {
        case Frequency::daily: return "daily";
        case Frequency::weekly: return "weekly";
        case Frequency::monthly: return "monthly";
        case Frequency::quarterly: return "quarterly";
    }
    return "";
}

inline std::optional<Frequency> frequency_from_string(std::string_view s) {
    for (Frequency f : {Frequency::daily, Frequency::weekly, Frequency::monthly,
                        Frequency::quarterly}) {
        if (to_string(f) == s) return f;
    }
    return std::nullopt;
}

/// Dated sequence of simple periodic returns. Immutable after construction;
/// construction enforces: non-empty, strictly increasing dates, every
/// return > -1 (wealth stays positive).
class ReturnSeries {
public:
    ReturnSeries(std::vector<Date> dates, std::vector<double> returns, Frequency frequency,
                 std::string label = {}, int periods_per_year = 0)
        : dates_(std::move(dates)),
          returns_(std::move(returns)),
          frequency_(frequency),
          label_(std::move(label)),
          periods_per_year_(periods_per_year > 0 ? periods_per_year
                                                 : default_periods_per_year(frequency)) {
        if (dates_.empty()) throw ValidationError("return series is empty");
        if (dates_.size() != returns_.size())
            throw ValidationError("date and return sequences differ in length");
        for (std::size_t i = 0; i < dates_.size(); ++i) {
            if (!dates_[i].valid())
                throw ValidationError("invalid date at position " + std::to_string(i));
            if (!(returns_[i] > -1.0))
                throw ValidationError("return " + std::to_string(returns_[i]) + " on " +
                                      dates_[i].to_string() + " is not > -1");
            if (i > 0 && !(dates_[i - 1] < dates_[i])) {
                if (dates_[i - 1] == dates_[i])
                    throw ValidationError("duplicate date " + dates_[i].to_string());
                throw ValidationError("dates not strictly increasing at " +
                                      dates_[i].to_string());
            }
        }
    }

    const std::vector<Date>& dates() const noexcept { return dates_; }
    const std::vector<double>& returns() const noexcept { return returns_; }
    Frequency frequency() const noexcept { return frequency_; }
    const std::string& label() const noexcept { return label_; }
    int periods_per_year() const noexcept { return periods_per_year_; }
    std::size_t size() const noexcept { return returns_.size(); }

    bool operator==(const ReturnSeries&) const = default;

private:
    std::vector<Date> dates_;
    std::vector<double> returns_;
    Frequency frequency_;
    std::string label_;
    int periods_per_year_;
};

/// Joint carrier for all conditional portfolio-vs-benchmark metrics. Both
/// legs share the date grid, frequency, and annualization constant.
struct AlignedPair {
    std::vector<Date> dates;
    std::vector<double> portfolio;
    std::vector<double> benchmark;
    Frequency frequency = Frequency::monthly;
    int periods_per_year = 12;
    std::string portfolio_label;
    std::string benchmark_label;

    std::size_t size() const noexcept { return dates.size(); }

    ReturnSeries portfolio_series() const {
        return ReturnSeries(dates, portfolio, frequency, portfolio_label, periods_per_year);
    }
    ReturnSeries benchmark_series() const {
        return ReturnSeries(dates, benchmark, frequency, benchmark_label, periods_per_year);
    }
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

inline bool parse_double(std::string_view s, double& out) {
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && ptr == s.data() + s.size();
}

/// Shortest decimal text that round-trips the exact double.
inline std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

}  // namespace detail

/// Reads a `date,return` CSV from a stream. Returns are parsed with
/// locale-independent from_chars, exactly once. Rows may arrive unsorted;
/// the result is sorted by date and then validated.
inline ReturnSeries load_csv(std::istream& in, Frequency frequency, std::string label = {},
                             int periods_per_year = 0) {
    std::string line;
    std::size_t line_no = 0;

    if (!std::getline(in, line)) throw ValidationError("empty file");
    ++line_no;
    std::string_view header = detail::trim(line);
    if (header.substr(0, 3) == "\xEF\xBB\xBF") header.remove_prefix(3);  // UTF-8 BOM
    if (header != "date,return")
        throw ParseError("expected header 'date,return', got '" + std::string(header) + "'",
                         line_no);

    std::vector<std::pair<Date, double>> rows;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view sv = detail::trim(line);
        if (sv.empty()) continue;
        auto comma = sv.find(',');
        if (comma == std::string_view::npos)
            throw ParseError("missing comma in row '" + std::string(sv) + "'", line_no);
        auto date = Date::parse(detail::trim(sv.substr(0, comma)));
        if (!date)
            throw ParseError("bad date '" + std::string(sv.substr(0, comma)) + "'", line_no);
        double ret = 0.0;
        if (!detail::parse_double(detail::trim(sv.substr(comma + 1)), ret))
            throw ParseError("bad return '" + std::string(sv.substr(comma + 1)) + "'", line_no);
        if (!(ret > -1.0))
            throw ValidationError("return " + detail::format_double(ret) + " on " +
                                  date->to_string() + " is not > -1 (line " +
                                  std::to_string(line_no) + ")");
        rows.emplace_back(*date, ret);
    }
    if (rows.empty()) throw ValidationError("empty file");

    std::stable_sort(rows.begin(), rows.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });

    std::vector<Date> dates;
    std::vector<double> returns;
    dates.reserve(rows.size());
    returns.reserve(rows.size());
    for (const auto& [d, r] : rows) {
        dates.push_back(d);
        returns.push_back(r);
    }
    return ReturnSeries(std::move(dates), std::move(returns), frequency, std::move(label),
                        periods_per_year);
}

inline ReturnSeries load_csv(const std::string& path, Frequency frequency,
                             std::string label = {}, int periods_per_year = 0) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file '" + path + "'");
    if (label.empty()) {
        auto slash = path.find_last_of("/\\");
        label = slash == std::string::npos ? path : path.substr(slash + 1);
        if (auto dot = label.rfind('.'); dot != std::string::npos && dot > 0)
            label.resize(dot);
    }
    return load_csv(in, frequency, std::move(label), periods_per_year);
}

/// Inverse of load_csv: emits `date,return` rows whose text re-parses to the
/// identical doubles.
inline std::string to_csv(const ReturnSeries& series) {
    std::string out = "date,return\n";
    for (std::size_t i = 0; i < series.size(); ++i) {
        out += series.dates()[i].to_string();
        out += ',';
        out += detail::format_double(series.returns()[i]);
        out += '\n';
    }
    return out;
}

inline void save_csv(const ReturnSeries& series, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write file '" + path + "'");
    out << to_csv(series);
}

/// Joins two series on their date grids. Strict mode (the default) demands
/// identical date sets; inner-join mode intersects them. Silent row dropping
/// distorts conditional observation counts, hence the strict default.
inline AlignedPair align(const ReturnSeries& portfolio, const ReturnSeries& benchmark,
                         bool allow_inner_join = false) {
    if (portfolio.frequency() != benchmark.frequency())
        throw FrequencyMismatch("portfolio is " + std::string(to_string(portfolio.frequency())) +
                                ", benchmark is " +
                                std::string(to_string(benchmark.frequency())));
    if (portfolio.periods_per_year() != benchmark.periods_per_year())
        throw FrequencyMismatch("periods_per_year differs between legs");

    AlignedPair pair;
    pair.frequency = portfolio.frequency();
    pair.periods_per_year = portfolio.periods_per_year();
    pair.portfolio_label = portfolio.label();
    pair.benchmark_label = benchmark.label();

    if (portfolio.dates() == benchmark.dates()) {
        pair.dates = portfolio.dates();
        pair.portfolio = portfolio.returns();
        pair.benchmark = benchmark.returns();
        return pair;
    }
    if (!allow_inner_join)
        throw AlignmentError("date sets differ; pass allow_inner_join to intersect them");

    std::size_t i = 0, j = 0;
    while (i < portfolio.size() && j < benchmark.size()) {
        if (portfolio.dates()[i] < benchmark.dates()[j]) {
            ++i;
        } else if (benchmark.dates()[j] < portfolio.dates()[i]) {
            ++j;
        } else {
            pair.dates.push_back(portfolio.dates()[i]);
            pair.portfolio.push_back(portfolio.returns()[i]);
            pair.benchmark.push_back(benchmark.returns()[j]);
            ++i;
            ++j;
        }
    }
    if (pair.dates.empty()) throw AlignmentError("date sets have empty intersection");
    return pair;
}

}  // namespace pathlens
