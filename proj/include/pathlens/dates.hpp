#pragma once

#include <charconv>
#include <compare>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>

namespace pathlens {

/// Calendar date, ISO-8601 text form YYYY-MM-DD. Plain value type; ordering
/// is lexicographic on (year, month, day).
struct Date {
    int year = 0;
    int month = 0;
    int day = 0;

    auto operator<=>(const Date&) const = default;

    static bool is_leap_year(int y) {
        return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
    }

    static int days_in_month(int y, int m) {
        static constexpr int kDays[12] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
        if (m < 1 || m > 12) return 0;
        if (m == 2 && is_leap_year(y)) return 29;
        return kDays[m - 1];
    }

    bool valid() const {
        return year >= 1 && year <= 9999 && month >= 1 && month <= 12 &&
               day >= 1 && day <= days_in_month(year, month);
    }

    /// Strict YYYY-MM-DD parse; rejects non-digits, wrong widths, and
    /// impossible calendar dates.
    static std::optional<Date> parse(std::string_view text) {
        if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
        auto digits = [](std::string_view s, int& out) {
            auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
            return ec == std::errc{} && ptr == s.data() + s.size();
        };
        Date d;
        if (!digits(text.substr(0, 4), d.year) || !digits(text.substr(5, 2), d.month) ||
            !digits(text.substr(8, 2), d.day)) {
            return std::nullopt;
        }
        if (!d.valid()) return std::nullopt;
        return d;
    }

    std::string to_string() const {
        char buf[16];
        std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", year, month, day);
        return buf;
    }
};

}  // namespace pathlens
