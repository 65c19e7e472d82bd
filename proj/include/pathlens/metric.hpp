#pragma once

#include <optional>
#include <stdexcept>
#include <string_view>

namespace pathlens {

/// Machine-readable reason attached to an absent metric. Serialized as the
/// snake_case code next to the null value, so downstream consumers can tell
/// "no data" apart from "zero".
enum class Reason {
    none,
    insufficient_data,
    guard_epsilon,
    undefined_br,
    truncated_episode,
    degenerate_input,
    not_supplied,
    sample_start,
};

constexpr std::string_view reason_code(Reason r) {
    switch (r) {
        case Reason::none: return "none";
        case Reason::insufficient_data: return "insufficient_data";
        case Reason::guard_epsilon: return "guard_epsilon";
        case Reason::undefined_br: return "undefined_br";
        case Reason::truncated_episode: return "truncated_episode";
        case Reason::degenerate_input: return "degenerate_input";
        case Reason::not_supplied: return "not_supplied";
        case Reason::sample_start: return "sample_start";
    }
    return "none";
}

inline std::optional<Reason> reason_from_code(std::string_view code) {
    for (Reason r : {Reason::none, Reason::insufficient_data, Reason::guard_epsilon,
                     Reason::undefined_br, Reason::truncated_episode,
                     Reason::degenerate_input, Reason::not_supplied, Reason::sample_start}) {
        if (reason_code(r) == code) return r;
    }
    return std::nullopt;
}

/// A numeric result that is either a value or an explained absence. Absent
/// metrics are never encoded as 0 or NaN.
class Metric {
public:
    Metric() = default;

    static Metric of(double v) {
        Metric m;
        m.value_ = v;
        return m;
    }

    static Metric absent(Reason r) {
        Metric m;
        m.reason_ = r;
        return m;
    }

    bool has_value() const noexcept { return value_.has_value(); }
    explicit operator bool() const noexcept { return has_value(); }

    /// Throws if the metric is absent.
    double value() const { return value_.value(); }

    double value_or(double fallback) const noexcept { return value_.value_or(fallback); }

    Reason reason() const noexcept { return reason_; }

    bool operator==(const Metric&) const = default;

private:
    std::optional<double> value_{};
    Reason reason_{Reason::none};
};

}  // namespace pathlens
