#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>

#include "pathlens/errors.hpp"
#include "pathlens/series.hpp"

namespace pathlens {

/// Flat `section.key = value` configuration. Lines starting with '#' (after
/// leading whitespace) and blank lines are ignored; values keep internal
/// spaces but are trimmed at the ends.
using Config = std::map<std::string, std::string>;

inline Config parse_config(std::istream& in) {
    Config config;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view sv = detail::trim(line);
        if (sv.empty() || sv.front() == '#') continue;
        const auto eq = sv.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("expected 'section.key = value' (line " +
                              std::to_string(line_no) + ")");
        const std::string key(detail::trim(sv.substr(0, eq)));
        const std::string value(detail::trim(sv.substr(eq + 1)));
        if (key.empty() || key.find('.') == std::string::npos)
            throw ConfigError("config key '" + key + "' is not of the form section.key (line " +
                              std::to_string(line_no) + ")");
        config[key] = value;
    }
    return config;
}

inline Config load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    return parse_config(in);
}

}  // namespace pathlens
