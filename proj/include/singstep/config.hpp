#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "singstep/core_model.hpp"
#include "singstep/errors.hpp"

namespace singstep {

enum class OutputFormat { csv, markdown };

// One experiment grid: every scheme is combined with every kappa, domain
// length, final time and step count. Flat key=value text format with
// repeated keys forming lists.
struct ExperimentConfig {
    std::vector<SchemeId> schemes;
    double alpha = 0.5;
    std::vector<double> kappas;
    bool ode = false;                 // scalar problem instead of an interval
    std::vector<double> lengths;      // interval lengths; empty for ode
    std::vector<double> t_finals;
    std::vector<int> steps;           // N values at which orders are reported
    int cells = 2000;                 // M
    std::vector<OutputFormat> formats{OutputFormat::csv};
    std::optional<std::string> preset_name;
    double conjecture_c = 1.0;
    bool bounds = false;
    bool kink = false;

    bool operator==(const ExperimentConfig&) const = default;
};

namespace config_detail {

inline std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    auto e = s.find_last_not_of(" \t\r");
    if (b == std::string::npos) return "";
    return s.substr(b, e - b + 1);
}

inline SchemeId parse_scheme(const std::string& v, int line) {
    if (v == "ie") return SchemeId::ie;
    if (v == "cn") return SchemeId::cn;
    if (v == "bdf2") return SchemeId::bdf2;
    if (v == "l1") return SchemeId::l1;
    throw ConfigError("line " + std::to_string(line) + ": unknown scheme '" + v +
                      "' (expected ie|cn|bdf2|l1)");
}

inline double parse_real(const std::string& v, const std::string& key, int line) {
    try {
        std::size_t pos = 0;
        double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("line " + std::to_string(line) + ": key '" + key +
                          "' expects a number, got '" + v + "'");
    }
}

inline int parse_int(const std::string& v, const std::string& key, int line) {
    const double x = parse_real(v, key, line);
    if (x != std::floor(x) || std::abs(x) > 1e9) {
        throw ConfigError("line " + std::to_string(line) + ": key '" + key +
                          "' expects an integer, got '" + v + "'");
    }
    return static_cast<int>(x);
}

inline bool parse_bool(const std::string& v, const std::string& key, int line) {
    if (v == "true" || v == "1" || v == "on") return true;
    if (v == "false" || v == "0" || v == "off") return false;
    throw ConfigError("line " + std::to_string(line) + ": key '" + key +
                      "' expects true|false, got '" + v + "'");
}

inline bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace config_detail

inline void validate_config(const ExperimentConfig& c) {
    auto missing = [](const char* key) {
        throw ConfigError(std::string("config is missing required key '") + key + "'");
    };
    if (c.schemes.empty()) missing("scheme");
    if (c.kappas.empty()) missing("kappa");
    if (c.t_finals.empty()) missing("T");
    if (c.steps.empty()) missing("N");
    if (!(c.alpha > 0.0 && c.alpha < 1.0)) {
        throw ConfigError("alpha must lie in (0,1)");
    }
    if (c.ode) {
        if (!c.lengths.empty()) throw ConfigError("domain=ode does not take L values");
        for (SchemeId s : c.schemes) {
            if (s == SchemeId::l1) throw ConfigError("scheme l1 requires domain=interval");
        }
    } else {
        if (c.lengths.empty()) missing("L");
        for (double l : c.lengths) {
            if (!(l > 0.0)) throw ConfigError("interval length L must be positive");
        }
        if (c.cells < 4) throw ConfigError("M must be at least 4");
    }
    for (double t : c.t_finals) {
        if (!(t > 0.0)) throw ConfigError("final time T must be positive");
    }
    for (int n : c.steps) {
        if (c.kink) {
            if (n < 4) throw ConfigError("N must be at least 4");
        } else if (!config_detail::is_power_of_two(n) || n < 64) {
            // halving-based orders need the power-of-two ladder
            throw ConfigError("N values must be powers of two >= 64 (got " + std::to_string(n) + ")");
        }
    }
}

inline ExperimentConfig parse_config(const std::string& text) {
    ExperimentConfig c;
    c.formats.clear();
    bool saw_alpha = false, saw_m = false, saw_domain = false, saw_c = false, saw_bounds = false,
         saw_kink = false;
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string s = config_detail::trim(raw);
        if (s.empty() || s[0] == '#') continue;
        const auto eq = s.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(line) + ": expected key=value, got '" + s + "'");
        }
        const std::string key = config_detail::trim(s.substr(0, eq));
        const std::string value = config_detail::trim(s.substr(eq + 1));
        auto scalar_once = [&](bool& seen) {
            if (seen) throw ConfigError("line " + std::to_string(line) + ": duplicate key '" + key + "'");
            seen = true;
        };
        if (key == "scheme") {
            c.schemes.push_back(config_detail::parse_scheme(value, line));
        } else if (key == "alpha") {
            scalar_once(saw_alpha);
            c.alpha = config_detail::parse_real(value, key, line);
        } else if (key == "kappa") {
            c.kappas.push_back(config_detail::parse_real(value, key, line));
        } else if (key == "domain") {
            scalar_once(saw_domain);
            if (value == "ode") c.ode = true;
            else if (value == "interval") c.ode = false;
            else throw ConfigError("line " + std::to_string(line) + ": domain must be ode|interval");
        } else if (key == "L") {
            c.lengths.push_back(config_detail::parse_real(value, key, line));
        } else if (key == "T") {
            c.t_finals.push_back(config_detail::parse_real(value, key, line));
        } else if (key == "N") {
            c.steps.push_back(config_detail::parse_int(value, key, line));
        } else if (key == "M") {
            scalar_once(saw_m);
            c.cells = config_detail::parse_int(value, key, line);
        } else if (key == "format") {
            if (value == "csv") c.formats.push_back(OutputFormat::csv);
            else if (value == "markdown") c.formats.push_back(OutputFormat::markdown);
            else throw ConfigError("line " + std::to_string(line) + ": format must be csv|markdown");
        } else if (key == "preset") {
            c.preset_name = value;
        } else if (key == "conjecture_C") {
            scalar_once(saw_c);
            c.conjecture_c = config_detail::parse_real(value, key, line);
        } else if (key == "bounds") {
            scalar_once(saw_bounds);
            c.bounds = config_detail::parse_bool(value, key, line);
        } else if (key == "kink") {
            scalar_once(saw_kink);
            c.kink = config_detail::parse_bool(value, key, line);
        } else {
            throw ConfigError("line " + std::to_string(line) + ": unknown key '" + key + "'");
        }
    }
    if (c.formats.empty()) c.formats.push_back(OutputFormat::csv);
    validate_config(c);
    return c;
}

inline std::string serialize_config(const ExperimentConfig& c) {
    std::ostringstream out;
    out.precision(17);
    if (c.preset_name) out << "preset=" << *c.preset_name << "\n";
    for (SchemeId s : c.schemes) out << "scheme=" << scheme_name(s) << "\n";
    out << "alpha=" << c.alpha << "\n";
    out << "domain=" << (c.ode ? "ode" : "interval") << "\n";
    for (double k : c.kappas) out << "kappa=" << k << "\n";
    for (double l : c.lengths) out << "L=" << l << "\n";
    for (double t : c.t_finals) out << "T=" << t << "\n";
    for (int n : c.steps) out << "N=" << n << "\n";
    if (!c.ode) out << "M=" << c.cells << "\n";
    for (OutputFormat f : c.formats) {
        out << "format=" << (f == OutputFormat::csv ? "csv" : "markdown") << "\n";
    }
    out << "conjecture_C=" << c.conjecture_c << "\n";
    out << "bounds=" << (c.bounds ? "true" : "false") << "\n";
    out << "kink=" << (c.kink ? "true" : "false") << "\n";
    return out.str();
}

} // namespace singstep
