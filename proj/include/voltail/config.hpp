// Plain-text key=value config with [section] headers and '#' comments.
// Values keep their source line for diagnostics.

#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "voltail/vol_model.hpp"

namespace voltail {

class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& what, int line, int column = 0)
        : std::runtime_error(what + " (line " + std::to_string(line) +
                             (column > 0 ? ", column " + std::to_string(column) : "") + ")"),
          line_(line), column_(column) {}
    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_, column_;
};

class Config {
public:
    static Config parse_file(const std::string& path);
    static Config parse_text(const std::string& text);

    std::optional<std::string> get(const std::string& section, const std::string& key) const;
    double get_double(const std::string& section, const std::string& key, double fallback) const;
    long get_long(const std::string& section, const std::string& key, long fallback) const;
    std::string get_string(const std::string& section, const std::string& key,
                           const std::string& fallback) const;
    bool has_section(const std::string& section) const;

private:
    struct Entry {
        std::string value;
        int line;
    };
    std::map<std::string, std::map<std::string, Entry>> sections_;
};

// Model specs: "constant:<sigma0>", "fig1", "cev:<delta>,<beta>",
// "expr:<expression>" (the last needs confirm_bounds).
VolModel parse_model_spec(const std::string& spec, bool confirm_bounds = false);

// Drift specs: "log-stock", "zero", "const:<c>", "expr:<expression>".
DriftSpec parse_drift_spec(const std::string& spec);

// "lo:hi:step" -> inclusive uniform grid.
std::vector<double> parse_grid_spec(const std::string& spec);

} // namespace voltail
