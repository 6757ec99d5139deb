#include "voltail/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace voltail {

namespace {
std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}
} // namespace

Config Config::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_text(buf.str());
}

Config Config::parse_text(const std::string& text) {
    Config cfg;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos)
            line = line.substr(0, hash);
        std::string t = trim(line);
        if (t.empty())
            continue;
        if (t.front() == '[') {
            if (t.back() != ']')
                throw ConfigError("unterminated section header", lineno,
                                  static_cast<int>(line.find('[')) + 1);
            section = trim(t.substr(1, t.size() - 2));
            if (section.empty())
                throw ConfigError("empty section name", lineno);
            continue;
        }
        std::size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError("expected key=value", lineno,
                              static_cast<int>(line.find_first_not_of(" \t")) + 1);
        std::string key = trim(t.substr(0, eq));
        std::string value = trim(t.substr(eq + 1));
        if (key.empty())
            throw ConfigError("empty key", lineno);
        cfg.sections_[section][key] = Entry{value, lineno};
    }
    return cfg;
}

std::optional<std::string> Config::get(const std::string& section, const std::string& key) const {
    auto s = sections_.find(section);
    if (s == sections_.end())
        return std::nullopt;
    auto k = s->second.find(key);
    if (k == s->second.end())
        return std::nullopt;
    return k->second.value;
}

double Config::get_double(const std::string& section, const std::string& key,
                          double fallback) const {
    auto s = sections_.find(section);
    if (s == sections_.end())
        return fallback;
    auto k = s->second.find(key);
    if (k == s->second.end())
        return fallback;
    try {
        std::size_t used = 0;
        double v = std::stod(k->second.value, &used);
        if (used != k->second.value.size())
            throw std::invalid_argument("partial");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("bad numeric value for " + section + "." + key, k->second.line);
    }
}

long Config::get_long(const std::string& section, const std::string& key, long fallback) const {
    auto s = sections_.find(section);
    if (s == sections_.end())
        return fallback;
    auto k = s->second.find(key);
    if (k == s->second.end())
        return fallback;
    try {
        std::size_t used = 0;
        long v = std::stol(k->second.value, &used);
        if (used != k->second.value.size())
            throw std::invalid_argument("partial");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("bad integer value for " + section + "." + key, k->second.line);
    }
}

std::string Config::get_string(const std::string& section, const std::string& key,
                               const std::string& fallback) const {
    return get(section, key).value_or(fallback);
}

bool Config::has_section(const std::string& section) const {
    return sections_.count(section) > 0;
}

namespace {
std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    // a '-' directly after the separator belongs to the number
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == sep) {
            out.push_back(s.substr(start, i - start));
            start = i + 1;
        }
    }
    return out;
}

double to_double(const std::string& s, const std::string& what) {
    try {
        std::size_t used = 0;
        double v = std::stod(s, &used);
        if (used != s.size())
            throw std::invalid_argument("partial");
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("bad numeric value '" + s + "' in " + what);
    }
}
} // namespace

VolModel parse_model_spec(const std::string& spec, bool confirm_bounds) {
    if (spec == "fig1")
        return VolModel::paper_figure1();
    std::size_t colon = spec.find(':');
    std::string kind = spec.substr(0, colon);
    std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);
    if (kind == "constant")
        return VolModel::constant(to_double(rest, "model spec"));
    if (kind == "cev") {
        auto parts = split(rest, ',');
        if (parts.size() != 2)
            throw std::invalid_argument("cev model spec needs 'cev:<delta>,<beta>'");
        return VolModel::cev_local(to_double(parts[0], "model spec"),
                                   to_double(parts[1], "model spec"));
    }
    if (kind == "expr")
        return VolModel::expression(rest, confirm_bounds);
    throw std::invalid_argument("unknown model spec '" + spec +
                                "' (expected constant:<s>, fig1, cev:<d>,<b>, expr:<e>)");
}

DriftSpec parse_drift_spec(const std::string& spec) {
    if (spec == "log-stock")
        return DriftSpec::driftless_log_stock();
    if (spec == "zero")
        return DriftSpec::zero();
    std::size_t colon = spec.find(':');
    std::string kind = spec.substr(0, colon);
    std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);
    if (kind == "const")
        return DriftSpec::constant(to_double(rest, "drift spec"));
    if (kind == "expr")
        return DriftSpec::expression(rest);
    throw std::invalid_argument("unknown drift spec '" + spec +
                                "' (expected log-stock, zero, const:<c>, expr:<e>)");
}

std::vector<double> parse_grid_spec(const std::string& spec) {
    auto parts = split(spec, ':');
    if (parts.size() != 3)
        throw std::invalid_argument("grid spec must be lo:hi:step");
    double lo = to_double(parts[0], "grid spec");
    double hi = to_double(parts[1], "grid spec");
    double step = to_double(parts[2], "grid spec");
    if (!(step > 0.0) || hi < lo)
        throw std::invalid_argument("grid spec needs hi >= lo and step > 0");
    long count = std::lround((hi - lo) / step) + 1;
    if (count < 1 || count > 10000000)
        throw std::invalid_argument("grid spec produces an unreasonable point count");
    std::vector<double> out(count);
    for (long i = 0; i < count; ++i)
        out[i] = lo + step * i;
    return out;
}

} // namespace voltail
