#include "voltail/csv.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace voltail {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

void write_sample_csv(const std::string& path, const std::string& header,
                      const std::vector<double>& samples) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write " + path);
    out << header << "\n";
    for (double s : samples)
        out << format_double(s) << "\n";
}

std::vector<double> read_sample_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot read " + path);
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error("empty sample file: " + path);
    std::vector<double> out;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty())
            continue;
        try {
            out.push_back(std::stod(line));
        } catch (const std::exception&) {
            throw std::runtime_error(path + ": bad sample on line " + std::to_string(lineno));
        }
    }
    return out;
}

} // namespace voltail
