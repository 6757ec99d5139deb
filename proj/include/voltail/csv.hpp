// Single-column sample files and small CSV emission helpers.  All floating
// point output is printed with 12 significant digits.

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace voltail {

std::string format_double(double v); // %.12g

void write_sample_csv(const std::string& path, const std::string& header,
                      const std::vector<double>& samples);

std::vector<double> read_sample_csv(const std::string& path);

} // namespace voltail
