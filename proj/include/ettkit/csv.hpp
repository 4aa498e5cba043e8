#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ettkit::csv {

// Quotes a field when it contains a comma, quote or newline.
std::string escape(const std::string& field);

// Shortest round-trip decimal form (to_chars); deterministic across runs.
std::string number(double v);
std::string number(std::int64_t v);

// Fixed decimal places, for percentage columns.
std::string fixed(double v, int decimals);

std::string join_row(const std::vector<std::string>& fields);

}  // namespace ettkit::csv
