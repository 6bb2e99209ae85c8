#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace teachml::csv {

// Splits one CSV line into fields. Handles double-quoted fields and "" escapes;
// embedded newlines are not supported (one record per line).
std::vector<std::string> split_line(const std::string& line);

// Quotes a field only when it contains a comma, quote or leading/trailing space.
std::string quote(const std::string& field);

void write_row(std::ostream& out, const std::vector<std::string>& fields);

std::string trim(const std::string& s);

}  // namespace teachml::csv
