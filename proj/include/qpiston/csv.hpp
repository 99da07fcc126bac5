#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace qpiston::csv {

/// %.12g, the single formatting rule for every floating value written out.
std::string format_double(double v);

/// Quotes a field only when it contains a separator, quote or newline.
std::string escape(const std::string& field);

void write_row(std::ostream& out, const std::vector<std::string>& fields);

/// One `# key: value` line per entry.
void write_metadata(std::ostream& out, const std::vector<std::pair<std::string, std::string>>& meta);

}  // namespace qpiston::csv
