#include "qpiston/csv.hpp"

#include <cstdio>

namespace qpiston::csv {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string escape(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void write_row(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out << ',';
    out << escape(fields[i]);
  }
  out << '\n';
}

void write_metadata(std::ostream& out, const std::vector<std::pair<std::string, std::string>>& meta) {
  for (const auto& [key, value] : meta) out << "# " << key << ": " << value << '\n';
}

}  // namespace qpiston::csv
