#pragma once

#include "riemann/checks.hpp"

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

namespace riemann::report {

// Deterministic report serialization. Numbers are always printed with 17
// significant digits so identical runs produce byte-identical output;
// object keys are emitted in a fixed order.

inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::string escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += ch;
    }
  }
  return out;
}

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

struct Report {
  std::string manifold;
  std::vector<std::pair<std::string, double>> params;  // insertion-ordered
  std::uint64_t seed = 0;
  std::vector<checks::CheckRow> checks;
  std::vector<std::pair<std::string, Table>> tables;

  bool all_pass() const {
    for (const auto& row : checks)
      if (!row.pass) return false;
    return true;
  }
};

inline std::string to_json(const Report& r) {
  std::ostringstream os;
  os << "{\n  \"meta\": {\"manifold\": \"" << escape(r.manifold) << "\", \"params\": {";
  for (std::size_t i = 0; i < r.params.size(); ++i) {
    if (i) os << ", ";
    os << "\"" << escape(r.params[i].first) << "\": " << format_double(r.params[i].second);
  }
  os << "}, \"seed\": " << r.seed << ", \"version\": \"" << kVersion << "\"},\n";
  os << "  \"checks\": [";
  for (std::size_t i = 0; i < r.checks.size(); ++i) {
    const auto& c = r.checks[i];
    os << (i ? ",\n    " : "\n    ");
    os << "{\"name\": \"" << escape(c.name) << "\", \"residual\": "
       << format_double(c.residual) << ", \"tol\": " << format_double(c.tol)
       << ", \"pass\": " << (c.pass ? "true" : "false") << "}";
  }
  os << (r.checks.empty() ? "]" : "\n  ]") << ",\n  \"tables\": {";
  for (std::size_t t = 0; t < r.tables.size(); ++t) {
    const auto& [name, table] = r.tables[t];
    os << (t ? ",\n    " : "\n    ");
    os << "\"" << escape(name) << "\": {\"columns\": [";
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
      if (i) os << ", ";
      os << "\"" << escape(table.columns[i]) << "\"";
    }
    os << "], \"rows\": [";
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
      os << (i ? ", [" : "[");
      for (std::size_t j = 0; j < table.rows[i].size(); ++j) {
        if (j) os << ", ";
        os << format_double(table.rows[i][j]);
      }
      os << "]";
    }
    os << "]}";
  }
  os << (r.tables.empty() ? "}" : "\n  }") << "\n}\n";
  return os.str();
}

// CSV holds tables only: one section per table, blank-line separated.
inline std::string to_csv(const Report& r) {
  std::ostringstream os;
  for (const auto& [name, table] : r.tables) {
    os << "# " << name << "\n";
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
      if (i) os << ",";
      os << table.columns[i];
    }
    os << "\n";
    for (const auto& row : table.rows) {
      for (std::size_t j = 0; j < row.size(); ++j) {
        if (j) os << ",";
        os << format_double(row[j]);
      }
      os << "\n";
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace riemann::report
