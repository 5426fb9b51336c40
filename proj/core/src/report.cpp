#include "weylaw/report.hpp"

#include "weylaw/root_system.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace weylaw {

Json Report::to_json() const {
  Json out = Json::object();
  out["case"] = kind;
  out["pass"] = pass;
  for (const auto& [key, value] : fields.items()) out[key] = value;
  return out;
}

std::string format_double(double x) {
  if (std::isnan(x)) return "NaN";
  if (std::isinf(x)) return x > 0 ? "Infinity" : "-Infinity";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

void write_json(std::ostringstream& os, const Json& v, int indent, int depth) {
  auto newline = [&](int d) {
    if (indent <= 0) return;
    os << '\n' << std::string(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (v.type()) {
    case Json::value_t::object: {
      if (v.empty()) {
        os << "{}";
        return;
      }
      os << '{';
      bool first = true;
      for (const auto& [key, value] : v.items()) {
        if (!first) os << ',';
        first = false;
        newline(depth + 1);
        os << Json(key).dump() << (indent > 0 ? ": " : ":");
        write_json(os, value, indent, depth + 1);
      }
      newline(depth);
      os << '}';
      return;
    }
    case Json::value_t::array: {
      if (v.empty()) {
        os << "[]";
        return;
      }
      os << '[';
      bool first = true;
      for (const auto& value : v) {
        if (!first) os << ',';
        first = false;
        newline(depth + 1);
        write_json(os, value, indent, depth + 1);
      }
      newline(depth);
      os << ']';
      return;
    }
    case Json::value_t::number_float: {
      const double x = v.get<double>();
      // JSON has no non-finite literals.
      if (!std::isfinite(x)) os << Json(format_double(x)).dump();
      else os << format_double(x);
      return;
    }
    default:
      os << v.dump();
  }
}

std::string csv_cell(const Json& v) {
  if (v.is_string() || v.is_structured()) {
    const auto s = v.is_string() ? v.get<std::string>() : dump_json(v, -1);
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char c : s) {
      if (c == '"') quoted += '"';
      quoted += c;
    }
    return quoted + '"';
  }
  if (v.is_number_float()) return format_double(v.get<double>());
  if (v.is_null()) return "";
  return dump_json(v, 0);
}

}  // namespace

std::string dump_json(const Json& value, int indent) {
  std::ostringstream os;
  write_json(os, value, indent, 0);
  return os.str();
}

std::string dump_csv(const std::vector<std::string>& columns, const Json& rows) {
  std::ostringstream os;
  for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
  os << '\n';
  if (rows.is_array()) {
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < columns.size(); ++i) {
        os << (i ? "," : "");
        if (row.contains(columns[i])) os << csv_cell(row[columns[i]]);
      }
      os << '\n';
    }
  }
  return os.str();
}

std::string emit_report(const Report& report, ReportFormat format) {
  switch (format) {
    case ReportFormat::Json:
      if (report.kind.empty() && report.fields.empty()) return "{}";
      return dump_json(report.to_json());
    case ReportFormat::Csv: {
      // Reports carrying a "rows" array are emitted row-wise; everything else
      // as a single key,value listing.
      if (report.fields.contains("rows") && report.fields["rows"].is_array()) {
        std::vector<std::string> columns;
        const auto& rows = report.fields["rows"];
        if (!rows.empty())
          for (const auto& [key, _] : rows.front().items()) columns.push_back(key);
        return dump_csv(columns, rows);
      }
      Json rows = Json::array();
      if (!report.kind.empty()) {
        const Json doc = report.to_json();
        for (const auto& [key, value] : doc.items()) rows.push_back({{"key", key}, {"value", value}});
      }
      return dump_csv({"key", "value"}, rows);
    }
    case ReportFormat::Text: {
      std::ostringstream os;
      if (report.kind.empty() && report.fields.empty()) return "";
      os << report.kind << ": " << (report.pass ? "PASS" : "FAIL") << '\n';
      for (const auto& [key, value] : report.fields.items()) {
        if (value.is_array() && value.size() > 8) {
          os << "  " << key << ": [" << value.size() << " entries]\n";
        } else {
          os << "  " << key << ": " << dump_json(value, 0) << '\n';
        }
      }
      return os.str();
    }
  }
  return {};
}

Json to_json(const Rational& q) { return to_string(q); }

Json to_json(const std::vector<Rational>& v) {
  Json out = Json::array();
  for (const auto& q : v) out.push_back(to_string(q));
  return out;
}

Json to_json(const AmbientVector& v) { return to_json(v.coords()); }

Json to_json(const RootSystem& rs) {
  Json out = Json::object();
  out["family"] = std::string(1, family_letter(rs.family()));
  out["rank"] = rs.rank();
  Json simple = Json::array();
  for (const auto& a : rs.simple_roots()) simple.push_back(to_json(a));
  out["simple_roots"] = simple;
  return out;
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace weylaw
