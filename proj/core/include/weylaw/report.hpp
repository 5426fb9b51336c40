#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "weylaw/rational.hpp"

namespace weylaw {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// Structured result of a verification or computation run.
struct Report {
  std::string kind;
  bool pass = true;
  Json fields = Json::object();

  Json to_json() const;
};

enum class ReportFormat { Json, Csv, Text };

/// Serializes JSON with stable key order; floating values use 17 significant digits.
std::string dump_json(const Json& value, int indent = 2);

/// Table-shaped output. `rows` are objects sharing the keys of `columns`.
std::string dump_csv(const std::vector<std::string>& columns, const Json& rows);

std::string emit_report(const Report& report, ReportFormat format);

/// 17-significant-digit rendering used by every serializer.
std::string format_double(double x);

Json to_json(const Rational& q);
Json to_json(const std::vector<Rational>& v);
Json to_json(const AmbientVector& v);

class RootSystem;
/// Canonical form: family, rank, simple roots as rational coordinate arrays.
Json to_json(const RootSystem& rs);

/// FNV-1a, used for input digests in run manifests.
std::uint64_t fnv1a64(const std::string& bytes);

}  // namespace weylaw
