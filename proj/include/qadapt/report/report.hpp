#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "qadapt/core/json_io.hpp"

namespace qadapt::report {

using core::Json;

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "0.4.0";

enum class Relation { le, ge, eq };
std::string to_string(Relation r);
Relation relation_from_string(const std::string& s);

/// lhs ≤ rhs + slack, lhs ≥ rhs − slack, or |lhs − rhs| ≤ slack
bool holds(double lhs, Relation rel, double rhs, double slack);
/// Signed distance to failure before slack: positive when the relation holds strictly.
double margin(double lhs, Relation rel, double rhs);

struct CheckRecord {
  std::string name;
  int criterion = 0;
  std::string inputs_digest;
  Json values = Json::object();
  double lhs = 0.0;
  Relation relation = Relation::le;
  double rhs = 0.0;
  double slack = 0.0;
  bool pass = false;
  std::string source;  // reference | oracle | property | runtime
  double runtime_s = 0.0;
  std::string error;   // nonempty when the check could not run
};

CheckRecord make_check(std::string name, int criterion, double lhs, Relation rel, double rhs, double slack,
                       std::string source);
CheckRecord failed_check(std::string name, int criterion, std::string error);

/// 64-bit FNV-1a, as 16 lowercase hex digits.
std::string fnv1a_hex(const std::string& bytes);
/// Digest of the compact dump (object keys are sorted, so it is canonical).
std::string digest(const Json& inputs);

struct ExperimentReport {
  int schema_version = kSchemaVersion;
  std::string suite;
  std::string tool_version = kToolVersion;
  std::uint64_t seed = 0;
  Json config = Json::object();
  std::vector<CheckRecord> checks;

  bool all_pass() const;
  bool operator==(const ExperimentReport&) const = default;
};

Json to_json(const CheckRecord& c);
CheckRecord check_from_json(const Json& j);
Json to_json(const ExperimentReport& r);
/// Rejects other schema versions.
ExperimentReport report_from_json(const Json& j);

/// Pretty-printed JSON with a trailing newline; parse(serialize(r)) == r.
std::string serialize(const ExperimentReport& r);
ExperimentReport parse_report(const std::string& text);

/// name,criterion,lhs,relation,rhs,slack,pass,source,runtime_s,error
void write_csv(const ExperimentReport& r, std::ostream& out);

}  // namespace qadapt::report
