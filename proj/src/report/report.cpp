#include "qadapt/report/report.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "qadapt/core/error.hpp"

namespace qadapt::report {

namespace {

Json number(double v) { return std::isfinite(v) ? Json(v) : Json(); }

double read_number(const Json& j) {
  return j.is_null() ? std::numeric_limits<double>::infinity() : j.get<double>();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string to_string(Relation r) {
  switch (r) {
    case Relation::le:
      return "<=";
    case Relation::ge:
      return ">=";
    case Relation::eq:
      return "==";
  }
  return "?";
}

Relation relation_from_string(const std::string& s) {
  if (s == "<=") return Relation::le;
  if (s == ">=") return Relation::ge;
  if (s == "==") return Relation::eq;
  throw InputError("unknown relation '" + s + "'");
}

double margin(double lhs, Relation rel, double rhs) {
  switch (rel) {
    case Relation::le:
      return rhs - lhs;
    case Relation::ge:
      return lhs - rhs;
    case Relation::eq:
      return -std::abs(lhs - rhs);
  }
  return -std::numeric_limits<double>::infinity();
}

bool holds(double lhs, Relation rel, double rhs, double slack) {
  if (std::isnan(lhs) || std::isnan(rhs)) return false;
  if (rel == Relation::eq && lhs == rhs) return true;
  return margin(lhs, rel, rhs) >= -slack;
}

CheckRecord make_check(std::string name, int criterion, double lhs, Relation rel, double rhs, double slack,
                       std::string source) {
  CheckRecord c;
  c.name = std::move(name);
  c.criterion = criterion;
  c.lhs = lhs;
  c.relation = rel;
  c.rhs = rhs;
  c.slack = slack;
  c.pass = holds(lhs, rel, rhs, slack);
  c.source = std::move(source);
  return c;
}

CheckRecord failed_check(std::string name, int criterion, std::string error) {
  CheckRecord c;
  c.name = std::move(name);
  c.criterion = criterion;
  c.lhs = std::numeric_limits<double>::quiet_NaN();
  c.rhs = std::numeric_limits<double>::quiet_NaN();
  c.source = "property";
  c.error = std::move(error);
  return c;
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string digest(const Json& inputs) { return fnv1a_hex(inputs.dump()); }

bool ExperimentReport::all_pass() const {
  for (const auto& c : checks) {
    if (!c.pass) return false;
  }
  return true;
}

Json to_json(const CheckRecord& c) {
  return {{"name", c.name},
          {"criterion", c.criterion},
          {"inputs_digest", c.inputs_digest},
          {"values", c.values},
          {"lhs", number(c.lhs)},
          {"relation", to_string(c.relation)},
          {"rhs", number(c.rhs)},
          {"slack", number(c.slack)},
          {"pass", c.pass},
          {"source", c.source},
          {"runtime_s", number(c.runtime_s)},
          {"error", c.error}};
}

CheckRecord check_from_json(const Json& j) {
  CheckRecord c;
  c.name = j.at("name").get<std::string>();
  c.criterion = j.at("criterion").get<int>();
  c.inputs_digest = j.at("inputs_digest").get<std::string>();
  c.values = j.at("values");
  c.lhs = read_number(j.at("lhs"));
  c.relation = relation_from_string(j.at("relation").get<std::string>());
  c.rhs = read_number(j.at("rhs"));
  c.slack = read_number(j.at("slack"));
  c.pass = j.at("pass").get<bool>();
  c.source = j.at("source").get<std::string>();
  c.runtime_s = read_number(j.at("runtime_s"));
  c.error = j.at("error").get<std::string>();
  return c;
}

Json to_json(const ExperimentReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) checks.push_back(to_json(c));
  return {{"schema_version", r.schema_version},
          {"suite", r.suite},
          {"tool_version", r.tool_version},
          {"seed", r.seed},
          {"config", r.config},
          {"all_pass", r.all_pass()},
          {"checks", checks}};
}

ExperimentReport report_from_json(const Json& j) {
  try {
    ExperimentReport r;
    r.schema_version = j.at("schema_version").get<int>();
    if (r.schema_version != kSchemaVersion) {
      throw InputError("report schema version " + std::to_string(r.schema_version) + " is not supported");
    }
    r.suite = j.at("suite").get<std::string>();
    r.tool_version = j.at("tool_version").get<std::string>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.config = j.at("config");
    for (const auto& c : j.at("checks")) r.checks.push_back(check_from_json(c));
    return r;
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed report: ") + e.what());
  }
}

std::string serialize(const ExperimentReport& r) { return to_json(r).dump(2) + "\n"; }

ExperimentReport parse_report(const std::string& text) {
  try {
    return report_from_json(Json::parse(text));
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("report is not valid JSON: ") + e.what());
  }
}

void write_csv(const ExperimentReport& r, std::ostream& out) {
  out << "name,criterion,lhs,relation,rhs,slack,pass,source,runtime_s,error\n";
  for (const auto& c : r.checks) {
    out << csv_field(c.name) << ',' << c.criterion << ',' << number(c.lhs).dump() << ',' << to_string(c.relation) << ','
        << number(c.rhs).dump() << ',' << number(c.slack).dump() << ',' << (c.pass ? "true" : "false") << ','
        << c.source << ',' << number(c.runtime_s).dump() << ',' << csv_field(c.error) << '\n';
  }
}

}  // namespace qadapt::report
