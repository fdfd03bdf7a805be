#pragma once

#include <functional>
#include <string>
#include <vector>

#include "qadapt/report/report.hpp"

namespace qadapt::report {

struct VerifyConfig {
  std::uint64_t seed = 0;
  double tol = 1e-9;
  std::size_t budget = 5;  // searched measurements per game
  std::size_t games = 200;
  std::size_t states = 100;
  std::size_t measurements_per_state = 5;
  std::size_t channel_runs = 10;
  std::size_t projector_pairs = 100;
  std::size_t max_projector_dim = 16;
  std::size_t cheat_instances = 50;
  std::size_t sampled_states = 100;
  std::size_t bcjl_pairs = 1000;
  std::size_t cq_states = 50;
  std::size_t mc_runs = 10000;
  std::size_t ot_n = 8;
  std::size_t ot_runs = 1000;
  std::size_t storage_schemes = 8;
  std::size_t storage_trials = 5;
  std::vector<int> only;  // criteria to run; empty runs all

  /// QADAPT_BUDGET overrides the default search budget.
  static VerifyConfig from_environment();
  Json to_json() const;
  /// Unknown keys are rejected; missing keys keep `base` values.
  static VerifyConfig from_json(const Json& j, const VerifyConfig& base);
  static VerifyConfig from_json(const Json& j);
};

struct CriterionInfo {
  int id = 0;
  std::string title;
  double time_limit_s = 0.0;
};

const std::vector<CriterionInfo>& criteria();

struct CriterionOutcome {
  CriterionInfo info;
  bool pass = false;
  double runtime_s = 0.0;
  std::size_t checks = 0;
  std::size_t failed = 0;
  std::string first_failure;
};

/// Checks of one criterion, ending with its runtime record. Input errors
/// become failed records rather than exceptions.
std::vector<CheckRecord> run_criterion(int id, const VerifyConfig& cfg);

using Progress = std::function<void(const CriterionOutcome&)>;

ExperimentReport verify_all(const VerifyConfig& cfg, const Progress& progress = {});

/// Per-criterion verdicts of a report, in criterion order.
std::vector<CriterionOutcome> outcomes(const ExperimentReport& r);

}  // namespace qadapt::report
