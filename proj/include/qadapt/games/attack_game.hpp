#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qadapt/core/json_io.hpp"
#include "qadapt/core/state.hpp"
#include "qadapt/info/imax.hpp"
#include "qadapt/opt/discrimination.hpp"

namespace qadapt::games {

using core::ComplexMatrix;
using core::DensityOperator;

inline constexpr std::size_t kMaxFamilySize = 64;

struct BinaryPovm {
  std::string label;
  ComplexMatrix e0;
  ComplexMatrix e1;  // the "accept" outcome Alice wants
};

class BinaryPovmFamily {
 public:
  BinaryPovmFamily(std::vector<BinaryPovm> members, double tol = 1e-9);
  /// E1^j given, E0^j = I − E1^j.
  static BinaryPovmFamily from_accepting(const std::vector<ComplexMatrix>& e1);

  const std::vector<BinaryPovm>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  std::size_t dim() const { return static_cast<std::size_t>(members_.front().e1.rows()); }

 private:
  std::vector<BinaryPovm> members_;
};

/// State on (A, A', B) in that order; a missing A or A' becomes a
/// dimension-1 register.
class AttackGame {
 public:
  AttackGame(const DensityOperator& state, BinaryPovmFamily family, const std::string& a = "A",
             const std::string& ap = "A'", const std::string& b = "B");

  const DensityOperator& state() const { return state_; }
  const BinaryPovmFamily& family() const { return family_; }
  const std::string& a() const { return a_; }
  const std::string& ap() const { return ap_; }
  const std::string& b() const { return b_; }
  /// Block-diagonal in the A' computational basis (off-diagonal blocks < 1e-10).
  bool side_is_classical() const;

 private:
  DensityOperator state_;
  BinaryPovmFamily family_;
  std::string a_, ap_, b_;
};

struct NonAdaptive {
  double value = 0.0;
  std::size_t best = 0;
};

NonAdaptive non_adaptive_success(const AttackGame& g);
opt::SolverCertificate adaptive_success(const AttackGame& g, double tol = 1e-9);
opt::SolverCertificate semi_adaptive_success(const AttackGame& g, double tol = 1e-9);

struct BoundCheck {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  bool pass = false;
  bool expected_violation = false;
  bool ok() const { return pass || expected_violation; }
};

struct GameResult {
  double p_na = 0.0;
  std::size_t best_j = 0;
  double p_semi = 0.0;
  double p_adaptive = 0.0;
  double h0_a = 0.0;
  opt::SolverCertificate semi_certificate;
  opt::SolverCertificate adaptive_certificate;
  std::size_t measurements_checked = 0;
  std::vector<BoundCheck> bound_checks;
  bool all_ok() const;
};

struct VerifyOptions {
  double tol = 1e-9;
  std::size_t budget = 50;  // searched measurements for the per-measurement check
  std::uint64_t seed = 0;
};

GameResult verify_main_theorem(const AttackGame& g, const VerifyOptions& opts = {});

/// Success probability of "measure A with M, then pick the best j per outcome",
/// given one value of a classical A' (or none).
double induced_strategy_success(const AttackGame& g, const opt::Povm& m);

AttackGame bell_counterexample();

struct GameDims {
  std::size_t a = 2;
  std::size_t ap = 1;
  std::size_t b = 2;
};

/// Haar-random pure state on A ⊗ A' ⊗ B and random binary effects on B.
AttackGame random_game(std::uint64_t seed, const GameDims& dims, std::size_t family_size);

core::Json game_to_json(const AttackGame& g);
core::Json family_to_json(const BinaryPovmFamily& f);
BinaryPovmFamily family_from_json(const core::Json& j);
/// Labels default to A, A', B.
AttackGame game_from_json(const core::Json& state, const core::Json& family);
core::Json result_to_json(const GameResult& r);

}  // namespace qadapt::games
