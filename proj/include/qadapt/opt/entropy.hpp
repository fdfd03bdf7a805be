#pragma once

#include <string>
#include <vector>

#include "qadapt/core/state.hpp"
#include "qadapt/opt/discrimination.hpp"

namespace qadapt::opt {

/// Classical X with conditional states ρ_B^x.
class CqState {
 public:
  CqState(std::vector<double> weights, std::vector<core::DensityOperator> conditionals);
  /// Splits a block-diagonal ρ_XB whose first subsystem is X.
  static CqState from_joint(const core::DensityOperator& rho_xb, double offdiag_tol = 1e-10);

  const std::vector<double>& weights() const { return weights_; }
  const std::vector<core::DensityOperator>& conditionals() const { return conditionals_; }
  std::size_t size() const { return weights_.size(); }
  const RegisterShape& side_shape() const { return conditionals_.front().shape(); }

  /// Score operators P_X(x) ρ_B^x.
  DiscriminationInstance scores() const;
  /// Σ_x P_X(x) |x⟩⟨x| ⊗ ρ_B^x with X labelled `x_label`.
  core::DensityOperator joint(const std::string& x_label = "X") const;

 private:
  std::vector<double> weights_;
  std::vector<core::DensityOperator> conditionals_;
};

SolverCertificate guessing_probability(const CqState& cq, const SolverOptions& opts = {});

struct HminCq {
  double value = 0.0;
  SolverCertificate certificate;
};
/// −lg P_guess(X|B).
HminCq hmin_cq(const CqState& cq, const SolverOptions& opts = {});

struct HminBracket {
  double lower = 0.0;
  double upper = 0.0;
  /// Feasible σ_B with I_A ⊗ σ_B ≥ ρ_AB; −lg tr σ is the certified lower side.
  ComplexMatrix sigma;
  int iterations = 0;
  bool converged = false;
};

/// Hmin(A|B) of a state whose shape lists A then B (exactly two subsystems,
/// or `a_labels` given explicitly).
HminBracket hmin_general(const core::DensityOperator& rho_ab, const std::vector<std::string>& a_labels,
                         double tol = 1e-7, int max_iter = 10000);

}  // namespace qadapt::opt
