#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qadapt/core/random.hpp"
#include "qadapt/core/state.hpp"
#include "qadapt/opt/povm.hpp"

namespace qadapt::info {

using core::ComplexMatrix;
using core::DensityOperator;

/// A POVM applied to the listed subsystems of a larger state.
struct MeasurementDescriptor {
  std::vector<std::string> targets;
  opt::Povm povm;
};

struct DmaxResult {
  double value = 0.0;
  bool unbounded = false;  // K has weight outside supp ρ
};

/// Smallest c with K ≤ c·ρ: λ_max(ρ^{-1/2} K ρ^{-1/2}) on supp ρ.
DmaxResult dmax_relative(const ComplexMatrix& k, const ComplexMatrix& rho, double rank_tol = core::tol::kRank);

/// K_x = Tr_A[(F_x ⊗ I) ρ] on the complement of the measured subsystems.
std::vector<ComplexMatrix> measured_branches(const MeasurementDescriptor& m, const DensityOperator& rho);

struct ImaxValue {
  double value = 0.0;
  std::vector<double> c;      // per-outcome domination constants
  std::vector<double> sigma;  // σ_X(x) = c_x / Σc
  bool unbounded = false;
};

/// Exact minimal λ for one measurement: lg Σ_x c_x.
ImaxValue imax_for_measurement(const MeasurementDescriptor& m, const DensityOperator& rho);

/// Most negative eigenvalue of 2^λ σ_x ρ_B − K_x over x; ≥ −tol means the
/// domination inequality holds at λ.
double domination_margin(const std::vector<ComplexMatrix>& branches, const ComplexMatrix& rho_b,
                         const std::vector<double>& sigma, double lambda);

struct SearchConfig {
  std::size_t budget = 200;
  std::uint64_t seed = 0;
  std::vector<opt::Povm> extra;  // caller-supplied candidates on A
};

/// Candidate measurements on a register of dimension `dim`: computational,
/// Fourier, caller-supplied, then alternating Haar projective bases and
/// random rank-1 POVMs with up to dim² outcomes, `budget` in total.
std::vector<opt::Povm> search_family(const core::RegisterShape& a_shape, const SearchConfig& cfg);

struct ImaxEstimate {
  double lower = 0.0;
  double upper = 0.0;  // H_0(A)
  std::optional<MeasurementDescriptor> witness;
  std::vector<double> witness_sigma;
  std::size_t evaluated = 0;
};

ImaxEstimate imax_acc_bounds(const DensityOperator& rho, const std::vector<std::string>& a_labels,
                             const SearchConfig& cfg = {});

core::Json imax_estimate_to_json(const ImaxEstimate& e);

struct ConditionalBound {
  double lower = 0.0;         // max_z of per-branch lower bounds
  double upper = 0.0;         // max_z H_0(A)_{ρ^z}
  double h0_joint = 0.0;      // H_0(A)_ρ
  std::vector<double> branch_lower;
  std::vector<double> branch_upper;
  bool pass = false;          // both maxima ≤ H_0(A)_ρ + 1e-8
};

/// ρ_ZAB with Z classical (off-diagonal Z blocks < 1e-10, else InputError).
ConditionalBound classical_conditional_bound(const DensityOperator& rho, const std::string& z_label,
                                             const std::vector<std::string>& a_labels,
                                             const SearchConfig& cfg = {});

struct ChannelCheck {
  double h0_before = 0.0;  // H_0(A)_ρ
  double h0_after = 0.0;   // H_0(A) of the output state
  double max_value = 0.0;  // largest per-measurement value on the output
  std::size_t evaluated = 0;
  bool pass = false;
};

/// Applies Kraus maps on A and B (A first, B second subsystem) and checks
/// every searched measurement value on the output against H_0(A)_ρ + 1e-8.
ChannelCheck local_channel_monotonicity_check(const DensityOperator& rho_ab,
                                              const std::vector<ComplexMatrix>& kraus_a,
                                              const std::vector<ComplexMatrix>& kraus_b,
                                              const SearchConfig& cfg = {});

/// Σ_i (E_i ⊗ F_j) ρ (E_i ⊗ F_j)†; Kraus lists must satisfy ΣE†E = I (1e-9).
DensityOperator apply_local_channel(const DensityOperator& rho_ab, const std::vector<ComplexMatrix>& kraus_a,
                                    const std::vector<ComplexMatrix>& kraus_b);

}  // namespace qadapt::info
