#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "qadapt/core/json_io.hpp"
#include "qadapt/core/state.hpp"
#include "qadapt/opt/discrimination.hpp"

namespace qadapt::commit {

using core::ComplexMatrix;
using core::DensityOperator;

struct Opening {
  std::string label;
  ComplexMatrix v;  // accepting projector on B
};

/// Verification projectors for a fixed commit message, one list per bit.
class ProjectiveCommitmentScheme {
 public:
  ProjectiveCommitmentScheme(std::array<std::vector<Opening>, 2> openings, double tol = 1e-9);

  const std::vector<Opening>& openings(int bit) const { return openings_[bit]; }
  std::size_t dim() const { return static_cast<std::size_t>(openings_[0].front().v.rows()); }

 private:
  std::array<std::vector<Opening>, 2> openings_;
};

/// Projective measurement on A per bit, aligned with the scheme's opening lists.
struct OpeningStrategy {
  std::array<std::vector<ComplexMatrix>, 2> f;
};

enum class BindingMode { non_adaptive, povm_relaxation, projective_bruteforce };
std::string to_string(BindingMode m);
BindingMode binding_mode_from_string(const std::string& s);

struct BindingReport {
  BindingMode mode = BindingMode::non_adaptive;
  std::array<double, 2> p{0.0, 0.0};
  std::array<double, 2> p_upper{0.0, 0.0};  // certified upper bounds
  std::array<std::size_t, 2> best_opening{0, 0};  // non-adaptive argmax
  double epsilon = 0.0;                     // max(0, p0 + p1 − 1)
  std::optional<OpeningStrategy> strategy;  // projective mode only
  std::optional<core::StateVector> cheat_state;
  double cheat_eps = 0.0;
  std::array<std::optional<opt::SolverCertificate>, 2> certificates;
};

BindingReport na_binding(const ProjectiveCommitmentScheme& scheme, const DensityOperator& rho_b);

/// Caps for the projective search.
inline constexpr std::size_t kBruteforceMaxDim = 4;
inline constexpr std::size_t kBruteforceMaxOpenings = 4;

struct BindingOptions {
  double tol = 1e-9;
  std::uint64_t seed = 0;
  std::size_t starts = 200;  // random starting bases for dim A > 2
};

/// ρ on (A, B) with B the scheme's register.
BindingReport adaptive_binding(const ProjectiveCommitmentScheme& scheme, const DensityOperator& rho_ab,
                               BindingMode mode, const BindingOptions& opts = {});

/// K_y = Tr_B[(I ⊗ V_y) ρ] for each opening of `bit`.
std::vector<ComplexMatrix> opening_scores(const ProjectiveCommitmentScheme& scheme, const DensityOperator& rho_ab,
                                          int bit);

struct ProjectiveOptimum {
  double value = 0.0;
  double error_bound = 0.0;  // the true maximum is within [value, value + error_bound]
  std::vector<ComplexMatrix> f;
};

/// Maximum of Σ_y tr(F_y K_y) over projective {F_y} on dim ≤ 4: 2° Bloch grid
/// for qubits, seeded multi-start ascent otherwise, both refined by the
/// polar-decomposition iteration.
ProjectiveOptimum best_projective(const std::vector<ComplexMatrix>& scores, const BindingOptions& opts = {});

/// ℙ_b = Σ_y F_y ⊗ V_y; throws unless the results are projectors.
std::array<ComplexMatrix, 2> opening_projectors(const ProjectiveCommitmentScheme& scheme,
                                                const OpeningStrategy& strategy);

struct NormLemma {
  double lhs = 0.0;  // ‖X + Y‖
  double rhs = 0.0;  // 1 + ‖XY‖
  bool pass = false;
};
NormLemma norm_lemma_check(const ComplexMatrix& x, const ComplexMatrix& y);

struct CheatState {
  std::optional<core::ComplexVector> phi0;  // empty when ℙ1ℙ0 = 0
  double eps = 0.0;                         // ‖ℙ1ℙ0‖
};
CheatState cheat_state(const ComplexMatrix& p0, const ComplexMatrix& p1);

/// max over opening pairs of ‖V_{y0} + V_{y1}‖ − 1, clipped at 0.
double worst_case_eps_na(const ProjectiveCommitmentScheme& scheme);

struct StorageTrial {
  double alpha = 0.0;        // max(0, p0 + p1 − 1)
  double alpha_upper = 0.0;  // including the search error bound
  double bound = 0.0;        // 2^{q/2} √eps_na
  bool pass = false;
};

struct StorageReport {
  std::size_t q = 0;
  double eps_na = 0.0;
  BindingMode mode = BindingMode::projective_bruteforce;
  bool assertable = false;  // relaxation values may exceed the projective optimum
  std::vector<StorageTrial> trials;
  bool all_pass() const;
};

/// Samples Haar-random pure states on (2^q qubits) ⊗ B and compares the
/// measured cheating excess against 2^{q/2} √eps_na.
StorageReport storage_reduction_check(const ProjectiveCommitmentScheme& scheme, std::size_t q, double eps_na,
                                      std::size_t trials, BindingMode mode, const BindingOptions& opts = {});

/// {"dim": d, "openings": [[{"label", "V"}...], [...]]}
ProjectiveCommitmentScheme scheme_from_json(const core::Json& j);
core::Json scheme_to_json(const ProjectiveCommitmentScheme& s);
core::Json report_to_json(const BindingReport& r);
core::Json storage_to_json(const StorageReport& r);

}  // namespace qadapt::commit
