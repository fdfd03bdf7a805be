#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "qadapt/core/linalg.hpp"
#include "qadapt/core/register_shape.hpp"

namespace qadapt::core {

/// Largest joint dimension accepted for dense operators. Defaults to 256 and
/// can be raised or lowered at start-up (the CLI reads QADAPT_DIM_CAP).
std::size_t dimension_cap();
void set_dimension_cap(std::size_t cap);
/// Throws InputError if `dim` exceeds the configured cap.
void check_dimension(std::size_t dim, const std::string& what);

class StateVector {
 public:
  /// Validates ‖ψ‖² = 1 within `norm_tol`.
  StateVector(RegisterShape shape, ComplexVector amplitudes, double norm_tol = 1e-12);
  /// Rescales to unit norm; throws on the zero vector.
  static StateVector normalized(RegisterShape shape, ComplexVector amplitudes);

  const RegisterShape& shape() const { return shape_; }
  const ComplexVector& amplitudes() const { return amplitudes_; }
  std::size_t dim() const { return static_cast<std::size_t>(amplitudes_.size()); }

  StateVector tensor(const StateVector& other) const;

 private:
  RegisterShape shape_;
  ComplexVector amplitudes_;
};

class DensityOperator {
 public:
  /// Validates Hermiticity (1e-12), PSD (−1e-10) and unit trace (1e-10); the
  /// stored matrix is exactly Hermitian.
  DensityOperator(RegisterShape shape, ComplexMatrix matrix);

  static DensityOperator pure(const StateVector& psi);
  static DensityOperator maximally_mixed(RegisterShape shape);
  /// Rescales a nonzero PSD matrix to unit trace before validation.
  static DensityOperator normalized(RegisterShape shape, ComplexMatrix matrix);

  const RegisterShape& shape() const { return shape_; }
  const ComplexMatrix& matrix() const { return matrix_; }
  std::size_t dim() const { return static_cast<std::size_t>(matrix_.rows()); }

  /// Partial trace onto `keep`; unknown labels raise InputError.
  DensityOperator reduce(const std::vector<std::string>& keep) const;
  DensityOperator tensor(const DensityOperator& other) const;
  DensityOperator permuted(const std::vector<std::string>& order) const;

 private:
  RegisterShape shape_;
  ComplexMatrix matrix_;
};

DensityOperator partial_trace(const DensityOperator& rho, const std::vector<std::string>& keep);

/// ½‖ρ − σ‖₁. Shapes must match.
double trace_distance(const DensityOperator& rho, const DensityOperator& sigma);

/// lg of the number of eigenvalues above `rank_tol`.
double zero_entropy(const DensityOperator& rho, double rank_tol = tol::kRank);

/// Fidelity-free overlap |⟨ψ|φ⟩|.
double overlap(const StateVector& a, const StateVector& b);

}  // namespace qadapt::core
