#include "qadapt/core/state.hpp"

#include <atomic>
#include <cmath>

#include "qadapt/core/error.hpp"

namespace qadapt::core {

namespace {
std::atomic<std::size_t> g_dimension_cap{256};
}  // namespace

std::size_t dimension_cap() { return g_dimension_cap.load(); }

void set_dimension_cap(std::size_t cap) {
  if (cap == 0) throw InputError("dimension cap must be positive");
  g_dimension_cap.store(cap);
}

void check_dimension(std::size_t dim, const std::string& what) {
  if (dim > dimension_cap()) {
    throw InputError(what + ": dimension " + std::to_string(dim) + " exceeds cap " +
                     std::to_string(dimension_cap()));
  }
}

StateVector::StateVector(RegisterShape shape, ComplexVector amplitudes, double norm_tol)
    : shape_(std::move(shape)), amplitudes_(std::move(amplitudes)) {
  if (static_cast<std::size_t>(amplitudes_.size()) != shape_.total_dim()) {
    throw InputError("state vector length does not match register shape");
  }
  if (std::abs(amplitudes_.squaredNorm() - 1.0) > norm_tol) {
    throw InputError("state vector is not normalized");
  }
}

StateVector StateVector::normalized(RegisterShape shape, ComplexVector amplitudes) {
  const double n = amplitudes.norm();
  if (!(n > 0.0)) throw InputError("cannot normalize the zero vector");
  amplitudes /= n;
  return StateVector(std::move(shape), std::move(amplitudes));
}

StateVector StateVector::tensor(const StateVector& other) const {
  return StateVector::normalized(shape_.concat(other.shape_),
                                 core::tensor(amplitudes_, other.amplitudes_));
}

DensityOperator::DensityOperator(RegisterShape shape, ComplexMatrix matrix)
    : shape_(std::move(shape)), matrix_(std::move(matrix)) {
  const std::size_t d = shape_.total_dim();
  check_dimension(d, "density operator");
  if (matrix_.rows() != matrix_.cols() || static_cast<std::size_t>(matrix_.rows()) != d) {
    throw InputError("density matrix size does not match register shape");
  }
  if (!is_hermitian(matrix_, 1e-12)) throw InputError("density matrix is not Hermitian");
  matrix_ = hermitize(matrix_);
  if (std::abs(matrix_.trace().real() - 1.0) > 1e-10) {
    throw InputError("density matrix does not have unit trace");
  }
  if (lambda_min(matrix_) < -tol::kPsd) throw InputError("density matrix is not positive semidefinite");
}

DensityOperator DensityOperator::pure(const StateVector& psi) {
  return DensityOperator(psi.shape(), outer(psi.amplitudes()));
}

DensityOperator DensityOperator::maximally_mixed(RegisterShape shape) {
  const std::size_t d = shape.total_dim();
  return DensityOperator(std::move(shape), identity(d) / static_cast<double>(d));
}

DensityOperator DensityOperator::normalized(RegisterShape shape, ComplexMatrix matrix) {
  const double t = matrix.trace().real();
  if (!(t > 0.0)) throw InputError("cannot normalize an operator with non-positive trace");
  return DensityOperator(std::move(shape), hermitize(matrix) / t);
}

DensityOperator DensityOperator::reduce(const std::vector<std::string>& keep) const {
  auto reduced_shape = shape_.restricted(keep);
  return DensityOperator(std::move(reduced_shape), core::partial_trace(matrix_, shape_, keep));
}

DensityOperator DensityOperator::tensor(const DensityOperator& other) const {
  return DensityOperator(shape_.concat(other.shape_), core::tensor(matrix_, other.matrix_));
}

DensityOperator DensityOperator::permuted(const std::vector<std::string>& order) const {
  std::vector<Subsystem> subs;
  for (const auto& l : order) subs.push_back(shape_.subsystems()[shape_.index_of(l)]);
  return DensityOperator(RegisterShape(subs), permute_subsystems(matrix_, shape_, order));
}

DensityOperator partial_trace(const DensityOperator& rho, const std::vector<std::string>& keep) {
  return rho.reduce(keep);
}

double trace_distance(const DensityOperator& rho, const DensityOperator& sigma) {
  if (!(rho.shape() == sigma.shape())) throw InputError("trace_distance: shape mismatch");
  return 0.5 * trace_norm(rho.matrix() - sigma.matrix());
}

double zero_entropy(const DensityOperator& rho, double rank_tol) {
  return std::log2(static_cast<double>(numerical_rank(rho.matrix(), rank_tol)));
}

double overlap(const StateVector& a, const StateVector& b) {
  if (a.dim() != b.dim()) throw InputError("overlap: dimension mismatch");
  return std::abs(a.amplitudes().dot(b.amplitudes()));
}

}  // namespace qadapt::core
