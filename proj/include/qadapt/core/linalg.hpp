#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qadapt/core/register_shape.hpp"

namespace qadapt::core {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

namespace tol {
inline constexpr double kHermitian = 1e-10;
inline constexpr double kPsd = 1e-10;
inline constexpr double kEquality = 1e-9;
inline constexpr double kRank = 1e-8;
}  // namespace tol

/// Kronecker product; `a` indexes the most significant digit.
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector tensor(const ComplexVector& a, const ComplexVector& b);

double max_abs(const ComplexMatrix& m);
bool is_hermitian(const ComplexMatrix& m, double tol = tol::kHermitian);
ComplexMatrix hermitize(const ComplexMatrix& m);
bool is_psd(const ComplexMatrix& m, double tol = tol::kPsd);
bool is_projector(const ComplexMatrix& m, double tol = tol::kEquality);

struct Eigensystem {
  RealVector values;     // descending
  ComplexMatrix vectors; // orthonormal columns matching `values`
};

/// Throws InputError when `m` is not Hermitian within `herm_tol`.
Eigensystem eig_hermitian(const ComplexMatrix& m, double herm_tol = tol::kHermitian);

double lambda_max(const ComplexMatrix& hermitian);
double lambda_min(const ComplexMatrix& hermitian);

/// Largest singular value.
double spectral_norm(const ComplexMatrix& m);
/// Sum of singular values.
double trace_norm(const ComplexMatrix& m);

/// X ≤ Y in the Löwner order: λ_min(Y − X) ≥ −tol.
bool loewner_leq(const ComplexMatrix& x, const ComplexMatrix& y, double tol = tol::kPsd);

/// Σ_{λ>0} λ v v†.
ComplexMatrix positive_part(const ComplexMatrix& m);
/// Projector onto the span of eigenvectors with eigenvalue > threshold.
ComplexMatrix eigenspace_projector(const ComplexMatrix& hermitian, double threshold);
/// Apply a real function to the spectrum of a Hermitian matrix.
ComplexMatrix spectral_apply(const ComplexMatrix& hermitian,
                             const std::function<double(double)>& f);
ComplexMatrix sqrt_psd(const ComplexMatrix& m);
/// Pseudo-inverse square root on the support (eigenvalues > rank_tol).
ComplexMatrix pinv_sqrt(const ComplexMatrix& m, double rank_tol = tol::kRank);
std::size_t numerical_rank(const ComplexMatrix& hermitian, double rank_tol = tol::kRank);

ComplexMatrix outer(const ComplexVector& v);

/// Reduced operator on the `keep` labels (declaration order is preserved).
ComplexMatrix partial_trace(const ComplexMatrix& m, const RegisterShape& shape,
                            const std::vector<std::string>& keep);

/// `op` acting on the listed subsystems (taken in declaration order),
/// identity elsewhere.
ComplexMatrix embed(const ComplexMatrix& op, const RegisterShape& shape,
                    const std::vector<std::string>& targets);

/// Reorders tensor factors. `order` lists every label of `shape` once.
ComplexMatrix permute_subsystems(const ComplexMatrix& m, const RegisterShape& shape,
                                 const std::vector<std::string>& order);

ComplexMatrix identity(std::size_t dim);

}  // namespace qadapt::core
