#include "qadapt/core/random.hpp"

#include <cmath>

#include "qadapt/core/error.hpp"

namespace qadapt::core {

Rng make_rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
                    0x9e3779b9u};
  return Rng(seq);
}

namespace {

ComplexMatrix ginibre(Rng& rng, std::size_t rows, std::size_t cols) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix g(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index j = 0; j < g.cols(); ++j) {
    for (Eigen::Index i = 0; i < g.rows(); ++i) g(i, j) = Complex(normal(rng), normal(rng));
  }
  return g;
}

}  // namespace

ComplexVector haar_vector(Rng& rng, std::size_t dim) {
  ComplexVector v = ginibre(rng, dim, 1).col(0);
  return v / v.norm();
}

ComplexMatrix haar_unitary(Rng& rng, std::size_t dim) {
  const ComplexMatrix g = ginibre(rng, dim, dim);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the phase ambiguity of QR so the distribution is Haar.
  for (Eigen::Index i = 0; i < q.cols(); ++i) {
    const Complex d = r(i, i);
    const double a = std::abs(d);
    if (a > 0.0) q.col(i) *= d / a;
  }
  return q;
}

ComplexMatrix random_hermitian(Rng& rng, std::size_t dim) {
  const ComplexMatrix g = ginibre(rng, dim, dim);
  return 0.5 * (g + g.adjoint());
}

ComplexMatrix random_density(Rng& rng, std::size_t dim, std::size_t rank) {
  if (rank == 0 || rank > dim) throw InputError("random_density: rank out of range");
  const ComplexMatrix g = ginibre(rng, dim, rank);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return hermitize(rho);
}

ComplexMatrix random_projector(Rng& rng, std::size_t dim, std::size_t rank) {
  if (rank > dim) throw InputError("random_projector: rank exceeds dimension");
  const ComplexMatrix u = haar_unitary(rng, dim);
  const auto cols = u.leftCols(static_cast<Eigen::Index>(rank));
  return hermitize(cols * cols.adjoint());
}

ComplexMatrix random_effect(Rng& rng, std::size_t dim) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const ComplexMatrix u = haar_unitary(rng, dim);
  RealVector spec(static_cast<Eigen::Index>(dim));
  for (Eigen::Index i = 0; i < spec.size(); ++i) spec(i) = unif(rng);
  return hermitize(u * spec.cast<Complex>().asDiagonal() * u.adjoint());
}

}  // namespace qadapt::core
