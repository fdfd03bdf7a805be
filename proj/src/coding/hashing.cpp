#include "qadapt/coding/hashing.hpp"

#include <cmath>

#include "qadapt/core/error.hpp"

namespace qadapt::coding {

XorHashFamily::XorHashFamily(std::size_t n) : n_(n) {
  if (n == 0 || n > 24) throw InputError("hash family input length must be in [1, 24]");
}

std::uint8_t XorHashFamily::eval(const BitString& r, const BitString& x) const {
  if (r.size() != n_ || x.size() != n_) throw InputError("hash input length mismatch");
  return inner_product(r, x);
}

std::uint64_t XorHashFamily::collisions(const BitString& x, const BitString& y) const {
  std::uint64_t count = 0;
  for (std::uint64_t v = 0; v < size(); ++v) {
    const auto r = BitString::from_index(v, n_);
    if (eval(r, x) == eval(r, y)) ++count;
  }
  return count;
}

double XorHashFamily::collision_frequency(const BitString& x, const BitString& y) const {
  return static_cast<double>(collisions(x, y)) / static_cast<double>(size());
}

core::ComplexMatrix hashed_branch(const opt::CqState& cq, const BitString& r, std::uint8_t y) {
  const std::size_t n = r.size();
  const auto de = static_cast<Eigen::Index>(cq.side_shape().total_dim());
  core::ComplexMatrix w = core::ComplexMatrix::Zero(de, de);
  for (std::size_t i = 0; i < cq.size(); ++i) {
    if (inner_product(r, BitString::from_index(i, n)) == y) w += cq.weights()[i] * cq.conditionals()[i].matrix();
  }
  return w;
}

PrivacyAmpResult privacy_amp_check(const opt::CqState& cq, double tol) {
  std::size_t n = 0;
  while ((std::size_t{1} << n) < cq.size()) ++n;
  if ((std::size_t{1} << n) != cq.size() || n == 0) {
    throw InputError("privacy amplification needs 2^n classical outcomes");
  }
  if (n > 8) throw InputError("privacy amplification check is capped at n = 8");

  PrivacyAmpResult res;
  // D = 2^{-n} Σ_r ½‖ω_{r,0} − ω_{r,1}‖₁ (block structure over r and y)
  const XorHashFamily family(n);
  for (std::uint64_t v = 0; v < family.size(); ++v) {
    const auto r = BitString::from_index(v, n);
    res.distance += 0.5 * core::trace_norm(hashed_branch(cq, r, 0) - hashed_branch(cq, r, 1));
  }
  res.distance /= static_cast<double>(family.size());

  opt::SolverOptions opts;
  opts.tol = 1e-9;
  const auto cert = opt::guessing_probability(cq, opts);
  res.guess_primal = cert.primal;
  res.guess_dual = std::min(1.0, cert.dual);
  res.hmin = -std::log2(res.guess_dual);
  res.bound = 0.5 * std::pow(2.0, -(res.hmin - 1.0) / 2.0);
  res.pass = res.distance <= res.bound + tol;
  return res;
}

}  // namespace qadapt::coding
