#include "qadapt/opt/discrimination.hpp"

#include <cmath>

#include "barrier.hpp"
#include "qadapt/core/error.hpp"

namespace qadapt::opt {

namespace {

RegisterShape register_of(std::size_t d) { return RegisterShape::single("A", d); }

// Dual repair: symmetrized Y0 = ½Σ(F_j K_j + K_j F_j), shifted by the worst
// violation so that Y ≥ K_j for every j.
ComplexMatrix repaired_dual(const std::vector<ComplexMatrix>& povm,
                            const std::vector<ComplexMatrix>& scores) {
  const auto d = scores.front().rows();
  ComplexMatrix y0 = ComplexMatrix::Zero(d, d);
  for (std::size_t j = 0; j < scores.size(); ++j) y0 += povm[j] * scores[j] + scores[j] * povm[j];
  y0 = core::hermitize(0.5 * y0);
  double c = 0.0;
  for (const auto& k : scores) c = std::max(c, core::lambda_max(k - y0));
  return y0 + c * ComplexMatrix::Identity(d, d);
}

double score(const std::vector<ComplexMatrix>& povm, const std::vector<ComplexMatrix>& scores) {
  double s = 0.0;
  for (std::size_t j = 0; j < scores.size(); ++j) s += (povm[j] * scores[j]).trace().real();
  return s;
}

SolverCertificate finish(std::vector<ComplexMatrix> povm, ComplexMatrix y,
                         const DiscriminationInstance& inst, int iterations, double tol) {
  SolverCertificate c;
  c.primal = score(povm, inst.scores());
  // keep whichever feasible dual is tighter
  ComplexMatrix alt = repaired_dual(povm, inst.scores());
  if (alt.trace().real() < y.trace().real()) y = alt;
  c.dual = y.trace().real();
  c.gap = c.dual - c.primal;
  c.dual_witness = std::move(y);
  c.povm = Povm(register_of(inst.dim()), std::move(povm));
  c.iterations = iterations;
  c.converged = c.gap <= tol;
  return c;
}

SolverCertificate solve_fixed_point(const DiscriminationInstance& inst, const SolverOptions& opts) {
  const auto& ks = inst.scores();
  const std::size_t n = ks.size();
  const auto d = static_cast<Eigen::Index>(inst.dim());
  std::vector<ComplexMatrix> f(n, core::identity(inst.dim()) / static_cast<double>(n));
  std::vector<ComplexMatrix> best = f;
  ComplexMatrix best_y = repaired_dual(f, ks);
  double best_gap = best_y.trace().real() - score(f, ks);
  int it = 0;
  for (; it < opts.max_iter && best_gap > opts.tol; ++it) {
    ComplexMatrix lam2 = ComplexMatrix::Zero(d, d);
    for (std::size_t j = 0; j < n; ++j) lam2 += ks[j] * f[j] * ks[j];
    const ComplexMatrix lam_pinv = core::pinv_sqrt(core::hermitize(lam2), 1e-14);
    ComplexMatrix sum = ComplexMatrix::Zero(d, d);
    for (std::size_t j = 0; j < n; ++j) {
      f[j] = core::hermitize(lam_pinv * ks[j] * f[j] * ks[j] * lam_pinv);
      sum += f[j];
    }
    // the update lives on supp Λ; hand the complement to the first outcome
    f[0] += core::identity(inst.dim()) - core::hermitize(sum);
    f[0] = core::hermitize(f[0]);
    const ComplexMatrix y = repaired_dual(f, ks);
    const double gap = y.trace().real() - score(f, ks);
    if (gap < best_gap) {
      best_gap = gap;
      best = f;
      best_y = y;
    }
  }
  return finish(std::move(best), std::move(best_y), inst, it, opts.tol);
}

}  // namespace

DiscriminationInstance::DiscriminationInstance(std::vector<ComplexMatrix> scores)
    : scores_(std::move(scores)) {
  if (scores_.empty()) throw InputError("discrimination instance needs at least one operator");
  const auto d = scores_.front().rows();
  for (auto& k : scores_) {
    if (k.rows() != d || k.cols() != d) throw InputError("score operators must share one square size");
    if (!core::is_psd(k, core::tol::kPsd)) throw InputError("score operator is not positive semidefinite");
    k = core::hermitize(k);
  }
  core::check_dimension(static_cast<std::size_t>(d), "discrimination instance");
}

core::Json certificate_to_json(const SolverCertificate& c) {
  return {{"primal", c.primal},
          {"dual", c.dual},
          {"gap", c.gap},
          {"iterations", c.iterations},
          {"converged", c.converged}};
}

BinaryOptimum binary_optimal(const ComplexMatrix& k0, const ComplexMatrix& k1) {
  if (k0.rows() != k1.rows() || k0.cols() != k1.cols() || k0.rows() != k0.cols()) {
    throw InputError("binary_optimal: operators must be square and of equal size");
  }
  if (!core::is_psd(k0) || !core::is_psd(k1)) throw InputError("binary_optimal: inputs must be PSD");
  const ComplexMatrix diff = core::hermitize(k0 - k1);
  const auto es = core::eig_hermitian(diff);
  const auto d = static_cast<std::size_t>(k0.rows());
  ComplexMatrix f0 = ComplexMatrix::Zero(k0.rows(), k0.cols());
  double pos = 0.0;
  for (Eigen::Index i = 0; i < es.values.size(); ++i) {
    if (es.values(i) > 0.0) {
      pos += es.values(i);
      f0 += core::outer(es.vectors.col(i));
    }
  }
  f0 = core::hermitize(f0);
  const ComplexMatrix f1 = core::identity(d) - f0;
  return {k1.trace().real() + pos, Povm(register_of(d), {f0, f1})};
}

SolverCertificate optimal_discrimination(const DiscriminationInstance& inst, const SolverOptions& opts) {
  const auto& ks = inst.scores();
  const std::size_t d = inst.dim();
  const auto method = opts.method;

  if (ks.size() == 1) {
    return finish({core::identity(d)}, ks.front(), inst, 0, opts.tol);
  }
  if (method == SolverMethod::automatic && d == 1) {
    std::size_t best = 0;
    for (std::size_t j = 1; j < ks.size(); ++j) {
      if (ks[j](0, 0).real() > ks[best](0, 0).real()) best = j;
    }
    std::vector<ComplexMatrix> f(ks.size(), ComplexMatrix::Zero(1, 1));
    f[best](0, 0) = 1.0;
    return finish(std::move(f), ks[best], inst, 0, opts.tol);
  }
  if (method == SolverMethod::automatic && ks.size() == 2) {
    auto b = binary_optimal(ks[0], ks[1]);
    // Y = K1 + (K0 − K1)_+ dominates both operators and has trace equal to the value
    ComplexMatrix y = ks[1] + core::positive_part(core::hermitize(ks[0] - ks[1]));
    return finish(b.povm.elements(), std::move(y), inst, 0, opts.tol);
  }
  if (method == SolverMethod::fixed_point || (method == SolverMethod::automatic && d > 32)) {
    return solve_fixed_point(inst, opts);
  }

  detail::BarrierProblem p;
  p.outer = 1;
  p.dim = d;
  p.scores = ks;
  p.tol = opts.tol;
  p.max_iter = opts.max_iter;
  auto r = detail::solve_barrier(p);
  return finish(std::move(r.z), std::move(r.y), inst, r.iterations, opts.tol);
}

}  // namespace qadapt::opt
