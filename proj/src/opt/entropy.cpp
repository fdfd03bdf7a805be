#include "qadapt/opt/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "barrier.hpp"
#include "qadapt/core/error.hpp"

namespace qadapt::opt {

CqState::CqState(std::vector<double> weights, std::vector<core::DensityOperator> conditionals)
    : weights_(std::move(weights)), conditionals_(std::move(conditionals)) {
  if (weights_.empty() || weights_.size() != conditionals_.size()) {
    throw InputError("cq-state needs one conditional state per weight");
  }
  double total = 0.0;
  for (double w : weights_) {
    if (w < 0.0) throw InputError("cq-state weights must be non-negative");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-10) throw InputError("cq-state weights must sum to one");
  for (const auto& c : conditionals_) {
    if (!(c.shape() == conditionals_.front().shape())) {
      throw InputError("cq-state conditionals must share one register shape");
    }
  }
}

CqState CqState::from_joint(const core::DensityOperator& rho_xb, double offdiag_tol) {
  const auto& subs = rho_xb.shape().subsystems();
  if (subs.empty()) throw InputError("cq-state needs a classical subsystem");
  const auto nx = static_cast<Eigen::Index>(subs.front().dim);
  std::vector<core::Subsystem> rest(subs.begin() + 1, subs.end());
  RegisterShape side(rest);
  const auto db = static_cast<Eigen::Index>(side.total_dim());
  const auto& m = rho_xb.matrix();
  std::vector<double> w;
  std::vector<core::DensityOperator> cond;
  for (Eigen::Index x = 0; x < nx; ++x) {
    for (Eigen::Index y = 0; y < nx; ++y) {
      if (x != y && core::max_abs(m.block(x * db, y * db, db, db)) > offdiag_tol) {
        throw InputError("first subsystem is not classical");
      }
    }
    const ComplexMatrix block = m.block(x * db, x * db, db, db);
    const double p = block.trace().real();
    w.push_back(std::max(p, 0.0));
    if (p > 1e-14) {
      cond.push_back(core::DensityOperator::normalized(side, block));
    } else {
      cond.push_back(core::DensityOperator::maximally_mixed(side));
    }
  }
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  for (double& v : w) v /= total;
  return CqState(std::move(w), std::move(cond));
}

DiscriminationInstance CqState::scores() const {
  std::vector<ComplexMatrix> ks;
  for (std::size_t x = 0; x < size(); ++x) ks.push_back(weights_[x] * conditionals_[x].matrix());
  return DiscriminationInstance(std::move(ks));
}

core::DensityOperator CqState::joint(const std::string& x_label) const {
  const std::size_t nx = size();
  const std::size_t db = side_shape().total_dim();
  ComplexMatrix m = ComplexMatrix::Zero(static_cast<Eigen::Index>(nx * db), static_cast<Eigen::Index>(nx * db));
  for (std::size_t x = 0; x < nx; ++x) {
    const auto off = static_cast<Eigen::Index>(x * db);
    m.block(off, off, static_cast<Eigen::Index>(db), static_cast<Eigen::Index>(db)) =
        weights_[x] * conditionals_[x].matrix();
  }
  auto shape = RegisterShape::single(x_label, nx).concat(side_shape());
  return core::DensityOperator(std::move(shape), std::move(m));
}

SolverCertificate guessing_probability(const CqState& cq, const SolverOptions& opts) {
  return optimal_discrimination(cq.scores(), opts);
}

HminCq hmin_cq(const CqState& cq, const SolverOptions& opts) {
  HminCq out;
  out.certificate = guessing_probability(cq, opts);
  out.value = -std::log2(out.certificate.primal);
  return out;
}

HminBracket hmin_general(const core::DensityOperator& rho_ab, const std::vector<std::string>& a_labels,
                         double tol, int max_iter) {
  const auto& shape = rho_ab.shape();
  if (a_labels.empty()) throw InputError("hmin_general: A must name at least one subsystem");
  const auto b_labels = shape.complement(a_labels);
  std::vector<std::string> order;
  for (const auto& l : shape.labels()) {
    if (std::find(a_labels.begin(), a_labels.end(), l) != a_labels.end()) order.push_back(l);
  }
  if (order.size() != a_labels.size()) throw InputError("hmin_general: unknown or repeated A label");
  order.insert(order.end(), b_labels.begin(), b_labels.end());
  const auto rho = rho_ab.permuted(order);

  std::size_t da = 1;
  for (const auto& l : a_labels) da *= shape.dim_of(l);
  const std::size_t db = shape.total_dim() / da;

  detail::BarrierProblem p;
  p.outer = da;
  p.dim = db;
  p.scores = {rho.matrix()};
  // lg(dual/primal) ≤ tol once the gap is below tol·ln2·primal, and primal ≥ 1/dA
  p.tol = tol * std::log(2.0) / static_cast<double>(da);
  p.max_iter = max_iter;
  const auto r = detail::solve_barrier(p);

  HminBracket out;
  out.sigma = r.y;
  out.lower = -std::log2(r.dual);
  out.upper = -std::log2(r.primal);
  out.iterations = r.iterations;
  out.converged = r.converged && out.upper - out.lower <= tol;
  return out;
}

}  // namespace qadapt::opt
