#include "qadapt/info/imax.hpp"

#include <cmath>
#include <numbers>

#include "qadapt/core/error.hpp"

namespace qadapt::info {

using core::Complex;

namespace {

std::vector<std::string> rest_labels(const DensityOperator& rho, const std::vector<std::string>& targets) {
  for (const auto& t : targets) rho.shape().index_of(t);
  return rho.shape().complement(targets);
}

ComplexMatrix fourier(std::size_t d) {
  ComplexMatrix u(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t k = 0; k < d; ++k) {
      u(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) =
          std::polar(1.0 / std::sqrt(double(d)), 2.0 * std::numbers::pi * double(j * k) / double(d));
    }
  }
  return u;
}

opt::Povm random_rank_one(const core::RegisterShape& shape, core::Rng& rng) {
  const std::size_t d = shape.total_dim();
  std::uniform_int_distribution<std::size_t> count(d, d * d);
  const std::size_t m = count(rng);
  std::vector<core::ComplexVector> vs;
  ComplexMatrix s = ComplexMatrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  std::normal_distribution<double> normal(0.0, 1.0);
  for (std::size_t k = 0; k < m; ++k) {
    core::ComplexVector v(static_cast<Eigen::Index>(d));
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = Complex(normal(rng), normal(rng));
    s += v * v.adjoint();
    vs.push_back(std::move(v));
  }
  const ComplexMatrix w = core::pinv_sqrt(core::hermitize(s), 1e-14);
  std::vector<ComplexMatrix> els;
  for (const auto& v : vs) els.push_back(core::outer(w * v));
  // remove rounding drift so the elements sum to I
  ComplexMatrix sum = ComplexMatrix::Zero(s.rows(), s.cols());
  for (const auto& e : els) sum += e;
  const ComplexMatrix fix = core::pinv_sqrt(core::hermitize(sum), 1e-14);
  for (auto& e : els) e = core::hermitize(fix * e * fix);
  return opt::Povm(shape, std::move(els));
}

}  // namespace

DmaxResult dmax_relative(const ComplexMatrix& k, const ComplexMatrix& rho, double rank_tol) {
  if (k.rows() != rho.rows() || k.cols() != rho.cols()) throw InputError("dmax_relative: size mismatch");
  const ComplexMatrix support = core::eigenspace_projector(core::hermitize(rho), rank_tol);
  const ComplexMatrix outside = core::identity(static_cast<std::size_t>(rho.rows())) - support;
  DmaxResult out;
  if (core::max_abs(outside * k * outside) > std::max(rank_tol, 1e-10)) {
    out.unbounded = true;
    out.value = std::numeric_limits<double>::infinity();
    return out;
  }
  const ComplexMatrix w = core::pinv_sqrt(core::hermitize(rho), rank_tol);
  out.value = std::max(0.0, core::lambda_max(core::hermitize(w * k * w)));
  return out;
}

std::vector<ComplexMatrix> measured_branches(const MeasurementDescriptor& m, const DensityOperator& rho) {
  const auto rest = rest_labels(rho, m.targets);
  const auto target_shape = rho.shape().restricted(m.targets);
  if (target_shape.total_dim() != m.povm.dim()) throw InputError("measurement dimension does not match its targets");
  std::vector<ComplexMatrix> out;
  for (const auto& f : m.povm.elements()) {
    const ComplexMatrix lifted = core::embed(f, rho.shape(), m.targets);
    out.push_back(core::hermitize(core::partial_trace(lifted * rho.matrix(), rho.shape(), rest)));
  }
  return out;
}

ImaxValue imax_for_measurement(const MeasurementDescriptor& m, const DensityOperator& rho) {
  const auto rest = rest_labels(rho, m.targets);
  const ComplexMatrix rho_b = core::partial_trace(rho.matrix(), rho.shape(), rest);
  ImaxValue out;
  double total = 0.0;
  for (const auto& k : measured_branches(m, rho)) {
    const auto d = dmax_relative(k, rho_b);
    out.unbounded = out.unbounded || d.unbounded;
    out.c.push_back(d.value);
    total += d.value;
  }
  out.value = std::log2(total);
  for (double c : out.c) out.sigma.push_back(c / total);
  return out;
}

double domination_margin(const std::vector<ComplexMatrix>& branches, const ComplexMatrix& rho_b,
                         const std::vector<double>& sigma, double lambda) {
  double worst = std::numeric_limits<double>::infinity();
  const double scale = std::pow(2.0, lambda);
  for (std::size_t x = 0; x < branches.size(); ++x) {
    worst = std::min(worst, core::lambda_min(core::hermitize(scale * sigma[x] * rho_b - branches[x])));
  }
  return worst;
}

std::vector<opt::Povm> search_family(const core::RegisterShape& a_shape, const SearchConfig& cfg) {
  const std::size_t d = a_shape.total_dim();
  std::vector<opt::Povm> out;
  auto push = [&](opt::Povm p) {
    if (out.size() < cfg.budget) out.push_back(std::move(p));
  };
  push(opt::Povm::computational(a_shape));
  if (d > 1) push(opt::Povm::from_basis(a_shape, fourier(d)));
  for (const auto& p : cfg.extra) {
    if (p.dim() != d) throw InputError("caller-supplied measurement has the wrong dimension");
    push(p);
  }
  auto rng = core::make_rng(cfg.seed, 0x1a4);
  for (std::size_t i = 0; out.size() < cfg.budget; ++i) {
    if (i % 2 == 0) {
      push(opt::Povm::from_basis(a_shape, core::haar_unitary(rng, d)));
    } else {
      push(random_rank_one(a_shape, rng));
    }
  }
  return out;
}

ImaxEstimate imax_acc_bounds(const DensityOperator& rho, const std::vector<std::string>& a_labels,
                             const SearchConfig& cfg) {
  const auto a_shape = rho.shape().restricted(a_labels);
  ImaxEstimate est;
  est.upper = core::zero_entropy(rho.reduce(a_labels));
  est.lower = -std::numeric_limits<double>::infinity();
  for (auto& povm : search_family(a_shape, cfg)) {
    MeasurementDescriptor m{a_labels, std::move(povm)};
    const auto v = imax_for_measurement(m, rho);
    ++est.evaluated;
    if (v.value > est.lower) {
      est.lower = v.value;
      est.witness_sigma = v.sigma;
      est.witness = std::move(m);
    }
  }
  return est;
}

core::Json imax_estimate_to_json(const ImaxEstimate& e) {
  core::Json j{{"lower_bound", e.lower},
               {"upper_bound", e.upper},
               {"evaluated", e.evaluated},
               {"witness_sigma", e.witness_sigma}};
  if (e.witness) {
    j["witness_measurement"] = {{"targets", e.witness->targets}, {"povm", opt::povm_to_json(e.witness->povm)}};
  }
  return j;
}

ConditionalBound classical_conditional_bound(const DensityOperator& rho, const std::string& z_label,
                                             const std::vector<std::string>& a_labels, const SearchConfig& cfg) {
  std::vector<std::string> order{z_label};
  for (const auto& l : rho.shape().labels()) {
    if (l != z_label) order.push_back(l);
  }
  const auto r = rho.permuted(order);
  const std::size_t nz = rho.shape().dim_of(z_label);
  std::vector<core::Subsystem> subs(r.shape().subsystems().begin() + 1, r.shape().subsystems().end());
  const core::RegisterShape rest(subs);
  const auto dr = static_cast<Eigen::Index>(rest.total_dim());
  const auto& m = r.matrix();
  for (Eigen::Index x = 0; x < static_cast<Eigen::Index>(nz); ++x) {
    for (Eigen::Index y = 0; y < static_cast<Eigen::Index>(nz); ++y) {
      if (x != y && core::max_abs(m.block(x * dr, y * dr, dr, dr)) > 1e-10) {
        throw InputError("register " + z_label + " is not classical");
      }
    }
  }
  ConditionalBound out;
  out.h0_joint = core::zero_entropy(rho.reduce(a_labels));
  out.lower = -std::numeric_limits<double>::infinity();
  out.upper = -std::numeric_limits<double>::infinity();
  for (Eigen::Index z = 0; z < static_cast<Eigen::Index>(nz); ++z) {
    const ComplexMatrix block = m.block(z * dr, z * dr, dr, dr);
    if (block.trace().real() <= 1e-12) continue;
    const auto branch = DensityOperator::normalized(rest, block);
    SearchConfig c = cfg;
    c.seed = cfg.seed + static_cast<std::uint64_t>(z);
    const auto est = imax_acc_bounds(branch, a_labels, c);
    out.branch_lower.push_back(est.lower);
    out.branch_upper.push_back(est.upper);
    out.lower = std::max(out.lower, est.lower);
    out.upper = std::max(out.upper, est.upper);
  }
  out.pass = out.lower <= out.h0_joint + 1e-8 && out.upper <= out.h0_joint + 1e-8;
  return out;
}

DensityOperator apply_local_channel(const DensityOperator& rho_ab, const std::vector<ComplexMatrix>& kraus_a,
                                    const std::vector<ComplexMatrix>& kraus_b) {
  const auto& subs = rho_ab.shape().subsystems();
  if (subs.size() != 2) throw InputError("local channels act on a two-subsystem state");
  auto check = [](const std::vector<ComplexMatrix>& ks, std::size_t din, const char* who) -> std::size_t {
    if (ks.empty()) throw InputError(std::string("empty Kraus list on ") + who);
    const auto dout = static_cast<std::size_t>(ks.front().rows());
    ComplexMatrix sum = ComplexMatrix::Zero(static_cast<Eigen::Index>(din), static_cast<Eigen::Index>(din));
    for (const auto& k : ks) {
      if (static_cast<std::size_t>(k.cols()) != din || static_cast<std::size_t>(k.rows()) != dout) {
        throw InputError(std::string("Kraus operator has the wrong size on ") + who);
      }
      sum += k.adjoint() * k;
    }
    if (core::max_abs(sum - core::identity(din)) > 1e-9) {
      throw InputError(std::string("Kraus operators are not trace preserving on ") + who);
    }
    return dout;
  };
  const std::size_t da = check(kraus_a, subs[0].dim, "A");
  const std::size_t db = check(kraus_b, subs[1].dim, "B");
  const auto dim = static_cast<Eigen::Index>(da * db);
  ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
  for (const auto& ka : kraus_a) {
    for (const auto& kb : kraus_b) {
      const ComplexMatrix k = core::tensor(ka, kb);
      out += k * rho_ab.matrix() * k.adjoint();
    }
  }
  core::RegisterShape shape({{subs[0].label, da}, {subs[1].label, db}});
  return DensityOperator(std::move(shape), core::hermitize(out));
}

ChannelCheck local_channel_monotonicity_check(const DensityOperator& rho_ab,
                                              const std::vector<ComplexMatrix>& kraus_a,
                                              const std::vector<ComplexMatrix>& kraus_b,
                                              const SearchConfig& cfg) {
  const auto out_state = apply_local_channel(rho_ab, kraus_a, kraus_b);
  const std::string a = rho_ab.shape().subsystems()[0].label;
  ChannelCheck res;
  res.h0_before = core::zero_entropy(rho_ab.reduce({a}));
  res.h0_after = core::zero_entropy(out_state.reduce({a}));
  res.max_value = -std::numeric_limits<double>::infinity();
  for (auto& povm : search_family(out_state.shape().restricted({a}), cfg)) {
    const auto v = imax_for_measurement({{a}, std::move(povm)}, out_state);
    res.max_value = std::max(res.max_value, v.value);
    ++res.evaluated;
  }
  res.pass = res.max_value <= res.h0_before + 1e-8;
  return res;
}

}  // namespace qadapt::info
