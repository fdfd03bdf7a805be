#include "qadapt/commit/commitment.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/SVD>

#include "qadapt/core/error.hpp"
#include "qadapt/core/random.hpp"

namespace qadapt::commit {

using core::Complex;
using core::ComplexVector;

namespace {

constexpr double kDegree = std::numbers::pi / 180.0;

double basis_value(const ComplexMatrix& u, const std::vector<ComplexMatrix>& scores, std::vector<std::size_t>& labels) {
  double total = 0.0;
  labels.assign(static_cast<std::size_t>(u.cols()), 0);
  for (Eigen::Index k = 0; k < u.cols(); ++k) {
    double best = -1.0;
    for (std::size_t y = 0; y < scores.size(); ++y) {
      const double v = u.col(k).dot(scores[y] * u.col(k)).real();
      if (v > best) best = v, labels[static_cast<std::size_t>(k)] = y;
    }
    total += best;
  }
  return total;
}

// Σ_k ⟨u_k|K_k|u_k⟩ is convex in U, so replacing U by the unitary polar factor
// of its gradient never decreases the value
double refine(ComplexMatrix& u, const std::vector<ComplexMatrix>& scores, std::vector<std::size_t>& labels) {
  double value = basis_value(u, scores, labels);
  for (int it = 0; it < 500; ++it) {
    ComplexMatrix g(u.rows(), u.cols());
    for (Eigen::Index k = 0; k < u.cols(); ++k) g.col(k) = scores[labels[std::size_t(k)]] * u.col(k);
    Eigen::JacobiSVD<ComplexMatrix> svd(g, Eigen::ComputeFullU | Eigen::ComputeFullV);
    ComplexMatrix next = svd.matrixU() * svd.matrixV().adjoint();
    std::vector<std::size_t> next_labels;
    const double v = basis_value(next, scores, next_labels);
    if (v <= value + 1e-15) break;
    u = std::move(next);
    labels = std::move(next_labels);
    value = v;
  }
  return value;
}

ComplexMatrix qubit_basis(double theta, double phi) {
  ComplexMatrix u(2, 2);
  const Complex e = std::polar(1.0, phi);
  u << std::cos(theta / 2), -std::conj(e) * std::sin(theta / 2), e * std::sin(theta / 2), std::cos(theta / 2);
  return u;
}

std::vector<ComplexMatrix> grouped(const ComplexMatrix& u, const std::vector<std::size_t>& labels, std::size_t n) {
  std::vector<ComplexMatrix> f(n, ComplexMatrix::Zero(u.rows(), u.rows()));
  for (Eigen::Index k = 0; k < u.cols(); ++k) f[labels[std::size_t(k)]] += core::outer(u.col(k));
  return f;
}

void validate_projective(const std::vector<ComplexMatrix>& f, std::size_t count, const char* what) {
  if (f.size() != count) throw InputError(std::string(what) + ": strategy size does not match the openings");
  const auto d = static_cast<std::size_t>(f.front().rows());
  ComplexMatrix sum = ComplexMatrix::Zero(f.front().rows(), f.front().cols());
  for (const auto& e : f) {
    if (static_cast<std::size_t>(e.rows()) != d || !core::is_projector(e, 1e-9)) {
      throw InputError(std::string(what) + ": strategy element is not a projector");
    }
    sum += e;
  }
  if (core::max_abs(sum - core::identity(d)) > 1e-9) throw InputError(std::string(what) + ": strategy does not sum to I");
}

}  // namespace

ProjectiveCommitmentScheme::ProjectiveCommitmentScheme(std::array<std::vector<Opening>, 2> openings, double tol)
    : openings_(std::move(openings)) {
  if (openings_[0].empty() || openings_[1].empty()) throw InputError("each bit needs at least one opening");
  const auto d = openings_[0].front().v.rows();
  for (const auto& list : openings_) {
    for (const auto& o : list) {
      if (o.v.rows() != d || o.v.cols() != d) throw InputError("opening '" + o.label + "' has the wrong dimension");
      if (!core::is_projector(o.v, tol)) throw InputError("opening '" + o.label + "' is not a projector");
    }
  }
}

std::string to_string(BindingMode m) {
  switch (m) {
    case BindingMode::non_adaptive: return "non-adaptive";
    case BindingMode::povm_relaxation: return "povm-relaxation";
    case BindingMode::projective_bruteforce: return "projective-bruteforce";
  }
  return "";
}

BindingMode binding_mode_from_string(const std::string& s) {
  if (s == "non-adaptive") return BindingMode::non_adaptive;
  if (s == "povm-relaxation") return BindingMode::povm_relaxation;
  if (s == "projective-bruteforce") return BindingMode::projective_bruteforce;
  throw InputError("unknown binding mode '" + s + "'");
}

BindingReport na_binding(const ProjectiveCommitmentScheme& scheme, const DensityOperator& rho_b) {
  if (rho_b.dim() != scheme.dim()) throw InputError("state does not live on the scheme's register");
  BindingReport r;
  r.mode = BindingMode::non_adaptive;
  for (int b = 0; b < 2; ++b) {
    const auto& list = scheme.openings(b);
    for (std::size_t y = 0; y < list.size(); ++y) {
      const double v = (list[y].v * rho_b.matrix()).trace().real();
      if (y == 0 || v > r.p[b]) r.p[b] = v, r.best_opening[b] = y;
    }
    r.p_upper[b] = r.p[b];
  }
  r.epsilon = std::max(0.0, r.p[0] + r.p[1] - 1.0);
  return r;
}

std::vector<ComplexMatrix> opening_scores(const ProjectiveCommitmentScheme& scheme, const DensityOperator& rho_ab,
                                          int bit) {
  const auto& shape = rho_ab.shape();
  if (shape.count() != 2 || shape.subsystems()[1].dim != scheme.dim()) {
    throw InputError("binding needs a state on (A, B) with B the scheme's register");
  }
  const auto a = shape.subsystems()[0].label;
  const auto b = shape.subsystems()[1].label;
  std::vector<ComplexMatrix> out;
  for (const auto& o : scheme.openings(bit)) {
    out.push_back(core::hermitize(core::partial_trace(core::embed(o.v, shape, {b}) * rho_ab.matrix(), shape, {a})));
  }
  return out;
}

ProjectiveOptimum best_projective(const std::vector<ComplexMatrix>& scores, const BindingOptions& opts) {
  const auto d = static_cast<std::size_t>(scores.front().rows());
  if (d > kBruteforceMaxDim || scores.size() > kBruteforceMaxOpenings) {
    throw InputError("projective search is limited to dim A ≤ 4 and at most 4 openings");
  }
  ProjectiveOptimum out;
  out.value = -1.0;
  std::vector<std::size_t> labels;
  ComplexMatrix best_u;
  std::vector<std::size_t> best_labels;
  auto consider = [&](ComplexMatrix u) {
    const double v = refine(u, scores, labels);
    if (v > out.value) out.value = v, best_u = std::move(u), best_labels = labels;
  };
  if (d == 1) {
    consider(core::identity(1));
  } else if (d == 2) {
    double grid_best = -1.0;
    ComplexMatrix grid_u;
    for (int i = 0; i <= 90; ++i) {
      for (int j = 0; j < 180; ++j) {
        const auto u = qubit_basis(2 * i * kDegree, 2 * j * kDegree);
        const double v = basis_value(u, scores, labels);
        if (v > grid_best) grid_best = v, grid_u = u;
      }
    }
    consider(grid_u);
    // nearest grid point is within 1° in θ and φ, i.e. under 1.5° on the sphere;
    // each of the two terms moves by at most (λmax − λmin)·sin(angle/2)
    double spread = 0.0;
    for (const auto& k : scores) spread = std::max(spread, core::lambda_max(k) - core::lambda_min(k));
    const double grid_err = 2.0 * spread * std::sin(0.75 * kDegree);
    out.error_bound = std::max(0.0, grid_best + grid_err - out.value);
  } else {
    auto rng = core::make_rng(opts.seed, 0xb4f);
    consider(core::identity(d));
    for (std::size_t s = 1; s < std::max<std::size_t>(opts.starts, 2); ++s) consider(core::haar_unitary(rng, d));
    out.error_bound = std::numeric_limits<double>::infinity();
  }
  out.f = grouped(best_u, best_labels, scores.size());
  return out;
}

BindingReport adaptive_binding(const ProjectiveCommitmentScheme& scheme, const DensityOperator& rho_ab,
                               BindingMode mode, const BindingOptions& opts) {
  if (mode == BindingMode::non_adaptive) {
    if (rho_ab.shape().count() != 2) throw InputError("binding needs a state on (A, B)");
    return na_binding(scheme, rho_ab.reduce({rho_ab.shape().subsystems()[1].label}));
  }
  BindingReport r;
  r.mode = mode;
  std::array<std::vector<ComplexMatrix>, 2> scores{opening_scores(scheme, rho_ab, 0), opening_scores(scheme, rho_ab, 1)};
  if (mode == BindingMode::projective_bruteforce &&
      (scores[0].front().rows() > Eigen::Index(kBruteforceMaxDim) || scores[0].size() > kBruteforceMaxOpenings ||
       scores[1].size() > kBruteforceMaxOpenings)) {
    throw InputError("projective-bruteforce is limited to dim A ≤ 4 and at most 4 openings per bit");
  }
  OpeningStrategy strategy;
  for (int b = 0; b < 2; ++b) {
    opt::SolverOptions so;
    so.tol = opts.tol;
    r.certificates[b] = opt::optimal_discrimination(opt::DiscriminationInstance(scores[b]), so);
    r.p_upper[b] = r.certificates[b]->dual;
    if (mode == BindingMode::povm_relaxation) {
      r.p[b] = r.certificates[b]->dual;
    } else {
      const auto best = best_projective(scores[b], opts);
      r.p[b] = best.value;
      r.p_upper[b] = std::min(r.p_upper[b], best.value + best.error_bound);
      strategy.f[b] = best.f;
    }
  }
  r.epsilon = std::max(0.0, r.p[0] + r.p[1] - 1.0);
  if (mode == BindingMode::projective_bruteforce) {
    const auto proj = opening_projectors(scheme, strategy);
    const auto cs = cheat_state(proj[0], proj[1]);
    r.cheat_eps = cs.eps;
    if (cs.phi0) r.cheat_state = core::StateVector::normalized(rho_ab.shape(), *cs.phi0);
    r.strategy = std::move(strategy);
  }
  return r;
}

std::array<ComplexMatrix, 2> opening_projectors(const ProjectiveCommitmentScheme& scheme,
                                                const OpeningStrategy& strategy) {
  std::array<ComplexMatrix, 2> out;
  for (int b = 0; b < 2; ++b) {
    const auto& list = scheme.openings(b);
    validate_projective(strategy.f[b], list.size(), "opening_projectors");
    const auto da = static_cast<std::size_t>(strategy.f[b].front().rows());
    out[b] = ComplexMatrix::Zero(Eigen::Index(da * scheme.dim()), Eigen::Index(da * scheme.dim()));
    for (std::size_t y = 0; y < list.size(); ++y) out[b] += core::tensor(strategy.f[b][y], list[y].v);
    if (!core::is_projector(out[b], 1e-9)) throw InputError("opening_projectors: result is not a projector");
  }
  if (out[0].rows() != out[1].rows()) throw InputError("opening_projectors: strategies act on different registers");
  return out;
}

NormLemma norm_lemma_check(const ComplexMatrix& x, const ComplexMatrix& y) {
  if (!core::is_projector(x, 1e-9) || !core::is_projector(y, 1e-9)) throw InputError("norm_lemma_check needs projectors");
  NormLemma r;
  r.lhs = core::spectral_norm(x + y);
  r.rhs = 1.0 + core::spectral_norm(x * y);
  r.pass = r.lhs <= r.rhs + 1e-9;
  return r;
}

CheatState cheat_state(const ComplexMatrix& p0, const ComplexMatrix& p1) {
  if (p0.rows() != p1.rows()) throw InputError("cheat_state: size mismatch");
  Eigen::JacobiSVD<ComplexMatrix> svd(p1 * p0, Eigen::ComputeFullV);
  CheatState out;
  out.eps = svd.singularValues()(0);
  if (out.eps < 1e-12) {
    out.eps = 0.0;
    return out;
  }
  const ComplexVector phi = p0 * svd.matrixV().col(0);
  out.phi0 = phi / phi.norm();
  return out;
}

double worst_case_eps_na(const ProjectiveCommitmentScheme& scheme) {
  double worst = 0.0;
  for (const auto& o0 : scheme.openings(0)) {
    for (const auto& o1 : scheme.openings(1)) worst = std::max(worst, core::spectral_norm(o0.v + o1.v) - 1.0);
  }
  return worst;
}

bool StorageReport::all_pass() const {
  for (const auto& t : trials) {
    if (!t.pass) return false;
  }
  return true;
}

StorageReport storage_reduction_check(const ProjectiveCommitmentScheme& scheme, std::size_t q, double eps_na,
                                      std::size_t trials, BindingMode mode, const BindingOptions& opts) {
  if (q > 8) throw InputError("storage bound q is limited to 8 qubits");
  StorageReport rep;
  rep.q = q;
  rep.eps_na = eps_na;
  rep.mode = mode;
  rep.assertable = mode != BindingMode::povm_relaxation || q == 0;
  const std::size_t da = std::size_t{1} << q;
  const core::RegisterShape shape({{"A", da}, {"B", scheme.dim()}});
  core::check_dimension(shape.total_dim(), "storage reduction check");
  auto rng = core::make_rng(opts.seed, 0x5702);
  const double bound = std::pow(2.0, 0.5 * double(q)) * std::sqrt(std::max(0.0, eps_na));
  for (std::size_t t = 0; t < trials; ++t) {
    const auto psi = core::StateVector::normalized(shape, core::haar_vector(rng, shape.total_dim()));
    const auto r = adaptive_binding(scheme, DensityOperator::pure(psi), q == 0 ? BindingMode::non_adaptive : mode, opts);
    StorageTrial tr;
    tr.alpha = r.epsilon;
    tr.alpha_upper = std::max(0.0, r.p_upper[0] + r.p_upper[1] - 1.0);
    tr.bound = bound;
    tr.pass = tr.alpha <= bound + 1e-9;
    rep.trials.push_back(tr);
  }
  return rep;
}

ProjectiveCommitmentScheme scheme_from_json(const core::Json& j) {
  std::array<std::vector<Opening>, 2> openings;
  try {
    const auto& arr = j.at("openings");
    if (!arr.is_array() || arr.size() != 2) throw InputError("scheme needs two opening lists");
    for (int b = 0; b < 2; ++b) {
      for (const auto& o : arr[std::size_t(b)]) {
        openings[b].push_back({o.at("label").get<std::string>(), core::matrix_from_json(o.at("V"))});
      }
    }
  } catch (const core::Json::exception& e) {
    throw InputError(std::string("malformed scheme: ") + e.what());
  }
  ProjectiveCommitmentScheme s(std::move(openings));
  if (j.contains("dim") && j["dim"].get<std::size_t>() != s.dim()) throw InputError("scheme dim disagrees with its projectors");
  return s;
}

core::Json scheme_to_json(const ProjectiveCommitmentScheme& s) {
  core::Json lists = core::Json::array();
  for (int b = 0; b < 2; ++b) {
    core::Json list = core::Json::array();
    for (const auto& o : s.openings(b)) list.push_back({{"label", o.label}, {"V", core::matrix_to_json(o.v)}});
    lists.push_back(list);
  }
  return {{"dim", s.dim()}, {"openings", lists}};
}

core::Json report_to_json(const BindingReport& r) {
  core::Json j{{"mode", to_string(r.mode)},
               {"p0", r.p[0]},
               {"p1", r.p[1]},
               {"p0_upper", r.p_upper[0]},
               {"p1_upper", r.p_upper[1]},
               {"epsilon", r.epsilon}};
  if (r.mode == BindingMode::non_adaptive) j["best_openings"] = {r.best_opening[0], r.best_opening[1]};
  for (int b = 0; b < 2; ++b) {
    if (r.certificates[b]) j["certificate" + std::to_string(b)] = opt::certificate_to_json(*r.certificates[b]);
  }
  if (r.mode == BindingMode::projective_bruteforce) {
    j["cheat_eps"] = r.cheat_eps;
    if (r.cheat_state) {
      core::Json amps = core::Json::array();
      for (Eigen::Index i = 0; i < r.cheat_state->amplitudes().size(); ++i) {
        amps.push_back({r.cheat_state->amplitudes()(i).real(), r.cheat_state->amplitudes()(i).imag()});
      }
      j["cheat_state"] = {{"shape", core::shape_to_json(r.cheat_state->shape())}, {"amplitudes", amps}};
    }
  }
  return j;
}

core::Json storage_to_json(const StorageReport& r) {
  core::Json trials = core::Json::array();
  for (const auto& t : r.trials) {
    trials.push_back({{"alpha", t.alpha}, {"alpha_upper", t.alpha_upper}, {"bound", t.bound}, {"pass", t.pass}});
  }
  return {{"q", r.q},
          {"eps_na", r.eps_na},
          {"mode", to_string(r.mode)},
          {"assertable", r.assertable},
          {"all_pass", r.all_pass()},
          {"trials", trials}};
}

}  // namespace qadapt::commit
