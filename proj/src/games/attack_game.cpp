#include "qadapt/games/attack_game.hpp"

#include <cmath>

#include "qadapt/core/error.hpp"
#include "qadapt/core/random.hpp"

namespace qadapt::games {

using core::RegisterShape;

namespace {

constexpr double kCheckSlack = 1e-8;

// per-value blocks of ρ_{A A' B} over a classical A', unnormalized, on (A, B)
std::vector<ComplexMatrix> side_blocks(const AttackGame& g) {
  const auto r = g.state().permuted({g.ap(), g.a(), g.b()});
  const auto nap = static_cast<Eigen::Index>(g.state().shape().dim_of(g.ap()));
  const auto d = r.matrix().rows() / nap;
  std::vector<ComplexMatrix> out;
  for (Eigen::Index z = 0; z < nap; ++z) out.push_back(r.matrix().block(z * d, z * d, d, d));
  return out;
}

RegisterShape ab_of(const AttackGame& g) {
  return RegisterShape({{g.a(), g.state().shape().dim_of(g.a())}, {g.b(), g.state().shape().dim_of(g.b())}});
}

opt::SolverCertificate solve(const std::vector<ComplexMatrix>& ks, double tol) {
  opt::SolverOptions o;
  o.tol = tol;
  return opt::optimal_discrimination(opt::DiscriminationInstance(ks), o);
}

}  // namespace

BinaryPovmFamily::BinaryPovmFamily(std::vector<BinaryPovm> members, double tol) : members_(std::move(members)) {
  if (members_.empty()) throw InputError("binary POVM family is empty");
  if (members_.size() > kMaxFamilySize) throw InputError("binary POVM family exceeds 64 members");
  const auto d = members_.front().e1.rows();
  for (const auto& m : members_) {
    if (m.e0.rows() != d || m.e1.rows() != d || m.e0.cols() != d || m.e1.cols() != d) {
      throw InputError("family member '" + m.label + "' has inconsistent dimensions");
    }
    if (!core::is_psd(m.e0) || !core::is_psd(m.e1)) throw InputError("family member '" + m.label + "' is not PSD");
    if (core::max_abs(m.e0 + m.e1 - core::identity(static_cast<std::size_t>(d))) > tol) {
      throw InputError("family member '" + m.label + "' does not sum to the identity");
    }
  }
}

BinaryPovmFamily BinaryPovmFamily::from_accepting(const std::vector<ComplexMatrix>& e1) {
  std::vector<BinaryPovm> members;
  for (std::size_t j = 0; j < e1.size(); ++j) {
    members.push_back({std::to_string(j), core::identity(static_cast<std::size_t>(e1[j].rows())) - e1[j], e1[j]});
  }
  return BinaryPovmFamily(std::move(members));
}

AttackGame::AttackGame(const DensityOperator& state, BinaryPovmFamily family, const std::string& a,
                       const std::string& ap, const std::string& b)
    : state_(state), family_(std::move(family)), a_(a), ap_(ap), b_(b) {
  if (a == ap || a == b || ap == b) throw InputError("game registers need distinct labels");
  const auto& shape = state.shape();
  if (!shape.contains(b)) throw InputError("game state has no register '" + b + "'");
  std::vector<std::string> present;
  std::vector<core::Subsystem> subs;
  for (const auto& l : {a, ap, b}) {
    if (shape.contains(l)) {
      present.push_back(l);
      subs.push_back({l, shape.dim_of(l)});
    } else {
      subs.push_back({l, 1});
    }
  }
  if (present.size() != shape.count()) throw InputError("game state has registers other than A, A', B");
  state_ = DensityOperator(RegisterShape(subs), state.permuted(present).matrix());
  if (family_.dim() != shape.dim_of(b)) throw InputError("family dimension does not match register " + b);
}

bool AttackGame::side_is_classical() const {
  const auto r = state_.permuted({ap_, a_, b_});
  const auto nap = static_cast<Eigen::Index>(state_.shape().dim_of(ap_));
  const auto d = r.matrix().rows() / nap;
  for (Eigen::Index x = 0; x < nap; ++x) {
    for (Eigen::Index y = 0; y < nap; ++y) {
      if (x != y && core::max_abs(r.matrix().block(x * d, y * d, d, d)) > 1e-10) return false;
    }
  }
  return true;
}

NonAdaptive non_adaptive_success(const AttackGame& g) {
  const ComplexMatrix rho_b = g.state().reduce({g.b()}).matrix();
  NonAdaptive out{-1.0, 0};
  const auto& ms = g.family().members();
  for (std::size_t j = 0; j < ms.size(); ++j) {
    const double v = (ms[j].e1 * rho_b).trace().real();
    if (v > out.value) out = {v, j};
  }
  return out;
}

opt::SolverCertificate adaptive_success(const AttackGame& g, double tol) {
  const auto& shape = g.state().shape();
  std::vector<ComplexMatrix> ks;
  for (const auto& m : g.family().members()) {
    const ComplexMatrix lifted = core::embed(m.e1, shape, {g.b()});
    ks.push_back(core::hermitize(core::partial_trace(lifted * g.state().matrix(), shape, {g.a(), g.ap()})));
  }
  return solve(ks, tol);
}

opt::SolverCertificate semi_adaptive_success(const AttackGame& g, double tol) {
  const auto& shape = g.state().shape();
  std::vector<ComplexMatrix> ks;
  for (const auto& m : g.family().members()) {
    const ComplexMatrix lifted = core::embed(m.e1, shape, {g.b()});
    ks.push_back(core::hermitize(core::partial_trace(lifted * g.state().matrix(), shape, {g.ap()})));
  }
  return solve(ks, tol);
}

double induced_strategy_success(const AttackGame& g, const opt::Povm& m) {
  if (!g.side_is_classical()) throw InputError("induced strategies need a classical A'");
  const auto ab = ab_of(g);
  double total = 0.0;
  for (const auto& block : side_blocks(g)) {
    for (const auto& f : m.elements()) {
      const ComplexMatrix lifted = core::embed(f, ab, {g.a()});
      const ComplexMatrix kx = core::partial_trace(lifted * block, ab, {g.b()});
      double best = 0.0;
      for (const auto& e : g.family().members()) best = std::max(best, (e.e1 * kx).trace().real());
      total += best;
    }
  }
  return total;
}

bool GameResult::all_ok() const {
  for (const auto& c : bound_checks) {
    if (!c.ok()) return false;
  }
  return true;
}

GameResult verify_main_theorem(const AttackGame& g, const VerifyOptions& opts) {
  GameResult r;
  const auto na = non_adaptive_success(g);
  r.p_na = na.value;
  r.best_j = na.best;
  r.semi_certificate = semi_adaptive_success(g, opts.tol);
  r.adaptive_certificate = adaptive_success(g, opts.tol);
  r.p_semi = r.semi_certificate.value();
  r.p_adaptive = r.adaptive_certificate.value();
  r.h0_a = core::zero_entropy(g.state().reduce({g.a()}));
  auto add = [&](std::string name, double lhs, double rhs, bool may_fail) {
    const bool pass = lhs <= rhs + kCheckSlack;
    r.bound_checks.push_back({std::move(name), lhs, rhs, pass, may_fail && !pass});
  };
  add("chain_na_semi", r.p_na, r.semi_certificate.dual, false);
  add("chain_semi_adaptive", r.semi_certificate.primal, r.adaptive_certificate.dual, false);

  const bool classical = g.side_is_classical();
  const double h0_rhs = std::pow(2.0, r.h0_a) * r.semi_certificate.dual;
  if (classical) {
    add("h0_bound", r.adaptive_certificate.primal, h0_rhs, false);
  } else {
    // no such bound with quantum side information
    add("h0_bound_quantum_side", r.adaptive_certificate.primal, h0_rhs, true);
    return r;
  }

  const auto ab = ab_of(g);
  std::vector<DensityOperator> branches;
  for (const auto& block : side_blocks(g)) {
    if (block.trace().real() > 1e-12) branches.push_back(DensityOperator::normalized(ab, block));
  }
  info::SearchConfig cfg;
  cfg.budget = opts.budget;
  cfg.seed = opts.seed;
  BoundCheck worst{"per_measurement", 0.0, 0.0, true, false};
  double worst_gap = -std::numeric_limits<double>::infinity();
  for (const auto& m : info::search_family(ab.restricted({g.a()}), cfg)) {
    double lambda = -std::numeric_limits<double>::infinity();
    for (const auto& br : branches) lambda = std::max(lambda, info::imax_for_measurement({{g.a()}, m}, br).value);
    const double lhs = induced_strategy_success(g, m);
    const double rhs = std::pow(2.0, lambda) * r.semi_certificate.dual;
    if (lhs - rhs > worst_gap) {
      worst_gap = lhs - rhs;
      worst = {"per_measurement", lhs, rhs, lhs <= rhs + kCheckSlack, false};
    }
    ++r.measurements_checked;
  }
  if (r.measurements_checked > 0) r.bound_checks.push_back(worst);
  return r;
}

AttackGame bell_counterexample() {
  const double s = 1.0 / std::sqrt(2.0);
  std::vector<core::ComplexVector> bell(4, core::ComplexVector::Zero(4));
  bell[0](0) = s, bell[0](3) = s;
  bell[1](0) = s, bell[1](3) = -s;
  bell[2](1) = s, bell[2](2) = s;
  bell[3](1) = s, bell[3](2) = -s;
  ComplexMatrix rho = ComplexMatrix::Zero(16, 16);
  std::vector<ComplexMatrix> accept;
  for (std::size_t z = 0; z < 4; ++z) {
    ComplexMatrix bz = ComplexMatrix::Zero(4, 4);
    bz(Eigen::Index(z), Eigen::Index(z)) = 1.0;
    rho += 0.25 * core::tensor(core::outer(bell[z]), bz);
    accept.push_back(bz);
  }
  const RegisterShape shape({{"A", 2}, {"A'", 2}, {"B", 4}});
  return AttackGame(DensityOperator(shape, rho), BinaryPovmFamily::from_accepting(accept));
}

AttackGame random_game(std::uint64_t seed, const GameDims& dims, std::size_t family_size) {
  if (family_size == 0) throw InputError("random game needs at least one family member");
  const RegisterShape shape({{"A", dims.a}, {"A'", dims.ap}, {"B", dims.b}});
  core::check_dimension(shape.total_dim(), "random game");
  auto rng = core::make_rng(seed, 0x6a4d);
  const auto psi = core::haar_vector(rng, shape.total_dim());
  std::vector<ComplexMatrix> accept;
  for (std::size_t j = 0; j < family_size; ++j) accept.push_back(core::random_effect(rng, dims.b));
  return AttackGame(DensityOperator(shape, core::outer(psi)), BinaryPovmFamily::from_accepting(accept));
}

core::Json family_to_json(const BinaryPovmFamily& f) {
  core::Json arr = core::Json::array();
  for (const auto& m : f.members()) {
    arr.push_back({{"label", m.label}, {"E0", core::matrix_to_json(m.e0)}, {"E1", core::matrix_to_json(m.e1)}});
  }
  return arr;
}

BinaryPovmFamily family_from_json(const core::Json& j) {
  if (!j.is_array()) throw InputError("POVM family must be a JSON array");
  std::vector<BinaryPovm> members;
  try {
    for (std::size_t i = 0; i < j.size(); ++i) {
      const auto& m = j[i];
      const ComplexMatrix e1 = core::matrix_from_json(m.at("E1"));
      const ComplexMatrix e0 = m.contains("E0") ? core::matrix_from_json(m.at("E0"))
                                                : ComplexMatrix(core::identity(std::size_t(e1.rows())) - e1);
      members.push_back({m.value("label", std::to_string(i)), e0, e1});
    }
  } catch (const core::Json::exception& e) {
    throw InputError(std::string("malformed POVM family: ") + e.what());
  }
  return BinaryPovmFamily(std::move(members));
}

core::Json game_to_json(const AttackGame& g) {
  return {{"state", core::state_to_json(g.state())},
          {"family", family_to_json(g.family())},
          {"registers", {g.a(), g.ap(), g.b()}}};
}

AttackGame game_from_json(const core::Json& state, const core::Json& family) {
  const auto rho = core::state_from_json(state);
  auto fam = family_from_json(family);
  const auto labels = rho.shape().labels();
  switch (labels.size()) {
    case 1: return AttackGame(rho, std::move(fam), labels[0] == "A" ? "A_" : "A", "A'", labels[0]);
    case 2: return AttackGame(rho, std::move(fam), labels[0], labels[0] == "A'" ? "A''" : "A'", labels[1]);
    case 3: return AttackGame(rho, std::move(fam), labels[0], labels[1], labels[2]);
    default: throw InputError("game state must have one to three registers");
  }
}

core::Json result_to_json(const GameResult& r) {
  core::Json checks = core::Json::array();
  for (const auto& c : r.bound_checks) {
    checks.push_back({{"name", c.name},
                      {"lhs", c.lhs},
                      {"rhs", c.rhs},
                      {"pass", c.pass},
                      {"expected_violation", c.expected_violation}});
  }
  return {{"p_na", r.p_na},
          {"best_j", r.best_j},
          {"p_semi", r.p_semi},
          {"p_adaptive", r.p_adaptive},
          {"h0_a", r.h0_a},
          {"semi_certificate", opt::certificate_to_json(r.semi_certificate)},
          {"adaptive_certificate", opt::certificate_to_json(r.adaptive_certificate)},
          {"measurements_checked", r.measurements_checked},
          {"bound_checks", checks},
          {"all_ok", r.all_ok()}};
}

}  // namespace qadapt::games
