#include "qadapt/report/verify_all.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <set>

#include "qadapt/coding/hashing.hpp"
#include "qadapt/commit/commitment.hpp"
#include "qadapt/core/error.hpp"
#include "qadapt/games/attack_game.hpp"
#include "qadapt/info/imax.hpp"
#include "qadapt/opt/entropy.hpp"
#include "qadapt/protocol/bcjl.hpp"
#include "qadapt/protocol/onecc.hpp"
#include "qadapt/uc/protocols.hpp"

namespace qadapt::report {

namespace {

using core::ComplexMatrix;
using core::ComplexVector;
using core::DensityOperator;
using core::RegisterShape;
using coding::BitString;

constexpr double kInf = std::numeric_limits<double>::infinity();

// Tracks the instance closest to violating a relation.
class Worst {
 public:
  Worst(std::string name, int criterion, Relation rel, double slack, std::string source)
      : name_(std::move(name)), criterion_(criterion), rel_(rel), slack_(slack), source_(std::move(source)) {}

  void add(double lhs, double rhs, Json where = nullptr) {
    ++count_;
    const double m = margin(lhs, rel_, rhs);
    if (std::isnan(m) || m < best_) {
      best_ = std::isnan(m) ? -kInf : m;
      lhs_ = lhs;
      rhs_ = rhs;
      where_ = std::move(where);
    }
  }

  CheckRecord record(const Json& inputs) const {
    auto c = make_check(name_, criterion_, lhs_, rel_, rhs_, slack_, source_);
    if (count_ == 0) {
      c.pass = false;
      c.error = "no instances evaluated";
    }
    c.inputs_digest = digest(inputs);
    c.values = {{"instances", count_}, {"worst_instance", where_}};
    return c;
  }

 private:
  std::string name_;
  int criterion_;
  Relation rel_;
  double slack_;
  std::string source_;
  std::size_t count_ = 0;
  double best_ = kInf;
  double lhs_ = std::numeric_limits<double>::quiet_NaN();
  double rhs_ = std::numeric_limits<double>::quiet_NaN();
  Json where_;
};

CheckRecord single(const std::string& name, int criterion, double lhs, Relation rel, double rhs, double slack,
                   const std::string& source, const Json& inputs, Json values = Json::object()) {
  auto c = make_check(name, criterion, lhs, rel, rhs, slack, source);
  c.inputs_digest = digest(inputs);
  c.values = std::move(values);
  return c;
}

DensityOperator random_state(core::Rng& rng, const RegisterShape& shape, std::size_t rank) {
  return DensityOperator(shape, core::random_density(rng, shape.total_dim(), rank));
}

// Kraus operators of a random channel with m outputs of a Haar isometry.
std::vector<ComplexMatrix> random_kraus(core::Rng& rng, std::size_t d, std::size_t m) {
  const ComplexMatrix u = core::haar_unitary(rng, d * m);
  std::vector<ComplexMatrix> out;
  const auto di = Eigen::Index(d);
  for (std::size_t k = 0; k < m; ++k) out.push_back(u.block(Eigen::Index(k) * di, 0, di, di));
  return out;
}

std::vector<CheckRecord> theta_guessing(const VerifyConfig& cfg) {
  const Json inputs{{"criterion", 1}, {"tol", cfg.tol}};
  const auto qubit = RegisterShape::single("B", 2);
  const opt::CqState cq({0.5, 0.5}, {DensityOperator(qubit, core::outer(protocol::basis_ket(0, 0))),
                                     DensityOperator(qubit, core::outer(protocol::basis_ket(0, 1)))});
  opt::SolverOptions so;
  so.tol = cfg.tol;
  const auto cert = opt::guessing_probability(cq, so);
  const double expected = std::pow(std::cos(std::numbers::pi / 8), 2);
  std::vector<CheckRecord> out;
  out.push_back(single("c01.guessing_value", 1, cert.value(), Relation::eq, expected, 1e-9, "reference", inputs,
                       {{"primal", cert.primal}, {"dual", cert.dual}}));
  out.push_back(single("c01.certificate_gap", 1, cert.gap, Relation::le, 0.0, 1e-9, "property", inputs));
  out.push_back(single("c01.protocol_gamma", 1, protocol::theta_guessing_analysis(1, 0, 1).gamma, Relation::eq, expected,
                       1e-9, "reference", inputs));
  return out;
}

std::vector<CheckRecord> bell_counterexample(const VerifyConfig& cfg) {
  const Json inputs{{"criterion", 2}, {"budget", cfg.budget}, {"seed", cfg.seed}};
  const auto r = games::verify_main_theorem(games::bell_counterexample(), {cfg.tol, cfg.budget, cfg.seed});
  bool flagged = false;
  for (const auto& c : r.bound_checks) {
    if (c.name == "h0_bound_quantum_side") flagged = c.expected_violation && !c.pass;
  }
  std::vector<CheckRecord> out;
  out.push_back(single("c02.adaptive", 2, r.p_adaptive, Relation::eq, 1.0, 1e-7, "reference", inputs));
  out.push_back(single("c02.adaptive_gap", 2, r.adaptive_certificate.gap, Relation::le, 0.0, 1e-7, "property", inputs));
  out.push_back(single("c02.semi_adaptive", 2, r.p_semi, Relation::eq, 0.25, 1e-7, "reference", inputs));
  out.push_back(single("c02.non_adaptive", 2, r.p_na, Relation::eq, 0.25, 1e-7, "reference", inputs));
  out.push_back(single("c02.h0_a", 2, r.h0_a, Relation::eq, 1.0, 0.0, "reference", inputs));
  out.push_back(single("c02.violation_flagged", 2, flagged ? 1.0 : 0.0, Relation::eq, 1.0, 0.0, "reference", inputs));
  out.push_back(single("c02.other_checks_ok", 2, r.all_ok() ? 1.0 : 0.0, Relation::eq, 1.0, 0.0, "property", inputs));
  return out;
}

std::vector<CheckRecord> random_games(const VerifyConfig& cfg) {
  const Json inputs{{"criterion", 3}, {"games", cfg.games}, {"budget", cfg.budget}, {"seed", cfg.seed}};
  Worst chain("c03.adaptive_le_scaled_na", 3, Relation::le, 1e-6, "property");
  Worst order("c03.na_le_adaptive", 3, Relation::le, 1e-8, "property");
  Worst gap("c03.adaptive_gap", 3, Relation::le, 1e-7, "property");
  Worst ok("c03.all_bound_checks", 3, Relation::eq, 0.0, "property");
  for (std::size_t i = 0; i < cfg.games; ++i) {
    const std::uint64_t gseed = cfg.seed * 1000003 + i;
    const std::size_t da = 2 + 2 * (i % 2);
    const std::size_t db = 2 + 2 * ((i / 2) % 2);
    const auto g = games::random_game(gseed, {da, 1, db}, 1 + i % 4);
    const auto r = games::verify_main_theorem(g, {cfg.tol, cfg.budget, gseed});
    const Json where{{"game_seed", gseed}, {"dim_a", da}, {"dim_b", db}, {"family", 1 + i % 4}};
    chain.add(r.p_adaptive, std::pow(2.0, r.h0_a) * r.p_na, where);
    order.add(r.p_na, r.p_adaptive, where);
    gap.add(r.adaptive_certificate.gap, 0.0, where);
    ok.add(r.all_ok() ? 1.0 : 0.0, 1.0, where);
  }
  return {chain.record(inputs), order.record(inputs), gap.record(inputs), ok.record(inputs)};
}

std::vector<CheckRecord> domination(const VerifyConfig& cfg) {
  const Json inputs{{"criterion", 4},
                    {"states", cfg.states},
                    {"measurements", cfg.measurements_per_state},
                    {"channel_runs", cfg.channel_runs},
                    {"seed", cfg.seed}};
  auto rng = core::make_rng(cfg.seed, 0xac04);
  Worst holds_at("c04.dominates_at_value", 4, Relation::ge, 1e-9, "property");
  Worst fails_below("c04.fails_below_value", 4, Relation::le, 0.0, "property");
  Worst rank_bound("c04.value_le_h0", 4, Relation::le, 1e-8, "property");
  Worst channel("c04.channel_keeps_h0_bound", 4, Relation::le, 1e-8, "property");
  for (std::size_t s = 0; s < cfg.states; ++s) {
    const std::size_t da = 2 + s % 2;
    const RegisterShape shape({{"A", da}, {"B", 2}});
    const auto rho = random_state(rng, shape, 1 + s % 4);
    const double h0 = core::zero_entropy(rho.reduce({"A"}));
    const ComplexMatrix rho_b = rho.reduce({"B"}).matrix();
    info::SearchConfig sc;
    sc.budget = cfg.measurements_per_state;
    sc.seed = cfg.seed * 7919 + s;
    const auto family = info::search_family(RegisterShape::single("A", da), sc);
    for (std::size_t k = 0; k < family.size(); ++k) {
      const info::MeasurementDescriptor m{{"A"}, family[k]};
      const auto v = info::imax_for_measurement(m, rho);
      const Json where{{"state", s}, {"measurement", k}};
      if (v.unbounded) continue;
      const auto branches = info::measured_branches(m, rho);
      holds_at.add(info::domination_margin(branches, rho_b, v.sigma, v.value), 0.0, where);
      fails_below.add(info::domination_margin(branches, rho_b, v.sigma, v.value - 1e-4), -1e-12, where);
      rank_bound.add(v.value, h0, where);
    }
  }
  for (std::size_t c = 0; c < cfg.channel_runs; ++c) {
    const std::size_t da = 2 + c % 2;
    const auto rho = random_state(rng, RegisterShape({{"A", da}, {"B", 2}}), 1 + c % 3);
    info::SearchConfig sc;
    sc.budget = 20;
    sc.seed = cfg.seed * 7919 + 100000 + c;
    const auto r = info::local_channel_monotonicity_check(rho, random_kraus(rng, da, 2), random_kraus(rng, 2, 2), sc);
    channel.add(r.max_value, r.h0_before, {{"run", c}, {"h0_after", r.h0_after}});
  }
  return {holds_at.record(inputs), fails_below.record(inputs), rank_bound.record(inputs), channel.record(inputs)};
}

std::vector<CheckRecord> norm_lemma(const VerifyConfig& cfg) {
  const Json inputs{{"criterion", 5}, {"pairs", cfg.projector_pairs}, {"max_dim", cfg.max_projector_dim}, {"seed", cfg.seed}};
  core::check_dimension(cfg.max_projector_dim, "projector pairs");
  if (cfg.max_projector_dim < 2) throw InputError("projector pairs need max_projector_dim ≥ 2");
  auto rng = core::make_rng(cfg.seed, 0xac05);
  Worst w("c05.norm_lemma", 5, Relation::le, 1e-9, "property");
  for (std::size_t t = 0; t < cfg.projector_pairs; ++t) {
    const std::size_t d = 2 + t % (cfg.max_projector_dim - 1);
    std::uniform_int_distribution<std::size_t> rank(1, d);
    const auto r = commit::norm_lemma_check(core::random_projector(rng, d, rank(rng)), core::random_projector(rng, d, rank(rng)));
    w.add(r.lhs, r.rhs, {{"pair", t}, {"dim", d}});
  }
  return {w.record(inputs)};
}

std::vector<CheckRecord> cheat_states(const VerifyConfig& cfg) {
  const Json inputs{{"criterion", 6}, {"instances", cfg.cheat_instances}, {"seed", cfg.seed}};
  auto rng = core::make_rng(cfg.seed, 0xac06);
  Worst sum("c06.sum_is_one_plus_eps", 6, Relation::eq, 1e-9, "property");
  Worst p0("c06.p0_accepts", 6, Relation::ge, 1e-9, "property");
  Worst p1("c06.p1_at_least_eps_squared", 6, Relation::ge, 1e-7, "property");
  std::size_t made = 0;
  for (std::size_t t = 0; made < cfg.cheat_instances && t < 100 * cfg.cheat_instances; ++t) {
    const std::size_t d = 2 + t % 7;
    std::uniform_int_distribution<std::size_t> rank(1, d - 1);
    const ComplexMatrix a = core::random_projector(rng, d, rank(rng));
    const ComplexMatrix b = core::random_projector(rng, d, rank(rng));
    const auto cs = commit::cheat_state(a, b);
    if (cs.eps < 1e-3 || !cs.phi0) continue;
    ++made;
    const ComplexVector& phi = *cs.phi0;
    const Json where{{"instance", t}, {"dim", d}, {"eps", cs.eps}};
    sum.add(core::spectral_norm(a + b), 1 + cs.eps, where);
    p0.add((a * phi).squaredNorm(), 1.0, where);
    p1.add((b * phi).squaredNorm(), cs.eps * cs.eps, where);
  }
  return {sum.record(inputs), p0.record(inputs), p1.record(inputs)};
}

std::vector<CheckRecord> small_support(const VerifyConfig& cfg) {
  const Json inputs{{"criterion", 7}, {"states", cfg.sampled_states}, {"seed", cfg.seed}};
  auto rng = core::make_rng(cfg.seed, 0xac07);
  const auto code = coding::LinearCode::hamming74();
  Worst lemma("c07.wrong_opening_bound", 7, Relation::le, 1e-9, "property");
  Worst exact("c07.wrong_opening_bound_delta0", 7, Relation::le, 1e-9, "property");
  Worst chain("c07.chain_bound", 7, Relation::le, 1e-6, "property");
  for (std::size_t t = 0; t < cfg.sampled_states; ++t) {
    const BitString theta = uc::random_bits(rng, 7);
    const std::uint64_t sseed = cfg.seed * 1000003 + t;
    const auto st = protocol::sample_smallsup_state(theta, 1.0 / 7, 1 + t % 8, sseed);
    const BitString s = uc::random_bits(rng, 3);
    const auto l3 = protocol::opening_bound_check(st, code, s);
    const Json where{{"state_seed", sseed}, {"theta", theta.str()}, {"s", s.str()}};
    lemma.add(l3.worst_value, l3.bound, where);
    const auto st0 = protocol::sample_smallsup_state(theta, 0.0, 1 + t % 8, sseed);
    const auto l0 = protocol::opening_bound_check(st0, code, s);
    exact.add(l0.worst_value, l0.bound, where);
    const protocol::OneCcView view{theta, uc::random_bits(rng, 7), s, std::uint8_t(t % 2)};
    const auto ch = protocol::extractor_chain_check(st, code, view);
    chain.add(ch.adaptive.dual, ch.chain_bound, where);
  }
  return {lemma.record(inputs), exact.record(inputs), chain.record(inputs)};
}

std::vector<CheckRecord> bcjl_binding(const VerifyConfig& cfg) {
  std::vector<CheckRecord> out;
  protocol::BcjlNaConfig full;
  const auto a = protocol::bcjl_na_binding(full);
  const Json in_a{{"criterion", 8}, {"code", "rep3"}, {"delta", 0.0}};
  out.push_back(single("c08.rep3_full", 8, a.max_sum, Relation::le, a.bound, 1e-9, "property", in_a,
                       {{"pairs", a.pairs}, {"commitments", a.commitments}}));
  out.push_back(single("c08.rep3_overlap_failures", 8, double(a.overlap_failures), Relation::eq, 0.0, 0.0, "property", in_a,
                       {{"pairs", a.pairs}, {"max_overlap_ratio", a.max_overlap_ratio}}));
  protocol::BcjlNaConfig sampled;
  sampled.code = coding::LinearCode::hamming74();
  sampled.delta = 1.0 / 7;
  sampled.s = BitString::parse("101");
  sampled.hash = BitString::parse("1100101");
  sampled.sample_pairs = cfg.bcjl_pairs;
  sampled.seed = cfg.seed;
  const auto b = protocol::bcjl_na_binding(sampled);
  const Json in_b{{"criterion", 8}, {"code", "hamming74"}, {"delta", 1.0 / 7}, {"pairs", cfg.bcjl_pairs}, {"seed", cfg.seed}};
  out.push_back(single("c08.hamming_sampled", 8, b.max_sum, Relation::le, b.bound, 1e-9, "property", in_b,
                       {{"pairs", b.pairs}, {"restriction", b.restriction}}));
  out.push_back(single("c08.hamming_overlap_failures", 8, double(b.overlap_failures), Relation::eq, 0.0, 0.0, "property",
                       in_b, {{"pairs", b.pairs}, {"max_overlap_ratio", b.max_overlap_ratio}}));
  return out;
}

std::vector<CheckRecord> privacy_amplification(const VerifyConfig& cfg) {
  const Json inputs{{"criterion", 9}, {"states", cfg.cq_states}, {"seed", cfg.seed}};
  auto rng = core::make_rng(cfg.seed, 0xac09);
  Worst w("c09.distance_le_bound", 9, Relation::le, 1e-9, "property");
  std::gamma_distribution<double> gamma(1.0, 1.0);
  for (std::size_t t = 0; t < cfg.cq_states; ++t) {
    const std::size_t n = 1 + t % 4;
    std::vector<double> weights;
    std::vector<DensityOperator> cond;
    double total = 0;
    for (std::size_t x = 0; x < (std::size_t{1} << n); ++x) {
      weights.push_back(gamma(rng));
      total += weights.back();
      cond.push_back(random_state(rng, RegisterShape::single("E", 2), 1 + x % 2));
    }
    for (double& v : weights) v /= total;
    const auto r = coding::privacy_amp_check(opt::CqState(weights, cond), cfg.tol);
    w.add(r.distance, r.bound, {{"state", t}, {"n", n}, {"hmin", r.hmin}});
  }
  return {w.record(inputs)};
}

std::vector<CheckRecord> completeness_and_tails(const VerifyConfig& cfg) {
  std::vector<CheckRecord> out;
  for (auto [n, q] : {std::pair<std::size_t, double>{40, 0.1}, {64, 0.05}, {20, 0.1}}) {
    protocol::OneCcParams p;
    p.n_total = n;
    p.q = q;
    const auto st = protocol::simulate_commit_1cc(p, {}, cfg.seed, cfg.mc_runs);
    const Json in{{"criterion", 10}, {"N", n}, {"q", q}, {"runs", cfg.mc_runs}, {"seed", cfg.seed}};
    const std::string tag = "c10.N" + std::to_string(n);
    out.push_back(single(tag + ".check_aborts", 10, double(st.check_aborts), Relation::eq, 0.0, 0.0, "property", in));
    out.push_back(single(tag + ".tail_vs_binomial", 10, std::abs(st.tail_frequency - st.tail_exact), Relation::le,
                         3 * st.tail_sigma, 1e-12, "oracle", in,
                         {{"frequency", st.tail_frequency}, {"exact", st.tail_exact}}));
    out.push_back(single(tag + ".tail_below_hoeffding", 10, st.tail_frequency, Relation::le, st.hoeffding,
                         3 * st.tail_sigma, "property", in));
    if (st.reveals == 0) continue;
    out.push_back(single(tag + ".reveals_accepted", 10, double(st.reveal_accepts), Relation::eq, double(st.reveals), 0.0,
                         "property", in));
  }
  const auto eq = protocol::bcjl_equivalence_mc(0.2, 20, 5, 2 * cfg.mc_runs, cfg.seed);
  const Json in{{"criterion", 10}, {"delta", 0.2}, {"n", 20}, {"mismatches", 5}, {"runs", 2 * cfg.mc_runs}, {"seed", cfg.seed}};
  out.push_back(single("c10.sampling_agreement", 10, eq.frequency, Relation::le, eq.bound, 3 * eq.sigma, "property", in,
                       {{"exact", eq.exact}}));
  return out;
}

std::vector<CheckRecord> simulator_demos(const VerifyConfig& cfg) {
  std::vector<CheckRecord> out;
  const auto c = uc::ot_completeness(cfg.ot_n, cfg.ot_runs, cfg.seed, uc::BcRealization::ideal);
  const Json in_c{{"criterion", 11}, {"n", cfg.ot_n}, {"target", cfg.ot_runs}, {"seed", cfg.seed}};
  out.push_back(single("c11.honest_ot_correct", 11, double(c.correct), Relation::eq, double(c.non_aborting), 0.0, "property",
                       in_c, uc::completeness_to_json(c)));
  out.push_back(single("c11.honest_abort_rate", 11, std::abs(c.abort_frequency - c.abort_exact), Relation::le,
                       3 * c.abort_sigma, 1e-12, "oracle", in_c));
  for (const std::string script : {"honest", "fixed-state", "wrong-basis"}) {
    const auto d = uc::run_simulator_demo(uc::Corruption::sender, script, cfg.ot_runs, cfg.seed, {}, cfg.ot_n);
    const Json in{{"criterion", 11}, {"corruption", "sender"}, {"script", script}, {"runs", cfg.ot_runs}, {"seed", cfg.seed}};
    out.push_back(single("c11.sender_sim." + script, 11, d.outputs.max_sigmas, Relation::le, 3.0, 0.0, "property", in,
                         uc::demo_to_json(d)));
  }
  uc::OtOptions onecc;
  onecc.bc = uc::BcRealization::onecc;
  for (const std::string script : {"honest", "swap-partition"}) {
    const auto d = uc::run_simulator_demo(uc::Corruption::receiver, script, cfg.ot_runs, cfg.seed, onecc, cfg.ot_n);
    const Json in{{"criterion", 11}, {"corruption", "receiver"}, {"script", script}, {"runs", cfg.ot_runs}, {"seed", cfg.seed}};
    out.push_back(single("c11.receiver_sim." + script, 11, d.outputs.max_sigmas, Relation::le, 3.0, 0.0, "property", in,
                         uc::demo_to_json(d)));
    out.push_back(single("c11.receiver_extraction." + script, 11, double(d.extraction_matches), Relation::eq,
                         double(d.extraction_checks), 0.0, "property", in));
  }
  std::size_t matches = 0;
  for (const auto& row : uc::onecc_table()) matches += row.matches ? 1 : 0;
  out.push_back(single("c11.cut_and_choose_table", 11, double(matches), Relation::eq, 4.0, 0.0, "reference",
                       {{"criterion", 11}, {"table", "1cc"}}));
  return out;
}

commit::ProjectiveCommitmentScheme conjugate_scheme() {
  ComplexVector plus(2), minus(2);
  plus << 1, 1;
  minus << 1, -1;
  plus /= std::sqrt(2.0);
  minus /= std::sqrt(2.0);
  ComplexMatrix z0 = ComplexMatrix::Zero(2, 2), z1 = ComplexMatrix::Zero(2, 2);
  z0(0, 0) = 1;
  z1(1, 1) = 1;
  return commit::ProjectiveCommitmentScheme({std::vector<commit::Opening>{{"z0", z0}, {"z1", z1}},
                                             std::vector<commit::Opening>{{"x0", core::outer(plus)}, {"x1", core::outer(minus)}}});
}

std::vector<CheckRecord> storage_reduction(const VerifyConfig& cfg) {
  const Json inputs{{"criterion", 12}, {"schemes", cfg.storage_schemes}, {"trials", cfg.storage_trials}, {"seed", cfg.seed}};
  auto rng = core::make_rng(cfg.seed, 0xac12);
  std::vector<std::pair<std::string, commit::ProjectiveCommitmentScheme>> schemes;
  schemes.emplace_back("conjugate", conjugate_scheme());
  schemes.emplace_back("bcjl-rep3", protocol::bcjl_scheme(coding::LinearCode::repetition(3), 0.0, BitString::parse("00"),
                                                          BitString::parse("100"), 0, 2, 1));
  for (std::size_t i = 0; i < cfg.storage_schemes; ++i) {
    const std::size_t d = 2 + i % 2;
    std::array<std::vector<commit::Opening>, 2> lists;
    for (int b = 0; b < 2; ++b) {
      for (std::size_t y = 0; y < 1 + (i + std::size_t(b)) % 2; ++y) {
        lists[b].push_back({std::to_string(y), core::random_projector(rng, d, 1 + y % (d - 1))});
      }
    }
    schemes.emplace_back("random" + std::to_string(i), commit::ProjectiveCommitmentScheme(lists));
  }
  Worst w("c12.alpha_le_storage_bound", 12, Relation::le, 1e-9, "property");
  double net_slack = 0.0;
  for (std::size_t i = 0; i < schemes.size(); ++i) {
    const auto& [name, scheme] = schemes[i];
    const double eps = commit::worst_case_eps_na(scheme);
    commit::BindingOptions opts;
    opts.tol = cfg.tol;
    opts.seed = cfg.seed * 7919 + i;
    const auto rep = commit::storage_reduction_check(scheme, 1, eps, cfg.storage_trials,
                                                     commit::BindingMode::projective_bruteforce, opts);
    for (std::size_t t = 0; t < rep.trials.size(); ++t) {
      const auto& tr = rep.trials[t];
      net_slack = std::max(net_slack, tr.alpha_upper - tr.alpha);
      w.add(tr.alpha, tr.bound, {{"scheme", name}, {"trial", t}, {"eps_na", eps}});
    }
  }
  auto rec = w.record(inputs);
  rec.slack = 1e-9 + (std::isfinite(net_slack) ? net_slack : 0.0);
  rec.pass = rec.error.empty() && holds(rec.lhs, rec.relation, rec.rhs, rec.slack);
  rec.values["net_resolution"] = std::isfinite(net_slack) ? Json(net_slack) : Json();
  return {rec};
}

using CriterionFn = std::vector<CheckRecord> (*)(const VerifyConfig&);

CriterionFn criterion_fn(int id) {
  switch (id) {
    case 1: return theta_guessing;
    case 2: return bell_counterexample;
    case 3: return random_games;
    case 4: return domination;
    case 5: return norm_lemma;
    case 6: return cheat_states;
    case 7: return small_support;
    case 8: return bcjl_binding;
    case 9: return privacy_amplification;
    case 10: return completeness_and_tails;
    case 11: return simulator_demos;
    case 12: return storage_reduction;
    default: throw InputError("no acceptance criterion " + std::to_string(id));
  }
}

std::size_t size_field(const Json& j, const std::string& key, std::size_t fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number_unsigned()) throw InputError("config field '" + key + "' must be a non-negative integer");
  return j.at(key).get<std::size_t>();
}

}  // namespace

VerifyConfig VerifyConfig::from_environment() {
  VerifyConfig cfg;
  if (const char* b = std::getenv("QADAPT_BUDGET")) {
    try {
      cfg.budget = std::stoul(b);
    } catch (const std::exception&) {
      throw InputError("QADAPT_BUDGET must be a positive integer");
    }
  }
  return cfg;
}

Json VerifyConfig::to_json() const {
  return {{"seed", seed},
          {"tol", tol},
          {"budget", budget},
          {"games", games},
          {"states", states},
          {"measurements_per_state", measurements_per_state},
          {"channel_runs", channel_runs},
          {"projector_pairs", projector_pairs},
          {"max_projector_dim", max_projector_dim},
          {"cheat_instances", cheat_instances},
          {"sampled_states", sampled_states},
          {"bcjl_pairs", bcjl_pairs},
          {"cq_states", cq_states},
          {"mc_runs", mc_runs},
          {"ot_n", ot_n},
          {"ot_runs", ot_runs},
          {"storage_schemes", storage_schemes},
          {"storage_trials", storage_trials},
          {"only", only}};
}

VerifyConfig VerifyConfig::from_json(const Json& j, const VerifyConfig& base) {
  if (!j.is_object()) throw InputError("verify config must be a JSON object");
  const Json known = base.to_json();
  for (const auto& [key, value] : j.items()) {
    if (!known.contains(key)) throw InputError("unknown verify config field '" + key + "'");
  }
  VerifyConfig c = base;
  try {
    c.seed = j.value("seed", base.seed);
    c.tol = j.value("tol", base.tol);
    c.budget = size_field(j, "budget", base.budget);
    c.games = size_field(j, "games", base.games);
    c.states = size_field(j, "states", base.states);
    c.measurements_per_state = size_field(j, "measurements_per_state", base.measurements_per_state);
    c.channel_runs = size_field(j, "channel_runs", base.channel_runs);
    c.projector_pairs = size_field(j, "projector_pairs", base.projector_pairs);
    c.max_projector_dim = size_field(j, "max_projector_dim", base.max_projector_dim);
    c.cheat_instances = size_field(j, "cheat_instances", base.cheat_instances);
    c.sampled_states = size_field(j, "sampled_states", base.sampled_states);
    c.bcjl_pairs = size_field(j, "bcjl_pairs", base.bcjl_pairs);
    c.cq_states = size_field(j, "cq_states", base.cq_states);
    c.mc_runs = size_field(j, "mc_runs", base.mc_runs);
    c.ot_n = size_field(j, "ot_n", base.ot_n);
    c.ot_runs = size_field(j, "ot_runs", base.ot_runs);
    c.storage_schemes = size_field(j, "storage_schemes", base.storage_schemes);
    c.storage_trials = size_field(j, "storage_trials", base.storage_trials);
    c.only = j.value("only", base.only);
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed verify config: ") + e.what());
  }
  if (!(c.tol > 0)) throw InputError("verify config tol must be positive");
  return c;
}

VerifyConfig VerifyConfig::from_json(const Json& j) { return from_json(j, VerifyConfig{}); }

const std::vector<CriterionInfo>& criteria() {
  static const std::vector<CriterionInfo> list{
      {1, "theta-guessing constant", 1.0},
      {2, "entangled-side counterexample", 5.0},
      {3, "random bipartite games", 120.0},
      {4, "per-measurement domination", 60.0},
      {5, "projector norm lemma", 5.0},
      {6, "cheat-state constructor", 30.0},
      {7, "small-support opening bound", 120.0},
      {8, "BCJL non-adaptive binding", 120.0},
      {9, "privacy amplification", 60.0},
      {10, "protocol completeness and tails", 60.0},
      {11, "simulator demos", 60.0},
      {12, "bounded-storage reduction", 60.0}};
  return list;
}

std::vector<CheckRecord> run_criterion(int id, const VerifyConfig& cfg) {
  const auto fn = criterion_fn(id);
  const auto& info = criteria().at(std::size_t(id - 1));
  const auto start = std::chrono::steady_clock::now();
  std::vector<CheckRecord> out;
  try {
    out = fn(cfg);
  } catch (const InputError& e) {
    out.push_back(failed_check("c" + std::string(id < 10 ? "0" : "") + std::to_string(id) + ".input", id, e.what()));
  }
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  char name[32];
  std::snprintf(name, sizeof name, "c%02d.runtime", id);
  auto rt = make_check(name, id, elapsed, Relation::le, info.time_limit_s, 0.0, "runtime");
  rt.inputs_digest = digest(cfg.to_json());
  rt.runtime_s = elapsed;
  for (auto& c : out) {
    if (c.runtime_s == 0.0) c.runtime_s = elapsed;
  }
  out.push_back(rt);
  return out;
}

std::vector<CriterionOutcome> outcomes(const ExperimentReport& r) {
  std::vector<CriterionOutcome> out;
  for (const auto& info : criteria()) {
    CriterionOutcome o;
    o.info = info;
    bool seen = false;
    for (const auto& c : r.checks) {
      if (c.criterion != info.id) continue;
      seen = true;
      ++o.checks;
      if (c.source == "runtime") o.runtime_s = c.lhs;
      if (!c.pass) {
        if (o.failed == 0) o.first_failure = c.name + (c.error.empty() ? "" : ": " + c.error);
        ++o.failed;
      }
    }
    if (!seen) continue;
    o.pass = o.failed == 0;
    out.push_back(o);
  }
  return out;
}

ExperimentReport verify_all(const VerifyConfig& cfg, const Progress& progress) {
  ExperimentReport r;
  r.suite = "verify-all";
  r.seed = cfg.seed;
  r.config = cfg.to_json();
  const std::set<int> only(cfg.only.begin(), cfg.only.end());
  for (const auto& info : criteria()) {
    if (!only.empty() && !only.count(info.id)) continue;
    auto checks = run_criterion(info.id, cfg);
    r.checks.insert(r.checks.end(), checks.begin(), checks.end());
    if (progress) {
      ExperimentReport part;
      part.checks = checks;
      progress(outcomes(part).front());
    }
  }
  return r;
}

}  // namespace qadapt::report
