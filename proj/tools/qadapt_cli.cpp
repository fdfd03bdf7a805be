#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include "qadapt/coding/linear_code.hpp"
#include "qadapt/commit/commitment.hpp"
#include "qadapt/core/error.hpp"
#include "qadapt/core/json_io.hpp"
#include "qadapt/games/attack_game.hpp"
#include "qadapt/info/imax.hpp"
#include "qadapt/protocol/bcjl.hpp"
#include "qadapt/protocol/onecc.hpp"
#include "qadapt/report/verify_all.hpp"
#include "qadapt/uc/protocols.hpp"

using namespace qadapt;
using report::CheckRecord;
using report::ExperimentReport;
using report::Relation;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct Common {
  std::uint64_t seed = 0;
  double tol = 1e-9;
  std::size_t budget = 50;
  std::string out;
  std::string csv;
  bool verbose = false;
};

// Thrown for malformed input files; carries the expected layout.
struct SchemaError : InputError {
  SchemaError(const std::string& what, std::string hint) : InputError(what), hint(std::move(hint)) {}
  std::string hint;
};

const char* kStateSchema = R"({"shape": [["A", 2], ["B", 2]], "re": [[...]], "im": [[...]]})";
const char* kFamilySchema = R"([{"label": "j0", "E1": {"re": [[...]], "im": [[...]]}}, ...])";
const char* kSchemeSchema = R"({"dim": d, "openings": [[{"label": "y", "V": {"re": [[...]], "im": [[...]]}}, ...], [...]]})";
const char* kScenarioSchema =
    R"({"protocol": "1cc-table" | "2cc" | "ot" | "simulator", "inputs": {...}, "seed": s, "runs": r, ...})";
const char* kConfigSchema = R"({"games": 200, "states": 100, "mc_runs": 10000, "only": [1, 5], ...})";

template <class F>
auto with_schema(const std::string& path, const char* hint, F&& parse) {
  try {
    return parse(core::read_json_file(path));
  } catch (const InputError& e) {
    throw SchemaError(e.what(), hint);
  } catch (const core::Json::exception& e) {
    throw SchemaError("malformed '" + path + "': " + e.what(), hint);
  }
}

std::optional<std::size_t> env_size(const char* name) {
  const char* v = std::getenv(name);
  if (!v || !*v) return std::nullopt;
  char* end = nullptr;
  const unsigned long long x = std::strtoull(v, &end, 10);
  if (*end != '\0' || x == 0) throw InputError(std::string(name) + " must be a positive integer");
  return std::size_t(x);
}

CheckRecord check(const std::string& name, double lhs, Relation rel, double rhs, double slack, const std::string& source,
                  const core::Json& inputs, core::Json values = core::Json::object()) {
  auto c = report::make_check(name, 0, lhs, rel, rhs, slack, source);
  c.inputs_digest = report::digest(inputs);
  c.values = std::move(values);
  return c;
}

ExperimentReport new_report(const std::string& suite, const Common& o, core::Json config) {
  ExperimentReport r;
  r.suite = suite;
  r.seed = o.seed;
  config["tol"] = o.tol;
  r.config = std::move(config);
  return r;
}

// game

struct GameArgs {
  std::size_t random = 0;
  std::vector<std::size_t> dims{2, 1, 2};
  std::size_t family = 2;
  std::string state;
  std::string family_file;
  bool bell = false;
};

void add_game_checks(ExperimentReport& r, const std::string& prefix, const games::GameResult& g, const core::Json& in,
                     double tol) {
  for (const auto& b : g.bound_checks) {
    auto c = check(prefix + b.name, b.lhs, Relation::le, b.rhs, 0.0, "property", in,
                   {{"expected_violation", b.expected_violation}});
    c.pass = b.ok();
    r.checks.push_back(c);
  }
  r.checks.push_back(check(prefix + "adaptive_gap", g.adaptive_certificate.gap, Relation::le, 0.0, 100 * tol, "property",
                           in, games::result_to_json(g)));
}

ExperimentReport run_game(const GameArgs& a, const Common& o) {
  const games::VerifyOptions vo{o.tol, o.budget, o.seed};
  if (a.random > 0) {
    if (a.dims.size() != 3) throw InputError("--dims takes three sizes a,a',b");
    auto r = new_report("game", o, {{"random", a.random}, {"dims", a.dims}, {"family", a.family}, {"budget", o.budget}});
    for (std::size_t i = 0; i < a.random; ++i) {
      const std::uint64_t gseed = o.seed * 1000003 + i;
      const auto g = games::random_game(gseed, {a.dims[0], a.dims[1], a.dims[2]}, a.family);
      add_game_checks(r, "game" + std::to_string(i) + ".", games::verify_main_theorem(g, {o.tol, o.budget, gseed}),
                      {{"game_seed", gseed}, {"dims", a.dims}, {"family", a.family}}, o.tol);
    }
    return r;
  }
  if (a.bell) {
    auto r = new_report("game", o, {{"game", "bell"}, {"budget", o.budget}});
    add_game_checks(r, "bell.", games::verify_main_theorem(games::bell_counterexample(), vo), {{"game", "bell"}}, o.tol);
    return r;
  }
  if (a.state.empty() || a.family_file.empty()) throw InputError("game needs --random N, --bell, or --state and --family");
  const auto state = with_schema(a.state, kStateSchema, [](const core::Json& j) { return j; });
  const auto family = with_schema(a.family_file, kFamilySchema, [](const core::Json& j) { return j; });
  const auto game = [&] {
    try {
      return games::game_from_json(state, family);
    } catch (const InputError& e) {
      throw SchemaError(e.what(), std::string("state ") + kStateSchema + "\nfamily " + kFamilySchema);
    }
  }();
  const core::Json in{{"state", state}, {"family", family}};
  auto r = new_report("game", o, {{"state", a.state}, {"family", a.family_file}, {"budget", o.budget}});
  add_game_checks(r, "", games::verify_main_theorem(game, vo), in, o.tol);
  return r;
}

// binding

struct BindingArgs {
  std::string scheme;
  std::string state;
  std::string mode = "projective-bruteforce";
  std::size_t storage_q = 1;
  std::size_t trials = 0;
};

ExperimentReport run_binding(const BindingArgs& a, const Common& o) {
  const auto sj = with_schema(a.scheme, kSchemeSchema, [](const core::Json& j) { return j; });
  const auto scheme = [&] {
    try {
      return commit::scheme_from_json(sj);
    } catch (const InputError& e) {
      throw SchemaError(e.what(), kSchemeSchema);
    }
  }();
  commit::BindingOptions bo;
  bo.tol = o.tol;
  bo.seed = o.seed;
  const auto mode = commit::binding_mode_from_string(a.mode);
  const double eps = commit::worst_case_eps_na(scheme);
  auto r = new_report("binding", o, {{"scheme", a.scheme}, {"state", a.state}, {"mode", a.mode}, {"q", a.storage_q},
                                     {"trials", a.trials}});
  const core::Json in{{"scheme", sj}};
  r.checks.push_back(check("eps_na", eps, Relation::ge, 0.0, 0.0, "property", in, {{"eps_na", eps}}));
  if (!a.state.empty()) {
    const auto rho = with_schema(a.state, kStateSchema, [](const core::Json& j) { return core::state_from_json(j); });
    const auto labels = rho.shape().labels();
    if (labels.size() != 2) throw SchemaError("binding state must have registers (A, B)", kStateSchema);
    const auto na = commit::na_binding(scheme, rho.reduce({labels[1]}));
    r.checks.push_back(check("na.sum_le_one_plus_eps", na.p[0] + na.p[1], Relation::le, 1 + eps, o.tol, "property", in,
                             commit::report_to_json(na)));
    const auto ad = commit::adaptive_binding(scheme, rho, mode, bo);
    for (int b = 0; b < 2; ++b) {
      r.checks.push_back(check("adaptive.p" + std::to_string(b) + "_certified", ad.p[b], Relation::le, ad.p_upper[b],
                               o.tol, "property", in, b == 0 ? commit::report_to_json(ad) : core::Json::object()));
    }
  }
  if (a.trials > 0) {
    const auto st = commit::storage_reduction_check(scheme, a.storage_q, eps, a.trials, mode, bo);
    for (std::size_t t = 0; t < st.trials.size(); ++t) {
      const auto& tr = st.trials[t];
      auto c = check("storage.trial" + std::to_string(t), tr.alpha, Relation::le, tr.bound,
                     o.tol + (tr.alpha_upper - tr.alpha), "property", in);
      if (!st.assertable) c.pass = true;
      c.values = {{"alpha_upper", tr.alpha_upper}, {"assertable", st.assertable}};
      r.checks.push_back(c);
    }
  }
  return r;
}

// onecc

struct OneCcArgs {
  std::size_t n = 40;
  double q = 0.1;
  std::size_t runs = 10000;
  std::vector<std::size_t> flips;
};

ExperimentReport run_onecc(const OneCcArgs& a, const Common& o) {
  protocol::OneCcParams p;
  p.n_total = a.n;
  p.q = a.q;
  const auto st = protocol::simulate_commit_1cc(p, {a.flips}, o.seed, a.runs);
  const core::Json in{{"N", a.n}, {"q", a.q}, {"runs", a.runs}, {"flips", a.flips}, {"seed", o.seed}};
  auto r = new_report("onecc", o, in);
  const auto values = protocol::onecc_stats_to_json(st);
  r.checks.push_back(check("tail_vs_binomial", std::abs(st.tail_frequency - st.tail_exact), Relation::le,
                           3 * st.tail_sigma, 1e-12, "oracle", in, values));
  r.checks.push_back(check("tail_below_hoeffding", st.tail_frequency, Relation::le, st.hoeffding, 3 * st.tail_sigma,
                           "property", in));
  if (a.flips.empty()) {
    r.checks.push_back(check("honest_check_aborts", double(st.check_aborts), Relation::eq, 0.0, 0.0, "property", in));
    if (st.reveals > 0) {
      r.checks.push_back(check("honest_reveals_accepted", double(st.reveal_accepts), Relation::eq, double(st.reveals), 0.0,
                               "property", in));
    }
  } else {
    r.checks.push_back(check("flip_catch_rate", std::abs(st.catch_frequency - a.q), Relation::le, 3 * st.catch_sigma,
                             1e-12, "oracle", in));
  }
  return r;
}

// bcjl

struct BcjlArgs {
  std::size_t n = 0;
  std::string code = "rep3";
  std::string code_file;
  double delta = 0.0;
  std::string s;
  std::string hash;
  std::size_t pairs = 0;
  bool all = false;
};

ExperimentReport run_bcjl(const BcjlArgs& a, const Common& o) {
  protocol::BcjlNaConfig cfg;
  cfg.code = a.code_file.empty()
                 ? coding::named_code(a.code)
                 : with_schema(a.code_file, R"({"n": n, "generator": ["1011", ...]})",
                               [](const core::Json& j) { return coding::code_from_json(j); });
  if (a.n != 0 && a.n != cfg.code.n()) {
    throw InputError("--n " + std::to_string(a.n) + " does not match the code length " + std::to_string(cfg.code.n()));
  }
  cfg.delta = a.delta;
  std::string s = a.s, hash = a.hash;
  std::size_t pairs = a.pairs;
  if (cfg.code.n() > 4 && !a.all) {
    // one seeded commitment unless told otherwise
    auto rng = core::make_rng(o.seed, 0xb0);
    if (s.empty()) s = uc::random_bits(rng, cfg.code.n() - cfg.code.k()).str();
    while (hash.empty() || hash.find('1') == std::string::npos) hash = uc::random_bits(rng, cfg.code.n()).str();
    if (pairs == 0) pairs = 1000;
  }
  if (!s.empty()) cfg.s = coding::BitString::parse(s);
  if (!hash.empty()) cfg.hash = coding::BitString::parse(hash);
  cfg.sample_pairs = pairs;
  cfg.seed = o.seed;
  const auto rep = protocol::bcjl_na_binding(cfg);
  const core::Json in{{"code", coding::code_to_json(cfg.code)}, {"delta", a.delta}, {"s", s}, {"hash", hash},
                      {"pairs", pairs}, {"seed", o.seed}};
  auto r = new_report("bcjl", o, in);
  r.checks.push_back(check("max_sum_le_bound", rep.max_sum, Relation::le, rep.bound, o.tol, "property", in,
                           protocol::bcjl_na_to_json(rep)));
  r.checks.push_back(check("overlap_failures", double(rep.overlap_failures), Relation::eq, 0.0, 0.0, "property", in));
  return r;
}

// uc

struct UcArgs {
  std::string scenario;
  std::string transcripts;
};

ExperimentReport run_uc(const UcArgs& a, const Common& o) {
  auto sc = with_schema(a.scenario, kScenarioSchema, [](const core::Json& j) { return j; });
  if (!sc.is_object()) throw SchemaError("scenario must be a JSON object", kScenarioSchema);
  if (!sc.contains("seed")) sc["seed"] = o.seed;
  const auto res = [&] {
    try {
      return uc::run_scenario(sc);
    } catch (const core::Json::exception& e) {
      throw SchemaError(std::string("malformed scenario: ") + e.what(), kScenarioSchema);
    }
  }();
  if (!a.transcripts.empty()) {
    std::ofstream out(a.transcripts);
    if (!out) throw InputError("cannot write '" + a.transcripts + "'");
    for (const auto& t : res.transcripts) out << t.to_jsonl();
  }
  auto r = new_report("uc", o, {{"scenario", sc}});
  auto c = check("scenario_pass", res.pass ? 1.0 : 0.0, Relation::eq, 1.0, 0.0, "property", sc, res.summary);
  r.checks.push_back(c);
  return r;
}

// info

struct InfoArgs {
  std::string state;
  std::vector<std::string> a_labels;
};

ExperimentReport run_info(const InfoArgs& a, const Common& o) {
  const auto sj = with_schema(a.state, kStateSchema, [](const core::Json& j) { return j; });
  const auto rho = [&] {
    try {
      return core::state_from_json(sj);
    } catch (const InputError& e) {
      throw SchemaError(e.what(), kStateSchema);
    }
  }();
  auto labels = a.a_labels;
  if (labels.empty()) labels = {rho.shape().labels().front()};
  info::SearchConfig sc;
  sc.budget = o.budget;
  sc.seed = o.seed;
  const auto est = info::imax_acc_bounds(rho, labels, sc);
  const core::Json in{{"state", sj}, {"a", labels}, {"budget", o.budget}, {"seed", o.seed}};
  auto r = new_report("info", o, {{"state", a.state}, {"a", labels}, {"budget", o.budget}});
  r.checks.push_back(check("lower_le_h0", est.lower, Relation::le, est.upper, 1e-8, "property", in,
                           info::imax_estimate_to_json(est)));
  return r;
}

// verify-all

struct VerifyArgs {
  std::string config;
  std::vector<int> only;
  bool budget_set = false;
};

ExperimentReport run_verify(const VerifyArgs& a, const Common& o) {
  auto cfg = report::VerifyConfig::from_environment();
  if (!a.config.empty()) {
    cfg = with_schema(a.config, kConfigSchema, [&](const core::Json& j) { return report::VerifyConfig::from_json(j, cfg); });
  }
  cfg.seed = o.seed;
  cfg.tol = o.tol;
  if (a.budget_set) cfg.budget = o.budget;
  if (!a.only.empty()) cfg.only = a.only;
  for (int id : cfg.only) {
    if (id < 1 || id > int(report::criteria().size())) throw InputError("--only takes criteria 1 to 12");
  }
  return report::verify_all(cfg, [](const report::CriterionOutcome& c) {
    std::printf("%s criterion %2d %-34s %8.2fs\n", c.pass ? "PASS" : "FAIL", c.info.id, c.info.title.c_str(), c.runtime_s);
    if (!c.pass) std::printf("       %s\n", c.first_failure.c_str());
    std::fflush(stdout);
  });
}

void print_summary(const ExperimentReport& r, bool verbose) {
  std::size_t failed = 0;
  for (const auto& c : r.checks) {
    if (!c.pass) ++failed;
    if (verbose || !c.pass) {
      std::printf("%s %-40s %.10g %s %.10g (slack %.1e)%s%s\n", c.pass ? "pass" : "FAIL", c.name.c_str(), c.lhs,
                  report::to_string(c.relation).c_str(), c.rhs, c.slack, c.error.empty() ? "" : "  ",
                  c.error.c_str());
    }
  }
  std::printf("%s: %zu checks, %zu failed, seed %llu\n", r.suite.c_str(), r.checks.size(), failed,
              static_cast<unsigned long long>(r.seed));
}

void add_common(CLI::App* sub, Common& o, bool* budget_set = nullptr) {
  sub->add_option("--seed", o.seed, "top-level seed");
  sub->add_option("--tol", o.tol, "solver and comparison tolerance")->check(CLI::PositiveNumber);
  auto* b = sub->add_option("--budget", o.budget, "search budget (default QADAPT_BUDGET or 50)")->check(CLI::PositiveNumber);
  if (budget_set) b->each([budget_set](const std::string&) { *budget_set = true; });
  sub->add_option("--out", o.out, "write the full JSON report here");
  sub->add_option("--csv", o.csv, "write per-check rows as CSV here");
  sub->add_flag("-v,--verbose", o.verbose, "print every check");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qadapt: adaptive-attack bounds and protocol checks"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(report::kToolVersion));

  Common common;
  try {
    if (auto cap = env_size("QADAPT_DIM_CAP")) core::set_dimension_cap(*cap);
    if (auto b = env_size("QADAPT_BUDGET")) common.budget = *b;
  } catch (const InputError& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return kExitUsage;
  }

  std::function<ExperimentReport()> run;

  GameArgs ga;
  auto* game = app.add_subcommand("game", "success probabilities and bounds for attack games");
  game->add_option("--random", ga.random, "number of random games");
  game->add_option("--dims", ga.dims, "register sizes a a' b for random games")->expected(3)->delimiter(',');
  game->add_option("--family", ga.family, "family size for random games");
  game->add_option("--state", ga.state, "state JSON on (A, A', B)");
  game->add_option("--povms", ga.family_file, "binary POVM family JSON");
  game->add_flag("--bell", ga.bell, "the Bell-state counterexample");
  add_common(game, common);
  game->callback([&] { run = [&] { return run_game(ga, common); }; });

  BindingArgs ba;
  auto* binding = app.add_subcommand("binding", "non-adaptive, adaptive and storage-bounded binding");
  binding->add_option("--scheme", ba.scheme, "commitment scheme JSON")->required();
  binding->add_option("--state", ba.state, "attack state JSON on (A, B)");
  binding->add_option("--mode", ba.mode, "non-adaptive | povm-relaxation | projective-bruteforce");
  binding->add_option("--storage-q", ba.storage_q, "stored qubits for the storage check");
  binding->add_option("--trials", ba.trials, "random states for the storage check (0 skips it)");
  add_common(binding, common);
  binding->callback([&] { run = [&] { return run_binding(ba, common); }; });

  OneCcArgs oa;
  auto* onecc = app.add_subcommand("onecc", "Monte Carlo runs of the cut-and-choose commitment");
  onecc->add_option("--n", oa.n, "number of qubits N");
  onecc->add_option("--q", oa.q, "check probability")->check(CLI::Range(0.0, 1.0));
  onecc->add_option("--runs", oa.runs, "simulated runs")->check(CLI::PositiveNumber);
  onecc->add_option("--flips", oa.flips, "positions the committer flips")->delimiter(',');
  add_common(onecc, common);
  onecc->callback([&] { run = [&] { return run_onecc(oa, common); }; });

  BcjlArgs bca;
  auto* bcjl = app.add_subcommand("bcjl", "non-adaptive binding of the BCJL commitment");
  bcjl->add_option("--n", bca.n, "code length (checked against --code)");
  bcjl->add_option("--code", bca.code, "hamming74, rep3, rep5, full4, ...");
  bcjl->add_option("--code-file", bca.code_file, "code JSON");
  bcjl->add_option("--delta", bca.delta, "basis-disagreement fraction")->check(CLI::Range(0.0, 1.0));
  bcjl->add_option("--s", bca.s, "syndrome bits");
  bcjl->add_option("--hash", bca.hash, "hash vector r");
  bcjl->add_option("--pairs", bca.pairs, "sample this many opening pairs per commitment");
  bcjl->add_flag("--all", bca.all, "every syndrome and hash even for codes longer than 4");
  add_common(bcjl, common);
  bcjl->callback([&] { run = [&] { return run_bcjl(bca, common); }; });

  UcArgs ua;
  auto* ucmd = app.add_subcommand("uc", "run a composed-protocol scenario");
  ucmd->add_option("scenario", ua.scenario, "scenario JSON")->required();
  ucmd->add_option("--transcripts", ua.transcripts, "write JSONL transcripts here");
  add_common(ucmd, common);
  ucmd->callback([&] { run = [&] { return run_uc(ua, common); }; });

  InfoArgs ia;
  auto* info = app.add_subcommand("info", "accessible max-information bounds of a state");
  info->add_option("--state", ia.state, "state JSON")->required();
  info->add_option("--a", ia.a_labels, "measured registers (default: the first)")->delimiter(',');
  add_common(info, common);
  info->callback([&] { run = [&] { return run_info(ia, common); }; });

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify-all", "run the full acceptance battery");
  verify->add_option("--config", va.config, "verify config JSON");
  verify->add_option("--only", va.only, "criteria to run")->delimiter(',');
  add_common(verify, common, &va.budget_set);
  verify->callback([&] { run = [&] { return run_verify(va, common); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    const auto r = run();
    if (!common.out.empty()) {
      std::ofstream out(common.out);
      if (!out) throw InputError("cannot write '" + common.out + "'");
      out << report::serialize(r);
    }
    if (!common.csv.empty()) {
      std::ofstream out(common.csv);
      if (!out) throw InputError("cannot write '" + common.csv + "'");
      report::write_csv(r, out);
    }
    print_summary(r, common.verbose);
    return r.all_pass() ? kExitPass : kExitFail;
  } catch (const SchemaError& e) {
    std::fprintf(stderr, "usage error: %s\nexpected: %s\n", e.what(), e.hint.c_str());
    return kExitUsage;
  } catch (const InputError& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return kExitUsage;
  }
}
