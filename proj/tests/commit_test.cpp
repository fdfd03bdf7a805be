#include <gtest/gtest.h>

#include <cmath>

#include "qadapt/commit/commitment.hpp"
#include "qadapt/core/error.hpp"
#include "test_support.hpp"

using namespace qadapt;
using namespace qadapt::testing;
using commit::BindingMode;
using commit::ProjectiveCommitmentScheme;

namespace {

ComplexVector plus_minus(int sign) {
  ComplexVector v(2);
  v << 1, sign;
  return v / std::sqrt(2.0);
}

// bit 0 opens in the computational basis, bit 1 in the Hadamard basis
ProjectiveCommitmentScheme conjugate_scheme() {
  return ProjectiveCommitmentScheme({std::vector<commit::Opening>{{"z0", proj(2, 0)}, {"z1", proj(2, 1)}},
                                     std::vector<commit::Opening>{{"x0", core::outer(plus_minus(1))},
                                                                  {"x1", core::outer(plus_minus(-1))}}});
}

DensityOperator copy_state() {
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  m(0, 0) = 0.5;
  m(3, 3) = 0.5;
  return DensityOperator(ab_shape(2, 2), m);
}

DensityOperator epr() {
  ComplexVector v = ComplexVector::Zero(4);
  v(0) = v(3) = 1 / std::sqrt(2.0);
  return DensityOperator::pure(core::StateVector(ab_shape(2, 2), v));
}

// projective value by plain random sampling of qubit bases
double sampled_projective(const std::vector<ComplexMatrix>& ks, core::Rng& rng, int samples) {
  double best = 0;
  for (int s = 0; s < samples; ++s) {
    const ComplexMatrix u = core::haar_unitary(rng, 2);
    double v = 0;
    for (int k = 0; k < 2; ++k) {
      double m = 0;
      for (const auto& kk : ks) m = std::max(m, u.col(k).dot(kk * u.col(k)).real());
      v += m;
    }
    best = std::max(best, v);
  }
  return best;
}

ProjectiveCommitmentScheme random_scheme(core::Rng& rng, std::size_t d, std::size_t openings) {
  std::array<std::vector<commit::Opening>, 2> lists;
  for (int b = 0; b < 2; ++b) {
    for (std::size_t y = 0; y < openings; ++y) {
      lists[b].push_back({std::to_string(y), core::random_projector(rng, d, 1 + (y % (d - 1)))});
    }
  }
  return ProjectiveCommitmentScheme(lists);
}

}  // namespace

TEST(Scheme, Validation) {
  EXPECT_THROW(ProjectiveCommitmentScheme({std::vector<commit::Opening>{}, {{"a", proj(2, 0)}}}), InputError);
  EXPECT_THROW(ProjectiveCommitmentScheme({std::vector<commit::Opening>{{"a", 0.5 * proj(2, 0)}}, {{"b", proj(2, 0)}}}),
               InputError);
  EXPECT_THROW(ProjectiveCommitmentScheme({std::vector<commit::Opening>{{"a", proj(2, 0)}}, {{"b", proj(3, 0)}}}),
               InputError);
  const auto j = commit::scheme_to_json(conjugate_scheme());
  EXPECT_EQ(commit::scheme_to_json(commit::scheme_from_json(j)).dump(), j.dump());
  EXPECT_THROW(commit::scheme_from_json(core::Json::object()), InputError);
  EXPECT_THROW(commit::binding_mode_from_string("greedy"), InputError);
}

TEST(NaBinding, ComplementaryProjectorsSumToOne) {
  core::Rng rng = core::make_rng(1);
  const ComplexMatrix v = core::random_projector(rng, 3, 1);
  const ProjectiveCommitmentScheme s({std::vector<commit::Opening>{{"a", v}}, {{"b", core::identity(3) - v}}});
  for (int t = 0; t < 5; ++t) {
    const auto r = commit::na_binding(s, random_state(rng, RegisterShape::single("B", 3)));
    EXPECT_NEAR(r.p[0] + r.p[1], 1.0, 1e-12);
    EXPECT_NEAR(r.epsilon, 0.0, 1e-12);
  }
}

TEST(NaBinding, StateInsideOpening) {
  const auto r = commit::na_binding(conjugate_scheme(), DensityOperator(RegisterShape::single("B", 2), proj(2, 1)));
  EXPECT_NEAR(r.p[0], 1.0, 1e-12);
  EXPECT_EQ(r.best_opening[0], 1u);
  EXPECT_NEAR(r.p[1], 0.5, 1e-12);
  EXPECT_NEAR(r.epsilon, 0.5, 1e-12);
}

TEST(AdaptiveBinding, EmptyMemoryReducesToNonAdaptive) {
  core::Rng rng = core::make_rng(2);
  const auto s = random_scheme(rng, 3, 3);
  const auto rho_b = random_state(rng, RegisterShape::single("B", 3));
  const auto rho = DensityOperator::maximally_mixed(RegisterShape::single("A", 1)).tensor(rho_b);
  const auto na = commit::na_binding(s, rho_b);
  for (auto mode : {BindingMode::povm_relaxation, BindingMode::projective_bruteforce}) {
    const auto r = commit::adaptive_binding(s, rho, mode);
    EXPECT_NEAR(r.p[0], na.p[0], 1e-9);
    EXPECT_NEAR(r.p[1], na.p[1], 1e-9);
  }
}

TEST(AdaptiveBinding, CopyOfComputationalOpening) {
  const auto r = commit::adaptive_binding(conjugate_scheme(), copy_state(), BindingMode::projective_bruteforce);
  EXPECT_NEAR(r.p[0], 1.0, 1e-9);
  EXPECT_NEAR(r.p[1], 0.5, 1e-9);
  EXPECT_NEAR(r.epsilon, 0.5, 1e-9);
  const auto relax = commit::adaptive_binding(conjugate_scheme(), copy_state(), BindingMode::povm_relaxation);
  EXPECT_NEAR(relax.p[0], 1.0, 1e-8);
  EXPECT_NEAR(relax.p[1], 0.5, 1e-8);
}

TEST(AdaptiveBinding, EntangledMemoryOpensBoth) {
  const auto r = commit::adaptive_binding(conjugate_scheme(), epr(), BindingMode::projective_bruteforce);
  EXPECT_NEAR(r.p[0], 1.0, 1e-9);
  EXPECT_NEAR(r.p[1], 1.0, 1e-9);
  ASSERT_TRUE(r.cheat_state.has_value());
  EXPECT_NEAR(r.cheat_eps, 1.0, 1e-9);
}

TEST(AdaptiveBinding, RelaxationDominatesProjectiveSearch) {
  core::Rng rng = core::make_rng(3);
  for (int t = 0; t < 12; ++t) {
    const std::size_t da = 2 + t % 3;
    const auto s = random_scheme(rng, 2, 2 + t % 3);
    const auto rho = random_state(rng, ab_shape(da, 2), 1 + t % 3);
    commit::BindingOptions opts;
    opts.starts = 30;
    opts.seed = static_cast<std::uint64_t>(t);
    const auto brute = commit::adaptive_binding(s, rho, BindingMode::projective_bruteforce, opts);
    const auto relax = commit::adaptive_binding(s, rho, BindingMode::povm_relaxation, opts);
    for (int b = 0; b < 2; ++b) {
      EXPECT_LE(brute.p[b], relax.p[b] + 1e-9);
      EXPECT_LE(brute.p[b], brute.p_upper[b] + 1e-12);
    }
  }
}

TEST(AdaptiveBinding, QubitSearchBeatsSampling) {
  core::Rng rng = core::make_rng(4);
  for (int t = 0; t < 8; ++t) {
    const auto s = random_scheme(rng, 2, 3);
    const auto rho = random_state(rng, ab_shape(2, 2));
    const auto scores = commit::opening_scores(s, rho, 0);
    const auto best = commit::best_projective(scores);
    EXPECT_GE(best.value, sampled_projective(scores, rng, 3000) - 1e-12);
    EXPECT_LT(best.error_bound, 0.05);
  }
}

TEST(AdaptiveBinding, CapsAreEnforced) {
  core::Rng rng = core::make_rng(5);
  const auto s = random_scheme(rng, 2, 2);
  EXPECT_THROW(commit::adaptive_binding(s, random_state(rng, ab_shape(8, 2), 1), BindingMode::projective_bruteforce),
               InputError);
  const auto wide = random_scheme(rng, 2, 5);
  EXPECT_THROW(commit::adaptive_binding(wide, epr(), BindingMode::projective_bruteforce), InputError);
  EXPECT_NO_THROW(commit::adaptive_binding(wide, epr(), BindingMode::povm_relaxation));
  EXPECT_THROW(commit::adaptive_binding(s, random_state(rng, ab_shape(2, 3), 1), BindingMode::povm_relaxation), InputError);
}

TEST(OpeningProjectors, SingletonAndObjective) {
  core::Rng rng = core::make_rng(6);
  const ComplexMatrix v = core::random_projector(rng, 2, 1);
  const ProjectiveCommitmentScheme single({std::vector<commit::Opening>{{"a", v}}, {{"b", v}}});
  commit::OpeningStrategy st;
  st.f = {std::vector<ComplexMatrix>{core::identity(2)}, {core::identity(2)}};
  EXPECT_LT(max_diff(commit::opening_projectors(single, st)[0], core::tensor(core::identity(2), v)), 1e-12);

  for (int t = 0; t < 10; ++t) {
    const auto s = random_scheme(rng, 3, 2);
    commit::OpeningStrategy strat;
    for (int b = 0; b < 2; ++b) {
      const ComplexMatrix f0 = core::random_projector(rng, 2, 1);
      strat.f[b] = {f0, core::identity(2) - f0};
    }
    const auto p = commit::opening_projectors(s, strat);
    const auto rho = random_state(rng, ab_shape(2, 3));
    for (int b = 0; b < 2; ++b) {
      EXPECT_LT(max_diff(p[b] * p[b], p[b]), 1e-9);
      const auto ks = commit::opening_scores(s, rho, b);
      double objective = 0;
      for (std::size_t y = 0; y < ks.size(); ++y) objective += (strat.f[b][y] * ks[y]).trace().real();
      EXPECT_NEAR((p[b] * rho.matrix()).trace().real(), objective, 1e-12);
    }
    EXPECT_LE((p[0] + p[1]).cwiseProduct(rho.matrix().transpose()).sum().real(), core::spectral_norm(p[0] + p[1]) + 1e-9);
  }
  commit::OpeningStrategy bad;
  bad.f = {std::vector<ComplexMatrix>{0.5 * core::identity(2), 0.5 * core::identity(2)}, {core::identity(2), ComplexMatrix::Zero(2, 2)}};
  EXPECT_THROW(commit::opening_projectors(conjugate_scheme(), bad), InputError);
}

TEST(NormLemma, EdgeCases) {
  const ComplexMatrix x = proj(3, 0);
  const auto same = commit::norm_lemma_check(x, x);
  EXPECT_NEAR(same.lhs, 2.0, 1e-12);
  EXPECT_NEAR(same.rhs, 2.0, 1e-12);
  EXPECT_TRUE(same.pass);
  const auto orth = commit::norm_lemma_check(x, proj(3, 1));
  EXPECT_NEAR(orth.lhs, 1.0, 1e-12);
  EXPECT_NEAR(orth.rhs, 1.0, 1e-12);
  EXPECT_THROW(commit::norm_lemma_check(0.5 * x, x), InputError);
}

TEST(NormLemma, RandomPairs) {
  core::Rng rng = core::make_rng(7);
  for (int t = 0; t < 100; ++t) {
    const std::size_t d = 2 + t % 15;
    std::uniform_int_distribution<std::size_t> rank(1, d);
    const auto r = commit::norm_lemma_check(core::random_projector(rng, d, rank(rng)), core::random_projector(rng, d, rank(rng)));
    EXPECT_TRUE(r.pass) << t;
    // two nonzero projectors reach the bound exactly
    EXPECT_NEAR(r.lhs, r.rhs, 1e-9) << t;
  }
}

TEST(CheatState, EqualAndOrthogonal) {
  const ComplexMatrix p = proj(4, 0) + proj(4, 2);
  const auto same = commit::cheat_state(p, p);
  EXPECT_NEAR(same.eps, 1.0, 1e-12);
  ASSERT_TRUE(same.phi0.has_value());
  EXPECT_NEAR((p * *same.phi0).squaredNorm(), 1.0, 1e-12);
  const auto none = commit::cheat_state(proj(4, 0), proj(4, 1));
  EXPECT_EQ(none.eps, 0.0);
  EXPECT_FALSE(none.phi0.has_value());
}

TEST(CheatState, MatchesEigenOracleAndStaysStable) {
  core::Rng rng = core::make_rng(8);
  for (int t = 0; t < 30; ++t) {
    const std::size_t d = 4 + t % 5;
    const ComplexMatrix p0 = core::random_projector(rng, d, 1 + t % 3);
    const ComplexMatrix p1 = core::random_projector(rng, d, 1 + t % 2);
    const auto cs = commit::cheat_state(p0, p1);
    // ‖ℙ1ℙ0‖² is the top eigenvalue of ℙ0ℙ1ℙ0
    const double oracle = std::sqrt(std::max(0.0, core::lambda_max(core::hermitize(p0 * p1 * p0))));
    EXPECT_NEAR(cs.eps, oracle, 1e-9);
    ASSERT_TRUE(cs.phi0.has_value());
    const ComplexVector& phi = *cs.phi0;
    EXPECT_GE((p0 * phi).squaredNorm(), 1 - 1e-9);
    EXPECT_GE((p1 * phi).squaredNorm(), cs.eps * cs.eps - 1e-7);
    EXPECT_NEAR(core::spectral_norm(p0 + p1), 1 + cs.eps, 1e-9);
    // condition on acceptance of bit 1 and re-evaluate
    const ComplexVector phi1 = p1 * phi / (p1 * phi).norm();
    const double total = (p0 * phi1).squaredNorm() + (p1 * phi1).squaredNorm();
    EXPECT_LE(total, 1 + cs.eps + 1e-9);
    EXPECT_LE((p0 * phi).squaredNorm() + (p1 * phi).squaredNorm(), 1 + cs.eps + 1e-9);
  }
}

TEST(Storage, WorstCaseEpsNa) {
  EXPECT_NEAR(commit::worst_case_eps_na(conjugate_scheme()), 1 / std::sqrt(2.0), 1e-12);
  const ProjectiveCommitmentScheme perfect({std::vector<commit::Opening>{{"a", proj(2, 0)}}, {{"b", proj(2, 1)}}});
  EXPECT_NEAR(commit::worst_case_eps_na(perfect), 0.0, 1e-12);
}

TEST(Storage, NoMemoryIsAssertable) {
  const auto s = conjugate_scheme();
  const auto rep = commit::storage_reduction_check(s, 0, commit::worst_case_eps_na(s), 10, BindingMode::povm_relaxation);
  EXPECT_TRUE(rep.assertable);
  EXPECT_TRUE(rep.all_pass());
  EXPECT_EQ(rep.trials.size(), 10u);
}

TEST(Storage, PerfectlyBindingScheme) {
  const ProjectiveCommitmentScheme perfect({std::vector<commit::Opening>{{"a", proj(2, 0)}}, {{"b", proj(2, 1)}}});
  const auto rep = commit::storage_reduction_check(perfect, 1, 0.0, 5, BindingMode::projective_bruteforce);
  for (const auto& t : rep.trials) EXPECT_NEAR(t.alpha, 0.0, 1e-9);
  EXPECT_TRUE(rep.all_pass());
  EXPECT_TRUE(commit::storage_to_json(rep)["all_pass"].get<bool>());
}

TEST(Storage, ConjugateSchemeOneQubit) {
  const auto s = conjugate_scheme();
  commit::BindingOptions opts;
  opts.seed = 3;
  const auto rep = commit::storage_reduction_check(s, 1, commit::worst_case_eps_na(s), 6, BindingMode::projective_bruteforce, opts);
  EXPECT_TRUE(rep.assertable);
  EXPECT_TRUE(rep.all_pass());
  const auto r = commit::adaptive_binding(s, epr(), BindingMode::projective_bruteforce);
  const auto j = commit::report_to_json(r);
  EXPECT_EQ(j["mode"], "projective-bruteforce");
  EXPECT_TRUE(j.contains("cheat_state"));
}
