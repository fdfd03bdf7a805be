#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "qadapt/commit/commitment.hpp"
#include "qadapt/core/error.hpp"
#include "qadapt/protocol/bcjl.hpp"
#include "qadapt/protocol/onecc.hpp"
#include "test_support.hpp"

using namespace qadapt;
using namespace qadapt::testing;
using coding::BitString;
using coding::LinearCode;
namespace pr = qadapt::protocol;

namespace {

const double kGamma = std::pow(std::cos(std::numbers::pi / 8), 2);

BitString random_bits(core::Rng& rng, std::size_t n) {
  std::bernoulli_distribution coin(0.5);
  BitString b(n);
  for (std::size_t i = 0; i < n; ++i) b.set(i, coin(rng));
  return b;
}

}  // namespace

TEST(B92, Encoding) {
  const auto zero = pr::b92_encode(BitString::parse("000"));
  EXPECT_LT((zero.amplitudes() - ket(8, 0)).norm(), 1e-12);
  const auto diag = pr::b92_encode(BitString::parse("1"));
  EXPECT_NEAR(diag.amplitudes()(0).real(), 1 / std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(diag.amplitudes()(1).real(), 1 / std::sqrt(2.0), 1e-12);
  EXPECT_THROW(pr::b92_encode(BitString(13)), InputError);
}

TEST(B92, OverlapIsProductOverDisagreements) {
  core::Rng rng = core::make_rng(1);
  for (int t = 0; t < 20; ++t) {
    const auto a = random_bits(rng, 5), b = random_bits(rng, 5);
    const core::Complex ip = pr::b92_encode(a).amplitudes().dot(pr::b92_encode(b).amplitudes());
    EXPECT_NEAR(std::abs(ip), std::pow(std::cos(std::numbers::pi / 4), double(coding::hamming_distance(a, b))), 1e-12);
    const auto y = random_bits(rng, 5);
    EXPECT_NEAR(pr::b92_overlap(a, y, b), std::abs(pr::b92_encode(a).amplitudes().dot(pr::bb84_vector(y, b))), 1e-12);
  }
}

TEST(ThetaGuessing, Constant) {
  const auto g = pr::theta_guessing_analysis(10, 0.0, 1.0);
  EXPECT_NEAR(g.gamma, kGamma, 1e-9);
  EXPECT_NEAR(g.gamma, 0.853553, 1e-6);
  EXPECT_NEAR(g.hiding_bound, std::pow(2.0, -0.5 * 10 * std::log2(1 / kGamma)), 1e-12);
  const auto h = pr::theta_guessing_analysis(100, 0.01, 0.95);
  EXPECT_NEAR(h.hmin_lower, 100 * (std::log2(1 / kGamma) - 0.02), 1e-7);
  EXPECT_NEAR(h.hmin_after_syndrome, h.hmin_lower - 5, 1e-9);
}

TEST(ThetaGuessing, MultiQubitIsMultiplicative) {
  for (std::size_t n = 1; n <= 3; ++n) {
    const auto c = pr::multi_qubit_theta_guessing(n);
    EXPECT_NEAR(c.value(), std::pow(kGamma, double(n)), 1e-7) << n;
    EXPECT_LE(c.gap, 1e-7);
  }
  EXPECT_THROW(pr::multi_qubit_theta_guessing(4), InputError);
}

TEST(SmallSup, SingletonBallIsProduct) {
  const auto theta = BitString::parse("01101");
  const auto st = pr::sample_smallsup_state(theta, 0.0, 3, 4);
  ASSERT_EQ(st.support().size(), 1u);
  const ComplexVector expected = core::tensor(st.xi()[0], pr::b92_encode(theta).amplitudes());
  EXPECT_NEAR(std::abs(st.dense().amplitudes().dot(expected)), 1.0, 1e-12);
}

TEST(SmallSup, RankAndReproducibility) {
  core::Rng rng = core::make_rng(2);
  for (int t = 0; t < 20; ++t) {
    const auto theta = random_bits(rng, 7);
    const auto st = pr::sample_smallsup_state(theta, 1.0 / 7, 16, 100 + t);
    const double h0 = core::zero_entropy(core::DensityOperator(RegisterShape::single("A", 16), core::hermitize(st.rho_a())));
    EXPECT_LE(h0, std::log2(double(coding::ball_size(7, 1))) + 1e-12);
    const auto again = pr::sample_smallsup_state(theta, 1.0 / 7, 16, 100 + t);
    EXPECT_EQ(st.alpha(), again.alpha());
  }
  EXPECT_THROW(pr::sample_smallsup_state(BitString(11), 0.1, 2, 1), InputError);
  EXPECT_THROW(pr::sample_smallsup_state(BitString(5), 0.1, 17, 1), InputError);
}

TEST(SmallSup, ProjectionMatchesDenseState) {
  core::Rng rng = core::make_rng(3);
  for (int t = 0; t < 10; ++t) {
    const auto theta = random_bits(rng, 5);
    const auto st = pr::sample_smallsup_state(theta, 0.2, 4, t);
    const auto rho = DensityOperator::pure(st.dense());
    const auto tpp = random_bits(rng, 5);
    const ComplexMatrix lifted = core::embed(core::outer(pr::b92_encode(tpp).amplitudes()), rho.shape(), {"B"});
    EXPECT_NEAR(st.projected(tpp).squaredNorm(), (lifted * rho.matrix()).trace().real(), 1e-12);
  }
}

TEST(SmallSup, Validation) {
  const ComplexVector xi = ket(2, 0);
  EXPECT_THROW(pr::SmallSupState(BitString(3), 0.0, {BitString::parse("100")}, {1.0}, {xi}), InputError);
  EXPECT_THROW(pr::SmallSupState(BitString(3), 0.0, {BitString(3)}, {0.5}, {xi}), InputError);
  EXPECT_NO_THROW(pr::SmallSupState(BitString(3), 0.0, {BitString(3)}, {1.0}, {xi}));
}

TEST(OpeningBound, ExactStateValueIsClosedForm) {
  const auto code = LinearCode::hamming74();
  core::Rng rng = core::make_rng(4);
  for (int t = 0; t < 20; ++t) {
    const auto theta = random_bits(rng, 7);
    const auto st = pr::sample_smallsup_state(theta, 0.0, 1, t);
    const auto s = random_bits(rng, 3);
    const auto r = pr::opening_bound_check(st, code, s);
    std::size_t nearest = 99, runner_up = 99;
    for (const auto& c : code.coset(s)) {
      const std::size_t d = coding::hamming_distance(c, theta);
      if (c == r.theta_prime) {
        nearest = d;
      } else {
        runner_up = std::min(runner_up, d);
      }
    }
    EXPECT_NEAR(r.worst_value, std::pow(0.5, double(runner_up)), 1e-12);
    EXPECT_LE(nearest, runner_up);
    EXPECT_GE(double(runner_up), code.d() / 2.0);
    EXPECT_NEAR(r.bound, std::pow(2.0, -1.5), 1e-12);
    EXPECT_TRUE(r.pass);
  }
}

TEST(OpeningBound, HammingPropertyRun) {
  const auto code = LinearCode::hamming74();
  core::Rng rng = core::make_rng(5);
  for (int t = 0; t < 100; ++t) {
    const auto theta = random_bits(rng, 7);
    const auto st = pr::sample_smallsup_state(theta, 1.0 / 7, 1 + t % 8, 1000 + t);
    const auto r = pr::opening_bound_check(st, code, random_bits(rng, 3));
    EXPECT_TRUE(r.pass) << t;
    EXPECT_EQ(code.syndrome(r.theta_prime), code.syndrome(r.worst_theta));
  }
}

TEST(Extractor, HonestTranscripts) {
  const auto code = LinearCode::hamming74();
  core::Rng rng = core::make_rng(6);
  for (int t = 0; t < 40; ++t) {
    const auto theta = random_bits(rng, 7);
    const auto r = random_bits(rng, 7);
    const std::uint8_t b = t % 2;
    const pr::OneCcView view{theta, r, code.syndrome(theta), std::uint8_t(coding::inner_product(r, theta) ^ b)};
    EXPECT_EQ(pr::extractor(view, code), b);
  }
  EXPECT_THROW(pr::extractor({BitString(6), BitString(7), BitString(3), 0}, code), InputError);
}

TEST(Extractor, ChainOnSampledStates) {
  const auto code = LinearCode::hamming74();
  core::Rng rng = core::make_rng(7);
  for (int t = 0; t < 15; ++t) {
    const auto theta = random_bits(rng, 7);
    const auto st = pr::sample_smallsup_state(theta, 1.0 / 7, 4, 200 + t);
    const pr::OneCcView view{theta, random_bits(rng, 7), random_bits(rng, 3), std::uint8_t(t % 2)};
    const auto c = pr::extractor_chain_check(st, code, view);
    EXPECT_TRUE(c.pass) << t;
    EXPECT_LE(c.p_na, c.adaptive.dual + 1e-9);
    EXPECT_LE(c.h0_a, 2.0 + 1e-12);
  }
}

TEST(Binomial, UpperTail) {
  EXPECT_NEAR(pr::binomial_upper_tail(4, 0.5, 2.0), 5.0 / 16, 1e-12);
  EXPECT_NEAR(pr::binomial_upper_tail(40, 0.5, 40.0), 0.0, 1e-15);
  EXPECT_NEAR(pr::binomial_upper_tail(3, 0.2, -1), 1.0, 1e-12);
}

TEST(OneCcSimulation, HonestRunsNeverAbortInCheck) {
  for (auto [n, q] : {std::pair<std::size_t, double>{40, 0.1}, {64, 0.05}}) {
    pr::OneCcParams p;
    p.n_total = n;
    p.q = q;
    const auto st = pr::simulate_commit_1cc(p, {}, 11, 4000);
    EXPECT_EQ(st.check_aborts, 0u);
    EXPECT_TRUE(st.tail_pass) << st.tail_frequency << " vs " << st.tail_exact;
    EXPECT_LE(st.tail_exact, st.hoeffding);
    EXPECT_EQ(st.reveal_accepts, st.reveals);
  }
}

TEST(OneCcSimulation, ImpossibleTail) {
  pr::OneCcParams p;
  p.q = 0.5;
  p.n_total = 40;
  const auto st = pr::simulate_commit_1cc(p, {}, 12, 500);
  EXPECT_EQ(st.alice_aborts, 0u);
  EXPECT_EQ(st.tail_exact, 0.0);
}

TEST(OneCcSimulation, FlippedQubitCaughtAtRateQ) {
  pr::OneCcParams p;
  p.q = 0.2;
  const auto st = pr::simulate_commit_1cc(p, {{3}}, 13, 5000);
  EXPECT_TRUE(st.catch_pass) << st.catch_frequency;
  EXPECT_GT(st.check_aborts, 0u);
  EXPECT_EQ(st.reveals, 0u);
  EXPECT_THROW(pr::simulate_commit_1cc(p, {{40}}, 1, 1), InputError);
  p.r = 1.0;
  EXPECT_THROW(pr::simulate_commit_1cc(p, {}, 1, 1), InputError);
}

TEST(BcjlVerifier, Basics) {
  core::Rng rng = core::make_rng(14);
  for (int t = 0; t < 10; ++t) {
    const auto x = random_bits(rng, 5), theta = random_bits(rng, 5);
    const ComplexMatrix v0 = pr::bcjl_verifier(x, theta, 0.0);
    EXPECT_LT(max_diff(v0, core::outer(pr::bb84_vector(x, theta))), 1e-12);
    const ComplexMatrix v = pr::bcjl_verifier(x, theta, 0.2);
    EXPECT_TRUE(core::is_projector(v, 1e-9));
    EXPECT_EQ(core::numerical_rank(v), coding::ball_size(5, 1));
    const ComplexVector c = pr::bb84_vector(x, theta);
    EXPECT_NEAR(c.dot(v * c).real(), 1.0, 1e-12);
  }
}

TEST(BcjlVerifier, OverlapBoundOnRandomPairs) {
  core::Rng rng = core::make_rng(15);
  for (int t = 0; t < 30; ++t) {
    const double delta = (t % 3) * 0.2;
    const auto x = random_bits(rng, 5), th = random_bits(rng, 5), xp = random_bits(rng, 5), thp = random_bits(rng, 5);
    const ComplexMatrix v = pr::bcjl_verifier(x, th, delta), vp = pr::bcjl_verifier(xp, thp, delta);
    const double ball = double(coding::ball_size(5, coding::ball_radius(5, delta)));
    EXPECT_LE(core::spectral_norm(v * vp), pr::max_ball_overlap(x, th, xp, thp, delta) * ball + 1e-9);
  }
}

TEST(BcjlNaBinding, RepetitionFullEnumeration) {
  pr::BcjlNaConfig cfg;
  const auto r = pr::bcjl_na_binding(cfg);
  EXPECT_TRUE(r.full_enumeration);
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.overlap_failures, 0u);
  EXPECT_GT(r.pairs, 0u);
  // identical openings would reach 2; the hash filter keeps x ≠ x'
  EXPECT_LT(r.max_sum, 1.5);
  EXPECT_NEAR(r.bound, 1 + std::pow(2.0, -1.5), 1e-12);
  EXPECT_NEAR(r.max_sum, r.bound, 1e-9);
}

TEST(BcjlNaBinding, HammingSampled) {
  pr::BcjlNaConfig cfg;
  cfg.code = LinearCode::hamming74();
  cfg.delta = 1.0 / 7;
  cfg.s = BitString::parse("101");
  cfg.hash = BitString::parse("1100101");
  EXPECT_THROW(pr::bcjl_na_binding(cfg), InputError);
  cfg.sample_pairs = 200;
  cfg.seed = 3;
  const auto r = pr::bcjl_na_binding(cfg);
  EXPECT_FALSE(r.full_enumeration);
  EXPECT_FALSE(r.restriction.empty());
  EXPECT_EQ(r.pairs, 200u);
  EXPECT_TRUE(r.pass);
  EXPECT_TRUE(pr::bcjl_na_to_json(r)["pass"].get<bool>());
}

TEST(BcjlScheme, StorageReductionOnSmallInstance) {
  const auto code = LinearCode::repetition(3);
  const auto scheme = pr::bcjl_scheme(code, 0.0, BitString::parse("00"), BitString::parse("100"), 0, 2, 1);
  EXPECT_EQ(scheme.openings(0).size(), 2u);
  EXPECT_EQ(scheme.openings(1).size(), 2u);
  const double eps = commit::worst_case_eps_na(scheme);
  const auto rep = commit::storage_reduction_check(scheme, 1, eps, 5, commit::BindingMode::projective_bruteforce);
  EXPECT_TRUE(rep.assertable);
  EXPECT_TRUE(rep.all_pass());
}

TEST(BcjlEquivalence, MonteCarloAgainstExact) {
  const auto st = pr::bcjl_equivalence_mc(0.2, 20, 5, 20000, 1);
  EXPECT_NEAR(st.exact, 1.0 / 32, 1e-15);
  EXPECT_TRUE(st.pass) << st.frequency;
  const auto all = pr::bcjl_equivalence_mc(0.5, 12, 12, 20000, 2);
  EXPECT_LE(all.exact, std::pow(2.0, -6));
  EXPECT_TRUE(all.pass);
  EXPECT_THROW(pr::bcjl_equivalence_mc(0.2, 20, 4, 10, 1), InputError);
  EXPECT_THROW(pr::bcjl_equivalence_mc(0.2, 20, 0, 10, 1), InputError);
}

namespace {

// brute force over x, θ, θ̂, x̂ and r with Born-rule measurement probabilities
double hiding_oracle(const LinearCode& code) {
  const std::size_t n = code.n();
  const std::uint64_t size = std::uint64_t{1} << n;
  std::map<std::tuple<std::uint64_t, std::uint64_t, std::uint64_t, std::uint64_t, int>, double> p[2];
  for (int b = 0; b < 2; ++b) {
    for (std::uint64_t xi = 0; xi < size; ++xi) {
      const auto x = BitString::from_index(xi, n);
      for (std::uint64_t ti = 0; ti < size; ++ti) {
        const ComplexVector sent = pr::bb84_vector(x, BitString::from_index(ti, n));
        for (std::uint64_t hi = 0; hi < size; ++hi) {
          for (std::uint64_t xh = 0; xh < size; ++xh) {
            const double born = std::norm(pr::bb84_vector(BitString::from_index(xh, n), BitString::from_index(hi, n)).dot(sent));
            for (std::uint64_t ri = 0; ri < size; ++ri) {
              const int w = coding::inner_product(BitString::from_index(ri, n), x) ^ b;
              p[b][{hi, xh, ri, code.syndrome(x).to_index(), w}] += born / double(size * size * size * size);
            }
          }
        }
      }
    }
  }
  double d = 0;
  for (const auto& [k, v] : p[0]) d += 0.5 * std::abs(v - (p[1].count(k) ? p[1].at(k) : 0.0));
  for (const auto& [k, v] : p[1]) {
    if (!p[0].count(k)) d += 0.5 * v;
  }
  return d;
}

}  // namespace

TEST(BcjlHiding, MatchesEnumerationOracle) {
  for (const auto& code : {LinearCode::full_space(2), LinearCode::repetition(2), LinearCode::repetition(3)}) {
    const auto r = pr::bcjl_hiding_exact(code);
    EXPECT_NEAR(r.distance, hiding_oracle(code), 1e-12);
    EXPECT_TRUE(r.pass);
  }
}

TEST(BcjlHiding, BitIndependentMarginals) {
  const auto code = LinearCode::repetition(4);
  const auto p0 = pr::bcjl_view_distribution(code, 0), p1 = pr::bcjl_view_distribution(code, 1);
  // marginal over (x̂, r, s), summing w
  for (std::size_t i = 0; i < p0.size(); i += 2) EXPECT_NEAR(p0[i] + p0[i + 1], p1[i] + p1[i + 1], 1e-15);
}

TEST(BcjlHiding, DistanceShrinksAsRateGrows) {
  const std::vector<LinearCode> nested{
      LinearCode::repetition(4),
      LinearCode({BitString::parse("1111"), BitString::parse("1100")}),
      LinearCode({BitString::parse("1111"), BitString::parse("1100"), BitString::parse("1010")}),
      LinearCode::full_space(4)};
  double prev = 2.0;
  for (const auto& code : nested) {
    const auto r = pr::bcjl_hiding_exact(code);
    EXPECT_LE(r.distance, prev + 1e-12) << code.k();
    prev = r.distance;
  }
  EXPECT_TRUE(pr::bcjl_hiding_exact(LinearCode::full_space(4)).vacuous == (pr::bcjl_hiding_exact(LinearCode::full_space(4)).bound >= 1));
  EXPECT_THROW(pr::bcjl_hiding_exact(LinearCode::hamming74()), InputError);
}
