#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "qadapt/coding/hashing.hpp"
#include "qadapt/coding/linear_code.hpp"
#include "qadapt/core/error.hpp"
#include "test_support.hpp"

using namespace qadapt;
using namespace qadapt::testing;
using coding::BitString;
using coding::LinearCode;

namespace {

BitString bits(const char* s) { return BitString::parse(s); }

// d by scanning every string of {0,1}^n for membership (zero syndrome)
std::size_t distance_by_membership(const LinearCode& code) {
  std::size_t best = code.n();
  for (std::uint64_t v = 1; v < (std::uint64_t{1} << code.n()); ++v) {
    const auto x = BitString::from_index(v, code.n());
    if (code.syndrome(x).weight() == 0) best = std::min(best, x.weight());
  }
  return best;
}

// Full density matrix of Y ⊗ G ⊗ E (Y the hash bit, G the seed r).
ComplexMatrix hashed_state(const opt::CqState& cq, std::size_t n, bool ideal) {
  const std::size_t nr = std::size_t{1} << n;
  const auto de = cq.side_shape().total_dim();
  const auto dim = static_cast<Eigen::Index>(2 * nr * de);
  ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
  for (std::size_t y = 0; y < 2; ++y) {
    for (std::size_t r = 0; r < nr; ++r) {
      const auto off = static_cast<Eigen::Index>((y * nr + r) * de);
      ComplexMatrix block = ComplexMatrix::Zero(de, de);
      for (std::size_t x = 0; x < cq.size(); ++x) {
        const auto hx = coding::inner_product(BitString::from_index(r, n), BitString::from_index(x, n));
        if (ideal || hx == y) block += cq.weights()[x] * cq.conditionals()[x].matrix();
      }
      if (ideal) block *= 0.5;
      m.block(off, off, de, de) = block / double(nr);
    }
  }
  return m;
}

opt::CqState random_cq(core::Rng& rng, std::size_t n, std::size_t de) {
  std::vector<double> w;
  std::vector<DensityOperator> cond;
  std::gamma_distribution<double> g(1.0, 1.0);
  double total = 0.0;
  for (std::size_t x = 0; x < (std::size_t{1} << n); ++x) {
    w.push_back(g(rng));
    total += w.back();
    cond.push_back(random_state(rng, RegisterShape::single("E", de), 1 + x % de));
  }
  for (double& v : w) v /= total;
  return opt::CqState(w, cond);
}

}  // namespace

TEST(BitString, ParseIndexAndOrder) {
  const auto b = bits("0110");
  EXPECT_EQ(b.to_index(), 6u);
  EXPECT_EQ(BitString::from_index(6, 4), b);
  EXPECT_EQ(b.str(), "0110");
  EXPECT_LT(bits("0011"), bits("0100"));
  EXPECT_EQ(coding::hamming_distance(bits("0110"), bits("1100")), 2u);
  EXPECT_THROW(BitString::parse("01x"), InputError);
  EXPECT_THROW(bits("01") ^ bits("011"), InputError);
}

TEST(BinaryEntropy, Values) {
  EXPECT_DOUBLE_EQ(coding::binary_entropy(0.5), 1.0);
  EXPECT_EQ(coding::binary_entropy(0.0), 0.0);
  EXPECT_EQ(coding::binary_entropy(1.0), 0.0);
  const long double d = 0.11L;
  const long double ref = -(d * std::log2l(d) + (1 - d) * std::log2l(1 - d));
  EXPECT_NEAR(coding::binary_entropy(0.11), static_cast<double>(ref), 1e-14);
  EXPECT_NEAR(coding::binary_entropy(0.11), 0.49999, 1e-4);
  EXPECT_THROW(coding::binary_entropy(-0.1), InputError);
  EXPECT_THROW(coding::binary_entropy(1.5), InputError);
}

TEST(HammingBall, SizeBoundAndEnumeration) {
  for (std::size_t n = 1; n <= 20; ++n) {
    for (std::size_t t = 1; t <= n / 2; ++t) {
      const double delta = double(t) / double(n);
      const auto size = coding::ball_size(n, coding::ball_radius(n, delta));
      EXPECT_LE(double(size), std::pow(2.0, double(n) * coding::binary_entropy(delta)) * (1 + 1e-12))
          << "n=" << n << " t=" << t;
      if (n <= 10) {
        EXPECT_EQ(coding::hamming_ball(BitString(n), delta).size(), size);
      }
    }
  }
  const auto ball = coding::hamming_ball(bits("101"), 1.0 / 3);
  EXPECT_EQ(ball.size(), 4u);
  for (const auto& z : ball) EXPECT_LE(coding::hamming_distance(z, bits("101")), 1u);
}

TEST(LinearCode, KnownCodes) {
  const auto rep = LinearCode::repetition(3);
  EXPECT_EQ(rep.k(), 1u);
  EXPECT_EQ(rep.d(), 3u);
  const auto ham = LinearCode::hamming74();
  EXPECT_EQ(ham.n(), 7u);
  EXPECT_EQ(ham.k(), 4u);
  EXPECT_EQ(ham.d(), 3u);
  EXPECT_EQ(distance_by_membership(ham), 3u);
  EXPECT_EQ(LinearCode::full_space(5).d(), 1u);
  EXPECT_THROW(LinearCode({bits("110"), bits("110")}), InputError);
}

TEST(LinearCode, ParityCheckAnnihilatesGenerator) {
  auto rng = core::make_rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 4 + trial % 9;
    const auto code = LinearCode::random(n, 1 + trial % (n - 1), rng);
    EXPECT_EQ(code.parity_check().size(), code.n() - code.k());
    for (const auto& g : code.generator())
      for (const auto& h : code.parity_check()) EXPECT_EQ(coding::inner_product(g, h), 0);
    EXPECT_EQ(coding::gf2_rank(code.parity_check()), code.n() - code.k());
    EXPECT_EQ(code.d(), distance_by_membership(code));
  }
}

TEST(LinearCode, CosetsPartitionTheSpace) {
  auto rng = core::make_rng(2);
  for (const auto& code : {LinearCode::hamming74(), LinearCode::repetition(5), LinearCode::random(8, 3, rng)}) {
    std::map<std::string, std::size_t> counts;
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << code.n()); ++v) {
      counts[code.syndrome(BitString::from_index(v, code.n())).str()]++;
    }
    EXPECT_EQ(counts.size(), std::size_t{1} << (code.n() - code.k()));
    for (const auto& [s, c] : counts) {
      EXPECT_EQ(c, std::size_t{1} << code.k());
      const auto members = code.coset(BitString::parse(s));
      EXPECT_EQ(members.size(), c);
      for (const auto& m : members) EXPECT_EQ(code.syndrome(m).str(), s);
    }
  }
}

TEST(NearestCosetRep, ReferenceInCoset) {
  const auto code = LinearCode::hamming74();
  const auto ref = bits("1011001");
  EXPECT_EQ(coding::nearest_coset_rep(code, code.syndrome(ref), ref), ref);
}

TEST(NearestCosetRep, RepetitionCodeSingleFlip) {
  const auto code = LinearCode::repetition(3);
  const auto s = code.syndrome(bits("001"));
  // exhaustive listing of the coset: {001, 110}
  std::vector<BitString> listing;
  for (std::uint64_t v = 0; v < 8; ++v) {
    const auto x = BitString::from_index(v, 3);
    if (code.syndrome(x) == s) listing.push_back(x);
  }
  ASSERT_EQ(listing.size(), 2u);
  EXPECT_EQ(coding::nearest_coset_rep(code, s, bits("000")), bits("001"));
}

TEST(NearestCosetRep, MinimalWithLexicographicTies) {
  auto rng = core::make_rng(3);
  std::uniform_int_distribution<std::uint64_t> pick(0, 127);
  const auto code = LinearCode::hamming74();
  for (int trial = 0; trial < 50; ++trial) {
    const auto ref = BitString::from_index(pick(rng), 7);
    const auto s = code.syndrome(BitString::from_index(pick(rng), 7));
    const auto rep = coding::nearest_coset_rep(code, s, ref);
    EXPECT_EQ(code.syndrome(rep), s);
    const auto dr = coding::hamming_distance(rep, ref);
    for (std::uint64_t v = 0; v < 128; ++v) {
      const auto x = BitString::from_index(v, 7);
      if (code.syndrome(x) != s) continue;
      const auto dx = coding::hamming_distance(x, ref);
      EXPECT_GE(dx, dr);
      if (dx == dr) {
        EXPECT_LE(rep, x);
      }
      // other coset members are at least d − d(θ', ref) away
      if (x != rep) {
        EXPECT_GE(dx, code.d() - std::min(code.d(), dr));
      }
    }
  }
}

TEST(NearestCosetRep, LengthChecked) {
  const auto code = LinearCode::repetition(3);
  EXPECT_THROW(coding::nearest_coset_rep(code, bits("00"), bits("0000")), InputError);
  EXPECT_THROW(code.syndrome(bits("0000")), InputError);
}

TEST(Hashing, ZeroSeedAndLinearity) {
  const coding::XorHashFamily fam(4);
  auto rng = core::make_rng(4);
  std::uniform_int_distribution<std::uint64_t> pick(0, 15);
  for (int trial = 0; trial < 30; ++trial) {
    const auto x = BitString::from_index(pick(rng), 4);
    const auto y = BitString::from_index(pick(rng), 4);
    const auto r = BitString::from_index(pick(rng), 4);
    EXPECT_EQ(fam.eval(BitString(4), x), 0);
    EXPECT_EQ(fam.eval(r, x ^ y), fam.eval(r, x) ^ fam.eval(r, y));
  }
  EXPECT_THROW(fam.eval(bits("101"), bits("1010")), InputError);
}

TEST(Hashing, ExactlyHalfCollide) {
  const coding::XorHashFamily fam(4);
  for (std::uint64_t a = 0; a < 16; ++a) {
    for (std::uint64_t b = 0; b < 16; ++b) {
      if (a == b) continue;
      EXPECT_EQ(fam.collisions(BitString::from_index(a, 4), BitString::from_index(b, 4)), 8u);
    }
  }
  const coding::XorHashFamily fam6(6);
  EXPECT_DOUBLE_EQ(fam6.collision_frequency(bits("000001"), bits("110101")), 0.5);
}

TEST(PrivacyAmp, UniformTwoBitsNoSideInformation) {
  const auto e = RegisterShape::single("E", 1);
  const DensityOperator one(e, core::identity(1));
  const opt::CqState cq({0.25, 0.25, 0.25, 0.25}, {one, one, one, one});
  const auto r = coding::privacy_amp_check(cq);
  EXPECT_NEAR(r.distance, 0.125, 1e-12);
  EXPECT_NEAR(r.bound, 0.5 * std::pow(2.0, -0.5), 1e-9);
  EXPECT_NEAR(r.bound, 0.354, 1e-3);
  EXPECT_TRUE(r.pass);
  const double oracle =
      core::trace_distance(DensityOperator::normalized(RegisterShape::single("YGE", 8), hashed_state(cq, 2, false)),
                           DensityOperator::normalized(RegisterShape::single("YGE", 8), hashed_state(cq, 2, true)));
  EXPECT_NEAR(oracle, r.distance, 1e-12);
}

TEST(PrivacyAmp, DeterministicInput) {
  const auto e = RegisterShape::single("E", 1);
  const DensityOperator one(e, core::identity(1));
  const opt::CqState cq({0.0, 0.0, 1.0, 0.0}, {one, one, one, one});
  const auto r = coding::privacy_amp_check(cq);
  EXPECT_NEAR(r.distance, 0.5, 1e-12);
  EXPECT_NEAR(r.hmin, 0.0, 1e-7);
  EXPECT_GE(r.bound, 0.5 * std::sqrt(2.0) - 1e-6);
  EXPECT_TRUE(r.pass);
}

TEST(PrivacyAmp, RandomCqStatesAgainstFullMatrixOracle) {
  auto rng = core::make_rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + trial % 4;
    const auto cq = random_cq(rng, n, 2);
    const auto r = coding::privacy_amp_check(cq);
    EXPECT_TRUE(r.pass) << "distance " << r.distance << " bound " << r.bound;
    EXPECT_LE(r.guess_primal, r.guess_dual + 1e-12);
    if (n <= 3) {
      const auto dim = 2 * (std::size_t{1} << n) * 2;
      const auto s = RegisterShape::single("YGE", dim);
      const double oracle = core::trace_distance(DensityOperator::normalized(s, hashed_state(cq, n, false)),
                                                 DensityOperator::normalized(s, hashed_state(cq, n, true)));
      EXPECT_NEAR(oracle, r.distance, 1e-10);
    }
  }
}

TEST(PrivacyAmp, RejectsBadSizes) {
  const auto e = RegisterShape::single("E", 1);
  const DensityOperator one(e, core::identity(1));
  EXPECT_THROW(coding::privacy_amp_check(opt::CqState({0.5, 0.25, 0.25}, {one, one, one})), InputError);
}

TEST(GilbertVarshamov, EdgeCases) {
  EXPECT_DOUBLE_EQ(coding::gilbert_varshamov_sample(10, 0.5, 0.0, 20, 1).frequency, 1.0);
  const auto full = coding::gilbert_varshamov_sample(8, 1.0, 0.25, 20, 1);
  EXPECT_EQ(full.k, 8u);
  EXPECT_EQ(full.threshold, 2u);
  EXPECT_DOUBLE_EQ(full.frequency, 0.0);
  EXPECT_FALSE(full.in_gv_region);
}

TEST(GilbertVarshamov, FrequencyMatchesBruteForceDistances) {
  const std::size_t trials = 40;
  const auto sample = coding::gilbert_varshamov_sample(16, 0.5, 1.0 / 16, trials, 9);
  std::size_t hits = 0;
  for (const auto& code : coding::gv_codes(16, sample.k, trials, 9)) {
    const auto d = distance_by_membership(code);
    EXPECT_EQ(d, code.d());
    if (d >= sample.threshold) ++hits;
  }
  EXPECT_EQ(hits, sample.hits);
}

TEST(GilbertVarshamov, DeskScaleRegion) {
  const auto s = coding::gilbert_varshamov_sample(20, 0.6, 0.05, 50, 3);
  EXPECT_TRUE(s.in_gv_region);
  EXPECT_GE(s.frequency, 0.9);
}

TEST(CodeJson, RoundTripAndValidation) {
  const auto code = LinearCode::hamming74();
  const auto back = coding::code_from_json(coding::code_to_json(code));
  EXPECT_EQ(back.generator(), code.generator());
  auto j = coding::code_to_json(code);
  j["d"] = 4;
  EXPECT_THROW(coding::code_from_json(j), InputError);
  EXPECT_EQ(coding::named_code("rep5").d(), 5u);
  EXPECT_THROW(coding::named_code("golay"), InputError);
}
