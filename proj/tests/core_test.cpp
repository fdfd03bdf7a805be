#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>

#include "qadapt/core/error.hpp"
#include "qadapt/core/json_io.hpp"
#include "test_support.hpp"

using namespace qadapt;
using namespace qadapt::testing;

namespace {

// Reference partial trace over the second factor by explicit index loops.
ComplexMatrix trace_out_second(const ComplexMatrix& m, int da, int db) {
  ComplexMatrix out = ComplexMatrix::Zero(da, da);
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < da; ++j)
      for (int k = 0; k < db; ++k) out(i, j) += m(i * db + k, j * db + k);
  return out;
}

ComplexMatrix trace_out_first(const ComplexMatrix& m, int da, int db) {
  ComplexMatrix out = ComplexMatrix::Zero(db, db);
  for (int i = 0; i < db; ++i)
    for (int j = 0; j < db; ++j)
      for (int k = 0; k < da; ++k) out(i, j) += m(k * db + i, k * db + j);
  return out;
}

double power_iteration_norm(const ComplexMatrix& m) {
  const ComplexMatrix g = m.adjoint() * m;
  ComplexVector v = ComplexVector::Ones(g.cols()) / std::sqrt(double(g.cols()));
  v(0) += Complex(0.3, 0.1);
  double est = 0.0;
  for (int it = 0; it < 5000; ++it) {
    ComplexVector w = g * v;
    const double n = w.norm();
    if (n == 0.0) return 0.0;
    w /= n;
    if ((w - v).norm() < 1e-15) {
      v = w;
      break;
    }
    v = w;
  }
  est = std::sqrt(std::abs(v.dot(g * v)));
  return est;
}

DensityOperator bell_phi_plus() {
  ComplexVector v = ComplexVector::Zero(4);
  v(0) = v(3) = 1.0 / std::sqrt(2.0);
  return DensityOperator::pure(core::StateVector(ab_shape(2, 2), v));
}

}  // namespace

TEST(Tensor, IdentityTimesIdentity) {
  EXPECT_LT(max_diff(core::tensor(core::identity(2), core::identity(2)), core::identity(4)), 1e-15);
}

TEST(Tensor, BasisOrdering) {
  const ComplexMatrix m = core::tensor(proj(2, 0), proj(2, 1));
  ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
  expected(1, 1) = 1.0;
  EXPECT_LT(max_diff(m, expected), 1e-15);
}

TEST(Tensor, ActsFactorwiseOnProductVectors) {
  auto rng = core::make_rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const ComplexMatrix x = core::random_hermitian(rng, 3) + core::haar_unitary(rng, 3);
    const ComplexMatrix y = core::random_hermitian(rng, 3);
    const ComplexVector u = core::haar_vector(rng, 3);
    const ComplexVector v = core::haar_vector(rng, 3);
    const ComplexVector lhs = core::tensor(x, y) * core::tensor(u, v);
    ComplexVector rhs(9);
    const ComplexVector xu = x * u;
    const ComplexVector yv = y * v;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) rhs(3 * i + j) = xu(i) * yv(j);
    EXPECT_LT((lhs - rhs).norm(), 1e-12);
  }
}

TEST(RegisterShape, RejectsDuplicateLabelsAndZeroDims) {
  EXPECT_THROW(RegisterShape({{"A", 2}, {"A", 2}}), InputError);
  EXPECT_THROW(RegisterShape({{"A", 0}}), InputError);
  const RegisterShape s({{"A", 2}, {"B", 3}, {"C", 5}});
  EXPECT_EQ(s.total_dim(), 30u);
  EXPECT_EQ(s.index_of("C"), 2u);
  EXPECT_THROW(s.index_of("Z"), InputError);
  EXPECT_EQ(s.complement({"B"}), (std::vector<std::string>{"A", "C"}));
}

TEST(PartialTrace, BellReducesToMaximallyMixed) {
  const auto rho = bell_phi_plus();
  EXPECT_LT(max_diff(rho.reduce({"A"}).matrix(), core::identity(2) / 2.0), 1e-12);
  EXPECT_LT(max_diff(rho.reduce({"B"}).matrix(), core::identity(2) / 2.0), 1e-12);
}

TEST(PartialTrace, ProductStateKeepsFactor) {
  auto rng = core::make_rng(3);
  const auto ra = random_state(rng, RegisterShape::single("A", 2));
  const auto rb = random_state(rng, RegisterShape::single("B", 3));
  const auto joint = ra.tensor(rb);
  EXPECT_LT(max_diff(joint.reduce({"B"}).matrix(), rb.matrix()), 1e-12);
  EXPECT_LT(max_diff(joint.reduce({"A"}).matrix(), ra.matrix()), 1e-12);
}

TEST(PartialTrace, MatchesIndexLoops) {
  auto rng = core::make_rng(5);
  for (int trial = 0; trial < 5; ++trial) {
    const auto rho = random_state(rng, ab_shape(2, 3));
    EXPECT_LT(max_diff(rho.reduce({"A"}).matrix(), trace_out_second(rho.matrix(), 2, 3)), 1e-12);
    EXPECT_LT(max_diff(rho.reduce({"B"}).matrix(), trace_out_first(rho.matrix(), 2, 3)), 1e-12);
    EXPECT_NEAR(rho.reduce({"B"}).matrix().trace().real(), 1.0, 1e-12);
  }
}

TEST(PartialTrace, MiddleSubsystemOfThree) {
  auto rng = core::make_rng(6);
  const RegisterShape s({{"A", 2}, {"B", 3}, {"C", 2}});
  const auto rho = random_state(rng, s);
  // keep A and C: trace B with explicit loops
  ComplexMatrix expect = ComplexMatrix::Zero(4, 4);
  for (int a = 0; a < 2; ++a)
    for (int c = 0; c < 2; ++c)
      for (int a2 = 0; a2 < 2; ++a2)
        for (int c2 = 0; c2 < 2; ++c2)
          for (int b = 0; b < 3; ++b)
            expect(a * 2 + c, a2 * 2 + c2) += rho.matrix()(a * 6 + b * 2 + c, a2 * 6 + b * 2 + c2);
  EXPECT_LT(max_diff(rho.reduce({"A", "C"}).matrix(), expect), 1e-12);
  // label order in `keep` does not change declaration order
  EXPECT_LT(max_diff(rho.reduce({"C", "A"}).matrix(), expect), 1e-12);
}

TEST(PartialTrace, UnknownLabelRejected) {
  EXPECT_THROW(bell_phi_plus().reduce({"Q"}), InputError);
}

TEST(PartialTrace, CommutesWithMixing) {
  auto rng = core::make_rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const auto r1 = random_state(rng, ab_shape(2, 2));
    const auto r2 = random_state(rng, ab_shape(2, 2));
    const double p = std::uniform_real_distribution<double>(0, 1)(rng);
    const DensityOperator mix(ab_shape(2, 2), p * r1.matrix() + (1 - p) * r2.matrix());
    const ComplexMatrix lhs = mix.reduce({"B"}).matrix();
    const ComplexMatrix rhs = p * r1.reduce({"B"}).matrix() + (1 - p) * r2.reduce({"B"}).matrix();
    EXPECT_LT(max_diff(lhs, rhs), 1e-10);
  }
}

TEST(Embed, MatchesKroneckerWithIdentity) {
  auto rng = core::make_rng(9);
  const RegisterShape s({{"A", 2}, {"B", 3}, {"C", 2}});
  const ComplexMatrix op = core::random_hermitian(rng, 3);
  const ComplexMatrix expect = core::tensor(core::tensor(core::identity(2), op), core::identity(2));
  EXPECT_LT(max_diff(core::embed(op, s, {"B"}), expect), 1e-14);
  const ComplexMatrix op2 = core::random_hermitian(rng, 4);
  // A and C together: permute back from (B,A,C) ordering
  const ComplexMatrix in_bac = core::tensor(core::identity(3), op2);
  const RegisterShape bac({{"B", 3}, {"A", 2}, {"C", 2}});
  EXPECT_LT(max_diff(core::embed(op2, s, {"A", "C"}), core::permute_subsystems(in_bac, bac, {"A", "B", "C"})),
            1e-14);
}

TEST(Permute, SwapsProductFactors) {
  auto rng = core::make_rng(10);
  const ComplexMatrix a = core::random_hermitian(rng, 2);
  const ComplexMatrix b = core::random_hermitian(rng, 3);
  const ComplexMatrix swapped = core::permute_subsystems(core::tensor(a, b), ab_shape(2, 3), {"B", "A"});
  EXPECT_LT(max_diff(swapped, core::tensor(b, a)), 1e-14);
}

TEST(Eig, DiagonalInput) {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 0) = 1;
  m(1, 1) = 3;
  const auto es = core::eig_hermitian(m);
  EXPECT_NEAR(es.values(0), 3.0, 1e-14);
  EXPECT_NEAR(es.values(1), 1.0, 1e-14);
}

TEST(Eig, PauliX) {
  const auto es = core::eig_hermitian(pauli_x());
  EXPECT_NEAR(es.values(0), 1.0, 1e-14);
  EXPECT_NEAR(es.values(1), -1.0, 1e-14);
  ComplexVector plus(2), minus(2);
  plus << 1, 1;
  minus << 1, -1;
  plus /= std::sqrt(2.0);
  minus /= std::sqrt(2.0);
  EXPECT_NEAR(std::abs(es.vectors.col(0).dot(plus)), 1.0, 1e-12);
  EXPECT_NEAR(std::abs(es.vectors.col(1).dot(minus)), 1.0, 1e-12);
}

TEST(Eig, ReconstructionAndRejection) {
  auto rng = core::make_rng(12);
  const ComplexMatrix h = core::random_hermitian(rng, 8);
  const auto es = core::eig_hermitian(h);
  const ComplexMatrix back = es.vectors * es.values.cast<Complex>().asDiagonal() * es.vectors.adjoint();
  EXPECT_LT(max_diff(back, h), 1e-9);
  for (int i = 1; i < 8; ++i) EXPECT_GE(es.values(i - 1), es.values(i));
  ComplexMatrix bad = h;
  bad(0, 1) += 0.1;
  EXPECT_THROW(core::eig_hermitian(bad), InputError);
}

TEST(TraceDistance, OrthogonalAndIdentical) {
  const auto s = RegisterShape::single("A", 2);
  const DensityOperator zero(s, proj(2, 0));
  const DensityOperator one(s, proj(2, 1));
  EXPECT_NEAR(core::trace_distance(zero, one), 1.0, 1e-12);
  EXPECT_NEAR(core::trace_distance(zero, zero), 0.0, 1e-12);
}

TEST(TraceDistance, PureStatesWithHalfOverlap) {
  // |⟨ψ|φ⟩|² = ½: real qubit vectors π/4 apart
  const auto s = RegisterShape::single("A", 2);
  const core::StateVector psi(s, real_qubit(0.0));
  const core::StateVector phi(s, real_qubit(std::numbers::pi / 4));
  const double ov = core::overlap(psi, phi);
  ASSERT_NEAR(ov * ov, 0.5, 1e-12);
  const double d = core::trace_distance(DensityOperator::pure(psi), DensityOperator::pure(phi));
  EXPECT_NEAR(d, std::sqrt(1.0 - ov * ov), 1e-12);
  EXPECT_NEAR(d, 0.70711, 1e-5);
  // same value from the eigenvalues of the difference
  const auto es = core::eig_hermitian(DensityOperator::pure(psi).matrix() - DensityOperator::pure(phi).matrix());
  EXPECT_NEAR(0.5 * es.values.cwiseAbs().sum(), d, 1e-12);
}

TEST(TraceDistance, ShapeMismatchRejected) {
  EXPECT_THROW(core::trace_distance(DensityOperator::maximally_mixed(RegisterShape::single("A", 2)),
                                    DensityOperator::maximally_mixed(RegisterShape::single("B", 2))),
               InputError);
}

TEST(TraceDistance, IsAMetricOnRandomTriples) {
  auto rng = core::make_rng(13);
  const auto s = ab_shape(2, 2);
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = random_state(rng, s, 1 + trial % 4);
    const auto b = random_state(rng, s, 1 + (trial / 4) % 4);
    const auto c = random_state(rng, s);
    const double ab = core::trace_distance(a, b);
    EXPECT_EQ(ab, core::trace_distance(b, a));
    EXPECT_LE(core::trace_distance(a, c), ab + core::trace_distance(b, c) + 1e-10);
    EXPECT_GE(ab, 0.0);
    EXPECT_LE(ab, 1.0 + 1e-12);
  }
}

TEST(SpectralNorm, ProjectorAndDiagonal) {
  auto rng = core::make_rng(14);
  EXPECT_NEAR(core::spectral_norm(core::random_projector(rng, 5, 2)), 1.0, 1e-12);
  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(0, 0) = 2;
  d(1, 1) = -3;
  EXPECT_NEAR(core::spectral_norm(d), 3.0, 1e-14);
}

TEST(SpectralNorm, MatchesPowerIteration) {
  auto rng = core::make_rng(15);
  for (int trial = 0; trial < 5; ++trial) {
    const ComplexMatrix m = core::random_hermitian(rng, 6) + core::haar_unitary(rng, 6) * 0.7;
    EXPECT_NEAR(core::spectral_norm(m), power_iteration_norm(m), 1e-9);
  }
}

TEST(Loewner, BasicCases) {
  auto rng = core::make_rng(16);
  const ComplexMatrix x = core::random_hermitian(rng, 4);
  EXPECT_TRUE(core::loewner_leq(x, x, 1e-10));
  EXPECT_FALSE(core::loewner_leq(core::identity(3), 0.5 * core::identity(3), 1e-10));
  ComplexMatrix bad = x;
  bad(0, 1) += 1.0;
  EXPECT_THROW(core::loewner_leq(bad, x, 1e-10), InputError);
}

TEST(Loewner, StateBelowScaledMixedTimesMarginal) {
  auto rng = core::make_rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const auto rho = random_state(rng, ab_shape(2, 2 + trial % 3));
    const ComplexMatrix rhs = 4.0 * core::tensor(core::identity(2) / 2.0, rho.reduce({"B"}).matrix());
    EXPECT_TRUE(core::loewner_leq(rho.matrix(), rhs, 1e-10));
  }
}

TEST(Loewner, TransitiveOnPsdChains) {
  auto rng = core::make_rng(18);
  const double tol = 1e-10;
  for (int trial = 0; trial < 50; ++trial) {
    const ComplexMatrix x = random_psd(rng, 4);
    const ComplexMatrix y = x + random_psd(rng, 4, 0.5);
    const ComplexMatrix z = y + random_psd(rng, 4, 0.5);
    ASSERT_TRUE(core::loewner_leq(x, y, tol));
    ASSERT_TRUE(core::loewner_leq(y, z, tol));
    EXPECT_TRUE(core::loewner_leq(x, z, 3 * tol));
  }
}

TEST(PositivePart, Cases) {
  auto rng = core::make_rng(19);
  const ComplexMatrix p = random_psd(rng, 4);
  EXPECT_LT(max_diff(core::positive_part(p), p), 1e-12);
  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(0, 0) = 1;
  d(1, 1) = -2;
  ComplexMatrix expect = ComplexMatrix::Zero(2, 2);
  expect(0, 0) = 1;
  EXPECT_LT(max_diff(core::positive_part(d), expect), 1e-14);
  for (int trial = 0; trial < 10; ++trial) {
    const ComplexMatrix h = core::random_hermitian(rng, 5);
    EXPECT_LT(max_diff(h, core::positive_part(h) - core::positive_part(-h)), 1e-10);
  }
}

TEST(ZeroEntropy, PureMixedAndSmallSupport) {
  auto rng = core::make_rng(20);
  const RegisterShape three_qubits({{"A", 2}, {"B", 2}, {"C", 2}});
  EXPECT_NEAR(core::zero_entropy(DensityOperator::pure(core::StateVector(three_qubits, core::haar_vector(rng, 8)))),
              0.0, 1e-12);
  EXPECT_NEAR(core::zero_entropy(DensityOperator::maximally_mixed(three_qubits)), 3.0, 1e-12);

  // Σ_{y ∈ B^1(000)} α_y ξ^y ⊗ |y⟩: four support terms, so rank(ρ_A) ≤ 4
  const std::size_t n = 3;
  const std::size_t da = 8;
  const std::vector<std::size_t> ball{0, 1, 2, 4};
  ComplexVector psi = ComplexVector::Zero(static_cast<Eigen::Index>(da << n));
  for (std::size_t y : ball) psi += core::tensor(core::haar_vector(rng, da), ket(1u << n, y));
  const auto rho = DensityOperator::pure(core::StateVector::normalized(ab_shape(da, 1u << n), psi));
  const double h0 = core::zero_entropy(rho.reduce({"A"}));
  EXPECT_LE(h0, std::log2(double(ball.size())) + 1e-12);
  EXPECT_NEAR(h0, 2.0, 1e-12);
}

TEST(DensityOperator, ValidatesInvariants) {
  const auto s = RegisterShape::single("A", 2);
  ComplexMatrix m = core::identity(2) / 2.0;
  EXPECT_NO_THROW(DensityOperator(s, m));
  ComplexMatrix non_herm = m;
  non_herm(0, 1) = 0.1;
  EXPECT_THROW(DensityOperator(s, non_herm), InputError);
  EXPECT_THROW(DensityOperator(s, core::identity(2)), InputError);
  ComplexMatrix neg = ComplexMatrix::Zero(2, 2);
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;
  EXPECT_THROW(DensityOperator(s, neg), InputError);
  EXPECT_THROW(DensityOperator(RegisterShape::single("A", 3), m), InputError);
}

TEST(DensityOperator, RandomStatesSatisfyInvariants) {
  auto rng = core::make_rng(21);
  for (int trial = 0; trial < 30; ++trial) {
    const auto rho = random_state(rng, ab_shape(2, 3), 1 + trial % 6);
    EXPECT_TRUE(core::is_hermitian(rho.matrix(), 1e-12));
    EXPECT_GE(core::lambda_min(rho.matrix()), -1e-10);
    EXPECT_NEAR(rho.matrix().trace().real(), 1.0, 1e-10);
  }
}

TEST(DimensionCap, EnforcedAndConfigurable) {
  const auto old = core::dimension_cap();
  core::set_dimension_cap(8);
  EXPECT_THROW(DensityOperator::maximally_mixed(RegisterShape::single("A", 16)), InputError);
  core::set_dimension_cap(old);
  EXPECT_NO_THROW(DensityOperator::maximally_mixed(RegisterShape::single("A", 16)));
}

TEST(Random, SeedsReproduce) {
  auto r1 = core::make_rng(42, 3);
  auto r2 = core::make_rng(42, 3);
  auto r3 = core::make_rng(42, 4);
  const ComplexMatrix u1 = core::haar_unitary(r1, 4);
  EXPECT_EQ(max_diff(u1, core::haar_unitary(r2, 4)), 0.0);
  EXPECT_GT(max_diff(u1, core::haar_unitary(r3, 4)), 1e-3);
  EXPECT_LT(max_diff(u1 * u1.adjoint(), core::identity(4)), 1e-12);
}

TEST(JsonIo, StateRoundTripAndRejection) {
  auto rng = core::make_rng(22);
  const auto rho = random_state(rng, ab_shape(2, 2));
  const auto back = core::state_from_json(core::state_to_json(rho));
  EXPECT_TRUE(back.shape() == rho.shape());
  EXPECT_LT(max_diff(back.matrix(), rho.matrix()), 1e-15);

  auto j = core::state_to_json(rho);
  j["re"][0][0] = j["re"][0][0].get<double>() + 0.5;
  EXPECT_THROW(core::state_from_json(j), InputError);

  const auto path = std::filesystem::temp_directory_path() / "qadapt_core_test_state.json";
  core::write_json_file(path.string(), core::state_to_json(rho));
  EXPECT_LT(max_diff(core::state_from_json(core::read_json_file(path.string())).matrix(), rho.matrix()), 1e-15);
  std::filesystem::remove(path);
  EXPECT_THROW(core::read_json_file("/nonexistent/qadapt.json"), InputError);
}
