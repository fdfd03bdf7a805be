#include "qadapt/protocol/onecc.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "qadapt/core/error.hpp"
#include "qadapt/core/random.hpp"
#include "qadapt/opt/entropy.hpp"

namespace qadapt::protocol {

using core::Complex;
using core::ComplexMatrix;

namespace {

constexpr std::size_t kMaxStateQubits = 12;

ComplexVector product_vector(const BitString& x, const BitString& theta) {
  if (x.size() != theta.size()) throw InputError("string and basis lengths differ");
  if (x.size() > kMaxStateQubits) throw InputError("state-vector form is limited to 12 qubits");
  ComplexVector v = ComplexVector::Ones(1);
  for (std::size_t i = 0; i < x.size(); ++i) v = core::tensor(v, basis_ket(x[i], theta[i]));
  return v;
}

}  // namespace

ComplexVector basis_ket(std::uint8_t b, std::uint8_t theta) {
  ComplexVector v(2);
  if (theta == 0) {
    v << (b == 0 ? 1.0 : 0.0), (b == 0 ? 0.0 : 1.0);
  } else {
    const double s = 1.0 / std::sqrt(2.0);
    v << s, (b == 0 ? s : -s);
  }
  return v;
}

double b92_overlap(const BitString& theta_a, const BitString& y, const BitString& theta_b) {
  double v = 1.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (theta_a[i] == theta_b[i]) {
      if (y[i] != 0) return 0.0;
    } else {
      v *= 1.0 / std::sqrt(2.0);
    }
  }
  return v;
}

core::StateVector b92_encode(const BitString& theta) {
  const ComplexVector v = product_vector(BitString(theta.size()), theta);
  return core::StateVector(core::RegisterShape::single("B", static_cast<std::size_t>(v.size())), v);
}

ComplexVector bb84_vector(const BitString& x, const BitString& theta) { return product_vector(x, theta); }

ThetaGuessing theta_guessing_analysis(std::size_t n_qubits, double q, double r) {
  if (q < 0 || r > 1) throw InputError("theta guessing needs q ≥ 0 and r ≤ 1");
  const auto qubit = core::RegisterShape::single("B", 2);
  const opt::CqState cq({0.5, 0.5}, {core::DensityOperator(qubit, core::outer(basis_ket(0, 0))),
                                     core::DensityOperator(qubit, core::outer(basis_ket(0, 1)))});
  ThetaGuessing out;
  out.gamma = opt::guessing_probability(cq).value();
  const double per_qubit = std::log2(1.0 / out.gamma);
  const double n = static_cast<double>(n_qubits);
  out.hmin_lower = n * (per_qubit - 2 * q);
  out.hmin_after_syndrome = n * (per_qubit - 2 * q - (1 - r));
  out.hiding_bound = std::pow(2.0, -0.5 * out.hmin_after_syndrome);
  return out;
}

opt::SolverCertificate multi_qubit_theta_guessing(std::size_t n_qubits) {
  if (n_qubits == 0 || n_qubits > 3) throw InputError("multi-qubit theta guessing is limited to 1..3 qubits");
  const std::size_t count = std::size_t{1} << n_qubits;
  std::vector<double> weights(count, 1.0 / double(count));
  std::vector<core::DensityOperator> states;
  for (std::size_t t = 0; t < count; ++t) states.push_back(core::DensityOperator::pure(b92_encode(BitString::from_index(t, n_qubits))));
  opt::SolverOptions o;
  o.tol = 1e-9;
  return opt::guessing_probability(opt::CqState(weights, states), o);
}

SmallSupState::SmallSupState(BitString theta, double delta, std::vector<BitString> support,
                             std::vector<Complex> alpha, std::vector<ComplexVector> xi)
    : theta_(std::move(theta)), delta_(delta), support_(std::move(support)), alpha_(std::move(alpha)), xi_(std::move(xi)) {
  if (support_.empty() || support_.size() != alpha_.size() || support_.size() != xi_.size()) {
    throw InputError("small-support state needs matching support, amplitudes and side states");
  }
  const std::size_t radius = coding::ball_radius(theta_.size(), delta_);
  double norm = 0.0;
  for (std::size_t i = 0; i < support_.size(); ++i) {
    if (support_[i].size() != theta_.size() || support_[i].weight() > radius) {
      throw InputError("support string outside the δ-ball around 0^n");
    }
    if (xi_[i].size() != xi_.front().size() || std::abs(xi_[i].norm() - 1.0) > 1e-10) {
      throw InputError("side states must be unit vectors of one dimension");
    }
    norm += std::norm(alpha_[i]);
  }
  if (std::abs(norm - 1.0) > 1e-10) throw InputError("amplitudes are not normalized");
  auto sorted = support_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) throw InputError("repeated support string");
}

ComplexMatrix SmallSupState::rho_a() const {
  const auto d = static_cast<Eigen::Index>(dim_a());
  ComplexMatrix out = ComplexMatrix::Zero(d, d);
  for (std::size_t i = 0; i < support_.size(); ++i) out += std::norm(alpha_[i]) * core::outer(xi_[i]);
  return out;
}

ComplexVector SmallSupState::projected(const BitString& theta_pp) const {
  ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(dim_a()));
  for (std::size_t i = 0; i < support_.size(); ++i) {
    const double o = b92_overlap(theta_pp, support_[i], theta_);
    if (o != 0.0) v += alpha_[i] * o * xi_[i];
  }
  return v;
}

core::StateVector SmallSupState::dense() const {
  const core::RegisterShape shape({{"A", dim_a()}, {"B", std::size_t{1} << n()}});
  core::check_dimension(shape.total_dim(), "small-support state");
  ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(shape.total_dim()));
  for (std::size_t i = 0; i < support_.size(); ++i) v += alpha_[i] * core::tensor(xi_[i], bb84_vector(support_[i], theta_));
  return core::StateVector(shape, v, 1e-10);
}

SmallSupState sample_smallsup_state(const BitString& theta, double delta, std::size_t dim_a, std::uint64_t seed) {
  if (theta.size() > 10 || dim_a == 0 || dim_a > 16) throw InputError("small-support sampling needs n ≤ 10 and dim A ≤ 16");
  auto rng = core::make_rng(seed, 0x55);
  auto support = coding::hamming_ball(BitString(theta.size()), delta);
  std::exponential_distribution<double> expo(1.0);
  std::uniform_real_distribution<double> phase(0.0, 2 * std::numbers::pi);
  std::vector<double> w(support.size());
  double total = 0.0;
  for (auto& x : w) total += (x = expo(rng));
  std::vector<Complex> alpha;
  std::vector<ComplexVector> xi;
  for (std::size_t i = 0; i < support.size(); ++i) {
    alpha.push_back(std::polar(std::sqrt(w[i] / total), phase(rng)));
    xi.push_back(core::haar_vector(rng, dim_a));
  }
  // absorb rounding in the last weight
  double norm = 0.0;
  for (const auto& a : alpha) norm += std::norm(a);
  for (auto& a : alpha) a /= std::sqrt(norm);
  return SmallSupState(theta, delta, std::move(support), std::move(alpha), std::move(xi));
}

OpeningBoundCheck opening_bound_check(const SmallSupState& state, const coding::LinearCode& code, const BitString& s) {
  if (code.n() != state.n()) throw InputError("code length differs from the state's qubit count");
  OpeningBoundCheck out;
  out.theta_prime = coding::nearest_coset_rep(code, s, state.theta());
  out.worst_value = 0.0;
  for (const auto& t : code.coset(s)) {
    if (t == out.theta_prime) continue;
    const double v = state.projected(t).squaredNorm();
    if (out.worst_theta.empty() || v > out.worst_value) out.worst_value = v, out.worst_theta = t;
  }
  const double n = static_cast<double>(code.n());
  out.bound = std::pow(2.0, -0.5 * double(code.d()) + n * coding::binary_entropy(state.delta()));
  out.pass = out.worst_value <= out.bound + 1e-9;
  return out;
}

std::uint8_t extractor(const OneCcView& view, const coding::LinearCode& code) {
  if (view.theta.size() != code.n() || view.hash.size() != code.n() || view.s.size() != code.n() - code.k()) {
    throw InputError("extractor view has inconsistent lengths");
  }
  const BitString theta_prime = coding::nearest_coset_rep(code, view.s, view.theta);
  return coding::inner_product(view.hash, theta_prime) ^ (view.w & 1);
}

ExtractorChain extractor_chain_check(const SmallSupState& state, const coding::LinearCode& code, const OneCcView& view) {
  if (!(view.theta == state.theta())) throw InputError("view and state disagree on θ");
  ExtractorChain out;
  out.c = extractor(view, code);
  std::vector<ComplexMatrix> scores;
  for (const auto& t : code.coset(view.s)) {
    if ((coding::inner_product(view.hash, t) ^ view.w) != (1 - out.c)) continue;
    const ComplexVector v = state.projected(t);
    out.p_na = std::max(out.p_na, v.squaredNorm());
    scores.push_back(core::outer(v));
  }
  out.wrong_openings = scores.size();
  out.h0_a = core::zero_entropy(core::DensityOperator(core::RegisterShape::single("A", state.dim_a()), core::hermitize(state.rho_a())));
  out.opening_bound = std::pow(2.0, -0.5 * double(code.d()) + double(code.n()) * coding::binary_entropy(state.delta()));
  out.chain_bound = std::pow(2.0, out.h0_a) * out.opening_bound;
  if (scores.empty()) {
    out.adaptive.converged = true;
    out.pass = true;
    return out;
  }
  opt::SolverOptions o;
  o.tol = 1e-9;
  out.adaptive = opt::optimal_discrimination(opt::DiscriminationInstance(scores), o);
  out.pass = out.adaptive.dual <= out.chain_bound + 1e-6 && out.adaptive.dual <= std::pow(2.0, out.h0_a) * out.p_na + 1e-6;
  return out;
}

double binomial_upper_tail(std::size_t n, double p, double threshold) {
  double total = 0.0;
  for (std::size_t k = 0; k <= n; ++k) {
    if (double(k) <= threshold) continue;
    if (p <= 0.0) break;
    if (p >= 1.0) {
      total = (k == n) ? 1.0 : total;
      continue;
    }
    const double lg = std::lgamma(double(n) + 1) - std::lgamma(double(k) + 1) - std::lgamma(double(n - k) + 1) +
                      double(k) * std::log(p) + double(n - k) * std::log1p(-p);
    total += std::exp(lg);
  }
  return std::min(1.0, total);
}

OneCcStats simulate_commit_1cc(const OneCcParams& params, const OneCcAdversary& adversary, std::uint64_t seed,
                               std::size_t runs) {
  const std::size_t big_n = params.n_total;
  if (big_n == 0 || big_n > 64) throw InputError("1CC simulation needs 1 ≤ N ≤ 64");
  if (params.q <= 0 || params.q > 1 || params.tau <= 0 || params.delta <= 0 || params.r >= 1 || params.r <= 0) {
    throw InputError("1CC parameters need 0 < q ≤ 1, τ > 0, δ > 0 and 0 < r < 1");
  }
  for (auto f : adversary.flips) {
    if (f >= big_n) throw InputError("flip position outside the N qubits");
  }
  std::vector<bool> flipped(big_n, false);
  for (auto f : adversary.flips) flipped[f] = true;

  auto rng = core::make_rng(seed, 0x1cc);
  std::bernoulli_distribution check(params.q), coin(0.5);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const double limit = 2.0 * params.q * double(big_n);
  OneCcStats st;
  st.runs = runs;
  std::size_t tail = 0;
  for (std::size_t run = 0; run < runs; ++run) {
    BitString theta(big_n);
    for (std::size_t i = 0; i < big_n; ++i) theta.set(i, coin(rng));
    std::size_t checked = 0;
    bool caught = false;
    std::vector<std::size_t> unchecked;
    for (std::size_t i = 0; i < big_n; ++i) {
      const std::uint8_t sent = flipped[i] ? 1 : 0;
      if (check(rng)) {
        ++checked;
        // outcome 0 with probability |⟨0|_θ |sent⟩_θ|²
        const double p0 = std::norm(basis_ket(0, theta[i]).dot(basis_ket(sent, theta[i])));
        const bool saw_one = unif(rng) >= p0;
        caught = caught || saw_one;
        if (flipped[i]) st.flip_catches += saw_one ? 1 : 0;
      } else {
        unchecked.push_back(i);
      }
    }
    st.flip_trials += adversary.flips.size();
    if (caught) ++st.check_aborts;
    if (double(checked) > limit) {
      ++tail;
      ++st.alice_aborts;
      continue;
    }
    const std::size_t n = unchecked.size();
    if (caught || !adversary.flips.empty() || n == 0 || n > 16 || st.reveals >= 100) continue;
    // honest commit and reveal on the unchecked positions
    const auto k = std::min(n, static_cast<std::size_t>(std::ceil(params.r * double(n))));
    const auto code = coding::LinearCode::random(n, k, rng);
    BitString tbar(n), r(n);
    for (std::size_t i = 0; i < n; ++i) tbar.set(i, theta[unchecked[i]]), r.set(i, coin(rng));
    const std::uint8_t b = coin(rng);
    const BitString s = code.syndrome(tbar);
    const std::uint8_t w = coding::inner_product(r, tbar) ^ b;
    bool ok = code.syndrome(tbar) == s && ((coding::inner_product(r, tbar) ^ w) == b);
    for (std::size_t i = 0; i < n && ok; ++i) {
      const double p0 = std::norm(basis_ket(0, tbar[i]).dot(basis_ket(0, tbar[i])));
      ok = unif(rng) < p0;
    }
    ++st.reveals;
    st.reveal_accepts += ok ? 1 : 0;
  }
  st.tail_frequency = runs ? double(tail) / double(runs) : 0.0;
  st.tail_exact = binomial_upper_tail(big_n, params.q, limit);
  st.hoeffding = 2.0 * std::exp(-2.0 * params.q * params.q * double(big_n));
  st.tail_sigma = runs ? std::sqrt(st.tail_exact * (1 - st.tail_exact) / double(runs)) : 0.0;
  st.tail_pass = std::abs(st.tail_frequency - st.tail_exact) <= 3 * st.tail_sigma + 1e-12 &&
                 st.tail_frequency <= st.hoeffding + 3 * st.tail_sigma;
  if (st.flip_trials > 0) {
    st.catch_frequency = double(st.flip_catches) / double(st.flip_trials);
    st.catch_sigma = std::sqrt(params.q * (1 - params.q) / double(st.flip_trials));
    st.catch_pass = std::abs(st.catch_frequency - params.q) <= 3 * st.catch_sigma + 1e-12;
  }
  return st;
}

core::Json onecc_stats_to_json(const OneCcStats& s) {
  return {{"runs", s.runs},
          {"check_aborts", s.check_aborts},
          {"alice_aborts", s.alice_aborts},
          {"tail_frequency", s.tail_frequency},
          {"tail_exact", s.tail_exact},
          {"hoeffding", s.hoeffding},
          {"tail_sigma", s.tail_sigma},
          {"tail_pass", s.tail_pass},
          {"flip_trials", s.flip_trials},
          {"flip_catches", s.flip_catches},
          {"catch_frequency", s.catch_frequency},
          {"catch_sigma", s.catch_sigma},
          {"catch_pass", s.catch_pass},
          {"reveals", s.reveals},
          {"reveal_accepts", s.reveal_accepts}};
}

}  // namespace qadapt::protocol
