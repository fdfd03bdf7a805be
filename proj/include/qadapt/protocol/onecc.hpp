#pragma once

#include <optional>
#include <vector>

#include "qadapt/coding/linear_code.hpp"
#include "qadapt/core/state.hpp"
#include "qadapt/opt/discrimination.hpp"

namespace qadapt::protocol {

using coding::BitString;
using core::ComplexVector;

/// |b⟩ in basis bit θ: 0 is computational, 1 is Hadamard.
ComplexVector basis_ket(std::uint8_t b, std::uint8_t theta);

/// ⟨0^n|_{θa} |y⟩_{θb}: product of [y_i = 0] on equal bases and 1/√2 elsewhere.
double b92_overlap(const BitString& theta_a, const BitString& y, const BitString& theta_b);

/// ⊗_i |0⟩_{θ_i} on one register "B" of dimension 2^N (N ≤ 12).
core::StateVector b92_encode(const BitString& theta);

/// |x⟩_θ as an amplitude vector (n ≤ 12).
ComplexVector bb84_vector(const BitString& x, const BitString& theta);

struct ThetaGuessing {
  double gamma = 0.0;       // single-qubit guessing probability of θ
  double hmin_lower = 0.0;  // N(lg(1/γ) − 2q)
  double hmin_after_syndrome = 0.0;  // minus the (1 − r)N syndrome bits
  double hiding_bound = 0.0;         // 2^{−½N(lg(1/γ) − 2q − (1 − r))}
};

ThetaGuessing theta_guessing_analysis(std::size_t n_qubits, double q, double r);

/// Guessing probability of θ ∈ {0,1}^N from ⊗|0⟩_{θ_i}, by the solver (N ≤ 3).
opt::SolverCertificate multi_qubit_theta_guessing(std::size_t n_qubits);

/// Σ_{y ∈ B^δ(0^n)} α_y |ξ^y⟩_A |y⟩_θ
class SmallSupState {
 public:
  SmallSupState(BitString theta, double delta, std::vector<BitString> support, std::vector<core::Complex> alpha,
                std::vector<ComplexVector> xi);

  const BitString& theta() const { return theta_; }
  double delta() const { return delta_; }
  std::size_t n() const { return theta_.size(); }
  std::size_t dim_a() const { return static_cast<std::size_t>(xi_.front().size()); }
  const std::vector<BitString>& support() const { return support_; }
  const std::vector<core::Complex>& alpha() const { return alpha_; }
  const std::vector<ComplexVector>& xi() const { return xi_; }

  core::ComplexMatrix rho_a() const;
  /// Unnormalized A-vector Σ_y α_y ⟨0^n|_{θ''}|y⟩_θ ξ^y; its squared norm is
  /// the acceptance probability of opening θ''.
  ComplexVector projected(const BitString& theta_pp) const;
  /// Dense state on (A, B); only for dim_a · 2^n within the dimension cap.
  core::StateVector dense() const;

 private:
  BitString theta_;
  double delta_;
  std::vector<BitString> support_;
  std::vector<core::Complex> alpha_;
  std::vector<ComplexVector> xi_;
};

/// Haar-random ξ^y, Dirichlet(1) weights |α_y|² with uniform phases (n ≤ 10, dim_a ≤ 16).
SmallSupState sample_smallsup_state(const BitString& theta, double delta, std::size_t dim_a, std::uint64_t seed);

struct OpeningBoundCheck {
  BitString theta_prime;   // nearest syndrome-s string to θ
  BitString worst_theta;   // maximizer among the others (empty if the coset is a singleton)
  double worst_value = 0.0;
  double bound = 0.0;      // 2^{−d/2 + n h(δ)}
  bool pass = false;
};

OpeningBoundCheck opening_bound_check(const SmallSupState& state, const coding::LinearCode& code, const BitString& s);

/// Classical view held by Bob and the 1CC functionality after commit, restricted
/// to the unchecked positions.
struct OneCcView {
  BitString theta;  // θ_t̄
  BitString hash;   // r of g_r(x) = ⟨r, x⟩
  BitString s;
  std::uint8_t w = 0;
};

/// c = g(θ') ⊕ w with θ' the nearest syndrome-s string to θ_t̄.
std::uint8_t extractor(const OneCcView& view, const coding::LinearCode& code);

struct ExtractorChain {
  std::uint8_t c = 0;
  std::size_t wrong_openings = 0;  // syndrome-s strings opening 1 − c
  double p_na = 0.0;               // best single wrong opening on φ_B
  opt::SolverCertificate adaptive; // Alice measuring A before choosing
  double h0_a = 0.0;
  double opening_bound = 0.0;
  double chain_bound = 0.0;        // 2^{H_0(A)} · opening_bound
  bool pass = false;               // adaptive dual ≤ chain_bound + 1e-6 and ≤ 2^{H_0}·p_na + 1e-6
};

ExtractorChain extractor_chain_check(const SmallSupState& state, const coding::LinearCode& code, const OneCcView& view);

struct OneCcParams {
  std::size_t n_total = 40;  // N
  double q = 0.1;
  double tau = 0.1;
  double r = 0.8;
  double delta = 0.05;
};

struct OneCcAdversary {
  /// positions where Alice sends |1⟩_θ instead of |0⟩_θ; empty for honest
  std::vector<std::size_t> flips;
};

struct OneCcStats {
  std::size_t runs = 0;
  std::size_t check_aborts = 0;     // Bob saw a 1 in step 2b
  std::size_t alice_aborts = 0;     // |t| > 2qN
  double tail_frequency = 0.0;
  double tail_exact = 0.0;          // Pr[Bin(N, q) > 2qN]
  double hoeffding = 0.0;           // 2 exp(−2q²N)
  double tail_sigma = 0.0;
  std::size_t flip_trials = 0;      // runs × flipped positions
  std::size_t flip_catches = 0;
  double catch_frequency = 0.0;
  double catch_sigma = 0.0;
  std::size_t reveals = 0;          // honest runs taken through reveal (n ≤ 24)
  std::size_t reveal_accepts = 0;
  bool tail_pass = false;           // within 3σ of exact and below Hoeffding + 3σ
  bool catch_pass = true;           // within 3σ of q
};

OneCcStats simulate_commit_1cc(const OneCcParams& params, const OneCcAdversary& adversary, std::uint64_t seed,
                               std::size_t runs);

/// Pr[Bin(n, p) > threshold]
double binomial_upper_tail(std::size_t n, double p, double threshold);

core::Json onecc_stats_to_json(const OneCcStats& s);

}  // namespace qadapt::protocol
