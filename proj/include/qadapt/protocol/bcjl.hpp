#pragma once

#include <optional>
#include <string>

#include "qadapt/coding/linear_code.hpp"
#include "qadapt/commit/commitment.hpp"

namespace qadapt::protocol {

using coding::BitString;

/// V = Σ_{z ∈ B^δ(x)} |z⟩⟨z|_θ (n ≤ 10)
core::ComplexMatrix bcjl_verifier(const BitString& x, const BitString& theta, double delta);

/// max over z ∈ B^δ(x), z' ∈ B^δ(x') of |⟨z|_θ |z'⟩_θ'|
double max_ball_overlap(const BitString& x, const BitString& theta, const BitString& xp, const BitString& thetap,
                        double delta);

struct BcjlNaConfig {
  coding::LinearCode code = coding::LinearCode::repetition(3);
  double delta = 0.0;
  std::optional<BitString> s;     // all syndromes when empty
  std::optional<BitString> hash;  // all nonzero r when empty
  std::uint8_t w = 0;
  std::size_t enumeration_budget = 200000;
  std::size_t sample_pairs = 0;   // > 0: sample this many pairs per commitment instead
  std::uint64_t seed = 0;
};

struct BcjlNaReport {
  double max_sum = 0.0;   // max ‖V + V′‖ over evaluated opening pairs
  double bound = 0.0;     // 1 + 2^{−d/2 + δn + h(δ)n}
  std::size_t pairs = 0;
  std::size_t commitments = 0;
  bool full_enumeration = true;
  std::string restriction;         // how θ pairs were restricted, if at all
  std::size_t overlap_failures = 0;  // pairs where ‖VV′‖ exceeded overlap·√(|B||B′|)
  double max_overlap_ratio = 0.0;    // ‖VV′‖ / (overlap·√(|B||B′|)) where defined
  bool pass = false;
};

BcjlNaReport bcjl_na_binding(const BcjlNaConfig& cfg);

/// Openings of a fixed BCJL_δ commitment (s, r, w) as a projective scheme; at most
/// `max_openings` per bit, lexicographic over (x, θ) from `theta_offset`.
commit::ProjectiveCommitmentScheme bcjl_scheme(const coding::LinearCode& code, double delta, const BitString& s,
                                               const BitString& hash, std::uint8_t w, std::size_t max_openings,
                                               std::uint64_t theta_offset = 0);

struct EquivalenceStats {
  std::size_t runs = 0;
  double frequency = 0.0;  // all sampled positions agree
  double exact = 0.0;      // 2^{−mismatches}
  double bound = 0.0;      // 2^{−δn}
  double sigma = 0.0;
  bool pass = false;       // frequency ≤ bound + 3σ and |frequency − exact| ≤ 3σ
};

/// Bob tests each position with probability ½ (basis match); x̂ differs from x
/// in `mismatches` > δn positions.
EquivalenceStats bcjl_equivalence_mc(double delta, std::size_t n, std::size_t mismatches, std::size_t runs,
                                     std::uint64_t seed);

struct HidingReport {
  double distance = 0.0;  // statistical distance of Bob's views for b = 0, 1
  double hmin_used = 0.0; // n lg(1/γ) − (n − k)
  double bound = 0.0;     // 2^{−(hmin_used − 1)/2}
  bool vacuous = false;   // bound ≥ 1
  bool pass = false;
};

/// Bob measures every qubit in a random basis; exact over all classical views (n ≤ 6).
HidingReport bcjl_hiding_exact(const coding::LinearCode& code);

/// Joint distribution of (x̂, r, s, w) for committed bit b, indexed
/// [((x̂·2^n + r)·2^{n−k} + s)·2 + w].
std::vector<double> bcjl_view_distribution(const coding::LinearCode& code, std::uint8_t b);

core::Json bcjl_na_to_json(const BcjlNaReport& r);
core::Json equivalence_to_json(const EquivalenceStats& s);
core::Json hiding_to_json(const HidingReport& r);

}  // namespace qadapt::protocol
