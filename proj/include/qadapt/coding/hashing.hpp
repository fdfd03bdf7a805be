#pragma once

#include "qadapt/coding/bits.hpp"
#include "qadapt/opt/entropy.hpp"

namespace qadapt::coding {

/// g_r(x) = ⟨r, x⟩ mod 2, r ranging over all of {0,1}^n (r = 0 included).
class XorHashFamily {
 public:
  explicit XorHashFamily(std::size_t n);

  std::size_t n() const { return n_; }
  std::uint64_t size() const { return std::uint64_t{1} << n_; }
  std::uint8_t eval(const BitString& r, const BitString& x) const;
  /// Number of members r with g_r(x) = g_r(y), by enumeration.
  std::uint64_t collisions(const BitString& x, const BitString& y) const;
  double collision_frequency(const BitString& x, const BitString& y) const;

 private:
  std::size_t n_;
};

struct PrivacyAmpResult {
  double distance = 0.0;  // D(ρ_{YGE}, I/2 ⊗ ρ_{GE}), exact
  double bound = 0.0;     // ½·2^{−(Hmin − 1)/2}
  double hmin = 0.0;      // −lg of the certified upper bound on P_guess
  double guess_primal = 0.0;
  double guess_dual = 0.0;
  bool pass = false;
};

/// X must have 2^n outcomes (n ≤ 8); outcome index i is the n-bit string
/// BitString::from_index(i, n).
PrivacyAmpResult privacy_amp_check(const opt::CqState& cq, double tol = 1e-9);

/// ω_{r,y} = Σ_{x : g_r(x) = y} P(x) ρ_E^x
core::ComplexMatrix hashed_branch(const opt::CqState& cq, const BitString& r, std::uint8_t y);

}  // namespace qadapt::coding
