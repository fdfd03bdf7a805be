#pragma once

#include <vector>

#include "qadapt/coding/bits.hpp"
#include "qadapt/core/json_io.hpp"
#include "qadapt/core/random.hpp"

namespace qadapt::coding {

inline constexpr std::size_t kMaxCodeLength = 24;

/// Binary [n, k, d] code given by a full-rank generator matrix.
class LinearCode {
 public:
  explicit LinearCode(std::vector<BitString> generator_rows);

  static LinearCode repetition(std::size_t n);
  static LinearCode hamming74();
  /// The trivial [n, n, 1] code.
  static LinearCode full_space(std::size_t n);
  /// Uniform k×n generator, redrawn until it has rank k.
  static LinearCode random(std::size_t n, std::size_t k, core::Rng& rng);

  std::size_t n() const { return n_; }
  std::size_t k() const { return generator_.size(); }
  std::size_t d() const { return d_; }
  const std::vector<BitString>& generator() const { return generator_; }
  const std::vector<BitString>& parity_check() const { return parity_; }

  BitString encode(const BitString& message) const;
  std::vector<BitString> codewords() const;
  BitString syndrome(const BitString& x) const;
  /// Some string with the given syndrome.
  BitString coset_leader(const BitString& s) const;
  /// Every string with syndrome `s`, in lexicographic order.
  std::vector<BitString> coset(const BitString& s) const;

 private:
  std::size_t n_ = 0;
  std::vector<BitString> generator_;
  std::vector<BitString> parity_;
  std::vector<std::size_t> free_columns_;
  std::size_t d_ = 0;
};

/// Rank over GF(2).
std::size_t gf2_rank(std::vector<BitString> rows);

/// Minimum-distance string in the syndrome-s coset; ties go to the
/// lexicographically smallest.
BitString nearest_coset_rep(const LinearCode& code, const BitString& s, const BitString& reference);

/// {"n": 7, "k": 4, "G": ["1000110", ...], "d": 3}
core::Json code_to_json(const LinearCode& code);
/// Recomputes d and rejects a mismatching stored value.
LinearCode code_from_json(const core::Json& j);
/// "hamming74", "rep3", "rep5", "full4", ...
LinearCode named_code(const std::string& name);

struct GvSample {
  std::size_t trials = 0;
  std::size_t hits = 0;
  double frequency = 0.0;
  std::size_t k = 0;
  std::size_t threshold = 0;  // hits need d ≥ threshold = ⌈τn⌉
  bool in_gv_region = true;   // rate < 1 − h(τ)
};

/// The codes drawn by gilbert_varshamov_sample for the same arguments.
std::vector<LinearCode> gv_codes(std::size_t n, std::size_t k, std::size_t trials, std::uint64_t seed);

GvSample gilbert_varshamov_sample(std::size_t n, double rate, double tau, std::size_t trials,
                                  std::uint64_t seed);

}  // namespace qadapt::coding
