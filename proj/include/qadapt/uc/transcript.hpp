#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qadapt/coding/bits.hpp"
#include "qadapt/core/json_io.hpp"
#include "qadapt/core/random.hpp"

namespace qadapt::uc {

using coding::BitString;
using core::Json;

struct Event {
  std::size_t step = 0;
  std::string from;
  std::string to;
  std::string kind;
  Json payload;
  bool operator==(const Event&) const = default;
};

/// Append-only log of one execution. Outputs map party name to a JSON value:
/// null for ⊥, the string "abort", or the party's result.
class Transcript {
 public:
  void send(const std::string& from, const std::string& to, const std::string& kind, Json payload = nullptr);
  void output(const std::string& party, Json value);
  void abort(const std::string& party, const std::string& reason);

  const std::vector<Event>& events() const { return events_; }
  const Json& outputs() const { return outputs_; }
  Json output_of(const std::string& party) const;
  const std::optional<std::string>& aborted_by() const { return aborted_by_; }

  /// One JSON object per line; the final line carries outputs and abort marker.
  std::string to_jsonl() const;
  static Transcript from_jsonl(const std::string& text);
  bool operator==(const Transcript&) const = default;

 private:
  std::vector<Event> events_;
  Json outputs_ = Json::object();
  std::optional<std::string> aborted_by_;
};

inline constexpr std::size_t kMaxRegisterQubits = 10;

/// State vector over n ≤ 10 qubits, qubit 0 most significant.
class QubitRegister {
 public:
  QubitRegister(core::ComplexVector amplitudes, std::size_t n);
  /// |x⟩_θ
  static QubitRegister bb84(const BitString& x, const BitString& theta);

  std::size_t size() const { return n_; }
  const core::ComplexVector& amplitudes() const { return amp_; }
  bool measured(std::size_t i) const { return measured_.at(i); }
  /// Born-rule outcome of qubit i in basis 0 (computational) or 1 (Hadamard);
  /// the register collapses onto the outcome.
  std::uint8_t measure(std::size_t i, std::uint8_t basis, core::Rng& rng);

 private:
  void hadamard(std::size_t i);

  core::ComplexVector amp_;
  std::size_t n_;
  std::vector<bool> measured_;
};

BitString random_bits(core::Rng& rng, std::size_t n);

}  // namespace qadapt::uc
