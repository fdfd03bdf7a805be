#include "qadapt/uc/transcript.hpp"

#include <cmath>
#include <sstream>

#include "qadapt/core/error.hpp"
#include "qadapt/protocol/onecc.hpp"

namespace qadapt::uc {

void Transcript::send(const std::string& from, const std::string& to, const std::string& kind, Json payload) {
  events_.push_back({events_.size(), from, to, kind, std::move(payload)});
}

void Transcript::output(const std::string& party, Json value) { outputs_[party] = std::move(value); }

void Transcript::abort(const std::string& party, const std::string& reason) {
  send(party, "*", "abort", reason);
  if (!aborted_by_) aborted_by_ = party;
}

Json Transcript::output_of(const std::string& party) const {
  return outputs_.contains(party) ? outputs_.at(party) : Json();
}

std::string Transcript::to_jsonl() const {
  std::string out;
  for (const auto& e : events_) {
    out += Json{{"step", e.step}, {"from", e.from}, {"to", e.to}, {"kind", e.kind}, {"payload", e.payload}}.dump();
    out += '\n';
  }
  Json tail{{"outputs", outputs_}, {"aborted_by", aborted_by_ ? Json(*aborted_by_) : Json()}};
  out += tail.dump();
  out += '\n';
  return out;
}

Transcript Transcript::from_jsonl(const std::string& text) {
  Transcript t;
  std::istringstream in(text);
  std::string line;
  std::vector<Json> lines;
  while (std::getline(in, line)) {
    if (!line.empty()) lines.push_back(Json::parse(line));
  }
  if (lines.empty() || !lines.back().contains("outputs")) throw InputError("transcript lacks its closing outputs line");
  for (std::size_t i = 0; i + 1 < lines.size(); ++i) {
    const auto& j = lines[i];
    t.events_.push_back({j.at("step").get<std::size_t>(), j.at("from").get<std::string>(),
                         j.at("to").get<std::string>(), j.at("kind").get<std::string>(), j.at("payload")});
  }
  t.outputs_ = lines.back().at("outputs");
  if (!lines.back().at("aborted_by").is_null()) t.aborted_by_ = lines.back().at("aborted_by").get<std::string>();
  return t;
}

QubitRegister::QubitRegister(core::ComplexVector amplitudes, std::size_t n)
    : amp_(std::move(amplitudes)), n_(n), measured_(n, false) {
  if (n > kMaxRegisterQubits) throw InputError("qubit registers hold at most 10 qubits");
  if (amp_.size() != (Eigen::Index(1) << n)) throw InputError("amplitude vector does not match the qubit count");
  if (std::abs(amp_.norm() - 1.0) > 1e-9) throw InputError("register state must be normalized");
}

QubitRegister QubitRegister::bb84(const BitString& x, const BitString& theta) {
  if (x.size() > kMaxRegisterQubits) throw InputError("qubit registers hold at most 10 qubits");
  return QubitRegister(protocol::bb84_vector(x, theta), x.size());
}

void QubitRegister::hadamard(std::size_t i) {
  const Eigen::Index stride = Eigen::Index(1) << (n_ - 1 - i);
  const double s = 1.0 / std::sqrt(2.0);
  for (Eigen::Index k = 0; k < amp_.size(); ++k) {
    if (k & stride) continue;
    const core::Complex a = amp_(k), b = amp_(k | stride);
    amp_(k) = s * (a + b);
    amp_(k | stride) = s * (a - b);
  }
}

std::uint8_t QubitRegister::measure(std::size_t i, std::uint8_t basis, core::Rng& rng) {
  if (i >= n_) throw InputError("qubit index out of range");
  if (basis) hadamard(i);
  const Eigen::Index stride = Eigen::Index(1) << (n_ - 1 - i);
  double p1 = 0.0;
  for (Eigen::Index k = 0; k < amp_.size(); ++k) {
    if (k & stride) p1 += std::norm(amp_(k));
  }
  const std::uint8_t outcome = std::bernoulli_distribution(std::clamp(p1, 0.0, 1.0))(rng) ? 1 : 0;
  const double keep = outcome ? p1 : 1.0 - p1;
  for (Eigen::Index k = 0; k < amp_.size(); ++k) {
    if (bool(k & stride) != bool(outcome)) {
      amp_(k) = 0.0;
    } else {
      amp_(k) /= std::sqrt(keep);
    }
  }
  if (basis) hadamard(i);
  measured_[i] = true;
  return outcome;
}

BitString random_bits(core::Rng& rng, std::size_t n) {
  std::bernoulli_distribution coin(0.5);
  BitString b(n);
  for (std::size_t i = 0; i < n; ++i) b.set(i, coin(rng) ? 1 : 0);
  return b;
}

}  // namespace qadapt::uc
