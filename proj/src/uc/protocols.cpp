#include "qadapt/uc/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "qadapt/core/error.hpp"

namespace qadapt::uc {

namespace {

const std::set<std::string> kTwoCcSenders{"honest", "refuse-open", "wrong-open"};
const std::set<std::string> kOtSenders{"honest", "fixed-state", "wrong-basis", "check-all"};
const std::set<std::string> kOtReceivers{"honest", "swap-partition"};

BitString one_bit(std::uint8_t b) { return BitString(std::vector<std::uint8_t>{std::uint8_t(b & 1)}); }

BitString restrict_to(const BitString& x, const std::vector<std::size_t>& positions) {
  BitString out(positions.size());
  for (std::size_t i = 0; i < positions.size(); ++i) out.set(i, x[positions[i]]);
  return out;
}

Json positions_json(const std::vector<std::size_t>& p) { return Json(p); }

Json hash_json(const std::vector<BitString>& f) {
  Json out = Json::array();
  for (const auto& r : f) out.push_back(r.str());
  return out;
}

void check_ot_inputs(const OtInputs& in, const OtOptions& opts) {
  if (in.n == 0 || in.n > kMaxRegisterQubits) throw InputError("OT runs need 1 ≤ n ≤ 10");
  if (in.s0.size() != in.s1.size() || in.s0.empty()) throw InputError("OT strings must be nonempty and of equal length");
  if (in.c > 1) throw InputError("OT choice must be a bit");
  if (!kOtSenders.count(opts.sender)) throw InputError("unknown OT sender script '" + opts.sender + "'");
  if (!kOtReceivers.count(opts.receiver)) throw InputError("unknown OT receiver script '" + opts.receiver + "'");
}

// Commitment of one bit from `committer` to `receiver` with either realization.
class AnyCommitment {
 public:
  AnyCommitment(BcRealization bc, const std::string& committer, const std::string& receiver,
                const CommitParams& params, Transcript& log, core::Rng& rng)
      : bc_(bc) {
    if (bc == BcRealization::ideal) {
      ideal_.emplace(committer, receiver, &log);
    } else {
      real_ = std::make_unique<OneCcCommitment>(committer, receiver, params, log, rng);
    }
  }
  bool commit(std::uint8_t b) {
    if (ideal_) {
      ideal_->commit(b);
      return true;
    }
    return real_->commit(b);
  }
  std::optional<std::uint8_t> open() {
    if (ideal_) return ideal_->open();
    if (!real_->reveal()) return std::nullopt;
    return real_->received_bit();
  }
  // Extraction as the simulator sees it: the ideal input, or the extractor
  // applied to the committer's 1CC inputs.
  std::uint8_t extract(std::uint8_t ideal_input) const {
    if (bc_ == BcRealization::ideal) return ideal_input;
    return protocol::extractor(real_->extractor_view(), real_->code());
  }

 private:
  BcRealization bc_;
  std::optional<BitCommitment> ideal_;
  std::unique_ptr<OneCcCommitment> real_;
};

struct SenderPrep {
  BitString x, theta;
};

SenderPrep sender_prepare(const std::string& script, std::size_t n, core::Rng& rng) {
  if (script == "fixed-state") return {BitString(n), BitString(n)};
  SenderPrep p;
  p.x = random_bits(rng, n);
  p.theta = random_bits(rng, n);
  return p;
}

std::uint8_t sender_check_bit(const std::string& script, core::Rng& rng) {
  if (script == "check-all") return 1;
  return std::bernoulli_distribution(0.5)(rng) ? 1 : 0;
}

BitString announced_bases(const std::string& script, const BitString& theta) {
  if (script != "wrong-basis") return theta;
  BitString out = theta;
  for (std::size_t i = 0; i < out.size(); ++i) out.flip(i);
  return out;
}

struct SenderFinal {
  std::vector<BitString> f;
  BitString m0, m1;
};

SenderFinal sender_finish(const OtInputs& in, const BitString& x, const std::array<std::vector<std::size_t>, 2>& parts,
                          core::Rng& rng) {
  SenderFinal out;
  for (std::size_t j = 0; j < in.s0.size(); ++j) out.f.push_back(random_bits(rng, in.n));
  out.m0 = in.s0 ^ restricted_hash(out.f, x, parts[0]);
  out.m1 = in.s1 ^ restricted_hash(out.f, x, parts[1]);
  return out;
}

constexpr const char* kSamplingAbort = "too many positions checked";

bool too_many_checks(std::size_t checked, std::size_t n) { return 5 * checked > 3 * n; }

std::uint8_t bit_field(const Json& j, const char* key, std::uint8_t fallback) {
  if (!j.contains(key)) return fallback;
  const int v = j.at(key).get<int>();
  if (v != 0 && v != 1) throw InputError(std::string("field '") + key + "' must be 0 or 1");
  return std::uint8_t(v);
}

}  // namespace

bool is_sampling_abort(const Transcript& t) {
  for (const auto& e : t.events()) {
    if (e.kind == "abort" && e.payload == kSamplingAbort) return true;
  }
  return false;
}

std::string to_string(BcRealization bc) { return bc == BcRealization::ideal ? "ideal" : "onecc"; }

BcRealization bc_from_string(const std::string& name) {
  if (name == "ideal") return BcRealization::ideal;
  if (name == "onecc") return BcRealization::onecc;
  throw InputError("unknown commitment realization '" + name + "' (ideal | onecc)");
}

Corruption corruption_from_string(const std::string& name) {
  if (name == "sender") return Corruption::sender;
  if (name == "receiver") return Corruption::receiver;
  throw InputError("corruption must be 'sender' or 'receiver'");
}

OneCcCommitment::OneCcCommitment(std::string committer, std::string receiver, CommitParams params, Transcript& log,
                                 core::Rng& rng, std::string script)
    : committer_(std::move(committer)),
      receiver_(std::move(receiver)),
      params_(params),
      log_(log),
      rng_(rng),
      script_(std::move(script)) {
  if (params.n_total == 0 || params.n_total > kMaxRegisterQubits) throw InputError("commitment subroutine needs 1 ≤ N ≤ 10");
  if (params.q < 0 || params.q > 1 || params.r <= 0 || params.r > 1) throw InputError("commitment needs q ∈ [0,1], r ∈ (0,1]");
  if (script_ != "honest" && script_ != "wrong-open") throw InputError("unknown committer script '" + script_ + "'");
}

bool OneCcCommitment::commit(std::uint8_t b) {
  b_ = b & 1;
  const std::size_t n_total = params_.n_total;
  theta_ = random_bits(rng_, n_total);
  qubits_ = std::make_unique<QubitRegister>(QubitRegister::bb84(BitString(n_total), theta_));
  log_.send(committer_, receiver_, "qubits", n_total);
  std::bernoulli_distribution pick(params_.q);
  std::size_t checked = 0;
  for (std::size_t i = 0; i < n_total; ++i) {
    CutAndChoose cc(1, committer_, receiver_, &log_);
    cc.input_x(one_bit(theta_[i]));
    cc.input_c(pick(rng_) ? 1 : 0);
    if (const auto w = cc.receiver_output()) {
      ++checked;
      if (qubits_->measure(i, (*w)[0], rng_) != 0) {
        log_.abort(receiver_, "check failed at position " + std::to_string(i));
        return false;
      }
    } else {
      unchecked_.push_back(i);
    }
  }
  if (double(checked) > 2 * params_.q * double(n_total) || unchecked_.empty()) {
    log_.abort(committer_, kSamplingAbort);
    return false;
  }
  const std::size_t n = unchecked_.size();
  const auto k = std::size_t(std::ceil(params_.r * double(n) - 1e-9));
  code_ = std::make_unique<coding::LinearCode>(coding::LinearCode::random(n, std::max<std::size_t>(k, 1), rng_));
  log_.send(receiver_, committer_, "code", coding::code_to_json(*code_));
  if (double(code_->k()) < params_.r * double(n) - 1e-9) {
    log_.abort(committer_, "code rate below r");
    return false;
  }
  const BitString kept = restrict_to(theta_, unchecked_);
  hash_ = random_bits(rng_, n);
  syndrome_ = code_->syndrome(kept);
  w_ = coding::inner_product(hash_, kept) ^ b_;
  log_.send(committer_, receiver_, "commit", {{"g", hash_.str()}, {"s", syndrome_.str()}, {"w", w_}});
  return true;
}

bool OneCcCommitment::reveal() {
  if (!code_) throw InputError("reveal before a completed commit phase");
  const BitString kept = restrict_to(theta_, unchecked_);
  const std::uint8_t claimed = script_ == "wrong-open" ? b_ ^ 1 : b_;
  log_.send(committer_, receiver_, "reveal", {{"theta", kept.str()}, {"b", claimed}});
  for (std::size_t j = 0; j < unchecked_.size(); ++j) {
    if (qubits_->measure(unchecked_[j], kept[j], rng_) != 0) {
      log_.abort(receiver_, "reveal measurement failed");
      return false;
    }
  }
  if (code_->syndrome(kept) != syndrome_) {
    log_.abort(receiver_, "syndrome mismatch");
    return false;
  }
  if ((coding::inner_product(hash_, kept) ^ w_) != claimed) {
    log_.abort(receiver_, "hash mismatch");
    return false;
  }
  received_ = claimed;
  return true;
}

protocol::OneCcView OneCcCommitment::extractor_view() const {
  if (!code_) throw InputError("no completed commit phase to extract from");
  return {restrict_to(theta_, unchecked_), hash_, syndrome_, w_};
}

Transcript run_2cc_protocol(const TwoCcInputs& in, const TwoCcOptions& opts, std::uint64_t seed) {
  if (!kTwoCcSenders.count(opts.sender)) throw InputError("unknown 2CC sender script '" + opts.sender + "'");
  if (in.s0 > 1 || in.s1 > 1 || in.c > 1) throw InputError("2CC inputs must be bits");
  Transcript log;
  auto rng = core::make_rng(seed, 0x2cc);
  std::optional<BitCommitment> ideal;
  std::unique_ptr<OneCcCommitment> real;
  if (opts.bc == BcRealization::ideal) {
    ideal.emplace("Alice", "Bob", &log);
    ideal->commit(in.s0);
  } else {
    real = std::make_unique<OneCcCommitment>("Alice", "Bob", opts.commit, log, rng,
                                             opts.sender == "wrong-open" ? "wrong-open" : "honest");
    if (!real->commit(in.s0)) {
      log.output("Alice", "abort");
      log.output("Bob", "abort");
      return log;
    }
  }
  CutAndChoose cc(1, "Alice", "Bob", &log);
  cc.input_x(one_bit(in.s1));
  cc.input_c(in.c);
  const std::uint8_t learned = cc.sender_output();
  log.output("Alice", learned);
  if (learned == 0) {
    log.output("Bob", nullptr);
    return log;
  }
  const std::uint8_t s1 = (*cc.receiver_output())[0];
  if (opts.sender == "refuse-open") {
    log.abort("Alice", "refuses to open");
    log.output("Bob", "abort");
    return log;
  }
  std::uint8_t s0 = 0;
  if (ideal) {
    s0 = ideal->open();
  } else if (real->reveal()) {
    s0 = real->received_bit();
  } else {
    log.output("Bob", "abort");
    return log;
  }
  log.output("Bob", Json{s0, s1});
  return log;
}

Transcript run_2cc_ideal(const TwoCcInputs& in, const TwoCcOptions& opts) {
  if (!kTwoCcSenders.count(opts.sender)) throw InputError("unknown 2CC sender script '" + opts.sender + "'");
  Transcript log;
  TwoCcPrime f("Alice", "Bob", &log);
  f.input_sender(in.s0, in.s1);
  f.input_receiver(in.c);
  log.output("Alice", *f.sender_learns());
  if (f.result() == TwoCcPrime::Result::bottom) {
    log.output("Bob", nullptr);
    return log;
  }
  const bool opens = opts.sender == "honest" || (opts.sender == "wrong-open" && opts.bc == BcRealization::ideal);
  f.respond(opens);
  if (opens) {
    const auto s = f.receiver_output();
    log.output("Bob", Json{s[0], s[1]});
  } else {
    log.output("Bob", "abort");
  }
  return log;
}

BitString restricted_hash(const std::vector<BitString>& f, const BitString& y, const std::vector<std::size_t>& positions) {
  BitString masked(y.size());
  for (auto i : positions) masked.set(i, y[i]);
  BitString out(f.size());
  for (std::size_t j = 0; j < f.size(); ++j) out.set(j, coding::inner_product(f[j], masked));
  return out;
}

Transcript run_ot_protocol(const OtInputs& in, const OtOptions& opts, std::uint64_t seed) {
  check_ot_inputs(in, opts);
  const std::size_t n = in.n;
  Transcript log;
  auto rng = core::make_rng(seed, 0x07);
  log.output("Alice", nullptr);

  const auto prep = sender_prepare(opts.sender, n, rng);
  QubitRegister reg = QubitRegister::bb84(prep.x, prep.theta);
  log.send("Alice", "Bob", "qubits", n);

  const BitString theta_b = random_bits(rng, n);
  BitString x_b(n);
  for (std::size_t i = 0; i < n; ++i) x_b.set(i, reg.measure(i, theta_b[i], rng));

  BitString t(n);
  std::vector<std::size_t> kept;
  bool alice_aborts = false;
  for (std::size_t i = 0; i < n; ++i) {
    AnyCommitment com(opts.bc, "Bob", "Alice", opts.commit, log, rng);
    if (!com.commit(theta_b[i])) {
      log.output("Bob", "abort");
      return log;
    }
    t.set(i, sender_check_bit(opts.sender, rng));
    CutAndChoose cc(1, "Bob", "Alice", &log);
    cc.input_c(t[i]);
    cc.input_x(one_bit(x_b[i]));
    if (t[i]) {
      const auto basis = com.open();
      if (!basis) {
        log.output("Bob", "abort");
        return log;
      }
      if (*basis == prep.theta[i] && (*cc.receiver_output())[0] != prep.x[i]) alice_aborts = true;
    } else {
      kept.push_back(i);
    }
  }
  if (alice_aborts) {
    log.abort("Alice", "opened position disagrees");
    log.output("Bob", "abort");
    return log;
  }
  if (too_many_checks(t.weight(), n)) {
    log.abort("Bob", "more than 3n/5 positions checked");
    log.output("Bob", "abort");
    return log;
  }

  const BitString announced = announced_bases(opts.sender, prep.theta);
  log.send("Alice", "Bob", "bases", restrict_to(announced, kept).str());
  std::array<std::vector<std::size_t>, 2> parts;
  const std::uint8_t decode = opts.receiver == "swap-partition" ? in.c ^ 1 : in.c;
  for (auto i : kept) parts[announced[i] == theta_b[i] ? decode : decode ^ 1].push_back(i);
  log.send("Bob", "Alice", "partition", {positions_json(parts[0]), positions_json(parts[1])});

  const auto fin = sender_finish(in, prep.x, parts, rng);
  log.send("Alice", "Bob", "masked", {{"f", hash_json(fin.f)}, {"m0", fin.m0.str()}, {"m1", fin.m1.str()}});
  const BitString& m = decode ? fin.m1 : fin.m0;
  log.output("Bob", (m ^ restricted_hash(fin.f, x_b, parts[decode])).str());
  return log;
}

Transcript run_ot_sender_simulation(const OtInputs& in, const OtOptions& opts, std::uint64_t seed) {
  check_ot_inputs(in, opts);
  const std::size_t n = in.n;
  if (n > opts.memory_qubits) throw InputError("simulator must store n qubits, over the quantum-memory configuration");
  Transcript log;
  auto rng = core::make_rng(seed, 0x5e);
  ObliviousTransfer ot("S", "Bob", &log);
  ot.input_receiver(in.c);
  log.output("Alice", nullptr);

  const auto prep = sender_prepare(opts.sender, n, rng);
  QubitRegister reg = QubitRegister::bb84(prep.x, prep.theta);
  log.send("Alice", "S", "qubits", n);
  const BitString theta_b = random_bits(rng, n);

  BitString t(n);
  std::vector<std::size_t> kept;
  bool alice_aborts = false;
  for (std::size_t i = 0; i < n; ++i) {
    AnyCommitment com(opts.bc, "S", "Alice", opts.commit, log, rng);
    if (!com.commit(theta_b[i])) {
      ot.abort();
      log.output("Bob", "abort");
      return log;
    }
    t.set(i, sender_check_bit(opts.sender, rng));
    CutAndChoose cc(1, "S", "Alice", &log);
    cc.input_c(t[i]);
    // rushing: the qubit is measured only once Alice has asked to see it
    cc.input_x(one_bit(t[i] ? reg.measure(i, theta_b[i], rng) : 0));
    if (t[i]) {
      const auto basis = com.open();
      if (!basis) {
        ot.abort();
        log.output("Bob", "abort");
        return log;
      }
      if (*basis == prep.theta[i] && (*cc.receiver_output())[0] != prep.x[i]) alice_aborts = true;
    } else {
      kept.push_back(i);
    }
  }
  if (alice_aborts || too_many_checks(t.weight(), n)) {
    log.abort(alice_aborts ? "Alice" : "S", alice_aborts ? "opened position disagrees" : "more than 3n/5 positions checked");
    ot.abort();
    log.output("Bob", "abort");
    return log;
  }

  const BitString announced = announced_bases(opts.sender, prep.theta);
  log.send("Alice", "S", "bases", restrict_to(announced, kept).str());
  std::array<std::vector<std::size_t>, 2> parts;
  std::bernoulli_distribution coin(0.5);
  for (auto i : kept) parts[coin(rng) ? 1 : 0].push_back(i);
  log.send("S", "Alice", "partition", {positions_json(parts[0]), positions_json(parts[1])});

  const auto fin = sender_finish(in, prep.x, parts, rng);
  log.send("Alice", "S", "masked", {{"f", hash_json(fin.f)}, {"m0", fin.m0.str()}, {"m1", fin.m1.str()}});
  BitString x_hat(n);
  for (auto i : kept) x_hat.set(i, reg.measure(i, announced[i], rng));
  ot.input_sender(fin.m0 ^ restricted_hash(fin.f, x_hat, parts[0]), fin.m1 ^ restricted_hash(fin.f, x_hat, parts[1]));
  log.output("Bob", ot.receiver_output().str());
  return log;
}

Transcript run_ot_receiver_simulation(const OtInputs& in, const OtOptions& opts, std::uint64_t seed,
                                      ExtractionRecord* record) {
  check_ot_inputs(in, opts);
  const std::size_t n = in.n;
  Transcript log;
  auto rng = core::make_rng(seed, 0x5f);
  ObliviousTransfer ot("Alice", "S", &log);
  ot.input_sender(in.s0, in.s1);

  // S plays Alice honestly up to the last message
  const BitString x_a = random_bits(rng, n), theta_a = random_bits(rng, n);
  QubitRegister reg = QubitRegister::bb84(x_a, theta_a);
  log.send("S", "Bob", "qubits", n);

  const BitString theta_b = random_bits(rng, n);
  BitString x_b(n);
  for (std::size_t i = 0; i < n; ++i) x_b.set(i, reg.measure(i, theta_b[i], rng));

  BitString extracted(n);
  std::vector<std::size_t> kept;
  std::size_t checked = 0;
  bool alice_aborts = false;
  for (std::size_t i = 0; i < n; ++i) {
    AnyCommitment com(opts.bc, "Bob", "S", opts.commit, log, rng);
    if (!com.commit(theta_b[i])) {
      log.output("Bob", "abort");
      return log;
    }
    extracted.set(i, com.extract(theta_b[i]));
    const std::uint8_t ti = std::bernoulli_distribution(0.5)(rng) ? 1 : 0;
    CutAndChoose cc(1, "Bob", "S", &log);
    cc.input_c(ti);
    cc.input_x(one_bit(x_b[i]));
    if (ti) {
      ++checked;
      const auto basis = com.open();
      if (!basis) {
        log.output("Bob", "abort");
        return log;
      }
      if (*basis == theta_a[i] && (*cc.receiver_output())[0] != x_a[i]) alice_aborts = true;
    } else {
      kept.push_back(i);
    }
  }
  if (alice_aborts || too_many_checks(checked, n)) {
    log.abort(alice_aborts ? "S" : "Bob", alice_aborts ? "opened position disagrees" : "more than 3n/5 positions checked");
    log.output("Bob", "abort");
    return log;
  }

  log.send("S", "Bob", "bases", restrict_to(theta_a, kept).str());
  std::array<std::vector<std::size_t>, 2> parts;
  const std::uint8_t decode = opts.receiver == "swap-partition" ? in.c ^ 1 : in.c;
  for (auto i : kept) parts[theta_a[i] == theta_b[i] ? decode : decode ^ 1].push_back(i);
  log.send("Bob", "S", "partition", {positions_json(parts[0]), positions_json(parts[1])});

  // effective choice: the side whose positions agree with the extracted bases
  std::array<long, 2> score{0, 0};
  for (int j = 0; j < 2; ++j) {
    for (auto i : parts[j]) score[j] += theta_a[i] == extracted[i] ? 1 : -1;
  }
  const std::uint8_t choice = score[1] > score[0] ? 1 : 0;
  log.send("S", "S", "extracted", {{"bases", extracted.str()}, {"c", choice}});
  ot.input_receiver(choice);
  const BitString got = ot.receiver_output();
  if (record) *record = {theta_b, extracted, decode, choice, true};

  std::vector<BitString> f;
  for (std::size_t j = 0; j < in.s0.size(); ++j) f.push_back(random_bits(rng, n));
  std::array<BitString, 2> m;
  m[choice] = got ^ restricted_hash(f, x_a, parts[choice]);
  m[choice ^ 1] = random_bits(rng, in.s0.size());
  log.send("S", "Bob", "masked", {{"f", hash_json(f)}, {"m0", m[0].str()}, {"m1", m[1].str()}});
  log.output("Bob", (m[decode] ^ restricted_hash(f, x_b, parts[decode])).str());
  return log;
}

DistributionComparison compare_distributions(const std::map<std::string, std::size_t>& real,
                                             const std::map<std::string, std::size_t>& ideal, std::size_t runs) {
  if (runs == 0) throw InputError("distribution comparison needs runs > 0");
  DistributionComparison out{real, ideal, runs, 0.0, true};
  std::set<std::string> keys;
  for (const auto& [k, v] : real) keys.insert(k);
  for (const auto& [k, v] : ideal) keys.insert(k);
  const double total = double(runs);
  for (const auto& k : keys) {
    const double a = real.count(k) ? double(real.at(k)) / total : 0.0;
    const double b = ideal.count(k) ? double(ideal.at(k)) / total : 0.0;
    const double p = 0.5 * (a + b);
    const double sigma = std::sqrt(2 * p * (1 - p) / total);
    const double diff = std::abs(a - b);
    if (diff > 3 * sigma + 1e-12) out.pass = false;
    if (sigma > 0) out.max_sigmas = std::max(out.max_sigmas, diff / sigma);
  }
  return out;
}

SimulatorDemo run_simulator_demo(Corruption corruption, const std::string& script, std::size_t runs,
                                 std::uint64_t seed, const OtOptions& base, std::size_t n, std::size_t ell) {
  if (runs == 0) throw InputError("simulator demo needs runs > 0");
  if (ell == 0 || ell > 16) throw InputError("OT strings must have 1..16 bits");
  OtOptions opts = base;
  if (corruption == Corruption::sender) {
    opts.sender = script;
  } else {
    opts.receiver = script;
  }
  SimulatorDemo demo;
  demo.corruption = corruption;
  demo.script = script;
  auto env = core::make_rng(seed, 0xe0);
  auto real_seeds = core::make_rng(seed, 0xe1);
  auto ideal_seeds = core::make_rng(seed, 0xe2);
  std::map<std::string, std::size_t> real, ideal;
  for (std::size_t run = 0; run < runs; ++run) {
    OtInputs in;
    in.n = n;
    in.s0 = random_bits(env, ell);
    in.s1 = random_bits(env, ell);
    in.c = std::bernoulli_distribution(0.5)(env) ? 1 : 0;
    const auto r = run_ot_protocol(in, opts, real_seeds());
    ++real[r.output_of("Bob").get<std::string>()];
    if (corruption == Corruption::sender) {
      const auto s = run_ot_sender_simulation(in, opts, ideal_seeds());
      ++ideal[s.output_of("Bob").get<std::string>()];
    } else {
      ExtractionRecord rec;
      const auto s = run_ot_receiver_simulation(in, opts, ideal_seeds(), &rec);
      ++ideal[s.output_of("Bob").get<std::string>()];
      if (rec.reached) {
        ++demo.extraction_checks;
        if (rec.extracted == rec.committed && rec.extracted_choice == rec.script_choice) ++demo.extraction_matches;
      }
    }
  }
  demo.outputs = compare_distributions(real, ideal, runs);
  demo.pass = demo.outputs.pass && demo.extraction_matches == demo.extraction_checks;
  return demo;
}

OtCompleteness ot_completeness(std::size_t n, std::size_t target, std::uint64_t seed, BcRealization bc) {
  if (target == 0) throw InputError("completeness run needs a positive target");
  OtCompleteness out;
  OtOptions opts;
  opts.bc = bc;
  auto env = core::make_rng(seed, 0xc0);
  while (out.non_aborting < target) {
    OtInputs in;
    in.n = n;
    in.s0 = random_bits(env, 2);
    in.s1 = random_bits(env, 2);
    in.c = std::bernoulli_distribution(0.5)(env) ? 1 : 0;
    const auto t = run_ot_protocol(in, opts, env());
    ++out.runs;
    const auto bob = t.output_of("Bob").get<std::string>();
    if (bob == "abort") {
      ++out.aborts;
      continue;
    }
    ++out.non_aborting;
    if (bob == (in.c ? in.s1 : in.s0).str()) ++out.correct;
  }
  out.abort_frequency = double(out.aborts) / double(out.runs);
  out.abort_exact = protocol::binomial_upper_tail(n, 0.5, 0.6 * double(n));
  out.abort_sigma = std::sqrt(out.abort_exact * (1 - out.abort_exact) / double(out.runs));
  out.pass = out.correct == out.non_aborting &&
             std::abs(out.abort_frequency - out.abort_exact) <= 3 * out.abort_sigma + 1e-12;
  return out;
}

std::vector<FunctionalityRow> onecc_table() {
  std::vector<FunctionalityRow> rows;
  for (std::uint8_t x = 0; x < 2; ++x) {
    for (std::uint8_t c = 0; c < 2; ++c) {
      CutAndChoose cc(1, "Alice", "Bob");
      cc.input_x(one_bit(x));
      cc.input_c(c);
      FunctionalityRow row{x, c, cc.sender_output(), std::nullopt, false};
      if (const auto w = cc.receiver_output()) row.receiver_gets = (*w)[0];
      row.matches = row.sender_learns == c && (c == 0 ? !row.receiver_gets : row.receiver_gets == x);
      rows.push_back(row);
    }
  }
  return rows;
}

Json demo_to_json(const SimulatorDemo& d) {
  return {{"corruption", d.corruption == Corruption::sender ? "sender" : "receiver"},
          {"script", d.script},
          {"runs", d.outputs.runs},
          {"real", d.outputs.real},
          {"ideal", d.outputs.ideal},
          {"max_sigmas", d.outputs.max_sigmas},
          {"extraction_checks", d.extraction_checks},
          {"extraction_matches", d.extraction_matches},
          {"pass", d.pass}};
}

Json completeness_to_json(const OtCompleteness& c) {
  return {{"runs", c.runs},
          {"aborts", c.aborts},
          {"non_aborting", c.non_aborting},
          {"correct", c.correct},
          {"abort_frequency", c.abort_frequency},
          {"abort_exact", c.abort_exact},
          {"abort_sigma", c.abort_sigma},
          {"pass", c.pass}};
}

ScenarioResult run_scenario(const Json& scenario) {
  if (!scenario.is_object() || !scenario.contains("protocol")) throw InputError("scenario needs a 'protocol' field");
  const auto protocol = scenario.at("protocol").get<std::string>();
  const auto seed = scenario.value("seed", std::uint64_t{0});
  const auto runs = scenario.value("runs", std::size_t{1});
  const Json inputs = scenario.value("inputs", Json::object());
  const auto bc = bc_from_string(scenario.value("bc", std::string("ideal")));
  if (runs == 0 || runs > 100000) throw InputError("scenario runs must be in 1..100000");
  ScenarioResult out;
  if (protocol == "1cc-table") {
    out.pass = true;
    Json rows = Json::array();
    for (const auto& r : onecc_table()) {
      rows.push_back({{"x", r.x}, {"c", r.c}, {"sender_learns", r.sender_learns},
                      {"receiver_gets", r.receiver_gets ? Json(*r.receiver_gets) : Json()}, {"matches", r.matches}});
      out.pass = out.pass && r.matches;
    }
    out.summary = {{"protocol", protocol}, {"rows", rows}, {"pass", out.pass}};
    return out;
  }
  if (protocol == "2cc") {
    TwoCcInputs in{bit_field(inputs, "s0", 0), bit_field(inputs, "s1", 0), bit_field(inputs, "c", 0)};
    TwoCcOptions opts;
    opts.sender = scenario.value("adversary", std::string("honest"));
    opts.bc = bc;
    const auto reference = run_2cc_ideal(in, opts);
    std::size_t agree = 0, sampling_aborts = 0;
    for (std::size_t i = 0; i < runs; ++i) {
      out.transcripts.push_back(run_2cc_protocol(in, opts, seed + i));
      const auto& t = out.transcripts.back();
      if (t.outputs() == reference.outputs()) {
        ++agree;
      } else if (is_sampling_abort(t)) {
        ++sampling_aborts;
      }
    }
    out.pass = agree + sampling_aborts == runs;
    out.summary = {{"protocol", protocol}, {"runs", runs}, {"matches_ideal", agree}, {"sampling_aborts", sampling_aborts},
                   {"ideal_outputs", reference.outputs()}, {"pass", out.pass}};
    return out;
  }
  if (protocol == "ot") {
    OtInputs in;
    in.s0 = BitString::parse(inputs.value("s0", in.s0.str()));
    in.s1 = BitString::parse(inputs.value("s1", in.s1.str()));
    in.c = bit_field(inputs, "c", 0);
    in.n = inputs.value("n", in.n);
    OtOptions opts;
    opts.sender = scenario.value("sender", scenario.value("adversary", std::string("honest")));
    opts.receiver = scenario.value("receiver", std::string("honest"));
    opts.bc = bc;
    std::map<std::string, std::size_t> counts;
    for (std::size_t i = 0; i < runs; ++i) {
      out.transcripts.push_back(run_ot_protocol(in, opts, seed + i));
      ++counts[out.transcripts.back().output_of("Bob").get<std::string>()];
    }
    const std::string expected = (in.c ? in.s1 : in.s0).str();
    const bool honest = opts.sender == "honest" && opts.receiver == "honest";
    std::size_t wrong = 0;
    for (const auto& [k, v] : counts) wrong += (k != "abort" && k != expected) ? v : 0;
    out.pass = !honest || wrong == 0;
    out.summary = {{"protocol", protocol}, {"runs", runs}, {"outputs", counts}, {"expected", expected},
                   {"checked", honest}, {"pass", out.pass}};
    return out;
  }
  if (protocol == "simulator") {
    const auto corruption = corruption_from_string(scenario.value("corruption", std::string("sender")));
    OtOptions base;
    base.bc = bc;
    base.memory_qubits = scenario.value("memory_qubits", base.memory_qubits);
    const auto demo = run_simulator_demo(corruption, scenario.value("adversary", std::string("honest")), runs, seed, base,
                                         inputs.value("n", std::size_t{8}), inputs.value("ell", std::size_t{2}));
    out.pass = demo.pass;
    out.summary = demo_to_json(demo);
    return out;
  }
  throw InputError("unknown protocol '" + protocol + "' (1cc-table | 2cc | ot | simulator)");
}

}  // namespace qadapt::uc
