#pragma once

#include <map>
#include <memory>
#include <string>

#include "qadapt/coding/linear_code.hpp"
#include "qadapt/protocol/onecc.hpp"
#include "qadapt/uc/functionality.hpp"

namespace qadapt::uc {

enum class BcRealization { ideal, onecc };
std::string to_string(BcRealization bc);
BcRealization bc_from_string(const std::string& name);

/// Parameters of the 1CC-based commitment used as a subroutine; N ≤ 10 so
/// the committed qubits fit one register.
struct CommitParams {
  std::size_t n_total = 10;
  double q = 0.1;
  double r = 0.8;
};

/// The 1CC-based commitment run between two parties, every sampling step a
/// CutAndChoose instance. Committer scripts: "honest", "wrong-open".
class OneCcCommitment {
 public:
  OneCcCommitment(std::string committer, std::string receiver, CommitParams params, Transcript& log, core::Rng& rng,
                  std::string script = "honest");

  /// False if either side aborted during the commit phase.
  bool commit(std::uint8_t b);
  /// True if the receiver accepts; the accepted bit is then received_bit().
  bool reveal();
  std::uint8_t received_bit() const { return received_; }

  /// What a simulator sees: the committer's 1CC inputs on unchecked
  /// positions together with the announced hash, syndrome and w.
  protocol::OneCcView extractor_view() const;
  const coding::LinearCode& code() const { return *code_; }

 private:
  std::string committer_, receiver_;
  CommitParams params_;
  Transcript& log_;
  core::Rng& rng_;
  std::string script_;
  std::uint8_t b_ = 0;
  std::uint8_t received_ = 0;
  BitString theta_;
  std::vector<std::size_t> unchecked_;
  std::unique_ptr<QubitRegister> qubits_;
  std::unique_ptr<coding::LinearCode> code_;
  BitString hash_, syndrome_;
  std::uint8_t w_ = 0;
};

/// An honest commit phase can abort when the receiver checks more than 2qN
/// positions; true if that happened in `t`.
bool is_sampling_abort(const Transcript& t);

struct TwoCcInputs {
  std::uint8_t s0 = 0, s1 = 0, c = 0;
};

/// Sender scripts: "honest", "refuse-open", "wrong-open".
struct TwoCcOptions {
  std::string sender = "honest";
  BcRealization bc = BcRealization::ideal;
  CommitParams commit;
};

/// Alice outputs c; Bob outputs [s0, s1] if c = 1, null if c = 0, "abort"
/// when Alice does not open successfully.
Transcript run_2cc_protocol(const TwoCcInputs& in, const TwoCcOptions& opts, std::uint64_t seed);

/// Ideal 2CC′ with a passthrough sender; the reference for run_2cc_protocol.
Transcript run_2cc_ideal(const TwoCcInputs& in, const TwoCcOptions& opts);

struct OtInputs {
  BitString s0 = BitString::parse("01");
  BitString s1 = BitString::parse("10");
  std::uint8_t c = 0;
  std::size_t n = 8;
};

/// Sender scripts: "honest", "fixed-state" (x = 0^n in the computational
/// basis), "wrong-basis" (announces the complement of its bases),
/// "check-all" (asks to see every position). Receiver scripts: "honest",
/// "swap-partition" (labels its partition for the other choice bit).
struct OtOptions {
  std::string sender = "honest";
  std::string receiver = "honest";
  BcRealization bc = BcRealization::ideal;
  CommitParams commit;
  std::size_t memory_qubits = kMaxRegisterQubits;
};

/// Bob outputs the recovered string or "abort"; Alice has no output.
Transcript run_ot_protocol(const OtInputs& in, const OtOptions& opts, std::uint64_t seed);

/// ℓ-bit hash: bit j is ⟨r_j, y⟩ with y zero outside `positions`.
BitString restricted_hash(const std::vector<BitString>& f, const BitString& y, const std::vector<std::size_t>& positions);

/// Ideal OT driven by the simulator for a corrupted sender: the simulator
/// keeps Bob's qubits, measures on demand when Alice asks to see a
/// position, answers with a random partition and extracts (s0, s1).
Transcript run_ot_sender_simulation(const OtInputs& in, const OtOptions& opts, std::uint64_t seed);

struct ExtractionRecord {
  BitString committed;  // bases the receiver script actually committed to
  BitString extracted;
  std::uint8_t script_choice = 0;  // the choice bit the script can decode
  std::uint8_t extracted_choice = 0;
  bool reached = false;  // false if the run aborted before the partition
};

/// Ideal OT driven by the simulator for a corrupted receiver: the committed
/// bases are extracted from the commitments and the effective choice bit is
/// read off the partition.
Transcript run_ot_receiver_simulation(const OtInputs& in, const OtOptions& opts, std::uint64_t seed,
                                      ExtractionRecord* record = nullptr);

enum class Corruption { sender, receiver };
Corruption corruption_from_string(const std::string& name);

struct DistributionComparison {
  std::map<std::string, std::size_t> real;
  std::map<std::string, std::size_t> ideal;
  std::size_t runs = 0;
  double max_sigmas = 0.0;  // largest |difference| over its pooled σ
  bool pass = false;
};

/// Frequencies agree per outcome within 3σ of the pooled binomial error.
DistributionComparison compare_distributions(const std::map<std::string, std::size_t>& real,
                                             const std::map<std::string, std::size_t>& ideal, std::size_t runs);

struct SimulatorDemo {
  Corruption corruption = Corruption::sender;
  std::string script;
  DistributionComparison outputs;
  std::size_t extraction_checks = 0;
  std::size_t extraction_matches = 0;
  bool pass = false;
};

/// `runs` environment draws of (s0, s1, c), each executed in the real
/// protocol against the script and in the ideal world through the simulator.
SimulatorDemo run_simulator_demo(Corruption corruption, const std::string& script, std::size_t runs,
                                 std::uint64_t seed, const OtOptions& base = {}, std::size_t n = 8,
                                 std::size_t ell = 2);

struct OtCompleteness {
  std::size_t runs = 0;
  std::size_t aborts = 0;
  std::size_t non_aborting = 0;
  std::size_t correct = 0;
  double abort_frequency = 0.0;
  double abort_exact = 0.0;
  double abort_sigma = 0.0;
  bool pass = false;
};

/// Honest OT until `target` non-aborting runs have been collected.
OtCompleteness ot_completeness(std::size_t n, std::size_t target, std::uint64_t seed, BcRealization bc);

struct FunctionalityRow {
  std::uint8_t x = 0, c = 0;
  std::uint8_t sender_learns = 0;
  std::optional<std::uint8_t> receiver_gets;
  bool matches = false;
};

/// All four (x, c) inputs of the one-bit cut-and-choose functionality.
std::vector<FunctionalityRow> onecc_table();

Json demo_to_json(const SimulatorDemo& d);
Json completeness_to_json(const OtCompleteness& c);

struct ScenarioResult {
  Json summary;
  std::vector<Transcript> transcripts;
  bool pass = false;
};

/// {"protocol": "2cc" | "ot" | "1cc-table" | "simulator", "inputs": {...},
///  "adversary": "...", "corruption": "sender", "bc": "ideal", "runs": 1, "seed": 0}
ScenarioResult run_scenario(const Json& scenario);

}  // namespace qadapt::uc
