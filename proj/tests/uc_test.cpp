#include <gtest/gtest.h>

#include <set>

#include "qadapt/core/error.hpp"
#include "qadapt/protocol/onecc.hpp"
#include "qadapt/uc/protocols.hpp"

using namespace qadapt;
using namespace qadapt::uc;

namespace {

Json bob(const Transcript& t) { return t.output_of("Bob"); }

// honest commit phases abort when the receiver happens to check more than 2qN positions
bool sampling_abort(const Transcript& t) {
  for (const auto& e : t.events()) {
    if (e.kind == "abort" && e.payload == "too many positions checked") return true;
  }
  return false;
}

const Event* find_event(const Transcript& t, const std::string& kind) {
  for (const auto& e : t.events()) {
    if (e.kind == kind) return &e;
  }
  return nullptr;
}

}  // namespace

TEST(CutAndChoose, TableIsExhaustivelyCorrect) {
  const auto rows = onecc_table();
  ASSERT_EQ(rows.size(), 4u);
  for (const auto& r : rows) {
    EXPECT_TRUE(r.matches);
    EXPECT_EQ(r.sender_learns, r.c);
    if (r.c == 0) {
      EXPECT_FALSE(r.receiver_gets.has_value());
    } else {
      EXPECT_EQ(r.receiver_gets, r.x);
    }
  }
}

TEST(CutAndChoose, Ports) {
  Transcript log;
  CutAndChoose cc(2, "A", "B", &log);
  EXPECT_THROW(cc.sender_output(), InputError);
  EXPECT_THROW(cc.input_x(BitString::parse("1")), InputError);
  cc.input_c(1);
  EXPECT_THROW(cc.input_c(0), InputError);
  cc.input_x(BitString::parse("10"));
  EXPECT_EQ(cc.receiver_output()->str(), "10");
  EXPECT_EQ(log.events().back().payload, "10");
}

TEST(TwoCcPrime, AbortBranch) {
  TwoCcPrime f("A", "B");
  f.input_sender(1, 0);
  EXPECT_FALSE(f.sender_learns());
  f.input_receiver(1);
  EXPECT_EQ(f.sender_learns(), 1);
  EXPECT_EQ(f.result(), TwoCcPrime::Result::pending);
  f.respond(false);
  EXPECT_EQ(f.result(), TwoCcPrime::Result::aborted);
  EXPECT_THROW(f.receiver_output(), InputError);
  TwoCcPrime g("A", "B");
  g.input_receiver(0);
  g.input_sender(1, 1);
  EXPECT_EQ(g.result(), TwoCcPrime::Result::bottom);
  EXPECT_THROW(g.respond(true), InputError);
}

TEST(IdealOt, DeliversChosenString) {
  ObliviousTransfer ot("A", "B");
  ot.input_receiver(1);
  EXPECT_FALSE(ot.done());
  ot.input_sender(BitString::parse("00"), BitString::parse("11"));
  EXPECT_EQ(ot.receiver_output().str(), "11");
  EXPECT_THROW(ot.input_sender(BitString::parse("0"), BitString::parse("01")), InputError);
}

TEST(QubitRegister, BornRule) {
  core::Rng rng = core::make_rng(1);
  int ones = 0;
  for (int t = 0; t < 2000; ++t) {
    auto reg = QubitRegister::bb84(BitString::parse("101"), BitString::parse("011"));
    EXPECT_EQ(reg.measure(0, 0, rng), 1);
    EXPECT_EQ(reg.measure(2, 1, rng), 1);
    const auto b = reg.measure(1, 0, rng);
    ones += b;
    EXPECT_EQ(reg.measure(1, 0, rng), b);
  }
  EXPECT_NEAR(ones / 2000.0, 0.5, 3 * std::sqrt(0.25 / 2000));
  EXPECT_THROW(QubitRegister::bb84(BitString(11), BitString(11)), InputError);
}

TEST(OneCcCommitmentRun, HonestCommitRevealAndExtraction) {
  std::size_t sampling_aborts = 0;
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    Transcript log;
    auto rng = core::make_rng(seed);
    const std::uint8_t b = seed % 2;
    OneCcCommitment com("Alice", "Bob", {}, log, rng);
    if (!com.commit(b)) {
      EXPECT_TRUE(sampling_abort(log));
      ++sampling_aborts;
      continue;
    }
    EXPECT_EQ(protocol::extractor(com.extractor_view(), com.code()), b);
    ASSERT_TRUE(com.reveal());
    EXPECT_EQ(com.received_bit(), b);
    EXPECT_FALSE(log.aborted_by());
  }
  EXPECT_LT(sampling_aborts, 12u);
}

TEST(OneCcCommitmentRun, WrongOpeningIsRejected) {
  Transcript log;
  auto rng = core::make_rng(3);
  OneCcCommitment com("Alice", "Bob", {10, 0.0, 0.8}, log, rng, "wrong-open");
  ASSERT_TRUE(com.commit(0));
  EXPECT_FALSE(com.reveal());
  EXPECT_EQ(log.aborted_by(), "Bob");
  EXPECT_THROW(OneCcCommitment("A", "B", {11, 0.1, 0.8}, log, rng), InputError);
}

TEST(TwoCc, FunctionalityExamples) {
  TwoCcOptions opts;
  auto t = run_2cc_protocol({0, 1, 1}, opts, 1);
  EXPECT_EQ(bob(t), (Json{0, 1}));
  t = run_2cc_protocol({1, 1, 0}, opts, 1);
  EXPECT_TRUE(bob(t).is_null());
  EXPECT_EQ(t.output_of("Alice"), 0);
  opts.sender = "refuse-open";
  t = run_2cc_protocol({0, 1, 1}, opts, 1);
  EXPECT_EQ(bob(t), "abort");
  opts.sender = "sneaky";
  EXPECT_THROW(run_2cc_protocol({0, 1, 1}, opts, 1), InputError);
}

TEST(TwoCc, MatchesIdealWithEitherCommitment) {
  for (auto bc : {BcRealization::ideal, BcRealization::onecc}) {
    for (const std::string sender : {"honest", "refuse-open", "wrong-open"}) {
      TwoCcOptions opts;
      opts.sender = sender;
      opts.bc = bc;
      for (int v = 0; v < 8; ++v) {
        const TwoCcInputs in{std::uint8_t(v & 1), std::uint8_t((v >> 1) & 1), std::uint8_t(v >> 2)};
        const auto t = run_2cc_protocol(in, opts, 10 + v);
        if (sampling_abort(t)) continue;
        EXPECT_EQ(t.outputs(), run_2cc_ideal(in, opts).outputs()) << to_string(bc) << " " << sender << " " << v;
      }
    }
  }
}

TEST(Transcript, ReplayIsBitIdentical) {
  OtInputs in;
  OtOptions opts;
  opts.bc = BcRealization::onecc;
  const auto a = run_ot_protocol(in, opts, 42);
  const auto b = run_ot_protocol(in, opts, 42);
  EXPECT_EQ(a.to_jsonl(), b.to_jsonl());
  EXPECT_NE(a.to_jsonl(), run_ot_protocol(in, opts, 43).to_jsonl());
  const auto parsed = Transcript::from_jsonl(a.to_jsonl());
  EXPECT_EQ(parsed, a);
  EXPECT_EQ(parsed.to_jsonl(), a.to_jsonl());
  EXPECT_THROW(Transcript::from_jsonl("{\"step\":0}\n"), InputError);
}

TEST(Ot, HonestRunsOutputChosenString) {
  std::size_t completed = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    OtInputs in;
    in.c = seed % 2;
    const auto t = run_ot_protocol(in, {}, seed);
    if (bob(t) == "abort") {
      EXPECT_EQ(t.aborted_by(), "Bob");
      continue;
    }
    ++completed;
    EXPECT_EQ(bob(t), (in.c ? in.s1 : in.s0).str());
  }
  EXPECT_GT(completed, 100u);
}

TEST(Ot, PartitionSplitsUncheckedPositions) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto t = run_ot_protocol({}, {}, seed);
    const Event* bases = find_event(t, "bases");
    const Event* part = find_event(t, "partition");
    if (!bases) continue;
    ASSERT_NE(part, nullptr);
    std::set<std::size_t> all;
    for (const auto& side : part->payload) {
      for (const auto& i : side) EXPECT_TRUE(all.insert(i.get<std::size_t>()).second);
    }
    EXPECT_EQ(all.size(), bases->payload.get<std::string>().size());
  }
}

TEST(Ot, AbortFrequencyMatchesBinomial) {
  const auto c = ot_completeness(8, 300, 5, BcRealization::ideal);
  EXPECT_EQ(c.correct, c.non_aborting);
  EXPECT_NEAR(c.abort_exact, 93.0 / 256, 1e-12);
  EXPECT_TRUE(c.pass) << c.abort_frequency;
}

TEST(Ot, CheckAllSenderMakesBobAbort) {
  OtOptions opts;
  opts.sender = "check-all";
  EXPECT_EQ(bob(run_ot_protocol({}, opts, 1)), "abort");
  OtInputs big;
  big.n = 11;
  EXPECT_THROW(run_ot_protocol(big, {}, 1), InputError);
}

TEST(RestrictedHash, IgnoresPositionsOutside) {
  const std::vector<BitString> f{BitString::parse("1111"), BitString::parse("0101")};
  EXPECT_EQ(restricted_hash(f, BitString::parse("1011"), {0, 1}).str(), "10");
  EXPECT_EQ(restricted_hash(f, BitString::parse("1011"), {}).str(), "00");
}

TEST(Simulator, CorruptedSenderScripts) {
  for (const std::string script : {"honest", "fixed-state", "wrong-basis"}) {
    const auto d = run_simulator_demo(Corruption::sender, script, 300, 9);
    EXPECT_TRUE(d.pass) << script << " " << d.outputs.max_sigmas;
  }
}

TEST(Simulator, CorruptedReceiverExtraction) {
  OtOptions base;
  base.bc = BcRealization::onecc;
  for (const std::string script : {"honest", "swap-partition"}) {
    const auto d = run_simulator_demo(Corruption::receiver, script, 150, 11, base);
    EXPECT_TRUE(d.pass) << script;
    EXPECT_GT(d.extraction_checks, 50u);
    EXPECT_EQ(d.extraction_matches, d.extraction_checks);
  }
}

TEST(Simulator, MemoryConfigurationIsEnforced) {
  OtOptions base;
  base.memory_qubits = 4;
  EXPECT_THROW(run_simulator_demo(Corruption::sender, "honest", 5, 1, base), InputError);
  EXPECT_THROW(run_simulator_demo(Corruption::sender, "nope", 5, 1), InputError);
}

TEST(Scenario, Dispatch) {
  EXPECT_TRUE(run_scenario({{"protocol", "1cc-table"}}).pass);
  const auto r = run_scenario({{"protocol", "2cc"}, {"inputs", {{"s0", 1}, {"s1", 0}, {"c", 1}}}, {"runs", 3}, {"bc", "onecc"}});
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.transcripts.size(), 3u);
  EXPECT_TRUE(run_scenario({{"protocol", "ot"}, {"runs", 20}}).pass);
  EXPECT_THROW(run_scenario({{"protocol", "teleport"}}), InputError);
  EXPECT_THROW(run_scenario({{"protocol", "2cc"}, {"inputs", {{"c", 2}}}}), InputError);
  EXPECT_THROW(run_scenario(Json::array()), InputError);
}
