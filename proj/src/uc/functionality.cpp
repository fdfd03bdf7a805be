#include "qadapt/uc/functionality.hpp"

#include "qadapt/core/error.hpp"

namespace qadapt::uc {

namespace {

void note(Transcript* log, const std::string& from, const std::string& to, const std::string& kind, Json payload) {
  if (log) log->send(from, to, kind, std::move(payload));
}

}  // namespace

CutAndChoose::CutAndChoose(std::size_t bits, std::string sender, std::string receiver, Transcript* log)
    : bits_(bits), sender_(std::move(sender)), receiver_(std::move(receiver)), log_(log) {
  if (bits == 0) throw InputError("cut-and-choose needs at least one bit");
}

void CutAndChoose::input_x(const BitString& x) {
  if (x_) throw InputError("cut-and-choose x already given");
  if (x.size() != bits_) throw InputError("cut-and-choose x has the wrong length");
  x_ = x;
  note(log_, sender_, "CC", "x", x.str());
  deliver();
}

void CutAndChoose::input_c(std::uint8_t c) {
  if (c_) throw InputError("cut-and-choose c already given");
  if (c > 1) throw InputError("cut-and-choose c must be a bit");
  c_ = c;
  note(log_, receiver_, "CC", "c", c);
  deliver();
}

void CutAndChoose::deliver() {
  if (!done()) return;
  note(log_, "CC", sender_, "c", *c_);
  note(log_, "CC", receiver_, "w", *c_ ? Json(x_->str()) : Json());
}

std::uint8_t CutAndChoose::sender_output() const {
  if (!done()) throw InputError("cut-and-choose is still waiting for inputs");
  return *c_;
}

std::optional<BitString> CutAndChoose::receiver_output() const {
  if (!done()) throw InputError("cut-and-choose is still waiting for inputs");
  if (*c_ == 0) return std::nullopt;
  return *x_;
}

BitCommitment::BitCommitment(std::string committer, std::string receiver, Transcript* log)
    : committer_(std::move(committer)), receiver_(std::move(receiver)), log_(log) {}

void BitCommitment::commit(std::uint8_t b) {
  if (b_) throw InputError("already committed");
  b_ = b & 1;
  note(log_, committer_, "BC", "commit", *b_);
  note(log_, "BC", receiver_, "committed", nullptr);
}

std::uint8_t BitCommitment::open() {
  if (!b_ || aborted_) throw InputError("nothing to open");
  opened_ = true;
  note(log_, committer_, "BC", "open", nullptr);
  note(log_, "BC", receiver_, "opened", *b_);
  return *b_;
}

void BitCommitment::abort() {
  aborted_ = true;
  note(log_, committer_, "BC", "abort", nullptr);
}

TwoCcPrime::TwoCcPrime(std::string sender, std::string receiver, Transcript* log)
    : sender_(std::move(sender)), receiver_(std::move(receiver)), log_(log) {}

void TwoCcPrime::input_sender(std::uint8_t s0, std::uint8_t s1) {
  if (s_) throw InputError("2CC′ sender input already given");
  s_ = std::array<std::uint8_t, 2>{std::uint8_t(s0 & 1), std::uint8_t(s1 & 1)};
  note(log_, sender_, "2CC'", "s", {s0, s1});
  resolve();
}

void TwoCcPrime::input_receiver(std::uint8_t c) {
  if (c_) throw InputError("2CC′ receiver input already given");
  c_ = c & 1;
  note(log_, receiver_, "2CC'", "c", *c_);
  resolve();
}

std::optional<std::uint8_t> TwoCcPrime::sender_learns() const {
  if (!s_ || !c_) return std::nullopt;
  return *c_;
}

void TwoCcPrime::resolve() {
  if (!s_ || !c_) return;
  note(log_, "2CC'", sender_, "c", *c_);
  if (*c_ == 0) {
    result_ = Result::bottom;
    note(log_, "2CC'", receiver_, "w", nullptr);
  }
}

void TwoCcPrime::respond(bool proceed) {
  if (result_ != Result::pending || !sender_learns()) throw InputError("2CC′ is not waiting for a response");
  note(log_, sender_, "2CC'", proceed ? "continue" : "abort", nullptr);
  result_ = proceed ? Result::delivered : Result::aborted;
  note(log_, "2CC'", receiver_, "w", proceed ? Json{(*s_)[0], (*s_)[1]} : Json("abort"));
}

std::array<std::uint8_t, 2> TwoCcPrime::receiver_output() const {
  if (result_ != Result::delivered) throw InputError("2CC′ delivered nothing");
  return *s_;
}

ObliviousTransfer::ObliviousTransfer(std::string sender, std::string receiver, Transcript* log)
    : sender_(std::move(sender)), receiver_(std::move(receiver)), log_(log) {}

void ObliviousTransfer::input_sender(const BitString& s0, const BitString& s1) {
  if (s_ || aborted_) throw InputError("OT sender input already given");
  if (s0.size() != s1.size()) throw InputError("OT strings must have equal length");
  s_ = std::array<BitString, 2>{s0, s1};
  note(log_, sender_, "OT", "s", {s0.str(), s1.str()});
  deliver();
}

void ObliviousTransfer::input_receiver(std::uint8_t c) {
  if (c_) throw InputError("OT receiver input already given");
  c_ = c & 1;
  note(log_, receiver_, "OT", "c", *c_);
  deliver();
}

void ObliviousTransfer::abort() {
  aborted_ = true;
  note(log_, sender_, "OT", "abort", nullptr);
  note(log_, "OT", receiver_, "w", "abort");
}

void ObliviousTransfer::deliver() {
  if (aborted_ || !s_ || !c_) return;
  note(log_, "OT", receiver_, "w", (*s_)[*c_].str());
}

BitString ObliviousTransfer::receiver_output() const {
  if (aborted_ || !s_ || !c_) throw InputError("OT delivered nothing");
  return (*s_)[*c_];
}

}  // namespace qadapt::uc
