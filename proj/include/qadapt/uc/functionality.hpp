#pragma once

#include <array>
#include <optional>

#include "qadapt/uc/transcript.hpp"

namespace qadapt::uc {

/// Cut-and-choose: the sender inputs x, the receiver inputs c; the receiver
/// gets x if c = 1 and ⊥ otherwise, and the sender learns c.
class CutAndChoose {
 public:
  CutAndChoose(std::size_t bits, std::string sender, std::string receiver, Transcript* log = nullptr);

  void input_x(const BitString& x);
  void input_c(std::uint8_t c);
  bool done() const { return x_.has_value() && c_.has_value(); }
  std::uint8_t sender_output() const;
  std::optional<BitString> receiver_output() const;

 private:
  void deliver();

  std::size_t bits_;
  std::string sender_, receiver_;
  Transcript* log_;
  std::optional<BitString> x_;
  std::optional<std::uint8_t> c_;
};

class BitCommitment {
 public:
  BitCommitment(std::string committer, std::string receiver, Transcript* log = nullptr);

  void commit(std::uint8_t b);
  bool committed() const { return b_.has_value(); }
  /// Receiver learns the committed bit.
  std::uint8_t open();
  void abort();
  bool aborted() const { return aborted_; }

 private:
  std::string committer_, receiver_;
  Transcript* log_;
  std::optional<std::uint8_t> b_;
  bool opened_ = false;
  bool aborted_ = false;
};

/// Two-bit cut-and-choose where the sender may abort after seeing c = 1.
class TwoCcPrime {
 public:
  enum class Result { pending, bottom, delivered, aborted };

  TwoCcPrime(std::string sender, std::string receiver, Transcript* log = nullptr);

  void input_sender(std::uint8_t s0, std::uint8_t s1);
  void input_receiver(std::uint8_t c);
  /// c, once both inputs are in.
  std::optional<std::uint8_t> sender_learns() const;
  void respond(bool proceed);
  Result result() const { return result_; }
  std::array<std::uint8_t, 2> receiver_output() const;

 private:
  void resolve();

  std::string sender_, receiver_;
  Transcript* log_;
  std::optional<std::array<std::uint8_t, 2>> s_;
  std::optional<std::uint8_t> c_;
  Result result_ = Result::pending;
};

/// One-out-of-two string OT, with an abort input for a corrupted sender.
class ObliviousTransfer {
 public:
  ObliviousTransfer(std::string sender, std::string receiver, Transcript* log = nullptr);

  void input_sender(const BitString& s0, const BitString& s1);
  void input_receiver(std::uint8_t c);
  void abort();
  bool done() const { return aborted_ || (s_.has_value() && c_.has_value()); }
  bool aborted() const { return aborted_; }
  BitString receiver_output() const;

 private:
  void deliver();

  std::string sender_, receiver_;
  Transcript* log_;
  std::optional<std::array<BitString, 2>> s_;
  std::optional<std::uint8_t> c_;
  bool aborted_ = false;
};

}  // namespace qadapt::uc
