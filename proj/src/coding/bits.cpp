#include "qadapt/coding/bits.hpp"

#include <cmath>

#include "qadapt/core/error.hpp"

namespace qadapt::coding {

BitString::BitString(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  for (auto& b : bits_) {
    if (b > 1) throw InputError("bit values must be 0 or 1");
  }
}

BitString BitString::parse(const std::string& text) {
  std::vector<std::uint8_t> bits;
  for (char c : text) {
    if (c != '0' && c != '1') throw InputError("bit string may only contain '0' and '1': " + text);
    bits.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return BitString(std::move(bits));
}

BitString BitString::from_index(std::uint64_t value, std::size_t n) {
  if (n > 64) throw InputError("bit string index form supports at most 64 bits");
  BitString out(n);
  for (std::size_t i = 0; i < n; ++i) out.bits_[i] = (value >> (n - 1 - i)) & 1u;
  return out;
}

std::uint64_t BitString::to_index() const {
  if (size() > 64) throw InputError("bit string too long for an index");
  std::uint64_t v = 0;
  for (auto b : bits_) v = (v << 1) | b;
  return v;
}

std::string BitString::str() const {
  std::string s;
  for (auto b : bits_) s.push_back(static_cast<char>('0' + b));
  return s;
}

std::size_t BitString::weight() const {
  std::size_t w = 0;
  for (auto b : bits_) w += b;
  return w;
}

BitString BitString::operator^(const BitString& other) const {
  if (size() != other.size()) throw InputError("xor of bit strings with different lengths");
  BitString out(size());
  for (std::size_t i = 0; i < size(); ++i) out.bits_[i] = bits_[i] ^ other.bits_[i];
  return out;
}

std::size_t hamming_distance(const BitString& a, const BitString& b) { return (a ^ b).weight(); }

std::uint8_t inner_product(const BitString& a, const BitString& b) {
  if (a.size() != b.size()) throw InputError("inner product of bit strings with different lengths");
  std::uint8_t acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) acc ^= a[i] & b[i];
  return acc;
}

double binary_entropy(double delta) {
  if (!(delta >= 0.0 && delta <= 1.0)) throw InputError("binary entropy needs δ in [0, 1]");
  if (delta == 0.0 || delta == 1.0) return 0.0;
  return -delta * std::log2(delta) - (1.0 - delta) * std::log2(1.0 - delta);
}

std::size_t ball_radius(std::size_t n, double delta) {
  if (delta < 0.0) throw InputError("ball radius fraction must be non-negative");
  const double r = std::floor(delta * static_cast<double>(n) + 1e-9);
  return std::min(static_cast<std::size_t>(r), n);
}

std::uint64_t ball_size(std::size_t n, std::size_t radius) {
  std::uint64_t total = 0;
  std::uint64_t binom = 1;
  for (std::size_t w = 0; w <= std::min(radius, n); ++w) {
    total += binom;
    binom = binom * (n - w) / (w + 1);
  }
  return total;
}

std::vector<BitString> hamming_ball(const BitString& center, double delta) {
  const std::size_t n = center.size();
  if (n > 24) throw InputError("Hamming ball enumeration is capped at n = 24");
  const std::size_t t = ball_radius(n, delta);
  std::vector<BitString> out;
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) {
    auto z = BitString::from_index(v, n);
    if (hamming_distance(z, center) <= t) out.push_back(std::move(z));
  }
  return out;
}

}  // namespace qadapt::coding
