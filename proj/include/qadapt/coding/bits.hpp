#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qadapt::coding {

/// Bit string with position 0 first. `from_index` reads position 0 as the
/// most significant bit, so numeric order of indices is lexicographic order.
class BitString {
 public:
  BitString() = default;
  explicit BitString(std::size_t n) : bits_(n, 0) {}
  explicit BitString(std::vector<std::uint8_t> bits);

  static BitString parse(const std::string& text);
  static BitString from_index(std::uint64_t value, std::size_t n);

  std::size_t size() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }
  std::uint8_t operator[](std::size_t i) const { return bits_[i]; }
  void set(std::size_t i, std::uint8_t v) { bits_[i] = v & 1; }
  void flip(std::size_t i) { bits_[i] ^= 1; }

  std::uint64_t to_index() const;
  std::string str() const;
  std::size_t weight() const;

  BitString operator^(const BitString& other) const;
  bool operator==(const BitString&) const = default;
  auto operator<=>(const BitString&) const = default;

  const std::vector<std::uint8_t>& bits() const { return bits_; }

 private:
  std::vector<std::uint8_t> bits_;
};

std::size_t hamming_distance(const BitString& a, const BitString& b);
/// ⟨a, b⟩ mod 2
std::uint8_t inner_product(const BitString& a, const BitString& b);

/// Binary entropy h(δ) in bits; h(0) = h(1) = 0.
double binary_entropy(double delta);

/// Largest radius t with t ≤ δ·n (a small slack absorbs rounding of δ = k/n).
std::size_t ball_radius(std::size_t n, double delta);
std::uint64_t ball_size(std::size_t n, std::size_t radius);
/// All strings within Hamming distance ⌊δn⌋ of `center`, in lexicographic order.
std::vector<BitString> hamming_ball(const BitString& center, double delta);

}  // namespace qadapt::coding
