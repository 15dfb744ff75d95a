#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace algstat {

// A finite binary string. Stored as ASCII '0'/'1' so that it can be hashed,
// printed and compared without conversion.
//
// Ordering is canonical: shorter strings first, then lexicographic. This is
// the order of the natural-number correspondence b(0)=ε, b(1)="0",
// b(2)="1", b(3)="00", ...
class BitString {
 public:
  BitString() = default;

  // Accepts '0'/'1' text; "-" and "" both denote the empty string.
  // Throws std::invalid_argument on any other character.
  static BitString parse(std::string_view text);

  // n-th string in canonical order: binary of n+1 without its leading 1.
  static BitString from_nat(std::uint64_t n);
  static BitString zeros(std::size_t n) { return BitString(std::string(n, '0')); }

  // Inverse of from_nat. Throws std::overflow_error above 63 bits.
  std::uint64_t to_nat() const;

  std::size_t size() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }
  bool operator[](std::size_t i) const { return bits_[i] == '1'; }

  void push_back(bool bit) { bits_.push_back(bit ? '1' : '0'); }
  void pop_back() { bits_.pop_back(); }
  void append(const BitString& other) { bits_ += other.bits_; }
  void append_repeat(bool bit, std::size_t count) {
    bits_.append(count, bit ? '1' : '0');
  }
  void clear() { bits_.clear(); }

  BitString substr(std::size_t pos, std::size_t len = std::string::npos) const {
    return BitString(bits_.substr(pos, len));
  }
  bool starts_with(const BitString& prefix) const {
    return std::string_view(bits_).starts_with(prefix.bits_);
  }
  std::size_t weight() const;

  // buffer := buffer ‖ complement(buffer)
  void append_complement();
  // buffer := buffer ‖ buffer
  void append_self() { bits_ += bits_; }

  const std::string& str() const { return bits_; }
  // Like str() but renders ε as "-", for whitespace-separated formats.
  std::string token() const { return bits_.empty() ? std::string("-") : bits_; }

  friend bool operator==(const BitString& a, const BitString& b) = default;
  friend std::strong_ordering operator<=>(const BitString& a, const BitString& b) {
    if (a.bits_.size() != b.bits_.size()) return a.bits_.size() <=> b.bits_.size();
    return a.bits_.compare(b.bits_) <=> 0;
  }

  friend BitString operator+(BitString a, const BitString& b) {
    a.append(b);
    return a;
  }

 private:
  explicit BitString(std::string bits) : bits_(std::move(bits)) {}

  std::string bits_;
};

struct BitStringHash {
  std::size_t operator()(const BitString& s) const noexcept {
    return std::hash<std::string>{}(s.str());
  }
};

// Shorthand for literals in code and tests.
inline BitString bits(std::string_view text) { return BitString::parse(text); }

}  // namespace algstat
