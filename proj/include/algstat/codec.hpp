#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "algstat/bitstring.hpp"

namespace algstat {

// bar(x) = 1^l(x) 0 x; length 2 l(x) + 1.
BitString bar_encode(const BitString& x);
// x' = bar(b(l(x))) ‖ x; length l(x) + 2 l(b(l(x))) + 1.
BitString self_delimit(const BitString& x);
// <x,y> = x' ‖ y
BitString pair_encode(const BitString& x, const BitString& y);
// Natural number n as bar(b(n)).
BitString nat_encode(std::uint64_t n);

// Closed-form code lengths.
std::size_t nat_code_length(std::uint64_t n);
std::size_t self_delimit_length(std::size_t len);

// Sequential decoder for the codes above. Throws FormatError on malformed
// or truncated input.
class BitReader {
 public:
  explicit BitReader(const BitString& source, std::size_t pos = 0) : src_(source), pos_(pos) {}

  bool read_bit();
  BitString read_bits(std::size_t n);
  BitString read_bar();
  std::uint64_t read_nat();
  BitString read_self_delimited();

  std::size_t pos() const { return pos_; }
  bool at_end() const { return pos_ == src_.size(); }
  std::size_t remaining() const { return src_.size() - pos_; }

 private:
  const BitString& src_;
  std::size_t pos_;
};

// Inverse of pair_encode; throws FormatError if `code` is not a pairing.
std::pair<BitString, BitString> pair_decode(const BitString& code);

// Every string of length <= max_len in canonical order.
std::vector<BitString> strings_up_to(std::size_t max_len);
// Every string of length exactly n in canonical order.
std::vector<BitString> strings_of_length(std::size_t n);

}  // namespace algstat
