#include "algstat/bitstring.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace algstat {

BitString BitString::parse(std::string_view text) {
  if (text == "-") return {};
  for (char c : text) {
    if (c != '0' && c != '1') {
      throw std::invalid_argument("not a bit string: '" + std::string(text) + "'");
    }
  }
  return BitString(std::string(text));
}

BitString BitString::from_nat(std::uint64_t n) {
  if (n == UINT64_MAX) throw std::overflow_error("from_nat: argument too large");
  const std::uint64_t v = n + 1;
  const int width = std::bit_width(v) - 1;
  std::string out(width, '0');
  for (int i = 0; i < width; ++i) {
    if ((v >> (width - 1 - i)) & 1U) out[i] = '1';
  }
  return BitString(std::move(out));
}

std::uint64_t BitString::to_nat() const {
  if (bits_.size() > 62) throw std::overflow_error("to_nat: string longer than 62 bits");
  std::uint64_t v = 1;
  for (char c : bits_) v = (v << 1) | static_cast<std::uint64_t>(c == '1');
  return v - 1;
}

std::size_t BitString::weight() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), '1'));
}

void BitString::append_complement() {
  const std::size_t n = bits_.size();
  bits_.reserve(2 * n);
  for (std::size_t i = 0; i < n; ++i) bits_.push_back(bits_[i] == '1' ? '0' : '1');
}

}  // namespace algstat
