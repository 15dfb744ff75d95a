#include "algstat/codec.hpp"

#include <bit>

#include "algstat/numeric.hpp"

namespace algstat {

BitString bar_encode(const BitString& x) {
  BitString out;
  out.append_repeat(true, x.size());
  out.push_back(false);
  out.append(x);
  return out;
}

BitString self_delimit(const BitString& x) { return bar_encode(BitString::from_nat(x.size())) + x; }

BitString pair_encode(const BitString& x, const BitString& y) { return self_delimit(x) + y; }

BitString nat_encode(std::uint64_t n) { return bar_encode(BitString::from_nat(n)); }

std::size_t nat_code_length(std::uint64_t n) {
  return 2 * static_cast<std::size_t>(std::bit_width(n + 1) - 1) + 1;
}

std::size_t self_delimit_length(std::size_t len) { return len + nat_code_length(len); }

bool BitReader::read_bit() {
  if (pos_ >= src_.size()) throw FormatError("code truncated");
  return src_[pos_++];
}

BitString BitReader::read_bits(std::size_t n) {
  if (remaining() < n) throw FormatError("code truncated");
  BitString out = src_.substr(pos_, n);
  pos_ += n;
  return out;
}

BitString BitReader::read_bar() {
  std::size_t n = 0;
  while (read_bit()) ++n;
  return read_bits(n);
}

std::uint64_t BitReader::read_nat() {
  const BitString b = read_bar();
  if (b.size() > 62) throw FormatError("natural number too large");
  return b.to_nat();
}

BitString BitReader::read_self_delimited() {
  const std::uint64_t n = read_nat();
  if (n > remaining()) throw FormatError("code truncated");
  return read_bits(static_cast<std::size_t>(n));
}

std::pair<BitString, BitString> pair_decode(const BitString& code) {
  BitReader r(code);
  BitString x = r.read_self_delimited();
  return {std::move(x), code.substr(r.pos())};
}

std::vector<BitString> strings_of_length(std::size_t n) {
  if (n > 24) throw CapExceeded("strings_of_length: n too large");
  std::vector<BitString> out;
  out.reserve(std::size_t{1} << n);
  const std::uint64_t first = (std::uint64_t{1} << n) - 1;
  for (std::uint64_t i = 0; i < (std::uint64_t{1} << n); ++i) out.push_back(BitString::from_nat(first + i));
  return out;
}

std::vector<BitString> strings_up_to(std::size_t max_len) {
  if (max_len > 24) throw CapExceeded("strings_up_to: max_len too large");
  std::vector<BitString> out;
  const std::uint64_t count = (std::uint64_t{2} << max_len) - 1;
  out.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) out.push_back(BitString::from_nat(i));
  return out;
}

}  // namespace algstat
