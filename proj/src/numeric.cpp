#include "algstat/numeric.hpp"

#include <bit>
#include <charconv>
#include <cmath>

namespace algstat {

namespace {

using u128 = unsigned __int128;

}  // namespace

Dyadic::Dyadic(std::uint64_t num, unsigned exp) : num_(num), exp_(exp) {
  if (exp_ > 62) throw std::overflow_error("Dyadic exponent above 62");
  if (num_ == 0) {
    exp_ = 0;
    return;
  }
  while (exp_ > 0 && (num_ & 1U) == 0) {
    num_ >>= 1;
    --exp_;
  }
}

Dyadic Dyadic::pow2(int e) {
  if (e >= 0) {
    if (e > 62) throw std::overflow_error("Dyadic::pow2 above 2^62");
    return Dyadic(std::uint64_t{1} << e, 0);
  }
  return Dyadic(1, static_cast<unsigned>(-e));
}

Dyadic& Dyadic::operator+=(const Dyadic& other) {
  const unsigned e = std::max(exp_, other.exp_);
  const u128 a = static_cast<u128>(num_) << (e - exp_);
  const u128 b = static_cast<u128>(other.num_) << (e - other.exp_);
  const u128 sum = a + b;
  if (sum >> 64) throw std::overflow_error("Dyadic sum overflow");
  *this = Dyadic(static_cast<std::uint64_t>(sum), e);
  return *this;
}

std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
  const u128 lhs = static_cast<u128>(a.num_) << b.exp_;
  const u128 rhs = static_cast<u128>(b.num_) << a.exp_;
  return lhs <=> rhs;
}

double Dyadic::to_double() const { return std::ldexp(static_cast<double>(num_), -static_cast<int>(exp_)); }

std::string Dyadic::str() const { return std::to_string(num_) + "/2^" + std::to_string(exp_); }

Dyadic Dyadic::parse(std::string_view text) {
  const auto slash = text.find("/2^");
  if (slash == std::string_view::npos) throw FormatError("bad dyadic: " + std::string(text));
  std::uint64_t num = 0;
  unsigned exp = 0;
  const auto num_part = text.substr(0, slash);
  const auto exp_part = text.substr(slash + 3);
  auto r1 = std::from_chars(num_part.data(), num_part.data() + num_part.size(), num);
  auto r2 = std::from_chars(exp_part.data(), exp_part.data() + exp_part.size(), exp);
  if (r1.ec != std::errc{} || r1.ptr != num_part.data() + num_part.size() || r2.ec != std::errc{} ||
      r2.ptr != exp_part.data() + exp_part.size() || num_part.empty() || exp_part.empty() || exp > 62) {
    throw FormatError("bad dyadic: " + std::string(text));
  }
  Dyadic d(num, exp);
  if (d.num_ != num || d.exp_ != exp) throw FormatError("dyadic not normalized: " + std::string(text));
  return d;
}

int ceil_neglog2(const Rational& p) {
  if (p <= 0 || p > 1) throw std::domain_error("ceil_neglog2 needs p in (0,1]");
  const BigInt num = boost::multiprecision::numerator(p);
  const BigInt den = boost::multiprecision::denominator(p);
  // smallest l with num * 2^l >= den
  int l = 0;
  BigInt scaled = num;
  while (scaled < den) {
    scaled <<= 1;
    ++l;
  }
  return l;
}

int ceil_log2(const BigInt& n) {
  if (n < 1) throw std::domain_error("ceil_log2 needs n >= 1");
  if (n == 1) return 0;
  const BigInt m = n - 1;
  return static_cast<int>(boost::multiprecision::msb(m)) + 1;
}

double log2(const BigInt& n) {
  if (n <= 0) throw std::domain_error("log2 of non-positive integer");
  const unsigned top = boost::multiprecision::msb(n);
  if (top < 60) return std::log2(static_cast<double>(static_cast<std::uint64_t>(n)));
  const unsigned shift = top - 60;
  const auto head = static_cast<std::uint64_t>(n >> shift);
  return std::log2(static_cast<double>(head)) + shift;
}

double log2(const Rational& q) {
  if (q <= 0) throw std::domain_error("log2 of non-positive rational");
  return log2(boost::multiprecision::numerator(q)) - log2(boost::multiprecision::denominator(q));
}

Rational parse_rational(std::string_view text) {
  auto parse_int = [&](std::string_view part) {
    if (part.empty()) throw FormatError("bad rational: " + std::string(text));
    for (char c : part) {
      if (c < '0' || c > '9') throw FormatError("bad rational: " + std::string(text));
    }
    return BigInt(std::string(part));
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  const BigInt den = parse_int(text.substr(slash + 1));
  if (den == 0) throw FormatError("zero denominator: " + std::string(text));
  return Rational(parse_int(text.substr(0, slash)), den);
}

std::string to_string(const Rational& q) {
  return boost::multiprecision::numerator(q).str() + "/" + boost::multiprecision::denominator(q).str();
}

BigInt binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  BigInt r = 1;
  for (unsigned i = 1; i <= k; ++i) {
    r *= (n - k + i);
    r /= i;
  }
  return r;
}

}  // namespace algstat
