#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace algstat {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// Malformed input: table files, model syntax, codes that do not decode.
struct FormatError : Error {
  using Error::Error;
};
struct VersionError : Error {
  using Error::Error;
};
// A configured resource cap (entries, set size, model count) was hit.
struct CapExceeded : Error {
  using Error::Error;
};
// A string needed by a query has no program within the table's length cap.
struct AbsentError : Error {
  using Error::Error;
};

// Exact dyadic rational num / 2^exp, kept normalized (num odd, or 0/2^0).
class Dyadic {
 public:
  Dyadic() = default;
  Dyadic(std::uint64_t num, unsigned exp);

  std::uint64_t num() const { return num_; }
  unsigned exp() const { return exp_; }

  Dyadic& operator+=(const Dyadic& other);
  friend Dyadic operator+(Dyadic a, const Dyadic& b) { return a += b; }
  friend bool operator==(const Dyadic&, const Dyadic&) = default;
  friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b);

  static Dyadic pow2(int e);  // 2^e; e may be negative (down to -62) or up to 62

  double to_double() const;
  // "num/2^exp"
  std::string str() const;
  static Dyadic parse(std::string_view text);

 private:
  std::uint64_t num_ = 0;
  unsigned exp_ = 0;
};

// Smallest l >= 0 with 2^-l <= p, i.e. ceil(-log2 p). p must be in (0, 1].
int ceil_neglog2(const Rational& p);
// Smallest l >= 0 with 2^l >= n, i.e. ceil(log2 n). n must be >= 1.
int ceil_log2(const BigInt& n);
double log2(const BigInt& n);
double log2(const Rational& q);

// "a/b" or "a"; throws FormatError.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);

BigInt binomial(unsigned n, unsigned k);

}  // namespace algstat
