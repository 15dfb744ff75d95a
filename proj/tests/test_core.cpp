#include <random>
#include <set>

#include "doctest.h"

#include "algstat/bitstring.hpp"
#include "algstat/codec.hpp"
#include "algstat/numeric.hpp"

using namespace algstat;

namespace {

BitString random_bits(std::mt19937_64& rng, std::size_t max_len) {
  BitString s;
  const std::size_t n = rng() % (max_len + 1);
  for (std::size_t i = 0; i < n; ++i) s.push_back(rng() & 1);
  return s;
}

}  // namespace

TEST_CASE("bitstring parse and token") {
  CHECK(bits("-").empty());
  CHECK(bits("").empty());
  CHECK(bits("0110").str() == "0110");
  CHECK(BitString().token() == "-");
  CHECK_THROWS_AS(bits("012"), std::invalid_argument);
  CHECK(bits("10110100").weight() == 4);
}

TEST_CASE("natural number correspondence") {
  CHECK(BitString::from_nat(0) == bits(""));
  CHECK(BitString::from_nat(1) == bits("0"));
  CHECK(BitString::from_nat(2) == bits("1"));
  CHECK(BitString::from_nat(3) == bits("00"));
  CHECK(BitString::from_nat(6) == bits("11"));
  CHECK(BitString::from_nat(7) == bits("000"));
  for (std::uint64_t n = 0; n < 5000; ++n) {
    CHECK(BitString::from_nat(n).to_nat() == n);
    CHECK(BitString::from_nat(n) < BitString::from_nat(n + 1));
  }
}

TEST_CASE("canonical order is length then lexicographic") {
  CHECK(bits("1") < bits("00"));
  CHECK(bits("01") < bits("10"));
  CHECK(bits("") < bits("0"));
  const auto all = strings_up_to(6);
  CHECK(all.size() == 127);
  for (std::size_t i = 0; i < all.size(); ++i) CHECK(all[i].to_nat() == i);
  CHECK(strings_of_length(3).size() == 8);
}

TEST_CASE("bar, self-delimiting and pair codes") {
  CHECK(bar_encode(bits("")) == bits("0"));
  CHECK(bar_encode(bits("10")) == bits("11010"));
  CHECK(nat_encode(0) == bits("0"));
  CHECK(nat_encode(8) == bits("1110001"));
  CHECK(self_delimit(bits("")) == bits("0"));
  CHECK(pair_encode(bits(""), bits("")) == bits("0"));
  CHECK(pair_encode(bits("1011"), bits("")) == bits("11001") + bits("1011"));
}

TEST_CASE("code round trips up to length 64") {
  std::mt19937_64 rng(20261018);
  for (int trial = 0; trial < 2000; ++trial) {
    const BitString x = random_bits(rng, 64);
    const BitString y = random_bits(rng, 64);
    const BitString sd = self_delimit(x);
    CHECK(sd.size() == self_delimit_length(x.size()));
    // closed form: l(x) + 2 l(b(l(x))) + 1
    CHECK(sd.size() == x.size() + 2 * BitString::from_nat(x.size()).size() + 1);
    const BitString p = pair_encode(x, y);
    CHECK(p.size() == sd.size() + y.size());
    const auto [dx, dy] = pair_decode(p);
    CHECK(dx == x);
    CHECK(dy == y);
    const std::uint64_t n = rng() % 100000;
    CHECK(nat_encode(n).size() == nat_code_length(n));
    const BitString stream = nat_encode(n) + sd;
    BitReader r(stream);
    CHECK(r.read_nat() == n);
    CHECK(r.read_self_delimited() == x);
    CHECK(r.at_end());
  }
}

TEST_CASE("self-delimiting codes are prefix-free") {
  std::set<std::string> codes;
  for (const auto& x : strings_up_to(7)) codes.insert(self_delimit(x).str());
  std::string prev;
  for (const auto& c : codes) {
    if (!prev.empty()) CHECK_FALSE(c.starts_with(prev));
    prev = c;
  }
}

TEST_CASE("decoder rejects truncation") {
  CHECK_THROWS_AS(pair_decode(bits("1")), FormatError);
  CHECK_THROWS_AS(pair_decode(bits("1101")), FormatError);
  const BitString trunc = bits("1111");
  BitReader r(trunc);
  CHECK_THROWS_AS(r.read_bar(), FormatError);
}

TEST_CASE("dyadic arithmetic") {
  CHECK(Dyadic(2, 3) == Dyadic(1, 2));
  CHECK((Dyadic(1, 2) + Dyadic(1, 2)) == Dyadic(1, 1));
  CHECK(Dyadic(3, 2) < Dyadic(1, 0));
  CHECK(Dyadic::pow2(-3) == Dyadic(1, 3));
  CHECK(Dyadic::pow2(2).to_double() == 4.0);
  CHECK(Dyadic::parse(Dyadic(5, 7).str()) == Dyadic(5, 7));
}

TEST_CASE("rational helpers") {
  CHECK(ceil_neglog2(Rational(1, 4)) == 2);
  CHECK(ceil_neglog2(Rational(1, 3)) == 2);
  CHECK(ceil_neglog2(Rational(3, 4)) == 1);
  CHECK(ceil_neglog2(Rational(1)) == 0);
  CHECK(ceil_log2(BigInt(70)) == 7);
  CHECK(ceil_log2(BigInt(64)) == 6);
  CHECK(ceil_log2(BigInt(1)) == 0);
  CHECK(binomial(8, 4) == 70);
  CHECK(parse_rational("6/8") == Rational(3, 4));
  CHECK(to_string(Rational(3, 4)) == "3/4");
  CHECK_THROWS_AS(parse_rational("1/x"), FormatError);
}
