#include <cmath>
#include <random>

#include "doctest.h"

#include "algstat/codec.hpp"
#include "algstat/models_prob.hpp"

using namespace algstat;

namespace {

const Workbench& bench() {
  static const Workbench wb([] {
    WorkbenchConfig c;
    c.max_len = 22;
    c.cond_max_len = 20;
    return c;
  }());
  return wb;
}

bool plain_set(const SetDescription& d, bool top = true) {
  if (const auto* u = std::get_if<UnionSet>(&d.node)) {
    if (!top || u->parts.size() > 3) return false;
    for (const auto& p : u->parts) {
      if (!plain_set(p, false)) return false;
    }
    return true;
  }
  if (const auto* l = std::get_if<ListSet>(&d.node)) return l->elements.size() <= 4;
  return true;
}

// Every code shorter than alpha_max that decodes to a model of x in the class.
std::vector<BitString> blind_dists(const BitString& x, std::size_t alpha_max) {
  std::vector<BitString> out;
  for (const auto& code : strings_up_to(alpha_max - 1)) {
    DistDescription d;
    try {
      d = decode_dist(code);
    } catch (const FormatError&) {
      continue;
    }
    bool keep = false;
    if (const auto* u = std::get_if<UniformDist>(&d.node)) keep = plain_set(u->set) && member(u->set, x);
    if (const auto* b = std::get_if<BernoulliDist>(&d.node)) keep = b->n == x.size();
    if (const auto* t = std::get_if<TableDist>(&d.node)) {
      keep = t->entries.size() == 1 && t->entries[0].first == x && t->entries[0].second == 1;
    }
    if (keep) out.push_back(code);
  }
  return out;
}

}  // namespace

TEST_CASE("masses") {
  const DistDescription b = bernoulli_dist(8, Rational(1, 4));
  CHECK(mass(b, bits("00000000")) == Rational(6561, 65536));
  CHECK(mass(b, bits("11")) == 0);
  CHECK(neglog(b, bits("11")) == kInfinity);
  CHECK(neglog(uniform_dist(all_set(3)), bits("010")) == doctest::Approx(3.0));
  const DistDescription t = table_dist({{bits("0"), Rational(1, 2)}, {bits("11"), Rational(1, 4)}});
  CHECK(mass(t, bits("11")) == Rational(1, 4));
  CHECK(mass(t, bits("1")) == 0);
  Rational total = 0;
  for (const auto& [y, m] : support(bernoulli_dist(6, Rational(2, 7)))) total += m;
  CHECK(total == 1);
  CHECK(support(uniform_dist(hamming_set(8, 4))).size() == 70);
}

TEST_CASE("codebooks") {
  const Codebook cb = codebook(bernoulli_dist(2, Rational(1, 4)));
  CHECK(cb.codeword(0).size() == 1);
  CHECK(cb.codeword(1).size() == 3);
  CHECK(cb.codeword(2).size() == 3);
  CHECK(cb.codeword(3).size() == 4);
  const Codebook u = codebook(uniform_dist(all_set(3)));
  for (std::size_t i = 0; i < 8; ++i) CHECK(u.codeword(i) == BitString::from_nat(7 + i));
  CHECK(u.kraft() == 1);
  const Codebook h = codebook(uniform_dist(hamming_set(8, 4)));
  CHECK(h.kraft() == Rational(70, 128));
}

TEST_CASE("DistLang codes and syntax") {
  const DistDescription b = bernoulli_dist(8, Rational(1, 2));
  CHECK(code_length(b) == 2 + nat_code_length(8) + nat_code_length(1) + nat_code_length(2));
  CHECK(code_length(uniform_dist(all_set(8))) == 11);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 300; ++i) {
    DistDescription d;
    switch (i % 3) {
      case 0:
        d = uniform_dist(cyl_set(BitString::from_nat(rng() % 7), 3 + rng() % 4));
        break;
      case 1: {
        const std::uint64_t den = 2 + rng() % 20;
        d = bernoulli_dist(1 + rng() % 11, Rational(BigInt(1 + rng() % (den - 1)), BigInt(den)));
        break;
      }
      default: {
        std::vector<std::pair<BitString, Rational>> entries;
        Rational left = 1;
        for (std::uint64_t n = rng() % 5, k = 0; k <= n; ++k) {
          const Rational q = left / (2 + rng() % 3);
          entries.emplace_back(BitString::from_nat(k * 3 + rng() % 3), q);
          left -= q;
        }
        d = table_dist(std::move(entries));
      }
    }
    validate(d);
    const BitString code = encode(d);
    CHECK(code.size() == code_length(d));
    CHECK(decode_dist(code) == d);
    CHECK(parse_dist(format_dist(d)) == d);
  }
  CHECK(parse_dist("bern:8,1/4") == bernoulli_dist(8, Rational(1, 4)));
  CHECK(parse_dist("unif(all:8)") == uniform_dist(all_set(8)));
  CHECK(parse_dist("table{0:1/2,1:1/2}") ==
        table_dist({{bits("0"), Rational(1, 2)}, {bits("1"), Rational(1, 2)}}));
  CHECK_THROWS(parse_dist("bern:8,1"));
  CHECK_THROWS(parse_dist("table{0:3/4,1:1/2}"));
  CHECK_THROWS(parse_dist("table{1:1/2,0:1/2}"));
  CHECK_THROWS_AS(decode_dist(encode(b) + bits("1")), FormatError);
}

TEST_CASE("uniform distributions reuse the set condition") {
  for (const auto& s : {all_set(4), hamming_set(6, 2), list_set({bits("0"), bits("111")})}) {
    CHECK(dist_condition(uniform_dist(s))->canonical() == uniform_condition(s)->canonical());
  }
}

TEST_CASE("deficiency under UniformOn equals the set deficiency") {
  const Workbench& wb = bench();
  const std::pair<const char*, SetDescription> cases[] = {
      {"01010101", all_set(8)},
      {"10110100", hamming_set(8, 4)},
      {"0110", cyl_set(bits("01"), 4)},
      {"0", union_set({all_set(1), singleton_set(bits("0110"))})},
      {"11", list_set({bits(""), bits("11"), bits("010")})},
  };
  for (const auto& [text, s] : cases) {
    const BitString x = bits(text);
    const DeficiencyRecord set = deficiency(wb, x, s);
    const DeficiencyP p = deficiency_p(wb, x, uniform_dist(s));
    CHECK(p.k_cond == set.k_cond_set);
    CHECK(p.norm == static_cast<double>(set.delta_norm));
    CHECK(p.raw == doctest::Approx(log2(set_size(s)) - set.k_cond_set));
  }
}

TEST_CASE("Bernoulli(8,1/4) at 00000000") {
  const DeficiencyP d = deficiency_p(bench(), bits("00000000"), bernoulli_dist(8, Rational(1, 4)));
  CHECK(d.k_cond == 11);
  CHECK(d.neglog_x == doctest::Approx(8 * std::log2(4.0 / 3.0)));
  CHECK(d.norm == doctest::Approx(0.245112).epsilon(1e-5));
  CHECK(d.argmax == bits("00000111"));
  CHECK(d.typical(1));
  CHECK_FALSE(d.typical(0));
  CHECK_THROWS_AS(deficiency_p(bench(), bits("0000000"), bernoulli_dist(8, Rational(1, 4))), std::invalid_argument);
}

TEST_CASE("point table") {
  const BitString x = bits("10011010");
  const DeficiencyP d = deficiency_p(bench(), x, table_dist({{x, Rational(1)}}));
  CHECK(d.neglog_x == 0);
  CHECK(d.norm == 0);
  CHECK(d.k_cond == 7);  // SFDECODE with the empty codeword, HALT
}

TEST_CASE("two-part lengths") {
  const BitString x = bits("10110100");
  CHECK(two_part_p(x, uniform_dist(all_set(8))) == two_part(x, all_set(8)) + 2);
  CHECK(two_part_p(x, bernoulli_dist(8, Rational(1, 2))) == 23);
}

TEST_CASE("distribution enumeration matches blind decoding") {
  for (const char* text : {"0", "01", "110"}) {
    const BitString x = bits(text);
    const auto got = enumerate_dists(x, 17);
    const auto expect = blind_dists(x, 17);
    REQUIRE(got.size() == expect.size());
    for (std::size_t i = 0; i < got.size(); ++i) {
      CHECK(got[i].code == expect[i]);
      CHECK(mass(got[i].dist, x) > 0);
    }
  }
}

TEST_CASE("probabilistic sufficient statistics") {
  const ComplexityTable& t = bench().table();
  DistOptions bern;
  bern.dist_class = DistClass::kBernoulliOnly;
  const SuffStatP a = suffstat_p(t, bits("10011010"), 4, 40, bern);
  CHECK(a.k_x == 19);
  REQUIRE(a.minimal);
  CHECK(a.minimal->model.dist == bernoulli_dist(8, Rational(1, 2)));
  CHECK(a.minimal->two_part == 23);
  const SuffStatP b = suffstat_p(t, bits("01010101"), 4, 40, bern);
  CHECK(b.k_x == 15);
  CHECK(b.no_statistic_in_class);
  const SuffStatP loose = suffstat_p(t, bits("01"), 1000, 16);
  CHECK(loose.optimal.size() == enumerate_dists(bits("01"), 16).size());
}

TEST_CASE("P^k is uniform on S^k") {
  const ComplexityTable& t = bench().table();
  const DistDescription d = pk(t, 5);
  CHECK(d == uniform_dist(list_set({bits(""), bits("0"), bits("1")})));
  CHECK(mass(d, bits("1")) == Rational(1, 3));
  CHECK(neglog(d, bits("")) == doctest::Approx(std::log2(3.0)));
  CHECK_THROWS(pk(t, 2));
  const DistDescription d9 = pk(t, 9);
  for (const auto& [y, m] : support(d9)) CHECK(deficiency_p(bench(), y, d9).norm >= 0);
}

TEST_CASE("Bernoulli demo at n = 8") {
  const BernoulliReport r = bernoulli_demo(bench().table(), 8, 3);
  REQUIRE(r.rows.size() == 256);
  unsigned max_k = 0;
  for (const auto& row : r.rows) max_k = std::max(max_k, row.k_x);
  CHECK(max_k == 19);
  bool alt_flagged = false, typical_unflagged = false;
  for (const auto& row : r.rows) {
    CHECK(row.flagged == (row.hamming_total > row.k_x + 3));
    CHECK(row.lambda_min <= row.hamming_total);
    if (row.x == bits("01010101")) alt_flagged = row.flagged;
    if (row.k_x == max_k && row.x.weight() == 4 && !row.flagged) typical_unflagged = true;
  }
  CHECK(alt_flagged);
  CHECK(typical_unflagged);
  CHECK_THROWS(bernoulli_demo(bench().table(), 7, 3));
}
