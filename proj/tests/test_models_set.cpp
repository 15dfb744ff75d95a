#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "doctest.h"

#include "algstat/codec.hpp"
#include "algstat/models_set.hpp"
#include "algstat/setlang.hpp"

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

BitString random_bits(std::mt19937_64& rng, std::size_t max_len) {
  BitString s;
  const std::size_t n = rng() % (max_len + 1);
  for (std::size_t i = 0; i < n; ++i) s.push_back(rng() & 1);
  return s;
}

SetDescription random_base(std::mt19937_64& rng) {
  switch (rng() % 5) {
    case 0:
      return singleton_set(random_bits(rng, 6));
    case 1:
      return all_set(rng() % 9);
    case 2: {
      const std::uint64_t n = rng() % 9;
      return cyl_set(random_bits(rng, n), n);
    }
    case 3: {
      const std::uint64_t n = rng() % 9;
      return hamming_set(n, rng() % (n + 1));
    }
    default: {
      std::set<BitString> elems;
      const std::size_t c = 1 + rng() % 4;
      while (elems.size() < c) elems.insert(random_bits(rng, 5));
      return list_set({elems.begin(), elems.end()});
    }
  }
}

SetDescription random_set(std::mt19937_64& rng, int depth = 2) {
  if (depth == 0 || rng() % 3 != 0) return random_base(rng);
  std::vector<SetDescription> parts;
  const std::size_t c = 2 + rng() % 3;
  for (std::size_t i = 0; i < c; ++i) parts.push_back(random_set(rng, depth - 1));
  return union_set(std::move(parts));
}

bool within_options(const SetDescription& d, const ModelOptions& opts, bool top = true) {
  if (const auto* u = std::get_if<UnionSet>(&d.node)) {
    if (!top || u->parts.size() > opts.union_width) return false;
    return std::all_of(u->parts.begin(), u->parts.end(),
                       [&](const SetDescription& p) { return within_options(p, opts, false); });
  }
  if (const auto* l = std::get_if<ListSet>(&d.node)) return l->elements.size() <= opts.list_cap;
  return true;
}

// Decodes every string shorter than alpha_max and keeps the valid models of x.
std::vector<BitString> blind_models(const BitString& x, std::size_t alpha_max, const ModelOptions& opts) {
  std::vector<BitString> out;
  for (const auto& code : strings_up_to(alpha_max - 1)) {
    SetDescription d;
    try {
      d = decode_set(code);
    } catch (const FormatError&) {
      continue;
    }
    if (within_options(d, opts) && member(d, x)) out.push_back(code);
  }
  return out;
}

}  // namespace

TEST_CASE("SetLang code lengths") {
  CHECK(code_length(all_set(8)) == 9);
  CHECK(encode(all_set(8)) == bits("01") + bits("1110001"));
  CHECK(code_length(singleton_set(bits("1011"))) == 11);
  CHECK(code_length(hamming_set(8, 4)) == 15);
  CHECK(code_length(singleton_set(bits(""))) == 3);
  CHECK(set_size(hamming_set(8, 4)) == 70);
  CHECK(log_size(hamming_set(8, 4)) == 7);
  CHECK(set_size(all_set(8)) == 256);
  CHECK(set_size(cyl_set(bits("10"), 5)) == 8);
}

TEST_CASE("SetLang membership") {
  CHECK(member(cyl_set(bits("10"), 4), bits("1011")));
  CHECK_FALSE(member(cyl_set(bits("10"), 4), bits("0110")));
  CHECK_FALSE(member(cyl_set(bits("10"), 4), bits("101")));
  CHECK(member(hamming_set(8, 4), bits("01010101")));
  CHECK_FALSE(member(hamming_set(8, 4), bits("01010111")));
  CHECK(member(list_set({bits(""), bits("11")}), bits("")));
  CHECK(member(union_set({all_set(2), singleton_set(bits("000"))}), bits("000")));
}

TEST_CASE("SetLang validation") {
  CHECK_THROWS_AS(validate(cyl_set(bits("101"), 2)), FormatError);
  CHECK_THROWS_AS(validate(hamming_set(3, 4)), FormatError);
  CHECK_THROWS_AS(validate(list_set({bits("1"), bits("0")})), FormatError);
  CHECK_THROWS_AS(validate(list_set({})), FormatError);
  CHECK_THROWS_AS(validate(union_set({all_set(1)})), FormatError);
  CHECK_THROWS_AS(decode_set(encode(all_set(3)) + bits("0")), FormatError);
  CHECK_THROWS_AS(decode_set(bits("01")), FormatError);
}

TEST_CASE("random SetLang descriptions round trip") {
  std::mt19937_64 rng(1234);
  std::vector<BitString> codes;
  for (int i = 0; i < 1000; ++i) {
    const SetDescription d = random_set(rng);
    validate(d);
    const BitString code = encode(d);
    CHECK(code.size() == code_length(d));
    CHECK(decode_set(code) == d);
    CHECK(parse_set(format_set(d)) == d);
    const auto elems = denote(d);
    CHECK(BigInt(elems.size()) == set_size(d));
    CHECK(std::is_sorted(elems.begin(), elems.end()));
    for (const auto& e : elems) CHECK(member(d, e));
    if (!elems.empty()) CHECK(log_size(d) == ceil_log2(BigInt(elems.size())));
    codes.push_back(code);
  }
  // prefix-free: no code is a proper prefix of a different code
  std::sort(codes.begin(), codes.end(), [](const BitString& a, const BitString& b) { return a.str() < b.str(); });
  codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
  for (std::size_t i = 1; i < codes.size(); ++i) CHECK_FALSE(codes[i].starts_with(codes[i - 1]));
}

TEST_CASE("set syntax") {
  CHECK(parse_set("all:8") == all_set(8));
  CHECK(parse_set("singleton:-") == singleton_set(bits("")));
  CHECK(parse_set("cyl:10/4") == cyl_set(bits("10"), 4));
  CHECK(parse_set("ham:8,4") == hamming_set(8, 4));
  CHECK(parse_set("union(all:8;singleton:-)") == union_set({all_set(8), singleton_set(bits(""))}));
  CHECK(parse_set("list{-,0,1}") == list_set({bits(""), bits("0"), bits("1")}));
  CHECK_THROWS(parse_set("list{0,1,-}"));
  CHECK_THROWS(parse_set("bogus:1"));
  CHECK_THROWS(parse_set("all:"));
}

TEST_CASE("model enumeration matches blind decoding") {
  const ModelOptions opts;
  for (const char* text : {"", "0", "1", "01", "1011", "0110", "000"}) {
    const BitString x = bits(text);
    for (std::size_t alpha : {3u, 8u, 12u, 16u}) {
      const auto models = enumerate_models(x, alpha, opts);
      const auto expect = blind_models(x, alpha, opts);
      REQUIRE(models.size() == expect.size());
      for (std::size_t i = 0; i < models.size(); ++i) {
        CHECK(models[i].code == expect[i]);
        CHECK(encode(models[i].desc) == models[i].code);
      }
    }
  }
  ModelOptions narrow;
  narrow.union_width = 2;
  narrow.list_cap = 2;
  const auto models = enumerate_models(bits("10"), 17, narrow);
  const auto expect = blind_models(bits("10"), 17, narrow);
  REQUIRE(models.size() == expect.size());
  for (std::size_t i = 0; i < models.size(); ++i) CHECK(models[i].code == expect[i]);
}

TEST_CASE("hamming-only class") {
  ModelOptions o;
  o.model_class = ModelClass::kHammingOnly;
  const auto models = enumerate_models(bits("01010101"), 30, o);
  REQUIRE(models.size() == 1);
  CHECK(models[0].desc == hamming_set(8, 4));
  o = {};
  o.union_depth = 2;
  CHECK_THROWS_AS(enumerate_models(bits("0"), 10, o), std::invalid_argument);
}

TEST_CASE("two-part code lengths") {
  const BitString x = bits("10110100");
  CHECK(two_part(x, all_set(8)) == 17);
  CHECK(two_part(x, singleton_set(x)) == 17);
  CHECK(two_part(x, hamming_set(8, 4)) == 22);
}

TEST_CASE("randomness deficiency") {
  const Workbench& wb = bench();
  const BitString x = bits("01010101");
  const DeficiencyRecord single = deficiency(wb, x, singleton_set(x));
  CHECK(single.log_size == 0);
  CHECK(single.delta_norm == 0);
  CHECK(single.delta_star_norm == 0);
  // Under the uniform model every element of {0,1}^8 costs SFDECODE, an
  // 8-bit codeword and HALT; 01010101 has no shorter conditional program.
  const DeficiencyRecord all = deficiency(wb, x, all_set(8));
  CHECK(all.log_size == 8);
  CHECK(all.k_cond_set == 15);
  CHECK(all.delta_norm == 0);
  CHECK(all.delta_raw == 8 - 15);
  CHECK_THROWS_AS(deficiency(wb, bits("0"), all_set(2)), std::invalid_argument);

  std::mt19937_64 rng(5);
  for (int i = 0; i < 25; ++i) {
    const SetDescription d = random_set(rng, 1);
    const auto elems = denote(d);
    if (elems.empty()) continue;
    const BitString y = elems[rng() % elems.size()];
    const DeficiencyRecord r = deficiency(wb, y, d);
    CHECK(r.delta_norm >= 0);
    CHECK(r.delta_star_norm >= 0);
    CHECK(r.k_cond_set <= 7 + static_cast<unsigned>(r.log_size));
    CHECK(r.delta_raw == r.log_size - static_cast<int>(r.k_cond_set));
  }
}

TEST_CASE("structure function of 10110100") {
  const BitString x = bits("10110100");
  const StructureCurve c = structfn(bench(), x, 18, {}, false);
  auto at = [&](std::size_t alpha) -> const CurveRow* {
    for (const auto& r : c.rows) {
      if (r.alpha == alpha) return &r;
    }
    return nullptr;
  };
  REQUIRE(at(10));
  CHECK(at(10)->h == doctest::Approx(8.0));
  REQUIRE(at(18));
  CHECK(at(18)->h == 0.0);
  CHECK(at(9) == nullptr);
  for (std::size_t i = 1; i < c.rows.size(); ++i) {
    CHECK(c.rows[i].h <= c.rows[i - 1].h);
    CHECK(c.rows[i].h_ceil <= c.rows[i - 1].h_ceil);
  }
  std::ostringstream csv;
  write_curve_csv(c, csv);
  CHECK(csv.str().starts_with("alpha,h,beta,beta_star,lambda\n10,8.000000000,,,18.000000000\n"));
}

TEST_CASE("structure function with deficiencies") {
  const BitString x = bits("0110");
  const StructureCurve c = structfn(bench(), x, 12);
  REQUIRE_FALSE(c.rows.empty());
  for (std::size_t i = 1; i < c.rows.size(); ++i) {
    REQUIRE(c.rows[i].beta);
    CHECK(*c.rows[i].beta <= *c.rows[i - 1].beta);
    CHECK(*c.rows[i].beta_star <= *c.rows[i - 1].beta_star);
  }
  CHECK(c.rows.back().h == 0.0);
  CHECK(*c.rows.back().beta == 0);
}

TEST_CASE("lambda minimum equals the best two-part code") {
  for (const char* text : {"0", "0110", "10110100", "01010101"}) {
    const BitString x = bits(text);
    const std::size_t single = code_length(singleton_set(x));
    const StructureCurve c = structfn(bench(), x, single + 1, {}, false);
    int best_lambda = 1 << 30;
    for (const auto& r : c.rows) best_lambda = std::min(best_lambda, r.h_ceil + static_cast<int>(r.alpha));
    std::size_t best_two_part = single;
    for (const auto& m : enumerate_models(x, single + 1)) best_two_part = std::min(best_two_part, two_part(x, m.desc));
    // a model of length len first appears at alpha = len + 1
    CHECK(best_lambda == static_cast<int>(best_two_part) + 1);
    CHECK(suffstat(x, 0, single + 1).lambda_min == best_two_part);
  }
}

TEST_CASE("sufficient statistics") {
  const BitString x = bits("01010101");
  const SuffStatResult all = suffstat(x, 0, 20);
  CHECK(all.lambda_min == 17);
  REQUIRE(all.minimal);
  CHECK(all.minimal->two_part == 17);
  CHECK_FALSE(all.no_statistic_in_class);
  for (const auto& m : all.optimal) CHECK(m.two_part <= 17);

  ModelOptions ham;
  ham.model_class = ModelClass::kHammingOnly;
  const SuffStatResult h = suffstat(x, 0, 20, ham);
  CHECK(h.lambda_min == 17);
  CHECK(h.class_lambda_min == 22u);
  CHECK(h.no_statistic_in_class);
  CHECK(h.optimal.empty());
  CHECK_FALSE(suffstat(x, 5, 20, ham).no_statistic_in_class);

  const SuffStatResult loose = suffstat(x, 1000, 16);
  CHECK(loose.optimal.size() == enumerate_models(x, 16).size());
}

TEST_CASE("stochasticity predicate") {
  const ComplexityTable& t = bench().table();
  const BitString x = bits("10011010");
  CHECK(require_k(t, x) == 19);
  CHECK(stochastic(t, x, 9, 0));
  CHECK_FALSE(stochastic(t, x, 8, 100));
  CHECK(stochastic(t, x, code_length(singleton_set(x)), 0));
}

TEST_CASE("non-stochastic scan") {
  const NonstochReport a = nonstoch_scan(bench(), 4, {}, 0);
  REQUIRE(a.rows.size() == 16);
  for (const auto& r : a.rows) {
    REQUIRE(r.min_alpha);
    CHECK(*r.min_alpha <= code_length(singleton_set(r.x)));
    CHECK(*r.min_alpha <= a.max_alpha);
  }
  CHECK(a.max_alpha >= a.mode_alpha);
  CHECK_FALSE(a.argmax.empty());
  const NonstochReport b = nonstoch_scan(bench(), 4, {}, 0);
  CHECK(a.mode_alpha == b.mode_alpha);
  CHECK(a.argmax == b.argmax);
}
