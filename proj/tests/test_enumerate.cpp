#include <algorithm>
#include <filesystem>
#include <sstream>

#include "doctest.h"
#include "oracle.hpp"

#include "algstat/complexity.hpp"
#include "algstat/enumerate.hpp"
#include "algstat/models_set.hpp"

using namespace algstat;

namespace {

ComplexityTable build(unsigned max_len, const Condition& cond = Condition::none(), unsigned workers = 1) {
  BuildOptions o;
  o.max_len = max_len;
  o.workers = workers;
  return build_table(o, cond);
}

oracle::Cond to_oracle(const Condition& c) {
  oracle::Cond out;
  if (const BitString* s = c.as_str()) out.str = s->str();
  if (const ModelCondition* m = c.as_model()) {
    oracle::Model om;
    for (const auto& d : m->domain()) om.domain.push_back(d.str());
    om.codewords = oracle::shannon_fano(m->masses());
    om.aux = m->aux().str();
    out.model = om;
  }
  return out;
}

void check_against_oracle(unsigned max_len, const Condition& cond) {
  const ComplexityTable t = build(max_len, cond);
  const auto expect = oracle::naive_table(max_len, to_oracle(cond));
  REQUIRE(t.entries().size() == expect.size());
  for (std::size_t i = 0; i < expect.size(); ++i) {
    const TableEntry& e = t.entries()[i];
    CHECK(e.output.str() == expect[i].output);
    CHECK(e.k == expect[i].k);
    CHECK(e.witness.str() == expect[i].witness);
    CHECK(e.m == Dyadic(oracle::m_numerator(expect[i], max_len), max_len));
    REQUIRE(e.histogram.size() == expect[i].histogram.size());
    std::size_t j = 0;
    for (const auto& [len, count] : expect[i].histogram) {
      CHECK(e.histogram[j].first == len);
      CHECK(e.histogram[j].second == count);
      ++j;
    }
  }
}

}  // namespace

TEST_CASE("tables match the naive oracle, no condition") {
  for (unsigned l = 3; l <= 12; ++l) check_against_oracle(l, Condition::none());
}

TEST_CASE("tables match the naive oracle, string condition") {
  check_against_oracle(12, Condition::str(bits("1011")));
  check_against_oracle(11, Condition::str(bits("0")));
}

TEST_CASE("tables match the naive oracle, model condition") {
  check_against_oracle(12, Condition::model(uniform_condition(hamming_set(4, 2))));
  check_against_oracle(12, Condition::model(star_set_condition(all_set(3))));
}

TEST_CASE("spot complexities") {
  const ComplexityTable t = build(16);
  CHECK(t.k_of(bits("")) == 3u);
  CHECK(t.k_of(bits("0")) == 5u);
  CHECK(t.k_of(bits("0000")) == 11u);
  CHECK(t.k_of(bits("0110")) == 11u);
  CHECK(t.find(bits("0110"))->witness == bits("00010100100"));
  CHECK(t.k_of(bits("01010101")) == 15u);
  CHECK(t.find(bits("01010101"))->witness == bits("000100011100100"));
  CHECK(t.k_of(bits("10110100")) == 15u);
  CHECK(t.find(bits(""))->witness == bits("100"));
  const ComplexityTable c = build(12, Condition::str(bits("1011")));
  CHECK(c.k_of(bits("1011")) == 8u);
  CHECK(c.find(bits("1011"))->witness == bits("10110100"));
}

TEST_CASE("K is at most 2 l(x) + 3 and every unconditional K is odd") {
  const ComplexityTable t = build(19);
  for (const auto& x : strings_up_to(8)) {
    const auto k = t.k_of(x);
    REQUIRE(k);
    CHECK(*k <= 2 * x.size() + 3);
  }
  for (const auto& e : t.entries()) CHECK(e.k % 2 == 1);
}

TEST_CASE("halting programs are prefix-free") {
  const Condition c = Condition::str(bits("0110"));
  const auto programs = enumerate_halting(16, c, Budgets{});
  std::vector<std::string> sorted;
  for (const auto& p : programs) sorted.push_back(p.program.str());
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 1; i < sorted.size(); ++i) CHECK_FALSE(sorted[i].starts_with(sorted[i - 1]));
  for (std::size_t i = 1; i < programs.size(); ++i) CHECK(programs[i - 1].program < programs[i].program);
}

TEST_CASE("Kraft sum and program count") {
  const ComplexityTable t = build(18);
  const Dyadic s = kraft_sum(t);
  CHECK(s <= Dyadic(1, 0));
  CHECK(s.to_double() > 0.05);
  std::uint64_t programs = 0;
  for (const auto& e : t.entries()) {
    for (const auto& [len, count] : e.histogram) programs += count;
    CHECK(e.m >= Dyadic::pow2(-static_cast<int>(e.k)));
  }
  CHECK(programs == t.program_count());
}

TEST_CASE("worker count does not change the table") {
  const Condition c = Condition::str(bits("10"));
  CHECK(build(17, Condition::none(), 1) == build(17, Condition::none(), 4));
  CHECK(build(15, c, 1) == build(15, c, 3));
}

TEST_CASE("table files round trip and reject corruption") {
  const ComplexityTable t = build(14, Condition::str(bits("01")));
  std::stringstream ss;
  write_table(t, ss);
  const std::string text = ss.str();
  std::stringstream in(text);
  CHECK(read_table(in) == t);

  std::stringstream reread(text);
  std::stringstream again;
  write_table(read_table(reread), again);
  CHECK(again.str() == text);

  std::string bad_version = text;
  bad_version.replace(bad_version.find("tpm1-v1"), 7, "tpm1-v9");
  std::stringstream bv(bad_version);
  CHECK_THROWS_AS(read_table(bv), VersionError);

  std::stringstream truncated(text.substr(0, text.size() / 2));
  CHECK_THROWS_AS(read_table(truncated), FormatError);

  const auto dir = std::filesystem::temp_directory_path() / "algstat-test-enumerate";
  std::filesystem::create_directories(dir);
  export_table(t, dir / "t.table");
  CHECK(import_table(dir / "t.table") == t);
  std::filesystem::remove_all(dir);
}

TEST_CASE("workbench caches conditional tables") {
  WorkbenchConfig cfg;
  cfg.max_len = 14;
  cfg.cond_max_len = 12;
  Workbench wb(cfg);
  const Condition c = Condition::str(bits("11"));
  auto a = wb.conditional(c);
  auto b = wb.conditional(Condition::str(bits("11")));
  CHECK(a.get() == b.get());
  CHECK(wb.cached_conditionals() == 1);
  CHECK(a->max_len() == 12);
  CHECK(wb.table().max_len() == 14);
  // EMIT1 EMIT1 HALT beats COPYIN 2, HALT
  CHECK(k_cond(wb, bits("11"), c) == 7u);
  CHECK(k_cond(wb, bits("1011"), Condition::str(bits("1011"))) == 8u);
}

TEST_CASE("require_k names the cap") {
  const ComplexityTable t = build(9);
  CHECK(require_k(t, bits("0")) == 5);
  try {
    require_k(t, bits("0110"));
    FAIL("expected AbsentError");
  } catch (const AbsentError& e) {
    CHECK(std::string(e.what()).find("9") != std::string::npos);
  }
}
