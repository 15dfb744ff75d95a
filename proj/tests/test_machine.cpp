#include <memory>
#include <random>

#include "doctest.h"
#include "oracle.hpp"

#include "algstat/codebook.hpp"
#include "algstat/machine.hpp"

using namespace algstat;

namespace {

RunOutcome go(const char* program, const Condition& cond = Condition::none(), Budgets b = {}) {
  return run(bits(program), cond, b);
}

std::shared_ptr<const ModelCondition> coin_model() {
  return std::make_shared<ModelCondition>(std::vector<BitString>{bits("0"), bits("1")},
                                          std::vector<Rational>{Rational(1, 2), Rational(1, 2)});
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

}  // namespace

TEST_CASE("opcode codewords") {
  CHECK(opcode_bits(Opcode::kEmit0) == bits("00"));
  CHECK(opcode_bits(Opcode::kEmit1) == bits("01"));
  CHECK(opcode_bits(Opcode::kHalt) == bits("100"));
  CHECK(opcode_bits(Opcode::kCopyIn, 1) == bits("10100"));
  CHECK(opcode_bits(Opcode::kCopyIn, 8) == bits("10111"));
  CHECK(opcode_bits(Opcode::kDouble) == bits("1100"));
  CHECK(opcode_bits(Opcode::kFlip) == bits("1101"));
  CHECK(opcode_bits(Opcode::kSfDecode) == bits("1110"));
  CHECK(opcode_bits(Opcode::kReserved) == bits("1111"));
  for (unsigned cb : {1u, 2u, 4u, 8u}) {
    const auto d = opcode_decode(opcode_bits(Opcode::kCopyIn, cb), 0);
    REQUIRE(d);
    CHECK(d->op == Opcode::kCopyIn);
    CHECK(d->copy_bits == cb);
    CHECK(d->length == 5);
  }
  CHECK_FALSE(opcode_decode(bits("11"), 0));
  CHECK_FALSE(opcode_decode(bits("10"), 0));
}

TEST_CASE("basic runs") {
  auto r = go("100");
  CHECK(r.status == RunStatus::kHalted);
  CHECK(r.output.empty());
  CHECK(r.steps == 1);
  r = go("00100");
  CHECK(r.status == RunStatus::kHalted);
  CHECK(r.output == bits("0"));
  r = go("01" "1101" "1100" "100");
  CHECK(r.status == RunStatus::kHalted);
  CHECK(r.output == bits("1010"));
  CHECK(r.steps == 1 + 1 + 2 + 1);
  CHECK(go("1100" "100").steps == 2);  // DOUBLE on an empty buffer costs one step
}

TEST_CASE("failure statuses") {
  CHECK(go("").status == RunStatus::kInvalidPrefix);
  CHECK(go("10").status == RunStatus::kInvalidPrefix);
  CHECK(go("0010").status == RunStatus::kInvalidPrefix);
  CHECK(go("1000").status == RunStatus::kInvalidPrefix);  // trailing bit after HALT
  CHECK(go("1111100").status == RunStatus::kDiverged);
  CHECK(go("10100100").status == RunStatus::kDiverged);  // COPYIN with no condition
  CHECK(go("1110100").status == RunStatus::kDiverged);   // SFDECODE with no model
  CHECK(go("10110100", Condition::str(bits("101"))).status == RunStatus::kDiverged);
}

TEST_CASE("COPYIN reads the string condition in order") {
  const Condition c = Condition::str(bits("1011"));
  auto r = go("10110" "100", c);
  CHECK(r.status == RunStatus::kHalted);
  CHECK(r.output == bits("1011"));
  CHECK(r.steps == 5);
  r = go("10101" "10101" "100", c);
  CHECK(r.output == bits("1011"));
  CHECK(go("10110" "10100" "100", c).status == RunStatus::kDiverged);
}

TEST_CASE("budgets") {
  Budgets b;
  b.max_steps = 3;
  CHECK(go("00" "00" "00" "100", Condition::none(), b).status == RunStatus::kOutOfSteps);
  CHECK(go("00" "00" "100", Condition::none(), b).status == RunStatus::kHalted);
  b = {};
  b.max_output = 3;
  CHECK(go("00" "1100" "1100" "100", Condition::none(), b).status == RunStatus::kOutOfOutput);
  CHECK(go("00" "1100" "00" "100", Condition::none(), b).status == RunStatus::kHalted);
  b.max_steps = 0;
  CHECK_THROWS(b.validate());
}

TEST_CASE("SFDECODE indexes the model") {
  const Condition c = Condition::model(coin_model());
  auto r = go("1110" "1" "100", c);
  CHECK(r.status == RunStatus::kHalted);
  CHECK(r.output == bits("1"));
  CHECK(r.steps == 2);
  CHECK(go("1110" "1110" "100", c).status == RunStatus::kInvalidPrefix);
  // defective model: the only codeword is "0"
  auto half = std::make_shared<ModelCondition>(std::vector<BitString>{bits("11")}, std::vector<Rational>{Rational(1, 2)});
  CHECK(go("1110" "0" "100", Condition::model(half)).output == bits("11"));
  CHECK(go("1110" "1" "100", Condition::model(half)).status == RunStatus::kDiverged);
  CHECK(go("1110", Condition::model(half)).status == RunStatus::kInvalidPrefix);
  // mass 1 gives the empty codeword, still one step
  auto point = std::make_shared<ModelCondition>(std::vector<BitString>{bits("0110")}, std::vector<Rational>{Rational(1)});
  r = go("1110" "100", Condition::model(point));
  CHECK(r.output == bits("0110"));
  CHECK(r.steps == 2);
}

TEST_CASE("model condition validation and fingerprints") {
  CHECK_THROWS(ModelCondition({bits("1"), bits("0")}, {Rational(1, 2), Rational(1, 2)}));
  CHECK_THROWS(ModelCondition({bits("0"), bits("1")}, {Rational(3, 4), Rational(1, 2)}));
  CHECK_THROWS(ModelCondition({bits("0")}, {Rational(1, 2), Rational(1, 2)}));
  const Condition a = Condition::str(bits("01"));
  const Condition b = Condition::model(coin_model());
  CHECK(a.fingerprint() != b.fingerprint());
  CHECK(a.fingerprint() != Condition::none().fingerprint());
  CHECK(b.fingerprint() == Condition::model(coin_model()).fingerprint());
  CHECK(a.fingerprint().size() == 16);
}

TEST_CASE("codebook matches a canonical packing oracle") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng() % 12;
    std::vector<Rational> masses;
    Rational left = 1;
    for (std::size_t i = 0; i < n; ++i) {
      const int roll = static_cast<int>(rng() % 5);
      Rational q = roll == 0 ? Rational(0) : left * Rational(1 + rng() % 5, 6 + rng() % 7);
      masses.push_back(q);
      left -= q;
    }
    const Codebook cb = Codebook::build(masses);
    const auto expect = oracle::shannon_fano(masses);
    CHECK(cb.kraft() <= 1);
    for (std::size_t i = 0; i < n; ++i) {
      REQUIRE(cb.has_codeword(i) == expect[i].has_value());
      if (!expect[i]) continue;
      CHECK(cb.codeword(i).str() == *expect[i]);
      const auto d = cb.decode(cb.codeword(i) + bits("1"), 0);
      CHECK(d.status == Codebook::DecodeStatus::kOk);
      CHECK(d.element == i);
      CHECK(d.consumed == cb.codeword(i).size());
    }
    for (std::size_t i = 0; i < cb.words().size(); ++i) {
      for (std::size_t j = 0; j < cb.words().size(); ++j) {
        if (i != j) CHECK_FALSE(cb.words()[j].bits.starts_with(cb.words()[i].bits));
      }
    }
  }
}

TEST_CASE("Bernoulli(2,1/4) codeword lengths") {
  // masses of 00, 01, 10, 11 for P(1) = 1/4
  const std::vector<Rational> masses{Rational(9, 16), Rational(3, 16), Rational(3, 16), Rational(1, 16)};
  const Codebook cb = Codebook::build(masses);
  CHECK(cb.codeword(0).size() == 1);
  CHECK(cb.codeword(1).size() == 3);
  CHECK(cb.codeword(2).size() == 3);
  CHECK(cb.codeword(3).size() == 4);
  CHECK(cb.codeword(0) == bits("0"));
  CHECK(cb.codeword(1) == bits("100"));
  CHECK(cb.codeword(2) == bits("101"));
  CHECK(cb.codeword(3) == bits("1100"));
}

TEST_CASE("run agrees with the reference interpreter on random programs") {
  std::mt19937_64 rng(99);
  const Condition conds[] = {
      Condition::none(),
      Condition::str(bits("10110100")),
      Condition::model(std::make_shared<ModelCondition>(
          std::vector<BitString>{bits(""), bits("0"), bits("1"), bits("01")},
          std::vector<Rational>{Rational(1, 4), Rational(1, 4), Rational(1, 3), Rational(1, 6)}, bits("0110"))),
  };
  Budgets b;
  b.max_steps = 200;
  b.max_output = 64;
  for (const auto& c : conds) {
    const oracle::Cond oc = to_oracle(c);
    for (int trial = 0; trial < 20000; ++trial) {
      BitString p;
      const std::size_t n = rng() % 24;
      for (std::size_t i = 0; i < n; ++i) p.push_back(rng() & 1);
      // bias toward halting programs
      if (rng() & 1) p.append(bits("100"));
      const RunOutcome r = run(p, c, b);
      const auto expect = oracle::run(p.str(), oc, b.max_steps, b.max_output);
      REQUIRE((r.status == RunStatus::kHalted) == expect.has_value());
      if (expect) CHECK(r.output.str() == *expect);
    }
  }
}
