#pragma once

// Probability-distribution models (DistLang).
//
//   00  UniformOn  S-code                               uniform on S
//   01  Bernoulli  bar(b(n)) bar(b(a)) bar(b(b))        length-n strings, P(1) = a/b
//   10  Table      bar(b(c)) (x' bar(b(a)) bar(b(b)))*  explicit masses
//
// Rationals are written in lowest terms. Table entries are listed in
// strictly canonical order with positive masses summing to at most 1; a
// defective remainder is allowed and never gets a codeword.

#include <cstddef>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "algstat/codebook.hpp"
#include "algstat/models_set.hpp"
#include "algstat/setlang.hpp"
#include "algstat/skstats.hpp"
#include "algstat/workbench.hpp"

namespace algstat {

struct UniformDist {
  SetDescription set;
  friend bool operator==(const UniformDist&, const UniformDist&) = default;
};
struct BernoulliDist {
  std::uint64_t n = 0;
  Rational p;  // probability of a 1, in (0, 1)
  friend bool operator==(const BernoulliDist&, const BernoulliDist&) = default;
};
struct TableDist {
  std::vector<std::pair<BitString, Rational>> entries;
  friend bool operator==(const TableDist&, const TableDist&) = default;
};

struct DistDescription {
  std::variant<UniformDist, BernoulliDist, TableDist> node;
  friend bool operator==(const DistDescription&, const DistDescription&) = default;
};

inline DistDescription uniform_dist(SetDescription s) { return {UniformDist{std::move(s)}}; }
inline DistDescription bernoulli_dist(std::uint64_t n, Rational p) { return {BernoulliDist{n, std::move(p)}}; }
inline DistDescription table_dist(std::vector<std::pair<BitString, Rational>> entries) {
  return {TableDist{std::move(entries)}};
}

void validate(const DistDescription& d);
BitString encode(const DistDescription& d);
std::size_t code_length(const DistDescription& d);
DistDescription decode_dist(const BitString& code);

// unif(all:8), bern:8,1/4, table{0:1/2,1:1/2}
DistDescription parse_dist(std::string_view text);
std::string format_dist(const DistDescription& d);

// Exact mass; zero outside the domain.
Rational mass(const DistDescription& d, const BitString& x);
inline constexpr double kInfinity = std::numeric_limits<double>::infinity();
// -log2 mass, or kInfinity for zero mass.
double neglog(const DistDescription& d, const BitString& x);

// Support in canonical order with masses. Throws CapExceeded above cap.
std::vector<std::pair<BitString, Rational>> support(const DistDescription& d, std::size_t cap = std::size_t{1} << 16);

Codebook codebook(const DistDescription& d);
// The distribution as a machine condition. UniformOn(S) yields exactly the
// condition models_set uses for S.
std::shared_ptr<const ModelCondition> dist_condition(const DistDescription& d, const BitString& aux = {});

struct DeficiencyP {
  BitString x;
  DistDescription dist;
  double neglog_x = 0;
  unsigned k_cond = 0;       // K(x | P)
  double raw = 0;            // neglog(x) - K(x|P)
  // max_y [K(y|P) - neglog(y)] - [K(x|P) - neglog(x)], y over the support;
  // for UniformOn(S) this is max_y K(y|S) - K(x|S).
  double norm = 0;
  BitString argmax;          // the maximizing y, chosen exactly through rationals
  bool typical(double beta) const { return norm <= beta + 1e-9; }
};

// Throws std::invalid_argument for zero-mass x.
DeficiencyP deficiency_p(const Workbench& wb, const BitString& x, const DistDescription& dist);

// len(dist) + ceil(neglog(x))
std::size_t two_part_p(const BitString& x, const DistDescription& dist);

enum class DistClass { kAll, kUniformOnly, kBernoulliOnly };

struct DistOptions {
  DistClass dist_class = DistClass::kAll;
  ModelOptions set_options;
};

struct EnumeratedDist {
  DistDescription dist;
  BitString code;
  std::size_t len() const { return code.size(); }
};

// Positive-mass models of x with code length < alpha_max, by (length, code).
// The class is UniformOn over enumerated set models, Bernoulli(l(x), p) for
// every p in (0,1), and the point table {x:1}.
std::vector<EnumeratedDist> enumerate_dists(const BitString& x, std::size_t alpha_max, const DistOptions& opts = {});

struct ScoredDist {
  EnumeratedDist model;
  std::size_t two_part = 0;
};

struct SuffStatP {
  BitString x;
  std::size_t beta = 0;
  unsigned k_x = 0;                       // reference: table K(x)
  std::optional<std::size_t> lambda_min;  // in class
  std::vector<ScoredDist> optimal;        // two_part <= K(x) + beta
  std::optional<ScoredDist> minimal;      // least (len, code)
  bool no_statistic_in_class = false;
};

SuffStatP suffstat_p(const ComplexityTable& table, const BitString& x, std::size_t beta, std::size_t alpha_max,
                     const DistOptions& opts = {});

// P^k: uniform on S^k, described as UniformOn(List(S^k)).
DistDescription pk(const ComplexityTable& table, unsigned k);

struct BernoulliRow {
  BitString x;
  unsigned k_x = 0;
  std::size_t hamming_total = 0;  // two_part(Hamming(n, w(x)))
  std::size_t lambda_min = 0;     // unrestricted
  bool flagged = false;           // hamming_total > K(x) + beta
};

struct BernoulliReport {
  std::size_t n = 0;
  std::size_t beta = 0;
  std::vector<BernoulliRow> rows;  // canonical order
};

// Every x of length n (even, <= 12) against the Hamming class.
BernoulliReport bernoulli_demo(const ComplexityTable& table, std::size_t n, std::size_t beta);

}  // namespace algstat
