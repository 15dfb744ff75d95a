#include "algstat/models_prob.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "algstat/codec.hpp"
#include "algstat/complexity.hpp"

namespace algstat {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::uint64_t to_u64(const BigInt& v) {
  if (v < 0 || v > BigInt(std::uint64_t{1} << 62)) throw FormatError("rational component out of range");
  return v.convert_to<std::uint64_t>();
}

BitString rational_code(const Rational& q) {
  return nat_encode(to_u64(boost::multiprecision::numerator(q))) +
         nat_encode(to_u64(boost::multiprecision::denominator(q)));
}

std::size_t rational_length(const Rational& q) {
  return nat_code_length(to_u64(boost::multiprecision::numerator(q))) +
         nat_code_length(to_u64(boost::multiprecision::denominator(q)));
}

Rational read_rational(BitReader& r) {
  const std::uint64_t num = r.read_nat();
  const std::uint64_t den = r.read_nat();
  if (den == 0) throw FormatError("zero denominator");
  if (std::gcd(num, den) != 1) throw FormatError("rational not in lowest terms");
  return Rational(BigInt(num), BigInt(den));
}

Rational pow_rational(const Rational& q, std::uint64_t e) {
  Rational out = 1;
  for (std::uint64_t i = 0; i < e; ++i) out *= q;
  return out;
}

}  // namespace

void validate(const DistDescription& d) {
  std::visit(Overloaded{
                 [](const UniformDist& u) { validate(u.set); },
                 [](const BernoulliDist& b) {
                   if (b.p <= 0 || b.p >= 1) throw FormatError("bern: p must lie in (0,1)");
                 },
                 [](const TableDist& t) {
                   if (t.entries.empty()) throw FormatError("table needs at least one entry");
                   Rational total = 0;
                   for (std::size_t i = 0; i < t.entries.size(); ++i) {
                     if (i > 0 && !(t.entries[i - 1].first < t.entries[i].first)) {
                       throw FormatError("table entries not in canonical order");
                     }
                     if (t.entries[i].second <= 0) throw FormatError("table masses must be positive");
                     total += t.entries[i].second;
                   }
                   if (total > 1) throw FormatError("table masses sum above 1");
                 },
             },
             d.node);
}

BitString encode(const DistDescription& d) {
  validate(d);
  return std::visit(Overloaded{
                        [](const UniformDist& u) { return bits("00") + encode(u.set); },
                        [](const BernoulliDist& b) { return bits("01") + nat_encode(b.n) + rational_code(b.p); },
                        [](const TableDist& t) {
                          BitString out = bits("10") + nat_encode(t.entries.size());
                          for (const auto& [x, q] : t.entries) out.append(self_delimit(x) + rational_code(q));
                          return out;
                        },
                    },
                    d.node);
}

std::size_t code_length(const DistDescription& d) {
  return std::visit(Overloaded{
                        [](const UniformDist& u) { return 2 + code_length(u.set); },
                        [](const BernoulliDist& b) { return 2 + nat_code_length(b.n) + rational_length(b.p); },
                        [](const TableDist& t) {
                          std::size_t len = 2 + nat_code_length(t.entries.size());
                          for (const auto& [x, q] : t.entries) len += self_delimit_length(x.size()) + rational_length(q);
                          return len;
                        },
                    },
                    d.node);
}

DistDescription decode_dist(const BitString& code) {
  BitReader r(code);
  DistDescription d;
  const bool b0 = r.read_bit();
  const bool b1 = r.read_bit();
  if (!b0 && !b1) {
    d.node = UniformDist{decode_set(code.substr(2))};
    validate(d);
    return d;
  }
  if (!b0 && b1) {
    const std::uint64_t n = r.read_nat();
    d.node = BernoulliDist{n, read_rational(r)};
  } else if (b0 && !b1) {
    const std::uint64_t c = r.read_nat();
    if (c > r.remaining()) throw FormatError("code truncated");
    TableDist t;
    for (std::uint64_t i = 0; i < c; ++i) {
      BitString x = r.read_self_delimited();
      t.entries.emplace_back(std::move(x), read_rational(r));
    }
    d.node = std::move(t);
  } else {
    throw FormatError("unknown distribution tag 11");
  }
  if (!r.at_end()) throw FormatError("trailing bits after distribution description");
  validate(d);
  return d;
}

namespace {

class DistParser {
 public:
  explicit DistParser(std::string_view text) : text_(text) {}

  DistDescription parse() {
    DistDescription d;
    if (eat("unif(")) {
      if (text_.empty() || text_.back() != ')') fail("expected ')'");
      d = uniform_dist(parse_set(text_.substr(pos_, text_.size() - pos_ - 1)));
      pos_ = text_.size();
    } else if (eat("bern:")) {
      const std::uint64_t n = parse_nat();
      expect(",");
      d = bernoulli_dist(n, parse_q());
    } else if (eat("table{")) {
      TableDist t;
      do {
        BitString x = parse_bits();
        expect(":");
        t.entries.emplace_back(std::move(x), parse_q());
      } while (eat(","));
      expect("}");
      d.node = std::move(t);
    } else {
      fail("unknown distribution form");
    }
    if (pos_ != text_.size()) fail("unexpected trailing text");
    validate(d);
    return d;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw FormatError("distribution syntax: " + why + " in '" + std::string(text_) + "'");
  }
  bool eat(std::string_view token) {
    if (text_.substr(pos_).starts_with(token)) {
      pos_ += token.size();
      return true;
    }
    return false;
  }
  void expect(std::string_view token) {
    if (!eat(token)) fail("expected '" + std::string(token) + "'");
  }
  BitString parse_bits() {
    if (eat("-")) return {};
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (text_[pos_] == '0' || text_[pos_] == '1')) ++pos_;
    return BitString::parse(text_.substr(start, pos_ - start));
  }
  std::uint64_t parse_nat() {
    std::uint64_t v = 0;
    const char* begin = text_.data() + pos_;
    auto [ptr, ec] = std::from_chars(begin, text_.data() + text_.size(), v);
    if (ec != std::errc{} || ptr == begin) fail("expected a natural number");
    pos_ += static_cast<std::size_t>(ptr - begin);
    return v;
  }
  Rational parse_q() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '/')) ++pos_;
    return parse_rational(text_.substr(start, pos_ - start));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

DistDescription parse_dist(std::string_view text) { return DistParser(text).parse(); }

std::string format_dist(const DistDescription& d) {
  return std::visit(Overloaded{
                        [](const UniformDist& u) { return "unif(" + format_set(u.set) + ")"; },
                        [](const BernoulliDist& b) { return "bern:" + std::to_string(b.n) + "," + to_string(b.p); },
                        [](const TableDist& t) {
                          std::string out = "table{";
                          for (std::size_t i = 0; i < t.entries.size(); ++i) {
                            if (i > 0) out += ',';
                            out += t.entries[i].first.token() + ":" + to_string(t.entries[i].second);
                          }
                          return out + "}";
                        },
                    },
                    d.node);
}

Rational mass(const DistDescription& d, const BitString& x) {
  return std::visit(Overloaded{
                        [&](const UniformDist& u) -> Rational {
                          if (!member(u.set, x)) return 0;
                          return Rational(BigInt(1), set_size(u.set));
                        },
                        [&](const BernoulliDist& b) -> Rational {
                          if (x.size() != b.n) return 0;
                          const std::uint64_t w = x.weight();
                          return pow_rational(b.p, w) * pow_rational(1 - b.p, b.n - w);
                        },
                        [&](const TableDist& t) -> Rational {
                          auto it = std::lower_bound(t.entries.begin(), t.entries.end(), x,
                                                     [](const auto& e, const BitString& v) { return e.first < v; });
                          if (it == t.entries.end() || it->first != x) return 0;
                          return it->second;
                        },
                    },
                    d.node);
}

double neglog(const DistDescription& d, const BitString& x) {
  const Rational m = mass(d, x);
  if (m == 0) return kInfinity;
  return -log2(m);
}

std::vector<std::pair<BitString, Rational>> support(const DistDescription& d, std::size_t cap) {
  std::vector<std::pair<BitString, Rational>> out;
  std::visit(Overloaded{
                 [&](const UniformDist& u) {
                   const Rational m(BigInt(1), set_size(u.set));
                   for (auto& y : denote(u.set, cap)) out.emplace_back(std::move(y), m);
                 },
                 [&](const BernoulliDist& b) {
                   if (b.n > 24 || (std::uint64_t{1} << b.n) > cap) {
                     throw CapExceeded("Bernoulli support larger than cap " + std::to_string(cap));
                   }
                   for (auto& y : strings_of_length(b.n)) {
                     Rational m = mass(d, y);
                     out.emplace_back(std::move(y), std::move(m));
                   }
                 },
                 [&](const TableDist& t) { out = t.entries; },
             },
             d.node);
  return out;
}

Codebook codebook(const DistDescription& d) {
  std::vector<Rational> masses;
  for (const auto& [y, m] : support(d)) masses.push_back(m);
  return Codebook::build(masses);
}

std::shared_ptr<const ModelCondition> dist_condition(const DistDescription& d, const BitString& aux) {
  if (const auto* u = std::get_if<UniformDist>(&d.node)) return uniform_condition(u->set, aux);
  std::vector<BitString> domain;
  std::vector<Rational> masses;
  for (auto& [y, m] : support(d)) {
    domain.push_back(std::move(y));
    masses.push_back(std::move(m));
  }
  return std::make_shared<const ModelCondition>(std::move(domain), std::move(masses), aux);
}

namespace {

// Conditional tables above this cap take too long to build at desk scale.
constexpr unsigned kMaxModelCap = 30;

}  // namespace

DeficiencyP deficiency_p(const Workbench& wb, const BitString& x, const DistDescription& dist) {
  const Rational mx = mass(dist, x);
  if (mx == 0) throw std::invalid_argument("deficiency_p: '" + x.token() + "' has zero mass");
  const auto cond = dist_condition(dist);
  int max_codeword = 0;
  for (const auto& m : cond->masses()) {
    if (m > 0) max_codeword = std::max(max_codeword, ceil_neglog2(m));
  }
  const unsigned cap = model_table_cap(wb, static_cast<std::size_t>(max_codeword));
  if (cap > kMaxModelCap) throw CapExceeded("distribution needs a conditional table of length " + std::to_string(cap));
  const auto table = wb.conditional(Condition::model(cond), cap);

  DeficiencyP r;
  r.x = x;
  r.dist = dist;
  r.neglog_x = -log2(mx);
  // K(y|P) - neglog(y) = log2(2^K(y) P(y)); compare the rationals directly.
  auto score = [&](const BitString& y, const Rational& m) {
    auto k = table->k_of(y);
    if (!k) throw AbsentError("conditional table lacks support element '" + y.token() + "'");
    return std::make_pair(m * Rational(BigInt(1) << *k), *k);
  };
  const auto [score_x, kx] = score(x, mx);
  r.k_cond = kx;
  r.raw = r.neglog_x - static_cast<double>(kx);
  std::optional<Rational> best;
  for (std::size_t i = 0; i < cond->domain().size(); ++i) {
    if (cond->masses()[i] == 0) continue;
    const Rational s = score(cond->domain()[i], cond->masses()[i]).first;
    if (!best || s > *best) {
      best = s;
      r.argmax = cond->domain()[i];
    }
  }
  r.norm = log2(Rational(*best / score_x));
  return r;
}

std::size_t two_part_p(const BitString& x, const DistDescription& dist) {
  const Rational m = mass(dist, x);
  if (m == 0) throw std::invalid_argument("two_part_p: '" + x.token() + "' has zero mass");
  return code_length(dist) + static_cast<std::size_t>(ceil_neglog2(m));
}

std::vector<EnumeratedDist> enumerate_dists(const BitString& x, std::size_t alpha_max, const DistOptions& opts) {
  std::vector<EnumeratedDist> out;
  auto add = [&](DistDescription d) {
    BitString code = encode(d);
    if (code.size() < alpha_max) out.push_back({std::move(d), std::move(code)});
  };
  const bool all = opts.dist_class == DistClass::kAll;
  if ((all || opts.dist_class == DistClass::kUniformOnly) && alpha_max > 2) {
    for (auto& m : enumerate_models(x, alpha_max - 2, opts.set_options)) add(uniform_dist(std::move(m.desc)));
  }
  if (all || opts.dist_class == DistClass::kBernoulliOnly) {
    const std::size_t fixed = 2 + nat_code_length(x.size());
    // a >= 1 and b >= 2 cost at least 3 bits each
    if (fixed + 6 < alpha_max) {
      const std::size_t budget = alpha_max - 1 - fixed;
      for (std::uint64_t b = 2; nat_code_length(b) + 3 <= budget; ++b) {
        for (std::uint64_t a = 1; a < b && nat_code_length(a) + nat_code_length(b) <= budget; ++a) {
          if (std::gcd(a, b) == 1) add(bernoulli_dist(x.size(), Rational(BigInt(a), BigInt(b))));
        }
      }
    }
  }
  if (all) add(table_dist({{x, Rational(1)}}));
  std::sort(out.begin(), out.end(), [](const EnumeratedDist& a, const EnumeratedDist& b) { return a.code < b.code; });
  return out;
}

SuffStatP suffstat_p(const ComplexityTable& table, const BitString& x, std::size_t beta, std::size_t alpha_max,
                     const DistOptions& opts) {
  SuffStatP res;
  res.x = x;
  res.beta = beta;
  res.k_x = require_k(table, x);
  const std::size_t bound = std::min<std::size_t>(alpha_max, res.k_x + beta + 1);
  for (auto& m : enumerate_dists(x, bound, opts)) {
    const std::size_t total = two_part_p(x, m.dist);
    res.lambda_min = res.lambda_min ? std::min(*res.lambda_min, total) : total;
    if (total <= res.k_x + beta) res.optimal.push_back({std::move(m), total});
  }
  if (!res.optimal.empty()) res.minimal = res.optimal.front();
  res.no_statistic_in_class = res.optimal.empty();
  return res;
}

DistDescription pk(const ComplexityTable& table, unsigned k) {
  const SkIndex s = sk(table, k);
  if (s.members.empty()) throw std::invalid_argument("pk: S^" + std::to_string(k) + " is empty");
  return uniform_dist(list_set(s.members));
}

BernoulliReport bernoulli_demo(const ComplexityTable& table, std::size_t n, std::size_t beta) {
  if (n % 2 != 0 || n > 12) throw std::invalid_argument("bernoulli_demo: n must be even and <= 12");
  BernoulliReport report;
  report.n = n;
  report.beta = beta;
  for (const auto& x : strings_of_length(n)) {
    BernoulliRow row;
    row.x = x;
    row.k_x = require_k(table, x);
    row.hamming_total = two_part(x, hamming_set(n, x.weight()));
    row.lambda_min = suffstat(x, 0, code_length(singleton_set(x)) + 1).lambda_min;
    row.flagged = row.hamming_total > row.k_x + beta;
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace algstat
