#include "algstat/models_set.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>
#include <map>
#include <stdexcept>

#include "algstat/codec.hpp"

namespace algstat {

namespace {

// Strings whose self-delimiting code fits in `budget` bits, canonical order.
std::vector<BitString> strings_within(std::size_t budget) {
  std::size_t max_len = 0;
  bool any = false;
  while (self_delimit_length(max_len) <= budget) {
    any = true;
    ++max_len;
  }
  if (!any) return {};
  return strings_up_to(max_len - 1);
}

// Largest n with nat_code_length(n) <= budget, or nullopt.
std::optional<std::uint64_t> max_nat_within(std::size_t budget) {
  if (budget < 1) return std::nullopt;
  const std::size_t width = (budget - 1) / 2 + 1;  // bit_width(n + 1)
  if (width > 62) return std::uint64_t{1} << 62;
  return (std::uint64_t{1} << width) - 2;
}

class ModelSink {
 public:
  explicit ModelSink(std::size_t max_models) : max_models_(max_models) {}

  void add(SetDescription d) {
    if (out_.size() >= max_models_) {
      throw CapExceeded("model enumeration exceeded " + std::to_string(max_models_) + " models");
    }
    BitString code = encode(d);
    out_.push_back({std::move(d), std::move(code)});
  }
  std::vector<EnumeratedModel> take() { return std::move(out_); }

 private:
  std::size_t max_models_;
  std::vector<EnumeratedModel> out_;
};

// Strictly increasing sequences of `count` strings from `pool` (canonical
// order) whose self-delimiting lengths sum to at most `budget`.
void for_each_increasing(const std::vector<BitString>& pool, std::size_t count, std::size_t budget,
                         const std::function<void(const std::vector<BitString>&)>& fn) {
  std::vector<BitString> chosen;
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t left) {
    if (chosen.size() == count) {
      fn(chosen);
      return;
    }
    for (std::size_t i = start; i < pool.size(); ++i) {
      const std::size_t cost = self_delimit_length(pool[i].size());
      // pool is sorted by length, so later strings cost at least as much
      if (cost > left) break;
      chosen.push_back(pool[i]);
      rec(i + 1, left - cost);
      chosen.pop_back();
    }
  };
  rec(0, budget);
}

// Every base (non-union) description with code length <= max_len.
void all_bases(std::size_t max_len, const ModelOptions& opts, const std::function<void(SetDescription)>& fn) {
  if (max_len < 3) return;
  for (const auto& y : strings_within(max_len - 2)) fn(singleton_set(y));
  if (auto top = max_nat_within(max_len - 2)) {
    for (std::uint64_t n = 0; n <= *top; ++n) fn(all_set(n));
  }
  if (max_len >= 4) {
    for (const auto& p : strings_within(max_len - 4)) {
      auto top = max_nat_within(max_len - 3 - self_delimit_length(p.size()));
      if (!top) continue;
      for (std::uint64_t n = p.size(); n <= *top; ++n) fn(cyl_set(p, n));
    }
    if (auto top_n = max_nat_within(max_len - 4)) {
      for (std::uint64_t n = 0; n <= *top_n; ++n) {
        auto top_s = max_nat_within(max_len - 3 - nat_code_length(n));
        if (!top_s) break;
        for (std::uint64_t s = 0; s <= std::min(n, *top_s); ++s) fn(hamming_set(n, s));
      }
    }
    for (std::size_t c = 1; c <= opts.list_cap; ++c) {
      const std::size_t header = 3 + nat_code_length(c);
      if (header + c > max_len) break;
      const auto pool = strings_within(max_len - header);
      for_each_increasing(pool, c, max_len - header,
                          [&](const std::vector<BitString>& elems) { fn(list_set(elems)); });
    }
  }
}

// Base descriptions with x as a member and code length <= max_len.
void x_bases(const BitString& x, std::size_t max_len, const ModelOptions& opts,
             const std::function<void(SetDescription)>& fn) {
  auto emit = [&](SetDescription d) {
    if (code_length(d) <= max_len) fn(std::move(d));
  };
  const std::uint64_t n = x.size();
  if (opts.model_class == ModelClass::kHammingOnly) {
    emit(hamming_set(n, x.weight()));
    return;
  }
  emit(singleton_set(x));
  emit(all_set(n));
  for (std::size_t l = 0; l <= x.size(); ++l) emit(cyl_set(x.substr(0, l), n));
  emit(hamming_set(n, x.weight()));
  const std::size_t x_cost = self_delimit_length(x.size());
  for (std::size_t c = 1; c <= opts.list_cap; ++c) {
    const std::size_t fixed = 3 + nat_code_length(c) + x_cost;
    if (fixed > max_len) break;
    const std::size_t budget = max_len - fixed;
    std::vector<BitString> pool = strings_within(budget);
    std::erase(pool, x);
    for_each_increasing(pool, c - 1, budget, [&](const std::vector<BitString>& others) {
      std::vector<BitString> elems = others;
      elems.insert(std::upper_bound(elems.begin(), elems.end(), x), x);
      fn(list_set(std::move(elems)));
    });
  }
}

}  // namespace

std::vector<EnumeratedModel> enumerate_models(const BitString& x, std::size_t alpha_max, const ModelOptions& opts) {
  if (opts.union_depth > 1) throw std::invalid_argument("enumerate_models: union depth above 1 is not supported");
  ModelSink sink(opts.max_models);
  if (alpha_max < 2) return {};
  const std::size_t max_len = alpha_max - 1;

  x_bases(x, max_len, opts, [&](SetDescription d) { sink.add(std::move(d)); });

  const bool unions = opts.union_depth >= 1 && opts.union_width >= 2 && opts.model_class == ModelClass::kAll;
  if (unions && max_len >= 3 + nat_code_length(2) + 6) {
    // Every part of a union is at least 3 bits long.
    const std::size_t part_cap = max_len - 3 - nat_code_length(2) - 3;
    struct Part {
      SetDescription desc;
      std::size_t len;
      bool has_x;
    };
    std::vector<Part> pool;
    all_bases(part_cap, opts, [&](SetDescription d) {
      if (pool.size() >= opts.max_models) throw CapExceeded("model enumeration: union part pool too large");
      const std::size_t len = code_length(d);
      const bool has_x = member(d, x);
      pool.push_back({std::move(d), len, has_x});
    });
    std::stable_sort(pool.begin(), pool.end(), [](const Part& a, const Part& b) { return a.len < b.len; });

    std::vector<const Part*> seq;
    for (std::size_t c = 2; c <= opts.union_width; ++c) {
      const std::size_t header = 3 + nat_code_length(c);
      if (header + 3 * c > max_len) break;
      std::function<void(std::size_t, bool)> rec = [&](std::size_t left, bool has_x) {
        if (seq.size() == c) {
          if (!has_x) return;
          std::vector<SetDescription> parts;
          for (const auto* p : seq) parts.push_back(p->desc);
          sink.add(union_set(std::move(parts)));
          return;
        }
        const std::size_t still_needed = 3 * (c - seq.size() - 1);
        for (const auto& p : pool) {
          if (p.len + still_needed > left) break;
          seq.push_back(&p);
          rec(left - p.len, has_x || p.has_x);
          seq.pop_back();
        }
      };
      rec(max_len - header, false);
    }
  }

  auto out = sink.take();
  std::sort(out.begin(), out.end(), [](const EnumeratedModel& a, const EnumeratedModel& b) { return a.code < b.code; });
  return out;
}

std::shared_ptr<const ModelCondition> uniform_condition(const SetDescription& desc, const BitString& aux) {
  std::vector<BitString> domain = denote(desc, kDeficiencySetCap);
  const Rational mass(1, static_cast<long long>(domain.size()));
  std::vector<Rational> masses(domain.size(), mass);
  return std::make_shared<const ModelCondition>(std::move(domain), std::move(masses), aux);
}

std::shared_ptr<const ModelCondition> star_set_condition(const SetDescription& desc) {
  const BitString code = encode(desc);
  return uniform_condition(desc, pair_encode(code, BitString::from_nat(code.size())));
}

unsigned model_table_cap(const Workbench& wb, std::size_t max_codeword) {
  return std::max<unsigned>(wb.config().cond_max_len, static_cast<unsigned>(7 + max_codeword));
}

namespace {

struct CondStats {
  unsigned k_x = 0;
  unsigned k_max = 0;
};

CondStats cond_stats(const Workbench& wb, const BitString& x, const std::shared_ptr<const ModelCondition>& model,
                     int log_size) {
  const auto table = wb.conditional(Condition::model(model), model_table_cap(wb, static_cast<std::size_t>(log_size)));
  CondStats s;
  for (const auto& y : model->domain()) {
    auto k = table->k_of(y);
    if (!k) throw AbsentError("conditional table lacks model element '" + y.token() + "'");
    s.k_max = std::max(s.k_max, *k);
    if (y == x) s.k_x = *k;
  }
  return s;
}

DeficiencyRecord deficiency_impl(const Workbench& wb, const BitString& x, const SetDescription& desc, bool plain,
                                 bool star) {
  if (!member(desc, x)) throw std::invalid_argument("deficiency: '" + x.token() + "' is not in " + format_set(desc));
  DeficiencyRecord r;
  r.x = x;
  r.desc = desc;
  r.len = code_length(desc);
  r.log_size = log_size(desc);
  if (plain) {
    const CondStats s = cond_stats(wb, x, uniform_condition(desc), r.log_size);
    r.k_cond_set = s.k_x;
    r.delta_raw = r.log_size - static_cast<int>(s.k_x);
    r.delta_norm = static_cast<int>(s.k_max) - static_cast<int>(s.k_x);
  }
  if (star) {
    const CondStats s = cond_stats(wb, x, star_set_condition(desc), r.log_size);
    r.k_cond_star = s.k_x;
    r.delta_star_raw = r.log_size - static_cast<int>(s.k_x);
    r.delta_star_norm = static_cast<int>(s.k_max) - static_cast<int>(s.k_x);
  }
  return r;
}

}  // namespace

DeficiencyRecord deficiency(const Workbench& wb, const BitString& x, const SetDescription& desc) {
  return deficiency_impl(wb, x, desc, true, true);
}

DeficiencyRecord star_deficiency(const Workbench& wb, const BitString& x, const SetDescription& desc) {
  return deficiency_impl(wb, x, desc, false, true);
}

std::size_t two_part(const BitString& x, const SetDescription& desc) {
  if (!member(desc, x)) throw std::invalid_argument("two_part: '" + x.token() + "' is not in " + format_set(desc));
  return code_length(desc) + static_cast<std::size_t>(log_size(desc));
}

StructureCurve structfn(const Workbench& wb, const BitString& x, std::size_t alpha_max, const ModelOptions& opts,
                        bool with_deficiency) {
  const std::size_t singleton_len = code_length(singleton_set(x));
  const auto models = enumerate_models(x, std::min(alpha_max, singleton_len + 1), opts);

  StructureCurve curve;
  curve.x = x;
  std::optional<double> h;
  int h_ceil = 0;
  std::optional<int> beta, beta_star;
  std::size_t next = 0;
  for (std::size_t alpha = 1; alpha <= alpha_max; ++alpha) {
    for (; next < models.size() && models[next].len() < alpha; ++next) {
      const auto& d = models[next].desc;
      const double lg = log2(set_size(d));
      if (!h || lg < *h) h = lg;
      const int lc = log_size(d);
      if (next == 0 || lc < h_ceil) h_ceil = lc;
      if (with_deficiency) {
        const DeficiencyRecord r = deficiency(wb, x, d);
        beta = beta ? std::min(*beta, r.delta_norm) : r.delta_norm;
        beta_star = beta_star ? std::min(*beta_star, r.delta_star_norm) : r.delta_star_norm;
      }
    }
    if (!h) continue;
    CurveRow row;
    row.alpha = alpha;
    row.h = *h;
    row.h_ceil = h_ceil;
    row.beta = beta;
    row.beta_star = beta_star;
    curve.rows.push_back(row);
  }
  return curve;
}

void write_curve_csv(const StructureCurve& curve, std::ostream& out) {
  out << "alpha,h,beta,beta_star,lambda\n";
  char buf[64];
  for (const auto& row : curve.rows) {
    out << row.alpha << ',';
    std::snprintf(buf, sizeof buf, "%.9f", row.h);
    out << buf << ',';
    if (row.beta) out << *row.beta;
    out << ',';
    if (row.beta_star) out << *row.beta_star;
    out << ',';
    std::snprintf(buf, sizeof buf, "%.9f", row.lambda());
    out << buf << '\n';
  }
}

SuffStatResult suffstat(const BitString& x, std::size_t beta, std::size_t alpha_max, const ModelOptions& opts) {
  SuffStatResult result;
  result.x = x;
  result.beta = beta;

  // Nothing longer than Singleton(x) can beat its two-part total.
  ModelOptions unrestricted = opts;
  unrestricted.model_class = ModelClass::kAll;
  const std::size_t singleton_len = code_length(singleton_set(x));
  result.lambda_min = singleton_len;
  for (const auto& m : enumerate_models(x, singleton_len + 1, unrestricted)) {
    result.lambda_min = std::min(result.lambda_min, two_part(x, m.desc));
  }

  const std::size_t bound = std::min(alpha_max, result.lambda_min + beta + 1);
  for (auto& m : enumerate_models(x, bound, opts)) {
    const std::size_t total = two_part(x, m.desc);
    result.class_lambda_min = result.class_lambda_min ? std::min(*result.class_lambda_min, total) : total;
    if (total <= result.lambda_min + beta) result.optimal.push_back({std::move(m), total});
  }
  // enumerate_models returns (len, code) order, so the first optimal model is minimal
  if (!result.optimal.empty()) result.minimal = result.optimal.front();
  result.no_statistic_in_class = result.optimal.empty();
  return result;
}

bool stochastic(const ComplexityTable& table, const BitString& x, std::size_t alpha, int beta,
                const ModelOptions& opts) {
  const int kx = static_cast<int>(require_k(table, x));
  std::size_t bound = alpha + 1;
  // Singleton(x) satisfies the deficiency bound whenever beta >= 0.
  if (opts.model_class == ModelClass::kAll && beta >= 0) {
    bound = std::min(bound, code_length(singleton_set(x)) + 1);
  }
  for (const auto& m : enumerate_models(x, bound, opts)) {
    if (m.len() <= alpha && kx >= log_size(m.desc) - beta) return true;
  }
  return false;
}

NonstochReport nonstoch_scan(const Workbench& wb, std::size_t n, std::vector<std::size_t> alpha_grid, int beta,
                             const ModelOptions& opts) {
  if (n > 12) throw std::invalid_argument("nonstoch_scan: n must be <= 12");
  std::sort(alpha_grid.begin(), alpha_grid.end());
  NonstochReport report;
  report.n = n;
  report.beta = beta;
  std::map<std::size_t, std::size_t> counts;
  for (const auto& x : strings_of_length(n)) {
    const std::size_t singleton_len = code_length(singleton_set(x));
    std::vector<std::size_t> grid = alpha_grid;
    if (grid.empty()) {
      for (std::size_t a = 1; a <= singleton_len; ++a) grid.push_back(a);
    }
    NonstochRow row;
    row.x = x;
    const std::size_t bound = std::min(grid.back(), singleton_len) + 1;
    for (const auto& m : enumerate_models(x, bound, opts)) {
      if (star_deficiency(wb, x, m.desc).delta_star_norm > beta) continue;
      auto it = std::lower_bound(grid.begin(), grid.end(), m.len());
      if (it != grid.end()) row.min_alpha = *it;
      break;
    }
    if (row.min_alpha) ++counts[*row.min_alpha];
    report.rows.push_back(std::move(row));
  }
  std::size_t best = 0;
  for (const auto& [alpha, count] : counts) {
    if (count > best) {
      best = count;
      report.mode_alpha = alpha;
    }
    report.max_alpha = std::max(report.max_alpha, alpha);
  }
  for (const auto& row : report.rows) {
    if (row.min_alpha && *row.min_alpha == report.max_alpha) report.argmax.push_back(row.x);
  }
  return report;
}

}  // namespace algstat
