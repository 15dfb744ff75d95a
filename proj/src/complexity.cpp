#include "algstat/complexity.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>

namespace algstat {

std::optional<unsigned> k_of(const ComplexityTable& table, const BitString& x) { return table.k_of(x); }

unsigned require_k(const ComplexityTable& table, const BitString& x) {
  if (auto k = table.k_of(x)) return *k;
  throw AbsentError("no program of length <= " + std::to_string(table.max_len()) + " outputs '" + x.token() +
                    "'; rebuild with a larger --max-len");
}

std::optional<unsigned> k_cond(const Workbench& wb, const BitString& x, const Condition& cond) {
  return wb.conditional(cond)->k_of(x);
}

const BitString& shortest_program(const ComplexityTable& table, const BitString& x) {
  require_k(table, x);
  return table.find(x)->witness;
}

Condition star_condition(const ComplexityTable& table, const BitString& x) {
  return Condition::str(shortest_program(table, x));
}

MIRecord mutual_info(const ComplexityTable& table, const BitString& x, const BitString& y) {
  MIRecord r;
  r.x = x;
  r.y = y;
  r.kx = require_k(table, x);
  r.ky = require_k(table, y);
  r.kxy = require_k(table, pair_encode(x, y));
  r.kyx = require_k(table, pair_encode(y, x));
  r.info = static_cast<int>(r.kx + r.ky) - static_cast<int>(r.kxy);
  r.info_swapped = static_cast<int>(r.kx + r.ky) - static_cast<int>(r.kyx);
  return r;
}

SoiReport soi_audit(const Workbench& wb, std::size_t len_cap) {
  const ComplexityTable& table = wb.table();
  const std::vector<BitString> strings = strings_up_to(len_cap);
  SoiReport report;
  report.len_cap = len_cap;

  // K(· | s*) for every s in the sweep
  std::vector<std::shared_ptr<const ComplexityTable>> given_star;
  for (const auto& s : strings) given_star.push_back(wb.conditional(star_condition(table, s)));
  auto cond_k = [&](std::size_t target, std::size_t given) -> std::optional<int> {
    auto k = given_star[given]->k_of(strings[target]);
    if (!k) return std::nullopt;
    return static_cast<int>(*k);
  };

  bool first = true;
  for (std::size_t i = 0; i < strings.size(); ++i) {
    const int kx = static_cast<int>(require_k(table, strings[i]));
    for (std::size_t j = 0; j < strings.size(); ++j) {
      const auto kxy = table.k_of(pair_encode(strings[i], strings[j]));
      const auto ky_given_x = cond_k(j, i);
      if (!kxy || !ky_given_x) {
        ++report.skipped;
        continue;
      }
      ++report.pairs;
      const int slack = std::abs(static_cast<int>(*kxy) - kx - *ky_given_x);
      if (first || slack > report.max_slack) {
        report.max_slack = slack;
        report.slack_x = strings[i];
        report.slack_y = strings[j];
        first = false;
      }
    }
  }

  for (std::size_t x = 0; x < strings.size(); ++x) {
    for (std::size_t y = 0; y < strings.size(); ++y) {
      const auto x_given_y = cond_k(x, y);
      if (!x_given_y) continue;
      for (std::size_t z = 0; z < strings.size(); ++z) {
        const auto z_given_y = cond_k(z, y);
        const auto x_given_z = cond_k(x, z);
        if (!z_given_y || !x_given_z) continue;
        ++report.triples;
        const int deficit = *x_given_y - *z_given_y - *x_given_z;
        if (deficit > report.triangle_c) {
          report.triangle_c = deficit;
          report.tri_x = strings[x];
          report.tri_y = strings[y];
          report.tri_z = strings[z];
        }
      }
    }
  }
  return report;
}

PairSwapReport pair_swap_audit(const ComplexityTable& table, std::size_t len_cap) {
  PairSwapReport report;
  const auto strings = strings_up_to(len_cap);
  for (const auto& x : strings) {
    for (const auto& y : strings) {
      if (!table.k_of(pair_encode(x, y)) || !table.k_of(pair_encode(y, x))) {
        ++report.skipped;
        continue;
      }
      ++report.pairs;
      const MIRecord r = mutual_info(table, x, y);
      const int gap = std::abs(r.info - r.info_swapped);
      if (gap > report.max_gap) {
        report.max_gap = gap;
        report.x = x;
        report.y = y;
      }
    }
  }
  return report;
}

SelfInfoReport self_info_audit(const Workbench& wb, std::size_t len_cap) {
  const ComplexityTable& table = wb.table();
  SelfInfoReport report;
  report.min_gap = std::numeric_limits<int>::max();
  report.max_gap = std::numeric_limits<int>::min();
  for (const auto& x : strings_up_to(len_cap)) {
    if (!table.k_of(pair_encode(x, x))) {
      ++report.skipped;
      continue;
    }
    const MIRecord r = mutual_info(table, x, x);
    const auto k_self = k_cond(wb, x, star_condition(table, x));
    if (!k_self) {
      ++report.skipped;
      continue;
    }
    const int gap = r.info - (static_cast<int>(r.kx) - static_cast<int>(*k_self));
    report.min_gap = std::min(report.min_gap, gap);
    report.max_gap = std::max(report.max_gap, gap);
    ++report.strings;
  }
  if (report.strings == 0) report.min_gap = report.max_gap = 0;
  return report;
}

}  // namespace algstat
