#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "algstat/codec.hpp"
#include "algstat/enumerate.hpp"
#include "algstat/workbench.hpp"

namespace algstat {

std::optional<unsigned> k_of(const ComplexityTable& table, const BitString& x);
// Throws AbsentError naming the table cap when x has no program.
unsigned require_k(const ComplexityTable& table, const BitString& x);

// Exact conditional complexity from the workbench's cached table for `cond`.
std::optional<unsigned> k_cond(const Workbench& wb, const BitString& x, const Condition& cond);

// x* : the table witness of x, i.e. the first shortest program for x.
const BitString& shortest_program(const ComplexityTable& table, const BitString& x);
// Str(x*) as a condition; carries both x and K(x).
Condition star_condition(const ComplexityTable& table, const BitString& x);

struct MIRecord {
  BitString x, y;
  unsigned kx = 0, ky = 0, kxy = 0;  // kxy = K(<x,y>)
  int info = 0;                      // kx + ky - kxy
  unsigned kyx = 0;                  // K(<y,x>), for the swapped order
  int info_swapped = 0;              // kx + ky - kyx
};

// I(x:y) = K(x) + K(y) - K(<x,y>), reported in both argument orders.
MIRecord mutual_info(const ComplexityTable& table, const BitString& x, const BitString& y);

struct SoiReport {
  std::size_t len_cap = 0;
  // max |K(<x,y>) - K(x) - K(y | x*)|
  int max_slack = 0;
  BitString slack_x, slack_y;
  // least c >= 0 with K(x|y*) <= K(z|y*) + K(x|z*) + c on the sweep
  int triangle_c = 0;
  BitString tri_x, tri_y, tri_z;
  std::size_t pairs = 0;
  std::size_t triples = 0;
  std::size_t skipped = 0;  // pairs whose <x,y> is absent from the table
};

// Additivity and directed triangle audit over all strings of length <= len_cap.
SoiReport soi_audit(const Workbench& wb, std::size_t len_cap);

struct PairSwapReport {
  int max_gap = 0;  // max |I(x:y) - I(y:x)|
  BitString x, y;
  std::size_t pairs = 0;
  std::size_t skipped = 0;
};
PairSwapReport pair_swap_audit(const ComplexityTable& table, std::size_t len_cap);

struct SelfInfoReport {
  // I(x:x) - (K(x) - K(x | x*)) over the sweep
  int min_gap = 0;
  int max_gap = 0;
  std::size_t strings = 0;
  std::size_t skipped = 0;
};
SelfInfoReport self_info_audit(const Workbench& wb, std::size_t len_cap);

}  // namespace algstat
