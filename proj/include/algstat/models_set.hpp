#pragma once

// Finite-set models: model enumeration, randomness deficiency, two-part
// codes, the structure function and sufficient statistics.
//
// A model's complexity is the length of its SetLang code. The conditional
// complexity K(x|S) is computed exactly on a table whose condition is the
// uniform distribution on S, so SFDECODE can index any element of S.

#include <cstddef>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "algstat/complexity.hpp"
#include "algstat/setlang.hpp"
#include "algstat/workbench.hpp"

namespace algstat {

enum class ModelClass { kAll, kHammingOnly };

struct ModelOptions {
  unsigned union_depth = 1;  // only 0 and 1 are supported
  unsigned union_width = 3;
  unsigned list_cap = 4;
  ModelClass model_class = ModelClass::kAll;
  std::size_t max_models = 2'000'000;
};

struct EnumeratedModel {
  SetDescription desc;
  BitString code;
  std::size_t len() const { return code.size(); }
};

// Every description in the grammar (restricted by opts) with x as a member
// and code length < alpha_max, ordered by (length, code). Throws
// CapExceeded when more than opts.max_models would be produced.
std::vector<EnumeratedModel> enumerate_models(const BitString& x, std::size_t alpha_max, const ModelOptions& opts = {});

// Largest set a deficiency computation will materialize.
inline constexpr std::size_t kDeficiencySetCap = std::size_t{1} << 16;

// Uniform distribution on S as a machine condition, optionally carrying aux
// bits for COPYIN.
std::shared_ptr<const ModelCondition> uniform_condition(const SetDescription& desc, const BitString& aux = {});
// The condition for S*: uniform on S, with aux = <code, b(len(code))>.
std::shared_ptr<const ModelCondition> star_set_condition(const SetDescription& desc);

// Conditional cap large enough that every element of a model whose longest
// codeword has `max_codeword` bits is present: SFDECODE, codeword, HALT.
unsigned model_table_cap(const Workbench& wb, std::size_t max_codeword);

struct DeficiencyRecord {
  BitString x;
  SetDescription desc;
  std::size_t len = 0;
  int log_size = 0;           // ceil(log2 |S|)
  unsigned k_cond_set = 0;    // K(x | S)
  int delta_raw = 0;          // log_size - K(x|S)
  int delta_norm = 0;         // max_{y in S} K(y|S) - K(x|S)
  unsigned k_cond_star = 0;   // K(x | S*)
  int delta_star_raw = 0;     // log_size - K(x|S*)
  int delta_star_norm = 0;    // max_{y in S} K(y|S*) - K(x|S*)
};

// Throws std::invalid_argument when x is not in S, CapExceeded when S is
// larger than kDeficiencySetCap.
DeficiencyRecord deficiency(const Workbench& wb, const BitString& x, const SetDescription& desc);
// Only the S* fields; the plain fields are left zero.
DeficiencyRecord star_deficiency(const Workbench& wb, const BitString& x, const SetDescription& desc);

// len(desc) + ceil(log2 |S|)
std::size_t two_part(const BitString& x, const SetDescription& desc);

struct CurveRow {
  std::size_t alpha = 0;
  double h = 0;                       // min log2 |S| over models with len < alpha
  int h_ceil = 0;                     // the same minimum with ceil(log2 |S|)
  std::optional<int> beta;            // min delta_norm
  std::optional<int> beta_star;       // min delta_star_norm
  double lambda() const { return h + static_cast<double>(alpha); }
};

struct StructureCurve {
  BitString x;
  std::vector<CurveRow> rows;  // ascending alpha, only where a model exists
};

// Rows for alpha = 1 .. alpha_max. Models longer than Singleton(x) cannot
// lower h, beta or beta_star below 0, so enumeration stops there.
StructureCurve structfn(const Workbench& wb, const BitString& x, std::size_t alpha_max, const ModelOptions& opts = {},
                        bool with_deficiency = true);
void write_curve_csv(const StructureCurve& curve, std::ostream& out);

struct ScoredModel {
  EnumeratedModel model;
  std::size_t two_part = 0;
};

struct SuffStatResult {
  BitString x;
  std::size_t beta = 0;
  std::size_t lambda_min = 0;                  // over the unrestricted class
  std::optional<std::size_t> class_lambda_min;  // over opts.model_class
  std::vector<ScoredModel> optimal;             // in class, two_part <= lambda_min + beta
  std::optional<ScoredModel> minimal;           // least (len, code) among optimal
  bool no_statistic_in_class = false;
};

SuffStatResult suffstat(const BitString& x, std::size_t beta, std::size_t alpha_max, const ModelOptions& opts = {});

// True iff some model with len <= alpha contains x and K(x) >= ceil(log2|S|) - beta.
bool stochastic(const ComplexityTable& table, const BitString& x, std::size_t alpha, int beta,
                const ModelOptions& opts = {});

struct NonstochRow {
  BitString x;
  std::optional<std::size_t> min_alpha;  // least grid alpha with a model len <= alpha, delta_star_norm <= beta
};

struct NonstochReport {
  std::size_t n = 0;
  int beta = 0;
  std::vector<NonstochRow> rows;  // canonical order of x
  std::size_t mode_alpha = 0;     // most common min_alpha (smallest on ties)
  std::size_t max_alpha = 0;
  std::vector<BitString> argmax;  // strings attaining max_alpha
  std::size_t margin() const { return max_alpha - mode_alpha; }
};

// Exhaustive over all strings of length n (n <= 12). An empty grid means
// every alpha from 1 to len(Singleton(x)).
NonstochReport nonstoch_scan(const Workbench& wb, std::size_t n, std::vector<std::size_t> alpha_grid, int beta,
                             const ModelOptions& opts = {});

}  // namespace algstat
