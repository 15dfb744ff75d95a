#pragma once

// Law audits with regression against frozen constants.
//
// Each audit measures a machine-dependent slack. A frozen value is stored
// per key in a constants file; an audit passes when the measurement is
// within one bit of it. Exact audits (xr, theta.identity, theta.weight_suff)
// have no frozen value and pass only when the exact check holds.

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "algstat/workbench.hpp"

namespace algstat {

class Constants {
 public:
  // "key value" lines; '#' starts a comment. Throws FormatError.
  static Constants load(const std::filesystem::path& path);
  void save(const std::filesystem::path& path) const;

  std::optional<double> get(const std::string& key) const;
  void set(const std::string& key, double value) { values_[key] = value; }
  const std::map<std::string, double>& values() const { return values_; }

 private:
  std::map<std::string, double> values_;
};

struct AuditLine {
  std::string key;
  double measured = 0;
  std::optional<double> frozen;
  bool exact = false;             // pass/fail decided by the check itself
  bool higher_is_better = false;  // regression direction for frozen values
  bool pass = false;
  std::string detail;
};

// Slack allowed above (or below, for higher_is_better) a frozen value.
inline constexpr double kRegressionSlack = 1.0;

struct AuditContext {
  const Workbench& law_wb;    // large table for pairs (default L=30)
  const Workbench& model_wb;  // default table for model audits
  unsigned xr_max_len = 22;
};

// soi, pair_swap, mi_self, nonincrease, expected_mi, theta, beta_cal,
// optimal_typical, pk, sk_gap, xr, nonstoch
std::vector<std::string> audit_names();

// Runs one named audit group; pass/fail is filled in from `constants`.
std::vector<AuditLine> run_audit(const std::string& name, const AuditContext& ctx, const Constants& constants);

// Recomputes pass using the frozen value (exact lines keep their verdict).
void judge(AuditLine& line, const Constants& constants);

std::string format_audit_line(const AuditLine& line);

}  // namespace algstat
