#pragma once

// Probabilistic and algorithmic information on small exact instances:
// joint models p(theta, x) = p1(theta) f_theta(x), statistics, Shannon
// mutual information, and audits of the algorithmic information laws.

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "algstat/complexity.hpp"
#include "algstat/models_prob.hpp"
#include "algstat/workbench.hpp"

namespace algstat {

struct ThetaEntry {
  BitString label;
  Rational prior;
  DistDescription dist;
};

struct JointModel {
  std::vector<ThetaEntry> thetas;

  // Throws FormatError unless priors are positive and sum to 1.
  void validate() const;
  // A copy with the priors replaced.
  JointModel with_prior(const std::vector<Rational>& prior) const;
};

struct JointCell {
  std::size_t theta = 0;
  BitString x;
  Rational p;  // p(theta, x) > 0
};
// Every positive cell, theta-major, x in canonical order.
std::vector<JointCell> joint_cells(const JointModel& joint);

// Description length of the joint: bar(b(c)), then per theta its label',
// prior and distribution code. Used as the proxy for K(p).
std::size_t joint_code_length(const JointModel& joint);

class Statistic {
 public:
  enum class Kind { kIdentity, kWeight, kConstant, kMap };

  static Statistic identity() { return Statistic(Kind::kIdentity); }
  static Statistic weight() { return Statistic(Kind::kWeight); }
  static Statistic constant() { return Statistic(Kind::kConstant); }
  static Statistic from_map(std::map<BitString, BitString> m);
  // identity | weight | constant | map{x:t,...}
  static Statistic parse(std::string_view text);

  Kind kind() const { return kind_; }
  // identity: x; weight: b(w(x)); constant: the empty string; map: lookup.
  BitString apply(const BitString& x) const;
  std::string name() const;

 private:
  explicit Statistic(Kind kind) : kind_(kind) {}
  Kind kind_;
  std::map<BitString, BitString> map_;
};

struct JointFile {
  JointModel joint;
  std::optional<Statistic> statistic;
};

// Lines: "theta <label> <prior>", "dist <label> <DistLang>",
// "statistic <name>"; '#' starts a comment.
JointFile parse_joint(std::istream& in);
JointFile parse_joint_text(std::string_view text);

struct ProbMI {
  double h_theta = 0;
  double h_x = 0;
  double h_joint = 0;
  double mi = 0;  // I(Theta; X)
};

ProbMI prob_mi(const JointModel& joint);
// I(Theta; T(X)) with T applied to the data.
ProbMI prob_mi(const JointModel& joint, const Statistic& stat);

struct PriorCheck {
  std::vector<Rational> prior;
  double mi_x = 0;
  double mi_t = 0;
  bool sufficient = false;  // |mi_x - mi_t| <= 1e-9
};

// The given prior followed by nine grid priors: theta_0 gets s/10 and the
// rest share 1 - s/10 equally, s = 1..9.
std::vector<std::vector<Rational>> default_prior_sweep(const JointModel& joint);
std::vector<PriorCheck> prob_suff_check(const JointModel& joint, const Statistic& stat,
                                        const std::vector<std::vector<Rational>>& priors);
inline bool all_sufficient(const std::vector<PriorCheck>& checks) {
  for (const auto& c : checks) {
    if (!c.sufficient) return false;
  }
  return true;
}

struct ExpectedMIReport {
  double algorithmic = 0;     // sum p(theta,x) I(theta:x)
  double probabilistic = 0;   // I(Theta;X)
  double slack = 0;           // |algorithmic - probabilistic|
  std::size_t k_p = 0;        // joint_code_length
};

// Throws AbsentError when a label, string or pair is not in the table.
ExpectedMIReport expected_mi_audit(const JointModel& joint, const ComplexityTable& table);

struct Transform {
  std::string name;
  BitString program;  // run with condition Str(x)
};
// const (HALT), copy4, droplast4 (copies 3 bits), first2.
std::vector<Transform> default_transforms();

struct NonIncreaseReport {
  int max_deficit = 0;  // max I(q(x):y) - I(x:y) - l(q)
  BitString x, y;
  std::string transform;
  std::size_t triples = 0;
  std::size_t skipped = 0;  // q did not halt, or a pair is missing from the table
};

NonIncreaseReport nonincrease_audit(const ComplexityTable& table, const std::vector<Transform>& transforms,
                                    std::size_t len_cap, const Budgets& budgets = {});

struct ThetaRow {
  std::size_t theta = 0;
  BitString x;
  BitString s;  // S(x)
  Rational p;
  int d = 0;    // I(theta:x) - I(theta:S(x))
};

struct ThetaSuffReport {
  std::vector<ThetaRow> rows;
  int threshold = 0;
  Rational mass_within;              // p-mass of rows with d <= threshold
  int max_abs_d = 0;
  // least t such that the p-mass with d <= t is at least 9/10
  int tau90 = 0;
  std::vector<PriorCheck> prob_checks;
  bool prob_sufficient = false;
  // max over rows of |[K(x|theta*) + d] - [K(S(x)|theta*) + ceil(log2 |T^-1(S(x))|)]|
  int claim1_gap = 0;
};

ThetaSuffReport theta_suff_audit(const Workbench& wb, const JointModel& joint, const Statistic& stat, int threshold);

// Sample joints used by the audits.
JointModel singleton_joint();     // one theta, x = "0" with certainty
JointModel correlated_joint();    // theta in {0,1} uniform, x = theta
JointModel independent_joint();   // theta in {0,1} uniform, x uniform on {0,1}
JointModel bernoulli_joint();     // theta in {1/4, 3/4} uniform, n = 2

}  // namespace algstat
