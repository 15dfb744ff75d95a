#include "algstat/audits.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "algstat/complexity.hpp"
#include "algstat/infolaws.hpp"
#include "algstat/models_prob.hpp"
#include "algstat/models_set.hpp"
#include "algstat/skstats.hpp"

namespace algstat {

Constants Constants::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open constants file " + path.string());
  Constants c;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string key;
    double value = 0;
    if (!(ls >> key)) continue;
    if (!(ls >> value)) {
      throw FormatError("constants file " + path.string() + " line " + std::to_string(line_no) + ": missing value");
    }
    c.values_[key] = value;
  }
  return c;
}

void Constants::save(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write constants file " + path.string());
  out << "# frozen audit constants; regenerate with: algstat laws --bless\n";
  char buf[64];
  for (const auto& [key, value] : values_) {
    std::snprintf(buf, sizeof buf, "%.6f", value);
    out << key << ' ' << buf << '\n';
  }
}

std::optional<double> Constants::get(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

void judge(AuditLine& line, const Constants& constants) {
  if (line.exact) return;
  line.frozen = constants.get(line.key);
  if (!line.frozen) {
    line.pass = false;
    return;
  }
  // tiny epsilon so real-valued slacks that equal the bound are not failed by rounding
  constexpr double kEps = 1e-9;
  line.pass = line.higher_is_better ? line.measured >= *line.frozen - kRegressionSlack - kEps
                                    : line.measured <= *line.frozen + kRegressionSlack + kEps;
}

std::string format_audit_line(const AuditLine& line) {
  char buf[256];
  std::string out = line.pass ? "PASS " : "FAIL ";
  out += line.key;
  std::snprintf(buf, sizeof buf, " measured=%.6g", line.measured);
  out += buf;
  if (line.exact) {
    out += " (exact)";
  } else if (line.frozen) {
    std::snprintf(buf, sizeof buf, " frozen=%.6g", *line.frozen);
    out += buf;
  } else {
    out += " frozen=missing";
  }
  if (!line.detail.empty()) out += " " + line.detail;
  return out;
}

std::vector<std::string> audit_names() {
  return {"soi",      "pair_swap", "mi_self", "nonincrease", "expected_mi", "theta",
          "beta_cal", "optimal_typical", "pk", "sk_gap", "xr", "nonstoch"};
}

namespace {

AuditLine slack(std::string key, double measured, std::string detail = {}) {
  AuditLine l;
  l.key = std::move(key);
  l.measured = measured;
  l.detail = std::move(detail);
  return l;
}

AuditLine exact(std::string key, double measured, bool pass, std::string detail = {}) {
  AuditLine l;
  l.key = std::move(key);
  l.measured = measured;
  l.exact = true;
  l.pass = pass;
  l.detail = std::move(detail);
  return l;
}

std::vector<AuditLine> audit_soi(const AuditContext& ctx) {
  const SoiReport r = soi_audit(ctx.law_wb, 4);
  return {slack("soi", r.max_slack,
                "at x=" + r.slack_x.token() + " y=" + r.slack_y.token() + " pairs=" + std::to_string(r.pairs) +
                    " skipped=" + std::to_string(r.skipped)),
          slack("triangle", r.triangle_c,
                "at x=" + r.tri_x.token() + " y=" + r.tri_y.token() + " z=" + r.tri_z.token() +
                    " triples=" + std::to_string(r.triples))};
}

std::vector<AuditLine> audit_pair_swap(const AuditContext& ctx) {
  const PairSwapReport r = pair_swap_audit(ctx.law_wb.table(), 4);
  return {slack("pair_swap", r.max_gap,
                "at x=" + r.x.token() + " y=" + r.y.token() + " pairs=" + std::to_string(r.pairs))};
}

std::vector<AuditLine> audit_mi_self(const AuditContext& ctx) {
  const SelfInfoReport r = self_info_audit(ctx.law_wb, 4);
  return {slack("mi_self", std::max(std::abs(r.min_gap), std::abs(r.max_gap)),
                "range=[" + std::to_string(r.min_gap) + "," + std::to_string(r.max_gap) + "]")};
}

std::vector<AuditLine> audit_nonincrease(const AuditContext& ctx) {
  const NonIncreaseReport r = nonincrease_audit(ctx.law_wb.table(), default_transforms(), 6);
  return {slack("nonincrease", r.max_deficit,
                "at q=" + r.transform + " x=" + r.x.token() + " y=" + r.y.token() +
                    " triples=" + std::to_string(r.triples) + " skipped=" + std::to_string(r.skipped))};
}

std::vector<AuditLine> audit_expected_mi(const AuditContext& ctx) {
  std::vector<AuditLine> out;
  const std::pair<const char*, JointModel> joints[] = {
      {"singleton", singleton_joint()}, {"correlated", correlated_joint()}, {"independent", independent_joint()}};
  for (const auto& [name, joint] : joints) {
    const ExpectedMIReport r = expected_mi_audit(joint, ctx.law_wb.table());
    char buf[128];
    std::snprintf(buf, sizeof buf, "alg=%.6f prob=%.6f K(p)<=%zu", r.algorithmic, r.probabilistic, r.k_p);
    out.push_back(slack(std::string("expected_mi.") + name, r.slack, buf));
  }
  return out;
}

std::vector<AuditLine> audit_theta(const AuditContext& ctx) {
  const JointModel joint = bernoulli_joint();
  const ThetaSuffReport id = theta_suff_audit(ctx.law_wb, joint, Statistic::identity(), 0);
  const ThetaSuffReport w = theta_suff_audit(ctx.law_wb, joint, Statistic::weight(), 0);
  const ThetaSuffReport c = theta_suff_audit(ctx.law_wb, correlated_joint(), Statistic::constant(), 0);
  char buf[96];
  std::snprintf(buf, sizeof buf, "mass(d<=0)=%s", to_string(w.mass_within).c_str());
  return {
      exact("theta.identity", id.max_abs_d, id.max_abs_d == 0 && id.mass_within == 1, "max|d| over all cells"),
      exact("theta.weight_suff", w.prob_sufficient ? 1 : 0, w.prob_sufficient,
            "weight statistic sufficient at all " + std::to_string(w.prob_checks.size()) + " swept priors"),
      exact("theta.constant_insuff", c.prob_sufficient ? 1 : 0, !c.prob_sufficient,
            "constant statistic on the correlated joint"),
      slack("theta.tau", w.tau90, buf),
      slack("claim1", w.claim1_gap),
  };
}

std::vector<AuditLine> audit_beta_cal(const AuditContext& ctx) {
  const ComplexityTable& table = ctx.model_wb.table();
  unsigned max_k = 0;
  const auto xs = strings_of_length(8);
  for (const auto& x : xs) max_k = std::max(max_k, require_k(table, x));
  int worst = 0;
  std::size_t count = 0;
  for (const auto& x : xs) {
    if (require_k(table, x) != max_k) continue;
    ++count;
    worst = std::max(worst, deficiency(ctx.model_wb, x, all_set(8)).delta_norm);
  }
  return {slack("beta_cal", worst, "All(8) over " + std::to_string(count) + " strings with K=" + std::to_string(max_k))};
}

std::vector<AuditLine> audit_optimal_typical(const AuditContext& ctx) {
  int worst = 0;
  std::size_t models = 0;
  for (const auto& x : strings_up_to(5)) {
    const SuffStatResult s = suffstat(x, 0, code_length(singleton_set(x)) + 1);
    for (const auto& m : s.optimal) {
      ++models;
      worst = std::max(worst, deficiency(ctx.model_wb, x, m.model.desc).delta_norm);
    }
  }
  return {slack("optimal_typical", worst, "over " + std::to_string(models) + " lambda-optimal models, l(x)<=5")};
}

std::vector<AuditLine> audit_pk(const AuditContext& ctx) {
  double worst = 0;
  for (unsigned k = 3; k <= 13; ++k) {
    const DistDescription d = pk(ctx.model_wb.table(), k);
    for (const auto& [y, m] : support(d)) worst = std::max(worst, deficiency_p(ctx.model_wb, y, d).norm);
  }
  return {slack("pk_deficiency", worst, "k=3..13")};
}

std::vector<AuditLine> audit_sk_gap(const AuditContext& ctx) {
  double worst = 0;
  unsigned at = 0;
  for (const auto& row : sk_gap_report(ctx.model_wb.table())) {
    if (row.gap && std::abs(*row.gap) > worst) {
      worst = std::abs(*row.gap);
      at = row.k;
    }
  }
  return {slack("sk_gap", worst, "max |log2 N_k - (k - K(k))| at k=" + std::to_string(at))};
}

std::vector<AuditLine> audit_xr(const AuditContext& ctx) {
  BuildOptions o = ctx.model_wb.build_options(ctx.xr_max_len);
  const ComplexityTable table = build_table(o, Condition::none());
  std::vector<AuditLine> out;
  for (const auto& row : xr_bound_check(table)) {
    const XrResult res = xr(table, row.r);
    out.push_back(exact("xr.r" + std::to_string(row.r), row.ratio, row.pass && res.slices_ok,
                        "|X(r)|=" + std::to_string(row.size) + " sum=" + row.sum.str() + " bound=" + row.bound.str() +
                            (res.slices_ok ? " slices ok" : " slice bound violated")));
  }
  return out;
}

std::vector<AuditLine> audit_nonstoch(const AuditContext& ctx) {
  const NonstochReport r = nonstoch_scan(ctx.model_wb, 8, {}, 0);
  AuditLine l = slack("nonstoch_margin", static_cast<double>(r.margin()),
                      "mode=" + std::to_string(r.mode_alpha) + " max=" + std::to_string(r.max_alpha) +
                          " argmax=" + std::to_string(r.argmax.size()) + " strings");
  l.higher_is_better = true;
  return {l};
}

}  // namespace

std::vector<AuditLine> run_audit(const std::string& name, const AuditContext& ctx, const Constants& constants) {
  std::vector<AuditLine> lines;
  if (name == "soi") {
    lines = audit_soi(ctx);
  } else if (name == "pair_swap") {
    lines = audit_pair_swap(ctx);
  } else if (name == "mi_self") {
    lines = audit_mi_self(ctx);
  } else if (name == "nonincrease") {
    lines = audit_nonincrease(ctx);
  } else if (name == "expected_mi") {
    lines = audit_expected_mi(ctx);
  } else if (name == "theta") {
    lines = audit_theta(ctx);
  } else if (name == "beta_cal") {
    lines = audit_beta_cal(ctx);
  } else if (name == "optimal_typical") {
    lines = audit_optimal_typical(ctx);
  } else if (name == "pk") {
    lines = audit_pk(ctx);
  } else if (name == "sk_gap") {
    lines = audit_sk_gap(ctx);
  } else if (name == "xr") {
    lines = audit_xr(ctx);
  } else if (name == "nonstoch") {
    lines = audit_nonstoch(ctx);
  } else {
    throw std::invalid_argument("unknown audit '" + name + "'");
  }
  for (auto& l : lines) judge(l, constants);
  return lines;
}

}  // namespace algstat
