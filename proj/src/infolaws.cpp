#include "algstat/infolaws.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <istream>
#include <set>
#include <sstream>

#include "algstat/codec.hpp"

namespace algstat {

void JointModel::validate() const {
  if (thetas.empty()) throw FormatError("joint model has no thetas");
  Rational total = 0;
  std::set<BitString> labels;
  for (const auto& t : thetas) {
    if (t.prior <= 0) throw FormatError("prior of theta '" + t.label.token() + "' must be positive");
    if (!labels.insert(t.label).second) throw FormatError("duplicate theta label '" + t.label.token() + "'");
    algstat::validate(t.dist);
    total += t.prior;
  }
  if (total != 1) throw FormatError("priors sum to " + to_string(total) + ", not 1");
}

JointModel JointModel::with_prior(const std::vector<Rational>& prior) const {
  if (prior.size() != thetas.size()) throw std::invalid_argument("with_prior: size mismatch");
  JointModel out = *this;
  for (std::size_t i = 0; i < prior.size(); ++i) out.thetas[i].prior = prior[i];
  return out;
}

std::vector<JointCell> joint_cells(const JointModel& joint) {
  std::vector<JointCell> cells;
  for (std::size_t i = 0; i < joint.thetas.size(); ++i) {
    for (auto& [x, m] : support(joint.thetas[i].dist)) {
      if (m > 0) cells.push_back({i, std::move(x), joint.thetas[i].prior * m});
    }
  }
  return cells;
}

std::size_t joint_code_length(const JointModel& joint) {
  std::size_t len = nat_code_length(joint.thetas.size());
  for (const auto& t : joint.thetas) {
    len += self_delimit_length(t.label.size());
    len += nat_code_length(boost::multiprecision::numerator(t.prior).convert_to<std::uint64_t>());
    len += nat_code_length(boost::multiprecision::denominator(t.prior).convert_to<std::uint64_t>());
    len += code_length(t.dist);
  }
  return len;
}

Statistic Statistic::from_map(std::map<BitString, BitString> m) {
  Statistic s(Kind::kMap);
  s.map_ = std::move(m);
  return s;
}

Statistic Statistic::parse(std::string_view text) {
  if (text == "identity") return identity();
  if (text == "weight") return weight();
  if (text == "constant") return constant();
  if (text.starts_with("map{") && text.ends_with("}")) {
    std::map<BitString, BitString> m;
    std::string body(text.substr(4, text.size() - 5));
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) {
      const auto colon = item.find(':');
      if (colon == std::string::npos) throw FormatError("statistic map entry needs ':' in '" + item + "'");
      m[BitString::parse(item.substr(0, colon))] = BitString::parse(item.substr(colon + 1));
    }
    return from_map(std::move(m));
  }
  throw FormatError("unknown statistic '" + std::string(text) + "'");
}

BitString Statistic::apply(const BitString& x) const {
  switch (kind_) {
    case Kind::kIdentity:
      return x;
    case Kind::kWeight:
      return BitString::from_nat(x.weight());
    case Kind::kConstant:
      return {};
    case Kind::kMap: {
      auto it = map_.find(x);
      if (it == map_.end()) throw std::invalid_argument("statistic map has no value for '" + x.token() + "'");
      return it->second;
    }
  }
  return {};
}

std::string Statistic::name() const {
  switch (kind_) {
    case Kind::kIdentity:
      return "identity";
    case Kind::kWeight:
      return "weight";
    case Kind::kConstant:
      return "constant";
    case Kind::kMap: {
      std::string out = "map{";
      bool first = true;
      for (const auto& [x, t] : map_) {
        if (!first) out += ',';
        first = false;
        out += x.token() + ":" + t.token();
      }
      return out + "}";
    }
  }
  return {};
}

JointFile parse_joint(std::istream& in) {
  JointFile file;
  std::map<BitString, DistDescription> dists;
  std::vector<std::pair<BitString, Rational>> priors;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string kw;
    if (!(ls >> kw)) continue;
    auto where = [&] { return " (line " + std::to_string(line_no) + ")"; };
    std::string a, b;
    if (kw == "theta") {
      if (!(ls >> a >> b)) throw FormatError("theta needs a label and a prior" + where());
      priors.emplace_back(BitString::parse(a), parse_rational(b));
    } else if (kw == "dist") {
      if (!(ls >> a >> b)) throw FormatError("dist needs a label and a distribution" + where());
      dists[BitString::parse(a)] = parse_dist(b);
    } else if (kw == "statistic") {
      if (!(ls >> a)) throw FormatError("statistic needs a value" + where());
      file.statistic = Statistic::parse(a);
    } else {
      throw FormatError("unknown keyword '" + kw + "'" + where());
    }
    if (ls >> a) throw FormatError("unexpected text '" + a + "'" + where());
  }
  for (auto& [label, prior] : priors) {
    auto it = dists.find(label);
    if (it == dists.end()) throw FormatError("theta '" + label.token() + "' has no dist line");
    file.joint.thetas.push_back({label, prior, it->second});
    dists.erase(it);
  }
  if (!dists.empty()) throw FormatError("dist line for unknown theta '" + dists.begin()->first.token() + "'");
  file.joint.validate();
  return file;
}

JointFile parse_joint_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_joint(in);
}

namespace {

double entropy_term(const Rational& p) { return p > 0 ? -static_cast<double>(p.convert_to<double>()) * log2(p) : 0.0; }

ProbMI mi_from_cells(const std::vector<std::pair<std::size_t, BitString>>& keys, const std::vector<Rational>& p) {
  std::map<std::size_t, Rational> p_theta;
  std::map<BitString, Rational> p_x;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    p_theta[keys[i].first] += p[i];
    p_x[keys[i].second] += p[i];
  }
  // merge cells that collapsed onto the same (theta, t)
  std::map<std::pair<std::size_t, BitString>, Rational> joint;
  for (std::size_t i = 0; i < keys.size(); ++i) joint[keys[i]] += p[i];

  ProbMI r;
  for (const auto& [k, v] : p_theta) r.h_theta += entropy_term(v);
  for (const auto& [k, v] : p_x) r.h_x += entropy_term(v);
  for (const auto& [k, v] : joint) {
    r.h_joint += entropy_term(v);
    const Rational ratio = v / (p_theta[k.first] * p_x[k.second]);
    r.mi += v.convert_to<double>() * log2(ratio);
  }
  return r;
}

}  // namespace

ProbMI prob_mi(const JointModel& joint) { return prob_mi(joint, Statistic::identity()); }

ProbMI prob_mi(const JointModel& joint, const Statistic& stat) {
  std::vector<std::pair<std::size_t, BitString>> keys;
  std::vector<Rational> p;
  for (auto& c : joint_cells(joint)) {
    keys.emplace_back(c.theta, stat.apply(c.x));
    p.push_back(std::move(c.p));
  }
  return mi_from_cells(keys, p);
}

std::vector<std::vector<Rational>> default_prior_sweep(const JointModel& joint) {
  std::vector<std::vector<Rational>> out;
  std::vector<Rational> given;
  for (const auto& t : joint.thetas) given.push_back(t.prior);
  out.push_back(given);
  const std::size_t m = joint.thetas.size();
  if (m < 2) return out;
  for (int s = 1; s <= 9; ++s) {
    std::vector<Rational> prior(m, Rational(10 - s, 10 * static_cast<long long>(m - 1)));
    prior[0] = Rational(s, 10);
    out.push_back(std::move(prior));
  }
  return out;
}

std::vector<PriorCheck> prob_suff_check(const JointModel& joint, const Statistic& stat,
                                        const std::vector<std::vector<Rational>>& priors) {
  std::vector<PriorCheck> out;
  for (const auto& prior : priors) {
    const JointModel j = joint.with_prior(prior);
    PriorCheck c;
    c.prior = prior;
    c.mi_x = prob_mi(j).mi;
    c.mi_t = prob_mi(j, stat).mi;
    c.sufficient = std::abs(c.mi_x - c.mi_t) <= 1e-9;
    out.push_back(std::move(c));
  }
  return out;
}

ExpectedMIReport expected_mi_audit(const JointModel& joint, const ComplexityTable& table) {
  ExpectedMIReport r;
  for (const auto& c : joint_cells(joint)) {
    const MIRecord mi = mutual_info(table, joint.thetas[c.theta].label, c.x);
    r.algorithmic += c.p.convert_to<double>() * mi.info;
  }
  r.probabilistic = prob_mi(joint).mi;
  r.slack = std::abs(r.algorithmic - r.probabilistic);
  r.k_p = joint_code_length(joint);
  return r;
}

std::vector<Transform> default_transforms() {
  return {
      {"const", bits("100")},
      {"copy4", bits("10110100")},
      {"droplast4", bits("1010110100100")},
      {"first2", bits("10101100")},
  };
}

NonIncreaseReport nonincrease_audit(const ComplexityTable& table, const std::vector<Transform>& transforms,
                                    std::size_t len_cap, const Budgets& budgets) {
  NonIncreaseReport report;
  bool first = true;
  const auto strings = strings_up_to(len_cap);
  auto info = [&](const BitString& a, const BitString& b) -> std::optional<int> {
    const auto ka = table.k_of(a), kb = table.k_of(b), kab = table.k_of(pair_encode(a, b));
    if (!ka || !kb || !kab) return std::nullopt;
    return static_cast<int>(*ka + *kb) - static_cast<int>(*kab);
  };
  for (const auto& q : transforms) {
    for (const auto& x : strings) {
      const RunOutcome out = run(q.program, Condition::str(x), budgets);
      if (out.status != RunStatus::kHalted) {
        report.skipped += strings.size();
        continue;
      }
      for (const auto& y : strings) {
        const auto after = info(out.output, y);
        const auto before = info(x, y);
        if (!after || !before) {
          ++report.skipped;
          continue;
        }
        ++report.triples;
        const int deficit = *after - *before - static_cast<int>(q.program.size());
        if (first || deficit > report.max_deficit) {
          first = false;
          report.max_deficit = deficit;
          report.x = x;
          report.y = y;
          report.transform = q.name;
        }
      }
    }
  }
  return report;
}

ThetaSuffReport theta_suff_audit(const Workbench& wb, const JointModel& joint, const Statistic& stat, int threshold) {
  const ComplexityTable& table = wb.table();
  ThetaSuffReport report;
  report.threshold = threshold;
  const auto cells = joint_cells(joint);

  // |T^-1(t)| over the data domain
  std::set<BitString> domain;
  for (const auto& c : cells) domain.insert(c.x);
  std::map<BitString, std::uint64_t> preimage;
  for (const auto& x : domain) ++preimage[stat.apply(x)];

  Rational total = 0;
  for (const auto& c : cells) {
    const BitString& label = joint.thetas[c.theta].label;
    ThetaRow row;
    row.theta = c.theta;
    row.x = c.x;
    row.s = stat.apply(c.x);
    row.p = c.p;
    row.d = mutual_info(table, label, c.x).info - mutual_info(table, label, row.s).info;
    total += c.p;
    if (row.d <= threshold) report.mass_within += c.p;
    report.max_abs_d = std::max(report.max_abs_d, std::abs(row.d));

    const auto given = wb.conditional(star_condition(table, label));
    const auto kx = given->k_of(row.x);
    const auto ks = given->k_of(row.s);
    if (!kx || !ks) throw AbsentError("conditional table given theta* lacks a data string or its statistic");
    const int lhs = static_cast<int>(*kx) + row.d;
    const int rhs = static_cast<int>(*ks) + ceil_log2(BigInt(preimage[row.s]));
    report.claim1_gap = std::max(report.claim1_gap, std::abs(lhs - rhs));
    report.rows.push_back(std::move(row));
  }

  std::vector<const ThetaRow*> by_d;
  for (const auto& r : report.rows) by_d.push_back(&r);
  std::stable_sort(by_d.begin(), by_d.end(), [](const ThetaRow* a, const ThetaRow* b) { return a->d < b->d; });
  Rational acc = 0;
  for (const auto* r : by_d) {
    acc += r->p;
    report.tau90 = r->d;
    if (acc * 10 >= total * 9) break;
  }

  report.prob_checks = prob_suff_check(joint, stat, default_prior_sweep(joint));
  report.prob_sufficient = all_sufficient(report.prob_checks);
  return report;
}

JointModel singleton_joint() {
  return {{{bits("0"), Rational(1), parse_dist("table{0:1}")}}};
}

JointModel correlated_joint() {
  return {{{bits("0"), Rational(1, 2), parse_dist("table{0:1}")},
           {bits("1"), Rational(1, 2), parse_dist("table{1:1}")}}};
}

JointModel independent_joint() {
  return {{{bits("0"), Rational(1, 2), parse_dist("table{0:1/2,1:1/2}")},
           {bits("1"), Rational(1, 2), parse_dist("table{0:1/2,1:1/2}")}}};
}

JointModel bernoulli_joint() {
  return {{{bits("0"), Rational(1, 2), parse_dist("bern:2,1/4")},
           {bits("1"), Rational(1, 2), parse_dist("bern:2,3/4")}}};
}

}  // namespace algstat
