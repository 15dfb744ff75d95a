// algstat: command-line front end for the complexity tables, model
// statistics and law audits.
//
// Exit codes: 0 success, 1 usage or input error, 2 audit failure.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "algstat/audits.hpp"
#include "algstat/complexity.hpp"
#include "algstat/enumerate.hpp"
#include "algstat/infolaws.hpp"
#include "algstat/models_prob.hpp"
#include "algstat/models_set.hpp"
#include "algstat/skstats.hpp"
#include "algstat/workbench.hpp"

namespace fs = std::filesystem;
using namespace algstat;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitAudit = 2;

struct Config {
  unsigned max_len = 24;
  unsigned cond_len = 22;
  unsigned law_len = 30;
  std::uint64_t steps = Budgets{}.max_steps;
  std::uint64_t max_out = Budgets{}.max_output;
  unsigned workers = 1;
  std::string cache_dir;
  std::string constants = ALGSTAT_DEFAULT_CONSTANTS;
  std::string out;
  std::string cond;
  std::string cond_set;
  std::size_t alpha_max = 40;
  int beta = 0;
  unsigned union_width = 3;
  unsigned list_cap = 4;
  bool no_build = false;

  Budgets budgets() const { return {steps, max_out}; }
  ModelOptions model_options() const {
    ModelOptions o;
    o.union_width = union_width;
    o.list_cap = list_cap;
    return o;
  }
};

void add_common(CLI::App* sub, Config& cfg) {
  sub->add_option("--max-len", cfg.max_len, "Program length cap L of the global table")->capture_default_str();
  sub->add_option("--cond-len", cfg.cond_len, "Length cap of conditional tables")->capture_default_str();
  sub->add_option("--steps", cfg.steps, "Step budget per run")->capture_default_str();
  sub->add_option("--max-out", cfg.max_out, "Output budget in bits")->capture_default_str();
  sub->add_option("--workers", cfg.workers, "Enumeration threads")->capture_default_str();
  sub->add_option("--cache-dir", cfg.cache_dir, "Table cache directory (default $ALGSTAT_CACHE_DIR or .algstat-cache)");
  sub->add_option("--out", cfg.out, "Output file (default stdout)");
  sub->add_flag("--no-build", cfg.no_build, "Fail instead of building a missing table");
}

fs::path cache_dir(const Config& cfg) {
  if (!cfg.cache_dir.empty()) return cfg.cache_dir;
  if (const char* env = std::getenv("ALGSTAT_CACHE_DIR"); env != nullptr && *env != '\0') return env;
  return ".algstat-cache";
}

fs::path cache_path(const Config& cfg, unsigned max_len, const Condition& cond) {
  std::ostringstream name;
  name << kMachineVersion << "_L" << max_len << "_T" << cfg.steps << "_O" << cfg.max_out << "_" << cond.fingerprint()
       << ".table";
  return cache_dir(cfg) / name.str();
}

BuildOptions build_options(const Config& cfg, unsigned max_len) {
  BuildOptions o;
  o.max_len = max_len;
  o.budgets = cfg.budgets();
  o.workers = cfg.workers;
  return o;
}

// The unconditional table at max_len, from the cache or freshly built.
std::shared_ptr<const ComplexityTable> load_table(const Config& cfg, unsigned max_len) {
  const Condition cond = Condition::none();
  const fs::path path = cache_path(cfg, max_len, cond);
  if (fs::exists(path)) {
    auto table = std::make_shared<const ComplexityTable>(import_table(path));
    if (table->max_len() != max_len || !(table->budgets() == cfg.budgets())) {
      throw FormatError("cached table " + path.string() + " does not match the requested caps");
    }
    return table;
  }
  if (cfg.no_build) {
    throw AbsentError("no cached table for L=" + std::to_string(max_len) + " in " + cache_dir(cfg).string() +
                      "; run: algstat enumerate --max-len " + std::to_string(max_len));
  }
  std::cerr << "warning: no cached table for L=" << max_len << ", building it (algstat enumerate caches tables)\n";
  auto table = std::make_shared<const ComplexityTable>(build_table(build_options(cfg, max_len), cond));
  fs::create_directories(cache_dir(cfg));
  export_table(*table, path);
  return table;
}

std::unique_ptr<Workbench> workbench(const Config& cfg, unsigned max_len) {
  WorkbenchConfig wc;
  wc.max_len = max_len;
  wc.cond_max_len = cfg.cond_len;
  wc.budgets = cfg.budgets();
  wc.workers = cfg.workers;
  return std::make_unique<Workbench>(wc, load_table(cfg, max_len));
}

void with_output(const Config& cfg, const std::function<void(std::ostream&)>& fn) {
  if (cfg.out.empty()) {
    fn(std::cout);
    return;
  }
  std::ofstream out(cfg.out);
  if (!out) throw std::runtime_error("cannot write " + cfg.out);
  fn(out);
}

// The condition named by --cond / --cond-set, if any.
std::optional<Condition> requested_condition(const Config& cfg) {
  if (!cfg.cond.empty() && !cfg.cond_set.empty()) throw CLI::ValidationError("--cond and --cond-set are exclusive");
  if (!cfg.cond.empty()) return Condition::str(BitString::parse(cfg.cond));
  if (!cfg.cond_set.empty()) return Condition::model(uniform_condition(parse_set(cfg.cond_set)));
  return std::nullopt;
}

unsigned conditional_cap(const Workbench& wb, const Config& cfg) {
  if (!cfg.cond_set.empty()) {
    return model_table_cap(wb, static_cast<std::size_t>(log_size(parse_set(cfg.cond_set))));
  }
  return cfg.cond_len;
}

std::string fixed9(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9f", v);
  return buf;
}

int cmd_enumerate(const Config& cfg) {
  const auto cond = requested_condition(cfg).value_or(Condition::none());
  const ComplexityTable table = build_table(build_options(cfg, cfg.max_len), cond);
  fs::path path = cfg.out;
  if (path.empty()) {
    fs::create_directories(cache_dir(cfg));
    path = cache_path(cfg, cfg.max_len, cond);
  }
  export_table(table, path);
  std::cout << "table " << path.string() << "\n"
            << "entries " << table.entries().size() << "\n"
            << "programs " << table.program_count() << "\n"
            << "kraft " << kraft_sum(table).str() << "\n";
  return 0;
}

int cmd_k(const Config& cfg, const std::vector<std::string>& xs) {
  const auto wb = workbench(cfg, cfg.max_len);
  const auto cond = requested_condition(cfg);
  std::shared_ptr<const ComplexityTable> table = wb->table_ptr();
  if (cond) table = wb->conditional(*cond, conditional_cap(*wb, cfg));
  int status = 0;
  for (const auto& s : xs) {
    const BitString x = BitString::parse(s);
    const TableEntry* e = table->find(x);
    if (e == nullptr) {
      std::cout << x.token() << " absent (no program of length <= " << table->max_len() << "; raise --max-len)\n";
      status = kExitUsage;
      continue;
    }
    std::cout << x.token() << " K=" << e->k << " witness=" << e->witness.token() << " m=" << e->m.str() << "\n";
  }
  return status;
}

int cmd_mi(const Config& cfg, const std::string& xs, const std::string& ys) {
  const auto wb = workbench(cfg, cfg.max_len);
  const MIRecord r = mutual_info(wb->table(), BitString::parse(xs), BitString::parse(ys));
  std::cout << "K(x)=" << r.kx << " K(y)=" << r.ky << " K(<x,y>)=" << r.kxy << " I(x:y)=" << r.info << "\n"
            << "K(<y,x>)=" << r.kyx << " I(y:x)=" << r.info_swapped << "\n";
  return 0;
}

int cmd_structfn(const Config& cfg, const std::string& xs) {
  const auto wb = workbench(cfg, cfg.max_len);
  const StructureCurve curve = structfn(*wb, BitString::parse(xs), cfg.alpha_max, cfg.model_options());
  with_output(cfg, [&](std::ostream& out) { write_curve_csv(curve, out); });
  return 0;
}

ModelOptions class_options(const Config& cfg, const std::string& cls) {
  ModelOptions o = cfg.model_options();
  if (cls == "hamming") {
    o.model_class = ModelClass::kHammingOnly;
  } else if (cls != "all") {
    throw CLI::ValidationError("--class must be all or hamming");
  }
  return o;
}

void print_deficiency(const DeficiencyRecord& r, std::ostream& out) {
  out << "model " << format_set(r.desc) << " len=" << r.len << " log|S|=" << r.log_size << "\n"
      << "K(x|S)=" << r.k_cond_set << " delta=" << r.delta_raw << " delta_norm=" << r.delta_norm << "\n"
      << "K(x|S*)=" << r.k_cond_star << " delta*=" << r.delta_star_raw << " delta*_norm=" << r.delta_star_norm << "\n"
      << "two_part=" << r.len + static_cast<std::size_t>(r.log_size) << "\n";
}

int cmd_suffstat(const Config& cfg, const std::string& xs, const std::string& cls, const std::string& model,
                 std::optional<std::size_t> stoch_alpha, std::optional<std::size_t> scan_n) {
  if (scan_n) {
    const auto wb = workbench(cfg, cfg.max_len);
    const NonstochReport r = nonstoch_scan(*wb, *scan_n, {}, cfg.beta, cfg.model_options());
    with_output(cfg, [&](std::ostream& out) {
      out << "x,min_alpha\n";
      for (const auto& row : r.rows) {
        out << row.x.token() << ',';
        if (row.min_alpha) out << *row.min_alpha;
        out << '\n';
      }
    });
    std::cerr << "mode_alpha=" << r.mode_alpha << " max_alpha=" << r.max_alpha << " margin=" << r.margin()
              << " argmax=" << r.argmax.size() << "\n";
    return 0;
  }
  if (xs.empty()) throw CLI::ValidationError("suffstat needs a string (or --scan)");
  const BitString x = BitString::parse(xs);
  if (!model.empty()) {
    const auto wb = workbench(cfg, cfg.max_len);
    print_deficiency(deficiency(*wb, x, parse_set(model)), std::cout);
    return 0;
  }
  if (stoch_alpha) {
    const auto table = load_table(cfg, cfg.max_len);
    const bool s = stochastic(*table, x, *stoch_alpha, cfg.beta, class_options(cfg, cls));
    std::cout << x.token() << " (" << *stoch_alpha << "," << cfg.beta << ")-stochastic: " << (s ? "yes" : "no")
              << "\n";
    return 0;
  }
  if (cfg.beta < 0) throw CLI::ValidationError("--beta must be >= 0");
  const SuffStatResult r = suffstat(x, static_cast<std::size_t>(cfg.beta), cfg.alpha_max, class_options(cfg, cls));
  with_output(cfg, [&](std::ostream& out) {
    out << "lambda_min=" << r.lambda_min;
    if (r.class_lambda_min) out << " class_lambda_min=" << *r.class_lambda_min;
    out << "\n";
    for (const auto& m : r.optimal) {
      out << "optimal " << format_set(m.model.desc) << " len=" << m.model.len() << " two_part=" << m.two_part << "\n";
    }
    if (r.minimal) out << "minimal " << format_set(r.minimal->model.desc) << "\n";
    if (r.no_statistic_in_class) out << "no sufficient statistic in class\n";
  });
  return 0;
}

int cmd_sk(const Config& cfg, unsigned k, const std::string& xs) {
  const auto table = load_table(cfg, cfg.max_len);
  const SkIndex s = sk(*table, k);
  std::cerr << "k=" << k << " N_k=" << s.n_k << " width=" << s.width << "\n";
  if (!xs.empty()) {
    const MxRecord r = mx(s, BitString::parse(xs));
    std::cout << "index=" << r.index.token() << " N=" << r.n_word.token() << " m_x=" << r.m_x.token()
              << " i_x=" << r.i_x.token() << " n_x=" << r.n_x.token() << (r.degenerate ? " degenerate" : "")
              << " |S^k_m|=" << sk_mx(s, r.x).size() << "\n";
    return 0;
  }
  with_output(cfg, [&](std::ostream& out) { write_sk_csv(s, out); });
  return 0;
}

int cmd_xr(const Config& cfg) {
  const auto table = load_table(cfg, cfg.max_len);
  const auto rows = xr_bound_check(*table);
  bool ok = true;
  for (const auto& row : rows) ok = ok && row.pass && xr(*table, row.r).slices_ok;
  with_output(cfg, [&](std::ostream& out) { write_xr_csv(rows, out); });
  return ok ? 0 : kExitAudit;
}

int cmd_laws(const Config& cfg, std::vector<std::string> audits, bool bless) {
  if (audits.empty()) audits = audit_names();
  const auto law_wb = workbench(cfg, cfg.law_len);
  const auto model_wb = workbench(cfg, cfg.max_len);
  AuditContext ctx{*law_wb, *model_wb};
  Constants constants;
  if (fs::exists(cfg.constants)) {
    constants = Constants::load(cfg.constants);
  } else if (!bless) {
    std::cerr << "warning: constants file " << cfg.constants << " not found; every regression audit will fail\n";
  }
  bool ok = true;
  for (const auto& name : audits) {
    for (auto line : run_audit(name, ctx, constants)) {
      if (bless && !line.exact) {
        constants.set(line.key, line.measured);
        judge(line, constants);
      }
      std::cout << format_audit_line(line) << "\n";
      ok = ok && line.pass;
    }
  }
  if (bless) constants.save(cfg.constants);
  return ok ? 0 : kExitAudit;
}

int cmd_bernoulli(const Config& cfg, std::size_t n) {
  if (cfg.beta < 0) throw CLI::ValidationError("--beta must be >= 0");
  const auto table = load_table(cfg, cfg.max_len);
  const BernoulliReport r = bernoulli_demo(*table, n, static_cast<std::size_t>(cfg.beta));
  with_output(cfg, [&](std::ostream& out) {
    out << "x,K,hamming_total,lambda_min,flagged\n";
    for (const auto& row : r.rows) {
      out << row.x.token() << ',' << row.k_x << ',' << row.hamming_total << ',' << row.lambda_min << ','
          << (row.flagged ? 1 : 0) << '\n';
    }
  });
  return 0;
}

DistClass dist_class(const std::string& cls) {
  if (cls == "all") return DistClass::kAll;
  if (cls == "uniform") return DistClass::kUniformOnly;
  if (cls == "bernoulli") return DistClass::kBernoulliOnly;
  throw CLI::ValidationError("--class must be all, uniform or bernoulli");
}

int cmd_probstat(const Config& cfg, const std::string& xs, const std::string& dist, const std::string& joint_path,
                 const std::string& cls, std::optional<unsigned> pk_k) {
  if (!joint_path.empty()) {
    std::ifstream in(joint_path);
    if (!in) throw FormatError("cannot open joint file " + joint_path);
    const JointFile file = parse_joint(in);
    const Statistic stat = file.statistic.value_or(Statistic::identity());
    const ProbMI mi = prob_mi(file.joint);
    const auto wb = workbench(cfg, cfg.law_len);
    const ThetaSuffReport t = theta_suff_audit(*wb, file.joint, stat, cfg.beta);
    const ExpectedMIReport e = expected_mi_audit(file.joint, wb->table());
    with_output(cfg, [&](std::ostream& out) {
      out << "I(Theta;X)=" << fixed9(mi.mi) << " H(Theta)=" << fixed9(mi.h_theta) << " H(X)=" << fixed9(mi.h_x)
          << "\n";
      out << "statistic " << stat.name() << " I(Theta;T)=" << fixed9(prob_mi(file.joint, stat).mi)
          << " sufficient_at_all_priors=" << (t.prob_sufficient ? "yes" : "no") << "\n";
      out << "expected_alg_mi=" << fixed9(e.algorithmic) << " slack=" << fixed9(e.slack) << " K(p)<=" << e.k_p << "\n";
      out << "theta,x,s,p,d\n";
      for (const auto& row : t.rows) {
        out << file.joint.thetas[row.theta].label.token() << ',' << row.x.token() << ',' << row.s.token() << ','
            << to_string(row.p) << ',' << row.d << '\n';
      }
      out << "mass(d<=" << t.threshold << ")=" << to_string(t.mass_within) << " tau90=" << t.tau90
          << " claim1_gap=" << t.claim1_gap << "\n";
    });
    return 0;
  }
  const auto wb = workbench(cfg, cfg.max_len);
  if (pk_k) {
    const DistDescription d = pk(wb->table(), *pk_k);
    with_output(cfg, [&](std::ostream& out) {
      out << "x,mass,neglog,K_cond,norm\n";
      for (const auto& [y, m] : support(d)) {
        const DeficiencyP r = deficiency_p(*wb, y, d);
        out << y.token() << ',' << to_string(m) << ',' << fixed9(r.neglog_x) << ',' << r.k_cond << ','
            << fixed9(r.norm) << '\n';
      }
    });
    return 0;
  }
  if (xs.empty()) throw CLI::ValidationError("probstat needs a string, --joint or --pk");
  const BitString x = BitString::parse(xs);
  if (!dist.empty()) {
    const DistDescription d = parse_dist(dist);
    const DeficiencyP r = deficiency_p(*wb, x, d);
    std::cout << "dist " << format_dist(d) << " len=" << code_length(d) << "\n"
              << "mass=" << to_string(mass(d, x)) << " neglog=" << fixed9(r.neglog_x) << "\n"
              << "K(x|P)=" << r.k_cond << " raw=" << fixed9(r.raw) << " norm=" << fixed9(r.norm)
              << " argmax=" << r.argmax.token() << "\n"
              << "two_part=" << two_part_p(x, d) << "\n";
    return 0;
  }
  if (cfg.beta < 0) throw CLI::ValidationError("--beta must be >= 0");
  DistOptions o;
  o.dist_class = dist_class(cls);
  o.set_options = cfg.model_options();
  const SuffStatP r = suffstat_p(wb->table(), x, static_cast<std::size_t>(cfg.beta), cfg.alpha_max, o);
  with_output(cfg, [&](std::ostream& out) {
    out << "K(x)=" << r.k_x;
    if (r.lambda_min) out << " class_lambda_min=" << *r.lambda_min;
    out << "\n";
    for (const auto& m : r.optimal) {
      out << "optimal " << format_dist(m.model.dist) << " len=" << m.model.len() << " two_part=" << m.two_part << "\n";
    }
    if (r.minimal) out << "minimal " << format_dist(r.minimal->model.dist) << "\n";
    if (r.no_statistic_in_class) out << "no sufficient statistic in class\n";
  });
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"algstat: exact algorithmic statistics on the TPM-1 machine"};
  app.require_subcommand(1);
  Config cfg;

  auto* enumerate = app.add_subcommand("enumerate", "Build a complexity table and write it to the cache or --out");
  add_common(enumerate, cfg);
  enumerate->add_option("--cond", cfg.cond, "String condition for COPYIN");
  enumerate->add_option("--cond-set", cfg.cond_set, "Uniform model condition on a SetLang set");

  std::vector<std::string> k_args;
  auto* k = app.add_subcommand("k", "Prefix complexity, witness and m(x) of strings");
  add_common(k, cfg);
  k->add_option("x", k_args, "Bit strings ('-' for the empty string)")->required();
  k->add_option("--cond", cfg.cond, "Condition on a string");
  k->add_option("--cond-set", cfg.cond_set, "Condition on the uniform model of a SetLang set");

  std::string mi_x, mi_y;
  auto* mi = app.add_subcommand("mi", "Algorithmic mutual information I(x:y)");
  add_common(mi, cfg);
  mi->add_option("x", mi_x)->required();
  mi->add_option("y", mi_y)->required();

  std::string sf_x;
  auto* sf = app.add_subcommand("structfn", "Structure function curve as CSV");
  add_common(sf, cfg);
  sf->add_option("x", sf_x)->required();
  sf->add_option("--alpha-max", cfg.alpha_max)->capture_default_str();
  sf->add_option("--union-width", cfg.union_width)->capture_default_str();
  sf->add_option("--list-cap", cfg.list_cap)->capture_default_str();

  std::string ss_x, ss_class = "all", ss_model;
  std::optional<std::size_t> ss_stoch, ss_scan;
  auto* ss = app.add_subcommand("suffstat", "Sufficient statistics, deficiency and stochasticity");
  add_common(ss, cfg);
  ss->add_option("x", ss_x);
  ss->add_option("--beta", cfg.beta)->capture_default_str();
  ss->add_option("--alpha-max", cfg.alpha_max)->capture_default_str();
  ss->add_option("--class", ss_class, "all | hamming")->capture_default_str();
  ss->add_option("--model", ss_model, "Report the deficiency of x in this SetLang model");
  ss->add_option("--stochastic", ss_stoch, "Decide (alpha, beta)-stochasticity for this alpha");
  ss->add_option("--scan", ss_scan, "Non-stochasticity scan over all strings of this length");
  ss->add_option("--union-width", cfg.union_width)->capture_default_str();
  ss->add_option("--list-cap", cfg.list_cap)->capture_default_str();

  unsigned sk_k = 0;
  std::string sk_x;
  auto* skc = app.add_subcommand("sk", "Members and indices of S^k (CSV), or m_x of one member");
  add_common(skc, cfg);
  skc->add_option("k", sk_k)->required();
  skc->add_option("--x", sk_x, "Report m_x and |S^k_{m_x}| for this member");

  auto* xrc = app.add_subcommand("xr", "X(r) bound report (CSV); exit 2 on violation");
  add_common(xrc, cfg);

  std::vector<std::string> law_audits;
  bool bless = false;
  auto* laws = app.add_subcommand("laws", "Law audits against frozen constants; exit 2 on regression");
  add_common(laws, cfg);
  laws->add_option("--audit", law_audits, "Audit group(s); default all")
      ->check(CLI::IsMember(audit_names()));
  laws->add_option("--law-len", cfg.law_len, "Table cap for pair audits")->capture_default_str();
  laws->add_option("--constants", cfg.constants, "Constants file")->capture_default_str();
  laws->add_flag("--bless", bless, "Record the measured values as the new frozen constants");

  std::size_t bern_n = 8;
  auto* bern = app.add_subcommand("bernoulli", "Hamming-class sufficiency demo over all strings of length n");
  add_common(bern, cfg);
  bern->add_option("--n", bern_n)->capture_default_str();
  bern->add_option("--beta", cfg.beta)->capture_default_str();

  std::string ps_x, ps_dist, ps_joint, ps_class = "all";
  std::optional<unsigned> ps_pk;
  auto* ps = app.add_subcommand("probstat", "Distribution models, P^k and joint-model audits");
  add_common(ps, cfg);
  ps->add_option("x", ps_x);
  ps->add_option("--dist", ps_dist, "DistLang model for x");
  ps->add_option("--joint", ps_joint, "Joint-model file");
  ps->add_option("--class", ps_class, "all | uniform | bernoulli")->capture_default_str();
  ps->add_option("--pk", ps_pk, "Report P^k for this k");
  ps->add_option("--beta", cfg.beta)->capture_default_str();
  ps->add_option("--alpha-max", cfg.alpha_max)->capture_default_str();
  ps->add_option("--law-len", cfg.law_len, "Table cap for joint audits")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*enumerate) return cmd_enumerate(cfg);
    if (*k) return cmd_k(cfg, k_args);
    if (*mi) return cmd_mi(cfg, mi_x, mi_y);
    if (*sf) return cmd_structfn(cfg, sf_x);
    if (*ss) return cmd_suffstat(cfg, ss_x, ss_class, ss_model, ss_stoch, ss_scan);
    if (*skc) return cmd_sk(cfg, sk_k, sk_x);
    if (*xrc) return cmd_xr(cfg);
    if (*laws) return cmd_laws(cfg, law_audits, bless);
    if (*bern) return cmd_bernoulli(cfg, bern_n);
    if (*ps) return cmd_probstat(cfg, ps_x, ps_dist, ps_joint, ps_class, ps_pk);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
