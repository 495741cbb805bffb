#include <CLI11.hpp>

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <nlohmann/json.hpp>
#include <sstream>

#include "qsp/acceptance.hpp"
#include "qsp/cgc.hpp"
#include "qsp/dirac.hpp"
#include "qsp/index.hpp"
#include "qsp/repn.hpp"
#include "qsp/signgraph.hpp"
#include "qsp/tableaux.hpp"

using json = nlohmann::ordered_json;
using namespace qsp;

namespace {

constexpr const char* kVersion = "1.0.0";

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  int ell = 1;
  double q = 0.5;
  std::string space = "group";
  int cutoff = 6;
  int margin = 1;
  std::string c = "auto";
  std::vector<int> schedule;
  std::vector<int> lambda;
  std::string op;
  std::string rule = "threshold";
  double tolerance = 1e-7;
  double lambda_max = 10;
  std::vector<int> witness;
  std::vector<int> only;
  std::string out;
  std::string format = "json";
};

class Report {
 public:
  Report(std::string command, json config) : command_(std::move(command)), config_(std::move(config)) {}

  json& results() { return results_; }
  void gate(const std::string& name, double value, const std::string& relation, double bound, bool passed) {
    gates_.push_back({{"name", name}, {"value", value}, {"relation", relation}, {"bound", bound}, {"passed", passed}});
    if (!passed) failing_.push_back(name);
  }
  void csv(std::string text) { csv_ = std::move(text); }
  bool passed() const { return failing_.empty(); }

  json to_json() const {
    json j;
    j["schema"] = "qsp.report/1";
    j["command"] = command_;
    j["versions"] = {{"qsp", kVersion}, {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." + std::to_string(EIGEN_MINOR_VERSION)}};
    j["config"] = config_;
    j["results"] = results_;
    j["gates"] = gates_;
    j["passed"] = passed();
    return j;
  }

  int emit(const RunConfig& cfg) const {
    std::string body = cfg.format == "csv" && !csv_.empty() ? csv_ : to_json().dump(2) + "\n";
    if (cfg.out.empty()) {
      std::cout << body;
    } else {
      std::filesystem::create_directories(cfg.out);
      auto path = std::filesystem::path(cfg.out) / (command_ + (cfg.format == "csv" && !csv_.empty() ? ".csv" : ".json"));
      std::ofstream(path) << body;
      std::cerr << "wrote " << path.string() << "\n";
    }
    for (const auto& f : failing_) std::cerr << "gate failed: " << f << "\n";
    return passed() ? 0 : 1;
  }

 private:
  std::string command_;
  json config_;
  json results_ = json::object();
  json gates_ = json::array();
  std::vector<std::string> failing_;
  std::string csv_;
};

Space parse_space(const std::string& s) { return s == "sphere" ? Space::sphere : Space::group; }

QParam q_of(const RunConfig& cfg) {
  if (!(cfg.q > 0 && cfg.q < 1)) throw UsageError("--q must lie in (0,1); q = 0 is accepted by sphere-index only");
  return QParam(cfg.q);
}

void check_schedule(const std::vector<int>& s) {
  if (s.empty()) throw UsageError("--schedule must not be empty");
  for (std::size_t i = 1; i < s.size(); ++i)
    if (s[i] <= s[i - 1]) throw UsageError("--schedule must be strictly increasing");
}

void check_margin(int m) {
  if (m < 1) throw UsageError("--margin must be >= 1");
}

DiracSpec scalar_operator(const std::string& name, Domain dom) {
  if (name == "d-tilde") {
    if (dom.space != Space::group) throw UsageError("d-tilde lives on the group");
    return build_d_tilde(dom);
  }
  if (name == "sphere-d") {
    if (dom.space != Space::sphere) throw UsageError("sphere-d lives on the sphere");
    return build_sphere_D(dom);
  }
  if (name == "quadratic")
    return make_scalar_dirac(dom, "r11^2", [](const GTTableau& t) { return double(t.r11()) * t.r11(); });
  if (name == "parity") {
    if (dom.space != Space::group) throw UsageError("parity lives on the group");
    return make_scalar_dirac(dom, "parity",
                             [](const GTTableau& t) { return ((t(2, 1) - t(1, 2)) % 2 == 0 ? 1.0 : -1.0) * t.r11(); });
  }
  if (name.size() == 2 && name[0] == 'n' && std::isdigit(static_cast<unsigned char>(name[1]))) {
    int i = name[1] - '0';
    if (dom.space != Space::group || i < 1 || i > dom.ell) throw UsageError("N_i needs the group and 1 <= i <= l");
    return build_Ni(i, dom);
  }
  throw UsageError("unknown operator " + name);
}

std::string default_operator(const RunConfig& cfg) {
  if (!cfg.op.empty()) return cfg.op;
  return cfg.space == "sphere" ? "sphere-d" : "d-tilde";
}

json tableau_json(const GTTableau& t) { return t.rows(); }

int cmd_tableaux(const RunConfig& cfg, const json& conf) {
  q_of(cfg);
  Report rep("tableaux", conf);
  std::ostringstream csv;
  csv << "lambda,tableau,psi_twice\n";
  auto lambda_text = [](const YoungDiagram& y) {
    std::string s;
    for (std::size_t i = 0; i < y.lambda.size(); ++i) s += (i ? " " : "") + std::to_string(y.lambda[i]);
    return s;
  };
  std::vector<YoungDiagram> diagrams;
  if (!cfg.lambda.empty()) {
    if (static_cast<int>(cfg.lambda.size()) != cfg.ell + 1) throw UsageError("--lambda needs l+1 entries");
    try {
      diagrams.push_back(YoungDiagram(cfg.lambda));
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  } else {
    diagrams = young_diagrams(cfg.ell, cfg.cutoff);
  }
  json rows = json::array();
  bool all_match = true;
  for (const auto& y : diagrams) {
    auto ts = enumerate_tableaux(y);
    long long dim = weyl_dimension(y);
    all_match = all_match && static_cast<long long>(ts.size()) == dim;
    json entry{{"lambda", y.lambda}, {"count", ts.size()}, {"dimension", dim}};
    entry["q_dimension"] = static_cast<double>(weyl_q_dimension(y, QParam(cfg.q)).value());
    if (diagrams.size() == 1) {
      json list = json::array();
      for (const auto& t : ts) list.push_back(tableau_json(t));
      entry["tableaux"] = list;
    }
    for (const auto& t : ts) csv << lambda_text(y) << ',' << to_text(t) << ',' << psi_twice(t) << '\n';
    rows.push_back(entry);
  }
  rep.results()["diagrams"] = rows;
  rep.gate("enumeration count equals Weyl dimension", all_match ? 1 : 0, "==", 1, all_match);
  rep.csv(csv.str());
  return rep.emit(cfg);
}

int cmd_cgc(const RunConfig& cfg, const json& conf) {
  QParam q = q_of(cfg);
  if (static_cast<int>(cfg.lambda.size()) != cfg.ell + 1) throw UsageError("--lambda needs l+1 entries");
  YoungDiagram lam(cfg.lambda);
  Report rep("cgc", conf);
  std::ostringstream csv;
  csv << "i,r,move,target,exponent,value\n";
  json list = json::array();
  std::map<GTTableau, double> norm;
  for (int i = 1; i <= cfg.ell + 1; ++i)
    for (const auto& r : enumerate_tableaux(lam))
      for (const Move& M : moves_of_length(i, cfg.ell)) {
        auto raw = apply_move_raw(M, r);
        if (!raw) continue;
        CGValue v = cg_coefficient(i, r, M, q);
        double x = static_cast<double>(v.value().value());
        norm[*raw] += x * x;
        list.push_back({{"i", i}, {"r", tableau_json(r)}, {"move", M.m}, {"target", tableau_json(*raw)},
                        {"exponent", v.exponent}, {"value", x}});
        csv << i << ",\"" << to_text(r) << "\",\"" << json(M.m).dump() << "\",\"" << to_text(*raw) << "\","
            << v.exponent << ',' << std::setprecision(17) << x << '\n';
      }
  double worst = 0;
  for (const auto& [t, s] : norm) worst = std::max(worst, std::fabs(s - 1));
  rep.results()["coefficients"] = list;
  rep.results()["targets"] = norm.size();
  rep.gate("max |sum C^2 - 1| per target", worst, "<=", 1e-8, worst <= 1e-8);
  rep.csv(csv.str());
  return rep.emit(cfg);
}

int cmd_repn_check(const RunConfig& cfg, const json& conf) {
  QParam q = q_of(cfg);
  check_margin(cfg.margin);
  auto basis = parse_space(cfg.space) == Space::sphere ? BasisSpec::sphere(cfg.ell, cfg.cutoff)
                                                        : BasisSpec::group(cfg.ell, cfg.cutoff);
  ResidualReport r;
  try {
    r = relation_residuals(q, basis, cfg.margin);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  Report rep("repn-check", conf);
  rep.results()["dimension"] = basis->size();
  rep.results()["interior"] = r.interior;
  rep.results()["reported"] = r.reported;
  for (const auto& [k, v] : r.residuals) rep.gate("residual " + k, v, "<=", cfg.tolerance, v <= cfg.tolerance);
  return rep.emit(cfg);
}

int cmd_dirac_spectrum(const RunConfig& cfg, const json& conf) {
  Space sp = parse_space(cfg.space);
  int cutoff = static_cast<int>(std::ceil(cfg.lambda_max));
  std::string name = default_operator(cfg);
  DiracSpec D = name == "full" ? build_full_D(Domain{cfg.ell, sp, cutoff}) : scalar_operator(name, Domain{cfg.ell, sp, cutoff});
  if (name == "full" && sp != Space::group) throw UsageError("full lives on the group");
  auto spec = spectrum(D, cfg.lambda_max);
  Report rep("dirac-spectrum", conf);
  std::ostringstream csv;
  csv << "eigenvalue,multiplicity\n";
  json rows = json::array();
  long long total = 0;
  for (const auto& [v, m] : spec) {
    rows.push_back({{"eigenvalue", v}, {"multiplicity", m}});
    csv << v << ',' << m << '\n';
    total += m;
  }
  rep.results()["operator"] = D.name;
  rep.results()["spectrum"] = rows;
  rep.results()["counting_function"] = total;
  long long direct = counting_function(D, cfg.lambda_max);
  rep.gate("spectrum total equals counting function", double(total - direct), "==", 0, total == direct);
  rep.csv(csv.str());
  return rep.emit(cfg);
}

int cmd_summability(const RunConfig& cfg, const json& conf) {
  check_schedule(cfg.schedule);
  Space sp = parse_space(cfg.space);
  std::string name = default_operator(cfg);
  DiracSpec D = scalar_operator(name, Domain{cfg.ell, sp, cfg.schedule.back()});
  std::vector<double> lambdas(cfg.schedule.begin(), cfg.schedule.end());
  auto fit = summability_exponent(D, lambdas);
  Report rep("summability", conf);
  rep.results()["operator"] = D.name;
  rep.results()["lambdas"] = fit.lambdas;
  rep.results()["counts"] = fit.counts;
  rep.results()["exponent"] = fit.exponent;
  rep.results()["plain_exponent"] = fit.plain_exponent;
  std::ostringstream csv;
  csv << "lambda,count\n";
  for (std::size_t i = 0; i < fit.lambdas.size(); ++i) csv << fit.lambdas[i] << ',' << fit.counts[i] << '\n';
  rep.csv(csv.str());
  if (name == "d-tilde" || name == "sphere-d") {
    double target = sp == Space::group ? cfg.ell * (cfg.ell + 2) : 2 * cfg.ell + 1;
    rep.results()["target"] = target;
    double dev = std::fabs(fit.exponent - target) / target;
    rep.gate("relative deviation of the exponent", dev, "<=", 0.1, dev <= 0.1);
  }
  return rep.emit(cfg);
}

int cmd_commutators(const RunConfig& cfg, const json& conf) {
  QParam q = q_of(cfg);
  check_schedule(cfg.schedule);
  check_margin(cfg.margin);
  Space sp = parse_space(cfg.space);
  std::string name = default_operator(cfg);
  Report rep("commutators", conf);
  json series = json::array();
  double worst_tail = 0, min_growth = 1e300;
  const int n = cfg.ell + 1;
  for (int i = 1; i <= (sp == Space::group ? n : 1); ++i)
    for (int j = 1; j <= n; ++j) {
      auto g = commutator_growth(
          [&](Domain d) { return scalar_operator(name, d); },
          [&](std::shared_ptr<const BasisSpec> b) {
            return sp == Space::group ? build_pi_u(i, j, q, b) : build_pi_u1_sphere(j, q, b);
          },
          cfg.ell, sp, cfg.schedule, cfg.margin);
      json pts = json::array();
      for (const auto& p : g.points)
        pts.push_back({{"cutoff", p.cutoff}, {"norm", p.norm}, {"entry_bound", p.entry_bound},
                       {"iterations", p.iterations}, {"converged", p.converged}});
      series.push_back({{"i", i}, {"j", j}, {"points", pts}, {"tail_variation", g.tail_variation()},
                        {"growth_ratio", g.growth_ratio()}});
      worst_tail = std::max(worst_tail, g.tail_variation());
      min_growth = std::min(min_growth, g.growth_ratio());
    }
  rep.results()["operator"] = name;
  rep.results()["series"] = series;
  if (name == "quadratic")
    rep.gate("min growth ratio (unbounded commutator expected)", min_growth, ">=", 2, min_growth >= 2);
  else
    rep.gate("max tail variation", worst_tail, "<", 0.05, worst_tail < 0.05);
  return rep.emit(cfg);
}

EdgeRule parse_rule(const std::string& r) {
  if (r == "threshold") return EdgeRule::threshold;
  if (r == "certified") return EdgeRule::certified;
  if (r == "exhaustive") return EdgeRule::exhaustive;
  throw UsageError("unknown edge rule " + r);
}

int cmd_sign_analysis(const RunConfig& cfg, const json& conf) {
  check_schedule(cfg.schedule);
  Space sp = parse_space(cfg.space);
  std::string name = default_operator(cfg);
  EdgeRule rule = parse_rule(cfg.rule);
  if (rule == EdgeRule::exhaustive && cfg.ell != 1) throw UsageError("exhaustive edges are limited to l = 1");
  auto make = [&](Domain d) { return scalar_operator(name, d); };
  DiracSpec top = make(Domain{cfg.ell, sp, cfg.schedule.back()});
  double c = 0;
  if (cfg.c == "auto") {
    c = default_threshold(top);
  } else {
    try {
      c = std::stod(cfg.c);
    } catch (const std::exception&) {
      throw UsageError("--c must be a number or auto");
    }
    if (!(c > 0)) throw UsageError("--c must be positive");
  }
  Report rep("sign-analysis", conf);
  rep.results()["operator"] = top.name;
  rep.results()["c"] = c;
  rep.results()["rule"] = to_string(rule);
  SignReport sr = sign_decomposition(top);
  rep.results()["positive"] = sr.positive;
  rep.results()["negative"] = sr.negative;
  rep.results()["negative_planes"] = sr.negative_planes;
  json exc = json::array();
  for (const auto& t : sr.exceptional) exc.push_back(tableau_json(t));
  rep.results()["exceptional"] = exc;
  auto cert = certify_edges(top, c);
  json viol = json::array();
  for (const auto& v : cert.violations)
    viol.push_back({{"from", tableau_json(v.from)}, {"move", v.move.m}, {"to", tableau_json(v.to)}, {"delta", v.delta}});
  rep.results()["certificates"] = cert.certificates.size();
  rep.results()["violations"] = viol;
  FlowTrail ft = flow_trail(make, cfg.ell, sp, cfg.schedule, c, rule);
  rep.results()["flow_trail"] = {{"cutoffs", ft.cutoffs}, {"flows", ft.flows}, {"positive", ft.positive}, {"negative", ft.negative}};
  if (cfg.schedule.size() >= 2) {
    CanonicalFormCheck cf = canonical_form(make(Domain{cfg.ell, sp, cfg.schedule.front()}), top);
    rep.results()["canonical_form"] = cf.canonical;
  }
  const bool bounded = name != "parity" && name != "quadratic";
  if (bounded) rep.gate("certificate violations", double(cert.violations.size()), "==", 0, cert.violations.empty());
  if (cfg.schedule.size() >= 3) {
    if (name == "parity")
      rep.gate("min flow increase (ladder expected)", ft.min_increase(), ">=", 2, ft.min_increase() >= 2);
    else if (bounded)
      rep.gate("flow saturates", ft.saturates() ? 1 : 0, "==", 1, ft.saturates());
  }
  if (!cfg.witness.empty()) {
    check_schedule(cfg.witness);
    QParam q = q_of(cfg);
    if (cfg.ell < 2) throw UsageError("the witness needs l >= 2");
    json w = json::array();
    std::size_t prev = 0;
    bool grows = true;
    double min_abs = 1e300;
    for (std::size_t w_i = 0; w_i < cfg.witness.size(); ++w_i) {
      const int N = cfg.witness[w_i];
      auto wr = noncompact_witness(q, cfg.ell, N);
      w.push_back({{"cutoff", N}, {"count", wr.entries.size()}, {"min_abs", wr.min_abs}, {"max_mismatch", wr.max_mismatch}});
      grows = grows && (w_i == 0 || wr.entries.size() > prev);
      prev = wr.entries.size();
      min_abs = std::min(min_abs, wr.min_abs);
    }
    rep.results()["witness"] = w;
    rep.gate("witness min |value|", min_abs, ">=", 0.01, min_abs >= 0.01);
    rep.gate("witness count increases", grows ? 1 : 0, "==", 1, grows);
  }
  return rep.emit(cfg);
}

int cmd_sphere_index(const RunConfig& cfg, const json& conf) {
  check_schedule(cfg.schedule);
  check_margin(cfg.margin);
  if (!(cfg.q >= 0 && cfg.q < 1)) throw UsageError("--q must lie in [0,1)");
  IndexReport r = sphere_index(cfg.ell, cfg.q, cfg.schedule, cfg.margin);
  Report rep("sphere-index", conf);
  json trail = json::array();
  for (const auto& e : r.trail)
    trail.push_back({{"cutoff", e.cutoff}, {"margin", e.margin}, {"trace_kernel", e.trace_kernel},
                     {"trace_cokernel", e.trace_cokernel}, {"estimate", e.estimate}, {"traced", e.traced},
                     {"excluded", e.excluded}});
  rep.results()["zero_limit"] = r.zero_limit;
  rep.results()["trail"] = trail;
  rep.results()["stable"] = r.stable;
  rep.results()["index"] = r.index ? json(*r.index) : json(nullptr);
  rep.gate("index is stable", r.stable ? 1 : 0, "==", 1, r.stable);
  rep.gate("index", r.index ? double(*r.index) : std::nan(""), "==", 1, r.index && *r.index == 1);
  return rep.emit(cfg);
}

int cmd_verify_all(const RunConfig& cfg, const json& conf) {
  Report rep("verify-all", conf);
  json list = json::array();
  for (const auto& r : run_acceptance(cfg.only)) {
    std::cerr << "criterion " << r.id << (r.passed ? " PASS " : " FAIL ") << r.title << " (" << r.seconds << "s)\n";
    list.push_back({{"id", r.id}, {"title", r.title}, {"passed", r.passed}, {"detail", r.detail}});
    rep.gate("criterion " + std::to_string(r.id) + ": " + r.title, r.passed ? 1 : 0, "==", 1, r.passed);
  }
  rep.results()["criteria"] = list;
  return rep.emit(cfg);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equivariant Dirac operators on SU_q(l+1) and S_q^{2l+1}: experiments and checks"};
  app.require_subcommand(1);
  app.footer(
      "CSV columns (--format csv):\n"
      "  tableaux        lambda,tableau,psi_twice\n"
      "  cgc             i,r,move,target,exponent,value\n"
      "  dirac-spectrum  eigenvalue,multiplicity\n"
      "  summability     lambda,count\n"
      "Other commands emit JSON only. Output goes to stdout unless --out or QSP_OUTPUT_DIR names a directory.\n"
      "Exit codes: 0 all gates pass, 1 a gate failed, 2 invalid configuration.");
  RunConfig cfg;
  if (const char* env = std::getenv("QSP_OUTPUT_DIR")) cfg.out = env;

  auto common = [&](CLI::App* s) {
    s->add_option("--ell", cfg.ell, "rank l")->check(CLI::PositiveNumber);
    s->add_option("--out", cfg.out, "output directory (default $QSP_OUTPUT_DIR, else stdout)");
    s->add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  };
  auto space_opt = [&](CLI::App* s) {
    s->add_option("--space", cfg.space, "group or sphere")->check(CLI::IsMember({"group", "sphere"}));
  };

  auto* tab = app.add_subcommand("tableaux", "GT enumeration and dimension tables");
  common(tab);
  tab->add_option("--lambda", cfg.lambda, "highest weight, comma separated")->delimiter(',');
  tab->add_option("--N", cfg.cutoff, "largest lambda_1 when no --lambda is given");
  tab->add_option("--q", cfg.q, "deformation parameter for q-dimensions");

  auto* cg = app.add_subcommand("cgc", "Clebsch-Gordan coefficient dump for 1 (x) lambda");
  common(cg);
  cg->add_option("--lambda", cfg.lambda, "highest weight, comma separated")->delimiter(',')->required();
  cg->add_option("--q", cfg.q, "deformation parameter");

  auto* rc = app.add_subcommand("repn-check", "relation residuals of the left regular representation");
  common(rc);
  space_opt(rc);
  rc->add_option("--N", cfg.cutoff, "cutoff");
  rc->add_option("--margin", cfg.margin, "interior margin");
  rc->add_option("--q", cfg.q, "deformation parameter");
  rc->add_option("--tol", cfg.tolerance, "residual gate");

  auto* ds = app.add_subcommand("dirac-spectrum", "eigenvalues and multiplicities up to Lambda");
  common(ds);
  space_opt(ds);
  ds->add_option("--operator", cfg.op, "d-tilde, sphere-d, quadratic, parity, n<i>, full");
  ds->add_option("--lambda-max", cfg.lambda_max, "Lambda")->check(CLI::NonNegativeNumber);

  auto* sm = app.add_subcommand("summability", "fit of log N(Lambda) against log Lambda");
  common(sm);
  space_opt(sm);
  sm->add_option("--operator", cfg.op, "scalar operator");
  sm->add_option("--schedule", cfg.schedule, "Lambda values")->delimiter(',')->required();

  auto* cm = app.add_subcommand("commutators", "interior norms of [D, pi(u_ij)] over a cutoff schedule");
  common(cm);
  space_opt(cm);
  cm->add_option("--operator", cfg.op, "d-tilde, sphere-d, quadratic, parity, n<i>");
  cm->add_option("--schedule", cfg.schedule, "cutoffs")->delimiter(',')->required();
  cm->add_option("--margin", cfg.margin, "interior margin");
  cm->add_option("--q", cfg.q, "deformation parameter");

  auto* sa = app.add_subcommand("sign-analysis", "sign partition, edge certificates, flow trail, witnesses");
  common(sa);
  space_opt(sa);
  sa->add_option("--operator", cfg.op, "d-tilde, sphere-d, quadratic, parity, n<i>");
  sa->add_option("--schedule", cfg.schedule, "cutoffs")->delimiter(',')->required();
  sa->add_option("--c", cfg.c, "edge threshold or auto");
  sa->add_option("--rule", cfg.rule, "threshold, certified or exhaustive");
  sa->add_option("--witness", cfg.witness, "cutoffs for the non-compactness witness (l >= 2)")->delimiter(',');
  sa->add_option("--q", cfg.q, "deformation parameter for the witness");

  auto* si = app.add_subcommand("sphere-index", "Fredholm index of Q gamma Q");
  common(si);
  si->add_option("--q", cfg.q, "deformation parameter, 0 selects the exact limit");
  si->add_option("--schedule", cfg.schedule, "cutoffs")->delimiter(',')->required();
  si->add_option("--margin", cfg.margin, "interior margin");

  auto* va = app.add_subcommand("verify-all", "run the acceptance suite");
  va->add_option("--only", cfg.only, "criterion ids")->delimiter(',');
  va->add_option("--out", cfg.out, "output directory (default $QSP_OUTPUT_DIR, else stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  CLI::App* sub = app.get_subcommands().front();
  json conf;
  conf["ell"] = cfg.ell;
  if (sub->get_option_no_throw("--q")) conf["q"] = cfg.q;
  if (sub->get_option_no_throw("--space")) conf["space"] = cfg.space;
  if (sub->get_option_no_throw("--N")) conf["N"] = cfg.cutoff;
  if (sub->get_option_no_throw("--margin")) conf["margin"] = cfg.margin;
  if (sub->get_option_no_throw("--schedule")) conf["schedule"] = cfg.schedule;
  if (sub->get_option_no_throw("--lambda")) conf["lambda"] = cfg.lambda;
  if (sub->get_option_no_throw("--operator")) conf["operator"] = default_operator(cfg);
  if (sub->get_option_no_throw("--c")) conf["c"] = cfg.c;
  if (sub->get_option_no_throw("--rule")) conf["rule"] = cfg.rule;
  if (sub->get_option_no_throw("--tol")) conf["tolerance"] = cfg.tolerance;
  if (sub->get_option_no_throw("--lambda-max")) conf["lambda_max"] = cfg.lambda_max;
  if (!cfg.witness.empty()) conf["witness"] = cfg.witness;
  if (!cfg.only.empty()) conf["only"] = cfg.only;

  try {
    const std::string name = sub->get_name();
    if (name == "tableaux") return cmd_tableaux(cfg, conf);
    if (name == "cgc") return cmd_cgc(cfg, conf);
    if (name == "repn-check") return cmd_repn_check(cfg, conf);
    if (name == "dirac-spectrum") return cmd_dirac_spectrum(cfg, conf);
    if (name == "summability") return cmd_summability(cfg, conf);
    if (name == "commutators") return cmd_commutators(cfg, conf);
    if (name == "sign-analysis") return cmd_sign_analysis(cfg, conf);
    if (name == "sphere-index") return cmd_sphere_index(cfg, conf);
    return cmd_verify_all(cfg, conf);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid configuration: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "invalid configuration: " << e.what() << "\n";
    return 2;
  } catch (const GapViolation& e) {
    std::cerr << "gap violation: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
