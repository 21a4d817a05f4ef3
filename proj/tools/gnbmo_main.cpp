// command-line front end: computes the geometric/seminorm quantities and runs
// the statement checkers, writing deterministic CSV/JSON reports

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gnbmo/verify.hpp"

using namespace gnbmo;

namespace {

struct Options {
  std::string domain_text = "interval(0,1)";
  std::string field;  // corpus label; empty = statement-dependent default set
  std::string file;   // sampled-field CSV; overrides --field
  double h = 0.01;
  double tol = 1e-8;
  std::string out;
  std::string format = "csv";
  unsigned long long seed = 1;
  bool timings = false;
  bool of_gradient = false;  // maximal: scan |Df| instead of f
  double s = 0, p = 0, s1 = 0, p1 = 0, sigma1 = 0, alpha = 1.0;
  int k1 = 1;
  std::string x_text;
  double r = 0, r0 = 0, r1 = 0, rho = 0;
  int probes = 5;
  int count = 100;
  std::string statement;  // sweep / estimate-c
  std::string axis = "s";
  std::string values_text;
  std::string sgrid_text;
  std::string config_path;
};

double parse_double(const std::string& text) {
  size_t used = 0;
  double v;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ConfigError("not a number: '" + text + "'");
  }
  if (used != text.size()) throw ConfigError("not a number: '" + text + "'");
  return v;
}

// key = value lines, '#' or ';' comments; unknown keys are rejected
std::map<std::string, std::string> read_kv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  auto trim = [](std::string t) {
    size_t a = t.find_first_not_of(" \t\r");
    size_t b = t.find_last_not_of(" \t\r");
    return a == std::string::npos ? std::string() : t.substr(a, b - a + 1);
  };
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(in, line)) {
    size_t mark = line.find_first_of("#;");
    if (mark != std::string::npos) line.erase(mark);
    if (trim(line).empty()) continue;
    size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line without '=': " + trim(line));
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("config line without a key");
    kv[key] = val;
  }
  return kv;
}

std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> out;
  std::string item;
  std::istringstream ss(text);
  while (std::getline(ss, item, ',')) {
    size_t used = 0;
    double v;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw ConfigError("not a number: '" + item + "'");
    }
    while (used < item.size() && std::isspace((unsigned char)item[used])) ++used;
    if (used != item.size()) throw ConfigError("not a number: '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw ConfigError("empty number list");
  return out;
}

ConvexDomain parse_domain(const std::string& text) {
  std::string t;
  for (char c : text)
    if (!std::isspace((unsigned char)c)) t += c;
  size_t open = t.find('(');
  if (open == std::string::npos || t.back() != ')')
    throw ConfigError("domain spec must look like name(a,b,...): " + text);
  std::string name = t.substr(0, open);
  std::vector<double> a = parse_number_list(t.substr(open + 1, t.size() - open - 2));
  if (name == "interval" && a.size() == 2) return ConvexDomain::interval(a[0], a[1]);
  if (name == "box" && a.size() == 4)
    return ConvexDomain::box(a[0], a[1], a[2], a[3]);
  if (name == "disk" && a.size() == 3) return ConvexDomain::disk(a[0], a[1], a[2]);
  if (name == "fullspace" && a.size() == 2)
    return ConvexDomain::full_space_window_1d(a[0], a[1]);
  if (name == "fullspace" && a.size() == 4)
    return ConvexDomain::full_space_window_2d(a[0], a[1], a[2], a[3]);
  if (name == "halfspace" && a.size() == 1)
    return ConvexDomain::half_space_window_1d(a[0]);
  if (name == "halfspace" && a.size() == 3)
    return ConvexDomain::half_space_window_2d(a[0], a[1], a[2]);
  throw ConfigError("unknown domain spec: " + text);
}

Point parse_point(const std::string& text, int dim) {
  std::vector<double> a = parse_number_list(text);
  if ((int)a.size() != dim)
    throw ConfigError("--x needs " + std::to_string(dim) +
                      " coordinate(s) for this domain");
  return {a[0], dim == 2 ? a[1] : 0.0};
}

double u01(std::mt19937& rng) {
  return (static_cast<double>(rng()) + 0.5) * (1.0 / 4294967296.0);
}

// interior probe points: uniform over the bounding box inset by 10% per axis,
// rejected against the model set (matters for disks)
std::vector<Point> probe_points(const ConvexDomain& dom, int n, std::mt19937& rng) {
  std::vector<Point> pts;
  while ((int)pts.size() < n) {
    Point q;
    q.x = dom.lo(0) + (0.1 + 0.8 * u01(rng)) * (dom.hi(0) - dom.lo(0));
    if (dom.dim() == 2)
      q.y = dom.lo(1) + (0.1 + 0.8 * u01(rng)) * (dom.hi(1) - dom.lo(1));
    if (dom.contains(q)) pts.push_back(q);
  }
  return pts;
}

std::string field_label(const Options& o) {
  if (!o.file.empty())
    return std::filesystem::path(o.file).stem().string();
  return o.field;
}

// the log-type corpus field freezes its singularity at the resolution scale
CorpusEntry make_entry(const Options& o, const ConvexDomain& dom,
                       const std::string& label) {
  if (!o.file.empty()) {
    NodeSet ns = domain_nodes(dom, o.h);
    CorpusEntry e;
    e.field = load_field_csv(o.file, ns, field_label(o));
    e.notes = "sampled field from " + o.file;
    return e;
  }
  return corpus_entry(dom, o.h, label);
}

std::vector<CorpusEntry> entries_for(const std::string& statement,
                                     const Options& o, const ConvexDomain& dom) {
  if (!o.file.empty() || !o.field.empty())
    return {make_entry(o, dom, o.field)};
  if (statement == "lusin") {  // the gradient bound is stated for smooth fields
    std::vector<CorpusEntry> out;
    for (auto& e : builtin_corpus(dom, o.h))
      if (e.cls == Smoothness::Smooth) out.push_back(std::move(e));
    return out;
  }
  if (statement == "bmo-log" || statement == "osc-holder")
    return builtin_corpus(dom, o.h);
  return estimate_corpus(statement, dom, o.h);
}

void append_seed_note(std::vector<InequalityReport>& reports, size_t first,
                      unsigned long long seed) {
  for (size_t i = first; i < reports.size(); ++i) {
    if (!reports[i].bias_notes.empty()) reports[i].bias_notes += "; ";
    reports[i].bias_notes += "seed=" + std::to_string(seed);
  }
}

struct FlagSeen {  // which optional flags were given (CLI11 counts)
  bool s = false, p = false, s1 = false, p1 = false, sigma1 = false, k1 = false;
  bool x = false, r = false, r0 = false, r1 = false, rho = false;
  bool domain = false, alpha = false;
};

Exponents merge_exponents(const std::string& statement, const Options& o,
                          const FlagSeen& seen) {
  Exponents ex = default_exponents(statement);
  if (seen.s) ex.s = o.s;
  if (seen.p) ex.p = o.p;
  if (seen.s1) ex.s1 = o.s1;
  if (seen.p1) ex.p1 = o.p1;
  if (seen.sigma1) ex.sigma1 = o.sigma1;
  if (seen.k1) ex.k1 = o.k1;
  return ex;
}

ConvexDomain statement_domain(const std::string& statement, const Options& o,
                              const FlagSeen& seen) {
  if (seen.domain) return parse_domain(o.domain_text);
  // the derivative statements live on a window with the field supported inside
  if (statement == "thm41" || statement == "prop43" || statement == "mollifier")
    return ConvexDomain::full_space_window_1d(-std::numbers::pi,
                                              std::numbers::pi);
  return parse_domain(o.domain_text);
}

std::vector<InequalityReport> run_statement(const std::string& statement,
                                            const Options& o,
                                            const FlagSeen& seen) {
  std::vector<InequalityReport> reports;
  if (statement == "gamma") {
    Exponents ex = merge_exponents(statement, o, seen);
    reports.push_back(check_gamma_identity(*ex.p, o.alpha, o.tol));
    return reports;
  }

  ConvexDomain dom = statement_domain(statement, o, seen);
  std::mt19937 rng(static_cast<unsigned>(o.seed));

  if (statement == "triangle")
    return triangle_suite(dom, o.h, o.count, static_cast<unsigned>(o.seed));

  Exponents ex = merge_exponents(statement, o, seen);
  // reject bad exponents before any quadrature runs
  if (statement == "thm21" || statement == "prop26")
    require_thm21_exponents(*ex.s, *ex.p);
  if (statement == "thm31")
    require_thm31_exponents(*ex.s, *ex.p, *ex.s1, *ex.p1);
  if (statement == "thm41" || statement == "prop43")
    thm41_derived_p(*ex.k1, *ex.sigma1, *ex.p1);

  std::vector<CorpusEntry> entries = entries_for(statement, o, dom);
  const bool random_probes = !seen.x;
  std::vector<Point> probes =
      seen.x ? std::vector<Point>{parse_point(o.x_text, dom.dim())}
             : probe_points(dom, o.probes, rng);
  size_t first = reports.size();

  if (statement == "thm21") {
    double kap = kappa(dom, o.h).value;
    for (const auto& e : entries) {
      double bmo = bmo_seminorm(e.field, dom, o.h).value;
      reports.push_back(
          verify_interp_gradient(e.field, dom, *ex.s, *ex.p, o.h, kap, bmo));
    }
    return reports;
  }
  if (statement == "thm31") {
    double kap = kappa(dom, o.h).value;
    for (const auto& e : entries) {
      double bmo = bmo_seminorm(e.field, dom, o.h).value;
      reports.push_back(verify_interp_fractional(e.field, dom, *ex.s, *ex.p, *ex.s1,
                                           *ex.p1, o.h, kap, bmo));
    }
    return reports;
  }
  if (statement == "thm41") {
    for (const auto& e : entries)
      reports.push_back(
          verify_interp_derivative(e, dom, *ex.k1, *ex.sigma1, *ex.p1, o.h));
    return reports;
  }
  if (statement == "mollifier") {
    double span = dom.hi(0) - dom.lo(0);
    double rho = seen.rho ? o.rho : 0.08 * span;
    for (const auto& e : entries)
      for (Point q : probes)
        reports.push_back(check_mollifier_identity(e, dom, q, rho, o.tol));
    if (random_probes) append_seed_note(reports, first, o.seed);
    return reports;
  }

  NodeSet ns = domain_nodes(dom, o.h);
  if (statement == "bmo-log") {
    std::vector<std::pair<double, double>> radii;
    if (seen.r0 != seen.r1)
      throw ConfigError("bmo-log needs both --r0 and --r1 (or neither)");
    if (seen.r0) {
      radii.emplace_back(o.r0, o.r1);
    } else {
      double big = dom.diameter() / 4.0;
      for (double q : {2.0, 10.0, 100.0}) radii.emplace_back(big / q, big);
    }
    for (const auto& e : entries) {
      double bmo = bmo_seminorm(e.field, dom, o.h).value;
      for (Point q : probes)
        for (auto [ra, rb] : radii)
          reports.push_back(check_bmo_log(e.field, dom, q, ra, rb, o.h, bmo, &ns));
    }
  } else if (statement == "lusin") {
    double kap = kappa(dom, o.h).value;
    std::vector<double> radii =
        seen.r ? std::vector<double>{o.r}
               : std::vector<double>{4.0 * o.h, dom.diameter() / 4.0};
    for (const auto& e : entries)
      for (Point q : probes)
        for (double rr : radii)
          reports.push_back(check_lusin(e.field, dom, q, rr, o.h, kap, &ns));
  } else if (statement == "osc-holder") {
    double kap = kappa(dom, o.h).value;
    double rr = seen.r ? o.r : dom.diameter() / 8.0;
    for (const auto& e : entries)
      for (Point q : probes)
        reports.push_back(
            check_osc_holder(e.field, dom, q, rr, *ex.s1, *ex.p1, o.h, kap, &ns));
  } else if (statement == "prop26") {
    double kap = kappa(dom, o.h).value;
    for (const auto& e : entries) {
      OscillationScanner scanner(e.field, dom, ns, o.h);
      for (Point q : probes)
        reports.push_back(check_pointwise_local(e.field, dom, q, *ex.s, *ex.p,
                                                o.h, kap, &ns, &scanner));
    }
  } else if (statement == "prop43") {
    for (const auto& e : entries) {
      OscillationScanner scanner(e.field, dom, ns, o.h);
      for (Point q : probes)
        reports.push_back(check_pointwise_higher(e, dom, q, *ex.k1, *ex.sigma1,
                                                 *ex.p1, o.h, &ns, &scanner));
    }
  } else {
    throw ConfigError("unknown statement: " + statement);
  }
  if (random_probes) append_seed_note(reports, first, o.seed);
  return reports;
}

InequalityReport value_report(const std::string& id, const ConvexDomain& dom,
                              const std::string& field, double h, double value) {
  InequalityReport r;
  r.statement_id = id;
  r.domain = dom.describe();
  r.field = field;
  r.d = dom.dim();
  r.h = h;
  r.lhs = value;
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "seminorms, maximal functions and geometric constants for "
      "interpolation inequalities on convex domains, with statement checkers"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_help_flag("--help", "print usage");  // frees -h for the resolution flag

  Options o;
  app.add_option("--config", o.config_path,
                 "key = value file merged under explicit flags (flags win)");
  auto* od = app.add_option("--domain", o.domain_text,
                            "interval(a,b) | box(ax,bx,ay,by) | disk(cx,cy,R) | "
                            "fullspace(...) | halfspace(...)");
  auto* ofld = app.add_option("--field", o.field,
                              "corpus field label (see `corpus list`)");
  auto* ofile = app.add_option("--file", o.file,
                               "sampled-field CSV (header, then x[,y],value rows)");
  auto* oh = app.add_option("--h", o.h, "grid resolution")
                 ->check(CLI::PositiveNumber);
  auto* otol = app.add_option("--tol", o.tol, "tolerance for identity checks")
                   ->check(CLI::PositiveNumber);
  auto* oout = app.add_option("--out", o.out, "report file path");
  auto* ofmt = app.add_option("--format", o.format, "report file format")
                   ->check(CLI::IsMember({"csv", "json"}));
  auto* oseed = app.add_option("--seed", o.seed,
                               "seed for randomized probe selection");
  auto* otim =
      app.add_flag("--timings", o.timings, "write real runtimes into report files");
  auto* os_ = app.add_option("--s", o.s, "primary smoothness exponent");
  auto* op = app.add_option("--p", o.p, "primary integrability exponent");
  auto* os1 = app.add_option("--s1", o.s1, "secondary smoothness exponent");
  auto* op1 = app.add_option("--p1", o.p1, "secondary integrability exponent");
  auto* ok1 = app.add_option("--k1", o.k1, "derivative order");
  auto* osg = app.add_option("--sigma1", o.sigma1, "fractional remainder");
  auto* oal = app.add_option("--alpha", o.alpha, "decay rate (gamma identity)");
  auto* ox = app.add_option("--x", o.x_text, "probe point, e.g. 0.5 or 0.4,0.6");
  auto* orr = app.add_option("--r", o.r, "ball radius")->check(CLI::PositiveNumber);
  auto* or0 = app.add_option("--r0", o.r0, "inner radius")->check(CLI::PositiveNumber);
  auto* or1 = app.add_option("--r1", o.r1, "outer radius")->check(CLI::PositiveNumber);
  auto* orho = app.add_option("--rho", o.rho, "kernel scale")->check(CLI::PositiveNumber);
  auto* oprobes = app.add_option("--probes", o.probes, "random probe count")
                      ->check(CLI::PositiveNumber);
  auto* ocount = app.add_option("--count", o.count, "suite size (triangle)")
                     ->check(CLI::PositiveNumber);

  app.add_subcommand("kappa", "geometric ball-intersection constant");
  app.add_subcommand("seminorm", "Gagliardo p-power double integral");
  app.add_subcommand("bmo", "bounded-mean-oscillation seminorm");
  auto* sc_max = app.add_subcommand("maximal", "Hardy-Littlewood maximal value");
  sc_max->add_flag("--gradient", o.of_gradient, "scan |Df| instead of f");
  auto* sc_verify = app.add_subcommand("verify", "run one statement checker");
  std::string statement;
  sc_verify->add_option("statement", statement,
                        "gamma | triangle | bmo-log | lusin | osc-holder | "
                        "thm21 | prop26 | thm31 | thm41 | prop43 | mollifier")
      ->required();
  auto* sc_sweep = app.add_subcommand("sweep", "one checker across an exponent axis");
  auto* ostmt1 = sc_sweep->add_option("--statement", o.statement,
                                      "thm21 | thm31 | thm41");
  auto* oaxis = sc_sweep->add_option("--axis", o.axis, "s | p | s1 | sigma1");
  auto* ovals = sc_sweep->add_option("--values", o.values_text,
                                     "comma-separated axis values");
  auto* sc_est = app.add_subcommand("estimate-c", "empirical constant over the corpus");
  auto* ostmt2 = sc_est->add_option("--statement", o.statement,
                                    "thm21 | thm31 | thm41");
  auto* osgrid = sc_est->add_option("--s-grid", o.sgrid_text,
                                    "comma-separated s values");
  auto* sc_corpus = app.add_subcommand("corpus", "corpus utilities");
  std::string corpus_action;
  sc_corpus->add_option("action", corpus_action, "list")
      ->required()
      ->check(CLI::IsMember({"list"}));

  for (auto* sc : app.get_subcommands({})) sc->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 2;  // malformed invocation is a configuration error
  }

  FlagSeen seen;
  seen.s = os_->count() > 0;
  seen.p = op->count() > 0;
  seen.s1 = os1->count() > 0;
  seen.p1 = op1->count() > 0;
  seen.k1 = ok1->count() > 0;
  seen.sigma1 = osg->count() > 0;
  seen.alpha = oal->count() > 0;
  seen.x = ox->count() > 0;
  seen.r = orr->count() > 0;
  seen.r0 = or0->count() > 0;
  seen.r1 = or1->count() > 0;
  seen.rho = orho->count() > 0;
  seen.domain = od->count() > 0;

  try {
    if (!o.config_path.empty()) {
      // config file values fill in only flags that were not given explicitly
      struct Key {
        std::function<std::size_t()> given;
        std::function<void(const std::string&)> set;
      };
      auto from = [](CLI::Option* op_) {
        return [op_]() -> std::size_t { return op_->count(); };
      };
      auto positive = [](double v, const char* what) {
        if (!(v > 0.0)) throw ConfigError(std::string(what) + " must be positive");
        return v;
      };
      std::map<std::string, Key> keys;
      keys["domain"] = {from(od), [&](const std::string& v) {
                          o.domain_text = v;
                          seen.domain = true;
                        }};
      keys["field"] = {from(ofld), [&](const std::string& v) { o.field = v; }};
      keys["file"] = {from(ofile), [&](const std::string& v) { o.file = v; }};
      keys["h"] = {from(oh), [&](const std::string& v) {
                     o.h = positive(parse_double(v), "h");
                   }};
      keys["tol"] = {from(otol), [&](const std::string& v) {
                       o.tol = positive(parse_double(v), "tol");
                     }};
      keys["out"] = {from(oout), [&](const std::string& v) { o.out = v; }};
      keys["format"] = {from(ofmt), [&](const std::string& v) {
                          if (v != "csv" && v != "json")
                            throw ConfigError("format must be csv or json");
                          o.format = v;
                        }};
      keys["seed"] = {from(oseed), [&](const std::string& v) {
                        try {
                          o.seed = std::stoull(v);
                        } catch (const std::exception&) {
                          throw ConfigError("bad seed: " + v);
                        }
                      }};
      keys["timings"] = {from(otim), [&](const std::string& v) {
                           o.timings =
                               v == "1" || v == "true" || v == "yes" || v == "on";
                         }};
      keys["s"] = {from(os_), [&](const std::string& v) {
                     o.s = parse_double(v);
                     seen.s = true;
                   }};
      keys["p"] = {from(op), [&](const std::string& v) {
                     o.p = parse_double(v);
                     seen.p = true;
                   }};
      keys["s1"] = {from(os1), [&](const std::string& v) {
                      o.s1 = parse_double(v);
                      seen.s1 = true;
                    }};
      keys["p1"] = {from(op1), [&](const std::string& v) {
                      o.p1 = parse_double(v);
                      seen.p1 = true;
                    }};
      keys["k1"] = {from(ok1), [&](const std::string& v) {
                      o.k1 = static_cast<int>(parse_double(v));
                      seen.k1 = true;
                    }};
      keys["sigma1"] = {from(osg), [&](const std::string& v) {
                          o.sigma1 = parse_double(v);
                          seen.sigma1 = true;
                        }};
      keys["alpha"] = {from(oal), [&](const std::string& v) {
                         o.alpha = parse_double(v);
                         seen.alpha = true;
                       }};
      keys["x"] = {from(ox), [&](const std::string& v) {
                     o.x_text = v;
                     seen.x = true;
                   }};
      keys["r"] = {from(orr), [&](const std::string& v) {
                     o.r = positive(parse_double(v), "r");
                     seen.r = true;
                   }};
      keys["r0"] = {from(or0), [&](const std::string& v) {
                      o.r0 = positive(parse_double(v), "r0");
                      seen.r0 = true;
                    }};
      keys["r1"] = {from(or1), [&](const std::string& v) {
                      o.r1 = positive(parse_double(v), "r1");
                      seen.r1 = true;
                    }};
      keys["rho"] = {from(orho), [&](const std::string& v) {
                       o.rho = positive(parse_double(v), "rho");
                       seen.rho = true;
                     }};
      keys["probes"] = {from(oprobes), [&](const std::string& v) {
                          o.probes = static_cast<int>(
                              positive(parse_double(v), "probes"));
                        }};
      keys["count"] = {from(ocount), [&](const std::string& v) {
                         o.count =
                             static_cast<int>(positive(parse_double(v), "count"));
                       }};
      keys["statement"] = {
          [&]() -> std::size_t { return ostmt1->count() + ostmt2->count(); },
          [&](const std::string& v) { o.statement = v; }};
      keys["axis"] = {from(oaxis), [&](const std::string& v) { o.axis = v; }};
      keys["values"] = {from(ovals),
                        [&](const std::string& v) { o.values_text = v; }};
      keys["s-grid"] = {from(osgrid),
                        [&](const std::string& v) { o.sgrid_text = v; }};
      for (const auto& [key, value] : read_kv_file(o.config_path)) {
        auto it = keys.find(key);
        if (it == keys.end()) throw ConfigError("unknown config key: " + key);
        if (it->second.given() == 0) it->second.set(value);
      }
    }
    std::vector<InequalityReport> reports;
    std::map<std::string, std::string> cfg;
    std::string command;
    std::string summary;

    if (app.got_subcommand("kappa")) {
      command = "kappa";
      ConvexDomain dom = parse_domain(o.domain_text);
      KappaEstimate ke = kappa(dom, o.h);
      InequalityReport r = value_report("kappa", dom, "", o.h, ke.value);
      r.kappa = ke.value;
      r.error_estimate = ke.upper_bound - ke.value;
      r.bias_notes = ke.analytic
                         ? "closed-form window value"
                         : "discrete sup over node centres and boundary probes, "
                           "a lower bound; closed-form bracket " +
                               format_g12(ke.upper_bound);
      reports.push_back(std::move(r));
    } else if (app.got_subcommand("seminorm")) {
      command = "seminorm";
      ConvexDomain dom = parse_domain(o.domain_text);
      Exponents ex = merge_exponents("thm21", o, seen);  // same (s, p) slot
      CorpusEntry e = make_entry(o, dom, o.field.empty() ? "affine" : o.field);
      SeminormValue v = gagliardo_p_power(e.field, dom, *ex.s, *ex.p, o.h);
      InequalityReport r = value_report("seminorm", dom, e.field.label(), o.h,
                                        v.value);
      r.s = *ex.s;
      r.p = *ex.p;
      r.bias_notes = v.bias_note;
      reports.push_back(std::move(r));
    } else if (app.got_subcommand("bmo")) {
      command = "bmo";
      ConvexDomain dom = parse_domain(o.domain_text);
      CorpusEntry e = make_entry(o, dom, o.field.empty() ? "affine" : o.field);
      BmoEstimate b = bmo_seminorm_full(e.field, dom, o.h);
      InequalityReport r =
          value_report("bmo", dom, e.field.label(), o.h, b.sem.value);
      r.bias_notes = b.sem.bias_note + "; sup at node " +
                     std::to_string(b.arg_center) + ", r=" + format_g12(b.arg_r);
      reports.push_back(std::move(r));
    } else if (app.got_subcommand("maximal")) {
      command = "maximal";
      ConvexDomain dom = parse_domain(o.domain_text);
      CorpusEntry e = make_entry(o, dom, o.field.empty() ? "affine" : o.field);
      ScalarField g =
          o.of_gradient ? gradient_magnitude(e.field, dom) : e.field;
      Point q = seen.x ? parse_point(o.x_text, dom.dim()) : dom.center();
      double v = maximal_function(g, dom, q, o.h);
      InequalityReport r = value_report("maximal", dom, g.label(), o.h, v);
      r.bias_notes = "sup over the discrete radius grid at x=(" +
                     format_g12(q.x) +
                     (dom.dim() == 2 ? ", " + format_g12(q.y) : "") +
                     "), a lower bound";
      reports.push_back(std::move(r));
    } else if (app.got_subcommand("verify")) {
      command = "verify " + statement;
      cfg["statement"] = statement;
      reports = run_statement(statement, o, seen);
    } else if (app.got_subcommand("sweep")) {
      command = "sweep";
      if (o.statement.empty()) throw ConfigError("sweep needs --statement");
      if (o.values_text.empty()) throw ConfigError("sweep needs --values");
      cfg["statement"] = o.statement;
      cfg["axis"] = o.axis;
      cfg["values"] = o.values_text;
      ConvexDomain dom = statement_domain(o.statement, o, seen);
      CorpusEntry e = make_entry(o, dom, o.field.empty() ? "bump" : o.field);
      Exponents base = merge_exponents(o.statement, o, seen);
      reports = sweep_exponent(o.statement, dom, e, o.axis,
                               parse_number_list(o.values_text), base, o.h);
    } else if (app.got_subcommand("estimate-c")) {
      command = "estimate-c";
      if (o.statement.empty()) throw ConfigError("estimate-c needs --statement");
      cfg["statement"] = o.statement;
      ConvexDomain dom = statement_domain(o.statement, o, seen);
      std::vector<double> sgrid;
      if (!o.sgrid_text.empty()) sgrid = parse_number_list(o.sgrid_text);
      Exponents ex = merge_exponents(o.statement, o, seen);
      std::vector<CorpusEntry> corpus = estimate_corpus(o.statement, dom, o.h);
      ConstantEstimate est =
          estimate_constant(o.statement, dom, corpus, sgrid, ex, o.h);
      reports = est.members;
      std::ostringstream ss;
      ss.precision(12);
      ss << "c_emp = " << est.c_emp << "  corpus_size = " << est.corpus_size
         << "  refinement_drift = " << est.refinement_drift;
      summary = ss.str();
    } else if (app.got_subcommand("corpus")) {
      ConvexDomain dom = parse_domain(o.domain_text);
      for (const auto& e : builtin_corpus(dom, o.h)) {
        std::cout << e.field.label() << "  [" << smoothness_name(e.cls) << "]"
                  << (e.derivative ? "  (derivative available)" : "")
                  << (e.notes.empty() ? "" : "  -- " + e.notes) << "\n";
      }
      return 0;
    }

    for (const auto& r : reports) std::cout << describe_report(r) << "\n";
    if (!summary.empty()) std::cout << summary << "\n";

    if (!o.out.empty()) {
      if (reports.empty()) throw ConfigError("no reports to write");
      cfg["command"] = command;
      cfg["h"] = format_g12(o.h);
      cfg["seed"] = std::to_string(o.seed);
      cfg["format"] = o.format;
      if (!o.field.empty()) cfg["field"] = o.field;
      if (!o.file.empty()) cfg["file"] = o.file;
      if (seen.domain || command != "verify gamma") cfg["domain"] = o.domain_text;
      if (seen.s) cfg["s"] = format_g12(o.s);
      if (seen.p) cfg["p"] = format_g12(o.p);
      if (seen.s1) cfg["s1"] = format_g12(o.s1);
      if (seen.p1) cfg["p1"] = format_g12(o.p1);
      if (seen.k1) cfg["k1"] = std::to_string(o.k1);
      if (seen.sigma1) cfg["sigma1"] = format_g12(o.sigma1);
      if (o.format == "csv")
        write_csv(reports, o.out, o.timings);
      else
        write_json(reports, o.out, o.timings, cfg);
      std::cout << "wrote " << o.out << "\n";
    }

    for (const auto& r : reports)
      if (r.pass && !*r.pass) return 1;
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
