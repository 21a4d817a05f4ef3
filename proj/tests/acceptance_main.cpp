// Acceptance gate. Runs the eleven end-to-end checks the library is expected
// to satisfy, prints one PASS/FAIL line per criterion with the measured
// numbers, and exits nonzero if any line failed. argv[1] is the path of the
// command-line binary (needed by the determinism check); everything else runs
// in-process against the library.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gnbmo/field.hpp"
#include "gnbmo/geometry.hpp"
#include "gnbmo/quadrature.hpp"
#include "gnbmo/report.hpp"
#include "gnbmo/seminorms.hpp"
#include "gnbmo/verify.hpp"

using namespace gnbmo;

namespace {

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point t0) {
  return std::chrono::duration<double>(clock_type::now() - t0).count();
}

double u01(std::mt19937& rng) {
  return (static_cast<double>(rng()) + 0.5) * (1.0 / 4294967296.0);
}

// interior probes: bounding box inset by 10% per axis, rejected against the
// model set (same scheme the command-line tool uses)
std::vector<Point> probe_points(const ConvexDomain& dom, int n, unsigned seed) {
  std::mt19937 rng(seed);
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

CorpusEntry scaled_entry(const CorpusEntry& e, double lambda) {
  CorpusEntry out = e;
  out.field = e.field.scaled(lambda);
  if (e.derivative) out.derivative = e.derivative->scaled(lambda);
  return out;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Outcome {
  bool ok = false;
  std::string detail;
};

// ---------------------------------------------------------------------------

Outcome criterion_gamma() {
  const double ps[] = {1.5, 2.0, 3.0};
  const double alphas[] = {0.5, 1.0, 2.0};
  double worst_diff = 0.0, slowest = 0.0;
  bool ok = true;
  for (double p : ps)
    for (double a : alphas) {
      auto t0 = clock_type::now();
      InequalityReport r = check_gamma_identity(p, a, 1e-6);
      double dt = seconds_since(t0);
      double diff = std::abs(*r.lhs - *r.rhs_product);
      worst_diff = std::max(worst_diff, diff);
      slowest = std::max(slowest, dt);
      ok = ok && r.pass.value_or(false) && diff < 1e-6 && dt < 1.0;
    }
  return {ok, "gamma integral vs factorial form, 9 (p,alpha) cases: max |lhs-rhs| = " +
                  fmt(worst_diff) + ", slowest case " + fmt(slowest) + " s"};
}

Outcome criterion_gagliardo_oracle() {
  ScalarField f("affine", [](const Point& q) { return q.x; },
                [](const Point&) { return Point{1.0, 0.0}; });
  ConvexDomain dom = ConvexDomain::interval(0.0, 1.0);
  const double oracle = 8.0 / 3.0;
  double v1 = gagliardo_p_power(f, dom, 0.75, 2.0, 1e-3).value;
  double v2 = gagliardo_p_power(f, dom, 0.75, 2.0, 5e-4).value;
  bool within = std::abs(v1 - oracle) <= 0.01 * oracle;
  bool monotone = v2 >= v1;
  bool toward = std::abs(oracle - v2) <= std::abs(oracle - v1);
  bool ok = within && monotone && toward;
  return {ok, "gagliardo(0.75,2) of x on (0,1): " + fmt(v1) + " at h=1e-3 vs 8/3" +
                  " (rel err " + fmt(std::abs(v1 - oracle) / oracle) + "), h/2 -> " +
                  fmt(v2) + (monotone && toward ? ", nondecreasing toward the value"
                                                : ", refinement NOT monotone")};
}

Outcome criterion_bmo_kappa_oracles() {
  ScalarField f("affine", [](const Point& q) { return q.x; },
                [](const Point&) { return Point{1.0, 0.0}; });
  ConvexDomain itv = ConvexDomain::interval(0.0, 1.0);
  double b = bmo_seminorm(f, itv, 0.005).value;
  KappaEstimate ki = kappa(itv, 1e-3);
  KappaEstimate ks = kappa(ConvexDomain::box(0.0, 1.0, 0.0, 1.0), 0.01);
  bool ok_b = std::abs(b - 1.0 / 3.0) <= 0.01 / 3.0;
  bool ok_i = std::abs(ki.value - 2.0) <= 0.04;
  bool ok_s = std::abs(ks.value - 4.0) <= 0.20;
  std::string detail = "bmo(x on (0,1)) = " + fmt(b) + " vs 1/3; kappa(interval) = " +
                       fmt(ki.value) + " vs 2; kappa(square) = " + fmt(ks.value) +
                       " vs 4 +- 5%";
  if (!ok_s)
    detail += " <- measured sup is 2*pi: at a corner the radius-diameter ball covers "
              "the square, so full-ball/intersection = pi*diam^2/area = 2*pi; the "
              "target 4 is only the small-radius corner limit";
  return {ok_b && ok_i && ok_s, detail};
}

Outcome criterion_triangle_suite() {
  auto r1 = triangle_suite(ConvexDomain::interval(0.0, 1.0), 0.005, 100, 42);
  auto r2 = triangle_suite(ConvexDomain::box(0.0, 1.0, 0.0, 1.0), 0.05, 100, 43);
  int viol = 0;
  for (const auto& r : r1) viol += r.pass.value_or(false) ? 0 : 1;
  for (const auto& r : r2) viol += r.pass.value_or(false) ? 0 : 1;
  return {viol == 0, "average triangle inequality, 100 random piecewise-linear fields "
                     "x ball triples per dimension: " + std::to_string(viol) +
                     " violations at 1e-9 slack"};
}

Outcome criterion_log_growth() {
  int checks = 0, viol = 0;
  struct Setup { ConvexDomain dom; double h; unsigned seed; };
  std::vector<Setup> setups = {
      {ConvexDomain::interval(0.0, 1.0), 0.005, 7},
      {ConvexDomain::box(0.0, 1.0, 0.0, 1.0), 0.05, 8},
  };
  for (const auto& su : setups) {
    NodeSet ns = domain_nodes(su.dom, su.h);
    std::vector<Point> probes = probe_points(su.dom, 5, su.seed);
    double big = su.dom.diameter() / 4.0;
    for (const auto& e : builtin_corpus(su.dom, su.h)) {
      double bmo = bmo_seminorm(e.field, su.dom, su.h).value;
      for (Point q : probes)
        for (double ratio : {2.0, 10.0, 100.0}) {
          InequalityReport r =
              check_bmo_log(e.field, su.dom, q, big / ratio, big, su.h, bmo, &ns);
          ++checks;
          viol += r.pass.value_or(false) ? 0 : 1;
        }
    }
  }
  return {viol == 0, "log growth of double averages, full corpus x 5 probes x radius "
                     "ratios {2,10,100} in both dimensions: " + std::to_string(viol) +
                     "/" + std::to_string(checks) + " violations at 1e-6 relative slack"};
}

Outcome criterion_gradient_oscillation() {
  int checks = 0, viol = 0;
  struct Setup { ConvexDomain dom; double h; unsigned seed; };
  std::vector<Setup> setups = {
      {ConvexDomain::interval(0.0, 1.0), 0.005, 17},
      {ConvexDomain::box(0.0, 1.0, 0.0, 1.0), 0.05, 18},
  };
  for (const auto& su : setups) {
    NodeSet ns = domain_nodes(su.dom, su.h);
    double kap = kappa(su.dom, su.h).value;
    std::vector<Point> probes = probe_points(su.dom, 100, su.seed);
    for (const auto& e : builtin_corpus(su.dom, su.h)) {
      if (e.cls != Smoothness::Smooth) continue;
      for (Point q : probes)
        for (double r : {4.0 * su.h, su.dom.diameter() / 4.0}) {
          InequalityReport rep = check_lusin(e.field, su.dom, q, r, su.h, kap, &ns);
          ++checks;
          viol += rep.pass.value_or(false) ? 0 : 1;
        }
    }
  }
  return {viol == 0, "ball-average deviation vs kappa*r*M|Df|, smooth corpus x 100 "
                     "probes x r in {4h, diam/4}, both dimensions: " +
                     std::to_string(viol) + "/" + std::to_string(checks) +
                     " violations under quadratic-in-h slack"};
}

// per-s maxima over the base-resolution nondegenerate rows
std::map<double, double> per_s_maxima(const ConstantEstimate& est, double h_base) {
  std::map<double, double> m;
  for (const auto& r : est.members) {
    if (r.h != h_base || !r.ratio || r.degenerate) continue;
    double s = r.s.value_or(0.0);
    m[s] = std::max(m[s], *r.ratio);
  }
  return m;
}

Outcome criterion_interp_s1_stability(double* runtime_out) {
  auto t0 = clock_type::now();
  Exponents ex;
  ex.p = 2.0;
  std::vector<double> sgrid = {0.6, 0.75, 0.9};
  ConvexDomain itv = ConvexDomain::interval(0.0, 1.0);
  ConvexDomain box = ConvexDomain::box(0.0, 1.0, 0.0, 1.0);
  ConstantEstimate e1 =
      estimate_constant("thm21", itv, estimate_corpus("thm21", itv, 5e-3), sgrid, ex, 5e-3);
  ConstantEstimate e2 =
      estimate_constant("thm21", box, estimate_corpus("thm21", box, 2e-2), sgrid, ex, 2e-2);
  double dt = seconds_since(t0);
  *runtime_out = dt;
  bool ok = true;
  std::string spread_txt;
  double spreads[2] = {0.0, 0.0};
  const ConstantEstimate* ests[2] = {&e1, &e2};
  const double hbases[2] = {5e-3, 2e-2};
  for (int i = 0; i < 2; ++i) {
    std::map<double, double> m = per_s_maxima(*ests[i], hbases[i]);
    double lo = 1e300, hi = 0.0;
    for (auto& [s, v] : m) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    spreads[i] = (m.size() == sgrid.size() && lo > 0.0) ? hi / lo : 1e300;
    ok = ok && std::isfinite(ests[i]->c_emp) && ests[i]->c_emp > 0.0 &&
         spreads[i] < 10.0 && ests[i]->refinement_drift < 0.20;
    spread_txt += std::string(i ? "; square " : "interval ") + "c_emp=" +
                  fmt(ests[i]->c_emp) + " spread(s)=" + fmt(spreads[i]) +
                  " drift=" + fmt(ests[i]->refinement_drift);
  }
  ok = ok && dt < 600.0;
  return {ok, "s1=1 interpolation constant, p=2, s in {0.6,0.75,0.9}: " + spread_txt +
                  "; runtime " + fmt(dt) + " s (budget 600)"};
}

Outcome criterion_interp_s1lt1_stability() {
  Exponents ex;
  ex.s = 0.6;
  ex.p = 2.0;
  ex.s1 = 0.8;
  ex.p1 = 1.5;
  ConvexDomain itv = ConvexDomain::interval(0.0, 1.0);
  ConstantEstimate est = estimate_constant(
      "thm31", itv, estimate_corpus("thm31", itv, 5e-3), {}, ex, 5e-3);
  bool ok = std::isfinite(est.c_emp) && est.c_emp > 0.0 && est.refinement_drift < 0.20;
  return {ok, "s1<1 interpolation at (0.6,2,0.8,1.5) on the interval: c_emp = " +
                  fmt(est.c_emp) + ", refinement drift = " + fmt(est.refinement_drift)};
}

Outcome criterion_higher_order() {
  ConvexDomain win =
      ConvexDomain::full_space_window_1d(-std::numbers::pi, std::numbers::pi);
  const double h = 0.01;
  NodeSet ns = domain_nodes(win, h);
  std::vector<Point> probes = probe_points(win, 20, 29);
  int bad_ratio = 0, moll_fail = 0, count = 0;
  for (const char* label : {"sinusoid", "bump"}) {
    CorpusEntry e = corpus_entry(win, h, label);
    OscillationScanner scanner(e.field, win, ns, h);
    for (Point q : probes) {
      InequalityReport r =
          check_pointwise_higher(e, win, q, 1, 0.5, 2.0, h, &ns, &scanner);
      ++count;
      if (!r.ratio || !std::isfinite(*r.ratio)) ++bad_ratio;
      InequalityReport m = check_mollifier_identity(e, win, q, 0.3, 1e-6);
      if (!m.pass.value_or(false)) ++moll_fail;
    }
  }
  bool ok = bad_ratio == 0 && moll_fail == 0;
  return {ok, "derivative bound at (k1,sigma1,p1)=(1,0.5,2), sinusoid+bump, 20 probes: " +
                  std::to_string(bad_ratio) + "/" + std::to_string(count) +
                  " non-finite ratios; mollifier identity residual > 1e-6 at " +
                  std::to_string(moll_fail) + "/" + std::to_string(count) + " probes"};
}

Outcome criterion_scale_invariance() {
  ConvexDomain itv = ConvexDomain::interval(0.0, 1.0);
  ConvexDomain win =
      ConvexDomain::full_space_window_1d(-std::numbers::pi, std::numbers::pi);
  const double h = 0.01;
  CorpusEntry bump_i = corpus_entry(itv, h, "bump");
  CorpusEntry sin_w = corpus_entry(win, h, "sinusoid");
  NodeSet ns = domain_nodes(itv, h);
  Region A = ball_region(ns, itv, {0.3, 0.0}, 0.2);
  Region B = ball_region(ns, itv, {0.7, 0.0}, 0.25);
  Region C = ball_region(ns, itv, {0.5, 0.0}, 0.3);
  Point xi{0.37, 0.0}, xw{0.7, 0.0};

  using Checker = std::function<std::optional<double>(double)>;
  std::vector<std::pair<std::string, Checker>> checkers = {
      {"triangle", [&](double lam) {
         return check_triangle(bump_i.field.scaled(lam), A, B, C).ratio; }},
      {"log-growth", [&](double lam) {
         return check_bmo_log(bump_i.field.scaled(lam), itv, xi, 0.05, 0.25, h).ratio; }},
      {"gradient-osc", [&](double lam) {
         return check_lusin(bump_i.field.scaled(lam), itv, xi, 0.25, h).ratio; }},
      {"holder-osc", [&](double lam) {
         return check_osc_holder(bump_i.field.scaled(lam), itv, xi, 0.25, 0.5, 2.0, h).ratio; }},
      {"interp-s1eq1", [&](double lam) {
         return verify_interp_gradient(bump_i.field.scaled(lam), itv, 0.75, 2.0, h).ratio; }},
      {"interp-s1lt1", [&](double lam) {
         return verify_interp_fractional(bump_i.field.scaled(lam), itv, 0.6, 2.0, 0.8, 1.5, h).ratio; }},
      {"pointwise-local", [&](double lam) {
         return check_pointwise_local(bump_i.field.scaled(lam), itv, xi, 0.75, 2.0, h).ratio; }},
      {"pointwise-higher", [&](double lam) {
         return check_pointwise_higher(scaled_entry(sin_w, lam), win, xw, 1, 0.5, 2.0, h).ratio; }},
      {"higher-global", [&](double lam) {
         return verify_interp_derivative(scaled_entry(sin_w, lam), win, 1, 0.5, 2.0, h).ratio; }},
      {"mollifier", [&](double lam) {
         return check_mollifier_identity(scaled_entry(sin_w, lam), win, xw, 0.3).ratio; }},
  };

  double worst = 0.0;
  std::string broken;
  for (auto& [name, fn] : checkers) {
    std::optional<double> base = fn(1.0);
    if (!base || !std::isfinite(*base) || *base == 0.0) {
      broken = name + " gave no base ratio";
      break;
    }
    for (double lam : {0.1, 10.0}) {
      std::optional<double> r = fn(lam);
      double dev = (r && std::isfinite(*r)) ? std::abs(*r - *base) / std::abs(*base)
                                            : 1e300;
      worst = std::max(worst, dev);
      if (dev > 1e-10 && broken.empty())
        broken = name + " moved by " + fmt(dev) + " at lambda=" + fmt(lam);
    }
  }

  // dilation: same bump profile on (0,1) and on (0,1/2) with matched node
  // counts; the seminorm scales by 2^(sp-d)
  CorpusEntry b1 = corpus_entry(ConvexDomain::interval(0.0, 1.0), 1e-3, "bump");
  CorpusEntry b2 = corpus_entry(ConvexDomain::interval(0.0, 0.5), 5e-4, "bump");
  double v1 = gagliardo_p_power(b1.field, ConvexDomain::interval(0.0, 1.0), 0.75, 2.0, 1e-3).value;
  double v2 = gagliardo_p_power(b2.field, ConvexDomain::interval(0.0, 0.5), 0.75, 2.0, 5e-4).value;
  double observed = std::log2(v2 / v1);
  double expect = 0.75 * 2.0 - 1.0;  // sp - d
  bool ok_dil = std::abs(observed - expect) <= 0.01 * expect;

  bool ok = broken.empty() && ok_dil;
  std::string detail = "ratio(lambda*f) across 10 checkers, lambda in {0.1,10}: max "
                       "relative deviation " + fmt(worst);
  if (!broken.empty()) detail += " (" + broken + ")";
  detail += "; dilation exponent " + fmt(observed) + " vs sp-d = " + fmt(expect);
  return {ok, detail};
}

Outcome criterion_determinism(const std::string& cli) {
  if (cli.empty())
    return {false, "command-line binary path not supplied as argv[1]"};
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path();
  fs::path out1 = dir / "gnbmo_acc_det_1.csv";
  fs::path out2 = dir / "gnbmo_acc_det_2.csv";
  std::string base = "\"" + cli + "\" estimate-c --statement thm21 --p 2 "
                     "--s-grid 0.6,0.75,0.9 --h 0.005 --seed 11 --out ";
  int rc1 = std::system((base + "\"" + out1.string() + "\" > /dev/null").c_str());
  int rc2 = std::system((base + "\"" + out2.string() + "\" > /dev/null").c_str());
  std::string a = slurp(out1.string()), b = slurp(out2.string());
  fs::remove(out1);
  fs::remove(out2);
  bool ok = rc1 == 0 && rc2 == 0 && !a.empty() && a == b;
  return {ok, "two equal-seed constant-estimate runs: exit codes " +
                  std::to_string(rc1) + "/" + std::to_string(rc2) + ", " +
                  std::to_string(a.size()) + " vs " + std::to_string(b.size()) +
                  " bytes, " + (a == b && !a.empty() ? "byte-identical" : "DIFFER")};
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli = argc > 1 ? argv[1] : "";
  double c7_runtime = 0.0;
  std::vector<std::function<Outcome()>> criteria = {
      criterion_gamma,
      criterion_gagliardo_oracle,
      criterion_bmo_kappa_oracles,
      criterion_triangle_suite,
      criterion_log_growth,
      criterion_gradient_oscillation,
      [&] { return criterion_interp_s1_stability(&c7_runtime); },
      criterion_interp_s1lt1_stability,
      criterion_higher_order,
      criterion_scale_invariance,
      [&] { return criterion_determinism(cli); },
  };

  int failed = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    Outcome out;
    try {
      out = criteria[i]();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    if (!out.ok) ++failed;
    std::printf("criterion %2zu: %s  %s\n", i + 1, out.ok ? "PASS" : "FAIL",
                out.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("acceptance: %zu/%zu criteria passed\n", criteria.size() - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
