#include "gnbmo/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <map>
#include <random>
#include <set>

#include "gnbmo/quadrature.hpp"

namespace gnbmo {

namespace {

struct Stopwatch {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double ms() const {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - t0)
        .count();
  }
};

// quantize to the 12 significant digits the file format carries, so the
// product of emitted factor columns reproduces the emitted rhs_product
double q12(double v) { return std::strtod(format_g12(v).c_str(), nullptr); }

// uniform (0,1) from the raw 32-bit stream; avoids distribution objects whose
// byte layout is implementation-defined
double u01(std::mt19937& rng) {
  return (static_cast<double>(rng()) + 0.5) * (1.0 / 4294967296.0);
}

void append_note(InequalityReport& r, const std::string& note) {
  if (note.empty()) return;
  if (!r.bias_notes.empty()) r.bias_notes += "; ";
  r.bias_notes += note;
}

std::string point_note(Point x, int dim) {
  std::string s = "x=(" + format_g12(x.x);
  if (dim == 2) s += ", " + format_g12(x.y);
  return s + ")";
}

// rhs_product := product of the present factor columns in column order;
// ratio only when that product is positive
void finalize_product_ratio(InequalityReport& r) {
  const std::optional<double>* cols[] = {&r.bmo, &r.grad_norm,
                                         &r.gagliardo_s1p1, &r.kappa,
                                         &r.blowup_factor};
  double prod = 1.0;
  bool any = false;
  for (const auto* c : cols)
    if (c->has_value()) {
      prod *= **c;
      any = true;
    }
  // kept as the exact product of the (rounded) factor columns, so the row
  // stays self-consistent after serialization
  if (any) r.rhs_product = prod;
  if (r.lhs && r.rhs_product && *r.rhs_product > 0.0) {
    r.ratio = *r.lhs / *r.rhs_product;
  } else if (r.lhs) {
    r.degenerate = true;
    append_note(r, "degenerate: rhs vanishes");
  }
}

constexpr double kTriangleSlack = 1e-9;
constexpr double kBmoLogSlack = 1e-6;   // relative
constexpr double kLusinSlackC = 50.0;   // x h^2, relative
constexpr double kQuadTol = 1e-11;      // adaptive radial / tail integrations

}  // namespace

ScalarField gradient_magnitude(const ScalarField& f, const ConvexDomain& dom) {
  if (f.is_grid() && !f.has_analytic_gradient())
    throw ConfigError("gradient unavailable for grid-sampled fields");
  const int dim = dom.dim();
  return ScalarField("|D" + f.label() + "|", [f, dom, dim](const Point& q) {
    Point g = f.gradient(q, dom);
    return dim == 2 ? std::hypot(g.x, g.y) : std::abs(g.x);
  });
}

void require_thm21_exponents(double s, double p) {
  if (!(p > 1.0)) throw ConfigError("requires p > 1");
  if (!(s > 1.0 / p && s < 1.0)) throw ConfigError("requires s ∈ (1/p, 1)");
}

void require_thm31_exponents(double s, double p, double s1, double p1) {
  if (!(p > 1.0)) throw ConfigError("requires p > 1");
  if (!(p1 > 1.0)) throw ConfigError("requires p1 > 1");
  if (!(s > 0.0 && s < 1.0)) throw ConfigError("requires s ∈ (0, 1)");
  if (!(s1 > 0.0 && s1 < 1.0)) throw ConfigError("requires s1 ∈ (0, 1)");
  if (!(s < s1)) throw ConfigError("requires s < s1");
  if (std::abs(s1 * p1 - s * p) > 1e-12)
    throw ConfigError("requires s1·p1 = s·p");
}

double thm41_derived_p(int k1, double sigma1, double p1) {
  if (k1 < 1) throw ConfigError("requires k1 ≥ 1");
  if (!(sigma1 > 0.0 && sigma1 < 1.0))
    throw ConfigError("requires sigma1 ∈ (0, 1)");
  if (!(p1 > 1.0)) throw ConfigError("requires p1 > 1");
  return (k1 + sigma1) * p1 / k1;
}

Exponents default_exponents(const std::string& statement_id) {
  Exponents e;
  if (statement_id == "thm21" || statement_id == "prop26") {
    e.s = 0.75;
    e.p = 2.0;
  } else if (statement_id == "thm31") {
    e.s = 0.6;
    e.p = 2.0;
    e.s1 = 0.8;
    e.p1 = 1.5;
  } else if (statement_id == "thm41" || statement_id == "prop43" ||
             statement_id == "mollifier") {
    e.k1 = 1;
    e.sigma1 = 0.5;
    e.p1 = 2.0;
    e.p = thm41_derived_p(1, 0.5, 2.0);
  } else if (statement_id == "osc-holder") {
    e.s1 = 0.5;
    e.p1 = 2.0;
  } else if (statement_id == "gamma") {
    e.p = 2.0;
  } else if (statement_id == "triangle" || statement_id == "bmo-log" ||
             statement_id == "lusin") {
    // no exponents
  } else {
    throw ConfigError("unknown statement: " + statement_id);
  }
  return e;
}

// ---------------------------------------------------------------------------
// identities and inequality checkers

InequalityReport check_gamma_identity(double p, double alpha, double tol) {
  if (!(p > 1.0)) throw ConfigError("requires p > 1");
  if (!(alpha > 0.0)) throw ConfigError("requires alpha > 0");
  if (!(tol > 0.0)) throw ConfigError("tolerance must be positive");
  Stopwatch sw;
  InequalityReport r;
  r.statement_id = "gamma";
  r.field = "analytic";
  r.d = 1;
  r.p = p;
  auto g = [p, alpha](double t) {
    return std::pow(std::log(t), p) / std::pow(t, 1.0 + alpha);
  };
  QuadResult q = adaptive_integral_1d(g, 1.0,
                                      std::numeric_limits<double>::infinity(),
                                      kQuadTol, alpha);
  const double target = std::exp(std::lgamma(p + 1.0)) / std::pow(alpha, p + 1.0);
  r.lhs = q.value;
  r.rhs_product = target;
  r.ratio = q.value / target;
  r.error_estimate = std::abs(q.value - target);
  r.pass = *r.error_estimate < tol;
  r.bias_notes = "alpha=" + format_g12(alpha) + "; tol=" + format_g12(tol);
  r.runtime_ms = sw.ms();
  return r;
}

InequalityReport check_triangle(const ScalarField& f, const Region& A,
                                const Region& B, const Region& C) {
  for (const Region* reg : {&A, &B, &C})
    if (reg->idx.empty() || !(reg->measure > 0.0))
      throw ConfigError("triangle check requires regions of positive measure");
  Stopwatch sw;
  InequalityReport r;
  r.statement_id = "triangle";
  r.field = f.label();
  r.d = A.nodes->dim;
  r.h = A.nodes->h;
  const double ab = oscillation_pair_average(f, A, B);
  const double ac = oscillation_pair_average(f, A, C);
  const double cb = oscillation_pair_average(f, C, B);
  r.lhs = ab;
  r.rhs_product = ac + cb;
  if (*r.rhs_product > 0.0)
    r.ratio = ab / *r.rhs_product;
  else
    r.degenerate = true;
  r.pass = ab <= ac + cb + kTriangleSlack;
  r.bias_notes = "slack=" + format_g12(kTriangleSlack) +
                 " absolute; inequality is exact for weighted node sums";
  r.runtime_ms = sw.ms();
  return r;
}

std::vector<InequalityReport> triangle_suite(const ConvexDomain& dom, double h,
                                             int count, unsigned seed) {
  if (count < 1) throw ConfigError("suite count must be positive");
  NodeSet ns = domain_nodes(dom, h);
  const size_t n = ns.pts.size();
  std::mt19937 rng(seed);
  std::vector<InequalityReport> out;
  out.reserve(static_cast<size_t>(count));
  const double diam = dom.diameter();
  for (int k = 0; k < count; ++k) {
    std::vector<double> vals(n);
    for (double& v : vals) v = 2.0 * u01(rng) - 1.0;
    ScalarField f = ScalarField::from_grid("pl-" + std::to_string(k), ns, vals);
    Region regs[3];
    for (Region& reg : regs) {
      Point c = ns.pts[static_cast<size_t>(rng() % n)];
      double r = (0.02 + 0.48 * u01(rng)) * diam;
      reg = ball_region(ns, dom, c, r);
    }
    InequalityReport rep = check_triangle(f, regs[0], regs[1], regs[2]);
    rep.domain = dom.describe();
    append_note(rep, "seed=" + std::to_string(seed));
    out.push_back(std::move(rep));
  }
  return out;
}

InequalityReport check_bmo_log(const ScalarField& f, const ConvexDomain& dom,
                               Point x, double r0, double r1, double h,
                               std::optional<double> bmo_value,
                               const NodeSet* nodes) {
  if (!(0.0 < r0 && r0 <= r1 && r1 <= dom.diameter() * (1.0 + 1e-12)))
    throw ConfigError("radii must satisfy 0 < r0 ≤ r1 ≤ diam");
  Stopwatch sw;
  NodeSet local;
  if (!nodes) {
    local = domain_nodes(dom, h);
    nodes = &local;
  }
  Region inner = ball_region(*nodes, dom, x, r0);
  Region outer = ball_region(*nodes, dom, x, r1);
  const double lhs = oscillation_pair_average(f, inner, outer);
  const double bmo =
      bmo_value ? *bmo_value : bmo_seminorm(f, dom, nodes->h).value;
  const double factor = std::exp(1.0) * (1.0 + dom.dim() * std::log(r1 / r0));

  InequalityReport r;
  r.statement_id = "bmo-log";
  r.domain = dom.describe();
  r.field = f.label();
  r.d = dom.dim();
  r.h = nodes->h;
  r.lhs = lhs;
  r.bmo = q12(bmo);
  r.blowup_factor = q12(factor);
  finalize_product_ratio(r);
  r.pass = lhs <= bmo * factor * (1.0 + kBmoLogSlack);
  append_note(r, point_note(x, r.d) + ", r0=" + format_g12(r0) +
                     ", r1=" + format_g12(r1));
  append_note(r, "slack=" + format_g12(kBmoLogSlack) +
                     " relative; discrete bmo sup is a lower bound");
  r.runtime_ms = sw.ms();
  return r;
}

InequalityReport check_lusin(const ScalarField& f, const ConvexDomain& dom,
                             Point x, double r, double h,
                             std::optional<double> kappa_value,
                             const NodeSet* nodes) {
  if (!(r > 0.0)) throw ConfigError("radius must be positive");
  ScalarField gm = gradient_magnitude(f, dom);  // throws if unavailable
  Stopwatch sw;
  NodeSet local;
  if (!nodes) {
    local = domain_nodes(dom, h);
    nodes = &local;
  }
  const double lhs = ball_average_deviation(f, dom, *nodes, x, r);
  const double maximal = maximal_function(gm, dom, *nodes, x, r);
  const double kap = kappa_value ? *kappa_value : kappa(dom, nodes->h).value;
  const double slack = kLusinSlackC * nodes->h * nodes->h;

  InequalityReport rep;
  rep.statement_id = "lusin";
  rep.domain = dom.describe();
  rep.field = f.label();
  rep.d = dom.dim();
  rep.h = nodes->h;
  rep.lhs = lhs;
  rep.kappa = q12(kap);
  rep.grad_norm = q12(maximal);
  rep.blowup_factor = q12(r);  // the radius factor of the bound
  finalize_product_ratio(rep);
  rep.pass = lhs <= kap * r * maximal * (1.0 + slack);
  append_note(rep, point_note(x, rep.d) + ", r=" + format_g12(r));
  append_note(rep, "slack=" + format_g12(slack) +
                       " relative (grid discretization); probe radius added "
                       "to the maximal-function scan");
  rep.runtime_ms = sw.ms();
  return rep;
}

// ---------------------------------------------------------------------------
// ratio checkers

InequalityReport check_osc_holder(const ScalarField& f, const ConvexDomain& dom,
                                  Point x, double r, double s1, double p1,
                                  double h, std::optional<double> kappa_value,
                                  const NodeSet* nodes) {
  if (!(s1 > 0.0 && s1 < 1.0)) throw ConfigError("requires s1 ∈ (0, 1)");
  if (!(p1 >= 1.0)) throw ConfigError("requires p1 ≥ 1");
  if (!(r > 0.0)) throw ConfigError("radius must be positive");
  if (!dom.contains(x)) throw ConfigError("probe must lie in the domain");
  Stopwatch sw;
  NodeSet local;
  if (!nodes) {
    local = domain_nodes(dom, h);
    nodes = &local;
  }
  const double lhs = ball_average_deviation(f, dom, *nodes, x, r);
  const double fx = f.eval(x);
  const double expo = 0.5 * (dom.dim() + s1 * p1);
  const double eps2 = 1e-24 * nodes->h * nodes->h;  // drops the probe's own node
  KahanSum inner;
  for (size_t j = 0; j < nodes->pts.size(); ++j) {
    double d2 = dist2(x, nodes->pts[j], nodes->dim);
    if (d2 <= eps2) continue;
    double diff = std::abs(f.eval(nodes->pts[j]) - fx);
    if (diff == 0.0) continue;
    inner.add(std::pow(diff, p1) / std::pow(d2, expo) * nodes->w[j]);
  }
  if (!std::isfinite(inner.value()))
    throw NumericError("slice integral non-finite at this probe");
  const double kap = kappa_value ? *kappa_value : kappa(dom, nodes->h).value;

  InequalityReport rep;
  rep.statement_id = "osc-holder";
  rep.domain = dom.describe();
  rep.field = f.label();
  rep.d = dom.dim();
  rep.s1 = s1;
  rep.p1 = p1;
  rep.h = nodes->h;
  rep.lhs = lhs;
  rep.kappa = q12(kap);
  rep.blowup_factor = q12(std::pow(r, s1));
  rep.gagliardo_s1p1 = q12(std::pow(inner.value(), 1.0 / p1));
  finalize_product_ratio(rep);
  append_note(rep, point_note(x, rep.d) + ", r=" + format_g12(r));
  append_note(rep,
              "probe-node exclusion makes the slice integral a lower bound");
  rep.runtime_ms = sw.ms();
  return rep;
}

InequalityReport verify_interp_gradient(const ScalarField& f, const ConvexDomain& dom,
                                    double s, double p, double h,
                                    std::optional<double> kappa_value,
                                    std::optional<double> bmo_value) {
  require_thm21_exponents(s, p);
  ScalarField gm = gradient_magnitude(f, dom);  // availability guard
  (void)gm;
  Stopwatch sw;
  SeminormValue lhs = gagliardo_p_power(f, dom, s, p, h);
  const double kap = kappa_value ? *kappa_value : kappa(dom, h).value;
  const double bmo = bmo_value ? *bmo_value : bmo_seminorm(f, dom, h).value;
  SeminormValue grad = lp_gradient_norm_q(f, dom, s * p, h);

  InequalityReport r;
  r.statement_id = "thm21";
  r.domain = dom.describe();
  r.field = f.label();
  r.d = dom.dim();
  r.s = s;
  r.p = p;
  r.h = h;
  r.lhs = lhs.value;
  r.kappa = q12(std::pow(kap, s * p));
  r.blowup_factor = q12(1.0 / ((s * p - 1.0) * (1.0 - s)));
  r.bmo = q12(std::pow(bmo, (1.0 - s) * p));
  r.grad_norm = q12(grad.value);
  finalize_product_ratio(r);
  append_note(r, lhs.bias_note);
  append_note(r, "discrete bmo sup is a lower bound");
  r.runtime_ms = sw.ms();
  return r;
}

InequalityReport verify_interp_fractional(const ScalarField& f, const ConvexDomain& dom,
                                    double s, double p, double s1, double p1,
                                    double h, std::optional<double> kappa_value,
                                    std::optional<double> bmo_value) {
  require_thm31_exponents(s, p, s1, p1);
  Stopwatch sw;
  SeminormValue lhs = gagliardo_p_power(f, dom, s, p, h);
  SeminormValue fine = gagliardo_p_power(f, dom, s1, p1, h);
  const double kap = kappa_value ? *kappa_value : kappa(dom, h).value;
  const double bmo = bmo_value ? *bmo_value : bmo_seminorm(f, dom, h).value;

  InequalityReport r;
  r.statement_id = "thm31";
  r.domain = dom.describe();
  r.field = f.label();
  r.d = dom.dim();
  r.s = s;
  r.p = p;
  r.s1 = s1;
  r.p1 = p1;
  r.h = h;
  r.lhs = lhs.value;
  r.bmo = q12(std::pow(bmo, p - p1));
  r.gagliardo_s1p1 = q12(fine.value);
  r.kappa = q12(std::pow(kap, p1));
  finalize_product_ratio(r);
  append_note(r, lhs.bias_note);
  append_note(r, "discrete bmo sup is a lower bound");
  r.runtime_ms = sw.ms();
  return r;
}

InequalityReport check_pointwise_local(const ScalarField& f,
                                       const ConvexDomain& dom, Point x,
                                       double s, double p, double h,
                                       std::optional<double> kappa_value,
                                       const NodeSet* nodes,
                                       const OscillationScanner* scanner) {
  require_thm21_exponents(s, p);
  if (!dom.contains(x)) throw ConfigError("probe must lie in the domain");
  ScalarField gm = gradient_magnitude(f, dom);
  Stopwatch sw;
  NodeSet local;
  if (!nodes) {
    local = domain_nodes(dom, h);
    nodes = &local;
  }
  std::optional<OscillationScanner> own;
  if (!scanner) {
    own.emplace(f, dom, *nodes, nodes->h);
    scanner = &*own;
  }
  const double diam = dom.diameter();
  auto radial = [&](double r) {
    double dev = ball_average_deviation(f, dom, *nodes, x, r);
    return std::pow(dev, p) / std::pow(r, 1.0 + s * p);
  };
  const double lhs = adaptive_integral_1d(radial, nodes->h, diam, kQuadTol).value;
  const double f_sharp = scanner->sharp_at(x);
  const double maximal = maximal_function(gm, dom, *nodes, x, std::nullopt);
  const double kap = kappa_value ? *kappa_value : kappa(dom, nodes->h).value;

  InequalityReport r;
  r.statement_id = "prop26";
  r.domain = dom.describe();
  r.field = f.label();
  r.d = dom.dim();
  r.s = s;
  r.p = p;
  r.h = nodes->h;
  r.lhs = lhs;
  r.blowup_factor = q12(1.0 / (1.0 - s));
  r.bmo = q12(std::pow(f_sharp, (1.0 - s) * p));
  r.kappa = q12(std::pow(kap, s * p));
  r.grad_norm = q12(std::pow(maximal, s * p));
  finalize_product_ratio(r);
  append_note(r, point_note(x, r.d));
  append_note(r, "radial integral truncated below r=" + format_g12(nodes->h));
  r.runtime_ms = sw.ms();
  return r;
}

// ---------------------------------------------------------------------------
// mollifier and higher-order checks

namespace {

double raw_eta(double u) {
  double w = 1.0 - u * u;
  if (w <= 1e-12) return 0.0;
  return std::exp(-1.0 / w);
}

double eta_norm() {
  static const double c = [] {
    return 1.0 / adaptive_integral_1d(raw_eta, -1.0, 1.0, 1e-12).value;
  }();
  return c;
}

}  // namespace

double mollifier_eta(double u) { return eta_norm() * raw_eta(u); }

double mollifier_eta_prime(double u) {
  double w = 1.0 - u * u;
  if (w <= 1e-12) return 0.0;
  return eta_norm() * std::exp(-1.0 / w) * (-2.0 * u / (w * w));
}

InequalityReport check_mollifier_identity(const CorpusEntry& entry,
                                          const ConvexDomain& window, Point x,
                                          double rho, double tol) {
  if (window.dim() != 1)
    throw ConfigError("mollifier identity check is one-dimensional");
  if (!(rho > 0.0)) throw ConfigError("rho must be positive");
  if (!(tol > 0.0)) throw ConfigError("tolerance must be positive");
  if (!entry.derivative)
    throw ConfigError("derivative rule missing for this corpus entry");
  if (!window.contains({x.x - rho, 0.0}) || !window.contains({x.x + rho, 0.0}))
    throw ConfigError("support of the scaled kernel leaves the window");
  Stopwatch sw;
  const ScalarField& f = entry.field;
  const ScalarField& fp = *entry.derivative;
  auto lhs_g = [&](double y) {
    return mollifier_eta((x.x - y) / rho) * fp.eval({y, 0.0});
  };
  auto rhs_g = [&](double y) {
    return mollifier_eta_prime((x.x - y) / rho) * f.eval({y, 0.0});
  };
  const double lhs =
      adaptive_integral_1d(lhs_g, x.x - rho, x.x + rho, 1e-12).value / rho;
  const double rhs =
      adaptive_integral_1d(rhs_g, x.x - rho, x.x + rho, 1e-12).value /
      (rho * rho);
  const double residual = std::abs(lhs - rhs);
  const double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});

  InequalityReport r;
  r.statement_id = "mollifier";
  r.domain = window.describe();
  r.field = f.label();
  r.d = 1;
  r.k1 = 1;
  r.h = 0.0;  // pure quadrature, no node grid
  r.lhs = lhs;
  r.rhs_product = rhs;
  if (rhs != 0.0 && ((lhs > 0.0) == (rhs > 0.0))) r.ratio = lhs / rhs;
  r.error_estimate = residual;
  r.pass = residual < tol * scale;
  append_note(r, point_note(x, 1) + ", rho=" + format_g12(rho));
  append_note(r, "two independent quadratures of the same identity");
  r.runtime_ms = sw.ms();
  return r;
}

InequalityReport check_pointwise_higher(const CorpusEntry& entry,
                                        const ConvexDomain& window, Point x,
                                        int k1, double sigma1, double p1,
                                        double h, const NodeSet* nodes,
                                        const OscillationScanner* scanner) {
  if (window.dim() != 1)
    throw ConfigError("pointwise derivative check is one-dimensional");
  if (k1 != 1) throw ConfigError("requires k1 = 1 (first-order build)");
  const double p = thm41_derived_p(k1, sigma1, p1);
  if (!entry.derivative)
    throw ConfigError("derivative rule missing for this corpus entry");
  if (!window.contains(x)) throw ConfigError("probe must lie in the window");
  Stopwatch sw;
  NodeSet local;
  if (!nodes) {
    local = domain_nodes(window, h);
    nodes = &local;
  }
  std::optional<OscillationScanner> own;
  if (!scanner) {
    own.emplace(entry.field, window, *nodes, nodes->h);
    scanner = &*own;
  }
  const ScalarField& fp = *entry.derivative;
  const double f_sharp = scanner->sharp_at(x);
  const double fpx = fp.eval(x);
  const double expo = 0.5 * (1.0 + sigma1 * p1);
  const double eps2 = 1e-24 * nodes->h * nodes->h;
  KahanSum slice;
  for (size_t j = 0; j < nodes->pts.size(); ++j) {
    double d2 = dist2(x, nodes->pts[j], 1);
    if (d2 <= eps2) continue;
    double diff = std::abs(fp.eval(nodes->pts[j]) - fpx);
    if (diff == 0.0) continue;
    slice.add(std::pow(diff, p1) / std::pow(d2, expo) * nodes->w[j]);
  }
  if (!std::isfinite(slice.value()))
    throw NumericError("slice integral non-finite at this probe");

  InequalityReport r;
  r.statement_id = "prop43";
  r.domain = window.describe();
  r.field = entry.field.label();
  r.d = 1;
  r.k1 = k1;
  r.sigma1 = sigma1;
  r.p1 = p1;
  r.p = p;
  r.h = nodes->h;
  r.lhs = std::abs(fpx);
  r.bmo = q12(std::pow(f_sharp, sigma1 / (k1 + sigma1)));
  r.gagliardo_s1p1 = q12(std::pow(slice.value(), k1 / ((k1 + sigma1) * p1)));
  finalize_product_ratio(r);
  append_note(r, point_note(x, 1));
  append_note(r, "window truncation: slice integral restricted to the window");
  r.runtime_ms = sw.ms();
  return r;
}

InequalityReport verify_interp_derivative(const CorpusEntry& entry,
                                    const ConvexDomain& window, int k1,
                                    double sigma1, double p1, double h) {
  if (window.dim() != 1)
    throw ConfigError("derivative-integral statement is one-dimensional");
  if (k1 != 1) throw ConfigError("requires k1 = 1 (first-order build)");
  const double p = thm41_derived_p(k1, sigma1, p1);
  if (!entry.derivative)
    throw ConfigError("derivative rule missing for this corpus entry");
  Stopwatch sw;
  SeminormValue lhs = lp_gradient_norm_q(entry.field, window, p, h);
  SeminormValue fine = gagliardo_p_power(*entry.derivative, window, sigma1, p1, h);
  const double bmo = bmo_seminorm(entry.field, window, h).value;

  InequalityReport r;
  r.statement_id = "thm41";
  r.domain = window.describe();
  r.field = entry.field.label();
  r.d = 1;
  r.k1 = k1;
  r.sigma1 = sigma1;
  r.p1 = p1;
  r.p = p;
  r.h = h;
  r.lhs = lhs.value;
  r.bmo = q12(std::pow(bmo, p - p1));
  r.gagliardo_s1p1 = q12(fine.value);
  finalize_product_ratio(r);
  append_note(r, "window truncation: all integrals restricted to the window");
  r.runtime_ms = sw.ms();
  return r;
}

// ---------------------------------------------------------------------------
// corpus drivers

std::vector<CorpusEntry> estimate_corpus(const std::string& statement_id,
                                         const ConvexDomain& dom, double h) {
  std::vector<CorpusEntry> all = builtin_corpus(dom, h);
  std::vector<CorpusEntry> out;
  for (auto& e : all) {
    // the capped log field moves with h, so a refinement drift over it would
    // compare two different fields
    if (e.cls == Smoothness::BmoUnbounded) continue;
    if ((statement_id == "thm21" || statement_id == "prop26") &&
        !e.field.has_analytic_gradient())
      continue;
    if ((statement_id == "thm41" || statement_id == "prop43" ||
         statement_id == "mollifier") &&
        !e.derivative)
      continue;
    out.push_back(std::move(e));
  }
  return out;
}

ConstantEstimate estimate_constant(const std::string& statement_id,
                                   const ConvexDomain& dom,
                                   const std::vector<CorpusEntry>& corpus,
                                   const std::vector<double>& s_grid,
                                   const Exponents& exps, double h) {
  if (corpus.empty()) throw ConfigError("corpus is empty");
  ConstantEstimate est;
  est.statement_id = statement_id;
  double level_max[2] = {0.0, 0.0};
  std::set<std::string> contributing;

  for (int lev = 0; lev < 2; ++lev) {
    const double hh = lev == 0 ? h : 0.5 * h;
    std::optional<double> kap;
    if (statement_id == "thm21" || statement_id == "thm31")
      kap = kappa(dom, hh).value;
    std::map<std::string, double> bmo_cache;
    auto bmo_of = [&](const ScalarField& f) {
      auto it = bmo_cache.find(f.label());
      if (it != bmo_cache.end()) return it->second;
      double v = bmo_seminorm(f, dom, hh).value;
      bmo_cache.emplace(f.label(), v);
      return v;
    };
    auto consume = [&](InequalityReport rep) {
      if (rep.ratio) {
        level_max[lev] = std::max(level_max[lev], *rep.ratio);
        if (lev == 0) contributing.insert(rep.field);
      }
      est.members.push_back(std::move(rep));
    };

    if (statement_id == "thm21") {
      const double p = exps.p.value_or(2.0);
      std::vector<double> grid =
          s_grid.empty() ? std::vector<double>{0.6, 0.75, 0.9} : s_grid;
      for (double s : grid)
        for (const auto& e : corpus)
          consume(verify_interp_gradient(e.field, dom, s, p, hh, kap,
                                     bmo_of(e.field)));
    } else if (statement_id == "thm31") {
      const double s = exps.s.value_or(0.6), p = exps.p.value_or(2.0);
      const double s1 = exps.s1.value_or(0.8), p1 = exps.p1.value_or(1.5);
      for (const auto& e : corpus)
        consume(verify_interp_fractional(e.field, dom, s, p, s1, p1, hh, kap,
                                   bmo_of(e.field)));
    } else if (statement_id == "thm41") {
      const int k1 = exps.k1.value_or(1);
      const double sg = exps.sigma1.value_or(0.5), p1 = exps.p1.value_or(2.0);
      for (const auto& e : corpus)
        consume(verify_interp_derivative(e, dom, k1, sg, p1, hh));
    } else {
      throw ConfigError("constant estimation supports thm21, thm31, thm41");
    }
  }

  if (!(level_max[0] > 0.0))
    throw ConfigError("corpus is all-degenerate for this statement");
  est.c_emp = level_max[0];
  est.corpus_size = static_cast<int>(contributing.size());
  est.refinement_drift = std::abs(level_max[1] - level_max[0]) / level_max[0];
  return est;
}

std::vector<InequalityReport> sweep_exponent(const std::string& statement_id,
                                             const ConvexDomain& dom,
                                             const CorpusEntry& entry,
                                             const std::string& axis,
                                             const std::vector<double>& values,
                                             const Exponents& base, double h) {
  if (values.empty()) throw ConfigError("sweep needs at least one value");
  if (statement_id == "thm21") {
    if (axis != "s" && axis != "p")
      throw ConfigError("thm21 sweeps over axis s or p");
  } else if (statement_id == "thm31") {
    if (axis != "s1") throw ConfigError("thm31 sweeps over axis s1 (p1 derived)");
  } else if (statement_id == "thm41") {
    if (axis != "sigma1") throw ConfigError("thm41 sweeps over axis sigma1");
  } else {
    throw ConfigError("sweep supports thm21, thm31, thm41");
  }
  std::optional<double> kap, bmo;
  std::vector<InequalityReport> out;
  out.reserve(values.size());

  auto skipped = [&](double v, const std::string& reason) {
    InequalityReport r;
    r.statement_id = statement_id;
    r.domain = dom.describe();
    r.field = entry.field.label();
    r.d = dom.dim();
    r.h = h;
    if (axis == "s")
      r.s = v;
    else if (axis == "p")
      r.p = v;
    else if (axis == "s1")
      r.s1 = v;
    else if (axis == "sigma1")
      r.sigma1 = v;
    r.bias_notes = "skipped: " + reason;
    return r;
  };

  for (double v : values) {
    try {
      if (statement_id == "thm21") {
        double s = axis == "s" ? v : base.s.value_or(0.75);
        double p = axis == "p" ? v : base.p.value_or(2.0);
        if (s * p <= 1.0) {
          out.push_back(skipped(v, "sp ≤ 1"));
          continue;
        }
        if (!kap) kap = kappa(dom, h).value;
        if (!bmo) bmo = bmo_seminorm(entry.field, dom, h).value;
        out.push_back(verify_interp_gradient(entry.field, dom, s, p, h, kap, bmo));
      } else if (statement_id == "thm31") {
        double s = base.s.value_or(0.6), p = base.p.value_or(2.0);
        double s1 = v;
        if (!(s1 > 0.0 && s1 < 1.0)) {
          out.push_back(skipped(v, "s1 outside (0, 1)"));
          continue;
        }
        double p1 = s * p / s1;  // keeps s1·p1 = s·p along the sweep
        if (!(p1 > 1.0)) {
          out.push_back(skipped(v, "derived p1 ≤ 1"));
          continue;
        }
        if (!kap) kap = kappa(dom, h).value;
        if (!bmo) bmo = bmo_seminorm(entry.field, dom, h).value;
        InequalityReport r =
            verify_interp_fractional(entry.field, dom, s, p, s1, p1, h, kap, bmo);
        append_note(r, "p1 derived from s1·p1 = s·p");
        out.push_back(std::move(r));
      } else {
        out.push_back(verify_interp_derivative(entry, dom, base.k1.value_or(1), v,
                                         base.p1.value_or(2.0), h));
      }
    } catch (const ConfigError& e) {
      out.push_back(skipped(v, e.what()));
    }
  }
  return out;
}

}  // namespace gnbmo
