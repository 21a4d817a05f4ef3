#include "gnbmo/verify.hpp"

#include <cmath>
#include <cstring>
#include <numbers>

#include "doctest.h"
#include "gnbmo/reference.hpp"

using namespace gnbmo;

namespace {

double rel_diff(double a, double b) {
  double scale = std::max(std::abs(a), std::abs(b));
  return scale > 0.0 ? std::abs(a - b) / scale : 0.0;
}

// product of the factor columns in emitted order, for consistency checks
double factor_product(const InequalityReport& r) {
  double prod = 1.0;
  for (const auto* c : {&r.bmo, &r.grad_norm, &r.gagliardo_s1p1, &r.kappa,
                        &r.blowup_factor})
    if (c->has_value()) prod *= **c;
  return prod;
}

bool has_factors(const InequalityReport& r) {
  return r.bmo || r.grad_norm || r.gagliardo_s1p1 || r.kappa || r.blowup_factor;
}

CorpusEntry scaled_entry(const CorpusEntry& e, double lam) {
  CorpusEntry out = e;
  out.field = e.field.scaled(lam);
  if (e.derivative) out.derivative = e.derivative->scaled(lam);
  return out;
}

}  // namespace

TEST_CASE("log-power integral matches the log-gamma closed form") {
  InequalityReport a = check_gamma_identity(2.0, 1.0, 1e-8);
  CHECK(*a.lhs == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(*a.rhs_product == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(*a.pass);

  InequalityReport b = check_gamma_identity(3.0, 1.0, 1e-8);
  CHECK(*b.rhs_product == doctest::Approx(6.0).epsilon(1e-12));
  CHECK(*b.pass);

  // Gamma(2.5)/0.5^2.5, both sides evaluated independently
  InequalityReport c = check_gamma_identity(1.5, 0.5, 1e-6);
  CHECK(*c.rhs_product == doctest::Approx(7.5198848).epsilon(1e-6));
  CHECK(*c.pass);
}

TEST_CASE("log-power integral residual stays small across the exponent grid") {
  for (double p : {1.5, 2.0, 3.0})
    for (double alpha : {0.5, 1.0, 2.0}) {
      InequalityReport r = check_gamma_identity(p, alpha, 1e-6);
      CHECK_MESSAGE(*r.error_estimate < 1e-6,
                    "p=", p, " alpha=", alpha, " residual=", *r.error_estimate);
      CHECK(*r.pass);
    }
}

TEST_CASE("exponent guards reject out-of-range values with precise messages") {
  CHECK_THROWS_WITH_AS(require_thm21_exponents(0.4, 2.0),
                       "requires s ∈ (1/p, 1)", ConfigError);
  CHECK_THROWS_WITH_AS(require_thm21_exponents(0.75, 0.9), "requires p > 1",
                       ConfigError);
  CHECK_NOTHROW(require_thm21_exponents(0.75, 2.0));

  CHECK_THROWS_WITH_AS(require_thm31_exponents(0.8, 2.0, 0.6, 8.0 / 3.0),
                       "requires s < s1", ConfigError);
  CHECK_THROWS_WITH_AS(require_thm31_exponents(0.6, 2.0, 0.8, 1.4),
                       "requires s1·p1 = s·p", ConfigError);
  CHECK_NOTHROW(require_thm31_exponents(0.6, 2.0, 0.8, 1.5));

  CHECK(thm41_derived_p(1, 0.5, 2.0) == doctest::Approx(3.0).epsilon(1e-15));
  CHECK_THROWS_AS(thm41_derived_p(0, 0.5, 2.0), ConfigError);
  CHECK_THROWS_AS(thm41_derived_p(1, 1.2, 2.0), ConfigError);
}

TEST_CASE("average triangle inequality: identity field over the whole interval") {
  ConvexDomain dom = ConvexDomain::interval(0.0, 1.0);
  NodeSet ns = domain_nodes(dom, 0.01);
  ScalarField f("id", [](const Point& x) { return x.x; });
  Region whole = whole_region(ns);
  InequalityReport r = check_triangle(f, whole, whole, whole);
  // avg(A,A) = avg(A,A), so the bound is exactly twice the left side
  CHECK(*r.ratio == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(*r.pass);
  // discrete double average of |x-y| over the unit interval
  double m = 100.0;
  CHECK(*r.lhs == doctest::Approx((1.0 / 3.0) * (1.0 - 1.0 / (m * m)))
                      .epsilon(1e-10));
}

TEST_CASE("average triangle inequality: constant field degenerates to 0 <= 0") {
  ConvexDomain dom = ConvexDomain::interval(0.0, 1.0);
  NodeSet ns = domain_nodes(dom, 0.05);
  ScalarField f("one", [](const Point&) { return 1.0; });
  Region whole = whole_region(ns);
  InequalityReport r = check_triangle(f, whole, whole, whole);
  CHECK(*r.lhs == 0.0);
  CHECK(*r.pass);
  CHECK(r.degenerate);
  CHECK_FALSE(r.ratio.has_value());

  Region empty;
  empty.nodes = &ns;
  CHECK_THROWS_AS(check_triangle(f, whole, whole, empty), ConfigError);
}

TEST_CASE("average triangle inequality: seeded random suite has no violations") {
  ConvexDomain dom = ConvexDomain::interval(0.0, 1.0);
  std::vector<InequalityReport> reports = triangle_suite(dom, 0.01, 30, 1234);
  CHECK(reports.size() == 30);
  for (const auto& r : reports) {
    REQUIRE(r.pass.has_value());
    CHECK(*r.pass);
  }
  // same seed reproduces the exact numbers, different seed does not
  std::vector<InequalityReport> again = triangle_suite(dom, 0.01, 30, 1234);
  for (size_t i = 0; i < reports.size(); ++i) {
    CHECK(std::memcmp(&*reports[i].lhs, &*again[i].lhs, sizeof(double)) == 0);
    CHECK(std::memcmp(&*reports[i].rhs_product, &*again[i].rhs_product,
                      sizeof(double)) == 0);
  }
  std::vector<InequalityReport> other = triangle_suite(dom, 0.01, 5, 99);
  bool any_differ = false;
  for (size_t i = 0; i < other.size(); ++i)
    if (*other[i].lhs != *reports[i].lhs) any_differ = true;
  CHECK(any_differ);
}

TEST_CASE("double-ball oscillation bound: identity field oracle") {
  ConvexDomain dom = ConvexDomain::interval(0.0, 1.0);
  ScalarField f("id", [](const Point& x) { return x.x; });
  double h = 0.01;
  NodeSet ns = domain_nodes(dom, h);
  InequalityReport r =
      check_bmo_log(f, dom, {0.5, 0.0}, 0.1, 0.4, h, std::nullopt, &ns);
  REQUIRE(r.pass.has_value());
  CHECK(*r.pass);
  // continuous double average over (0.4,0.6)x(0.1,0.9) is 49/240
  CHECK(*r.lhs == doctest::Approx(49.0 / 240.0).epsilon(0.02));
  // prefix-sum evaluation agrees with the direct double loop
  Region inner = ball_region(ns, dom, {0.5, 0.0}, 0.1);
  Region outer = ball_region(ns, dom, {0.5, 0.0}, 0.4);
  CHECK(*r.lhs ==
        doctest::Approx(reference::oscillation_direct(f, inner, outer))
            .epsilon(1e-11));
  // growth factor at r1/r0 = 4 in one dimension
  CHECK(*r.blowup_factor ==
        doctest::Approx(std::exp(1.0) * (1.0 + std::log(4.0))).epsilon(1e-9));
}

TEST_CASE("double-ball oscillation bound: equal radii and constant field") {
  ConvexDomain dom = ConvexDomain::interval(0.0, 1.0);
  ScalarField id("id", [](const Point& x) { return x.x; });
  InequalityReport r = check_bmo_log(id, dom, {0.5, 0.0}, 0.2, 0.2, 0.02);
  CHECK(*r.pass);  // single-ball average is within e * bmo
  CHECK(*r.blowup_factor == doctest::Approx(std::exp(1.0)).epsilon(1e-12));

  ScalarField one("one", [](const Point&) { return 2.5; });
  InequalityReport c = check_bmo_log(one, dom, {0.5, 0.0}, 0.1, 0.4, 0.02);
  CHECK(*c.lhs == 0.0);
  CHECK(*c.pass);
  CHECK(c.degenerate);
}

TEST_CASE("ball deviation vs maximal gradient: affine oracle and bump probes") {
  ConvexDomain dom = ConvexDomain::interval(0.0, 1.0);
  CorpusEntry affine = corpus_entry(dom, 0.01, "affine");
  InequalityReport r = check_lusin(affine.field, dom, {0.5, 0.0}, 0.25, 0.01);
  CHECK(*r.pass);
  CHECK(*r.lhs == doctest::Approx(0.125).epsilon(0.01));
  CHECK(*r.grad_norm == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(*r.kappa == doctest::Approx(2.0).epsilon(0.02));
  CHECK(*r.ratio == doctest::Approx(0.25).epsilon(0.03));

  CorpusEntry bump = corpus_entry(dom, 0.01, "bump");
  double h = 0.02;
  NodeSet ns = domain_nodes(dom, h);
  double kap = kappa(dom, h).value;
  for (int k = 0; k < 20; ++k) {
    double x = 0.06 + 0.88 * k / 19.0;
    for (double rr : {4.0 * h, dom.diameter() / 4.0}) {
      InequalityReport b =
          check_lusin(bump.field, dom, {x, 0.0}, rr, h, kap, &ns);
      CHECK_MESSAGE(*b.pass, "x=", x, " r=", rr, " lhs=", *b.lhs,
                    " rhs=", *b.rhs_product);
    }
  }

  ScalarField grid_only = ScalarField::from_grid(
      "grid", ns, std::vector<double>(ns.pts.size(), 1.0));
  CHECK_THROWS_AS(check_lusin(grid_only, dom, {0.5, 0.0}, 0.1, h), ConfigError);
}

TEST_CASE("ball deviation vs slice integral: identity field closed forms") {
  ConvexDomain dom = ConvexDomain::interval(0.0, 1.0);
  ScalarField f("id", [](const Point& x) { return x.x; });
  InequalityReport r =
      check_osc_holder(f, dom, {0.5, 0.0}, 0.25, 0.5, 2.0, 0.01);
  // |y-x|^2 / |y-x|^2 integrates the weights: slice root is exactly 1
  CHECK(*r.gagliardo_s1p1 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(*r.lhs == doctest::Approx(0.125).epsilon(1e-9));
  CHECK(*r.blowup_factor == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(*r.ratio == doctest::Approx(0.125).epsilon(0.03));

  // ratio stability under refinement on a smooth field
  CorpusEntry bump = corpus_entry(dom, 0.01, "bump");
  InequalityReport a =
      check_osc_holder(bump.field, dom, {0.45, 0.0}, 0.2, 0.5, 2.0, 0.01);
  InequalityReport b =
      check_osc_holder(bump.field, dom, {0.45, 0.0}, 0.2, 0.5, 2.0, 0.005);
  CHECK(rel_diff(*a.ratio, *b.ratio) < 0.10);
}

TEST_CASE("interpolation ratio: affine field reproduces the frozen value") {
  ConvexDomain dom = ConvexDomain::interval(0.0, 1.0);
  CorpusEntry affine = corpus_entry(dom, 0.002, "affine");
  InequalityReport r = verify_interp_gradient(affine.field, dom, 0.75, 2.0, 0.002);
  // all four factors have independent closed forms
  CHECK(*r.blowup_factor == doctest::Approx(8.0).epsilon(1e-12));
  CHECK(*r.grad_norm == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(*r.bmo == doctest::Approx(std::pow(1.0 / 3.0, 0.5)).epsilon(0.01));
  CHECK(*r.kappa == doctest::Approx(std::pow(2.0, 1.5)).epsilon(0.03));
  CHECK(*r.lhs == doctest::Approx(8.0 / 3.0).epsilon(0.01));
  CHECK(*r.ratio == doctest::Approx(0.2041).epsilon(0.01));
  CHECK_FALSE(r.degenerate);

  ScalarField one("one", [](const Point&) { return 3.0; },
                  [](const Point&) { return Point{0.0, 0.0}; });
  InequalityReport c = verify_interp_gradient(one, dom, 0.75, 2.0, 0.02);
  CHECK(*c.lhs == 0.0);
  CHECK(c.degenerate);
  CHECK_FALSE(c.ratio.has_value());
}

TEST_CASE("two-seminorm ratio: affine field reproduces the frozen value") {
  ConvexDomain dom = ConvexDomain::interval(0.0, 1.0);
  CorpusEntry affine = corpus_entry(dom, 0.002, "affine");
  InequalityReport r = verify_interp_fractional(affine.field, dom, 0.5, 2.0,
                                          2.0 / 3.0, 1.5, 0.002);
  CHECK(*r.lhs == doctest::Approx(1.0).epsilon(0.01));
  CHECK(*r.gagliardo_s1p1 == doctest::Approx(8.0 / 3.0).epsilon(0.01));
  CHECK(*r.bmo == doctest::Approx(std::pow(1.0 / 3.0, 0.5)).epsilon(0.01));
  CHECK(*r.kappa == doctest::Approx(std::pow(2.0, 1.5)).epsilon(0.03));
  CHECK(*r.ratio == doctest::Approx(0.2296).epsilon(0.01));
}

TEST_CASE("radial oscillation integral: identity field matches closed forms") {
  ConvexDomain dom = ConvexDomain::interval(0.0, 1.0);
  CorpusEntry affine = corpus_entry(dom, 0.01, "affine");
  double h = 0.01;
  InequalityReport r =
      check_pointwise_local(affine.field, dom, {0.5, 0.0}, 0.75, 2.0, h);
  // deviation is r/2 up to r = 1/2 and 1/4 beyond, so the radial integral
  // splits into two closed-form pieces
  double part1 = 0.5 * (std::sqrt(0.5) - std::sqrt(h));
  double part2 = 0.0625 * (1.0 / 1.5) * (std::pow(0.5, -1.5) - 1.0);
  CHECK(*r.lhs == doctest::Approx(part1 + part2).epsilon(0.02));
  CHECK(*r.blowup_factor == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(*r.grad_norm == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(r.ratio.has_value());

  CorpusEntry bump = corpus_entry(dom, 0.01, "bump");
  InequalityReport a =
      check_pointwise_local(bump.field, dom, {0.4, 0.0}, 0.75, 2.0, 0.01);
  InequalityReport b =
      check_pointwise_local(bump.field, dom, {0.4, 0.0}, 0.75, 2.0, 0.005);
  CHECK(rel_diff(*a.ratio, *b.ratio) < 0.15);
}

TEST_CASE("smoothing kernel: unit mass and first-moment identities") {
  double mass = adaptive_integral_1d([](double u) { return mollifier_eta(u); },
                                     -1.0, 1.0, 1e-12)
                    .value;
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-10));
  double moment =
      adaptive_integral_1d([](double u) { return mollifier_eta_prime(u) * u; },
                           -1.0, 1.0, 1e-12)
          .value;
  CHECK(moment == doctest::Approx(-1.0).epsilon(1e-9));
  CHECK(mollifier_eta(0.999999) == 0.0);
  CHECK(mollifier_eta_prime(0.0) == 0.0);
}

TEST_CASE("convolution identity: derivative side equals kernel-derivative side") {
  ConvexDomain window = ConvexDomain::full_space_window_1d(-1.0, 2.0);
  CorpusEntry affine = corpus_entry(window, 0.01, "affine");
  InequalityReport r =
      check_mollifier_identity(affine, window, {0.5, 0.0}, 0.3);
  // affine slope passes through both quadratures exactly
  CHECK(*r.lhs == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(*r.rhs_product == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(*r.pass);

  CorpusEntry bump = corpus_entry(window, 0.01, "bump");
  InequalityReport b = check_mollifier_identity(bump, window, {0.5, 0.0}, 0.2);
  CHECK(*b.error_estimate < 1e-6);
  CHECK(*b.pass);

  CorpusEntry constant = corpus_entry(window, 0.01, "constant");
  InequalityReport c =
      check_mollifier_identity(constant, window, {0.5, 0.0}, 0.2);
  CHECK(*c.lhs == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(*c.pass);

  // bounded domain: the scaled kernel must not stick out of it
  ConvexDomain itv = ConvexDomain::interval(0.0, 1.0);
  CorpusEntry ibump = corpus_entry(itv, 0.01, "bump");
  CHECK_THROWS_AS(check_mollifier_identity(ibump, itv, {0.1, 0.0}, 0.2),
                  ConfigError);
}

TEST_CASE("pointwise derivative bound: sinusoid on a symmetric window") {
  ConvexDomain window = ConvexDomain::full_space_window_1d(-std::numbers::pi, std::numbers::pi);
  CorpusEntry sinus = corpus_entry(window, 0.01, "sinusoid");
  InequalityReport r =
      check_pointwise_higher(sinus, window, {0.0, 0.0}, 1, 0.5, 2.0, 0.01);
  CHECK(*r.lhs == doctest::Approx(1.0).epsilon(1e-12));
  REQUIRE(r.ratio.has_value());
  CHECK(*r.ratio > 0.0);
  CHECK(std::isfinite(*r.ratio));
  CHECK(*r.p == doctest::Approx(3.0));

  // constant derivative makes the slice integral vanish: degenerate, no throw
  CorpusEntry affine = corpus_entry(window, 0.01, "affine");
  InequalityReport a =
      check_pointwise_higher(affine, window, {0.0, 0.0}, 1, 0.5, 2.0, 0.05);
  CHECK(a.degenerate);
  CHECK_FALSE(a.ratio.has_value());

  CHECK_THROWS_AS(
      check_pointwise_higher(sinus, window, {0.0, 0.0}, 2, 0.5, 2.0, 0.05),
      ConfigError);
}

TEST_CASE("derivative-integral statement: bump on a window, finite ratio") {
  ConvexDomain window = ConvexDomain::full_space_window_1d(-std::numbers::pi, std::numbers::pi);
  CorpusEntry bump = corpus_entry(window, 0.01, "bump");
  InequalityReport r = verify_interp_derivative(bump, window, 1, 0.5, 2.0, 0.02);
  REQUIRE(r.ratio.has_value());
  CHECK(*r.ratio > 0.0);
  CHECK(std::isfinite(*r.ratio));
  CHECK(*r.lhs > 0.0);

  CorpusEntry constant = corpus_entry(window, 0.01, "constant");
  InequalityReport c = verify_interp_derivative(constant, window, 1, 0.5, 2.0, 0.05);
  CHECK(c.degenerate);
}

TEST_CASE("ratio scale invariance across the checkers") {
  ConvexDomain dom = ConvexDomain::interval(0.0, 1.0);
  ConvexDomain window = ConvexDomain::full_space_window_1d(-std::numbers::pi, std::numbers::pi);
  const double h = 0.02;
  CorpusEntry bump = corpus_entry(dom, h, "bump");
  CorpusEntry wbump = corpus_entry(window, h, "bump");

  for (double lam : {0.1, 10.0}) {
    ScalarField fl = bump.field.scaled(lam);
    CorpusEntry wl = scaled_entry(wbump, lam);

    InequalityReport t21 = verify_interp_gradient(bump.field, dom, 0.75, 2.0, h);
    InequalityReport t21s = verify_interp_gradient(fl, dom, 0.75, 2.0, h);
    CHECK(rel_diff(*t21.ratio, *t21s.ratio) < 1e-10);

    InequalityReport t31 =
        verify_interp_fractional(bump.field, dom, 0.5, 2.0, 2.0 / 3.0, 1.5, h);
    InequalityReport t31s =
        verify_interp_fractional(fl, dom, 0.5, 2.0, 2.0 / 3.0, 1.5, h);
    CHECK(rel_diff(*t31.ratio, *t31s.ratio) < 1e-10);

    InequalityReport oh =
        check_osc_holder(bump.field, dom, {0.45, 0.0}, 0.2, 0.5, 2.0, h);
    InequalityReport ohs =
        check_osc_holder(fl, dom, {0.45, 0.0}, 0.2, 0.5, 2.0, h);
    CHECK(rel_diff(*oh.ratio, *ohs.ratio) < 1e-10);

    InequalityReport lu = check_lusin(bump.field, dom, {0.45, 0.0}, 0.1, h);
    InequalityReport lus = check_lusin(fl, dom, {0.45, 0.0}, 0.1, h);
    CHECK(rel_diff(*lu.ratio, *lus.ratio) < 1e-10);

    InequalityReport bl =
        check_bmo_log(bump.field, dom, {0.45, 0.0}, 0.05, 0.2, h);
    InequalityReport bls = check_bmo_log(fl, dom, {0.45, 0.0}, 0.05, 0.2, h);
    CHECK(rel_diff(*bl.ratio, *bls.ratio) < 1e-10);

    InequalityReport pl =
        check_pointwise_local(bump.field, dom, {0.45, 0.0}, 0.75, 2.0, h);
    InequalityReport pls =
        check_pointwise_local(fl, dom, {0.45, 0.0}, 0.75, 2.0, h);
    CHECK(rel_diff(*pl.ratio, *pls.ratio) < 1e-10);

    InequalityReport ph =
        check_pointwise_higher(wbump, window, {0.4, 0.0}, 1, 0.5, 2.0, h);
    InequalityReport phs =
        check_pointwise_higher(wl, window, {0.4, 0.0}, 1, 0.5, 2.0, h);
    CHECK(rel_diff(*ph.ratio, *phs.ratio) < 1e-10);

    InequalityReport t41 = verify_interp_derivative(wbump, window, 1, 0.5, 2.0, h);
    InequalityReport t41s = verify_interp_derivative(wl, window, 1, 0.5, 2.0, h);
    CHECK(rel_diff(*t41.ratio, *t41s.ratio) < 1e-10);

    InequalityReport mo =
        check_mollifier_identity(wbump, window, {0.3, 0.0}, 0.25);
    InequalityReport mos =
        check_mollifier_identity(wl, window, {0.3, 0.0}, 0.25);
    CHECK(rel_diff(*mo.ratio, *mos.ratio) < 1e-10);
  }
}

TEST_CASE("factor columns reproduce the reported product") {
  ConvexDomain dom = ConvexDomain::interval(0.0, 1.0);
  const double h = 0.02;
  CorpusEntry sinus = corpus_entry(dom, h, "sinusoid");
  std::vector<InequalityReport> reports;
  reports.push_back(verify_interp_gradient(sinus.field, dom, 0.75, 2.0, h));
  reports.push_back(
      verify_interp_fractional(sinus.field, dom, 0.5, 2.0, 2.0 / 3.0, 1.5, h));
  reports.push_back(check_lusin(sinus.field, dom, {0.45, 0.0}, 0.1, h));
  reports.push_back(check_bmo_log(sinus.field, dom, {0.45, 0.0}, 0.05, 0.2, h));
  reports.push_back(
      check_osc_holder(sinus.field, dom, {0.45, 0.0}, 0.2, 0.5, 2.0, h));
  reports.push_back(
      check_pointwise_local(sinus.field, dom, {0.45, 0.0}, 0.75, 2.0, h));
  for (const auto& r : reports) {
    REQUIRE(has_factors(r));
    REQUIRE(r.rhs_product.has_value());
    CHECK_MESSAGE(rel_diff(factor_product(r), *r.rhs_product) < 1e-12,
                  r.statement_id);
  }
}

TEST_CASE("precomputed seminorm reuse leaves checker output unchanged") {
  ConvexDomain dom = ConvexDomain::interval(0.0, 1.0);
  const double h = 0.02;
  CorpusEntry sinus = corpus_entry(dom, h, "sinusoid");
  double kap = kappa(dom, h).value;
  double bmo = bmo_seminorm(sinus.field, dom, h).value;
  InequalityReport plain = verify_interp_gradient(sinus.field, dom, 0.75, 2.0, h);
  InequalityReport cached =
      verify_interp_gradient(sinus.field, dom, 0.75, 2.0, h, kap, bmo);
  CHECK(*plain.ratio == *cached.ratio);
  CHECK(*plain.rhs_product == *cached.rhs_product);
}

TEST_CASE("empirical constant: maximum over corpus with drift and exclusions") {
  ConvexDomain dom = ConvexDomain::interval(0.0, 1.0);
  const double h = 0.04;
  std::vector<CorpusEntry> corpus = estimate_corpus("thm21", dom, h);
  // gradient-less entries are filtered, the constant stays (degenerate row)
  CHECK(corpus.size() == 6);
  ConstantEstimate est =
      estimate_constant("thm21", dom, corpus, {0.6, 0.75, 0.9}, {}, h);
  CHECK(est.c_emp > 0.0);
  CHECK(std::isfinite(est.c_emp));
  CHECK(est.corpus_size == 5);  // constant contributes no ratio
  CHECK(est.members.size() == 2 * 3 * corpus.size());
  // the constant is the max over the base level; refined rows only feed drift
  double base_max = 0.0;
  for (const auto& m : est.members)
    if (m.ratio && m.h == h) base_max = std::max(base_max, *m.ratio);
  CHECK(base_max == est.c_emp);
  CHECK(est.refinement_drift >= 0.0);

  // max over a larger corpus can only grow
  std::vector<CorpusEntry> small = {corpus_entry(dom, h, "affine")};
  std::vector<CorpusEntry> larger = {corpus_entry(dom, h, "affine"),
                                     corpus_entry(dom, h, "bump")};
  ConstantEstimate a =
      estimate_constant("thm21", dom, small, {0.75}, {}, h);
  ConstantEstimate b =
      estimate_constant("thm21", dom, larger, {0.75}, {}, h);
  CHECK(b.c_emp >= a.c_emp);

  std::vector<CorpusEntry> degen = {corpus_entry(dom, h, "constant")};
  CHECK_THROWS_AS(estimate_constant("thm21", dom, degen, {0.75}, {}, h),
                  ConfigError);
}

TEST_CASE("exponent sweep: input order, skip reasons, growth diagnostics") {
  ConvexDomain dom = ConvexDomain::interval(0.0, 1.0);
  const double h = 0.02;
  CorpusEntry bump = corpus_entry(dom, h, "bump");
  std::vector<double> values = {0.4, 0.6, 0.75, 0.9};
  std::vector<InequalityReport> rows =
      sweep_exponent("thm21", dom, bump, "s", values, {}, h);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].bias_notes.find("sp ≤ 1") != std::string::npos);
  CHECK_FALSE(rows[0].ratio.has_value());
  for (size_t i = 0; i < rows.size(); ++i)
    CHECK(*rows[i].s == doctest::Approx(values[i]));
  for (size_t i = 1; i < rows.size(); ++i) {
    REQUIRE(rows[i].ratio.has_value());
    CHECK(std::isfinite(*rows[i].ratio));
  }
  // the quotient without its divergence guard grows toward s = 1
  auto raw_quotient = [](const InequalityReport& r) {
    return *r.ratio * *r.kappa * *r.blowup_factor;
  };
  std::vector<InequalityReport> edge =
      sweep_exponent("thm21", dom, bump, "s", {0.6, 0.95}, {}, h);
  CHECK(raw_quotient(edge[1]) > raw_quotient(edge[0]));

  CHECK_THROWS_AS(sweep_exponent("thm21", dom, bump, "s1", {0.5}, {}, h),
                  ConfigError);
}

TEST_CASE("statement defaults cover the supported tags") {
  Exponents a = default_exponents("thm21");
  CHECK(*a.s == doctest::Approx(0.75));
  CHECK(*a.p == doctest::Approx(2.0));
  Exponents b = default_exponents("thm31");
  CHECK(*b.s1 == doctest::Approx(0.8));
  CHECK(*b.p1 == doctest::Approx(1.5));
  Exponents c = default_exponents("thm41");
  CHECK(*c.k1 == 1);
  CHECK(*c.p == doctest::Approx(3.0));
  CHECK_THROWS_AS(default_exponents("thm99"), ConfigError);
}
