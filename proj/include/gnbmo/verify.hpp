#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gnbmo/field.hpp"
#include "gnbmo/geometry.hpp"
#include "gnbmo/report.hpp"
#include "gnbmo/seminorms.hpp"

namespace gnbmo {

struct Exponents {
  std::optional<double> s, p, s1, p1, sigma1;
  std::optional<int> k1;
};

// Hypothesis guards; each throws ConfigError with the violated condition.
void require_thm21_exponents(double s, double p);   // p > 1, s ∈ (1/p, 1)
void require_thm31_exponents(double s, double p, double s1, double p1);
double thm41_derived_p(int k1, double sigma1, double p1);  // (k1+sigma1)p1/k1

// interior points of the hypothesis regions, used when flags are absent
Exponents default_exponents(const std::string& statement_id);

// |∇f| as a field (analytic rule or central differences); grid-sampled fields
// without a gradient rule are rejected
ScalarField gradient_magnitude(const ScalarField& f, const ConvexDomain& dom);

// ---------------------------------------------------------------------------
// identity / inequality checkers (pass-fail)

// ∫₁^∞ (ln r)^p / r^{1+alpha} dr against Γ(p+1)/alpha^{p+1}
InequalityReport check_gamma_identity(double p, double alpha, double tol);

// avg(A,B) ≤ avg(A,C) + avg(C,B); exact for weighted sums, slack 1e-9
InequalityReport check_triangle(const ScalarField& f, const Region& A,
                                const Region& B, const Region& C);
// seeded suite: random piecewise-linear grid fields x random ball triples
std::vector<InequalityReport> triangle_suite(const ConvexDomain& dom, double h,
                                             int count, unsigned seed);

// double average over (Ω∩B_r0)x(Ω∩B_r1) ≤ e(1 + d ln(r1/r0))·bmo, slack 1e-6
InequalityReport check_bmo_log(const ScalarField& f, const ConvexDomain& dom,
                               Point x, double r0, double r1, double h,
                               std::optional<double> bmo_value = std::nullopt,
                               const NodeSet* nodes = nullptr);

// ball average deviation ≤ κ·r·M|Df|(x); slack covers grid discretization
InequalityReport check_lusin(const ScalarField& f, const ConvexDomain& dom,
                             Point x, double r, double h,
                             std::optional<double> kappa_value = std::nullopt,
                             const NodeSet* nodes = nullptr);

// ---------------------------------------------------------------------------
// ratio checkers (the statements' constants are unspecified; these estimate)

// ball average deviation against κ·r^{s1}·(∫|f(y)-f(x)|^{p1}/|y-x|^{d+s1p1} dy)^{1/p1}
InequalityReport check_osc_holder(const ScalarField& f, const ConvexDomain& dom,
                                  Point x, double r, double s1, double p1,
                                  double h,
                                  std::optional<double> kappa_value = std::nullopt,
                                  const NodeSet* nodes = nullptr);

// gagliardo(s,p) against κ^{sp}·1/((sp-1)(1-s))·bmo^{(1-s)p}·∫|Df|^{sp}
InequalityReport verify_interp_gradient(const ScalarField& f, const ConvexDomain& dom,
                                    double s, double p, double h,
                                    std::optional<double> kappa_value = std::nullopt,
                                    std::optional<double> bmo_value = std::nullopt);

// gagliardo(s,p) against bmo^{p-p1}·κ^{p1}·gagliardo(s1,p1)
InequalityReport verify_interp_fractional(const ScalarField& f, const ConvexDomain& dom,
                                    double s, double p, double s1, double p1,
                                    double h,
                                    std::optional<double> kappa_value = std::nullopt,
                                    std::optional<double> bmo_value = std::nullopt);

// radial integral of the p-th power of the ball average deviation against
// 1/(1-s)·(f♯(x))^{(1-s)p}·(κ·M|Df|(x))^{sp}; radial lower limit h, recorded
InequalityReport check_pointwise_local(const ScalarField& f,
                                       const ConvexDomain& dom, Point x,
                                       double s, double p, double h,
                                       std::optional<double> kappa_value = std::nullopt,
                                       const NodeSet* nodes = nullptr,
                                       const OscillationScanner* scanner = nullptr);

// (1/ρ)∫η((x-y)/ρ)f'(y)dy = (1/ρ²)∫η'((x-y)/ρ)f(y)dy for the smooth unit-mass
// bump kernel η supported in (-1,1); pass iff residual < tol
InequalityReport check_mollifier_identity(const CorpusEntry& entry,
                                          const ConvexDomain& window, Point x,
                                          double rho, double tol = 1e-6);

// |f'(x)| against (f♯(x))^{sigma1/(k1+sigma1)}·(∫|f'(x)-f'(y)|^{p1}/|x-y|^{d+sigma1·p1} dy)^{k1/((k1+sigma1)p1)}
InequalityReport check_pointwise_higher(const CorpusEntry& entry,
                                        const ConvexDomain& window, Point x,
                                        int k1, double sigma1, double p1,
                                        double h,
                                        const NodeSet* nodes = nullptr,
                                        const OscillationScanner* scanner = nullptr);

// global form: ∫|f'|^p against bmo^{p-p1}·gagliardo of f' at (sigma1, p1)
InequalityReport verify_interp_derivative(const CorpusEntry& entry,
                                    const ConvexDomain& window, int k1,
                                    double sigma1, double p1, double h);

// the smooth unit-mass kernel itself, exposed for oracle tests
double mollifier_eta(double u);
double mollifier_eta_prime(double u);

// ---------------------------------------------------------------------------
// corpus-level drivers

// default corpus restricted to entries satisfying the statement's hypotheses
// (the capped log field is excluded: its cap moves with h, so refinement
// would change the field itself)
std::vector<CorpusEntry> estimate_corpus(const std::string& statement_id,
                                         const ConvexDomain& dom, double h);

// c_emp = max nondegenerate ratio over corpus x exponent grid, with one h→h/2
// rerun for the drift; members holds base rows then refined rows
ConstantEstimate estimate_constant(const std::string& statement_id,
                                   const ConvexDomain& dom,
                                   const std::vector<CorpusEntry>& corpus,
                                   const std::vector<double>& s_grid,
                                   const Exponents& exps, double h);

// one report per value in input order; hypothesis-violating values produce a
// skipped row with the reason in bias_notes
std::vector<InequalityReport> sweep_exponent(const std::string& statement_id,
                                             const ConvexDomain& dom,
                                             const CorpusEntry& entry,
                                             const std::string& axis,
                                             const std::vector<double>& values,
                                             const Exponents& base, double h);

}  // namespace gnbmo
