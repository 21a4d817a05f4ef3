#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gnbmo/field.hpp"
#include "gnbmo/geometry.hpp"
#include "gnbmo/quadrature.hpp"

namespace gnbmo {

struct SeminormValue {
  double value = 0.0;
  std::optional<double> error_estimate;  // |value(h) - value(h/2)| when measured
  double resolution = 0.0;
  std::string kind;
  std::string bias_note;  // one-sided bias / cap disclosures
};

// shared 32-value log-spaced radius grid on (h, diam); every sup-type quantity
// scans the same grid so discrete dominance relations hold exactly
std::vector<double> seminorm_radius_grid(const ConvexDomain& dom, double h);

// ∬ |f(y)-f(x)|^p / |y-x|^{d+sp} over node pairs (p-th power form, no root).
// The near-diagonal band is re-integrated on submidpoint grids; the remaining
// same-subcell exclusion keeps the bias one-sided (values rise under
// refinement). with_error_estimate repeats the computation at h/2.
SeminormValue gagliardo_p_power(const ScalarField& f, const ConvexDomain& dom,
                                double s, double p, double h,
                                bool with_error_estimate = false);

// sup over node centres and grid radii of the double average of |f(y)-f(z)|
// over the nodes of Ω ∩ B_r(x); deterministic argmax (smallest centre index,
// then smallest radius)
struct BmoEstimate {
  SeminormValue sem;
  long long arg_center = -1;
  double arg_r = 0.0;
};
BmoEstimate bmo_seminorm_full(const ScalarField& f, const ConvexDomain& dom,
                              double h);
SeminormValue bmo_seminorm(const ScalarField& f, const ConvexDomain& dom, double h);

// ∫_Ω |Df|^q via node sums (q-th power form, no root)
SeminormValue lp_gradient_norm_q(const ScalarField& f, const ConvexDomain& dom,
                                 double q, double h);

// sup over grid radii of (1/vol(B_r)) ∫_{Ω∩B_r(x)} |g|; the normaliser is the
// full ball volume, not the intersection measure. Integrals use exact
// cell-ball overlap weights so the value varies continuously in r.
// include_radius adds one radius to the scanned grid (the sup over a superset
// is still a lower bound for the true maximal function).
double maximal_function(const ScalarField& g, const ConvexDomain& dom, Point x,
                        double h);
double maximal_function(const ScalarField& g, const ConvexDomain& dom,
                        const NodeSet& nodes, Point x,
                        std::optional<double> include_radius = std::nullopt);

// sup over grid radii of the double oscillation average centred at x; same
// region rule and radius grid as bmo_seminorm, so at node centres
// sharp_maximal(f,x) ≤ bmo_seminorm(f) holds exactly
double sharp_maximal(const ScalarField& f, const ConvexDomain& dom, Point x,
                     double h);

// node subset with clipped weights; regions feed the oscillation average
struct Region {
  const NodeSet* nodes = nullptr;
  std::vector<long long> idx;
  std::vector<double> w;
  double measure = 0.0;
};
Region whole_region(const NodeSet& nodes);
Region ball_region(const NodeSet& nodes, const ConvexDomain& dom, Point x,
                   double r);

// ⨍_A ⨍_B |f(y)-f(x)| via sorted prefix sums, O((|A|+|B|) log |B|)
double oscillation_pair_average(const ScalarField& f, const Region& A,
                                const Region& B);

// ⨍_{Ω∩B_r(x)} |f(z) - f(x)| dz with the field's interpolated value at x;
// cell-ball overlap weights in both numerator and denominator
double ball_average_deviation(const ScalarField& f, const ConvexDomain& dom,
                              Point x, double r, double h);
double ball_average_deviation(const ScalarField& f, const ConvexDomain& dom,
                              const NodeSet& nodes, Point x, double r);

// Incremental oscillation scanner shared by bmo_seminorm and sharp_maximal:
// nodes are bucketed by the radius bin where they enter the ball, and a pair
// of prefix trees over value ranks maintains the pairwise |Δ| sum as the ball
// grows, O(N log N) per centre instead of O(N²) per radius.
class OscillationScanner {
 public:
  OscillationScanner(const ScalarField& f, const ConvexDomain& dom,
                     const NodeSet& nodes, double h);
  const std::vector<double>& radii() const { return radii_; }
  const std::vector<double>& node_values() const { return vals_; }
  // double oscillation average per radius, centred at x
  std::vector<double> averages_at(Point x) const;
  double sharp_at(Point x) const;

 private:
  const NodeSet* ns_;
  std::vector<double> radii_, radii2_;
  std::vector<double> vals_;
  std::vector<int> rank_;
};

}  // namespace gnbmo
