#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "gnbmo/common.hpp"
#include "gnbmo/geometry.hpp"

namespace gnbmo {

// midpoint-rule nodes: lattice cell centres that lie inside the domain
struct NodeSet {
  int dim = 1;
  double h = 0.0;     // requested resolution
  double cell = 0.0;  // actual cell volume (per-axis steps multiplied)
  Lattice lat;
  std::vector<Point> pts;
  std::vector<double> w;  // per-node weights; all equal to `cell`
  std::vector<long long> cell_ix, cell_iy;
  std::vector<long long> grid;  // cell -> node index, -1 for cells outside

  long long node_at(long long ix, long long iy) const {
    if (ix < 0 || ix >= lat.n[0]) return -1;
    if (dim == 2 && (iy < 0 || iy >= lat.n[1])) return -1;
    return grid[ix + (dim == 2 ? iy * lat.n[0] : 0)];
  }
  double weight_sum() const;
};

NodeSet domain_nodes(const ConvexDomain& dom, double h);

struct QuadResult {
  double value = 0.0;
  std::optional<double> error_estimate;  // |value(h) - value(h/2)| when measured
  double resolution = 0.0;
};

using PairKernel = std::function<double(const Point&, const Point&)>;

// Near-diagonal refinement for singular pair kernels: cell pairs whose lattice
// indices differ by at most `band` (Chebyshev) are re-integrated on a
// subdiv^d submidpoint grid per cell. Same-cell pairs, dropped entirely by the
// plain rule, are recovered except for identical subcells, so the one-sided
// exclusion bias shrinks by roughly a factor subdiv. band = 0 disables.
struct NearDiagRefine {
  int band = 0;
  int subdiv = 1;
};

// Sum of kernel(x,y)·w_x·w_y over ordered node pairs with x ≠ y. Symmetric
// kernels are accumulated over unordered pairs and doubled. Deterministic:
// per-row compensated sums in fixed column order, rows combined in row order,
// independent of worker count.
QuadResult double_integral_pairs(const NodeSet& nodes, const PairKernel& kernel,
                                 bool symmetric, const NearDiagRefine& refine = {});
QuadResult double_integral_pairs(const ConvexDomain& dom, double h,
                                 const PairKernel& kernel, bool symmetric);

// Same rule with the node-pair part driven by indices, so callers can feed
// precomputed node values instead of re-evaluating field rules per pair.
// node_kernel(i,j) must agree with point_kernel(pts[i], pts[j]); the banded
// pass still needs point_kernel for subcell midpoints.
using IndexedPairKernel = std::function<double(long long, long long)>;
QuadResult double_integral_pairs(const NodeSet& nodes,
                                 const IndexedPairKernel& node_kernel,
                                 const PairKernel& point_kernel, bool symmetric,
                                 const NearDiagRefine& refine = {});

// Adaptive Simpson on (a,b) with Richardson acceptance against a tolerance
// relative to a coarse scan of |g|. An infinite b requires tail_alpha: the
// substitution r = exp(t/alpha) turns r^{-1-alpha}-type decay into e^{-t}
// decay, and the transformed tail is consumed in fixed-length pieces until a
// piece is negligible.
QuadResult adaptive_integral_1d(const std::function<double(double)>& g, double a,
                                double b, double tol,
                                std::optional<double> tail_alpha = std::nullopt);

// Composite Simpson over `panels` log-spaced panels on [a,b]. The panel layout
// is a fixed multiplicative grid, so the rule commutes exactly with dilations
// of the integration variable.
double log_simpson(const std::function<double(double)>& g, double a, double b,
                   int panels);

}  // namespace gnbmo
