#include "gnbmo/reference.hpp"

#include <cmath>
#include <vector>

namespace gnbmo::reference {

double pair_sum_direct(const NodeSet& nodes, const PairKernel& kernel) {
  const size_t n = nodes.pts.size();
  KahanSum acc;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      acc.add(kernel(nodes.pts[i], nodes.pts[j]) * nodes.w[i] * nodes.w[j]);
    }
  return acc.value();
}

namespace {

double osc_average_members(const std::vector<double>& vals,
                           const std::vector<size_t>& members) {
  const size_t m = members.size();
  if (m < 2) return 0.0;
  KahanSum s;
  for (size_t a = 0; a < m; ++a)
    for (size_t b = 0; b < m; ++b)
      s.add(std::abs(vals[members[a]] - vals[members[b]]));
  return s.value() / (static_cast<double>(m) * static_cast<double>(m));
}

}  // namespace

double bmo_direct(const ScalarField& f, const ConvexDomain& dom, double h) {
  NodeSet ns = domain_nodes(dom, h);
  std::vector<double> radii = seminorm_radius_grid(dom, h);
  std::vector<double> vals(ns.pts.size());
  for (size_t i = 0; i < ns.pts.size(); ++i) vals[i] = f.eval(ns.pts[i]);
  double best = 0.0;
  std::vector<size_t> members;
  for (size_t c = 0; c < ns.pts.size(); ++c)
    for (double r : radii) {
      members.clear();
      for (size_t j = 0; j < ns.pts.size(); ++j)
        if (dist2(ns.pts[c], ns.pts[j], ns.dim) < r * r) members.push_back(j);
      best = std::max(best, osc_average_members(vals, members));
    }
  return best;
}

double sharp_direct(const ScalarField& f, const ConvexDomain& dom,
                    const NodeSet& nodes, Point x, double h) {
  std::vector<double> radii = seminorm_radius_grid(dom, h);
  std::vector<double> vals(nodes.pts.size());
  for (size_t i = 0; i < nodes.pts.size(); ++i) vals[i] = f.eval(nodes.pts[i]);
  double best = 0.0;
  std::vector<size_t> members;
  for (double r : radii) {
    members.clear();
    for (size_t j = 0; j < nodes.pts.size(); ++j)
      if (dist2(x, nodes.pts[j], nodes.dim) < r * r) members.push_back(j);
    best = std::max(best, osc_average_members(vals, members));
  }
  return best;
}

double oscillation_direct(const ScalarField& f, const Region& A, const Region& B) {
  KahanSum acc;
  for (size_t i = 0; i < A.idx.size(); ++i) {
    double vi = f.eval(A.nodes->pts[static_cast<size_t>(A.idx[i])]);
    for (size_t j = 0; j < B.idx.size(); ++j) {
      double vj = f.eval(B.nodes->pts[static_cast<size_t>(B.idx[j])]);
      acc.add(std::abs(vi - vj) * A.w[i] * B.w[j]);
    }
  }
  return acc.value() / (A.measure * B.measure);
}

}  // namespace gnbmo::reference
