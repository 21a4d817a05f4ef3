#include "gnbmo/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gnbmo {

double NodeSet::weight_sum() const {
  KahanSum s;
  for (double v : w) s.add(v);
  return s.value();
}

NodeSet domain_nodes(const ConvexDomain& dom, double h) {
  if (!(h > 0.0) || h >= dom.diameter())
    throw ConfigError("resolution must lie in (0, diam)");
  NodeSet ns;
  ns.dim = dom.dim();
  ns.h = h;
  ns.lat = make_lattice(dom, h);
  ns.cell = ns.lat.step[0] * (ns.dim == 2 ? ns.lat.step[1] : 1.0);
  long long ny = ns.dim == 2 ? ns.lat.n[1] : 1;
  ns.grid.assign(static_cast<size_t>(ns.lat.n[0] * ny), -1);
  for (long long iy = 0; iy < ny; ++iy)
    for (long long ix = 0; ix < ns.lat.n[0]; ++ix) {
      Point p = ns.lat.cell_center(ix, iy);
      if (!dom.contains(p)) continue;
      ns.grid[ix + iy * ns.lat.n[0]] = static_cast<long long>(ns.pts.size());
      ns.pts.push_back(p);
      ns.w.push_back(ns.cell);
      ns.cell_ix.push_back(ix);
      ns.cell_iy.push_back(iy);
    }
  if (ns.pts.empty()) throw ConfigError("no quadrature nodes fall inside the domain");
  return ns;
}

namespace {

// submidpoint grid of one lattice cell
void subcell_centers(const NodeSet& ns, long long node, int subdiv,
                     std::vector<Point>& out) {
  out.clear();
  double sx = ns.lat.step[0] / subdiv;
  double ox = ns.lat.lo[0] + ns.cell_ix[node] * ns.lat.step[0];
  if (ns.dim == 1) {
    for (int a = 0; a < subdiv; ++a) out.push_back({ox + (a + 0.5) * sx, 0.0});
    return;
  }
  double sy = ns.lat.step[1] / subdiv;
  double oy = ns.lat.lo[1] + ns.cell_iy[node] * ns.lat.step[1];
  for (int b = 0; b < subdiv; ++b)
    for (int a = 0; a < subdiv; ++a)
      out.push_back({ox + (a + 0.5) * sx, oy + (b + 0.5) * sy});
}

template <class NodeK>
QuadResult pairs_impl(const NodeSet& nodes, NodeK&& node_kernel,
                      const PairKernel& point_kernel, bool symmetric,
                      const NearDiagRefine& refine) {
  const long long n = static_cast<long long>(nodes.pts.size());
  const bool banded = refine.band > 0 && refine.subdiv > 1;
  if (banded && !symmetric)
    throw ConfigError("near-diagonal refinement requires a symmetric kernel");

  std::vector<double> row(static_cast<size_t>(n), 0.0);
  std::vector<char> bad(static_cast<size_t>(n), 0);

#pragma omp parallel for schedule(static)
  for (long long i = 0; i < n; ++i) {
    KahanSum acc;
    const long long j0 = symmetric ? i + 1 : 0;
    for (long long j = j0; j < n; ++j) {
      if (j == i) continue;
      if (banded && std::llabs(nodes.cell_ix[i] - nodes.cell_ix[j]) <= refine.band &&
          (nodes.dim == 1 ||
           std::llabs(nodes.cell_iy[i] - nodes.cell_iy[j]) <= refine.band))
        continue;  // handled by the subdivided pass
      double v = node_kernel(i, j);
      if (!std::isfinite(v)) {
        bad[i] = 1;
        break;
      }
      acc.add(v * nodes.w[i] * nodes.w[j]);
    }
    row[i] = acc.value();
  }

  std::vector<double> band_row;
  if (banded) {
    band_row.assign(static_cast<size_t>(n), 0.0);
    const int sd = refine.subdiv;
    const double wsub =
        nodes.cell / std::pow(static_cast<double>(sd), nodes.dim);
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < n; ++i) {
      KahanSum acc;
      std::vector<Point> ui, vj;
      subcell_centers(nodes, i, sd, ui);
      const long long by = nodes.dim == 2 ? refine.band : 0;
      for (long long dy = -by; dy <= by; ++dy)
        for (long long dx = -refine.band; dx <= refine.band; ++dx) {
          long long j = nodes.node_at(nodes.cell_ix[i] + dx,
                                      nodes.dim == 2 ? nodes.cell_iy[i] + dy : 0);
          if (j < i) continue;  // each unordered cell pair handled once
          if (j == i) {
            // same cell: all distinct subcell pairs (the plain rule drops them)
            for (size_t a = 0; a < ui.size(); ++a)
              for (size_t b = a + 1; b < ui.size(); ++b) {
                double v = point_kernel(ui[a], ui[b]);
                if (!std::isfinite(v)) {
                  bad[i] = 1;
                  break;
                }
                acc.add(v * wsub * wsub);
              }
          } else {
            subcell_centers(nodes, j, sd, vj);
            for (const Point& a : ui)
              for (const Point& b : vj) {
                double v = point_kernel(a, b);
                if (!std::isfinite(v)) {
                  bad[i] = 1;
                  break;
                }
                acc.add(v * wsub * wsub);
              }
          }
        }
      band_row[i] = acc.value();
    }
  }

  for (long long i = 0; i < n; ++i)
    if (bad[i]) throw NumericError("pair kernel produced a non-finite value");

  KahanSum total;
  for (long long i = 0; i < n; ++i) total.add(row[i]);
  if (banded)
    for (long long i = 0; i < n; ++i) total.add(band_row[i]);

  QuadResult qr;
  qr.value = symmetric ? 2.0 * total.value() : total.value();
  qr.resolution = nodes.h;
  return qr;
}

}  // namespace

QuadResult double_integral_pairs(const NodeSet& nodes, const PairKernel& kernel,
                                 bool symmetric, const NearDiagRefine& refine) {
  auto nk = [&](long long i, long long j) {
    return kernel(nodes.pts[i], nodes.pts[j]);
  };
  return pairs_impl(nodes, nk, kernel, symmetric, refine);
}

QuadResult double_integral_pairs(const NodeSet& nodes,
                                 const IndexedPairKernel& node_kernel,
                                 const PairKernel& point_kernel, bool symmetric,
                                 const NearDiagRefine& refine) {
  return pairs_impl(nodes, node_kernel, point_kernel, symmetric, refine);
}

QuadResult double_integral_pairs(const ConvexDomain& dom, double h,
                                 const PairKernel& kernel, bool symmetric) {
  return double_integral_pairs(domain_nodes(dom, h), kernel, symmetric, {});
}

namespace {

struct SimpsonCtx {
  const std::function<double(double)>* g;
  long long evals = 0;
  long long cap = 2'000'000;
  double eval(double x) {
    if (++evals > cap) throw NumericError("adaptive integration subdivision cap hit");
    double v = (*g)(x);
    if (!std::isfinite(v)) throw NumericError("integrand non-finite");
    return v;
  }
};

double adapt(SimpsonCtx& ctx, double a, double b, double fa, double fm, double fb,
             double whole, double tol, int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = ctx.eval(lm), frm = ctx.eval(rm);
  double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  double delta = left + right - whole;
  if (depth <= 0) throw NumericError("adaptive integration depth cap hit");
  if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return adapt(ctx, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adapt(ctx, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double adaptive_finite(SimpsonCtx& ctx, double a, double b, double rel_tol) {
  if (a == b) return 0.0;
  // coarse scan of |g| fixes the absolute tolerance scale
  KahanSum coarse;
  const int kScan = 64;
  double step = (b - a) / kScan;
  for (int i = 0; i < kScan; ++i)
    coarse.add(std::abs(ctx.eval(a + (i + 0.5) * step)) * step);
  double scale = std::max(coarse.value(), 1e-30);
  double fa = ctx.eval(a), fb = ctx.eval(b), fm = ctx.eval(0.5 * (a + b));
  double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adapt(ctx, a, b, fa, fm, fb, whole, rel_tol * scale, 48);
}

}  // namespace

QuadResult adaptive_integral_1d(const std::function<double(double)>& g, double a,
                                double b, double tol,
                                std::optional<double> tail_alpha) {
  if (!(tol > 0.0)) throw ConfigError("tolerance must be positive");
  SimpsonCtx ctx{&g};
  QuadResult qr;
  qr.resolution = tol;
  if (std::isfinite(b)) {
    if (!(a < b)) throw ConfigError("integration bounds require a < b");
    qr.value = adaptive_finite(ctx, a, b, tol);
    return qr;
  }
  if (!tail_alpha || !(*tail_alpha > 0.0))
    throw ConfigError("infinite upper limit requires a positive decay rate");
  if (!(a > 0.0)) throw ConfigError("infinite-tail integration requires a > 0");
  const double alpha = *tail_alpha;
  // r = exp(t/alpha): dr = exp(t/alpha)/alpha dt, and r^{-1-alpha} decay
  // becomes e^{-t} decay in t regardless of alpha
  auto gt = [&](double t) {
    double r = std::exp(t / alpha);
    return g(r) * r / alpha;
  };
  SimpsonCtx tctx{};
  std::function<double(double)> gtf = gt;
  tctx.g = &gtf;
  double t0 = alpha * std::log(a);
  const double piece_len = 10.0;
  KahanSum total;
  double running = 0.0;
  for (int piece = 0; piece < 40; ++piece) {
    double lo = t0 + piece * piece_len;
    double piece_val = adaptive_finite(tctx, lo, lo + piece_len, tol);
    total.add(piece_val);
    running = total.value();
    if (piece >= 1 && std::abs(piece_val) <=
                          tol * std::max(std::abs(running), 1e-30) * 1e-2) {
      qr.value = running;
      return qr;
    }
  }
  throw NumericError("integral tail did not settle within the piece budget");
}

double log_simpson(const std::function<double(double)>& g, double a, double b,
                   int panels) {
  if (!(0.0 < a && a < b)) throw ConfigError("log grid requires 0 < a < b");
  if (panels < 1) throw ConfigError("panel count must be positive");
  // u = ln r: integral of g(e^u) e^u du over uniform panels in u
  double ua = std::log(a), ub = std::log(b);
  double du = (ub - ua) / panels;
  auto gu = [&](double u) {
    double r = std::exp(u);
    return g(r) * r;
  };
  KahanSum s;
  for (int i = 0; i < panels; ++i) {
    double u0 = ua + i * du, u1 = ua + (i + 1) * du;
    double um = 0.5 * (u0 + u1);
    s.add((u1 - u0) / 6.0 * (gu(u0) + 4.0 * gu(um) + gu(u1)));
  }
  return s.value();
}

}  // namespace gnbmo
