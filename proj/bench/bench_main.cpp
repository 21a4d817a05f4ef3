// Timing comparison between the naive serial reference paths and the shipped
// kernels: deterministic parallel pair sums, the banded near-diagonal
// refinement, and the prefix-tree oscillation scanner. Values are printed next
// to the timings so agreement between the implementations stays visible.
//
// usage: gnbmo_bench [h_1d] [h_2d] [h_bmo]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "gnbmo/field.hpp"
#include "gnbmo/geometry.hpp"
#include "gnbmo/quadrature.hpp"
#include "gnbmo/reference.hpp"
#include "gnbmo/seminorms.hpp"

using namespace gnbmo;

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - t0)
      .count();
}

double rel_diff(double a, double b) {
  double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

PairKernel gagliardo_kernel(const ScalarField& f, int dim, double s, double p) {
  const double expo = 0.5 * (dim + s * p);
  return [&f, p, expo, dim](const Point& a, const Point& b) {
    double diff = std::abs(f.eval(b) - f.eval(a));
    if (diff == 0.0) return 0.0;
    return std::pow(diff, p) / std::pow(dist2(a, b, dim), expo);
  };
}

void bench_pair_sum(const ConvexDomain& dom, double h) {
  CorpusEntry e = corpus_entry(dom, h, "bump");
  NodeSet ns = domain_nodes(dom, h);
  PairKernel kern = gagliardo_kernel(e.field, dom.dim(), 0.75, 2.0);

  auto t0 = std::chrono::steady_clock::now();
  double direct = reference::pair_sum_direct(ns, kern);
  double t_direct = ms_since(t0);

  t0 = std::chrono::steady_clock::now();
  double fast = double_integral_pairs(ns, kern, true).value;
  double t_fast = ms_since(t0);

  NearDiagRefine refine = dom.dim() == 1 ? NearDiagRefine{4, 32} : NearDiagRefine{1, 4};
  t0 = std::chrono::steady_clock::now();
  double banded = double_integral_pairs(ns, kern, true, refine).value;
  double t_banded = ms_since(t0);

  std::printf("pair sum, %zu nodes (d=%d):\n", ns.pts.size(), dom.dim());
  std::printf("  serial ordered-pair loop   %9.2f ms   value %.12g\n", t_direct, direct);
  std::printf("  deterministic parallel     %9.2f ms   value %.12g   (%.2fx, rel diff %.2e)\n",
              t_fast, fast, t_direct / t_fast, rel_diff(direct, fast));
  std::printf("  + near-diagonal band %d/%d  %9.2f ms   value %.12g\n",
              refine.band, refine.subdiv, t_banded, banded);
}

void bench_bmo(const ConvexDomain& dom, double h) {
  CorpusEntry e = corpus_entry(dom, h, "sinusoid");
  NodeSet ns = domain_nodes(dom, h);

  auto t0 = std::chrono::steady_clock::now();
  double direct = reference::bmo_direct(e.field, dom, h);
  double t_direct = ms_since(t0);

  t0 = std::chrono::steady_clock::now();
  double fast = bmo_seminorm(e.field, dom, h).value;
  double t_fast = ms_since(t0);

  std::printf("bmo sup, %zu nodes (d=%d):\n", ns.pts.size(), dom.dim());
  std::printf("  direct per-radius loops    %9.2f ms   value %.12g\n", t_direct, direct);
  std::printf("  prefix-tree scanner        %9.2f ms   value %.12g   (%.2fx, rel diff %.2e)\n",
              t_fast, fast, t_direct / t_fast, rel_diff(direct, fast));
}

void bench_oscillation(const ConvexDomain& dom, double h) {
  CorpusEntry e = corpus_entry(dom, h, "sinusoid");
  NodeSet ns = domain_nodes(dom, h);
  Region A = whole_region(ns);
  Region B = ball_region(ns, dom, dom.center(), dom.diameter() / 8.0);

  auto t0 = std::chrono::steady_clock::now();
  double direct = reference::oscillation_direct(e.field, A, B);
  double t_direct = ms_since(t0);

  t0 = std::chrono::steady_clock::now();
  double fast = oscillation_pair_average(e.field, A, B);
  double t_fast = ms_since(t0);

  std::printf("oscillation average, |A| = %zu x |B| = %zu:\n", A.idx.size(), B.idx.size());
  std::printf("  direct double loop         %9.2f ms   value %.12g\n", t_direct, direct);
  std::printf("  sorted prefix sums         %9.2f ms   value %.12g   (%.2fx, rel diff %.2e)\n",
              t_fast, fast, t_direct / t_fast, rel_diff(direct, fast));
}

}  // namespace

int main(int argc, char** argv) {
  double h1 = argc > 1 ? std::atof(argv[1]) : 1e-3;
  double h2 = argc > 2 ? std::atof(argv[2]) : 0.02;
  double hb = argc > 3 ? std::atof(argv[3]) : 1.0 / 150.0;

#ifdef _OPENMP
  std::printf("workers: %d (set OMP_NUM_THREADS to change)\n\n", omp_get_max_threads());
#else
  std::printf("workers: 1 (built without OpenMP)\n\n");
#endif

  bench_pair_sum(ConvexDomain::interval(0.0, 1.0), h1);
  std::printf("\n");
  bench_pair_sum(ConvexDomain::box(0.0, 1.0, 0.0, 1.0), h2);
  std::printf("\n");
  bench_bmo(ConvexDomain::interval(0.0, 1.0), hb);
  std::printf("\n");
  bench_oscillation(ConvexDomain::interval(0.0, 1.0), 2.5e-4);
  return 0;
}
