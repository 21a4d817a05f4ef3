#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gnbmo/common.hpp"

namespace gnbmo {

enum class DomainKind { Interval, Box, Disk, FullSpaceWindow, HalfSpaceWindow };

// Convex domain in d ∈ {1,2}. Bounded kinds (interval, box, disk) are the set
// itself. Window kinds model the unbounded sets R^d and the half-space
// {x_d > 0}; their bounds describe only the region used for discretisation,
// while contains() and ball_intersection_measure() refer to the model set.
class ConvexDomain {
 public:
  static ConvexDomain interval(double a, double b);
  static ConvexDomain box(double ax, double bx, double ay, double by);
  static ConvexDomain disk(double cx, double cy, double radius);
  static ConvexDomain full_space_window_1d(double a, double b);
  static ConvexDomain full_space_window_2d(double ax, double bx, double ay, double by);
  // models (0, inf), discretised on (0, w)
  static ConvexDomain half_space_window_1d(double w);
  // models {y > 0}, discretised on (ax, bx) × (0, h)
  static ConvexDomain half_space_window_2d(double ax, double bx, double h);

  int dim() const { return dim_; }
  DomainKind kind() const { return kind_; }
  bool is_window() const {
    return kind_ == DomainKind::FullSpaceWindow || kind_ == DomainKind::HalfSpaceWindow;
  }

  bool contains(const Point& p) const;  // open model set
  // sup of pairwise distances; window diagonal for window kinds
  double diameter() const;
  // Lebesgue measure of the discretised region (window box for window kinds)
  double measure() const;
  double lo(int axis) const { return lo_[axis]; }
  double hi(int axis) const { return hi_[axis]; }
  Point center() const;

  // L^d(Ω ∩ B_r(x)) for x ∈ Ω, r > 0, against the model set. Closed form for
  // every kind (interval/half-line overlaps, circular segments, circle-rectangle
  // and circle-circle intersection areas); `resolution` is accepted for
  // interface uniformity but not consulted.
  double ball_intersection_measure(const Point& x, double r, double resolution = 0.0) const;

  std::optional<double> analytic_kappa() const;  // 1 full space, 2 half space
  // closed-form bracket vol(B_1)·diam^d / measure for bounded kinds
  double kappa_upper_bound() const;

  std::string describe() const;

 private:
  ConvexDomain() = default;
  DomainKind kind_ = DomainKind::Interval;
  int dim_ = 1;
  double lo_[2] = {0.0, 0.0};
  double hi_[2] = {0.0, 0.0};
  Point c_{};       // disk centre
  double R_ = 0.0;  // disk radius
};

// area of the disk of radius r centred at (cx,cy) intersected with the
// rectangle [ax,bx]×[ay,by]; evaluated in closed form
double circle_rect_area(double cx, double cy, double r, double ax, double bx,
                        double ay, double by);

// midpoint-rule lattice over the discretised region; shared between quadrature
// node generation and the kappa probe grid
struct Lattice {
  int dim = 1;
  long long n[2] = {1, 1};
  double step[2] = {0.0, 0.0};
  double lo[2] = {0.0, 0.0};
  Point cell_center(long long ix, long long iy) const {
    return {lo[0] + (ix + 0.5) * step[0], dim == 2 ? lo[1] + (iy + 0.5) * step[1] : 0.0};
  }
};
Lattice make_lattice(const ConvexDomain& dom, double h);  // throws ConfigError

struct KappaEstimate {
  double value = 1.0;        // discretised sup; a lower bound for the true sup
  double upper_bound = 0.0;  // closed-form bracket (equals value for analytic kinds)
  Point arg_x{};
  double arg_r = 0.0;
  bool analytic = false;
};

// sup of vol(B_r(x)) / L^d(Ω ∩ B_r(x)) over lattice nodes plus
// boundary-adjacent probes, with kRadiusGridN log-spaced radii in
// [resolution, diam]; analytic value returned for window kinds
KappaEstimate kappa(const ConvexDomain& dom, double resolution);

}  // namespace gnbmo
