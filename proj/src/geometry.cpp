#include "gnbmo/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace gnbmo {

namespace {

constexpr double kPi = std::numbers::pi;

// length of [lo,hi] ∩ [x-r, x+r]
double segment_overlap(double lo, double hi, double x, double r) {
  double a = std::max(lo, x - r);
  double b = std::min(hi, x + r);
  return std::max(0.0, b - a);
}

// area of {u^2 + v^2 < r^2, 0 < u < a, 0 < v < b} for a,b >= 0.
// W(y) = ∫ sqrt(r^2 - y^2) dy = (y sqrt(r^2-y^2) + r^2 asin(y/r)) / 2
double quadrant_area(double a, double b, double r) {
  if (a <= 0.0 || b <= 0.0 || r <= 0.0) return 0.0;
  a = std::min(a, r);
  b = std::min(b, r);
  double a2 = a * a, b2 = b * b, r2 = r * r;
  if (a2 + b2 >= r2) {
    // corner (a,b) outside: region splits at u = sqrt(r^2 - b^2)
    double u = std::sqrt(std::max(0.0, r2 - b2));
    auto W = [r2, r](double y) {
      double y_ = std::clamp(y / r, -1.0, 1.0);
      return 0.5 * (y * std::sqrt(std::max(0.0, r2 - y * y)) + r2 * std::asin(y_));
    };
    return u * b + (W(a) - W(u));
  }
  return a * b;  // rectangle entirely inside the disk
}

double fix_negative_zero(double v) { return v == 0.0 ? 0.0 : v; }

}  // namespace

double circle_rect_area(double cx, double cy, double r, double ax, double bx,
                        double ay, double by) {
  if (r <= 0.0 || ax >= bx || ay >= by) return 0.0;
  // inclusion-exclusion over the four corner quadrants relative to the centre:
  // area = Q(bx-cx, by-cy) - Q(ax-cx, by-cy) - Q(bx-cx, ay-cy) + Q(ax-cx, ay-cy)
  // where Q(a,b) is the signed quadrant primitive extended to negative args.
  auto Q = [r](double a, double b) -> double {
    double sa = a < 0.0 ? -1.0 : 1.0;
    double sb = b < 0.0 ? -1.0 : 1.0;
    return sa * sb * quadrant_area(std::abs(a), std::abs(b), r);
  };
  double area = Q(bx - cx, by - cy) - Q(ax - cx, by - cy) - Q(bx - cx, ay - cy) +
                Q(ax - cx, ay - cy);
  return fix_negative_zero(std::max(0.0, area));
}

namespace {

// area of the intersection of two disks with radii r0, r1 and centre distance d
double lens_area(double r0, double r1, double d) {
  if (d >= r0 + r1) return 0.0;
  if (d <= std::abs(r0 - r1)) {
    double rm = std::min(r0, r1);
    return kPi * rm * rm;
  }
  double d2 = d * d, r02 = r0 * r0, r12 = r1 * r1;
  // sector angles at each centre, then subtract the kite made of the two
  // triangles joining the centres to the chord endpoints
  double alpha = std::acos(std::clamp((d2 + r02 - r12) / (2.0 * d * r0), -1.0, 1.0));
  double beta = std::acos(std::clamp((d2 + r12 - r02) / (2.0 * d * r1), -1.0, 1.0));
  double k = std::sqrt(std::max(0.0, (-d + r0 + r1) * (d + r0 - r1) * (d - r0 + r1) *
                                         (d + r0 + r1)));
  return r02 * alpha + r12 * beta - 0.5 * k;
}

}  // namespace

ConvexDomain ConvexDomain::interval(double a, double b) {
  if (!(a < b)) throw ConfigError("interval requires a < b");
  ConvexDomain d;
  d.kind_ = DomainKind::Interval;
  d.dim_ = 1;
  d.lo_[0] = a;
  d.hi_[0] = b;
  return d;
}

ConvexDomain ConvexDomain::box(double ax, double bx, double ay, double by) {
  if (!(ax < bx && ay < by)) throw ConfigError("box requires ax < bx and ay < by");
  ConvexDomain d;
  d.kind_ = DomainKind::Box;
  d.dim_ = 2;
  d.lo_[0] = ax;
  d.hi_[0] = bx;
  d.lo_[1] = ay;
  d.hi_[1] = by;
  return d;
}

ConvexDomain ConvexDomain::disk(double cx, double cy, double radius) {
  if (!(radius > 0.0)) throw ConfigError("disk requires radius > 0");
  ConvexDomain d;
  d.kind_ = DomainKind::Disk;
  d.dim_ = 2;
  d.c_ = {cx, cy};
  d.R_ = radius;
  d.lo_[0] = cx - radius;
  d.hi_[0] = cx + radius;
  d.lo_[1] = cy - radius;
  d.hi_[1] = cy + radius;
  return d;
}

ConvexDomain ConvexDomain::full_space_window_1d(double a, double b) {
  if (!(a < b)) throw ConfigError("fullspace window requires a < b");
  ConvexDomain d;
  d.kind_ = DomainKind::FullSpaceWindow;
  d.dim_ = 1;
  d.lo_[0] = a;
  d.hi_[0] = b;
  return d;
}

ConvexDomain ConvexDomain::full_space_window_2d(double ax, double bx, double ay,
                                                double by) {
  if (!(ax < bx && ay < by))
    throw ConfigError("fullspace window requires ax < bx and ay < by");
  ConvexDomain d;
  d.kind_ = DomainKind::FullSpaceWindow;
  d.dim_ = 2;
  d.lo_[0] = ax;
  d.hi_[0] = bx;
  d.lo_[1] = ay;
  d.hi_[1] = by;
  return d;
}

ConvexDomain ConvexDomain::half_space_window_1d(double w) {
  if (!(w > 0.0)) throw ConfigError("halfspace window requires positive extent");
  ConvexDomain d;
  d.kind_ = DomainKind::HalfSpaceWindow;
  d.dim_ = 1;
  d.lo_[0] = 0.0;
  d.hi_[0] = w;
  return d;
}

ConvexDomain ConvexDomain::half_space_window_2d(double ax, double bx, double h) {
  if (!(ax < bx && h > 0.0))
    throw ConfigError("halfspace window requires ax < bx and positive height");
  ConvexDomain d;
  d.kind_ = DomainKind::HalfSpaceWindow;
  d.dim_ = 2;
  d.lo_[0] = ax;
  d.hi_[0] = bx;
  d.lo_[1] = 0.0;
  d.hi_[1] = h;
  return d;
}

bool ConvexDomain::contains(const Point& p) const {
  switch (kind_) {
    case DomainKind::Interval:
      return p.x > lo_[0] && p.x < hi_[0];
    case DomainKind::Box:
      return p.x > lo_[0] && p.x < hi_[0] && p.y > lo_[1] && p.y < hi_[1];
    case DomainKind::Disk:
      return dist2(p, c_, 2) < R_ * R_;
    case DomainKind::FullSpaceWindow:
      return true;
    case DomainKind::HalfSpaceWindow:
      return dim_ == 1 ? p.x > 0.0 : p.y > 0.0;
  }
  return false;
}

double ConvexDomain::diameter() const {
  if (dim_ == 1) return hi_[0] - lo_[0];
  if (kind_ == DomainKind::Disk) return 2.0 * R_;
  double dx = hi_[0] - lo_[0], dy = hi_[1] - lo_[1];
  return std::sqrt(dx * dx + dy * dy);
}

double ConvexDomain::measure() const {
  if (kind_ == DomainKind::Disk) return kPi * R_ * R_;
  if (dim_ == 1) return hi_[0] - lo_[0];
  return (hi_[0] - lo_[0]) * (hi_[1] - lo_[1]);
}

Point ConvexDomain::center() const {
  if (kind_ == DomainKind::Disk) return c_;
  Point p;
  p.x = 0.5 * (lo_[0] + hi_[0]);
  if (dim_ == 2) p.y = 0.5 * (lo_[1] + hi_[1]);
  return p;
}

double ConvexDomain::ball_intersection_measure(const Point& x, double r,
                                               double /*resolution*/) const {
  if (!(r > 0.0)) return 0.0;
  switch (kind_) {
    case DomainKind::Interval:
      return segment_overlap(lo_[0], hi_[0], x.x, r);
    case DomainKind::Box:
      return circle_rect_area(x.x, x.y, r, lo_[0], hi_[0], lo_[1], hi_[1]);
    case DomainKind::Disk:
      return lens_area(r, R_, dist(x, c_, 2));
    case DomainKind::FullSpaceWindow:
      return ball_volume(dim_, r);
    case DomainKind::HalfSpaceWindow: {
      if (dim_ == 1) return segment_overlap(0.0, x.x + r, x.x, r);
      double c = x.y;  // distance from the half-plane boundary
      if (c >= r) return kPi * r * r;
      // full disk minus the circular segment below {y = 0}
      double seg = r * r * std::acos(std::clamp(c / r, -1.0, 1.0)) -
                   c * std::sqrt(std::max(0.0, r * r - c * c));
      return kPi * r * r - seg;
    }
  }
  return 0.0;
}

std::optional<double> ConvexDomain::analytic_kappa() const {
  if (kind_ == DomainKind::FullSpaceWindow) return 1.0;
  if (kind_ == DomainKind::HalfSpaceWindow) return 2.0;
  return std::nullopt;
}

double ConvexDomain::kappa_upper_bound() const {
  if (kind_ == DomainKind::FullSpaceWindow) return 1.0;
  if (kind_ == DomainKind::HalfSpaceWindow) return 2.0;
  double d = diameter();
  return ball_volume(dim_, 1.0) * std::pow(d, dim_) / measure();
}

std::string ConvexDomain::describe() const {
  std::ostringstream os;
  os.precision(12);
  switch (kind_) {
    case DomainKind::Interval:
      os << "interval(" << lo_[0] << "," << hi_[0] << ")";
      break;
    case DomainKind::Box:
      os << "box(" << lo_[0] << "," << hi_[0] << "," << lo_[1] << "," << hi_[1] << ")";
      break;
    case DomainKind::Disk:
      os << "disk(" << c_.x << "," << c_.y << "," << R_ << ")";
      break;
    case DomainKind::FullSpaceWindow:
      if (dim_ == 1)
        os << "fullspace(" << lo_[0] << "," << hi_[0] << ")";
      else
        os << "fullspace(" << lo_[0] << "," << hi_[0] << "," << lo_[1] << "," << hi_[1]
           << ")";
      break;
    case DomainKind::HalfSpaceWindow:
      if (dim_ == 1)
        os << "halfspace(" << hi_[0] << ")";
      else
        os << "halfspace(" << lo_[0] << "," << hi_[0] << "," << hi_[1] << ")";
      break;
  }
  return os.str();
}

Lattice make_lattice(const ConvexDomain& dom, double h) {
  if (!(h > 0.0)) throw ConfigError("resolution must be positive");
  Lattice lat;
  lat.dim = dom.dim();
  long long total = 1;
  for (int ax = 0; ax < lat.dim; ++ax) {
    double len = dom.hi(ax) - dom.lo(ax);
    long long n = std::max(1LL, static_cast<long long>(std::llround(len / h)));
    lat.n[ax] = n;
    lat.step[ax] = len / static_cast<double>(n);
    lat.lo[ax] = dom.lo(ax);
    total *= n;
  }
  if (total > kNodeCap)
    throw ConfigError("resolution " + std::to_string(h) + " needs " +
                      std::to_string(total) + " cells; cap is " +
                      std::to_string(kNodeCap));
  return lat;
}

KappaEstimate kappa(const ConvexDomain& dom, double resolution) {
  KappaEstimate est;
  est.upper_bound = dom.kappa_upper_bound();
  if (auto a = dom.analytic_kappa()) {
    est.value = *a;
    est.upper_bound = *a;
    est.arg_x = dom.center();
    est.arg_r = resolution;
    est.analytic = true;
    return est;
  }
  double diam = dom.diameter();
  if (!(resolution > 0.0) || resolution >= diam)
    throw ConfigError("kappa needs resolution in (0, diam)");

  std::vector<Point> probes;
  Lattice lat = make_lattice(dom, resolution);
  for (long long iy = 0; iy < (lat.dim == 2 ? lat.n[1] : 1); ++iy)
    for (long long ix = 0; ix < lat.n[0]; ++ix) {
      Point p = lat.cell_center(ix, iy);
      if (dom.contains(p)) probes.push_back(p);
    }
  // boundary-adjacent probes: the supremum may live closer to the boundary
  // than any cell centre
  double eps = 0.5 * resolution;
  if (dom.dim() == 1) {
    probes.push_back({dom.lo(0) + eps, 0.0});
    probes.push_back({dom.hi(0) - eps, 0.0});
  } else if (dom.kind() == DomainKind::Box) {
    double ax = dom.lo(0), bx = dom.hi(0), ay = dom.lo(1), by = dom.hi(1);
    double mx = 0.5 * (ax + bx), my = 0.5 * (ay + by);
    Point extra[] = {{ax + eps, ay + eps}, {bx - eps, ay + eps}, {ax + eps, by - eps},
                     {bx - eps, by - eps}, {mx, ay + eps},       {mx, by - eps},
                     {ax + eps, my},       {bx - eps, my}};
    for (const Point& p : extra)
      if (dom.contains(p)) probes.push_back(p);
  } else if (dom.kind() == DomainKind::Disk) {
    Point c = dom.center();
    double rr = 0.0;
    for (int ax = 0; ax < 2; ++ax) rr = std::max(rr, dom.hi(ax) - dom.lo(ax));
    rr = 0.5 * rr - eps;  // just inside the rim
    for (int k = 0; k < 64; ++k) {
      double th = 2.0 * kPi * k / 64.0;
      Point p = {c.x + rr * std::cos(th), c.y + rr * std::sin(th)};
      if (dom.contains(p)) probes.push_back(p);
    }
  }

  std::vector<double> radii = log_spaced(resolution, diam, kRadiusGridN);
  est.value = 1.0;
  est.arg_x = probes.empty() ? dom.center() : probes.front();
  est.arg_r = radii.front();
  for (const Point& p : probes) {
    for (double r : radii) {
      double inter = dom.ball_intersection_measure(p, r, resolution);
      if (!(inter > 0.0)) continue;
      double ratio = ball_volume(dom.dim(), r) / inter;
      if (ratio > est.value) {  // first strict improvement wins: deterministic
        est.value = ratio;
        est.arg_x = p;
        est.arg_r = r;
      }
    }
  }
  return est;
}

}  // namespace gnbmo
