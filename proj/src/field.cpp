#include "gnbmo/field.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace gnbmo {

ScalarField::ScalarField(std::string label, Rule rule,
                         std::optional<GradRule> gradient_rule, double fd_step)
    : label_(std::move(label)),
      rule_(std::move(rule)),
      grad_(std::move(gradient_rule)),
      fd_step_(fd_step) {
  if (!rule_) throw ConfigError("field needs an evaluation rule");
  if (!(fd_step_ > 0.0)) throw ConfigError("difference step must be positive");
}

double ScalarField::GridData::value_at_cell(long long ix, long long iy) const {
  ix = std::clamp(ix, 0LL, lat.n[0] - 1);
  iy = dim == 2 ? std::clamp(iy, 0LL, lat.n[1] - 1) : 0;
  long long node = grid[ix + (dim == 2 ? iy * lat.n[0] : 0)];
  if (node >= 0) return values[static_cast<size_t>(node)];
  // cell outside the discretised region (disk corners): walk toward the
  // lattice centre until a registered cell appears
  long long cx = lat.n[0] / 2, cy = dim == 2 ? lat.n[1] / 2 : 0;
  long long jx = ix, jy = iy;
  for (int guard = 0; guard < 4096; ++guard) {
    if (jx != cx) jx += jx < cx ? 1 : -1;
    if (dim == 2 && jy != cy) jy += jy < cy ? 1 : -1;
    long long n2 = grid[jx + (dim == 2 ? jy * lat.n[0] : 0)];
    if (n2 >= 0) return values[static_cast<size_t>(n2)];
    if (jx == cx && (dim == 1 || jy == cy)) break;
  }
  throw NumericError("grid field has no registered cells near the probe");
}

ScalarField ScalarField::from_grid(std::string label, const NodeSet& nodes,
                                   std::vector<double> values) {
  if (values.size() != nodes.pts.size())
    throw ConfigError("grid field needs one value per node");
  auto data = std::make_shared<GridData>();
  data->lat = nodes.lat;
  data->dim = nodes.dim;
  data->grid = nodes.grid;
  data->values = std::move(values);
  ScalarField f;
  f.label_ = std::move(label);
  f.grid_ = data;
  f.fd_step_ = std::max(nodes.lat.step[0], nodes.dim == 2 ? nodes.lat.step[1] : 0.0);
  const auto* raw = data.get();
  f.rule_ = [raw](const Point& x) -> double {
    // samples sit at cell centres; interpolate on the dual grid with constant
    // extension in the outer half-cells
    const Lattice& lat = raw->lat;
    double ux = (x.x - lat.lo[0]) / lat.step[0] - 0.5;
    if (ux < -0.5 || ux > lat.n[0] - 0.5)
      throw Error("point outside the grid field's lattice");
    long long ix = static_cast<long long>(std::floor(ux));
    ix = std::clamp(ix, 0LL, std::max(0LL, lat.n[0] - 2));
    double tx = std::clamp(ux - ix, 0.0, 1.0);
    if (raw->dim == 1) {
      if (lat.n[0] == 1) return raw->value_at_cell(0, 0);
      return (1.0 - tx) * raw->value_at_cell(ix, 0) +
             tx * raw->value_at_cell(ix + 1, 0);
    }
    double uy = (x.y - lat.lo[1]) / lat.step[1] - 0.5;
    if (uy < -0.5 || uy > lat.n[1] - 0.5)
      throw Error("point outside the grid field's lattice");
    long long iy = static_cast<long long>(std::floor(uy));
    iy = std::clamp(iy, 0LL, std::max(0LL, lat.n[1] - 2));
    double ty = std::clamp(uy - iy, 0.0, 1.0);
    double v00 = raw->value_at_cell(ix, iy), v10 = raw->value_at_cell(ix + 1, iy);
    double v01 = raw->value_at_cell(ix, iy + 1),
           v11 = raw->value_at_cell(ix + 1, iy + 1);
    return (1.0 - ty) * ((1.0 - tx) * v00 + tx * v10) +
           ty * ((1.0 - tx) * v01 + tx * v11);
  };
  return f;
}

double ScalarField::eval(const Point& x) const {
  double v = rule_(x);
  if (!std::isfinite(v))
    throw NumericError("field '" + label_ + "' is non-finite at a probe point");
  return v;
}

Point ScalarField::gradient(const Point& x, const ConvexDomain& dom) const {
  if (grad_) return (*grad_)(x);
  double h = fd_step_;
  Point g{};
  Point xp = x, xm = x;
  xp.x = x.x + h;
  xm.x = x.x - h;
  if (!dom.contains(xp) || !dom.contains(xm))
    throw ConfigError("probe too close to the boundary for the difference stencil");
  g.x = (eval(xp) - eval(xm)) / (2.0 * h);
  if (dom.dim() == 2) {
    Point yp = x, ym = x;
    yp.y = x.y + h;
    ym.y = x.y - h;
    if (!dom.contains(yp) || !dom.contains(ym))
      throw ConfigError("probe too close to the boundary for the difference stencil");
    g.y = (eval(yp) - eval(ym)) / (2.0 * h);
  }
  return g;
}

ScalarField ScalarField::scaled(double lambda) const {
  ScalarField f = *this;
  std::ostringstream lbl;
  lbl.precision(12);
  lbl << label_ << "*" << lambda;
  f.label_ = lbl.str();
  Rule base = rule_;
  f.rule_ = [base, lambda](const Point& x) { return lambda * base(x); };
  if (grad_) {
    GradRule g = *grad_;
    f.grad_ = [g, lambda](const Point& x) {
      Point v = g(x);
      return Point{lambda * v.x, lambda * v.y};
    };
  }
  f.grid_ = nullptr;  // the scaled rule captures the original interpolant
  return f;
}

ScalarField load_field_csv(const std::string& path, const NodeSet& nodes,
                           const std::string& label) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open field file: " + path);
  std::vector<double> values(nodes.pts.size(), 0.0);
  std::vector<char> seen(nodes.pts.size(), 0);
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    double cx, cy = 0.0, val;
    if (nodes.dim == 1) {
      if (!(ls >> cx >> val)) {
        if (lineno == 1) continue;  // header row
        throw ConfigError("bad row " + std::to_string(lineno) + " in " + path);
      }
    } else {
      if (!(ls >> cx >> cy >> val)) {
        if (lineno == 1) continue;
        throw ConfigError("bad row " + std::to_string(lineno) + " in " + path);
      }
    }
    long long ix = std::llround((cx - nodes.lat.lo[0]) / nodes.lat.step[0] - 0.5);
    long long iy = nodes.dim == 2 ? std::llround((cy - nodes.lat.lo[1]) /
                                                 nodes.lat.step[1] - 0.5)
                                  : 0;
    long long node = nodes.node_at(ix, iy);
    if (node < 0)
      throw ConfigError("row " + std::to_string(lineno) +
                        " does not land on a lattice node");
    Point c = nodes.pts[static_cast<size_t>(node)];
    if (std::abs(c.x - cx) > 0.3 * nodes.lat.step[0] ||
        (nodes.dim == 2 && std::abs(c.y - cy) > 0.3 * nodes.lat.step[1]))
      throw ConfigError("row " + std::to_string(lineno) +
                        " is too far from its lattice node");
    values[static_cast<size_t>(node)] = val;
    seen[static_cast<size_t>(node)] = 1;
  }
  for (size_t i = 0; i < seen.size(); ++i)
    if (!seen[i]) throw ConfigError("field file leaves lattice nodes unset");
  return ScalarField::from_grid(label, nodes, std::move(values));
}

const char* smoothness_name(Smoothness s) {
  switch (s) {
    case Smoothness::Smooth:
      return "smooth";
    case Smoothness::Lipschitz:
      return "lipschitz";
    case Smoothness::BmoUnbounded:
      return "bmo-unbounded";
  }
  return "?";
}

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Frame {
  Point c;          // domain centre
  double rho;       // bump radius
  double span[2];   // axis extents of the bounding box
  double lo[2];
  int dim;
};

Frame domain_frame(const ConvexDomain& dom) {
  Frame fr;
  fr.dim = dom.dim();
  fr.c = dom.center();
  double half = 1e300;
  for (int ax = 0; ax < fr.dim; ++ax) {
    fr.span[ax] = dom.hi(ax) - dom.lo(ax);
    fr.lo[ax] = dom.lo(ax);
    half = std::min(half, 0.5 * fr.span[ax]);
  }
  fr.rho = 0.6 * half;
  return fr;
}

// bump profile exp(1 - 1/(1-u^2)) with u = |x-c|/rho, zero outside u < 1
double bump_value(const Frame& fr, const Point& x) {
  double u2 = dist2(x, fr.c, fr.dim) / (fr.rho * fr.rho);
  double w = 1.0 - u2;
  if (w <= 1.5e-3) return 0.0;
  return std::exp(1.0 - 1.0 / w);
}

Point bump_gradient(const Frame& fr, const Point& x) {
  double u2 = dist2(x, fr.c, fr.dim) / (fr.rho * fr.rho);
  double w = 1.0 - u2;
  if (w <= 1.5e-3) return {0.0, 0.0};
  double f = std::exp(1.0 - 1.0 / w);
  double scale = -2.0 * f / (fr.rho * fr.rho * w * w);
  return {scale * (x.x - fr.c.x), fr.dim == 2 ? scale * (x.y - fr.c.y) : 0.0};
}

// d=1 derivative of the bump and its own derivative (for the statements
// involving Df as a field)
double bump_d1(const Frame& fr, double x) {
  double u = (x - fr.c.x) / fr.rho;
  double w = 1.0 - u * u;
  if (w <= 1.5e-3) return 0.0;
  double f = std::exp(1.0 - 1.0 / w);
  return f * (-2.0 * u / (w * w)) / fr.rho;
}

double bump_d2(const Frame& fr, double x) {
  double u = (x - fr.c.x) / fr.rho;
  double w = 1.0 - u * u;
  if (w <= 1.5e-3) return 0.0;
  double f = std::exp(1.0 - 1.0 / w);
  double gp = -2.0 * u / (w * w);
  double gpp = -2.0 * (1.0 + 3.0 * u * u) / (w * w * w);
  return f * (gp * gp + gpp) / (fr.rho * fr.rho);
}

ScalarField power_field(const Frame& fr, double alpha, const std::string& label) {
  Frame f = fr;
  auto rule = [f, alpha](const Point& x) {
    return std::pow(dist(x, f.c, f.dim), alpha);
  };
  auto grad = [f, alpha](const Point& x) -> Point {
    double r = dist(x, f.c, f.dim);
    if (r == 0.0) return {0.0, 0.0};  // radial symmetry pins the centre value
    double scale = alpha * std::pow(r, alpha - 2.0);
    return {scale * (x.x - f.c.x), f.dim == 2 ? scale * (x.y - f.c.y) : 0.0};
  };
  return ScalarField(label, rule, grad);
}

}  // namespace

std::vector<std::string> corpus_labels() {
  return {"constant", "affine", "bump", "sinusoid", "power-0.6", "power-1.5", "log"};
}

CorpusEntry corpus_entry(const ConvexDomain& dom, double log_cap,
                         const std::string& label) {
  if (!(log_cap > 0.0)) throw ConfigError("log cap must be positive");
  Frame fr = domain_frame(dom);

  if (label == "constant") {
    CorpusEntry e;
    e.field = ScalarField("constant", [](const Point&) { return 1.0; },
                          [](const Point&) { return Point{0.0, 0.0}; });
    e.cls = Smoothness::Smooth;
    e.notes = "all seminorms vanish; degenerate for ratio statements";
    if (dom.dim() == 1)
      e.derivative = ScalarField("constant'", [](const Point&) { return 0.0; },
                                 [](const Point&) { return Point{0.0, 0.0}; });
    return e;
  }
  if (label == "affine") {
    CorpusEntry e;
    if (dom.dim() == 1)
      e.field = ScalarField("affine", [](const Point& x) { return x.x; },
                            [](const Point&) { return Point{1.0, 0.0}; });
    else
      e.field =
          ScalarField("affine", [](const Point& x) { return x.x + 0.5 * x.y; },
                      [](const Point&) { return Point{1.0, 0.5}; });
    e.cls = Smoothness::Smooth;
    if (dom.dim() == 1)
      e.derivative = ScalarField("affine'", [](const Point&) { return 1.0; },
                                 [](const Point&) { return Point{0.0, 0.0}; });
    return e;
  }
  if (label == "bump") {
    CorpusEntry e;
    e.field = ScalarField("bump",
                          [fr](const Point& x) { return bump_value(fr, x); },
                          [fr](const Point& x) { return bump_gradient(fr, x); });
    e.cls = Smoothness::Smooth;
    e.notes = "compact support inside the domain";
    if (dom.dim() == 1)
      e.derivative = ScalarField(
          "bump'", [fr](const Point& x) { return bump_d1(fr, x.x); },
          [fr](const Point& x) { return Point{bump_d2(fr, x.x), 0.0}; });
    return e;
  }
  if (label == "sinusoid") {
    CorpusEntry e;
    Frame f = fr;
    if (dom.dim() == 1) {
      double om = kTwoPi / f.span[0];
      double a = f.lo[0];
      e.field = ScalarField(
          "sinusoid", [om, a](const Point& x) { return std::sin(om * (x.x - a)); },
          [om, a](const Point& x) {
            return Point{om * std::cos(om * (x.x - a)), 0.0};
          });
      e.derivative = ScalarField(
          "sinusoid'",
          [om, a](const Point& x) { return om * std::cos(om * (x.x - a)); },
          [om, a](const Point& x) {
            return Point{-om * om * std::sin(om * (x.x - a)), 0.0};
          });
    } else {
      double omx = kTwoPi / f.span[0], omy = kTwoPi / f.span[1];
      double ax = f.lo[0], ay = f.lo[1];
      e.field = ScalarField(
          "sinusoid",
          [=](const Point& p) {
            return std::sin(omx * (p.x - ax)) * std::sin(omy * (p.y - ay));
          },
          [=](const Point& p) {
            return Point{
                omx * std::cos(omx * (p.x - ax)) * std::sin(omy * (p.y - ay)),
                omy * std::sin(omx * (p.x - ax)) * std::cos(omy * (p.y - ay))};
          });
    }
    e.cls = Smoothness::Smooth;
    return e;
  }
  if (label == "power-0.6") {
    CorpusEntry e;
    e.field = power_field(fr, 0.6, "power-0.6");
    e.cls = Smoothness::Lipschitz;
    e.notes = "Hoelder exponent 0.6 at the centre";
    return e;
  }
  if (label == "power-1.5") {
    CorpusEntry e;
    e.field = power_field(fr, 1.5, "power-1.5");
    e.cls = Smoothness::Lipschitz;
    return e;
  }
  if (label == "log") {
    CorpusEntry e;
    Frame f = fr;
    double cap = log_cap;
    e.field = ScalarField(
        "log",
        [f, cap](const Point& x) {
          return std::abs(std::log(std::max(dist(x, f.c, f.dim), cap)));
        },
        std::nullopt, cap);
    e.cls = Smoothness::BmoUnbounded;
    e.notes = "bounded mean oscillation with sup growing as the cap shrinks";
    return e;
  }
  throw ConfigError("unknown corpus field: " + label);
}

std::vector<CorpusEntry> builtin_corpus(const ConvexDomain& dom, double log_cap) {
  std::vector<CorpusEntry> out;
  for (const std::string& lbl : corpus_labels())
    out.push_back(corpus_entry(dom, log_cap, lbl));
  return out;
}

}  // namespace gnbmo
