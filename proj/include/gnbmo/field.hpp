#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gnbmo/common.hpp"
#include "gnbmo/geometry.hpp"
#include "gnbmo/quadrature.hpp"

namespace gnbmo {

// Scalar function on a domain. Analytic rules are total functions (they may be
// probed slightly outside the domain by difference stencils and subcell
// quadrature); grid-backed fields interpolate node samples multilinearly and
// refuse points outside their lattice box.
class ScalarField {
 public:
  using Rule = std::function<double(const Point&)>;
  using GradRule = std::function<Point(const Point&)>;

  ScalarField() = default;
  ScalarField(std::string label, Rule rule,
              std::optional<GradRule> gradient_rule = std::nullopt,
              double fd_step = 1e-5);
  static ScalarField from_grid(std::string label, const NodeSet& nodes,
                               std::vector<double> values);

  const std::string& label() const { return label_; }
  bool is_grid() const { return grid_ != nullptr; }
  bool has_analytic_gradient() const { return grad_.has_value(); }
  double fd_step() const { return fd_step_; }

  double eval(const Point& x) const;
  double operator()(const Point& x) const { return eval(x); }

  // analytic gradient when present, else a central difference with the field's
  // step; the fallback refuses stencil points that leave the domain
  Point gradient(const Point& x, const ConvexDomain& dom) const;

  ScalarField scaled(double lambda) const;  // pointwise lambda * f

 private:
  struct GridData {
    Lattice lat;
    int dim = 1;
    std::vector<long long> grid;  // cell -> node index, -1 outside
    std::vector<double> values;   // per node
    double value_at_cell(long long ix, long long iy) const;
  };
  std::string label_ = "empty";
  Rule rule_;
  std::optional<GradRule> grad_;
  double fd_step_ = 1e-5;
  std::shared_ptr<const GridData> grid_;
};

// reads (x[,y],value) rows and registers them on the node lattice; every node
// must receive exactly one sample
ScalarField load_field_csv(const std::string& path, const NodeSet& nodes,
                           const std::string& label = "csv");

enum class Smoothness { Smooth, Lipschitz, BmoUnbounded };
const char* smoothness_name(Smoothness s);

struct CorpusEntry {
  ScalarField field;
  Smoothness cls = Smoothness::Smooth;
  std::string notes;
  // d=1 first derivative as its own field (with second-derivative gradient),
  // for the statements about Df; only present for C^2 entries
  std::optional<ScalarField> derivative;
};

// Test functions adapted to the domain geometry: constant, affine, compactly
// supported bump, sinusoid, |x-c|^0.6, |x-c|^1.5, and the capped log-type
// field (finite BMO seminorm, unbounded under cap refinement). log_cap is the
// distance at which the log singularity is frozen.
std::vector<CorpusEntry> builtin_corpus(const ConvexDomain& dom, double log_cap);

// single corpus entry by label; throws ConfigError for unknown labels
CorpusEntry corpus_entry(const ConvexDomain& dom, double log_cap,
                         const std::string& label);

std::vector<std::string> corpus_labels();

}  // namespace gnbmo
