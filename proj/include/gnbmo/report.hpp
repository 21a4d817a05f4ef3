#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace gnbmo {

// One verified statement instance. Factor fields hold the POWERED values as
// they enter the product (e.g. bmo = ‖f‖_BMO^{(1-s)p}), so that the product of
// the present factor columns reproduces rhs_product.
struct InequalityReport {
  std::string statement_id;
  std::string domain;
  std::string field;
  int d = 1;
  std::optional<double> s, p, s1, p1;
  std::optional<int> k1;
  std::optional<double> sigma1;
  double h = 0.0;
  std::optional<double> lhs;
  std::optional<double> bmo, grad_norm, gagliardo_s1p1, kappa, blowup_factor;
  std::optional<double> rhs_product;
  std::optional<double> ratio;  // absent when degenerate or skipped
  bool degenerate = false;
  std::optional<bool> pass;  // present only for pass/fail checkers
  std::optional<double> error_estimate;
  double runtime_ms = 0.0;
  std::string bias_notes;
};

struct ConstantEstimate {
  std::string statement_id;
  double c_emp = 0.0;
  int corpus_size = 0;            // contributing (nondegenerate) members
  double refinement_drift = 0.0;  // |c_emp(h/2) - c_emp(h)| / c_emp(h)
  std::vector<InequalityReport> members;  // base rows then refined rows
};

std::string format_g12(double v);  // %.12g, the fixed file format

std::string csv_header();
// timings=false writes runtime_ms as 0 so identical runs stay byte-identical
std::string csv_row(const InequalityReport& r, bool timings);

// atomic: temp file in the target directory, then rename
void write_csv(const std::vector<InequalityReport>& reports,
               const std::string& path, bool timings);
void write_json(const std::vector<InequalityReport>& reports,
                const std::string& path, bool timings,
                const std::map<std::string, std::string>& config);

// one-line console rendering (real runtimes, independent of `timings`)
std::string describe_report(const InequalityReport& r);

}  // namespace gnbmo
