#include "gnbmo/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "gnbmo/common.hpp"
#include "json.hpp"

namespace gnbmo {

std::string format_g12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

namespace {

std::string cell(const std::optional<double>& v) {
  return v ? format_g12(*v) : std::string();
}

// bias_notes may contain separators; quote when needed
std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += "\"";
  return out;
}

void write_atomic(const std::string& path, const std::string& body) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw Error("cannot open for writing: " + tmp);
    os << body;
    if (!os.flush()) throw Error("write failed: " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw Error("rename failed: " + path);
}

}  // namespace

std::string csv_header() {
  return "statement_id,domain,field,d,s,p,s1,p1,k1,sigma1,h,lhs,bmo,"
         "grad_norm,gagliardo_s1p1,kappa,blowup_factor,rhs_product,ratio,"
         "error_estimate,runtime_ms,bias_notes";
}

std::string csv_row(const InequalityReport& r, bool timings) {
  std::ostringstream os;
  os << csv_escape(r.statement_id) << ',' << csv_escape(r.domain) << ','
     << csv_escape(r.field) << ',' << r.d << ',' << cell(r.s) << ','
     << cell(r.p) << ',' << cell(r.s1) << ',' << cell(r.p1) << ','
     << (r.k1 ? std::to_string(*r.k1) : std::string()) << ','
     << cell(r.sigma1) << ',' << format_g12(r.h) << ',' << cell(r.lhs) << ','
     << cell(r.bmo) << ',' << cell(r.grad_norm) << ','
     << cell(r.gagliardo_s1p1) << ',' << cell(r.kappa) << ','
     << cell(r.blowup_factor) << ',' << cell(r.rhs_product) << ','
     << cell(r.ratio) << ',' << cell(r.error_estimate) << ','
     << format_g12(timings ? r.runtime_ms : 0.0) << ','
     << csv_escape(r.bias_notes);
  return os.str();
}

void write_csv(const std::vector<InequalityReport>& reports,
               const std::string& path, bool timings) {
  std::string body = csv_header() + "\n";
  for (const auto& r : reports) body += csv_row(r, timings) + "\n";
  write_atomic(path, body);
}

void write_json(const std::vector<InequalityReport>& reports,
                const std::string& path, bool timings,
                const std::map<std::string, std::string>& config) {
  nlohmann::json root;
  root["config"] = nlohmann::json::object();
  for (const auto& [k, v] : config) root["config"][k] = v;
  auto put = [](nlohmann::json& j, const char* key,
                const std::optional<double>& v) {
    if (v)
      j[key] = *v;
    else
      j[key] = nullptr;
  };
  root["reports"] = nlohmann::json::array();
  for (const auto& r : reports) {
    nlohmann::json j;
    j["statement_id"] = r.statement_id;
    j["domain"] = r.domain;
    j["field"] = r.field;
    j["d"] = r.d;
    put(j, "s", r.s);
    put(j, "p", r.p);
    put(j, "s1", r.s1);
    put(j, "p1", r.p1);
    if (r.k1)
      j["k1"] = *r.k1;
    else
      j["k1"] = nullptr;
    put(j, "sigma1", r.sigma1);
    j["h"] = r.h;
    put(j, "lhs", r.lhs);
    put(j, "bmo", r.bmo);
    put(j, "grad_norm", r.grad_norm);
    put(j, "gagliardo_s1p1", r.gagliardo_s1p1);
    put(j, "kappa", r.kappa);
    put(j, "blowup_factor", r.blowup_factor);
    put(j, "rhs_product", r.rhs_product);
    put(j, "ratio", r.ratio);
    put(j, "error_estimate", r.error_estimate);
    j["runtime_ms"] = timings ? r.runtime_ms : 0.0;
    j["bias_notes"] = r.bias_notes;
    root["reports"].push_back(std::move(j));
  }
  write_atomic(path, root.dump(2) + "\n");
}

std::string describe_report(const InequalityReport& r) {
  std::ostringstream os;
  os << r.statement_id;
  if (!r.domain.empty()) os << "  " << r.domain;
  if (!r.field.empty()) os << "  field=" << r.field;
  if (r.s) os << "  s=" << format_g12(*r.s);
  if (r.p) os << "  p=" << format_g12(*r.p);
  if (r.s1) os << "  s1=" << format_g12(*r.s1);
  if (r.p1) os << "  p1=" << format_g12(*r.p1);
  if (r.k1) os << "  k1=" << *r.k1;
  if (r.sigma1) os << "  sigma1=" << format_g12(*r.sigma1);
  os << "  h=" << format_g12(r.h);
  if (r.lhs) os << "  lhs=" << format_g12(*r.lhs);
  if (r.rhs_product) os << "  rhs=" << format_g12(*r.rhs_product);
  if (r.ratio)
    os << "  ratio=" << format_g12(*r.ratio);
  else if (r.degenerate)
    os << "  ratio=n/a (degenerate)";
  if (r.pass) os << (*r.pass ? "  PASS" : "  VIOLATION");
  os << "  (" << format_g12(r.runtime_ms) << " ms)";
  if (!r.bias_notes.empty()) os << "  [" << r.bias_notes << "]";
  return os.str();
}

}  // namespace gnbmo
