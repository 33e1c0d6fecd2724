#include "bergmanlab/reports.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace bergmanlab::reports {

ToleranceSet::ToleranceSet() {
  values_ = {
      {"hermitian", 1e-12},     // Levi matrix conjugate symmetry
      {"sigma", 1e-12},         // principal symbol on the characteristic variety
      {"degeneracy", 1e-10},    // relative eigenvalue cutoff
      {"frame", 1e-10},         // unitary frame / commutation residuals
      {"riccati", 1e-8},        // ODE vs flow-map agreement
      {"phase", 1e-10},         // kernel phase identities
      {"two_route", 1e-6},      // gram vs closed-form kernels
      {"projector", 1e-8},      // idempotency / self-adjointness / trace
      {"fit_b0", 1e-6},         // leading coefficient of the expansion fit
      {"fit_n", 0.02},          // fitted growth order
      {"decay", 1e-8},          // off-diagonal rate
      {"obstruction", 1e-4},    // closed form vs finite differences
      {"quadrature", 1e-7},     // node-doubling stability
  };
}

double ToleranceSet::get(const std::string& name) const {
  auto it = values_.find(name);
  if (it == values_.end()) throw std::invalid_argument("unknown tolerance: " + name);
  return it->second;
}

void ToleranceSet::set(const std::string& name, double value) {
  if (!(value > 0)) throw std::invalid_argument("tolerance must be positive: " + name);
  values_[name] = value;  // unknown names are accepted as run-specific knobs
}

json ToleranceSet::echo() const {
  json out;
  for (const auto& [k, v] : values_) out[k] = v;
  return out;
}

json module_versions() {
  json v;
  v["geometry"] = "0.1.0";
  v["heat"] = "0.1.0";
  v["models"] = "0.1.0";
  v["chern"] = "0.1.0";
  v["flag"] = "0.1.0";
  v["cli"] = "0.1.0";
  return v;
}

json report_header(const std::string& command, const json& config_echo, uint64_t seed,
                   const ToleranceSet& tol) {
  json r;
  r["command"] = command;
  r["config"] = config_echo;
  r["seed"] = seed;
  r["tolerances"] = tol.echo();
  r["versions"] = module_versions();
  return r;
}

std::string finalize_report(json report) {
  const auto now = std::chrono::system_clock::now();
  report["timestamp_utc"] =
      std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch()).count();
  return report.dump(2) + "\n";
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << content;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::string csv_join(const std::vector<std::string>& cells) {
  std::string out;
  for (size_t i = 0; i < cells.size(); ++i) {
    if (i) out += ",";
    out += cells[i];
  }
  out += "\n";
  return out;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

json complex_to_json(const Complex& c) {
  json j;
  j["re"] = c.real();
  j["im"] = c.imag();
  return j;
}

}  // namespace bergmanlab::reports
