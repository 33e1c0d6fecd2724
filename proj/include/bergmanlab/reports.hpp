#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "bergmanlab/polynomial.hpp"

namespace bergmanlab::reports {

using json = nlohmann::ordered_json;

/// Named tolerances with defaults, overridable per run; echoed into reports.
class ToleranceSet {
 public:
  ToleranceSet();
  double get(const std::string& name) const;
  void set(const std::string& name, double value);
  json echo() const;

 private:
  std::map<std::string, double> values_;
};

json module_versions();

/// Report skeleton carrying the reproducibility block.
json report_header(const std::string& command, const json& config_echo, uint64_t seed,
                   const ToleranceSet& tol);

/// Serialize with the volatile timestamp appended last.
std::string finalize_report(json report);

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

std::string csv_join(const std::vector<std::string>& cells);
std::string format_double(double v);

json complex_to_json(const Complex& c);

}  // namespace bergmanlab::reports
