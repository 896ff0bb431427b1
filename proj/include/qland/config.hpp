// Experiment configuration: a small key/value file with [section] headers.

#ifndef QLAND_CONFIG_HPP
#define QLAND_CONFIG_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qland/charts.hpp"

namespace qland {

class config_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raw parsed file: section -> key -> value (last assignment wins).
using ConfigMap = std::map<std::string, std::map<std::string, std::string>>;

ConfigMap parse_config_text(const std::string& text);
ConfigMap parse_config_file(const std::string& path);

struct ExperimentConfig {
  Gauge gauge = Gauge::landau;
  double B0 = 1.0;
  TrigPoly f;                     // preset name or coefficient list
  std::string f_name = "sin";
  std::vector<double> eps_list{1e-2};
  std::vector<double> omega_list{2.4};
  // schedule overrides
  double sigma0 = 1.0;
  int M_max = 12;
  // oracle parameters
  double T = 2e4;
  double dt = 0.0;                // 0: choose from the fast scales
  Vec4 x0{0.0, 0.0, 1.0, 0.0};
  // measure parameters
  int n_samples = 2000;
  std::uint64_t seed = 1;
  int jobs = 1;
  bool emit_generator = false;
  std::string out_dir = "out";
};

/// Validates against module preconditions; throws config_error with the
/// offending key.
ExperimentConfig experiment_config(const ConfigMap& raw);
ExperimentConfig load_experiment_config(const std::string& path);

}  // namespace qland

#endif
