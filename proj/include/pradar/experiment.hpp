#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "pradar/benchmarks.hpp"
#include "pradar/optimizer.hpp"
#include "pradar/types.hpp"

namespace pradar::io {

/// Configuration error carrying the dotted path of the offending field.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);

struct BeampatternGrid {
  double theta_min = 0.0;
  double theta_max = kPi;
  int n_points = 629;
};

struct VerifySettings {
  int n_mc = 200000;
  double fd_step = 1e-5;
  std::uint64_t seed = 7;
};

struct ExperimentConfig {
  SceneConfig scene;
  PriorModel prior;
  opt::AoSettings ao;
  std::vector<schemes::SchemeId> scheme_list;
  std::vector<double> snr_sweep_db;
  BeampatternGrid beampattern_grid;
  VerifySettings verify;
  int quadrature_nodes = 64;
  int random_phase_draws = 100;
  bool no_pra_depolarization_loss = false;
  bool beampattern_polarization_factor = false;
  std::string output_dir = "out";
};

/// Parses a JSON config document. Throws ConfigError naming the offending
/// field on any invalid or missing entry.
ExperimentConfig parse_experiment_config(const std::string& json_text);

ExperimentConfig load_experiment_config(const std::string& path);

}  // namespace pradar::io
