#include "pradar/experiment.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace pradar::io {

namespace {

using nlohmann::json;

const json& require(const json& parent, const std::string& key,
                    const std::string& path) {
  auto it = parent.find(key);
  if (it == parent.end())
    throw ConfigError(path.empty() ? key : path + "." + key, "missing field");
  return *it;
}

double as_number(const json& value, const std::string& path) {
  if (!value.is_number())
    throw ConfigError(path, "expected a number");
  return value.get<double>();
}

int as_int(const json& value, const std::string& path) {
  if (!value.is_number_integer())
    throw ConfigError(path, "expected an integer");
  return value.get<int>();
}

bool as_bool(const json& value, const std::string& path) {
  if (!value.is_boolean()) throw ConfigError(path, "expected a boolean");
  return value.get<bool>();
}

std::string as_string(const json& value, const std::string& path) {
  if (!value.is_string()) throw ConfigError(path, "expected a string");
  return value.get<std::string>();
}

}  // namespace

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double watts_to_dbm(double watts) {
  return 10.0 * std::log10(watts) + 30.0;
}

ExperimentConfig parse_experiment_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError("<document>", std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("<document>", "expected an object");

  ExperimentConfig config;

  const json& scene = require(doc, "scene", "");
  config.scene.n_tx = as_int(require(scene, "n_tx", "scene"), "scene.n_tx");
  config.scene.n_rx = as_int(require(scene, "n_rx", "scene"), "scene.n_rx");
  config.scene.spacing_ratio = as_number(
      require(scene, "spacing_ratio", "scene"), "scene.spacing_ratio");
  config.scene.n_samples =
      as_int(require(scene, "n_samples", "scene"), "scene.n_samples");
  config.scene.power_w = dbm_to_watts(
      as_number(require(scene, "power_dbm", "scene"), "scene.power_dbm"));
  config.scene.noise_power_w = as_number(
      require(scene, "noise_power_w", "scene"), "scene.noise_power_w");
  config.scene.xpd_inv =
      as_number(require(scene, "xpd_inv", "scene"), "scene.xpd_inv");
  try {
    validate_scene(config.scene);
  } catch (const std::invalid_argument& e) {
    throw ConfigError("scene", e.what());
  }

  const json& prior = require(doc, "prior", "");
  const json& components = require(prior, "components", "prior");
  if (!components.is_array() || components.empty())
    throw ConfigError("prior.components", "expected a non-empty array");
  for (std::size_t k = 0; k < components.size(); ++k) {
    const std::string path = "prior.components[" + std::to_string(k) + "]";
    const json& c = components[k];
    if (!c.is_object()) throw ConfigError(path, "expected an object");
    PriorComponent pc;
    pc.weight = as_number(require(c, "weight", path), path + ".weight");
    pc.mean = as_number(require(c, "mean", path), path + ".mean");
    pc.variance = as_number(require(c, "variance", path), path + ".variance");
    config.prior.components.push_back(pc);
  }
  config.prior.alpha_var =
      as_number(require(prior, "alpha_var", "prior"), "prior.alpha_var");
  try {
    validate_prior(config.prior);
  } catch (const std::invalid_argument& e) {
    throw ConfigError("prior", e.what());
  }

  const json& ao = require(doc, "ao", "");
  config.ao.rel_tol = as_number(require(ao, "rel_tol", "ao"), "ao.rel_tol");
  config.ao.max_outer_iter =
      as_int(require(ao, "max_outer_iter", "ao"), "ao.max_outer_iter");
  config.ao.n_restarts =
      as_int(require(ao, "n_restarts", "ao"), "ao.n_restarts");
  config.ao.rng_seed = static_cast<std::uint64_t>(
      as_int(require(ao, "rng_seed", "ao"), "ao.rng_seed"));
  if (!(config.ao.rel_tol > 0.0))
    throw ConfigError("ao.rel_tol", "must be > 0");
  if (config.ao.max_outer_iter < 1)
    throw ConfigError("ao.max_outer_iter", "must be >= 1");
  if (config.ao.n_restarts < 1)
    throw ConfigError("ao.n_restarts", "must be >= 1");

  const json& schemes_json = require(doc, "schemes", "");
  if (!schemes_json.is_array())
    throw ConfigError("schemes", "expected an array of scheme names");
  for (std::size_t i = 0; i < schemes_json.size(); ++i) {
    const std::string path = "schemes[" + std::to_string(i) + "]";
    try {
      config.scheme_list.push_back(
          schemes::parse_scheme(as_string(schemes_json[i], path)));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(path, e.what());
    }
  }

  const json& sweep = require(doc, "snr_sweep_db", "");
  if (!sweep.is_array())
    throw ConfigError("snr_sweep_db", "expected an array of numbers");
  for (std::size_t i = 0; i < sweep.size(); ++i)
    config.snr_sweep_db.push_back(
        as_number(sweep[i], "snr_sweep_db[" + std::to_string(i) + "]"));

  const json& grid = require(doc, "beampattern_grid", "");
  config.beampattern_grid.theta_min = as_number(
      require(grid, "theta_min", "beampattern_grid"),
      "beampattern_grid.theta_min");
  config.beampattern_grid.theta_max = as_number(
      require(grid, "theta_max", "beampattern_grid"),
      "beampattern_grid.theta_max");
  config.beampattern_grid.n_points =
      as_int(require(grid, "n_points", "beampattern_grid"),
             "beampattern_grid.n_points");
  if (config.beampattern_grid.n_points < 2)
    throw ConfigError("beampattern_grid.n_points", "must be >= 2");
  if (!(config.beampattern_grid.theta_max > config.beampattern_grid.theta_min))
    throw ConfigError("beampattern_grid.theta_max",
                      "must exceed beampattern_grid.theta_min");

  if (doc.contains("verify")) {
    const json& verify = doc["verify"];
    if (!verify.is_object()) throw ConfigError("verify", "expected an object");
    if (verify.contains("n_mc"))
      config.verify.n_mc = as_int(verify["n_mc"], "verify.n_mc");
    if (verify.contains("fd_step"))
      config.verify.fd_step = as_number(verify["fd_step"], "verify.fd_step");
    if (verify.contains("seed"))
      config.verify.seed =
          static_cast<std::uint64_t>(as_int(verify["seed"], "verify.seed"));
    if (config.verify.n_mc < 100)
      throw ConfigError("verify.n_mc", "must be >= 100");
    if (!(config.verify.fd_step > 0.0))
      throw ConfigError("verify.fd_step", "must be > 0");
  }

  if (doc.contains("quadrature_nodes")) {
    config.quadrature_nodes =
        as_int(doc["quadrature_nodes"], "quadrature_nodes");
    if (config.quadrature_nodes < 2)
      throw ConfigError("quadrature_nodes", "must be >= 2");
  }
  if (doc.contains("random_phase_draws")) {
    config.random_phase_draws =
        as_int(doc["random_phase_draws"], "random_phase_draws");
    if (config.random_phase_draws < 1)
      throw ConfigError("random_phase_draws", "must be >= 1");
  }
  if (doc.contains("no_pra_depolarization_loss"))
    config.no_pra_depolarization_loss = as_bool(
        doc["no_pra_depolarization_loss"], "no_pra_depolarization_loss");
  if (doc.contains("beampattern_polarization_factor"))
    config.beampattern_polarization_factor =
        as_bool(doc["beampattern_polarization_factor"],
                "beampattern_polarization_factor");
  if (doc.contains("output_dir"))
    config.output_dir = as_string(doc["output_dir"], "output_dir");

  return config;
}

ExperimentConfig load_experiment_config(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw ConfigError("<file>", "cannot open config file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_experiment_config(buffer.str());
}

}  // namespace pradar::io
