#pragma once

#include <string>
#include <vector>

#include "pradar/experiment.hpp"
#include "pradar/optimizer.hpp"
#include "pradar/types.hpp"

namespace pradar::io {

/// Scene-level state shared by all runners: the quadrature rule and the
/// prior-averaged matrices, built once from the config.
struct PreparedExperiment {
  SceneConfig scene_config;
  PriorModel prior;
  PrecomputedScene scene;
};

PreparedExperiment prepare(const ExperimentConfig& config);

struct OptimizeArtifacts {
  opt::OptResult result;
  std::string trace_csv;
  std::string design_csv;
};

/// Runs the alternating optimization and writes trace.csv and design.csv.
OptimizeArtifacts run_optimize(const ExperimentConfig& config,
                               const std::string& out_dir);

struct BeampatternArtifacts {
  std::string beampattern_csv;
  std::vector<double> thetas;
  std::vector<double> pattern;
  std::vector<double> prior_pdf;
};

/// Optimizes under the config and writes the radiated power pattern
/// a^H(theta) R_X a(theta) / P together with the prior density.
BeampatternArtifacts run_beampattern(const ExperimentConfig& config,
                                     const std::string& out_dir);

struct SweepRow {
  double snr_db = 0.0;
  schemes::SchemeId scheme;
  double objective = 0.0;
  double bcrb = 0.0;
};

struct SweepArtifacts {
  std::string sweep_csv;
  std::vector<SweepRow> rows;
};

/// Evaluates every configured scheme across the received-SNR sweep. The
/// noise power is set to P*L*gamma/snr at each point with P, L, gamma fixed;
/// the scheme designs do not depend on the noise power, so each scheme is
/// solved once and re-scored per point.
SweepArtifacts run_sweep_snr(const ExperimentConfig& config,
                             const std::string& out_dir);

struct CompareArtifacts {
  std::string compare_csv;
  std::vector<schemes::ComparisonRow> rows;
};

/// Evaluates every configured scheme at the config noise power.
CompareArtifacts run_compare(const ExperimentConfig& config,
                             const std::string& out_dir);

struct VerifyCheck {
  std::string name;
  double measured = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

struct VerifyReport {
  std::vector<VerifyCheck> checks;
  std::string report_csv;
  bool all_passed() const;
};

struct VerifyOptions {
  /// Relative corruption applied to the prior-averaged derivative channel
  /// before the analytic-vs-Monte-Carlo comparison. Test hook; keep 0.
  double a1_corruption = 0.0;
};

/// Runs the cross-check suite (Monte Carlo Fisher information, grid-search
/// phase optimality, covariance optimality, quadrature refinement, dual- and
/// triple-path identities) and writes verify_report.csv. Requires a small
/// instance and a narrow prior; rejects configs outside that envelope.
VerifyReport run_verify(const ExperimentConfig& config,
                        const std::string& out_dir,
                        const VerifyOptions& options = {});

}  // namespace pradar::io
