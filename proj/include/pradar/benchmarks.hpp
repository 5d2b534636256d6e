#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pradar/optimizer.hpp"
#include "pradar/types.hpp"

namespace pradar::schemes {

enum class SchemeId {
  ProposedPra,
  NoPra,
  Spra,
  Cpa,
  Lpa,
  Paa,
  RandomPhase,
};

std::string scheme_name(SchemeId id);
SchemeId parse_scheme(const std::string& name);  // throws on unknown name

struct SchemeResult {
  double objective = 0.0;
  double bcrb = 0.0;
  double objective_se = 0.0;  // nonzero only for the random-phase scheme
  double bcrb_se = 0.0;
  std::optional<Design> design;  // absent for schemes outside the PRA family
};

struct NoPraOptions {
  /// When true the scalar channel keeps the 1/sqrt(1+chi) depolarization
  /// loss instead of the default loss-free baseline.
  bool include_depolarization_loss = false;
};

/// Conventional MIMO radar without adjustable polarization: the coupling
/// matrix is the prior-averaged derivative channel itself and only the
/// covariance is optimized.
SchemeResult solve_no_pra(const PrecomputedScene& scene,
                          const SceneConfig& config,
                          const NoPraOptions& options = {});

/// Every antenna's polarization fixed to the given vectors
/// (||f_fixed|| <= 1, ||e_fixed|| <= sqrt(2)); only the covariance is
/// optimized.
SchemeResult solve_fixed_polarization(const PrecomputedScene& scene,
                                      const SceneConfig& config,
                                      const Vector2c& f_fixed,
                                      const Vector2c& e_fixed);

/// Left-handed circular polarization on both sides.
SchemeResult solve_cpa(const PrecomputedScene& scene,
                       const SceneConfig& config);

/// Vertical linear polarization on both sides.
SchemeResult solve_lpa(const PrecomputedScene& scene,
                       const SceneConfig& config);

/// Per-antenna switching between left- and right-handed circular
/// polarization: alternating optimization over the discrete phase sets
/// {pi/2, 3*pi/2} with the closed-form covariance step.
SchemeResult solve_spra(const PrecomputedScene& scene,
                        const SceneConfig& config,
                        const opt::AoSettings& settings);

/// Polarization-agile antennas: real unit polarization vectors
/// [cos, sin] on both sides, optimized by alternating per-antenna angle
/// updates with the closed-form covariance step.
SchemeResult solve_paa(const PrecomputedScene& scene,
                       const SceneConfig& config,
                       const opt::AoSettings& settings);

/// Independent uniform phase draws with the covariance optimized per draw;
/// reports mean and standard error over draws.
SchemeResult solve_random_phase(const PrecomputedScene& scene,
                                const SceneConfig& config, int n_draws,
                                std::uint64_t seed);

/// Full phase-shifter optimization. On top of the random restarts inside
/// run_ao, AO is restarted from each design in extra_initials (typically the
/// fixed-circular point and the switchable-polarization solution); the
/// monotone trace then certifies dominance over those schemes.
SchemeResult solve_proposed(const PrecomputedScene& scene,
                            const SceneConfig& config,
                            const opt::AoSettings& settings,
                            const std::vector<Design>& extra_initials = {});

/// Angle in [0, pi) maximizing u^T Re(K) u over real unit vectors
/// u = [cos, sin]^T: the direction of the strongest eigenvector of the
/// symmetrized real part.
double paa_angle_update(const Matrix2c& k);

struct ComparisonRow {
  SchemeId id;
  SchemeResult result;
};

/// Evaluates the requested schemes on one shared precomputed scene. The
/// proposed scheme is seeded with the zero-phase design, the circular
/// point and the switchable solution so the feasible-set orderings hold
/// deterministically.
std::vector<ComparisonRow> compare_schemes(const PrecomputedScene& scene,
                                           const SceneConfig& config,
                                           const opt::AoSettings& settings,
                                           const std::vector<SchemeId>& ids,
                                           int random_phase_draws,
                                           const NoPraOptions& no_pra = {});

}  // namespace pradar::schemes
