#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pradar/types.hpp"

namespace pradar::opt {

struct AoSettings {
  double rel_tol = 1e-9;
  int max_outer_iter = 200;
  int n_restarts = 8;
  std::uint64_t rng_seed = 0;
};

struct TraceEntry {
  int outer_iter = 0;     // 0 for the initial point
  std::string stage;      // "init", "r_x", "phi_<m>", "xi_<n>" (1-based)
  double objective = 0.0;
  double bcrb = 0.0;
};

enum class Termination { Converged, MaxIters };

struct OptResult {
  Design design;
  std::vector<TraceEntry> trace;
  int outer_iters = 0;
  Termination termination = Termination::Converged;
  bool degenerate = false;  // covariance step hit a zero coupling matrix
  double objective = 0.0;
  double bcrb = 0.0;
};

/// Optimal trace-P covariance for a fixed coupling matrix Q: P times the
/// outer product of the strongest eigenvector of Q^H Q. A zero Q is flagged
/// and mapped to the isotropic (P/N) I.
struct CovarianceUpdate {
  ComplexMatrix r_x;
  bool degenerate = false;
};

CovarianceUpdate optimal_covariance_for_q(const ComplexMatrix& q, double power);

CovarianceUpdate optimal_covariance(const PrecomputedScene& scene,
                                    const SceneConfig& config,
                                    const Design& design);

/// 2x2 Hermitian PSD matrix whose quadratic form in e(phi_m) is the m-th
/// receive antenna's contribution to the objective.
Matrix2c k_matrix(const PrecomputedScene& scene, const Design& design, int m);

/// 2x2 Hermitian matrix whose quadratic form in f(xi_n) carries the full
/// dependence of the objective on xi_n (up to a constant). The transmit
/// antennas are coupled through off-diagonal entries of R_X; those cross
/// terms are folded into V_n at the current iterate so that both
/// sum_n f^H V_n f equals the objective and the maximizer of f^H V_n f over
/// xi_n is the exact block maximizer of the objective.
Matrix2c v_matrix(const PrecomputedScene& scene, const Design& design, int n);

/// Phase maximizing e^H(phi) K e(phi) for Hermitian K: the angle of K(1,0),
/// wrapped to [0, 2*pi). Ties (|K(1,0)| below 1e-15) break to 0.
double update_receive_phase(const Matrix2c& k);

/// Phase maximizing f^H(xi) V f(xi) for Hermitian V; same closed form.
double update_transmit_phase(const Matrix2c& v);

/// Alternating optimization: covariance, all receive phases, all transmit
/// phases, repeated until the relative objective change over one outer
/// iteration drops below rel_tol. Runs n_restarts independent random phase
/// initializations and returns the best. The objective trace is
/// nondecreasing across every sub-update.
OptResult run_ao(const PrecomputedScene& scene, const SceneConfig& config,
                 const AoSettings& settings);

/// Single AO run from a caller-supplied starting design.
OptResult run_ao_from(const PrecomputedScene& scene, const SceneConfig& config,
                      const AoSettings& settings, const Design& initial);

/// Uniform random phases in [0, 2*pi) with an isotropic trace-P covariance.
Design random_design(const PrecomputedScene& scene, const SceneConfig& config,
                     std::uint64_t seed);

/// All-zero phases with an isotropic trace-P covariance.
Design zero_phase_design(const SceneConfig& config);

}  // namespace pradar::opt
