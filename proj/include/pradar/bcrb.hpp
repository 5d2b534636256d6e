#pragma once

#include "pradar/types.hpp"

namespace pradar::bcrb {

/// Effective M x N matrix coupling transmit and receive RF chains through the
/// prior-averaged derivative channel: q_mn = e^H(phi_m) Psi [A1]_mn f(xi_n).
ComplexMatrix q_matrix(const PrecomputedScene& scene, const Design& design);

/// Same matrix assembled through the full Kronecker-product route; agrees
/// with q_matrix to machine precision and exists to cross-check it.
ComplexMatrix q_matrix_via_kron(const PrecomputedScene& scene,
                                const Design& design);

/// As q_matrix with the prior-averaged channel A2 in place of A1.
ComplexMatrix o_matrix(const PrecomputedScene& scene, const Design& design);

ComplexMatrix o_matrix_via_kron(const PrecomputedScene& scene,
                                const Design& design);

/// tr(Q R Q^H) for an arbitrary coupling matrix, accumulated in extended
/// precision; the optimizer compares consecutive values at tight slack.
double trace_quadratic(const ComplexMatrix& q, const ComplexMatrix& r_x);

/// tr(Q R_X Q^H); real and nonnegative.
double objective(const PrecomputedScene& scene, const Design& design);

/// Objective as the sum over receive antennas of e^H(phi_m) K_m e(phi_m).
double objective_receive_form(const PrecomputedScene& scene,
                              const Design& design);

/// Objective as the sum over transmit antennas of f^H(xi_n) V_n f(xi_n).
double objective_transmit_form(const PrecomputedScene& scene,
                               const Design& design);

/// Bayesian Fisher information blocks for (theta, alpha_R, alpha_I).
/// The cross block theta-alpha vanishes under the zero-mean reflection
/// coefficient, so the full 3x3 matrix is block-diagonal.
struct Bfim {
  double j_theta_theta = 0.0;  ///< observation information on theta
  double j_alpha_alpha = 0.0;  ///< scalar multiplying I_2 for alpha
  Eigen::Vector3d prior_diag = Eigen::Vector3d::Zero();  ///< prior information
};

Bfim bfim(const PrecomputedScene& scene, const SceneConfig& config,
          const Design& design);

/// 1 / (j_theta_theta + prior_fi); positive, at most 1/prior_fi.
double bcrb_theta(const PrecomputedScene& scene, const SceneConfig& config,
                  const Design& design);

/// Same bound evaluated from an already-computed objective value.
double bcrb_from_objective(double objective_value, const SceneConfig& config,
                           const PrecomputedScene& scene);

}  // namespace pradar::bcrb
