#pragma once

#include <cstdint>
#include <functional>

#include "pradar/types.hpp"

namespace pradar::oracles {

// Independent brute-force and statistical verifiers. These share no code
// paths with the operations they check; formulas are transcribed separately
// on purpose.

struct GridResult {
  double best_phase = 0.0;
  double best_value = 0.0;
};

/// Exhaustive maximum of evaluate over the uniform grid {2*pi*k/n_grid}.
GridResult grid_phase_oracle(const std::function<double(double)>& evaluate,
                             int n_grid);

struct McFisherResult {
  double estimate = 0.0;      ///< sample mean of (d ln f / d theta)^2
  double std_error = 0.0;
  double cross_re = 0.0;      ///< sample mean of d_theta ln f * d_alphaR ln f
  double cross_re_se = 0.0;
  double cross_im = 0.0;      ///< sample mean of d_theta ln f * d_alphaI ln f
  double cross_im_se = 0.0;
};

/// Monte Carlo estimate of the observation Fisher information on theta.
///
/// Draws (theta, alpha) from the prior and echoes from the signal model,
/// differentiates the closed-form log-likelihood by central differences in
/// theta, and averages the squared score. The probing matrix realization is
/// the scaled strongest-eigenvector column repeated across all samples,
/// which reproduces the given rank-one covariance. Also accumulates the
/// theta-alpha cross moments used to check that the cross information
/// vanishes. Intended for small instances (n_tx, n_rx <= 4, few samples).
McFisherResult mc_fisher_theta(const SceneConfig& config,
                               const PriorModel& prior, const Design& design,
                               int n_mc, double fd_step, std::uint64_t seed);

/// Random Hermitian PSD matrix with trace exactly equal to power.
ComplexMatrix random_feasible_covariance(int n, double power,
                                         std::uint64_t seed);

}  // namespace pradar::oracles
