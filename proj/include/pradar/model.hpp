#pragma once

#include "pradar/quadrature.hpp"
#include "pradar/types.hpp"

namespace pradar::model {

enum class Side { Tx, Rx };

/// ULA steering vector. Entry n (1-based) is
/// exp(-j * pi * (d/lambda) * (N - 2n + 1) * sin(theta)); unit modulus.
ComplexVector steering(const SceneConfig& config, double theta, Side side);

/// Elementwise derivative of the steering vector with respect to theta.
ComplexVector steering_derivative(const SceneConfig& config, double theta,
                                  Side side);

/// Transmit polarforming vector (1/sqrt(2)) * [1, exp(j*xi)]^T.
Vector2c pfv_tx(double xi);

/// Receive polarforming vector [1, exp(j*phi)]^T.
Vector2c pfv_rx(double phi);

/// Block-diagonal stack of per-antenna transmit PFVs, 2N x N.
ComplexMatrix pfm_tx(const RealVector& xi);

/// Block-diagonal stack of per-antenna receive PFVs, 2M x M.
ComplexMatrix pfm_rx(const RealVector& phi);

/// Depolarization coupling matrix (1/sqrt(1+chi)) * [[1, sqrt(chi)], [sqrt(chi), 1]].
Eigen::Matrix2d depolarization(double chi);

double gmm_pdf(const PriorModel& prior, double theta);

/// d ln p / d theta; defined as 0 where the density underflows to 0.
double gmm_score(const PriorModel& prior, double theta);

/// Integrates the prior-averaged channel matrices and the prior Fisher term.
PrecomputedScene precompute(const SceneConfig& config, const PriorModel& prior,
                            const numerics::QuadratureRule& rule);

}  // namespace pradar::model
