#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace pradar {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using Matrix2c = Eigen::Matrix2cd;
using Vector2c = Eigen::Vector2cd;
using RealVector = Eigen::VectorXd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Wraps an angle to [0, 2*pi).
double wrap_phase(double x);

/// Array geometry, sample budget, power and depolarization parameters of one scene.
struct SceneConfig {
  int n_tx = 1;                ///< transmit antennas (N)
  int n_rx = 1;                ///< receive antennas (M)
  double spacing_ratio = 0.5;  ///< element spacing over wavelength (d/lambda)
  int n_samples = 1;           ///< probing samples (L)
  double power_w = 1.0;        ///< transmit power budget, watts
  double noise_power_w = 1.0;  ///< receiver noise power, watts
  double xpd_inv = 0.0;        ///< inverse cross-polarization discrimination (chi)
};

/// Throws std::invalid_argument naming the offending field.
void validate_scene(const SceneConfig& config);

struct PriorComponent {
  double weight = 1.0;
  double mean = 0.0;      // radians
  double variance = 1.0;  // radians^2
};

/// Gaussian-mixture prior on the target angle plus the zero-mean
/// circularly-symmetric complex-Gaussian model of the reflection coefficient.
/// alpha ~ CN(0, 2*alpha_var), i.e. each of Re/Im has variance alpha_var.
struct PriorModel {
  std::vector<PriorComponent> components;
  double alpha_var = 1.0;
};

void validate_prior(const PriorModel& prior);

/// The optimization variables: per-antenna phase shifts and the transmit
/// sample covariance matrix.
struct Design {
  RealVector xi;       ///< transmit phase shifts, length N, each in [0, 2*pi)
  RealVector phi;      ///< receive phase shifts, length M, each in [0, 2*pi)
  ComplexMatrix r_x;   ///< transmit sample covariance, N x N
};

/// Wraps phases into [0, 2*pi) and checks the covariance invariants
/// (Hermitian within 1e-10, PSD within -1e-9*trace, trace <= P + 1e-9).
Design make_design(RealVector xi, RealVector phi, ComplexMatrix r_x,
                   const SceneConfig& config);

void validate_design(const Design& design, const SceneConfig& config);

/// Everything integrated over the angle prior once per scene, shared
/// read-only by the optimizer, the benchmark schemes and the sweeps.
struct PrecomputedScene {
  ComplexMatrix a1;       ///< M x N prior average of db*a^H + b*da^H
  ComplexMatrix a2;       ///< M x N prior average of b*a^H
  Eigen::Matrix2d psi;    ///< 2 x 2 depolarization coupling matrix
  double gamma = 0.0;     ///< E[|alpha|^2] = 2*alpha_var
  double prior_fi = 0.0;  ///< E[(d ln p_Theta / d theta)^2]
};

}  // namespace pradar
