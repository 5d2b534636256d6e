#include "pradar/model.hpp"

#include <cmath>
#include <stdexcept>

namespace pradar {

double wrap_phase(double x) {
  double y = std::fmod(x, kTwoPi);
  if (y < 0.0) y += kTwoPi;
  if (y >= kTwoPi) y = 0.0;  // fmod can land exactly on 2*pi after the shift
  return y;
}

void validate_scene(const SceneConfig& config) {
  if (config.n_tx < 1) throw std::invalid_argument("scene.n_tx: must be >= 1");
  if (config.n_rx < 1) throw std::invalid_argument("scene.n_rx: must be >= 1");
  if (!(config.spacing_ratio > 0.0) || !std::isfinite(config.spacing_ratio))
    throw std::invalid_argument(
        "scene.spacing_ratio: must be positive and finite");
  if (config.n_samples < 1)
    throw std::invalid_argument("scene.n_samples: must be >= 1");
  if (!(config.power_w > 0.0))
    throw std::invalid_argument("scene.power_w: must be > 0");
  if (!(config.noise_power_w > 0.0))
    throw std::invalid_argument("scene.noise_power_w: must be > 0");
  if (config.xpd_inv < 0.0)
    throw std::invalid_argument("scene.xpd_inv: must be >= 0");
}

void validate_prior(const PriorModel& prior) {
  if (prior.components.empty())
    throw std::invalid_argument("prior.components: need at least one");
  double weight_sum = 0.0;
  for (std::size_t k = 0; k < prior.components.size(); ++k) {
    const auto& c = prior.components[k];
    const std::string where = "prior.components[" + std::to_string(k) + "]";
    if (!(c.weight > 0.0))
      throw std::invalid_argument(where + ".weight: must be > 0");
    if (!std::isfinite(c.mean))
      throw std::invalid_argument(where + ".mean: must be finite");
    if (!(c.variance > 0.0))
      throw std::invalid_argument(where + ".variance: must be > 0");
    weight_sum += c.weight;
  }
  if (std::abs(weight_sum - 1.0) > 1e-12)
    throw std::invalid_argument("prior.components: weights must sum to 1");
  if (!(prior.alpha_var > 0.0))
    throw std::invalid_argument("prior.alpha_var: must be > 0");
}

Design make_design(RealVector xi, RealVector phi, ComplexMatrix r_x,
                   const SceneConfig& config) {
  for (Eigen::Index i = 0; i < xi.size(); ++i) xi(i) = wrap_phase(xi(i));
  for (Eigen::Index i = 0; i < phi.size(); ++i) phi(i) = wrap_phase(phi(i));
  Design d{std::move(xi), std::move(phi), std::move(r_x)};
  validate_design(d, config);
  return d;
}

void validate_design(const Design& design, const SceneConfig& config) {
  if (design.xi.size() != config.n_tx)
    throw std::invalid_argument("design.xi: length must equal scene.n_tx");
  if (design.phi.size() != config.n_rx)
    throw std::invalid_argument("design.phi: length must equal scene.n_rx");
  if (design.r_x.rows() != config.n_tx || design.r_x.cols() != config.n_tx)
    throw std::invalid_argument("design.r_x: must be n_tx x n_tx");
  if ((design.r_x - design.r_x.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument("design.r_x: not Hermitian within 1e-10");
  const double trace = design.r_x.real().trace();
  if (trace > config.power_w + 1e-9)
    throw std::invalid_argument("design.r_x: trace exceeds the power budget");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(design.r_x,
                                                  Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-9 * std::max(trace, 1e-30))
    throw std::invalid_argument("design.r_x: not positive semidefinite");
}

}  // namespace pradar

namespace pradar::model {

namespace {

int side_count(const SceneConfig& config, Side side) {
  return side == Side::Tx ? config.n_tx : config.n_rx;
}

}  // namespace

ComplexVector steering(const SceneConfig& config, double theta, Side side) {
  const int count = side_count(config, side);
  const double s = std::sin(theta);
  ComplexVector v(count);
  for (int i = 0; i < count; ++i) {
    const double phase = -kPi * config.spacing_ratio * (count - 2 * (i + 1) + 1) * s;
    v(i) = Complex(std::cos(phase), std::sin(phase));
  }
  return v;
}

ComplexVector steering_derivative(const SceneConfig& config, double theta,
                                  Side side) {
  const int count = side_count(config, side);
  const double c = std::cos(theta);
  ComplexVector v = steering(config, theta, side);
  for (int i = 0; i < count; ++i) {
    const double factor = -kPi * config.spacing_ratio * (count - 2 * (i + 1) + 1) * c;
    v(i) *= Complex(0.0, factor);
  }
  return v;
}

Vector2c pfv_tx(double xi) {
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  return {Complex(inv_sqrt2, 0.0),
          inv_sqrt2 * Complex(std::cos(xi), std::sin(xi))};
}

Vector2c pfv_rx(double phi) {
  return {Complex(1.0, 0.0), Complex(std::cos(phi), std::sin(phi))};
}

ComplexMatrix pfm_tx(const RealVector& xi) {
  const Eigen::Index n = xi.size();
  ComplexMatrix f = ComplexMatrix::Zero(2 * n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    f.block<2, 1>(2 * i, i) = pfv_tx(xi(i));
  return f;
}

ComplexMatrix pfm_rx(const RealVector& phi) {
  const Eigen::Index m = phi.size();
  ComplexMatrix e = ComplexMatrix::Zero(2 * m, m);
  for (Eigen::Index i = 0; i < m; ++i)
    e.block<2, 1>(2 * i, i) = pfv_rx(phi(i));
  return e;
}

Eigen::Matrix2d depolarization(double chi) {
  if (chi < 0.0)
    throw std::invalid_argument("depolarization: chi must be >= 0");
  const double scale = 1.0 / std::sqrt(1.0 + chi);
  const double cross = std::sqrt(chi);
  Eigen::Matrix2d psi;
  psi << 1.0, cross, cross, 1.0;
  return scale * psi;
}

double gmm_pdf(const PriorModel& prior, double theta) {
  double pdf = 0.0;
  for (const auto& c : prior.components) {
    const double sigma = std::sqrt(c.variance);
    const double z = (theta - c.mean) / sigma;
    pdf += c.weight / (std::sqrt(kTwoPi) * sigma) * std::exp(-0.5 * z * z);
  }
  return pdf;
}

double gmm_score(const PriorModel& prior, double theta) {
  double pdf = 0.0;
  double dpdf = 0.0;
  for (const auto& c : prior.components) {
    const double sigma = std::sqrt(c.variance);
    const double z = (theta - c.mean) / sigma;
    const double g = c.weight / (std::sqrt(kTwoPi) * sigma) * std::exp(-0.5 * z * z);
    pdf += g;
    dpdf += g * (c.mean - theta) / c.variance;
  }
  if (pdf <= 0.0) return 0.0;  // negligible prior mass
  return dpdf / pdf;
}

PrecomputedScene precompute(const SceneConfig& config, const PriorModel& prior,
                            const numerics::QuadratureRule& rule) {
  validate_scene(config);
  validate_prior(prior);
  PrecomputedScene scene;
  scene.a1 = numerics::integrate_matrix(rule, [&](double theta) {
    const ComplexVector a = steering(config, theta, Side::Tx);
    const ComplexVector b = steering(config, theta, Side::Rx);
    const ComplexVector da = steering_derivative(config, theta, Side::Tx);
    const ComplexVector db = steering_derivative(config, theta, Side::Rx);
    const double p = gmm_pdf(prior, theta);
    return ComplexMatrix(p * (db * a.adjoint() + b * da.adjoint()));
  });
  scene.a2 = numerics::integrate_matrix(rule, [&](double theta) {
    const ComplexVector a = steering(config, theta, Side::Tx);
    const ComplexVector b = steering(config, theta, Side::Rx);
    return ComplexMatrix(gmm_pdf(prior, theta) * (b * a.adjoint()));
  });
  scene.psi = depolarization(config.xpd_inv);
  scene.gamma = 2.0 * prior.alpha_var;
  scene.prior_fi = numerics::integrate_scalar(rule, [&](double theta) {
    const double s = gmm_score(prior, theta);
    return s * s * gmm_pdf(prior, theta);
  });
  return scene;
}

}  // namespace pradar::model
