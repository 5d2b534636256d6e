#include "pradar/oracles.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "pradar/model.hpp"

namespace pradar::oracles {

GridResult grid_phase_oracle(const std::function<double(double)>& evaluate,
                             int n_grid) {
  if (n_grid < 2)
    throw std::invalid_argument("grid_phase_oracle: n_grid must be >= 2");
  GridResult best{0.0, evaluate(0.0)};
  for (int k = 1; k < n_grid; ++k) {
    const double phase = kTwoPi * k / n_grid;
    const double value = evaluate(phase);
    if (value > best.best_value) {
      best.best_phase = phase;
      best.best_value = value;
    }
  }
  return best;
}

namespace {

// Effective channel for a single draw of (theta, alpha): entrywise
// alpha * [b a^H]_mn * e_m^H Psi f_n. Transcribed independently of the
// production coupling-matrix code on purpose.
ComplexMatrix effective_channel(const SceneConfig& config,
                                const Eigen::Matrix2d& psi,
                                const Design& design, double theta,
                                Complex alpha) {
  const ComplexVector a = model::steering(config, theta, model::Side::Tx);
  const ComplexVector b = model::steering(config, theta, model::Side::Rx);
  ComplexMatrix g(config.n_rx, config.n_tx);
  for (int m = 0; m < config.n_rx; ++m) {
    const Vector2c e = model::pfv_rx(design.phi(m));
    const Vector2c pe = psi.cast<Complex>() * e;
    for (int n = 0; n < config.n_tx; ++n) {
      const Vector2c f = model::pfv_tx(design.xi(n));
      g(m, n) = alpha * b(m) * std::conj(a(n)) * pe.dot(f);
    }
  }
  return g;
}

double log_likelihood_core(const ComplexMatrix& y, const ComplexMatrix& g,
                           const ComplexMatrix& x, double noise_power) {
  // Up to the constant -M L ln(pi sigma^2), which cancels in differences.
  return -(y - g * x).squaredNorm() / noise_power;
}

}  // namespace

McFisherResult mc_fisher_theta(const SceneConfig& config,
                               const PriorModel& prior, const Design& design,
                               int n_mc, double fd_step, std::uint64_t seed) {
  if (n_mc < 1) throw std::invalid_argument("mc_fisher_theta: n_mc must be >= 1");
  if (!(fd_step > 0.0))
    throw std::invalid_argument("mc_fisher_theta: fd_step must be > 0");
  validate_scene(config);
  validate_prior(prior);

  // Probing matrix realization: the covariance's scaled strongest
  // eigenvector repeated across all samples, so that (1/L) X X^H = R_X.
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(design.r_x);
  const Eigen::Index top = design.r_x.rows() - 1;
  const ComplexVector x_col = std::sqrt(std::max(0.0, es.eigenvalues()(top))) *
                              es.eigenvectors().col(top);
  ComplexMatrix x(config.n_tx, config.n_samples);
  for (int l = 0; l < config.n_samples; ++l) x.col(l) = x_col;

  const Eigen::Matrix2d psi = model::depolarization(config.xpd_inv);
  const double noise_power = config.noise_power_w;
  const double noise_sd = std::sqrt(noise_power / 2.0);
  const double alpha_sd = std::sqrt(prior.alpha_var);

  std::mt19937_64 rng(seed);
  std::vector<double> weights;
  weights.reserve(prior.components.size());
  for (const auto& c : prior.components) weights.push_back(c.weight);
  std::discrete_distribution<int> component(weights.begin(), weights.end());
  std::normal_distribution<double> normal(0.0, 1.0);

  long double sum_sq = 0.0L, sum_quad = 0.0L;
  long double sum_xr = 0.0L, sum_xr_sq = 0.0L;
  long double sum_xi = 0.0L, sum_xi_sq = 0.0L;

  for (int draw = 0; draw < n_mc; ++draw) {
    const auto& comp = prior.components[component(rng)];
    const double theta = comp.mean + std::sqrt(comp.variance) * normal(rng);
    const Complex alpha(alpha_sd * normal(rng), alpha_sd * normal(rng));

    const ComplexMatrix g_unit =
        effective_channel(config, psi, design, theta, Complex(1.0, 0.0));
    const ComplexMatrix g = alpha * g_unit;
    ComplexMatrix y = g * x;
    for (Eigen::Index j = 0; j < y.cols(); ++j)
      for (Eigen::Index i = 0; i < y.rows(); ++i)
        y(i, j) += Complex(noise_sd * normal(rng), noise_sd * normal(rng));

    const ComplexMatrix g_plus =
        effective_channel(config, psi, design, theta + fd_step, alpha);
    const ComplexMatrix g_minus =
        effective_channel(config, psi, design, theta - fd_step, alpha);
    const double score_theta =
        (log_likelihood_core(y, g_plus, x, noise_power) -
         log_likelihood_core(y, g_minus, x, noise_power)) /
        (2.0 * fd_step);
    if (!std::isfinite(score_theta))
      throw std::runtime_error("mc_fisher_theta: non-finite likelihood");

    // The channel is linear in alpha, so the alpha scores come out in
    // closed form from the residual.
    const ComplexMatrix residual = y - g * x;
    const Complex inner = (g_unit * x).cwiseProduct(residual.conjugate()).sum();
    const double score_alpha_re = 2.0 / noise_power * std::real(inner);
    const double score_alpha_im = -2.0 / noise_power * std::imag(inner);

    const double sq = score_theta * score_theta;
    sum_sq += sq;
    sum_quad += static_cast<long double>(sq) * sq;
    const double xr = score_theta * score_alpha_re;
    const double xim = score_theta * score_alpha_im;
    sum_xr += xr;
    sum_xr_sq += static_cast<long double>(xr) * xr;
    sum_xi += xim;
    sum_xi_sq += static_cast<long double>(xim) * xim;
  }

  auto moments = [n_mc](long double sum, long double sum_sq_) {
    const double mean = static_cast<double>(sum / n_mc);
    double se = 0.0;
    if (n_mc > 1) {
      const double var = std::max(
          0.0, static_cast<double>((sum_sq_ - sum * sum / n_mc) / (n_mc - 1)));
      se = std::sqrt(var / n_mc);
    }
    return std::pair<double, double>(mean, se);
  };

  McFisherResult out;
  std::tie(out.estimate, out.std_error) = moments(sum_sq, sum_quad);
  std::tie(out.cross_re, out.cross_re_se) = moments(sum_xr, sum_xr_sq);
  std::tie(out.cross_im, out.cross_im_se) = moments(sum_xi, sum_xi_sq);
  return out;
}

ComplexMatrix random_feasible_covariance(int n, double power,
                                         std::uint64_t seed) {
  if (n < 1)
    throw std::invalid_argument("random_feasible_covariance: n must be >= 1");
  if (!(power > 0.0))
    throw std::invalid_argument("random_feasible_covariance: power must be > 0");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix z(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) z(i, j) = Complex(normal(rng), normal(rng));
  ComplexMatrix r = z * z.adjoint();
  r = Complex(0.5, 0.0) * (r + r.adjoint().eval());
  r *= power / r.real().trace();
  return r;
}

}  // namespace pradar::oracles
