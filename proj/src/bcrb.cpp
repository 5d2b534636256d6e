#include "pradar/bcrb.hpp"

#include <vector>

#include "pradar/model.hpp"
#include "pradar/numerics.hpp"
#include "pradar/optimizer.hpp"

namespace pradar::bcrb {

namespace {

// Psi * e(phi_m) for every receive antenna; e^H Psi f = (Psi e)^H f since
// Psi is real symmetric.
std::vector<Vector2c> coupled_rx_pfvs(const PrecomputedScene& scene,
                                      const Design& design) {
  std::vector<Vector2c> p(design.phi.size());
  for (Eigen::Index m = 0; m < design.phi.size(); ++m)
    p[m] = scene.psi.cast<Complex>() * model::pfv_rx(design.phi(m));
  return p;
}

ComplexMatrix entrywise_coupling(const ComplexMatrix& averaged,
                                 const PrecomputedScene& scene,
                                 const Design& design) {
  const Eigen::Index m_rx = averaged.rows();
  const Eigen::Index n_tx = averaged.cols();
  const auto p = coupled_rx_pfvs(scene, design);
  std::vector<Vector2c> f(n_tx);
  for (Eigen::Index n = 0; n < n_tx; ++n) f[n] = model::pfv_tx(design.xi(n));
  ComplexMatrix q(m_rx, n_tx);
  for (Eigen::Index m = 0; m < m_rx; ++m)
    for (Eigen::Index n = 0; n < n_tx; ++n)
      q(m, n) = averaged(m, n) * p[m].dot(f[n]);
  return q;
}

ComplexMatrix kron_coupling(const ComplexMatrix& averaged,
                            const PrecomputedScene& scene,
                            const Design& design) {
  const ComplexMatrix e = model::pfm_rx(design.phi);
  const ComplexMatrix f = model::pfm_tx(design.xi);
  const ComplexMatrix block =
      numerics::kron(averaged, scene.psi.cast<Complex>());
  return e.adjoint() * block * f;
}

}  // namespace

double trace_quadratic(const ComplexMatrix& q, const ComplexMatrix& r_x) {
  const ComplexMatrix t = q * r_x;
  long double acc = 0.0L;
  for (Eigen::Index j = 0; j < q.cols(); ++j)
    for (Eigen::Index i = 0; i < q.rows(); ++i)
      acc += static_cast<long double>(
          std::real(t(i, j) * std::conj(q(i, j))));
  return static_cast<double>(acc);
}

ComplexMatrix q_matrix(const PrecomputedScene& scene, const Design& design) {
  return entrywise_coupling(scene.a1, scene, design);
}

ComplexMatrix q_matrix_via_kron(const PrecomputedScene& scene,
                                const Design& design) {
  return kron_coupling(scene.a1, scene, design);
}

ComplexMatrix o_matrix(const PrecomputedScene& scene, const Design& design) {
  return entrywise_coupling(scene.a2, scene, design);
}

ComplexMatrix o_matrix_via_kron(const PrecomputedScene& scene,
                                const Design& design) {
  return kron_coupling(scene.a2, scene, design);
}

double objective(const PrecomputedScene& scene, const Design& design) {
  return trace_quadratic(q_matrix(scene, design), design.r_x);
}

double objective_receive_form(const PrecomputedScene& scene,
                              const Design& design) {
  long double acc = 0.0L;
  for (Eigen::Index m = 0; m < design.phi.size(); ++m) {
    const Matrix2c k = opt::k_matrix(scene, design, static_cast<int>(m));
    const Vector2c e = model::pfv_rx(design.phi(m));
    acc += static_cast<long double>(std::real(e.dot(k * e)));
  }
  return static_cast<double>(acc);
}

double objective_transmit_form(const PrecomputedScene& scene,
                               const Design& design) {
  long double acc = 0.0L;
  for (Eigen::Index n = 0; n < design.xi.size(); ++n) {
    const Matrix2c v = opt::v_matrix(scene, design, static_cast<int>(n));
    const Vector2c f = model::pfv_tx(design.xi(n));
    acc += static_cast<long double>(std::real(f.dot(v * f)));
  }
  return static_cast<double>(acc);
}

Bfim bfim(const PrecomputedScene& scene, const SceneConfig& config,
          const Design& design) {
  Bfim out;
  const double noise_scale = 2.0 * config.n_samples / config.noise_power_w;
  out.j_theta_theta = noise_scale * scene.gamma * objective(scene, design);
  out.j_alpha_alpha =
      noise_scale * trace_quadratic(o_matrix(scene, design), design.r_x);
  const double alpha_var = scene.gamma / 2.0;
  out.prior_diag << scene.prior_fi, 1.0 / alpha_var, 1.0 / alpha_var;
  return out;
}

double bcrb_theta(const PrecomputedScene& scene, const SceneConfig& config,
                  const Design& design) {
  return bcrb_from_objective(objective(scene, design), config, scene);
}

double bcrb_from_objective(double objective_value, const SceneConfig& config,
                           const PrecomputedScene& scene) {
  const double j = 2.0 * config.n_samples * scene.gamma /
                   config.noise_power_w * objective_value;
  return 1.0 / (j + scene.prior_fi);
}

}  // namespace pradar::bcrb
