#include "pradar/optimizer.hpp"

#include <cmath>
#include <random>

#include "pradar/bcrb.hpp"
#include "pradar/model.hpp"
#include "pradar/numerics.hpp"

namespace pradar::opt {

namespace {

constexpr double kTieBreak = 1e-15;

}  // namespace

CovarianceUpdate optimal_covariance_for_q(const ComplexMatrix& q,
                                          double power) {
  const Eigen::Index n = q.cols();
  if (q.norm() <= 1e-30) {
    return {ComplexMatrix(power / static_cast<double>(n) *
                          ComplexMatrix::Identity(n, n)),
            true};
  }
  const ComplexMatrix qtq = q.adjoint() * q;
  const numerics::EigenPair top = numerics::top_hermitian_eigenpair(qtq);
  ComplexMatrix r = top.vector * top.vector.adjoint();
  r = Complex(0.5, 0.0) * (r + r.adjoint().eval());
  r *= power / r.real().trace();  // trace exactly equal to the budget
  return {r, false};
}

CovarianceUpdate optimal_covariance(const PrecomputedScene& scene,
                                    const SceneConfig& config,
                                    const Design& design) {
  return optimal_covariance_for_q(bcrb::q_matrix(scene, design),
                                  config.power_w);
}

Matrix2c k_matrix(const PrecomputedScene& scene, const Design& design, int m) {
  const Eigen::Index n_tx = design.xi.size();
  const Matrix2c psi = scene.psi.cast<Complex>();
  // Columns of G are the transmit PFVs scaled by the m-th row of the
  // averaged channel.
  ComplexMatrix g(2, n_tx);
  for (Eigen::Index n = 0; n < n_tx; ++n)
    g.col(n) = scene.a1(m, n) * model::pfv_tx(design.xi(n));
  Matrix2c k = psi * (g * design.r_x * g.adjoint()) * psi;
  return 0.5 * (k + k.adjoint().eval());
}

Matrix2c v_matrix(const PrecomputedScene& scene, const Design& design, int n) {
  const Eigen::Index m_rx = design.phi.size();
  const Matrix2c psi = scene.psi.cast<Complex>();
  const ComplexMatrix q = bcrb::q_matrix(scene, design);
  const ComplexVector t = q * design.r_x.col(n);  // (Q R_X) column n
  const double r_nn = std::real(design.r_x(n, n));

  Matrix2c b = Matrix2c::Zero();
  Vector2c g = Vector2c::Zero();
  for (Eigen::Index m = 0; m < m_rx; ++m) {
    const Vector2c p = psi * model::pfv_rx(design.phi(m));
    b += (r_nn * std::norm(scene.a1(m, n))) * (p * p.adjoint());
    g += std::conj(scene.a1(m, n)) * (t(m) - q(m, n) * r_nn) * p;
  }

  // Cross terms with the other transmit antennas enter linearly in f(xi_n).
  // A quadratic form cannot carry a linear term, so it is folded in: the
  // off-diagonal gets the full-weight coefficient (this makes the angle of
  // V(1,0) the exact block maximizer) and the diagonal is shifted so the
  // form evaluated at the current xi_n reproduces the antenna's exact share
  // of the objective.
  const double sqrt2 = std::sqrt(2.0);
  const Complex rot(std::cos(design.xi(n)), -std::sin(design.xi(n)));
  const double diag =
      (std::real(g(0)) - std::real(g(1) * rot)) / sqrt2;
  Matrix2c v = b;
  v(0, 0) += diag;
  v(1, 1) += diag;
  v(1, 0) += sqrt2 * g(1);
  v(0, 1) += sqrt2 * std::conj(g(1));
  return v;
}

double update_receive_phase(const Matrix2c& k) {
  const Complex c = k(1, 0);
  if (std::abs(c) < kTieBreak) return 0.0;
  return wrap_phase(std::arg(c));
}

double update_transmit_phase(const Matrix2c& v) {
  const Complex c = v(1, 0);
  if (std::abs(c) < kTieBreak) return 0.0;
  return wrap_phase(std::arg(c));
}

Design random_design(const PrecomputedScene& scene, const SceneConfig& config,
                     std::uint64_t seed) {
  (void)scene;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(0.0, kTwoPi);
  RealVector xi(config.n_tx), phi(config.n_rx);
  for (Eigen::Index n = 0; n < xi.size(); ++n) xi(n) = wrap_phase(uniform(rng));
  for (Eigen::Index m = 0; m < phi.size(); ++m)
    phi(m) = wrap_phase(uniform(rng));
  ComplexMatrix r = config.power_w / config.n_tx *
                    ComplexMatrix::Identity(config.n_tx, config.n_tx);
  return Design{std::move(xi), std::move(phi), std::move(r)};
}

Design zero_phase_design(const SceneConfig& config) {
  ComplexMatrix r = config.power_w / config.n_tx *
                    ComplexMatrix::Identity(config.n_tx, config.n_tx);
  return Design{RealVector::Zero(config.n_tx), RealVector::Zero(config.n_rx),
                std::move(r)};
}

namespace {

// One full AO pass from a given starting point. Every sub-update applies
// its closed-form candidate only if the re-evaluated objective does not
// drop; the incumbent is always feasible, so the recorded trace is
// nondecreasing by construction even at floating-point noise level.
//
// Per outer iteration: one top eigenpair of an N x N matrix, M receive
// updates of O(N^2) each and N transmit updates of O(M N) each after an
// O(M N^2) refresh.
OptResult run_single(const PrecomputedScene& scene, const SceneConfig& config,
                     const AoSettings& settings, Design design) {
  OptResult result;
  double obj = bcrb::objective(scene, design);
  auto record = [&](int iter, std::string stage) {
    result.trace.push_back(
        {iter, std::move(stage), obj,
         bcrb::bcrb_from_objective(obj, config, scene)});
  };
  record(0, "init");

  result.termination = Termination::MaxIters;
  int iter = 1;
  for (; iter <= settings.max_outer_iter; ++iter) {
    const double obj_start = obj;

    CovarianceUpdate cov = optimal_covariance(scene, config, design);
    result.degenerate = result.degenerate || cov.degenerate;
    {
      Design candidate = design;
      candidate.r_x = cov.r_x;
      const double cand_obj = bcrb::objective(scene, candidate);
      if (cand_obj >= obj) {
        design.r_x = std::move(candidate.r_x);
        obj = cand_obj;
      }
    }
    record(iter, "r_x");

    for (Eigen::Index m = 0; m < design.phi.size(); ++m) {
      const Matrix2c k = k_matrix(scene, design, static_cast<int>(m));
      const double candidate = update_receive_phase(k);
      const double previous = design.phi(m);
      design.phi(m) = candidate;
      const double cand_obj = bcrb::objective(scene, design);
      if (cand_obj >= obj) {
        obj = cand_obj;
      } else {
        design.phi(m) = previous;
      }
      record(iter, "phi_" + std::to_string(m + 1));
    }

    for (Eigen::Index n = 0; n < design.xi.size(); ++n) {
      const Matrix2c v = v_matrix(scene, design, static_cast<int>(n));
      const double candidate = update_transmit_phase(v);
      const double previous = design.xi(n);
      design.xi(n) = candidate;
      const double cand_obj = bcrb::objective(scene, design);
      if (cand_obj >= obj) {
        obj = cand_obj;
      } else {
        design.xi(n) = previous;
      }
      record(iter, "xi_" + std::to_string(n + 1));
    }

    const double rel_change =
        (obj - obj_start) / std::max(std::abs(obj), 1e-300);
    if (rel_change < settings.rel_tol) {
      result.termination = Termination::Converged;
      break;
    }
  }
  result.outer_iters = std::min(iter, settings.max_outer_iter);
  result.design = std::move(design);
  result.objective = obj;
  result.bcrb = bcrb::bcrb_from_objective(obj, config, scene);
  return result;
}

}  // namespace

OptResult run_ao(const PrecomputedScene& scene, const SceneConfig& config,
                 const AoSettings& settings) {
  const int restarts = std::max(1, settings.n_restarts);
  OptResult best;
  bool have_best = false;
  bool any_degenerate = false;
  for (int r = 0; r < restarts; ++r) {
    Design initial =
        random_design(scene, config,
                      numerics::derive_stream_seed(settings.rng_seed, r));
    OptResult run = run_single(scene, config, settings, std::move(initial));
    any_degenerate = any_degenerate || run.degenerate;
    if (!have_best || run.objective > best.objective) {
      best = std::move(run);
      have_best = true;
    }
  }
  best.degenerate = any_degenerate;
  return best;
}

OptResult run_ao_from(const PrecomputedScene& scene, const SceneConfig& config,
                      const AoSettings& settings, const Design& initial) {
  return run_single(scene, config, settings, initial);
}

}  // namespace pradar::opt
