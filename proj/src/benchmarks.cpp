#include "pradar/benchmarks.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "pradar/bcrb.hpp"
#include "pradar/model.hpp"
#include "pradar/numerics.hpp"

namespace pradar::schemes {

namespace {

constexpr double kLeftCircular = kPi / 2.0;
constexpr double kRightCircular = 3.0 * kPi / 2.0;

// Coupling matrix for arbitrary per-antenna polarization vectors:
// q_mn = e_m^H Psi [A1]_mn f_n.
ComplexMatrix q_from_pfvs(const PrecomputedScene& scene,
                          const std::vector<Vector2c>& f_list,
                          const std::vector<Vector2c>& e_list) {
  const Eigen::Index m_rx = scene.a1.rows();
  const Eigen::Index n_tx = scene.a1.cols();
  const Matrix2c psi = scene.psi.cast<Complex>();
  ComplexMatrix q(m_rx, n_tx);
  for (Eigen::Index m = 0; m < m_rx; ++m) {
    const Vector2c p = psi * e_list[m];
    for (Eigen::Index n = 0; n < n_tx; ++n)
      q(m, n) = scene.a1(m, n) * p.dot(f_list[n]);
  }
  return q;
}

SchemeResult covariance_only_result(const PrecomputedScene& scene,
                                    const SceneConfig& config,
                                    const ComplexMatrix& q) {
  const opt::CovarianceUpdate cov =
      opt::optimal_covariance_for_q(q, config.power_w);
  SchemeResult out;
  out.objective = bcrb::trace_quadratic(q, cov.r_x);
  out.bcrb = bcrb::bcrb_from_objective(out.objective, config, scene);
  return out;
}

}  // namespace

std::string scheme_name(SchemeId id) {
  switch (id) {
    case SchemeId::ProposedPra: return "proposed_pra";
    case SchemeId::NoPra: return "no_pra";
    case SchemeId::Spra: return "spra";
    case SchemeId::Cpa: return "cpa";
    case SchemeId::Lpa: return "lpa";
    case SchemeId::Paa: return "paa";
    case SchemeId::RandomPhase: return "random_phase";
  }
  throw std::logic_error("scheme_name: unreachable");
}

SchemeId parse_scheme(const std::string& name) {
  for (SchemeId id :
       {SchemeId::ProposedPra, SchemeId::NoPra, SchemeId::Spra, SchemeId::Cpa,
        SchemeId::Lpa, SchemeId::Paa, SchemeId::RandomPhase}) {
    if (scheme_name(id) == name) return id;
  }
  throw std::invalid_argument("unknown scheme: " + name);
}

SchemeResult solve_no_pra(const PrecomputedScene& scene,
                          const SceneConfig& config,
                          const NoPraOptions& options) {
  ComplexMatrix q = scene.a1;
  if (options.include_depolarization_loss)
    q *= 1.0 / std::sqrt(1.0 + config.xpd_inv);
  return covariance_only_result(scene, config, q);
}

SchemeResult solve_fixed_polarization(const PrecomputedScene& scene,
                                      const SceneConfig& config,
                                      const Vector2c& f_fixed,
                                      const Vector2c& e_fixed) {
  if (f_fixed.norm() > 1.0 + 1e-9)
    throw std::invalid_argument(
        "solve_fixed_polarization: transmit vector norm exceeds 1");
  if (e_fixed.norm() > std::sqrt(2.0) + 1e-9)
    throw std::invalid_argument(
        "solve_fixed_polarization: receive vector norm exceeds sqrt(2)");
  const std::vector<Vector2c> f_list(scene.a1.cols(), f_fixed);
  const std::vector<Vector2c> e_list(scene.a1.rows(), e_fixed);
  return covariance_only_result(scene, config,
                                q_from_pfvs(scene, f_list, e_list));
}

SchemeResult solve_cpa(const PrecomputedScene& scene,
                       const SceneConfig& config) {
  SchemeResult out = solve_fixed_polarization(
      scene, config, model::pfv_tx(kLeftCircular), model::pfv_rx(kLeftCircular));
  // The circular point is inside the phase-shifter feasible set, so hand the
  // equivalent design back for seeding the proposed scheme.
  Design d{RealVector::Constant(config.n_tx, kLeftCircular),
           RealVector::Constant(config.n_rx, kLeftCircular),
           ComplexMatrix()};
  const opt::CovarianceUpdate cov = opt::optimal_covariance(
      scene, config,
      Design{d.xi, d.phi, config.power_w / config.n_tx *
                              ComplexMatrix::Identity(config.n_tx, config.n_tx)});
  d.r_x = cov.r_x;
  out.design = std::move(d);
  return out;
}

SchemeResult solve_lpa(const PrecomputedScene& scene,
                       const SceneConfig& config) {
  return solve_fixed_polarization(scene, config, Vector2c(1.0, 0.0),
                                  Vector2c(1.0, 0.0));
}

namespace {

double pra_quadratic_rx(const Matrix2c& k, double phi) {
  const Vector2c e = model::pfv_rx(phi);
  return std::real(e.dot(k * e));
}

double pra_quadratic_tx(const Matrix2c& v, double xi) {
  const Vector2c f = model::pfv_tx(xi);
  return std::real(f.dot(v * f));
}

opt::OptResult run_spra_single(const PrecomputedScene& scene,
                               const SceneConfig& config,
                               const opt::AoSettings& settings,
                               Design design) {
  opt::OptResult result;
  double obj = bcrb::objective(scene, design);
  result.termination = opt::Termination::MaxIters;
  int iter = 1;
  for (; iter <= settings.max_outer_iter; ++iter) {
    const double obj_start = obj;

    const opt::CovarianceUpdate cov =
        opt::optimal_covariance(scene, config, design);
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

    for (Eigen::Index m = 0; m < design.phi.size(); ++m) {
      const Matrix2c k = opt::k_matrix(scene, design, static_cast<int>(m));
      double candidate = design.phi(m);
      double best = pra_quadratic_rx(k, candidate);
      for (double option : {kLeftCircular, kRightCircular}) {
        const double value = pra_quadratic_rx(k, option);
        if (value > best) {
          best = value;
          candidate = option;
        }
      }
      const double previous = design.phi(m);
      design.phi(m) = candidate;
      const double cand_obj = bcrb::objective(scene, design);
      if (cand_obj >= obj) {
        obj = cand_obj;
      } else {
        design.phi(m) = previous;
      }
    }

    for (Eigen::Index n = 0; n < design.xi.size(); ++n) {
      const Matrix2c v = opt::v_matrix(scene, design, static_cast<int>(n));
      double candidate = design.xi(n);
      double best = pra_quadratic_tx(v, candidate);
      for (double option : {kLeftCircular, kRightCircular}) {
        const double value = pra_quadratic_tx(v, option);
        if (value > best) {
          best = value;
          candidate = option;
        }
      }
      const double previous = design.xi(n);
      design.xi(n) = candidate;
      const double cand_obj = bcrb::objective(scene, design);
      if (cand_obj >= obj) {
        obj = cand_obj;
      } else {
        design.xi(n) = previous;
      }
    }

    const double rel_change =
        (obj - obj_start) / std::max(std::abs(obj), 1e-300);
    if (rel_change < settings.rel_tol) {
      result.termination = opt::Termination::Converged;
      break;
    }
  }
  result.outer_iters = std::min(iter, settings.max_outer_iter);
  result.design = std::move(design);
  result.objective = obj;
  result.bcrb = 0.0;  // filled by the caller
  return result;
}

Design spra_initial_design(const PrecomputedScene& scene,
                           const SceneConfig& config, std::uint64_t seed) {
  Design d = opt::random_design(scene, config, seed);
  auto snap = [](double phase) {
    return phase < kPi ? kLeftCircular : kRightCircular;
  };
  for (Eigen::Index n = 0; n < d.xi.size(); ++n) d.xi(n) = snap(d.xi(n));
  for (Eigen::Index m = 0; m < d.phi.size(); ++m) d.phi(m) = snap(d.phi(m));
  return d;
}

}  // namespace

SchemeResult solve_spra(const PrecomputedScene& scene,
                        const SceneConfig& config,
                        const opt::AoSettings& settings) {
  const int restarts = std::max(1, settings.n_restarts);
  opt::OptResult best;
  bool have_best = false;
  auto consider = [&](Design initial) {
    opt::OptResult run =
        run_spra_single(scene, config, settings, std::move(initial));
    if (!have_best || run.objective > best.objective) {
      best = std::move(run);
      have_best = true;
    }
  };
  for (int r = 0; r < restarts; ++r)
    consider(spra_initial_design(scene, config, numerics::derive_stream_seed(settings.rng_seed, r)));
  // The all-left-circular state is feasible here; starting from it makes the
  // switchable scheme dominate the fixed circular one.
  consider(Design{RealVector::Constant(config.n_tx, kLeftCircular),
                  RealVector::Constant(config.n_rx, kLeftCircular),
                  ComplexMatrix(config.power_w / config.n_tx *
                                ComplexMatrix::Identity(config.n_tx,
                                                        config.n_tx))});
  SchemeResult out;
  out.objective = best.objective;
  out.bcrb = bcrb::bcrb_from_objective(best.objective, config, scene);
  out.design = std::move(best.design);
  return out;
}

double paa_angle_update(const Matrix2c& k) {
  const Eigen::Matrix2d s =
      0.5 * (k.real() + k.real().transpose());
  // Direction of the strongest eigenvector of a 2x2 symmetric matrix.
  double angle = 0.5 * std::atan2(2.0 * s(0, 1), s(0, 0) - s(1, 1));
  if (angle < 0.0) angle += kPi;
  if (angle >= kPi) angle -= kPi;
  return angle;
}

namespace {

struct PaaState {
  RealVector zeta;  // transmit polarization angles
  RealVector eta;   // receive polarization angles
  ComplexMatrix r_x;
};

Vector2c paa_vec(double angle) {
  return {Complex(std::cos(angle), 0.0), Complex(std::sin(angle), 0.0)};
}

std::vector<Vector2c> paa_vecs(const RealVector& angles) {
  std::vector<Vector2c> out(angles.size());
  for (Eigen::Index i = 0; i < angles.size(); ++i) out[i] = paa_vec(angles(i));
  return out;
}

double paa_objective(const PrecomputedScene& scene, const PaaState& state) {
  return bcrb::trace_quadratic(
      q_from_pfvs(scene, paa_vecs(state.zeta), paa_vecs(state.eta)),
      state.r_x);
}

// Maximize c0 + c1 cos(2z) + c2 sin(2z) + c3 cos(z) + c4 sin(z): dense grid
// plus a few Newton steps. The quadratic part alone would be an eigenvector
// problem, but the coupling to the other transmit antennas adds the c3/c4
// terms, which break the u/-u symmetry.
double maximize_trig(double c1, double c2, double c3, double c4) {
  auto value = [&](double z) {
    return c1 * std::cos(2.0 * z) + c2 * std::sin(2.0 * z) +
           c3 * std::cos(z) + c4 * std::sin(z);
  };
  auto derivative = [&](double z) {
    return -2.0 * c1 * std::sin(2.0 * z) + 2.0 * c2 * std::cos(2.0 * z) -
           c3 * std::sin(z) + c4 * std::cos(z);
  };
  auto second = [&](double z) {
    return -4.0 * c1 * std::cos(2.0 * z) - 4.0 * c2 * std::sin(2.0 * z) -
           c3 * std::cos(z) - c4 * std::sin(z);
  };
  const int grid = 512;
  double best_z = 0.0;
  double best_v = value(0.0);
  for (int i = 1; i < grid; ++i) {
    const double z = kTwoPi * i / grid;
    const double v = value(z);
    if (v > best_v) {
      best_v = v;
      best_z = z;
    }
  }
  double z = best_z;
  for (int it = 0; it < 8; ++it) {
    const double d2 = second(z);
    if (d2 >= 0.0) break;
    const double step = derivative(z) / d2;
    const double next = z - step;
    if (std::abs(step) > kTwoPi / grid) break;  // left the bracket
    z = next;
    if (std::abs(step) < 1e-14) break;
  }
  if (value(z) >= best_v) best_z = z;
  return wrap_phase(best_z);
}

opt::OptResult run_paa_single(const PrecomputedScene& scene,
                              const SceneConfig& config,
                              const opt::AoSettings& settings, PaaState state) {
  const Matrix2c psi = scene.psi.cast<Complex>();
  opt::OptResult result;
  double obj = paa_objective(scene, state);
  result.termination = opt::Termination::MaxIters;
  int iter = 1;
  for (; iter <= settings.max_outer_iter; ++iter) {
    const double obj_start = obj;

    {
      const opt::CovarianceUpdate cov = opt::optimal_covariance_for_q(
          q_from_pfvs(scene, paa_vecs(state.zeta), paa_vecs(state.eta)),
          config.power_w);
      result.degenerate = result.degenerate || cov.degenerate;
      PaaState candidate = state;
      candidate.r_x = cov.r_x;
      const double cand_obj = paa_objective(scene, candidate);
      if (cand_obj >= obj) {
        state.r_x = std::move(candidate.r_x);
        obj = cand_obj;
      }
    }

    for (Eigen::Index m = 0; m < state.eta.size(); ++m) {
      const auto f_list = paa_vecs(state.zeta);
      ComplexMatrix g(2, state.zeta.size());
      for (Eigen::Index n = 0; n < state.zeta.size(); ++n)
        g.col(n) = scene.a1(m, n) * f_list[n];
      Matrix2c k = psi * (g * state.r_x * g.adjoint()) * psi;
      k = 0.5 * (k + k.adjoint().eval());
      const double previous = state.eta(m);
      state.eta(m) = paa_angle_update(k);
      const double cand_obj = paa_objective(scene, state);
      if (cand_obj >= obj) {
        obj = cand_obj;
      } else {
        state.eta(m) = previous;
      }
    }

    for (Eigen::Index n = 0; n < state.zeta.size(); ++n) {
      const ComplexMatrix q =
          q_from_pfvs(scene, paa_vecs(state.zeta), paa_vecs(state.eta));
      const ComplexVector t = q * state.r_x.col(n);
      const double r_nn = std::real(state.r_x(n, n));
      Eigen::Matrix2d b_quad = Eigen::Matrix2d::Zero();
      Vector2c g_lin = Vector2c::Zero();
      for (Eigen::Index m = 0; m < state.eta.size(); ++m) {
        const Vector2c p = psi * paa_vec(state.eta(m));
        b_quad += (r_nn * std::norm(scene.a1(m, n))) *
                  (p * p.adjoint()).real();
        g_lin += std::conj(scene.a1(m, n)) * (t(m) - q(m, n) * r_nn) * p;
      }
      const double c1 = 0.5 * (b_quad(0, 0) - b_quad(1, 1));
      const double c2 = 0.5 * (b_quad(0, 1) + b_quad(1, 0));
      const double c3 = 2.0 * std::real(g_lin(0));
      const double c4 = 2.0 * std::real(g_lin(1));
      const double previous = state.zeta(n);
      state.zeta(n) = maximize_trig(c1, c2, c3, c4);
      const double cand_obj = paa_objective(scene, state);
      if (cand_obj >= obj) {
        obj = cand_obj;
      } else {
        state.zeta(n) = previous;
      }
    }

    const double rel_change =
        (obj - obj_start) / std::max(std::abs(obj), 1e-300);
    if (rel_change < settings.rel_tol) {
      result.termination = opt::Termination::Converged;
      break;
    }
  }
  result.outer_iters = std::min(iter, settings.max_outer_iter);
  result.objective = obj;
  return result;
}

}  // namespace

SchemeResult solve_paa(const PrecomputedScene& scene,
                       const SceneConfig& config,
                       const opt::AoSettings& settings) {
  const int restarts = std::max(1, settings.n_restarts);
  opt::OptResult best;
  bool have_best = false;
  for (int r = 0; r < restarts; ++r) {
    std::mt19937_64 rng(numerics::derive_stream_seed(settings.rng_seed, 0x9AA + r));
    std::uniform_real_distribution<double> uniform(0.0, kTwoPi);
    PaaState state;
    state.zeta = RealVector(config.n_tx);
    state.eta = RealVector(config.n_rx);
    for (Eigen::Index n = 0; n < state.zeta.size(); ++n)
      state.zeta(n) = uniform(rng);
    for (Eigen::Index m = 0; m < state.eta.size(); ++m)
      state.eta(m) = uniform(rng);
    state.r_x = config.power_w / config.n_tx *
                ComplexMatrix::Identity(config.n_tx, config.n_tx);
    opt::OptResult run = run_paa_single(scene, config, settings, std::move(state));
    if (!have_best || run.objective > best.objective) {
      best = std::move(run);
      have_best = true;
    }
  }
  SchemeResult out;
  out.objective = best.objective;
  out.bcrb = bcrb::bcrb_from_objective(best.objective, config, scene);
  return out;
}

SchemeResult solve_random_phase(const PrecomputedScene& scene,
                                const SceneConfig& config, int n_draws,
                                std::uint64_t seed) {
  if (n_draws < 1)
    throw std::invalid_argument("solve_random_phase: n_draws must be >= 1");
  double obj_sum = 0.0, obj_sq = 0.0;
  double bcrb_sum = 0.0, bcrb_sq = 0.0;
  for (int d = 0; d < n_draws; ++d) {
    Design design = opt::random_design(scene, config, numerics::derive_stream_seed(seed, d));
    const opt::CovarianceUpdate cov =
        opt::optimal_covariance(scene, config, design);
    design.r_x = cov.r_x;
    const double obj = bcrb::objective(scene, design);
    const double bound = bcrb::bcrb_from_objective(obj, config, scene);
    obj_sum += obj;
    obj_sq += obj * obj;
    bcrb_sum += bound;
    bcrb_sq += bound * bound;
  }
  SchemeResult out;
  out.objective = obj_sum / n_draws;
  out.bcrb = bcrb_sum / n_draws;
  if (n_draws > 1) {
    const double obj_var =
        std::max(0.0, (obj_sq - n_draws * out.objective * out.objective) /
                          (n_draws - 1));
    const double bcrb_var =
        std::max(0.0, (bcrb_sq - n_draws * out.bcrb * out.bcrb) / (n_draws - 1));
    out.objective_se = std::sqrt(obj_var / n_draws);
    out.bcrb_se = std::sqrt(bcrb_var / n_draws);
  }
  return out;
}

SchemeResult solve_proposed(const PrecomputedScene& scene,
                            const SceneConfig& config,
                            const opt::AoSettings& settings,
                            const std::vector<Design>& extra_initials) {
  opt::OptResult best = opt::run_ao(scene, config, settings);
  for (const Design& initial : extra_initials) {
    opt::OptResult run = opt::run_ao_from(scene, config, settings, initial);
    if (run.objective > best.objective) best = std::move(run);
  }
  SchemeResult out;
  out.objective = best.objective;
  out.bcrb = best.bcrb;
  out.design = std::move(best.design);
  return out;
}

std::vector<ComparisonRow> compare_schemes(const PrecomputedScene& scene,
                                           const SceneConfig& config,
                                           const opt::AoSettings& settings,
                                           const std::vector<SchemeId>& ids,
                                           int random_phase_draws,
                                           const NoPraOptions& no_pra) {
  const bool wants_proposed =
      std::find(ids.begin(), ids.end(), SchemeId::ProposedPra) != ids.end();

  std::vector<ComparisonRow> rows;
  rows.reserve(ids.size());

  // Solve the schemes whose solutions seed the proposed optimizer first.
  std::optional<SchemeResult> cpa, spra;
  auto get_cpa = [&]() -> const SchemeResult& {
    if (!cpa) cpa = solve_cpa(scene, config);
    return *cpa;
  };
  auto get_spra = [&]() -> const SchemeResult& {
    if (!spra) spra = solve_spra(scene, config, settings);
    return *spra;
  };

  std::optional<SchemeResult> proposed;
  if (wants_proposed) {
    std::vector<Design> seeds;
    seeds.push_back(opt::zero_phase_design(config));
    if (get_cpa().design) seeds.push_back(*get_cpa().design);
    if (get_spra().design) seeds.push_back(*get_spra().design);
    proposed = solve_proposed(scene, config, settings, seeds);
  }

  for (SchemeId id : ids) {
    switch (id) {
      case SchemeId::ProposedPra:
        rows.push_back({id, *proposed});
        break;
      case SchemeId::NoPra:
        rows.push_back({id, solve_no_pra(scene, config, no_pra)});
        break;
      case SchemeId::Spra:
        rows.push_back({id, get_spra()});
        break;
      case SchemeId::Cpa:
        rows.push_back({id, get_cpa()});
        break;
      case SchemeId::Lpa:
        rows.push_back({id, solve_lpa(scene, config)});
        break;
      case SchemeId::Paa:
        rows.push_back({id, solve_paa(scene, config, settings)});
        break;
      case SchemeId::RandomPhase:
        rows.push_back({id, solve_random_phase(scene, config,
                                               random_phase_draws,
                                               numerics::derive_stream_seed(settings.rng_seed,
                                                        0xA11))});
        break;
    }
  }
  return rows;
}

}  // namespace pradar::schemes
