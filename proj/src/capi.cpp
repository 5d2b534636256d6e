#include "pradar.h"

#include <exception>
#include <optional>
#include <string>

#include "pradar/bcrb.hpp"
#include "pradar/experiment.hpp"
#include "pradar/runners.hpp"

struct pradar_ctx {
  pradar::io::ExperimentConfig config;
  std::optional<pradar::io::PreparedExperiment> prepared;

  const pradar::io::PreparedExperiment& scene() {
    if (!prepared) prepared = pradar::io::prepare(config);
    return *prepared;
  }
};

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& message) { g_last_error = message; }

template <typename Fn>
pradar_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const pradar::io::ConfigError& e) {
    set_error(e.what());
    return PRADAR_E_BAD_INPUT;
  } catch (const std::invalid_argument& e) {
    set_error(e.what());
    return PRADAR_E_BAD_INPUT;
  } catch (const std::ios_base::failure& e) {
    set_error(e.what());
    return PRADAR_E_IO;
  } catch (const std::exception& e) {
    set_error(e.what());
    return PRADAR_E_INTERNAL;
  } catch (...) {
    set_error("unknown error");
    return PRADAR_E_INTERNAL;
  }
}

pradar_status create_ctx(pradar::io::ExperimentConfig config,
                         pradar_ctx** out) {
  *out = new pradar_ctx{std::move(config), std::nullopt};
  return PRADAR_OK;
}

}  // namespace

extern "C" {

const char* pradar_version(void) { return "1.0.0"; }

const char* pradar_last_error(void) { return g_last_error.c_str(); }

pradar_status pradar_ctx_create_from_file(const char* config_path,
                                          pradar_ctx** out) {
  if (out == nullptr) return PRADAR_E_BAD_INPUT;
  *out = nullptr;
  if (config_path == nullptr) {
    set_error("config_path is NULL");
    return PRADAR_E_BAD_INPUT;
  }
  return guarded([&] {
    return create_ctx(pradar::io::load_experiment_config(config_path), out);
  });
}

pradar_status pradar_ctx_create_from_json(const char* json_text,
                                          pradar_ctx** out) {
  if (out == nullptr) return PRADAR_E_BAD_INPUT;
  *out = nullptr;
  if (json_text == nullptr) {
    set_error("json_text is NULL");
    return PRADAR_E_BAD_INPUT;
  }
  return guarded([&] {
    return create_ctx(pradar::io::parse_experiment_config(json_text), out);
  });
}

void pradar_ctx_destroy(pradar_ctx* ctx) { delete ctx; }

pradar_status pradar_ctx_set_seed(pradar_ctx* ctx, unsigned long long seed) {
  if (ctx == nullptr) {
    set_error("ctx is NULL");
    return PRADAR_E_BAD_INPUT;
  }
  ctx->config.ao.rng_seed = seed;
  ctx->prepared.reset();
  return PRADAR_OK;
}

pradar_status pradar_ctx_set_restarts(pradar_ctx* ctx, int n_restarts) {
  if (ctx == nullptr || n_restarts < 1) {
    set_error(ctx == nullptr ? "ctx is NULL" : "n_restarts must be >= 1");
    return PRADAR_E_BAD_INPUT;
  }
  ctx->config.ao.n_restarts = n_restarts;
  return PRADAR_OK;
}

pradar_status pradar_ctx_set_output_dir(pradar_ctx* ctx, const char* dir) {
  if (ctx == nullptr || dir == nullptr) {
    set_error(ctx == nullptr ? "ctx is NULL" : "dir is NULL");
    return PRADAR_E_BAD_INPUT;
  }
  ctx->config.output_dir = dir;
  return PRADAR_OK;
}

pradar_status pradar_run_optimize(pradar_ctx* ctx) {
  if (ctx == nullptr) {
    set_error("ctx is NULL");
    return PRADAR_E_BAD_INPUT;
  }
  return guarded([&] {
    pradar::io::run_optimize(ctx->config, ctx->config.output_dir);
    return PRADAR_OK;
  });
}

pradar_status pradar_run_beampattern(pradar_ctx* ctx) {
  if (ctx == nullptr) {
    set_error("ctx is NULL");
    return PRADAR_E_BAD_INPUT;
  }
  return guarded([&] {
    pradar::io::run_beampattern(ctx->config, ctx->config.output_dir);
    return PRADAR_OK;
  });
}

pradar_status pradar_run_sweep_snr(pradar_ctx* ctx) {
  if (ctx == nullptr) {
    set_error("ctx is NULL");
    return PRADAR_E_BAD_INPUT;
  }
  return guarded([&] {
    pradar::io::run_sweep_snr(ctx->config, ctx->config.output_dir);
    return PRADAR_OK;
  });
}

pradar_status pradar_run_compare(pradar_ctx* ctx) {
  if (ctx == nullptr) {
    set_error("ctx is NULL");
    return PRADAR_E_BAD_INPUT;
  }
  return guarded([&] {
    pradar::io::run_compare(ctx->config, ctx->config.output_dir);
    return PRADAR_OK;
  });
}

pradar_status pradar_run_verify(pradar_ctx* ctx, int* n_failed_checks) {
  if (ctx == nullptr) {
    set_error("ctx is NULL");
    return PRADAR_E_BAD_INPUT;
  }
  return guarded([&]() -> pradar_status {
    const pradar::io::VerifyReport report =
        pradar::io::run_verify(ctx->config, ctx->config.output_dir);
    int failed = 0;
    std::string failures;
    for (const auto& check : report.checks) {
      if (!check.passed) {
        ++failed;
        if (!failures.empty()) failures += "; ";
        failures += check.name;
      }
    }
    if (n_failed_checks != nullptr) *n_failed_checks = failed;
    if (failed > 0) {
      set_error("verification checks failed: " + failures);
      return PRADAR_E_CHECK_FAILED;
    }
    return PRADAR_OK;
  });
}

pradar_status pradar_prior_fisher_info(pradar_ctx* ctx, double* out) {
  if (ctx == nullptr || out == nullptr) {
    set_error(ctx == nullptr ? "ctx is NULL" : "out is NULL");
    return PRADAR_E_BAD_INPUT;
  }
  return guarded([&] {
    *out = ctx->scene().scene.prior_fi;
    return PRADAR_OK;
  });
}

pradar_status pradar_optimized_objective(pradar_ctx* ctx,
                                         double* out_objective,
                                         double* out_bcrb) {
  if (ctx == nullptr) {
    set_error("ctx is NULL");
    return PRADAR_E_BAD_INPUT;
  }
  return guarded([&] {
    const auto& prepared = ctx->scene();
    const pradar::opt::OptResult result = pradar::opt::run_ao(
        prepared.scene, prepared.scene_config, ctx->config.ao);
    if (out_objective != nullptr) *out_objective = result.objective;
    if (out_bcrb != nullptr) *out_bcrb = result.bcrb;
    return PRADAR_OK;
  });
}

}  // extern "C"
