// Command-line front end. Talks to the library exclusively through the
// C interface in pradar.h.

#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "pradar.h"

namespace {

// ok -> 0, failed verification checks -> 1, bad input / IO / internal -> 2
int exit_code(pradar_status status) {
  switch (status) {
    case PRADAR_OK:
      return 0;
    case PRADAR_E_CHECK_FAILED:
      return 1;
    default:
      return 2;
  }
}

struct Options {
  std::string config_path;
  std::string out_dir;
  unsigned long long seed = 0;
  bool seed_set = false;
  int restarts = 0;
  bool restarts_set = false;
};

int apply_overrides(pradar_ctx* ctx, const Options& options) {
  if (options.seed_set) {
    const pradar_status s = pradar_ctx_set_seed(ctx, options.seed);
    if (s != PRADAR_OK) return exit_code(s);
  }
  if (options.restarts_set) {
    const pradar_status s = pradar_ctx_set_restarts(ctx, options.restarts);
    if (s != PRADAR_OK) return exit_code(s);
  }
  if (!options.out_dir.empty()) {
    const pradar_status s =
        pradar_ctx_set_output_dir(ctx, options.out_dir.c_str());
    if (s != PRADAR_OK) return exit_code(s);
  }
  return 0;
}

int fail(pradar_status status) {
  std::fprintf(stderr, "error: %s\n", pradar_last_error());
  return exit_code(status);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Polarization-reconfigurable MIMO radar BCRB optimization"};
  app.require_subcommand(1);

  Options options;
  app.add_option("--config", options.config_path, "Experiment config (JSON)")
      ->required();
  app.add_option("--out", options.out_dir, "Output directory override");
  app.add_option("--seed", options.seed, "RNG seed override")
      ->trigger_on_parse()
      ->each([&options](const std::string&) { options.seed_set = true; });
  app.add_option("--restarts", options.restarts, "Restart count override")
      ->each([&options](const std::string&) { options.restarts_set = true; });

  auto* cmd_optimize =
      app.add_subcommand("optimize", "Run the alternating optimization; "
                                     "writes trace.csv and design.csv");
  auto* cmd_beampattern = app.add_subcommand(
      "beampattern", "Optimize and write the radiated power pattern");
  auto* cmd_sweep = app.add_subcommand(
      "sweep-snr", "Evaluate all schemes across the received-SNR sweep");
  auto* cmd_compare = app.add_subcommand(
      "compare", "Evaluate all schemes at the configured noise power");
  auto* cmd_verify = app.add_subcommand(
      "verify", "Run the Monte Carlo and brute-force cross-checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  pradar_ctx* ctx = nullptr;
  const pradar_status created =
      pradar_ctx_create_from_file(options.config_path.c_str(), &ctx);
  if (created != PRADAR_OK) return fail(created);

  int rc = apply_overrides(ctx, options);
  if (rc == 0) {
    pradar_status status = PRADAR_OK;
    if (cmd_optimize->parsed()) {
      status = pradar_run_optimize(ctx);
    } else if (cmd_beampattern->parsed()) {
      status = pradar_run_beampattern(ctx);
    } else if (cmd_sweep->parsed()) {
      status = pradar_run_sweep_snr(ctx);
    } else if (cmd_compare->parsed()) {
      status = pradar_run_compare(ctx);
    } else if (cmd_verify->parsed()) {
      int failed = 0;
      status = pradar_run_verify(ctx, &failed);
      if (status == PRADAR_OK) {
        std::printf("verify: all checks passed\n");
      } else if (status == PRADAR_E_CHECK_FAILED) {
        std::printf("verify: %d check(s) failed\n", failed);
      }
    }
    rc = status == PRADAR_OK ? 0 : fail(status);
  }

  pradar_ctx_destroy(ctx);
  return rc;
}
