// Command-line front end. Everything goes through the C API.
#include <CLI11.hpp>

#include <cstdio>
#include <string>

#include "deepwave/deepwave.h"

int main(int argc, char** argv) {
  CLI::App app{"deepwave: steady deep-water wave numerics"};
  app.set_version_flag("--version", std::string(dw_version()));

  std::string config_path;
  std::string out_dir;
  long long seed = 0;
  unsigned threads = 0;
  double tol_scale = 1.0;
  app.add_option("-c,--config", config_path, "JSON run configuration")->required()->check(CLI::ExistingFile);
  auto* out_opt = app.add_option("-o,--out", out_dir, "output directory (overrides DEEPWAVE_OUT and the config)");
  auto* seed_opt = app.add_option("--seed", seed, "seed for generated families");
  app.add_option("-j,--threads", threads, "worker threads")->check(CLI::Range(1, 256));
  app.add_option("--tolerance-scale", tol_scale, "multiply every tolerance")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  dw_run_overrides ov{};
  ov.output_dir = out_opt->count() ? out_dir.c_str() : nullptr;
  ov.has_seed = seed_opt->count() ? 1 : 0;
  ov.seed = static_cast<uint64_t>(seed);
  ov.threads = threads;
  ov.tolerance_scale = tol_scale;

  int exit_code = 0;
  char manifest[4096] = {0};
  const dw_status st = dw_run_config_file(config_path.c_str(), &ov, &exit_code, manifest, sizeof manifest);
  if (st == DW_ERR_CONFIG) {
    std::fprintf(stderr, "config error: %s\n", dw_last_error());
    return 2;
  }
  if (st != DW_OK) {
    std::fprintf(stderr, "error: %s\n", dw_last_error());
    return 1;
  }
  std::printf("%s\n", manifest);
  if (exit_code != 0) std::fprintf(stderr, "one or more tasks failed; see the manifest\n");
  return exit_code;
}
