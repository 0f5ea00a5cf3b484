#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "deepwave/grid.hpp"
#include "deepwave/templates.hpp"
#include "deepwave/transforms.hpp"

namespace deepwave {

enum class Command { verify_identities, stokes_continue, solitary_probe, spectrum, bvp_check, linear_solve };

const char* to_string(Command c) noexcept;

struct GridSpec {
  GridKind kind = GridKind::line;
  std::size_t n = 0;
  /// period for periodic grids, half width L for line grids
  double length = 0.0;

  Grid build() const;
};

struct Tolerances {
  double spectral = 1e-10;
  double quadrature = 1e-6;
  double newton = 1e-11;
  double probe = 1e-10;
  double certificate_residual = 1e-8;

  Tolerances scaled(double factor) const;
};

struct RunConfig {
  Command command = Command::verify_identities;
  GridSpec grid;
  std::vector<double> mu;
  std::vector<TemplateSpec> initial_guesses;
  Tolerances tolerances;
  std::uint64_t seed = 0;
  std::string output_dir = "deepwave-out";
  unsigned threads = 1;
  LineOptions line;
  /// verify-identities: number of seeded profiles
  std::size_t family_size = 20;
  /// stokes-continue
  int continuation_steps = 10;
  double continuation_step_size = 0.02;
  /// spectrum: template V of the operator Hd/dx - V (so G = mu + V)
  TemplateSpec well{"sech2", {{"amplitude", 1.0}}};
  bool eigenvectors = false;
  /// bvp-check
  std::vector<double> y_levels{-0.4, -0.3, -0.2, -0.1};
};

/// Defaults for the keys a config may omit, per command.
RunConfig default_config(Command c);

/// Parse and validate a config document. Parse errors report line and column;
/// validation errors name the key. Throws Error(ErrorCode::config).
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

/// Canonical JSON echo of a config, used in the run manifest.
std::string config_to_json(const RunConfig& c);

}  // namespace deepwave
