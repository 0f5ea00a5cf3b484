#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "deepwave/grid.hpp"

namespace deepwave {

/// Named analytic profile with parameters. Known names and parameters
/// (defaults in parentheses):
///   zero
///   gaussian    amplitude (1), width (1), center (0)    A exp(-((x-c)/s)^2)
///   sech2       amplitude (1), width (1), center (0)    A sech^2((x-c)/s)
///   rational    amplitude (1), width (1), power (2)     A (1 + (x/s)^2)^(-p/2)
///   wavepacket  amplitude (1), width (5), wavenumber (1) A cos(k x) exp(-(x/s)^2)
///   cosine      amplitude (1), wavenumber (1)           A cos(k x)
///   arctan      amplitude (1), width (1)                A arctan(x/s)
struct TemplateSpec {
  std::string name;
  std::map<std::string, double> params;

  /// name plus the parameters in key order, e.g. "gaussian(amplitude=0.2,width=1)"
  std::string label() const;
};

/// Throws invalid_argument for unknown names or parameters.
Profile make_template(const Grid& grid, const TemplateSpec& spec);

bool is_known_template(const std::string& name);

/// Uniform doubles in [0, 1) from std::mt19937_64, mapped by hand so the
/// sequence is identical on every standard library.
class SeededStream {
 public:
  explicit SeededStream(std::uint64_t seed) : engine_(seed) {}
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::mt19937_64 engine_;
};

/// count decaying profiles cycling through gaussian, rational (power 4..6) and
/// wavepacket templates with seeded parameters.
std::vector<TemplateSpec> seeded_decaying_family(std::uint64_t seed, std::size_t count);

}  // namespace deepwave
