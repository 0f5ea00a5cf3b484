#include "deepwave/templates.hpp"

#include <charconv>
#include <cmath>
#include <string_view>
#include <functional>
#include <set>
#include <sstream>

#include "deepwave/error.hpp"

namespace deepwave {

namespace {

struct Known {
  std::map<std::string, double> defaults;
  std::function<double(double, const std::map<std::string, double>&)> f;
};

const std::map<std::string, Known>& registry() {
  static const std::map<std::string, Known> r = {
      {"zero", {{}, [](double, const auto&) { return 0.0; }}},
      {"gaussian",
       {{{"amplitude", 1.0}, {"width", 1.0}, {"center", 0.0}},
        [](double x, const auto& p) {
          const double z = (x - p.at("center")) / p.at("width");
          return p.at("amplitude") * std::exp(-z * z);
        }}},
      {"sech2",
       {{{"amplitude", 1.0}, {"width", 1.0}, {"center", 0.0}},
        [](double x, const auto& p) {
          const double c = 1.0 / std::cosh((x - p.at("center")) / p.at("width"));
          return p.at("amplitude") * c * c;
        }}},
      {"rational",
       {{{"amplitude", 1.0}, {"width", 1.0}, {"power", 2.0}},
        [](double x, const auto& p) {
          const double z = x / p.at("width");
          return p.at("amplitude") * std::pow(1.0 + z * z, -0.5 * p.at("power"));
        }}},
      {"wavepacket",
       {{{"amplitude", 1.0}, {"width", 5.0}, {"wavenumber", 1.0}},
        [](double x, const auto& p) {
          const double z = x / p.at("width");
          return p.at("amplitude") * std::cos(p.at("wavenumber") * x) * std::exp(-z * z);
        }}},
      {"cosine",
       {{{"amplitude", 1.0}, {"wavenumber", 1.0}},
        [](double x, const auto& p) { return p.at("amplitude") * std::cos(p.at("wavenumber") * x); }}},
      {"arctan",
       {{{"amplitude", 1.0}, {"width", 1.0}},
        [](double x, const auto& p) { return p.at("amplitude") * std::atan(x / p.at("width")); }}},
  };
  return r;
}

}  // namespace

bool is_known_template(const std::string& name) { return registry().count(name) != 0; }

std::string TemplateSpec::label() const {
  std::ostringstream os;
  os << name;
  if (!params.empty()) {
    os << '(';
    bool first = true;
    for (const auto& [k, v] : params) {
      if (!first) os << ',';
      first = false;
      char buf[32];
      const auto res = std::to_chars(buf, buf + sizeof buf, v);
      os << k << '=' << std::string_view(buf, res.ptr);
    }
    os << ')';
  }
  return os.str();
}

Profile make_template(const Grid& grid, const TemplateSpec& spec) {
  auto it = registry().find(spec.name);
  if (it == registry().end()) throw Error(ErrorCode::invalid_argument, "unknown template '" + spec.name + "'");
  std::map<std::string, double> p = it->second.defaults;
  for (const auto& [k, v] : spec.params) {
    if (!p.count(k)) throw Error(ErrorCode::invalid_argument, "template '" + spec.name + "' has no parameter '" + k + "'");
    if (!std::isfinite(v)) throw Error(ErrorCode::invalid_argument, "template parameter '" + k + "' is not finite");
    p[k] = v;
  }
  if (p.count("width") && !(p.at("width") > 0.0))
    throw Error(ErrorCode::invalid_argument, "template '" + spec.name + "' needs width > 0");
  const auto& f = it->second.f;
  return Profile::sample(grid, [&](double x) { return f(x, p); });
}

std::vector<TemplateSpec> seeded_decaying_family(std::uint64_t seed, std::size_t count) {
  SeededStream rng(seed);
  std::vector<TemplateSpec> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double magnitude = rng.uniform(0.05, 0.4);
    const double amp = rng.uniform() < 0.5 ? -magnitude : magnitude;
    switch (i % 3) {
      case 0:
        out.push_back({"gaussian", {{"amplitude", amp}, {"width", rng.uniform(0.5, 3.0)}, {"center", rng.uniform(-2, 2)}}});
        break;
      case 1:
        out.push_back({"rational", {{"amplitude", amp}, {"width", rng.uniform(0.5, 2.0)}, {"power", rng.uniform(4.0, 6.0)}}});
        break;
      default:
        out.push_back({"wavepacket", {{"amplitude", amp}, {"width", rng.uniform(2.0, 6.0)}, {"wavenumber", rng.uniform(0.5, 2.0)}}});
        break;
    }
  }
  return out;
}

}  // namespace deepwave
