#include "deepwave/config.hpp"

#include <cmath>
#include <fstream>
#include <json.hpp>
#include <set>
#include <sstream>

#include "deepwave/error.hpp"

namespace deepwave {

using Json = nlohmann::json;
using OJson = nlohmann::ordered_json;

namespace {

[[noreturn]] void fail(const std::string& key, const std::string& msg) {
  throw Error(ErrorCode::config, key + ": " + msg);
}

void reject_unknown(const Json& obj, const std::string& where, const std::set<std::string>& allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!allowed.count(it.key())) {
      const std::string path = where.empty() ? it.key() : where + "." + it.key();
      fail(path, "unknown key");
    }
  }
}

double get_number(const Json& j, const std::string& key) {
  if (!j.is_number()) fail(key, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(key, "must be finite");
  return v;
}

double get_positive(const Json& j, const std::string& key) {
  const double v = get_number(j, key);
  if (!(v > 0.0)) fail(key, "must be positive");
  return v;
}

std::uint64_t get_count(const Json& j, const std::string& key) {
  if (!j.is_number_integer() || j.get<long long>() < 0) fail(key, "expected a non-negative integer");
  return j.get<std::uint64_t>();
}

Command parse_command(const Json& j) {
  if (!j.is_string()) fail("command", "expected a string");
  const std::string s = j.get<std::string>();
  for (Command c : {Command::verify_identities, Command::stokes_continue, Command::solitary_probe, Command::spectrum,
                    Command::bvp_check, Command::linear_solve})
    if (s == to_string(c)) return c;
  fail("command", "unknown command '" + s + "'");
}

TemplateSpec parse_template(const Json& j, const std::string& key) {
  if (!j.is_object()) fail(key, "expected an object with a \"template\" name");
  if (!j.contains("template") || !j.at("template").is_string()) fail(key + ".template", "missing template name");
  TemplateSpec t{j.at("template").get<std::string>(), {}};
  if (!is_known_template(t.name)) fail(key + ".template", "unknown template '" + t.name + "'");
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (it.key() == "template") continue;
    t.params[it.key()] = get_number(it.value(), key + "." + it.key());
  }
  try {
    (void)make_template(Grid::line(8, 1.0), t);
  } catch (const Error& e) {
    fail(key, e.what());
  }
  return t;
}

std::vector<double> parse_number_list(const Json& j, const std::string& key) {
  if (!j.is_array()) fail(key, "expected an array of numbers");
  std::vector<double> v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(get_number(j[i], key + "[" + std::to_string(i) + "]"));
  return v;
}

bool needs_line(Command c) {
  return c == Command::verify_identities || c == Command::solitary_probe || c == Command::linear_solve;
}

OJson template_json(const TemplateSpec& t) {
  OJson j{{"template", t.name}};
  for (const auto& [k, v] : t.params) j[k] = v;
  return j;
}

}  // namespace

const char* to_string(Command c) noexcept {
  switch (c) {
    case Command::verify_identities: return "verify-identities";
    case Command::stokes_continue: return "stokes-continue";
    case Command::solitary_probe: return "solitary-probe";
    case Command::spectrum: return "spectrum";
    case Command::bvp_check: return "bvp-check";
    case Command::linear_solve: return "linear-solve";
  }
  return "unknown";
}

Grid GridSpec::build() const { return kind == GridKind::periodic ? Grid::periodic(n, length) : Grid::line(n, length); }

Tolerances Tolerances::scaled(double f) const {
  return {spectral * f, quadrature * f, newton * f, probe * f, certificate_residual * f};
}

RunConfig default_config(Command c) {
  RunConfig r;
  r.command = c;
  switch (c) {
    case Command::verify_identities:
      r.grid = {GridKind::line, 1u << 14, 200.0};
      r.mu = {-2, -1, 0, 1, 2};
      break;
    case Command::stokes_continue:
      r.grid = {GridKind::periodic, 256, 2.0 * std::acos(-1.0)};
      r.mu = {0.98};
      r.initial_guesses = {{"cosine", {{"amplitude", 0.1}}}};
      break;
    case Command::solitary_probe:
      r.grid = {GridKind::line, 1024, 64.0};
      r.mu = {0.5, 1.0, 2.0};
      r.initial_guesses = {{"sech2", {{"amplitude", 0.3}}},
                           {"sech2", {{"amplitude", -0.3}}},
                           {"wavepacket", {{"amplitude", 0.3}}},
                           {"rational", {{"amplitude", 0.2}}}};
      break;
    case Command::spectrum:
      r.grid = {GridKind::line, 1024, 256.0};
      r.mu = {-1.0};
      break;
    case Command::bvp_check:
      r.grid = {GridKind::periodic, 128, 2.0 * std::acos(-1.0)};
      r.mu = {1.0};
      r.initial_guesses = {{"cosine", {{"amplitude", 0.2}}}};
      break;
    case Command::linear_solve:
      r.grid = {GridKind::line, 2048, 200.0};
      r.mu = {1.0};
      r.initial_guesses = {{"gaussian", {{"amplitude", 1.0}, {"width", 8.0}}}};
      break;
  }
  return r;
}

RunConfig parse_config(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1, col = 1;
    const std::size_t upto = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    for (std::size_t i = 0; i < upto; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::ostringstream os;
    os << "config parse error at line " << line << ", column " << col << ": " << e.what();
    throw Error(ErrorCode::config, os.str());
  }
  if (!doc.is_object()) fail("<root>", "expected a JSON object");
  reject_unknown(doc, "",
                 {"command", "grid", "mu", "initial_guesses", "tolerances", "seed", "output_dir", "threads", "line",
                  "family_size", "continuation", "well", "eigenvectors", "y_levels"});
  if (!doc.contains("command")) fail("command", "required key missing");
  RunConfig c = default_config(parse_command(doc["command"]));

  if (doc.contains("grid")) {
    const Json& g = doc["grid"];
    if (!g.is_object()) fail("grid", "expected an object");
    reject_unknown(g, "grid", {"kind", "n", "period", "half_width"});
    const GridKind default_kind = c.grid.kind;
    if (g.contains("kind")) {
      if (!g["kind"].is_string()) fail("grid.kind", "expected \"periodic\" or \"line\"");
      const std::string k = g["kind"].get<std::string>();
      if (k == "periodic")
        c.grid.kind = GridKind::periodic;
      else if (k == "line")
        c.grid.kind = GridKind::line;
      else
        fail("grid.kind", "expected \"periodic\" or \"line\", got '" + k + "'");
    }
    if (g.contains("n")) c.grid.n = get_count(g["n"], "grid.n");
    const char* len_key = c.grid.kind == GridKind::periodic ? "period" : "half_width";
    const char* other = c.grid.kind == GridKind::periodic ? "half_width" : "period";
    if (g.contains(other)) fail(std::string("grid.") + other, "not valid for this grid kind");
    if (g.contains(len_key))
      c.grid.length = get_positive(g[len_key], std::string("grid.") + len_key);
    else if (c.grid.kind != default_kind)
      fail(std::string("grid.") + len_key, "required when grid.kind differs from the command default");
    if (c.grid.n < 8 || (c.grid.n & (c.grid.n - 1)) != 0) fail("grid.n", "must be a power of two >= 8");
  }
  if (doc.contains("mu")) c.mu = parse_number_list(doc["mu"], "mu");
  if (doc.contains("initial_guesses")) {
    const Json& a = doc["initial_guesses"];
    if (!a.is_array()) fail("initial_guesses", "expected an array");
    c.initial_guesses.clear();
    for (std::size_t i = 0; i < a.size(); ++i)
      c.initial_guesses.push_back(parse_template(a[i], "initial_guesses[" + std::to_string(i) + "]"));
  }
  if (doc.contains("tolerances")) {
    const Json& t = doc["tolerances"];
    if (!t.is_object()) fail("tolerances", "expected an object");
    reject_unknown(t, "tolerances", {"spectral", "quadrature", "newton", "probe", "certificate_residual"});
    if (t.contains("spectral")) c.tolerances.spectral = get_positive(t["spectral"], "tolerances.spectral");
    if (t.contains("quadrature")) c.tolerances.quadrature = get_positive(t["quadrature"], "tolerances.quadrature");
    if (t.contains("newton")) c.tolerances.newton = get_positive(t["newton"], "tolerances.newton");
    if (t.contains("probe")) c.tolerances.probe = get_positive(t["probe"], "tolerances.probe");
    if (t.contains("certificate_residual"))
      c.tolerances.certificate_residual = get_positive(t["certificate_residual"], "tolerances.certificate_residual");
  }
  if (doc.contains("seed")) c.seed = get_count(doc["seed"], "seed");
  if (doc.contains("output_dir")) {
    if (!doc["output_dir"].is_string() || doc["output_dir"].get<std::string>().empty())
      fail("output_dir", "expected a non-empty string");
    c.output_dir = doc["output_dir"].get<std::string>();
  }
  if (doc.contains("threads")) {
    const auto t = get_count(doc["threads"], "threads");
    if (t < 1 || t > 256) fail("threads", "must be between 1 and 256");
    c.threads = static_cast<unsigned>(t);
  }
  if (doc.contains("line")) {
    const Json& l = doc["line"];
    if (!l.is_object()) fail("line", "expected an object");
    reject_unknown(l, "line", {"method", "tail_threshold"});
    if (l.contains("method")) {
      const std::string m = l["method"].is_string() ? l["method"].get<std::string>() : "";
      if (m == "pv_quadrature")
        c.line.method = HilbertMethod::pv_quadrature;
      else if (m == "periodized")
        c.line.method = HilbertMethod::periodized;
      else
        fail("line.method", "expected \"pv_quadrature\" or \"periodized\"");
    }
    if (l.contains("tail_threshold")) c.line.tail_threshold = get_positive(l["tail_threshold"], "line.tail_threshold");
  }
  if (doc.contains("family_size")) {
    c.family_size = get_count(doc["family_size"], "family_size");
    if (c.family_size == 0) fail("family_size", "must be at least 1");
  }
  if (doc.contains("continuation")) {
    const Json& k = doc["continuation"];
    if (!k.is_object()) fail("continuation", "expected an object");
    reject_unknown(k, "continuation", {"steps", "step_size"});
    if (k.contains("steps")) c.continuation_steps = static_cast<int>(get_count(k["steps"], "continuation.steps"));
    if (k.contains("step_size")) c.continuation_step_size = get_positive(k["step_size"], "continuation.step_size");
  }
  if (doc.contains("well")) c.well = parse_template(doc["well"], "well");
  if (doc.contains("eigenvectors")) {
    if (!doc["eigenvectors"].is_boolean()) fail("eigenvectors", "expected true or false");
    c.eigenvectors = doc["eigenvectors"].get<bool>();
  }
  if (doc.contains("y_levels")) {
    c.y_levels = parse_number_list(doc["y_levels"], "y_levels");
    for (double y : c.y_levels)
      if (!(y < 0)) fail("y_levels", "levels must be negative");
  }

  // cross-key checks
  if (c.mu.empty()) fail("mu", "at least one value required");
  if (needs_line(c.command) && c.grid.kind != GridKind::line)
    fail("grid.kind", std::string(to_string(c.command)) + " requires a line grid");
  if (c.command == Command::stokes_continue && c.grid.kind != GridKind::periodic)
    fail("grid.kind", "stokes-continue requires a periodic grid");
  if (c.command == Command::linear_solve)
    for (double m : c.mu)
      if (!(m > 0)) fail("mu", "linear-solve requires mu > 0");
  if ((c.command == Command::stokes_continue || c.command == Command::solitary_probe ||
       c.command == Command::bvp_check || c.command == Command::linear_solve) &&
      c.initial_guesses.empty())
    fail("initial_guesses", "at least one template required");
  if (c.command == Command::bvp_check && c.y_levels.size() < 3) fail("y_levels", "at least three levels required");
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::config, "cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string config_to_json(const RunConfig& c) {
  OJson j;
  j["command"] = to_string(c.command);
  OJson g{{"kind", c.grid.kind == GridKind::periodic ? "periodic" : "line"}, {"n", c.grid.n}};
  g[c.grid.kind == GridKind::periodic ? "period" : "half_width"] = c.grid.length;
  j["grid"] = g;
  j["mu"] = c.mu;
  OJson guesses = OJson::array();
  for (const auto& t : c.initial_guesses) guesses.push_back(template_json(t));
  j["initial_guesses"] = guesses;
  j["tolerances"] = {{"spectral", c.tolerances.spectral},
                     {"quadrature", c.tolerances.quadrature},
                     {"newton", c.tolerances.newton},
                     {"probe", c.tolerances.probe},
                     {"certificate_residual", c.tolerances.certificate_residual}};
  j["seed"] = c.seed;
  j["output_dir"] = c.output_dir;
  j["threads"] = c.threads;
  OJson line{{"method", c.line.method == HilbertMethod::pv_quadrature ? "pv_quadrature" : "periodized"}};
  if (std::isfinite(c.line.tail_threshold))
    line["tail_threshold"] = c.line.tail_threshold;
  else
    line["tail_threshold"] = nullptr;
  j["line"] = line;
  j["family_size"] = c.family_size;
  j["continuation"] = {{"steps", c.continuation_steps}, {"step_size", c.continuation_step_size}};
  j["well"] = template_json(c.well);
  j["eigenvectors"] = c.eigenvectors;
  j["y_levels"] = c.y_levels;
  return j.dump(2) + "\n";
}

}  // namespace deepwave
