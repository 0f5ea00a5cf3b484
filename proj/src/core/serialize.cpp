#include <algorithm>
#include "deepwave/serialize.hpp"

#include <charconv>
#include <cstdio>
#include <json.hpp>
#include <sstream>

#include "deepwave/error.hpp"

namespace deepwave {

using Json = nlohmann::ordered_json;

namespace {

Json grid_json(const Grid& g) {
  Json j;
  j["kind"] = g.is_periodic() ? "periodic" : "line";
  j["n"] = g.size();
  if (g.is_periodic())
    j["period"] = g.period();
  else
    j["half_width"] = g.half_width();
  return j;
}

Json values_json(std::span<const double> v) { return Json(std::vector<double>(v.begin(), v.end())); }

Json profile_json(const Profile& p) { return Json{{"grid", grid_json(p.grid())}, {"values", values_json(p.values())}}; }

Json identity_json(const IdentityReport& r) {
  Json j{{"name", r.name}, {"lhs", r.lhs},           {"rhs", r.rhs},
         {"defect", r.defect}, {"tolerance", r.tolerance}, {"passed", r.passed}};
  if (r.tail_estimate) j["tail_estimate"] = *r.tail_estimate;
  return j;
}

Json decay_json(const DecayFit& d) {
  return Json{{"rho", d.rho},
              {"window", {d.x_lo, d.x_hi}},
              {"fit_residual", d.fit_residual},
              {"superalgebraic", d.superalgebraic},
              {"envelope", d.envelope},
              {"points", d.points}};
}

Json certificate_json(const CertificateReport& c) {
  return Json{{"mu", c.mu},
              {"residual_sup", c.residual_sup},
              {"residual_l2", c.residual_l2},
              {"w_l2_squared", c.w_l2_squared},
              {"xwp_l2", c.xwp_l2},
              {"pairing_lhs", c.pairing_lhs},
              {"implied_bound", c.implied_bound},
              {"product_bound", c.product_bound},
              {"budget", c.budget},
              {"rho", c.rho},
              {"superalgebraic", c.superalgebraic},
              {"bound_holds", c.bound_holds},
              {"verdict", to_string(c.verdict)}};
}

Json probe_json(const ProbeReport& r) {
  Json j{{"initial_label", r.initial_label},
         {"mu", r.mu},
         {"outcome", to_string(r.outcome)},
         {"final_sup_norm", r.final_sup_norm},
         {"final_residual", r.final_residual},
         {"newton_iterations", r.newton_iterations},
         {"fixed_point_iterations", r.fixed_point_iterations}};
  j["decay"] = r.decay ? decay_json(*r.decay) : Json(nullptr);
  if (!r.decay_note.empty()) j["decay_note"] = r.decay_note;
  j["certificate"] = certificate_json(r.certificate);
  if (r.final_profile) j["final_profile"] = profile_json(*r.final_profile);
  return j;
}

Json branch_point_json(const BranchPoint& p) {
  return Json{{"mu", p.mu},
              {"amplitude", p.amplitude},
              {"residual_norm", p.residual_norm},
              {"newton_iters", p.newton_iters},
              {"mean", p.mean},
              {"profile", profile_json(p.profile)}};
}

std::string dump(const Json& j) { return j.dump() + "\n"; }

[[noreturn]] void unsupported(const char* what, ExportFormat f) {
  throw Error(ErrorCode::invalid_argument,
              std::string(what) + " has no " + (f == ExportFormat::csv ? "csv" : "json") + " export");
}

std::string probe_csv_header() {
  return "initial_label,mu,outcome,final_sup_norm,final_residual,rho,superalgebraic,verdict,bound_holds\n";
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

std::string probe_csv_row(const ProbeReport& r) {
  std::ostringstream os;
  os << csv_field(r.initial_label) << ',' << format_double(r.mu) << ',' << to_string(r.outcome) << ','
     << format_double(r.final_sup_norm) << ',' << format_double(r.final_residual) << ','
     << (r.decay ? format_double(r.decay->rho) : std::string()) << ','
     << (r.decay && r.decay->superalgebraic ? "true" : "false") << ',' << to_string(r.certificate.verdict) << ','
     << (r.certificate.bound_holds ? "true" : "false") << '\n';
  return os.str();
}

std::string identity_csv_row(const IdentityReport& r) {
  return csv_field(r.name) + ',' + format_double(r.lhs) + ',' + format_double(r.rhs) + ',' + format_double(r.defect) +
         ',' + format_double(r.tolerance) + ',' + (r.passed ? "true" : "false") + '\n';
}

}  // namespace

ExportFormat parse_format(const std::string& s) {
  if (s == "csv") return ExportFormat::csv;
  if (s == "json") return ExportFormat::json;
  throw Error(ErrorCode::invalid_argument, "unsupported export format '" + s + "'");
}

std::string format_double(double v) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::string export_report(const Profile& p, ExportFormat f) {
  if (f == ExportFormat::json) return dump(profile_json(p));
  std::string s = "x,value\n";
  for (std::size_t i = 0; i < p.size(); ++i) s += format_double(p.grid().node(i)) + ',' + format_double(p[i]) + '\n';
  return s;
}

std::string export_report(const ResidualReport& r, ExportFormat f) {
  if (f == ExportFormat::json)
    return dump(Json{{"form", to_string(r.form)},
                     {"l2_norm", r.l2_norm},
                     {"sup_norm", r.sup_norm},
                     {"residual", profile_json(r.residual)}});
  std::string s = "x,residual\n";
  for (std::size_t i = 0; i < r.residual.size(); ++i)
    s += format_double(r.residual.grid().node(i)) + ',' + format_double(r.residual[i]) + '\n';
  return s;
}

std::string export_report(const SurfaceCurve& c, ExportFormat f) {
  if (f == ExportFormat::json)
    return dump(Json{{"shift", c.shift}, {"monotone", c.monotone}, {"abscissa", c.abscissa}, {"ordinate", c.ordinate}});
  std::string s = "abscissa,ordinate\n";
  for (std::size_t i = 0; i < c.abscissa.size(); ++i)
    s += format_double(c.abscissa[i]) + ',' + format_double(c.ordinate[i]) + '\n';
  return s;
}

std::string export_report(const IdentityReport& r, ExportFormat f) {
  if (f == ExportFormat::json) return dump(identity_json(r));
  return "name,lhs,rhs,defect,tolerance,passed\n" + identity_csv_row(r);
}

std::string export_report(const std::vector<IdentityReport>& rs, ExportFormat f) {
  if (f == ExportFormat::json) {
    Json a = Json::array();
    for (const auto& r : rs) a.push_back(identity_json(r));
    return dump(a);
  }
  std::string s = "name,lhs,rhs,defect,tolerance,passed\n";
  for (const auto& r : rs) s += identity_csv_row(r);
  return s;
}

std::string export_report(const DecayFit& d, ExportFormat f) {
  if (f == ExportFormat::csv) unsupported("DecayFit", f);
  return dump(decay_json(d));
}

std::string export_report(const CertificateReport& c, ExportFormat f) {
  if (f == ExportFormat::csv) unsupported("CertificateReport", f);
  return dump(certificate_json(c));
}

std::string export_report(const ProbeReport& r, ExportFormat f) {
  if (f == ExportFormat::json) return dump(probe_json(r));
  return probe_csv_header() + probe_csv_row(r);
}

std::string export_report(const std::vector<ProbeReport>& rs, ExportFormat f) {
  if (f == ExportFormat::json) {
    Json a = Json::array();
    for (const auto& r : rs) a.push_back(probe_json(r));
    return dump(a);
  }
  std::string s = probe_csv_header();
  for (const auto& r : rs) s += probe_csv_row(r);
  return s;
}

std::string export_report(const BranchPoint& p, ExportFormat f) {
  if (f == ExportFormat::csv) unsupported("BranchPoint", f);
  return dump(branch_point_json(p));
}

std::string export_report(const Branch& b, ExportFormat f) {
  if (f == ExportFormat::json) {
    Json a = Json::array();
    for (const auto& p : b.points) a.push_back(branch_point_json(p));
    return dump(Json{{"diagnostic", b.diagnostic}, {"points", a}});
  }
  std::string s = "mu,amplitude,residual,iterations\n";
  for (const auto& p : b.points)
    s += format_double(p.mu) + ',' + format_double(p.amplitude) + ',' + format_double(p.residual_norm) + ',' +
         std::to_string(p.newton_iters) + '\n';
  return s;
}

std::string export_report(const SchrodingerSpectrum& sp, ExportFormat f) {
  if (f == ExportFormat::json)
    return dump(Json{{"eigenvalues", sp.eigenvalues}, {"asymmetry", sp.asymmetry}, {"warning", sp.warning}});
  std::string s = "index,eigenvalue\n";
  for (std::size_t i = 0; i < sp.eigenvalues.size(); ++i)
    s += std::to_string(i) + ',' + format_double(sp.eigenvalues[i]) + '\n';
  return s;
}

std::string export_report(const HalfPlaneField& h, ExportFormat f) {
  const std::size_t n = h.x_grid.size();
  if (f == ExportFormat::json)
    return dump(Json{{"grid", grid_json(h.x_grid)}, {"y_levels", h.y_levels}, {"values", h.values}});
  std::string s = "x,y,value\n";
  for (std::size_t k = 0; k < h.y_levels.size(); ++k)
    for (std::size_t i = 0; i < n; ++i)
      s += format_double(h.x_grid.node(i)) + ',' + format_double(h.y_levels[k]) + ',' + format_double(h.at(k, i)) + '\n';
  return s;
}

std::string identity_table(const std::vector<IdentityReport>& rs) {
  int width = 4;
  for (const auto& r : rs) width = std::max(width, static_cast<int>(r.name.size()));
  std::string out;
  char nums[128];
  auto pad = [&](const std::string& s) { return s + std::string(static_cast<std::size_t>(width) - s.size(), ' '); };
  std::snprintf(nums, sizeof nums, " %14s %14s %11s %11s  %s\n", "lhs", "rhs", "defect", "tolerance", "result");
  out += pad("name") + nums;
  for (const auto& r : rs) {
    std::snprintf(nums, sizeof nums, " %14.6e %14.6e %11.3e %11.3e  %s\n", r.lhs, r.rhs, r.defect, r.tolerance,
                  r.passed ? "ok" : "FAIL");
    out += pad(r.name) + nums;
  }
  return out;
}

Profile profile_from_json(const std::string& text) {
  try {
    const Json j = Json::parse(text);
    const Json& g = j.at("grid");
    const std::string kind = g.at("kind").get<std::string>();
    const auto n = g.at("n").get<std::size_t>();
    Grid grid = kind == "periodic" ? Grid::periodic(n, g.at("period").get<double>())
              : kind == "line"     ? Grid::line(n, g.at("half_width").get<double>())
                                   : throw Error(ErrorCode::invalid_argument, "unknown grid kind '" + kind + "'");
    return Profile(grid, j.at("values").get<std::vector<double>>());
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::invalid_argument, std::string("malformed profile json: ") + e.what());
  }
}

}  // namespace deepwave
