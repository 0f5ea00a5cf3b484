#include "deepwave/runner.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <json.hpp>
#include <map>
#include <thread>

#include "deepwave/error.hpp"
#include "deepwave/halfplane.hpp"
#include "deepwave/identities.hpp"
#include "deepwave/linearized.hpp"
#include "deepwave/serialize.hpp"
#include "deepwave/solitary.hpp"
#include "deepwave/steady.hpp"
#include "deepwave/stokes.hpp"

namespace deepwave {

namespace fs = std::filesystem;

namespace {

struct TaskOutput {
  TaskStatus status;
  std::vector<std::pair<std::string, std::string>> files;  // name, content
  std::vector<IdentityReport> identities;
  std::optional<ProbeReport> probe;
};

struct Task {
  std::string name;
  std::function<TaskOutput()> run;
};

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string index_name(const char* stem, std::size_t k, const char* ext) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s_%03zu.%s", stem, k, ext);
  return buf;
}

bool all_passed(const std::vector<IdentityReport>& rs) {
  for (const auto& r : rs)
    if (!r.passed) return false;
  return true;
}

std::vector<Task> identity_tasks(const RunConfig& c) {
  std::vector<Task> tasks;
  const auto family = seeded_decaying_family(c.seed, c.family_size);
  for (std::size_t k = 0; k < family.size(); ++k) {
    tasks.push_back({"identities " + family[k].label(), [&c, spec = family[k]] {
      TaskOutput out;
      const Profile v = make_template(c.grid.build(), spec);
      auto add = [&](IdentityReport r) {
        r.name += " " + spec.label();
        out.identities.push_back(std::move(r));
      };
      add(commutator_defect(v, c.tolerances.quadrature));
      add(skew_pairing(v, c.tolerances.quadrature));
      for (double mu : c.mu) {
        IdentityReport r = pohozaev_pairing(WaveState(v, mu), c.line, 10.0 * c.tolerances.quadrature);
        r.name += " mu=" + format_double(mu);
        add(std::move(r));
      }
      out.status.ok = all_passed(out.identities);
      return out;
    }});
  }
  return tasks;
}

std::vector<Task> stokes_tasks(const RunConfig& c) {
  std::vector<Task> tasks;
  for (std::size_t k = 0; k < c.mu.size(); ++k) {
    tasks.push_back({"stokes mu=" + format_double(c.mu[k]), [&c, k] {
      TaskOutput out;
      const double mu = c.mu[k];
      NewtonOptions o;
      o.tolerance = c.tolerances.newton;
      const Profile w0 = make_template(c.grid.build(), c.initial_guesses.front());
      const NewtonResult r = newton_solve_periodic(w0, mu, o);
      if (!r.converged) {
        out.status.ok = false;
        out.status.message = r.diagnostic;
        return out;
      }
      Branch b;
      if (r.point.amplitude == 0.0) {
        b.points.push_back(r.point);
        b.diagnostic = "converged to the trivial branch; no continuation";
      } else {
        b = continue_branch(r.point, c.continuation_steps, c.continuation_step_size, o);
      }
      std::string checks;
      for (const auto& p : b.points) {
        const WaveState s(p.profile, p.mu);
        const double bern = residual_bernoulli(s).sup_norm;
        const double margin = injectivity_margin(p.profile);
        if (bern > 10.0 * c.tolerances.newton || !(margin > 0.0)) {
          out.status.ok = false;
          checks = "branch point at mu=" + format_double(p.mu) + " fails bernoulli/margin check";
        }
      }
      out.status.message = checks.empty() ? b.diagnostic : checks;
      out.files.emplace_back(index_name("branch", k, "csv"), export_report(b, ExportFormat::csv));
      out.files.emplace_back(index_name("branch", k, "json"), export_report(b, ExportFormat::json));
      return out;
    }});
  }
  return tasks;
}

std::vector<Task> probe_tasks(const RunConfig& c) {
  std::vector<Task> tasks;
  std::size_t k = 0;
  for (const auto& g : c.initial_guesses) {
    for (double mu : c.mu) {
      tasks.push_back({"probe " + g.label() + " mu=" + format_double(mu), [&c, g, mu, k] {
        TaskOutput out;
        ProbeOptions o;
        o.solve_tolerance = c.tolerances.probe;
        o.certificate.residual_tolerance = c.tolerances.certificate_residual;
        ProbeReport r = newton_probe_line(make_template(c.grid.build(), g), mu, g.label(), o);
        out.status.ok = r.certificate.verdict != CertificateVerdict::bound_violated;
        out.status.message = to_string(r.outcome);
        out.files.emplace_back(index_name("probe", k, "json"), export_report(r, ExportFormat::json));
        out.probe = std::move(r);
        return out;
      }});
      ++k;
    }
  }
  return tasks;
}

std::vector<Task> spectrum_tasks(const RunConfig& c) {
  std::vector<Task> tasks;
  for (std::size_t k = 0; k < c.mu.size(); ++k) {
    tasks.push_back({"spectrum mu=" + format_double(c.mu[k]), [&c, k] {
      TaskOutput out;
      const double mu = c.mu[k];
      const Grid g = c.grid.build();
      const Profile G = Profile::constant(g, mu) + make_template(g, c.well);
      const SchrodingerSpectrum s = schrodinger_spectrum(G, mu, c.eigenvectors);
      out.status.message = s.warning;
      out.files.emplace_back(index_name("spectrum", k, "csv"), export_report(s, ExportFormat::csv));
      out.files.emplace_back(index_name("spectrum", k, "json"), export_report(s, ExportFormat::json));
      if (s.eigenvectors) {
        const Eigen::VectorXd v = s.eigenvectors->col(0);
        const Profile ground(g, std::vector<double>(v.data(), v.data() + v.size()));
        out.files.emplace_back(index_name("ground_state", k, "csv"), export_report(ground, ExportFormat::csv));
      }
      return out;
    }});
  }
  return tasks;
}

std::vector<Task> bvp_tasks(const RunConfig& c) {
  std::vector<Task> tasks;
  std::size_t k = 0;
  for (const auto& tmpl : c.initial_guesses) {
    for (double mu : c.mu) {
      tasks.push_back({"bvp " + tmpl.label() + " mu=" + format_double(mu), [&c, tmpl, mu, k] {
        TaskOutput out;
        const std::string tag = tmpl.label() + " mu=" + format_double(mu);
        const Grid g = c.grid.build();
        const Profile w = make_template(g, tmpl);
        const WaveState s(w, mu);
        const Profile bvp = bvp_residual(s, c.line).residual;
        const Profile bern = residual_bernoulli(s, c.line).residual;
        const BoundaryTrace z = conformal_trace(w, c.line);
        double link = 0.0;
        for (std::size_t i = 0; i < w.size(); ++i) {
          const double d = z.re[i] * z.re[i] + z.im[i] * z.im[i];
          link = std::max(link, std::abs(bvp[i] * d + bern[i]));
        }
        out.identities.push_back(make_identity("bvp_times_D_plus_B " + tag, link, 0.0, c.tolerances.spectral));
        const double d2n_tol = g.is_periodic() ? c.tolerances.spectral : 100.0 * c.tolerances.quadrature;
        const double d2n = sup_norm(dirichlet_to_neumann(w) - conjugate_derivative(w, c.line));
        out.identities.push_back(make_identity("d2n_vs_conjugate_derivative " + tag, d2n, 0.0, d2n_tol));
        const HalfPlaneField f = poisson_extend(w, c.y_levels);
        const HarmonicityCheck h = harmonicity_defect(f, w);
        out.identities.push_back(make_identity("harmonicity " + tag, h.defect, 0.0, h.budget));
        out.status.ok = all_passed(out.identities);
        out.files.emplace_back(index_name("halfplane", k, "csv"), export_report(f, ExportFormat::csv));
        return out;
      }});
      ++k;
    }
  }
  return tasks;
}

std::vector<Task> linear_tasks(const RunConfig& c) {
  std::vector<Task> tasks;
  std::size_t k = 0;
  for (const auto& tmpl : c.initial_guesses) {
    for (double mu : c.mu) {
      tasks.push_back({"linear-solve " + tmpl.label() + " mu=" + format_double(mu), [&c, tmpl, mu, k] {
        TaskOutput out;
        const std::string tag = tmpl.label() + " mu=" + format_double(mu);
        const Profile G = make_template(c.grid.build(), tmpl);
        const LinearSolveResult r = solve_linear_inhomogeneous(G, mu);
        const Profile dense = solve_linear_dense(G, mu);
        const LineOptions lo = LineOptions::unchecked(c.line.method);
        const Profile res = conjugate_derivative(r.V, lo) - mu * r.V - G;
        const double tol = 1e3 * c.tolerances.quadrature;
        out.identities.push_back(make_identity("formula_residual " + tag, sup_norm(res), 0.0, tol));
        out.identities.push_back(make_identity("formula_vs_dense " + tag, sup_norm(r.V - dense), 0.0, tol));
        out.status.ok = all_passed(out.identities);
        out.status.message = "dropped tail bound " + format_double(r.dropped_tail);
        out.files.emplace_back(index_name("linear_formula", k, "csv"), export_report(r.V, ExportFormat::csv));
        out.files.emplace_back(index_name("linear_dense", k, "csv"), export_report(dense, ExportFormat::csv));
        return out;
      }});
      ++k;
    }
  }
  return tasks;
}

std::vector<TaskOutput> run_all(const std::vector<Task>& tasks, unsigned threads) {
  std::vector<TaskOutput> out(tasks.size());
  auto guarded = [&](std::size_t i) {
    try {
      out[i] = tasks[i].run();
    } catch (const std::exception& e) {
      out[i] = TaskOutput{};
      out[i].status.ok = false;
      out[i].status.message = e.what();
    }
    out[i].status.name = tasks[i].name;
  };
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) guarded(i);
  };
  const unsigned n = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(tasks.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  return out;
}

void write_file(const fs::path& dir, const std::string& name, const std::string& content) {
  std::ofstream f(dir / name, std::ios::binary);
  if (!f) throw Error(ErrorCode::io, "cannot write " + (dir / name).string());
  f << content;
  if (!f) throw Error(ErrorCode::io, "write failed for " + (dir / name).string());
}

}  // namespace

bool RunManifest::all_ok() const {
  for (const auto& t : tasks)
    if (!t.ok) return false;
  return true;
}

RunManifest run_command(const RunConfig& config) {
  RunManifest m;
  m.config_echo = config_to_json(config);
  m.started = utc_now();
  const fs::path dir(config.output_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::io, "cannot create output directory " + dir.string() + ": " + ec.message());

  std::vector<Task> tasks;
  switch (config.command) {
    case Command::verify_identities: tasks = identity_tasks(config); break;
    case Command::stokes_continue: tasks = stokes_tasks(config); break;
    case Command::solitary_probe: tasks = probe_tasks(config); break;
    case Command::spectrum: tasks = spectrum_tasks(config); break;
    case Command::bvp_check: tasks = bvp_tasks(config); break;
    case Command::linear_solve: tasks = linear_tasks(config); break;
  }
  std::vector<TaskOutput> results = run_all(tasks, config.threads);

  std::vector<IdentityReport> identities;
  std::vector<ProbeReport> probes;
  for (auto& r : results) {
    for (auto& [name, content] : r.files) {
      write_file(dir, name, content);
      r.status.files.push_back(name);
      m.files.push_back(name);
    }
    identities.insert(identities.end(), r.identities.begin(), r.identities.end());
    if (r.probe) probes.push_back(std::move(*r.probe));
    m.tasks.push_back(std::move(r.status));
  }
  auto emit = [&](const std::string& name, const std::string& content) {
    write_file(dir, name, content);
    m.files.push_back(name);
  };
  if (!identities.empty()) {
    emit("identities.json", export_report(identities, ExportFormat::json));
    emit("identities.csv", export_report(identities, ExportFormat::csv));
    emit("identities.txt", identity_table(identities));
  }
  if (config.command == Command::solitary_probe) emit("summary.csv", export_report(probes, ExportFormat::csv));

  m.finished = utc_now();
  m.files.push_back("manifest.json");
  nlohmann::ordered_json j;
  j["version"] = m.version;
  j["config"] = nlohmann::ordered_json::parse(m.config_echo);
  j["started"] = m.started;
  j["finished"] = m.finished;
  nlohmann::ordered_json tj = nlohmann::ordered_json::array();
  for (const auto& t : m.tasks)
    tj.push_back({{"name", t.name}, {"ok", t.ok}, {"message", t.message}, {"files", t.files}});
  j["tasks"] = tj;
  j["all_ok"] = m.all_ok();
  j["files"] = m.files;
  write_file(dir, "manifest.json", j.dump(2) + "\n");
  return m;
}

}  // namespace deepwave
