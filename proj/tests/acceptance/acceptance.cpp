// Acceptance run: one PASS/FAIL line per criterion. Tolerances, grids and
// campaigns are pinned here; nothing is read from the environment.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <future>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "deepwave/config.hpp"
#include "deepwave/decay.hpp"
#include "deepwave/halfplane.hpp"
#include "deepwave/identities.hpp"
#include "deepwave/linearized.hpp"
#include "deepwave/runner.hpp"
#include "deepwave/solitary.hpp"
#include "deepwave/steady.hpp"
#include "deepwave/stokes.hpp"
#include "deepwave/templates.hpp"
#include "deepwave/transforms.hpp"
#include "oracles.hpp"

using namespace deepwave;
namespace fs = std::filesystem;
constexpr double pi = std::numbers::pi;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

// Random band-limited profile with modes 1..kmax, zero mean.
Profile random_band(const Grid& g, int kmax, SeededStream& rng) {
  std::vector<double> a(kmax + 1), b(kmax + 1);
  for (int k = 1; k <= kmax; ++k) {
    a[k] = rng.uniform(-1, 1) / k;
    b[k] = rng.uniform(-1, 1) / k;
  }
  return Profile::sample(g, [&](double x) {
    double s = 0;
    for (int k = 1; k <= kmax; ++k) s += a[k] * std::cos(k * x) + b[k] * std::sin(k * x);
    return s;
  });
}

std::vector<Profile> seeded_family(const Grid& g, std::uint64_t seed, std::size_t count) {
  std::vector<Profile> out;
  for (const auto& spec : seeded_decaying_family(seed, count)) out.push_back(make_template(g, spec));
  return out;
}

Outcome ac1() {
  SeededStream rng(1);
  double err_h2 = 0, err_skew = 0, err_mult = 0;
  for (int p = 8; p <= 12; ++p) {
    const std::size_t n = std::size_t{1} << p;
    const Grid g = Grid::periodic(n, 2 * pi);
    const int kmax = static_cast<int>(n / 2 - 1);
    for (int trial = 0; trial < 3; ++trial) {
      const Profile u = random_band(g, kmax, rng), v = random_band(g, kmax, rng);
      err_h2 = std::max(err_h2, sup_norm(hilbert(hilbert(v)) + v));
      err_skew = std::max(err_skew, std::abs(pairing(hilbert(u), v) + pairing(u, hilbert(v))));
    }
    for (int k : {1, 7, kmax}) {
      const Profile c = Profile::sample(g, [k](double x) { return std::cos(k * x); });
      const Profile s = Profile::sample(g, [k](double x) { return std::sin(k * x); });
      err_mult = std::max(err_mult, sup_norm(hilbert(c) - s));
      err_mult = std::max(err_mult, sup_norm(hilbert(s) + c));
      err_mult = std::max(err_mult, sup_norm(conjugate_derivative(c) - static_cast<double>(k) * c) / k);
    }
  }
  const double worst = std::max({err_h2, err_skew, err_mult});
  return {worst <= 1e-10, "H^2+I " + sci(err_h2) + ", skew " + sci(err_skew) + ", multipliers " + sci(err_mult) +
                              " (tol 1e-10, n = 2^8..2^12)"};
}

Outcome ac2() {
  const Grid g = Grid::line(1 << 14, 200.0);
  double worst = 0;
  for (const Profile& v : seeded_family(g, 2, 20)) worst = std::max(worst, commutator_defect(v, 1e-4).lhs);
  const Profile at = Profile::sample(Grid::line(1 << 14, 400.0), [](double x) { return std::atan(x); });
  const IdentityReport r = commutator_defect(at);
  const double constant = r.lhs + r.tail_estimate.value_or(0.0);
  const double arctan_err = std::abs(constant - 1.0);
  return {worst <= 1e-4 && arctan_err <= 1e-3,
          "family sup " + sci(worst) + " (tol 1e-4), arctan constant " + std::to_string(constant) + " (tol 1e-3)"};
}

Outcome ac3() {
  const Grid g = Grid::line(1 << 14, 200.0);
  double worst = 0;
  for (const Profile& w : seeded_family(g, 3, 20)) {
    const double w2 = pairing(w, w);
    for (double mu : {-2.0, -1.0, 0.0, 1.0, 2.0}) {
      const IdentityReport r = pohozaev_pairing(WaveState(w, mu));
      worst = std::max(worst, r.defect / (1.0 + w2));
    }
  }
  return {worst <= 1e-5, "max defect / (1 + int w^2) = " + sci(worst) + " (tol 1e-5, 20 profiles x 5 mu)"};
}

Outcome ac4() {
  const Grid g = Grid::periodic(128, 2 * pi);
  const NewtonResult s = newton_solve_periodic(Profile::sample(g, [](double x) { return 0.1 * std::cos(x); }), 0.98);
  const WaveState st(s.point.profile, 0.98);
  const double rd = residual_deep(st).sup_norm, rb = residual_bernoulli(st).sup_norm;
  const bool nontrivial = s.point.amplitude > 1e-3;

  const oracle::CosineGalerkin gal(2);
  const double a1 = 0.01, a2 = 0.02;
  const double m1 = gal.onset_mu(a1), m2 = gal.onset_mu(a2);
  const double c4_ref = ((m2 - 1) / (a2 * a2) - (m1 - 1) / (a1 * a1)) / (a2 * a2 - a1 * a1);
  const double c2_ref = (m1 - 1) / (a1 * a1) - c4_ref * a1 * a1;
  std::vector<BranchPoint> pts;
  bool onset_ok = true;
  for (int i = 0; i <= 8; ++i) {
    const NewtonResult r = onset_point(g, 0.01 + 0.005 * i);
    onset_ok = onset_ok && r.converged;
    pts.push_back(r.point);
  }
  const double c2 = fit_onset_law(pts).c2;
  const double rel = std::abs(c2 - c2_ref) / std::abs(c2_ref);
  return {s.converged && nontrivial && rd <= 1e-11 && rb <= 1e-11 && onset_ok && rel <= 0.1,
          "amplitude " + std::to_string(s.point.amplitude) + ", residuals " + sci(rd) + " / " + sci(rb) +
              " (tol 1e-11), c2 " + std::to_string(c2) + " vs galerkin " + std::to_string(c2_ref) + " (tol 10%)"};
}

Outcome ac5() {
  const Grid g = Grid::line(1024, 64.0);
  const std::vector<TemplateSpec> guesses = {
      {"gaussian", {{"amplitude", 0.1}}},
      {"gaussian", {{"amplitude", 0.5}, {"width", 2.0}}},
      {"gaussian", {{"amplitude", -0.1}}},
      {"gaussian", {{"amplitude", -0.5}, {"width", 2.0}}},
      {"sech2", {{"amplitude", 0.3}}},
      {"sech2", {{"amplitude", -0.3}}},
      {"sech2", {{"amplitude", 1.0}, {"width", 2.0}}},
      {"rational", {{"amplitude", 0.3}, {"power", 2.0}}},
      {"rational", {{"amplitude", -0.3}, {"power", 2.0}}},
      {"wavepacket", {{"amplitude", 0.3}, {"width", 5.0}, {"wavenumber", 1.0}}},
      {"wavepacket", {{"amplitude", 0.3}, {"width", 5.0}, {"wavenumber", 2.0}}},
      {"wavepacket", {{"amplitude", -0.3}, {"width", 3.0}, {"wavenumber", 0.5}}},
  };
  std::vector<std::future<ProbeReport>> jobs;
  for (double mu : {0.5, 1.0, 2.0})
    for (const auto& spec : guesses)
      jobs.push_back(std::async(std::launch::async, [&g, spec, mu] {
        return newton_probe_line(make_template(g, spec), mu, spec.label());
      }));
  int counterexamples = 0, near = 0, bound_fail = 0, nontrivial = 0;
  int by_outcome[4] = {0, 0, 0, 0};
  std::string notes;
  for (auto& j : jobs) {
    const ProbeReport r = j.get();
    ++by_outcome[static_cast<int>(r.outcome)];
    const double rho = r.decay ? r.decay->rho : 0.0;
    if (r.outcome == ProbeOutcome::converged_nontrivial) {
      ++nontrivial;
      notes += " [" + r.initial_label + " mu=" + std::to_string(r.mu).substr(0, 4) + " rho=" + sci(rho) + "]";
      if (r.final_residual <= 1e-8 && rho >= 1.6) ++counterexamples;
    }
    if (r.final_residual <= 1e-8) {
      ++near;
      if (!r.certificate.bound_holds) ++bound_fail;
    }
  }
  std::ostringstream os;
  os << jobs.size() << " runs: collapsed " << by_outcome[0] << ", diverged " << by_outcome[1] << ", stagnated "
     << by_outcome[2] << ", converged nontrivial " << nontrivial << notes << "; decaying nontrivial " << counterexamples
     << "; certificate bound violated on " << bound_fail << " of " << near << " near-solutions";
  return {counterexamples == 0 && bound_fail == 0, os.str()};
}

Outcome ac6() {
  const Grid g = Grid::line(1024, 32.0);
  const std::vector<Profile> fam = seeded_family(g, 6, 6);
  double worst = 0, roundtrip = 0;
  for (double mu : {-1.0, 1.0}) {
    const Profile w = make_template(g, {"gaussian", {{"amplitude", 0.01}}});
    const WaveState st(w, mu);
    for (std::size_t i = 0; i + 1 < fam.size(); ++i) {
      worst = std::max(worst, conjugation_check(fam[i], fam[i + 1], st).defect);
      roundtrip = std::max(roundtrip, sup_norm(plotnikov_inverse(plotnikov_forward(fam[i], w), w) - fam[i]));
    }
  }
  return {worst <= 1e-6 && roundtrip <= 1e-9, "conjugation defect " + sci(worst) + " (tol 1e-6, w = 0.01 gaussian), "
                                                  "roundtrip " + sci(roundtrip) + " (tol 1e-9)"};
}

Outcome ac7() {
  const double mu = -1.0, V0 = 1.0;
  const Grid g = Grid::line(1024, 256.0);
  const Profile G = Profile::sample(g, [=](double x) { return mu + V0 / (std::cosh(x) * std::cosh(x)); });
  const SchrodingerSpectrum s = schrodinger_spectrum(G, mu, true);
  const double e0 = s.eigenvalues[0], e1 = s.eigenvalues[1];
  std::vector<double> v0(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) v0[i] = (*s.eigenvectors)(static_cast<Eigen::Index>(i), 0);
  const DecayFit fit = decay_rate_fit(Profile(g, v0), FitWindow{32.0, 64.0});
  const SchrodingerSpectrum free = schrodinger_spectrum(Profile::constant(g, mu), mu);
  const double free_min = free.eigenvalues[0];
  const bool isolated = e0 < 0 && e1 - e0 > 0.1;
  return {isolated && fit.rho >= 1.8 && free_min >= -1e-8,
          "E0 " + std::to_string(e0) + ", E1 " + std::to_string(e1) + ", eigenvector rho " + std::to_string(fit.rho) +
              " on [32, 64] (min 1.8), zero potential min " + sci(free_min) + " (floor -1e-8)"};
}

Outcome ac8() {
  const Grid g = Grid::line(4096, 200.0);
  bool ok = true;
  std::string rows;
  for (double sigma : {1.0, 2.0, 4.0, 8.0}) {
    const Profile G = make_template(g, {"gaussian", {{"width", sigma}}});
    const LinearSolveResult r = solve_linear_inhomogeneous(G, 1.0);
    const double res = sup_norm(conjugate_derivative(r.V, LineOptions::unchecked()) - r.V - G);
    const double diff = sup_norm(r.V - solve_linear_dense(G, 1.0));
    ok = ok && res <= 1e-3 && diff <= 1e-3;
    rows += " sigma=" + std::to_string(static_cast<int>(sigma)) + ": residual " + sci(res) + ", vs dense " + sci(diff) + ";";
  }
  return {ok, rows + " (tol 1e-3, mu = 1, L = 200)"};
}

Outcome ac9() {
  SeededStream rng(9);
  double prod = 0, d2n = 0;
  for (std::size_t n : {64u, 256u, 1024u}) {
    const Grid g = Grid::periodic(n, 2 * pi);
    for (int trial = 0; trial < 4; ++trial) {
      const Profile v = random_band(g, static_cast<int>(n / 2 - 1), rng);
      d2n = std::max(d2n, sup_norm(dirichlet_to_neumann(v) - conjugate_derivative(v)));
      const Profile w = 0.05 * random_band(g, 8, rng);
      const Profile wp = derivative(w), hwp = hilbert(wp);
      for (double mu : {-1.0, 0.5, 1.0}) {
        const WaveState st(w, mu);
        const Profile r = bvp_residual(st).residual, B = residual_bernoulli(st).residual;
        for (std::size_t i = 0; i < n; ++i) {
          const double D = wp[i] * wp[i] + (1 + hwp[i]) * (1 + hwp[i]);
          prod = std::max(prod, std::abs(r[i] * D + B[i]));
        }
      }
    }
  }
  return {prod <= 1e-12 && d2n <= 1e-8, "bvp*D + B " + sci(prod) + " (tol 1e-12), D2N - Hd/dx " + sci(d2n) + " (tol 1e-8)"};
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

Outcome ac10() {
  const fs::path root = fs::temp_directory_path() / "deepwave_acceptance_determinism";
  fs::remove_all(root);
  const Command commands[] = {Command::verify_identities, Command::stokes_continue, Command::solitary_probe,
                              Command::spectrum,          Command::bvp_check,       Command::linear_solve};
  std::size_t compared = 0, differing = 0;
  std::string which;
  for (Command c : commands) {
    RunConfig cfg = default_config(c);
    cfg.seed = 10;
    std::vector<fs::path> dirs;
    for (int run = 0; run < 2; ++run) {
      cfg.output_dir = (root / (std::string(to_string(c)) + "_" + std::to_string(run))).string();
      run_command(cfg);
      dirs.emplace_back(cfg.output_dir);
    }
    for (const auto& e : fs::directory_iterator(dirs[0])) {
      const std::string name = e.path().filename().string();
      if (name == "manifest.json") continue;  // carries timestamps
      ++compared;
      if (slurp(e.path()) != slurp(dirs[1] / name)) {
        ++differing;
        which += " " + std::string(to_string(c)) + "/" + name;
      }
    }
  }
  fs::remove_all(root);
  return {compared > 0 && differing == 0,
          std::to_string(compared) + " files compared across 6 commands, " + std::to_string(differing) + " differ" + which};
}

}  // namespace

int main() {
  struct Criterion {
    const char* id;
    const char* what;
    double budget_s;  // 0: no runtime bound
    std::function<Outcome()> run;
  };
  const Criterion all[] = {
      {"AC1", "hilbert suite", 5, ac1},
      {"AC2", "commutator identity", 30, ac2},
      {"AC3", "pohozaev pairing", 60, ac3},
      {"AC4", "stokes control", 60, ac4},
      {"AC5", "solitary probe campaign", 600, ac5},
      {"AC6", "conjugation identity", 0, ac6},
      {"AC7", "spectral dichotomy", 0, ac7},
      {"AC8", "explicit linear solve", 0, ac8},
      {"AC9", "cross-formulation identities", 0, ac9},
      {"AC10", "determinism", 0, ac10},
  };
  int failed = 0;
  for (const auto& c : all) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = c.budget_s == 0 || secs < c.budget_s;
    const bool pass = o.pass && in_time;
    failed += pass ? 0 : 1;
    std::printf("%-4s %s  %s: %s [%.1f s%s]\n", c.id, pass ? "PASS" : "FAIL", c.what, o.detail.c_str(), secs,
                c.budget_s > 0 ? (in_time ? ", within budget" : ", over budget") : "");
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
