#include "deepwave/deepwave.h"

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <string>

#include "deepwave/config.hpp"
#include "deepwave/error.hpp"
#include "deepwave/halfplane.hpp"
#include "deepwave/identities.hpp"
#include "deepwave/linearized.hpp"
#include "deepwave/runner.hpp"
#include "deepwave/solitary.hpp"
#include "deepwave/steady.hpp"
#include "deepwave/stokes.hpp"

struct dw_grid {
  deepwave::Grid g;
};
struct dw_profile {
  deepwave::Profile p;
};

namespace {

thread_local std::string g_last_error;

dw_status to_status(deepwave::ErrorCode c) {
  using deepwave::ErrorCode;
  switch (c) {
    case ErrorCode::domain: return DW_ERR_DOMAIN;
    case ErrorCode::decay_violation: return DW_ERR_DECAY;
    case ErrorCode::singular: return DW_ERR_SINGULAR;
    case ErrorCode::non_finite: return DW_ERR_NON_FINITE;
    case ErrorCode::config: return DW_ERR_CONFIG;
    case ErrorCode::io: return DW_ERR_IO;
    case ErrorCode::invalid_argument: return DW_ERR_INVALID_ARGUMENT;
    case ErrorCode::insufficient_data: return DW_ERR_INSUFFICIENT_DATA;
  }
  return DW_ERR_INTERNAL;
}

template <typename F>
dw_status guard(F&& f) {
  try {
    f();
    g_last_error.clear();
    return DW_OK;
  } catch (const deepwave::Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return DW_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return DW_ERR_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  if (!p) throw deepwave::Error(deepwave::ErrorCode::invalid_argument, std::string(what) + " is null");
}

dw_profile* wrap(deepwave::Profile p) { return new dw_profile{std::move(p)}; }

void fill(const deepwave::IdentityReport& r, dw_identity_report* out) {
  std::memset(out, 0, sizeof *out);
  std::strncpy(out->name, r.name.c_str(), sizeof out->name - 1);
  out->lhs = r.lhs;
  out->rhs = r.rhs;
  out->defect = r.defect;
  out->tolerance = r.tolerance;
  out->passed = r.passed ? 1 : 0;
  out->has_tail_estimate = r.tail_estimate ? 1 : 0;
  out->tail_estimate = r.tail_estimate.value_or(0.0);
}

}  // namespace

extern "C" {

const char* dw_version(void) { return deepwave::kVersion; }

const char* dw_last_error(void) { return g_last_error.c_str(); }

const char* dw_certificate_verdict_name(int verdict) {
  if (verdict < 0 || verdict > static_cast<int>(deepwave::CertificateVerdict::bound_violated)) return "unknown";
  return deepwave::to_string(static_cast<deepwave::CertificateVerdict>(verdict));
}

dw_status dw_grid_periodic(size_t n, double period, dw_grid** out) {
  return guard([&] {
    need(out, "out");
    *out = new dw_grid{deepwave::Grid::periodic(n, period)};
  });
}

dw_status dw_grid_line(size_t n, double half_width, dw_grid** out) {
  return guard([&] {
    need(out, "out");
    *out = new dw_grid{deepwave::Grid::line(n, half_width)};
  });
}

void dw_grid_free(dw_grid* g) { delete g; }

size_t dw_grid_size(const dw_grid* g) { return g ? g->g.size() : 0; }

double dw_grid_spacing(const dw_grid* g) { return g ? g->g.spacing() : 0.0; }

dw_status dw_grid_nodes(const dw_grid* g, double* out) {
  return guard([&] {
    need(g, "grid");
    need(out, "out");
    for (size_t i = 0; i < g->g.size(); ++i) out[i] = g->g.node(i);
  });
}

dw_status dw_profile_new(const dw_grid* g, const double* values, dw_profile** out) {
  return guard([&] {
    need(g, "grid");
    need(values, "values");
    need(out, "out");
    *out = wrap(deepwave::Profile(g->g, std::vector<double>(values, values + g->g.size())));
  });
}

void dw_profile_free(dw_profile* p) { delete p; }

size_t dw_profile_size(const dw_profile* p) { return p ? p->p.size() : 0; }

dw_status dw_profile_values(const dw_profile* p, double* out) {
  return guard([&] {
    need(p, "profile");
    need(out, "out");
    std::copy(p->p.values().begin(), p->p.values().end(), out);
  });
}

dw_status dw_hilbert(const dw_profile* v, dw_hilbert_method method, double tail_threshold, dw_profile** out) {
  return guard([&] {
    need(v, "profile");
    need(out, "out");
    deepwave::LineOptions o;
    o.method = method == DW_HILBERT_PERIODIZED ? deepwave::HilbertMethod::periodized
                                               : deepwave::HilbertMethod::pv_quadrature;
    o.tail_threshold = tail_threshold > 0 ? tail_threshold : std::numeric_limits<double>::infinity();
    *out = wrap(deepwave::hilbert(v->p, o));
  });
}

dw_status dw_derivative(const dw_profile* v, dw_profile** out) {
  return guard([&] {
    need(v, "profile");
    need(out, "out");
    *out = wrap(deepwave::derivative(v->p));
  });
}

dw_status dw_conjugate_derivative(const dw_profile* v, dw_profile** out) {
  return guard([&] {
    need(v, "profile");
    need(out, "out");
    *out = wrap(deepwave::conjugate_derivative(v->p));
  });
}

dw_status dw_residual(const dw_profile* w, double mu, dw_residual_form form, dw_profile** out, double* l2,
                      double* sup) {
  return guard([&] {
    need(w, "profile");
    const deepwave::WaveState s(w->p, mu);
    deepwave::ResidualReport r = form == DW_FORM_BERNOULLI ? deepwave::residual_bernoulli(s)
                                 : form == DW_FORM_BVP     ? deepwave::bvp_residual(s)
                                                           : deepwave::residual_deep(s);
    if (l2) *l2 = r.l2_norm;
    if (sup) *sup = r.sup_norm;
    if (out) *out = wrap(std::move(r.residual));
  });
}

dw_status dw_injectivity_margin(const dw_profile* w, double* out) {
  return guard([&] {
    need(w, "profile");
    need(out, "out");
    *out = deepwave::injectivity_margin(w->p);
  });
}

dw_status dw_commutator_defect(const dw_profile* v, double tolerance, dw_identity_report* out) {
  return guard([&] {
    need(v, "profile");
    need(out, "out");
    fill(deepwave::commutator_defect(v->p, tolerance), out);
  });
}

dw_status dw_skew_pairing(const dw_profile* v, double tolerance, dw_identity_report* out) {
  return guard([&] {
    need(v, "profile");
    need(out, "out");
    fill(deepwave::skew_pairing(v->p, tolerance), out);
  });
}

dw_status dw_pohozaev_pairing(const dw_profile* w, double mu, dw_identity_report* out) {
  return guard([&] {
    need(w, "profile");
    need(out, "out");
    fill(deepwave::pohozaev_pairing(deepwave::WaveState(w->p, mu)), out);
  });
}

dw_status dw_apply_L(const dw_profile* v, const dw_profile* w, double mu, dw_profile** out) {
  return guard([&] {
    need(v, "v");
    need(w, "w");
    need(out, "out");
    *out = wrap(deepwave::apply_L(v->p, deepwave::WaveState(w->p, mu)));
  });
}

dw_status dw_plotnikov_forward(const dw_profile* v, const dw_profile* w, dw_profile** out) {
  return guard([&] {
    need(v, "v");
    need(w, "w");
    need(out, "out");
    *out = wrap(deepwave::plotnikov_forward(v->p, w->p));
  });
}

dw_status dw_plotnikov_inverse(const dw_profile* u, const dw_profile* w, dw_profile** out) {
  return guard([&] {
    need(u, "u");
    need(w, "w");
    need(out, "out");
    *out = wrap(deepwave::plotnikov_inverse(u->p, w->p));
  });
}

dw_status dw_potential_G(const dw_profile* w, double mu, dw_profile** out) {
  return guard([&] {
    need(w, "w");
    need(out, "out");
    *out = wrap(deepwave::potential_G(deepwave::WaveState(w->p, mu)));
  });
}

dw_status dw_schrodinger_spectrum(const dw_profile* G, double mu, double* eigenvalues) {
  return guard([&] {
    need(G, "G");
    need(eigenvalues, "eigenvalues");
    const auto s = deepwave::schrodinger_spectrum(G->p, mu);
    std::copy(s.eigenvalues.begin(), s.eigenvalues.end(), eigenvalues);
  });
}

dw_status dw_solve_linear_inhomogeneous(const dw_profile* g_rhs, double mu, dw_profile** out, double* dropped_tail) {
  return guard([&] {
    need(g_rhs, "g_rhs");
    need(out, "out");
    auto r = deepwave::solve_linear_inhomogeneous(g_rhs->p, mu);
    if (dropped_tail) *dropped_tail = r.dropped_tail;
    *out = wrap(std::move(r.V));
  });
}

dw_status dw_dirichlet_to_neumann(const dw_profile* v, dw_profile** out) {
  return guard([&] {
    need(v, "profile");
    need(out, "out");
    *out = wrap(deepwave::dirichlet_to_neumann(v->p));
  });
}

dw_status dw_newton_solve_periodic(const dw_profile* w0, double mu, int max_iterations, double tolerance,
                                   dw_profile** out, dw_branch_info* info) {
  return guard([&] {
    need(w0, "w0");
    deepwave::NewtonOptions o;
    if (max_iterations > 0) o.max_iterations = max_iterations;
    if (tolerance > 0) o.tolerance = tolerance;
    auto r = deepwave::newton_solve_periodic(w0->p, mu, o);
    if (info) {
      info->converged = r.converged ? 1 : 0;
      info->mu = r.point.mu;
      info->amplitude = r.point.amplitude;
      info->residual_norm = r.point.residual_norm;
      info->newton_iters = r.point.newton_iters;
      info->has_min_singular_value = r.min_singular_value ? 1 : 0;
      info->min_singular_value = r.min_singular_value.value_or(0.0);
    }
    if (out) *out = wrap(std::move(r.point.profile));
  });
}

dw_status dw_probe_line(const dw_profile* w0, double mu, dw_probe_summary* out) {
  return guard([&] {
    need(w0, "w0");
    need(out, "out");
    const auto r = deepwave::newton_probe_line(w0->p, mu);
    out->outcome = static_cast<dw_probe_outcome>(r.outcome);
    out->final_sup_norm = r.final_sup_norm;
    out->final_residual = r.final_residual;
    out->has_decay = r.decay ? 1 : 0;
    out->rho = r.decay ? r.decay->rho : 0.0;
    out->superalgebraic = r.decay && r.decay->superalgebraic ? 1 : 0;
    out->certificate_verdict = static_cast<int>(r.certificate.verdict);
    out->bound_holds = r.certificate.bound_holds ? 1 : 0;
    out->w_l2_squared = r.certificate.w_l2_squared;
    out->implied_bound = r.certificate.implied_bound;
    out->budget = r.certificate.budget;
  });
}

dw_status dw_decay_rate_fit(const dw_profile* v, double lo, double hi, dw_decay_fit* out) {
  return guard([&] {
    need(v, "profile");
    need(out, "out");
    std::optional<deepwave::FitWindow> w;
    if (lo < hi) w = deepwave::FitWindow{lo, hi};
    const auto f = deepwave::decay_rate_fit(v->p, w);
    *out = dw_decay_fit{f.rho, f.x_lo, f.x_hi, f.fit_residual, f.superalgebraic ? 1 : 0, f.envelope ? 1 : 0};
  });
}

dw_status dw_run_config_file(const char* path, const dw_run_overrides* ov, int* exit_code, char* manifest_path,
                             size_t path_capacity) {
  return guard([&] {
    need(path, "path");
    need(exit_code, "exit_code");
    deepwave::RunConfig c = deepwave::load_config(path);
    if (const char* env = std::getenv("DEEPWAVE_OUT"); env && *env) c.output_dir = env;
    if (ov) {
      if (ov->output_dir && *ov->output_dir) c.output_dir = ov->output_dir;
      if (ov->has_seed) c.seed = ov->seed;
      if (ov->threads > 0) c.threads = ov->threads;
      if (ov->tolerance_scale != 1.0) {
        if (!(ov->tolerance_scale > 0.0) || !std::isfinite(ov->tolerance_scale))
          throw deepwave::Error(deepwave::ErrorCode::config, "tolerance scale must be positive and finite");
        c.tolerances = c.tolerances.scaled(ov->tolerance_scale);
      }
    }
    const deepwave::RunManifest m = deepwave::run_command(c);
    *exit_code = m.all_ok() ? 0 : 1;
    if (manifest_path && path_capacity > 0) {
      const std::string p = (std::filesystem::path(c.output_dir) / "manifest.json").string();
      std::strncpy(manifest_path, p.c_str(), path_capacity - 1);
      manifest_path[path_capacity - 1] = '\0';
    }
  });
}

}  // extern "C"
