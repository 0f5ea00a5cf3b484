#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "deepwave/grid.hpp"
#include "deepwave/identities.hpp"
#include "deepwave/transforms.hpp"

namespace deepwave {

/// Complex boundary samples split into real and imaginary profiles.
struct BoundaryTrace {
  BoundaryTrace(Profile re, Profile im);
  Profile re;
  Profile im;
};

/// W* = 1 + Hw' + i w'.
BoundaryTrace boundary_trace(const Profile& w, const LineOptions& opts = {});

struct LinearOperatorMatrix {
  Grid grid;
  Eigen::MatrixXd entries;
  std::string label;

  Profile apply(const Profile& v) const;
};

/// L v = Hv' - mu (v + w Hv' + v Hw' + H((v w)')).
Profile apply_L(const Profile& v, const WaveState& state, const LineOptions& opts = LineOptions::unchecked());

/// Dense L assembled column by column from apply_L on unit vectors.
LinearOperatorMatrix assemble_L(const WaveState& state, const LineOptions& opts = LineOptions::unchecked(),
                                unsigned threads = 1);

/// Dense L built from the matrices of H and d/dx:
/// HD - mu (I + diag(w) HD + diag(Hw') + HD diag(w)).
LinearOperatorMatrix assemble_L_structured(const WaveState& state,
                                           const LineOptions& opts = LineOptions::unchecked());

/// Matrix of a linear profile map, built from its action on unit vectors.
Eigen::MatrixXd operator_matrix(const Grid& g, const std::function<Profile(const Profile&)>& op,
                                unsigned threads = 1);

/// P v = (1 + Hw') v + w' Hv.
Profile plotnikov_forward(const Profile& v, const Profile& w, const LineOptions& opts = LineOptions::unchecked());

/// v = ((1 + Hw') u - w' Hu) / |W*|^2. Throws singular when 1 + Hw' <= 0
/// somewhere.
Profile plotnikov_inverse(const Profile& u, const Profile& w, const LineOptions& opts = LineOptions::unchecked());

/// G = Im(W*'/W*) + mu |W*|^2 (1 + Hw'). Throws singular when the
/// injectivity margin is not positive.
Profile potential_G(const WaveState& state, const LineOptions& opts = LineOptions::unchecked());

/// lhs = int L(Pv) Pu, rhs = int (Hv' - G v) u.
IdentityReport conjugation_check(const Profile& u, const Profile& v, const WaveState& state,
                                 double tolerance = 1e-6, const LineOptions& opts = LineOptions::unchecked());

/// Dense |xi| multiplier (Hd/dx on the grid's period) plus diag(mu - G).
LinearOperatorMatrix schrodinger_operator(const Profile& G, double mu);

struct SchrodingerSpectrum {
  std::vector<double> eigenvalues;  // ascending
  /// Columns are eigenvectors, when requested.
  std::optional<Eigen::MatrixXd> eigenvectors;
  /// Frobenius norm of (M - M^T)/2 relative to that of M.
  double asymmetry = 0.0;
  std::string warning;
};

SchrodingerSpectrum schrodinger_spectrum(const Profile& G, double mu, bool with_vectors = false);

struct LinearSolveResult {
  Profile V;
  /// Bound 2 |G(x_last)| / mu on the neglected part of the integral beyond L
  /// (exact for monotone tails).
  double dropped_tail;
};

/// V = (1/mu) H(S') + S with S(x) = int_x^inf sin(mu (x - t)) G(t) dt, for
/// HV' - mu V = G on a line grid. Requires mu > 0.
LinearSolveResult solve_linear_inhomogeneous(const Profile& G_rhs, double mu);

/// Dense solve of (Hd/dx - mu) V = G with the |xi| multiplier matrix.
Profile solve_linear_dense(const Profile& G_rhs, double mu);

}  // namespace deepwave
