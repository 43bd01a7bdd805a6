#pragma once

#include <string>
#include <utility>

#include "fracalc/operators.hpp"

namespace fracalc {

/// An absolutely continuous function given by its values, its derivative
/// and the boundary value on the operator's side (f(a) for Left, f(b) for
/// Right).
struct AcFunction {
  FunctionSpec spec;
  FunctionSpec derivative_spec;
  double boundary_value = 0.0;

  /// Builds the decomposition for side p.side and checks derivative_spec
  /// against central differences of spec at 5 interior points (tol 1e-6).
  static AcFunction make(FunctionSpec spec, FunctionSpec derivative_spec, const OperatorParams& p);
};

/// D f through the AC representation
///   Left:  f(a) E1((x-a)/alpha)/alpha + (J_a f')(x)
///   Right: -f(b) E1((b-x)/alpha)/alpha + (J_b f')(x).
QuadResult d_frac_ac_at(const AcFunction& f, const OperatorParams& p, double x);

/// Uniform-grid version; the grid contains both endpoints, so a nonzero
/// boundary value is a domain error.
OperatorReport d_frac_ac(const AcFunction& f, const OperatorParams& p, int n_out);

/// D g as the central difference of J g at x +- h on the nodes of g. The
/// two endpoint values are one-sided second-order estimates; only interior
/// nodes carry the O(h^2) guarantee.
GridFunction d_frac_numeric(const GridFunction& g, const OperatorParams& p, double h);

/// Central difference step used by the residual checks.
inline double default_difference_step(const Interval& i) { return i.length() / 4096.0; }

/// Derivative of J f at x by differences of step h; switches to one-sided
/// stencils within 2h of an endpoint.
double numeric_d(const Source& f, const OperatorParams& p, double x, double h);

struct ResidualReport {
  std::string check;
  Side side = Side::Left;
  double alpha = 0.0;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

/// sup over n_check uniform points of |J(S f) - I f| and |S(J f) - I f|,
/// where I is the running integral from the side's endpoint. The inner
/// image is sampled on graded nodes and the outer operator is exact on its
/// interpolant.
ResidualReport check_inversion_js(const FunctionSpec& f, const OperatorParams& p, int n_check = 11);

/// sup over interior points of |D(S phi) - phi| (Left) or |D(S phi) + phi|
/// (Right). S phi is sampled on a graded grid and D is taken numerically.
ResidualReport check_inversion_ds(const FunctionSpec& phi, const OperatorParams& p, int n_check = 11);

/// sup over interior points of |S(D f) - f + (J f)(a) S((x-a)/alpha)| with
/// D f from the AC representation. (J f)(a) = 0 for bounded f.
ResidualReport katr_residual(const FunctionSpec& f, const OperatorParams& p, int n_check = 11);

/// Both sides of  int f (D_a g) = - int (D_b f) g  for f = S_b phi_f and
/// g = S_a phi_g, derivatives taken numerically.
std::pair<double, double> parts_fractional(const FunctionSpec& phi_f, const FunctionSpec& phi_g,
                                           const OperatorParams& p);

}  // namespace fracalc
