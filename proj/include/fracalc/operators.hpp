#pragma once

#include <functional>
#include <memory>
#include <utility>
#include <vector>

#include "fracalc/funcspec.hpp"
#include "fracalc/grid.hpp"
#include "fracalc/quadrature.hpp"

namespace fracalc {

enum class Side { Left, Right };

const char* side_name(Side side);

struct OperatorParams {
  Side side = Side::Left;
  double alpha = 1.0;
  Interval interval{0.0, 1.0};
  Accuracy acc{1e-11, 1e-11, 4000};

  void validate() const;
};

struct OperatorReport {
  GridFunction outputs;
  std::vector<bool> per_point_converged;
  double worst_err_estimate = 0.0;
  /// Per-point error estimates (quadrature plus interpolation terms).
  std::vector<double> per_point_err;

  bool all_converged() const;
};

/// Continuous piecewise-linear function on arbitrary increasing nodes.
class PiecewiseLinear {
 public:
  PiecewiseLinear(std::vector<double> nodes, std::vector<double> values);
  explicit PiecewiseLinear(const GridFunction& g);

  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& values() const { return values_; }
  double operator()(double x) const;
  double slope(double x) const;
  /// Exact integral of the interpolant over [lo, hi] within the node range.
  double integral(double lo, double hi) const;
  bool uniform() const { return uniform_; }

 private:
  std::size_t cell_of(double x) const;

  std::vector<double> nodes_;
  std::vector<double> values_;
  bool uniform_ = false;
};

/// Anything an operator can act on: a pointwise evaluator plus declared
/// endpoint behaviour. Grid-backed sources also carry their interpolant,
/// which switches the operators to exact product integration.
struct Source {
  std::function<double(double)> eval;
  Singularity at_a = Singularity::None;
  Singularity at_b = Singularity::None;
  std::shared_ptr<const PiecewiseLinear> piecewise;
};

Source source_of(const FunctionSpec& f, const Interval& interval, double alpha);
Source source_of(const GridFunction& g);
Source source_of(std::shared_ptr<const PiecewiseLinear> pl);

/// Nodes of [a, b]: uniform cells plus a geometric run (ratio 1.25, down
/// to 1e-12 of the length) toward the endpoint named by `side`, where
/// S-type images have unbounded slope.
std::vector<double> graded_nodes(const Interval& iv, Side side, int uniform_cells = 2048);

/// f sampled on graded_nodes, as a piecewise-linear source.
std::shared_ptr<const PiecewiseLinear> sample_graded(const Source& f, const Interval& iv, Side side,
                                                     int uniform_cells = 2048);

/// Pointwise operator values. x at the collapsed endpoint returns 0.
QuadResult j_at(const Source& f, const OperatorParams& p, double x);
QuadResult s_at(const Source& f, const OperatorParams& p, double x);

/// Lazily evaluated compositions x -> (J f)(x), x -> (S f)(x).
Source j_source(Source f, const OperatorParams& p);
Source s_source(Source f, const OperatorParams& p);

OperatorReport apply_j(const FunctionSpec& f, const OperatorParams& p, int n_out);
OperatorReport apply_s(const FunctionSpec& f, const OperatorParams& p, int n_out);
OperatorReport apply_j(const Source& f, const OperatorParams& p, int n_out);
OperatorReport apply_s(const Source& f, const OperatorParams& p, int n_out);

/// Left: int_a^x f. Right: int_x^b f.
GridFunction running_integral(const FunctionSpec& f, const Interval& interval, Side side, int n_out);
GridFunction running_integral(const Source& f, const Interval& interval, Side side, int n_out);

/// int_0^upper S(z) g(z) dz. The part on [0, min(upper, 1e-3)] is taken
/// through Q and Q1 with a linear model of g; the rest is adaptive
/// quadrature against the tabulated kernel. `upper` may be +infinity.
QuadResult integrate_against_s(const std::function<double(double)>& g, double upper,
                               Singularity at_upper, const Accuracy& acc);
inline constexpr double kKernelSplit = 1e-3;

/// Numeric Laplace transform of S at lambda (routes the singular head
/// through Q like every other S integral).
QuadResult laplace_s_kernel(double lambda, const Accuracy& acc = {});

/// Both sides of the integration-by-parts identity
///   int (J_a f) g = int f (J_b g)   (resp. with S_a, S_b),
/// by composite Gauss-Legendre over the interval. p.side is ignored.
std::pair<double, double> parts_j(const FunctionSpec& f, const FunctionSpec& g, const OperatorParams& p);
std::pair<double, double> parts_s(const FunctionSpec& f, const FunctionSpec& g, const OperatorParams& p);

/// Weight matrices of the lattice product-integration rule: for samples v
/// on the N+1 uniform nodes of an interval with spacing `step`,
/// (K v)_i approximates the operator at node i exactly for the
/// piecewise-linear interpolant of v.
Eigen::MatrixXd j_lattice_weights(int intervals, double step, double alpha, Side side);
Eigen::MatrixXd s_lattice_weights(int intervals, double step, double alpha, Side side,
                                  const Accuracy& acc = {});

/// Left-sided J of the interpolant of `values` (uniform nodes x_0..x_N with
/// spacing `step`) at the shifted points x_m + shift, m = 0..N-1, for
/// 0 <= shift < step. Exact product integration, used for differencing.
Eigen::VectorXd j_left_shifted(const Eigen::VectorXd& values, double step, double alpha,
                               double shift);

// Closed-form references for constants, monomials, shifted powers and the
// E1 kernel itself. Right-sided forms mirror with b - x.
double j_closed_constant(double C, const OperatorParams& p, double x);
double j_closed_monomial(int n, const OperatorParams& p, double x);
double j_closed_powshift(int n, const OperatorParams& p, double x);
double j_closed_e1kernel(const OperatorParams& p, double x);

/// int_0^r E1(t) E1(r - t) dt.
double e1_self_convolution(double r);

}  // namespace fracalc
