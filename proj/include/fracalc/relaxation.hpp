#pragma once

#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "fracalc/funcspec.hpp"
#include "fracalc/grid.hpp"

namespace fracalc {

namespace rhs {
/// f(t, u) = g(t)
struct Autonomous {
  FunctionSpec g;
};
/// f(t, u) = g(t) + c u
struct Affine {
  FunctionSpec g;
  double c;
};
}  // namespace rhs

using RightHandSide = std::variant<rhs::Autonomous, rhs::Affine>;

/// D_0^alpha u + lambda u = f(t, u) on [0, 1] with (J_0^alpha u)(0) = 0.
struct RelaxationProblem {
  double alpha = 0.5;
  double lambda = 0.5;
  RightHandSide rhs = rhs::Autonomous{spec::Const{0.0}};
  double lipschitz_cf = 0.0;
  int grid_n = 256;
  double tol = 1e-8;
  int max_iter = 200;

  void validate() const;
  static Interval domain() { return {0.0, 1.0}; }
};

struct SolveDiagnostics {
  int iterations = 0;
  std::vector<double> sup_changes;
  double kappa = 0.0;
  bool converged = false;
  /// kappa >= 1: the contraction argument does not apply.
  bool warning = false;
};

struct RelaxationSolution {
  GridFunction u;
  SolveDiagnostics diagnostics;
};

/// alpha (lambda + C_f) Q(1/alpha).
double contraction_constant(double alpha, double lambda, double cf);

/// The operator T h(t) = int_0^t S((t-y)/alpha) h(y) dy, T h(0) = 0, on the
/// uniform grid of [0, 1], as a dense lower-triangular matrix.
class RelaxationOperator {
 public:
  RelaxationOperator(int grid_n, double alpha);

  Eigen::VectorXd apply(const Eigen::VectorXd& h) const { return weights_ * h; }
  const Eigen::MatrixXd& matrix() const { return weights_; }
  int grid_n() const { return grid_n_; }

 private:
  int grid_n_;
  Eigen::MatrixXd weights_;
};

GridFunction apply_t(const GridFunction& h, double alpha);

/// Picard iteration u <- T(-lambda u + f(., u)) from u0.
RelaxationSolution solve_picard(const RelaxationProblem& prob, const GridFunction& u0);

/// Picard map applied once (used for residual checks).
GridFunction picard_map(const RelaxationProblem& prob, const RelaxationOperator& t,
                        const GridFunction& u);

/// JSON problem documents: {"alpha", "lambda", "rhs": {"type": "autonomous"|"affine",
/// "g": "<spec>", "c": <number>}, "lipschitz_cf", "grid_n", "tol", "max_iter"}.
RelaxationProblem parse_problem_json(const std::string& text);
RelaxationProblem load_problem(const std::string& path);
std::string diagnostics_json(const SolveDiagnostics& d);

}  // namespace fracalc
