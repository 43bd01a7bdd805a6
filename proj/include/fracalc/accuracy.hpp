#pragma once

#include <stdexcept>
#include <string>

namespace fracalc {

/// Raised when an argument lies outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised by scalar evaluators whose internal refinement did not settle.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Error targets shared by the special functions, the quadrature engine and
/// the operators. `max_work` caps adaptive panels (and refinement levels for
/// series-style evaluators).
struct Accuracy {
  double abs_tol = 1e-12;
  double rel_tol = 1e-12;
  int max_work = 4000;

  void validate() const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) {
      throw DomainError("Accuracy: tolerances must be positive");
    }
    if (max_work < 8) {
      throw DomainError("Accuracy: max_work must be at least 8");
    }
  }

  /// Mixed absolute/relative target for a quantity of magnitude `scale`.
  double target(double scale) const {
    const double rel = rel_tol * (scale < 0 ? -scale : scale);
    return rel > abs_tol ? rel : abs_tol;
  }
};

}  // namespace fracalc
