#pragma once

#include <functional>
#include <span>
#include <vector>

#include "fracalc/accuracy.hpp"

namespace fracalc {

/// Endpoint behaviour declared by the caller of the adaptive integrator.
/// Declared endpoints receive geometrically graded starting panels.
enum class Singularity { None, Log, Integrable };

struct Integrand {
  std::function<double(double)> f;
  Singularity left = Singularity::None;
  Singularity right = Singularity::None;

  static Integrand smooth(std::function<double(double)> f) { return {std::move(f)}; }
  static Integrand log_at_left(std::function<double(double)> f) {
    return {std::move(f), Singularity::Log, Singularity::None};
  }
  static Integrand log_at_right(std::function<double(double)> f) {
    return {std::move(f), Singularity::None, Singularity::Log};
  }
  static Integrand integrable_at_left(std::function<double(double)> f) {
    return {std::move(f), Singularity::Integrable, Singularity::None};
  }
};

struct QuadResult {
  double value = 0.0;
  double err_estimate = 0.0;
  int panels_used = 0;
  bool converged = false;
};

/// Adaptive Gauss-Kronrod (15/7) quadrature on [a, b]. Non-convergence
/// within acc.max_work panels is reported, not thrown.
QuadResult integrate(const Integrand& f, double a, double b, const Accuracy& acc = {});

/// int_a^inf f via t = a + u/(1-u).
QuadResult integrate_semi_infinite(const Integrand& f, double a, const Accuracy& acc = {});

/// int_0^inf e^{-lambda t} f(t) dt.
QuadResult laplace(const Integrand& f, double lambda, const Accuracy& acc = {});

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussRule gauss_legendre(int n);

/// Cached 16-point rule used by the s-axis integrals.
const GaussRule& gauss_legendre16();

}  // namespace fracalc
