#pragma once

#include <array>
#include <vector>

#include "fracalc/accuracy.hpp"

namespace fracalc {

struct SpecialConstants {
  double euler_gamma;
  double zeta2;
};

inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

/// Euler's constant (literal) and zeta(2) = pi^2/6.
SpecialConstants special_constants();

// Exponential integral E1(x) = int_x^inf e^-t / t dt. Power series for
// x <= 1, modified Lentz continued fraction above.
double e1(double x, const Accuracy& acc = {});
double e1_series(double x, const Accuracy& acc = {});
double e1_continued_fraction(double x);

/// Antiderivative of x^n E1(x) with zero constant of integration:
/// x^{n+1}/(n+1) E1(x) - n!/(n+1) e_n(x) e^{-x}.
double e1_moment(int n, double x, const Accuracy& acc = {});

/// Exponential partial sum sum_{i=0}^k x^i / i!.
double ek(int k, double x);

/// ln Gamma(s) for s > 0.
double log_gamma(double s);

/// Regularized lower incomplete gamma P(s, x) = gamma(s, x) / Gamma(s).
double p_regularized(double s, double x, const Accuracy& acc = {});

/// The Volterra-type kernel S(x) = e^{-x} int_0^inf x^{s-1}/Gamma(s) ds.
/// Defined for x >= 1e-12; integrals reaching closer to 0 go through
/// s_cumulative.
double volterra_s(double x, const Accuracy& acc = {});
inline constexpr double kVolterraMinArgument = 1e-12;

/// int_0^X t^k S(t) dt, evaluated as int_0^inf s(s+1)...(s+k-1) P(s+k, X) ds.
double s_moment(int k, double X, const Accuracy& acc = {});

/// Q(X) = int_0^X S(t) dt, evaluated as int_0^inf P(s, X) ds.
double s_cumulative(double X, const Accuracy& acc = {});

/// Q1(X) = int_0^X t S(t) dt, evaluated as int_0^inf s P(s+1, X) ds.
double s_first_moment(double X, const Accuracy& acc = {});

/// Piecewise Chebyshev interpolant of S, built once from volterra_s.
///
/// The table interpolates ln(x S(x)) in u = ln x on cells of fixed width,
/// which is smooth across the whole range including the x -> 0 end where
/// S itself blows up like 1/(x ln^2 x). Arguments outside the tabulated
/// range fall back to volterra_s. Thread-safe after construction.
class VolterraTable {
 public:
  static const VolterraTable& instance();

  double operator()(double x) const;

  double min_argument() const { return x_min_; }
  double max_argument() const { return x_max_; }

  static constexpr int kNodes = 16;

 private:
  VolterraTable();

  double u_min_;
  double cell_width_;
  double x_min_;
  double x_max_;
  std::vector<std::array<double, kNodes>> cells_;
};

}  // namespace fracalc
