#pragma once

#include <Eigen/Dense>

#include "fracalc/accuracy.hpp"

namespace fracalc {

struct Interval {
  double a;
  double b;

  Interval(double a_, double b_) : a(a_), b(b_) {
    if (!(a < b)) throw DomainError("Interval: need a < b");
  }

  double length() const { return b - a; }
  bool contains(double x, double slack = 0.0) const { return x >= a - slack && x <= b + slack; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Samples at the uniform nodes a + j (b - a) / N, j = 0..N. Between nodes
/// the function is the piecewise-linear interpolant.
class GridFunction {
 public:
  GridFunction(Interval interval, Eigen::VectorXd values);

  template <typename F>
  static GridFunction sample(Interval interval, int points, F&& f) {
    if (points < 2) throw DomainError("GridFunction: need at least 2 points");
    Eigen::VectorXd v(points);
    const double h = interval.length() / (points - 1);
    for (int j = 0; j < points; ++j) {
      v[j] = f(j + 1 == points ? interval.b : interval.a + j * h);
    }
    return GridFunction(interval, std::move(v));
  }

  const Interval& interval() const { return interval_; }
  const Eigen::VectorXd& values() const { return values_; }
  int points() const { return static_cast<int>(values_.size()); }
  int intervals() const { return points() - 1; }
  double step() const { return interval_.length() / intervals(); }
  double node(int j) const { return j == intervals() ? interval_.b : interval_.a + j * step(); }

  /// Piecewise-linear interpolation; exact at nodes.
  double operator()(double x) const;

  /// Slope of the interpolant on the cell containing x (right cell at nodes).
  double slope(double x) const;

  /// max_j |f_{j-1} - 2 f_j + f_{j+1}|, the curvature proxy used in the
  /// interpolation error term.
  double max_second_difference() const;

  friend bool operator==(const GridFunction& l, const GridFunction& r) {
    return l.interval_ == r.interval_ && l.values_ == r.values_;
  }

 private:
  int cell_of(double x) const;

  Interval interval_;
  Eigen::VectorXd values_;
};

// Trapezoid-rule norms on the grid nodes.
double l1_norm(const GridFunction& f);
double l2_norm(const GridFunction& f);
double sup_norm(const GridFunction& f);

/// Node-wise difference of two grids on identical nodes.
GridFunction operator-(const GridFunction& l, const GridFunction& r);

}  // namespace fracalc
