#include "fracalc/grid.hpp"

#include <algorithm>
#include <cmath>

namespace fracalc {

GridFunction::GridFunction(Interval interval, Eigen::VectorXd values)
    : interval_(interval), values_(std::move(values)) {
  if (values_.size() < 2) throw DomainError("GridFunction: need at least 2 points");
  if (!values_.allFinite()) throw DomainError("GridFunction: values must be finite");
}

int GridFunction::cell_of(double x) const {
  const double t = (x - interval_.a) / step();
  const int j = static_cast<int>(std::floor(t));
  return std::clamp(j, 0, intervals() - 1);
}

double GridFunction::operator()(double x) const {
  if (!interval_.contains(x, 1e-12 * interval_.length())) {
    throw DomainError("GridFunction: x outside the grid interval");
  }
  const int j = cell_of(x);
  const double x0 = node(j);
  const double t = (x - x0) / (node(j + 1) - x0);
  if (t == 0.0) return values_[j];
  if (t == 1.0) return values_[j + 1];
  return values_[j] + t * (values_[j + 1] - values_[j]);
}

double GridFunction::slope(double x) const {
  const int j = cell_of(x);
  return (values_[j + 1] - values_[j]) / (node(j + 1) - node(j));
}

double GridFunction::max_second_difference() const {
  double m = 0.0;
  for (int j = 1; j + 1 < points(); ++j) {
    m = std::max(m, std::fabs(values_[j - 1] - 2.0 * values_[j] + values_[j + 1]));
  }
  return m;
}

namespace {
template <typename F>
double trapezoid(const GridFunction& f, F&& g) {
  const Eigen::VectorXd& v = f.values();
  double s = 0.5 * (g(v[0]) + g(v[v.size() - 1]));
  for (Eigen::Index j = 1; j + 1 < v.size(); ++j) s += g(v[j]);
  return s * f.step();
}
}  // namespace

double l1_norm(const GridFunction& f) {
  return trapezoid(f, [](double v) { return std::fabs(v); });
}

double l2_norm(const GridFunction& f) {
  return std::sqrt(trapezoid(f, [](double v) { return v * v; }));
}

double sup_norm(const GridFunction& f) { return f.values().cwiseAbs().maxCoeff(); }

GridFunction operator-(const GridFunction& l, const GridFunction& r) {
  if (!(l.interval() == r.interval()) || l.points() != r.points()) {
    throw DomainError("GridFunction: difference needs identical nodes");
  }
  return GridFunction(l.interval(), l.values() - r.values());
}

}  // namespace fracalc
