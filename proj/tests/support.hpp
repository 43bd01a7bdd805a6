#pragma once

// Helpers shared by the unit tests and the acceptance runner.

#include <algorithm>
#include <cmath>
#include <random>
#include <utility>
#include <vector>

#include "fracalc/derivatives.hpp"
#include "fracalc/operators.hpp"

namespace support {

using namespace fracalc;

inline OperatorParams params(Side side, double alpha, Interval iv = {0.0, 1.0}) {
  OperatorParams p;
  p.side = side;
  p.alpha = alpha;
  p.interval = iv;
  return p;
}

template <typename F>
double sup_gap(const GridFunction& g, F&& exact) {
  double worst = 0.0;
  for (int j = 0; j < g.points(); ++j) worst = std::max(worst, std::fabs(g.values()[j] - exact(g.node(j))));
  return worst;
}

inline double relative_gap(std::pair<double, double> v) {
  const double scale = std::max(std::fabs(v.first), std::fabs(v.second));
  return scale == 0.0 ? 0.0 : std::fabs(v.first - v.second) / scale;
}

/// Uniform values in [-1, 1] on `points` nodes of [0, 1].
inline GridFunction random_grid(std::mt19937_64& rng, int points = 2001) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::VectorXd v(points);
  for (int i = 0; i < points; ++i) v[i] = u(rng);
  return GridFunction({0.0, 1.0}, std::move(v));
}

/// True when every successive ratio is at most `ratio` (strict decrease included).
inline bool decreases_with_ratio(const std::vector<double>& v, double ratio) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (!(v[i] < v[i - 1]) || v[i] > ratio * v[i - 1]) return false;
  }
  return true;
}

/// ||J f - f||_1 and ||S f - I f||_1 along the alpha ladder, 2001 points.
inline std::pair<std::vector<double>, std::vector<double>> identity_ladder(const FunctionSpec& f, Side side,
                                                                          const std::vector<double>& alphas) {
  const Interval iv(0.0, 1.0);
  const int n = 2001;
  std::vector<double> j_gap;
  std::vector<double> s_gap;
  for (double alpha : alphas) {
    const OperatorParams p = params(side, alpha, iv);
    const Source src = source_of(f, iv, alpha);
    const GridFunction fg = GridFunction::sample(iv, n, [&](double x) { return src.eval(x); });
    j_gap.push_back(l1_norm(apply_j(src, p, n).outputs - fg));
    s_gap.push_back(l1_norm(apply_s(src, p, n).outputs - running_integral(src, iv, side, n)));
  }
  return {j_gap, s_gap};
}

/// ||D f - f'||_1 on the 2049-node grid of [0, 1], with D taken numerically
/// from samples of f and compared at interior nodes.
inline double derivative_gap(const GridFunction& f, const FunctionSpec& fprime, const OperatorParams& p) {
  const GridFunction d = d_frac_numeric(f, p, f.step());
  Eigen::VectorXd diff(d.points());
  for (int j = 0; j < d.points(); ++j) {
    diff[j] = d.values()[j] - eval_spec(fprime, d.node(j), p.interval, p.alpha);
  }
  diff[0] = 0.0;
  diff[d.points() - 1] = 0.0;
  return l1_norm(GridFunction(p.interval, diff));
}

}  // namespace support
