#include "fracalc/derivatives.hpp"

#include <algorithm>
#include <cmath>

#include "fracalc/special.hpp"

namespace fracalc {

namespace {

constexpr double kResidualTolerance = 1e-3;
const Accuracy kInnerAcc{1e-10, 1e-10, 4000};

double boundary_point(const OperatorParams& p) {
  return p.side == Side::Left ? p.interval.a : p.interval.b;
}

// Interior check points of a uniform n-point grid.
std::vector<double> check_points(const Interval& iv, int n_check) {
  if (n_check < 3) throw DomainError("need at least 3 check points");
  std::vector<double> xs;
  const double h = iv.length() / (n_check - 1);
  for (int i = 1; i + 1 < n_check; ++i) xs.push_back(iv.a + i * h);
  return xs;
}

// S phi sampled on nodes graded toward the side's endpoint.
std::shared_ptr<const PiecewiseLinear> sampled_s(const FunctionSpec& phi, const OperatorParams& p) {
  return sample_graded(s_source(source_of(phi, p.interval, p.alpha), p), p.interval, p.side);
}

}  // namespace

AcFunction AcFunction::make(FunctionSpec spec, FunctionSpec derivative_spec, const OperatorParams& p) {
  p.validate();
  const Interval& iv = p.interval;
  const double L = iv.length();
  const auto* grid = std::get_if<spec::Grid>(&spec);
  for (int i = 1; i <= 5; ++i) {
    double x = iv.a + i * L / 6.0;
    double h = 1e-5 * L;
    if (grid) {
      // Differences of an interpolant are exact inside a cell; probe at its middle.
      const GridFunction& g = grid->grid;
      const double step = g.step();
      const int j = std::clamp(static_cast<int>((x - g.interval().a) / step), 0, g.intervals() - 1);
      x = g.node(j) + 0.5 * step;
      h = 0.25 * step;
    }
    const double fd = (eval_spec(spec, x + h, iv, p.alpha) - eval_spec(spec, x - h, iv, p.alpha)) / (2.0 * h);
    const double d = eval_spec(derivative_spec, x, iv, p.alpha);
    if (!(std::fabs(fd - d) <= 1e-6 * std::max(1.0, std::fabs(d)))) {
      throw DomainError("AcFunction: derivative_spec does not match the derivative of spec at x = " +
                        std::to_string(x));
    }
  }
  AcFunction f{std::move(spec), std::move(derivative_spec), 0.0};
  f.boundary_value = eval_spec(f.spec, boundary_point(p), iv, p.alpha);
  return f;
}

QuadResult d_frac_ac_at(const AcFunction& f, const OperatorParams& p, double x) {
  p.validate();
  const double r = (p.side == Side::Left ? x - p.interval.a : p.interval.b - x) / p.alpha;
  double boundary_term = 0.0;
  if (f.boundary_value != 0.0) {
    if (!(r > 0.0)) throw DomainError("d_frac_ac: x at the endpoint with nonzero boundary value");
    boundary_term = f.boundary_value * e1(r) / p.alpha;
    if (p.side == Side::Right) boundary_term = -boundary_term;
  }
  QuadResult j = j_at(source_of(f.derivative_spec, p.interval, p.alpha), p, x);
  j.value += boundary_term;
  return j;
}

OperatorReport d_frac_ac(const AcFunction& f, const OperatorParams& p, int n_out) {
  p.validate();
  if (n_out < 2) throw DomainError("n_out must be at least 2");
  if (f.boundary_value != 0.0) {
    throw DomainError("d_frac_ac: the output grid contains the endpoint where E1 is unbounded");
  }
  // With a zero boundary value the representation is J f'.
  return apply_j(f.derivative_spec, p, n_out);
}

GridFunction d_frac_numeric(const GridFunction& g, const OperatorParams& p, double h) {
  p.validate();
  const double H = g.step();
  if (!(h > 0.0) || h > H * (1.0 + 1e-12)) throw DomainError("d_frac_numeric: need 0 < h <= node spacing");
  if (g.points() < 3) throw DomainError("d_frac_numeric: need at least 3 nodes");
  h = std::min(h, H);
  const int n = g.intervals();
  Eigen::VectorXd v = g.values();
  if (p.side == Side::Right) v.reverseInPlace();  // J_b is J_a of the reflection

  const Eigen::VectorXd on_nodes = j_lattice_weights(n, H, p.alpha, Side::Left) * v;
  const Eigen::VectorXd plus = h < H ? j_left_shifted(v, H, p.alpha, h) : on_nodes.tail(n);
  const Eigen::VectorXd minus = j_left_shifted(v, H, p.alpha, H - h);  // at x_m - h, m = 1..n
  Eigen::VectorXd d(n + 1);
  for (int m = 1; m < n; ++m) d[m] = (plus[m] - minus[m - 1]) / (2.0 * h);
  d[0] = (-3.0 * on_nodes[0] + 4.0 * on_nodes[1] - on_nodes[2]) / (2.0 * H);
  d[n] = (3.0 * on_nodes[n] - 4.0 * on_nodes[n - 1] + on_nodes[n - 2]) / (2.0 * H);
  if (p.side == Side::Right) {
    d.reverseInPlace();
    d = -d;
  }
  return GridFunction(g.interval(), std::move(d));
}

double numeric_d(const Source& f, const OperatorParams& p, double x, double h) {
  p.validate();
  const double a = p.interval.a;
  const double b = p.interval.b;
  if (!(h > 0.0) || 4.0 * h > p.interval.length()) throw DomainError("numeric_d: bad step");
  auto J = [&](double y) { return j_at(f, p, y).value; };
  if (x - a < 2.0 * h) return (-3.0 * J(x) + 4.0 * J(x + h) - J(x + 2.0 * h)) / (2.0 * h);
  if (b - x < 2.0 * h) return (3.0 * J(x) - 4.0 * J(x - h) + J(x - 2.0 * h)) / (2.0 * h);
  return (J(x + h) - J(x - h)) / (2.0 * h);
}

ResidualReport check_inversion_js(const FunctionSpec& f, const OperatorParams& p, int n_check) {
  p.validate();
  const Source src = source_of(f, p.interval, p.alpha);
  const Source s_img = source_of(sample_graded(s_source(src, p), p.interval, p.side));
  const Source j_img = source_of(sample_graded(j_source(src, p), p.interval, p.side));
  const GridFunction running = running_integral(src, p.interval, p.side, n_check);
  double worst = 0.0;
  for (int i = 0; i < n_check; ++i) {
    const double x = running.node(i);
    const double target = running.values()[i];
    worst = std::max(worst, std::fabs(j_at(s_img, p, x).value - target));
    worst = std::max(worst, std::fabs(s_at(j_img, p, x).value - target));
  }
  return {p.side == Side::Left ? "inversion_js_left" : "inversion_js_right", p.side, p.alpha, worst,
          1e-5, worst < 1e-5};
}

ResidualReport check_inversion_ds(const FunctionSpec& phi, const OperatorParams& p, int n_check) {
  p.validate();
  const Source s_phi = source_of(sampled_s(phi, p));
  const double h = default_difference_step(p.interval);
  const double sign = p.side == Side::Left ? 1.0 : -1.0;
  double worst = 0.0;
  for (double x : check_points(p.interval, n_check)) {
    const double d = numeric_d(s_phi, p, x, h);
    worst = std::max(worst, std::fabs(d - sign * eval_spec(phi, x, p.interval, p.alpha)));
  }
  return {p.side == Side::Left ? "inversion_ds_left" : "inversion_ds_right", p.side, p.alpha, worst,
          kResidualTolerance, worst < kResidualTolerance};
}

ResidualReport katr_residual(const FunctionSpec& f, const OperatorParams& p, int n_check) {
  p.validate();
  if (singular_at_left(f) || singular_at_right(f)) {
    throw DomainError("katr_residual: only bounded functions are supported");
  }
  // Calculus derivative by the spec's own rule; the AC representation then
  // gives D f pointwise.
  const Interval iv = p.interval;
  const double alpha = p.alpha;
  const double fb = eval_spec(f, boundary_point(p), iv, alpha);
  OperatorParams inner = p;
  inner.acc = kInnerAcc;
  Source fprime;
  fprime.eval = [f, iv, alpha](double y) { return eval_spec_derivative(f, y, iv, alpha); };
  Source df;
  df.eval = [fprime, inner, fb, iv, alpha](double y) {
    const double r = (inner.side == Side::Left ? y - iv.a : iv.b - y) / alpha;
    double v = j_at(fprime, inner, y).value;
    if (fb != 0.0 && r > 0.0) v += (inner.side == Side::Left ? fb : -fb) * e1(r) / alpha;
    return v;
  };
  if (fb != 0.0) {
    (p.side == Side::Left ? df.at_a : df.at_b) = Singularity::Log;
  }
  const double sign = p.side == Side::Left ? 1.0 : -1.0;
  double worst = 0.0;
  for (double x : check_points(iv, n_check)) {
    const double sdf = s_at(df, inner, x).value;
    worst = std::max(worst, std::fabs(sdf - sign * eval_spec(f, x, iv, alpha)));
  }
  return {p.side == Side::Left ? "katr_left" : "katr_right", p.side, p.alpha, worst,
          kResidualTolerance, worst < kResidualTolerance};
}

std::pair<double, double> parts_fractional(const FunctionSpec& phi_f, const FunctionSpec& phi_g,
                                           const OperatorParams& p) {
  p.validate();
  OperatorParams left = p;
  left.side = Side::Left;
  OperatorParams right = p;
  right.side = Side::Right;
  const Source f = source_of(sampled_s(phi_f, right));
  const Source g = source_of(sampled_s(phi_g, left));
  const double h = default_difference_step(p.interval);
  // Composite Gauss-Legendre over 32 equal panels.
  const GaussRule rule = gauss_legendre(8);
  const int panels = 32;
  const double w = p.interval.length() / panels;
  double lhs = 0.0;
  double rhs = 0.0;
  for (int k = 0; k < panels; ++k) {
    const double c = p.interval.a + (k + 0.5) * w;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double x = c + 0.5 * w * rule.nodes[i];
      const double wt = 0.5 * w * rule.weights[i];
      lhs += wt * f.eval(x) * numeric_d(g, left, x, h);
      rhs -= wt * numeric_d(f, right, x, h) * g.eval(x);
    }
  }
  return {lhs, rhs};
}

}  // namespace fracalc
