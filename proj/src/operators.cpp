#include "fracalc/operators.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

#include "fracalc/special.hpp"

namespace fracalc {

namespace {

struct Moments {
  double m0;   // int K
  double m1c;  // int (z - lo) K
};

// Cells whose left end sits closer to 0 than a quarter of their width go
// through the exact antiderivatives / s-axis moments.
bool near_origin(double lo, double hi) { return lo < 0.25 * (hi - lo); }

template <typename K>
Moments gauss_cell(K&& kernel, double lo, double hi) {
  const GaussRule& gl = gauss_legendre16();
  const double c = 0.5 * (lo + hi);
  const double r = 0.5 * (hi - lo);
  double m0 = 0.0;
  double m1 = 0.0;
  for (int i = 0; i < 16; ++i) {
    const double z = c + r * gl.nodes[i];
    const double kv = gl.weights[i] * kernel(z);
    m0 += kv;
    m1 += kv * (z - lo);
  }
  return {m0 * r, m1 * r};
}

double e1_antiderivative(int n, double z) {
  if (z == 0.0) return n == 0 ? -1.0 : -0.5;
  return e1_moment(n, z);
}

Moments e1_cell(double lo, double hi) {
  if (!near_origin(lo, hi)) return gauss_cell([](double z) { return e1(z); }, lo, hi);
  const double a0 = e1_antiderivative(0, hi) - e1_antiderivative(0, lo);
  const double a1 = e1_antiderivative(1, hi) - e1_antiderivative(1, lo);
  return {a0, a1 - lo * a0};
}

const Accuracy kMomentAcc{1e-14, 1e-14, 4000};

Moments s_cell(double lo, double hi) {
  if (!near_origin(lo, hi)) {
    const VolterraTable& table = VolterraTable::instance();
    return gauss_cell([&table](double z) { return table(z); }, lo, hi);
  }
  const double q = s_moment(0, hi, kMomentAcc) - s_moment(0, lo, kMomentAcc);
  const double q1 = s_moment(1, hi, kMomentAcc) - s_moment(1, lo, kMomentAcc);
  return {q, q1 - lo * q};
}

enum class Kernel { E1, S };

Moments cell(Kernel k, double lo, double hi) {
  return k == Kernel::E1 ? e1_cell(lo, hi) : s_cell(lo, hi);
}

double kernel_scale(Kernel k, double alpha) { return k == Kernel::E1 ? 1.0 : alpha; }

// Integration length in z for the output point x.
double z_extent(const OperatorParams& p, double x) {
  const double d = p.side == Side::Left ? x - p.interval.a : p.interval.b - x;
  return std::max(0.0, d / p.alpha);
}

// Source argument x -/+ alpha z, kept strictly inside the interval so that
// sources unbounded at the far end are never evaluated on it.
double source_point(const OperatorParams& p, double x, double z) {
  if (p.side == Side::Left) {
    const double t = x - p.alpha * z;
    return t > p.interval.a ? t : std::nextafter(p.interval.a, p.interval.b);
  }
  const double t = x + p.alpha * z;
  return t < p.interval.b ? t : std::nextafter(p.interval.b, p.interval.a);
}

Singularity far_end(const Source& f, Side side) { return side == Side::Left ? f.at_a : f.at_b; }
Singularity near_end(const Source& f, Side side) { return side == Side::Left ? f.at_b : f.at_a; }

// Exact integral of kernel x piecewise-linear interpolant, over the cells of
// the interpolant that meet the integration range of the output point x.
// E1 cells use the antiderivatives at the cell boundaries, each boundary
// evaluated once.
QuadResult product_integral(const PiecewiseLinear& pl, const OperatorParams& p, double x,
                            Kernel k) {
  const std::vector<double>& t = pl.nodes();
  const std::vector<double>& v = pl.values();
  const double a = p.interval.a;
  const double b = p.interval.b;
  const double scale = kernel_scale(k, p.alpha);
  double cached_z = -1.0;
  double cached_a0 = 0.0;
  double cached_a1 = 0.0;
  auto antiderivatives = [&](double z, double& a0, double& a1) {
    if (z == cached_z) {
      a0 = cached_a0;
      a1 = cached_a1;
      return;
    }
    a0 = e1_antiderivative(0, z);
    a1 = e1_antiderivative(1, z);
    cached_z = z;
    cached_a0 = a0;
    cached_a1 = a1;
  };
  double sum = 0.0;
  for (std::size_t j = 0; j + 1 < t.size(); ++j) {
    double near_t;
    double far_t;
    double f_near;
    double f_far;
    if (p.side == Side::Left) {
      if (t[j] >= x || t[j + 1] <= a) continue;
      near_t = std::min(t[j + 1], x);
      far_t = std::max(t[j], a);
      f_near = near_t == t[j + 1] ? v[j + 1] : pl(near_t);
      f_far = far_t == t[j] ? v[j] : pl(far_t);
    } else {
      if (t[j + 1] <= x || t[j] >= b) continue;
      near_t = std::max(t[j], x);
      far_t = std::min(t[j + 1], b);
      f_near = near_t == t[j] ? v[j] : pl(near_t);
      f_far = far_t == t[j + 1] ? v[j + 1] : pl(far_t);
    }
    const double lo = std::fabs(x - near_t) / p.alpha;
    const double hi = std::fabs(x - far_t) / p.alpha;
    if (!(hi > lo)) continue;
    Moments m;
    // Differences of antiderivatives lose ~eps/w in m1c/w, so narrow cells
    // away from the origin use the Gauss rule instead.
    if (k == Kernel::E1 && (hi - lo < 1e-4 && !near_origin(lo, hi))) {
      m = e1_cell(lo, hi);
    } else if (k == Kernel::E1) {
      double lo0, lo1, hi0, hi1;
      // Adjacent cells share a boundary; visit the shared one last.
      if (p.side == Side::Left) {
        antiderivatives(hi, hi0, hi1);
        antiderivatives(lo, lo0, lo1);
      } else {
        antiderivatives(lo, lo0, lo1);
        antiderivatives(hi, hi0, hi1);
      }
      m.m0 = hi0 - lo0;
      m.m1c = (hi1 - lo1) - lo * m.m0;
    } else {
      m = s_cell(lo, hi);
    }
    sum += f_near * m.m0 + (f_far - f_near) * m.m1c / (hi - lo);
  }
  return {scale * sum, 0.0, 0, true};
}

struct HeadMoments {
  double q0;
  double q1;
  double q2;
};

HeadMoments head_moments(double delta) {
  return {s_moment(0, delta, kMomentAcc), s_moment(1, delta, kMomentAcc),
          s_moment(2, delta, kMomentAcc)};
}

const HeadMoments& split_moments() {
  static const HeadMoments m = head_moments(kKernelSplit);
  return m;
}

// int_0^upper S(z) g(z) dz. On [0, delta] g is replaced by its quadratic
// interpolant at 0, delta/2, delta and integrated exactly against the
// s-axis moments; the deviation of g from that quadratic at 3 delta/4
// bounds the head error. The remainder is adaptive quadrature.
QuadResult s_integral(const std::function<double(double)>& g, double upper, Singularity at_upper,
                      const Accuracy& acc) {
  const double delta = std::min(upper, kKernelSplit);
  const HeadMoments m = delta == kKernelSplit ? split_moments() : head_moments(delta);
  const double g0 = g(0.0);
  const double gm = g(0.5 * delta);
  const double gd = g(delta);
  // g ~ c0 + c1 z + c2 z^2 through the three samples.
  const double c0 = g0;
  const double c2 = 2.0 * (gd - 2.0 * gm + g0) / (delta * delta);
  const double c1 = (gd - g0) / delta - c2 * delta;
  const double head = c0 * m.q0 + c1 * m.q1 + c2 * m.q2;
  const double z3 = 0.75 * delta;
  double head_err = std::fabs(g(z3) - (c0 + c1 * z3 + c2 * z3 * z3)) * m.q0;
  if (!std::isfinite(head_err)) head_err = std::numeric_limits<double>::infinity();

  QuadResult out{head, head_err, 0, true};
  if (upper > delta) {
    const VolterraTable& table = VolterraTable::instance();
    Integrand tail;
    tail.f = [&](double z) {
      const double gv = g(z);
      return gv == 0.0 ? 0.0 : table(z) * gv;
    };
    tail.left = Singularity::Integrable;
    QuadResult r;
    if (std::isinf(upper)) {
      r = integrate_semi_infinite(tail, delta, acc);
    } else {
      tail.right = at_upper;
      r = integrate(tail, delta, upper, acc);
    }
    out.value += r.value;
    out.err_estimate += r.err_estimate;
    out.panels_used = r.panels_used;
    out.converged = r.converged;
  }
  out.converged = out.converged && std::isfinite(out.value) &&
                  out.err_estimate <= acc.target(out.value);
  return out;
}

QuadResult at_point(const Source& f, const OperatorParams& p, double x, Kernel k) {
  p.validate();
  if (!p.interval.contains(x, 1e-12 * p.interval.length())) {
    throw DomainError("operator: x outside the interval");
  }
  const double Z = z_extent(p, x);
  if (Z <= 0.0) return {0.0, 0.0, 0, true};
  if (f.piecewise) return product_integral(*f.piecewise, p, x, k);

  auto g = [&f, &p, x](double z) { return f.eval(source_point(p, x, z)); };
  if (k == Kernel::E1) {
    Integrand integrand;
    integrand.f = [&g](double z) {
      const double gv = g(z);
      return gv == 0.0 ? 0.0 : e1(z) * gv;
    };
    integrand.left = Singularity::Log;
    integrand.right = far_end(f, p.side);
    return integrate(integrand, 0.0, Z, p.acc);
  }
  if (near_end(f, p.side) != Singularity::None &&
      x == (p.side == Side::Left ? p.interval.b : p.interval.a)) {
    // The source blows up at x itself; the head model cannot see that.
    QuadResult r = s_integral([&g](double z) { return z == 0.0 ? 0.0 : g(z); }, Z,
                              far_end(f, p.side), p.acc);
    r.value *= p.alpha;
    r.err_estimate *= p.alpha;
    r.converged = false;
    return r;
  }
  QuadResult r = s_integral(g, Z, far_end(f, p.side), p.acc);
  r.value *= p.alpha;
  r.err_estimate *= p.alpha;
  return r;
}

bool lattice_aligned(const PiecewiseLinear& pl, const Interval& iv, int n_out) {
  const auto& t = pl.nodes();
  const double slack = 1e-12 * iv.length();
  return pl.uniform() && static_cast<int>(t.size()) == n_out && std::fabs(t.front() - iv.a) <= slack &&
         std::fabs(t.back() - iv.b) <= slack;
}

// Toeplitz moments of the lattice: cell k is [k w, (k+1) w].
std::vector<Moments> lattice_moments(int intervals, double w, Kernel k) {
  std::vector<Moments> m(intervals);
  for (int i = 0; i < intervals; ++i) m[i] = cell(k, i * w, (i + 1) * w);
  return m;
}

Eigen::MatrixXd lattice_weights(int intervals, double step, double alpha, Side side, Kernel k) {
  if (intervals < 1) throw DomainError("lattice weights: need at least one interval");
  if (!(step > 0.0) || !(alpha > 0.0)) throw DomainError("lattice weights: step and alpha must be positive");
  const double w = step / alpha;
  const double scale = kernel_scale(k, alpha);
  const std::vector<Moments> m = lattice_moments(intervals, w, k);
  const int n = intervals;
  Eigen::MatrixXd W = Eigen::MatrixXd::Zero(n + 1, n + 1);
  for (int i = 1; i <= n; ++i) {
    for (int j = 0; j < i; ++j) {
      const Moments& c = m[i - j - 1];
      W(i, j) += scale * c.m1c / w;
      W(i, j + 1) += scale * (c.m0 - c.m1c / w);
    }
  }
  if (side == Side::Left) return W;
  return W.reverse().eval();
}

OperatorReport apply(const Source& f, const OperatorParams& p, int n_out, Kernel k) {
  p.validate();
  if (n_out < 2) throw DomainError("n_out must be at least 2");
  const Interval& iv = p.interval;
  const double h = iv.length() / (n_out - 1);
  auto node = [&](int j) { return j + 1 == n_out ? iv.b : iv.a + j * h; };

  Eigen::VectorXd values(n_out);
  std::vector<bool> ok(n_out, true);
  std::vector<double> err(n_out, 0.0);

  if (f.piecewise && lattice_aligned(*f.piecewise, iv, n_out)) {
    const Eigen::Map<const Eigen::VectorXd> v(f.piecewise->values().data(), n_out);
    const Eigen::MatrixXd W = lattice_weights(n_out - 1, h, p.alpha, p.side, k);
    values = W * v;
  } else {
    for (int j = 0; j < n_out; ++j) {
      const QuadResult r = at_point(f, p, node(j), k);
      if (std::isfinite(r.value)) {
        values[j] = r.value;
      } else {
        values[j] = 0.0;
        ok[j] = false;
      }
      ok[j] = ok[j] && r.converged;
      err[j] = r.err_estimate;
    }
  }
  if (f.piecewise) {
    // Interpolation error of the piecewise-linear input, weighted by the
    // kernel mass over the whole interval.
    double curvature = 0.0;
    const auto& v = f.piecewise->values();
    for (std::size_t j = 1; j + 1 < v.size(); ++j) {
      curvature = std::max(curvature, std::fabs(v[j - 1] - 2.0 * v[j] + v[j + 1]));
    }
    const double mass =
        k == Kernel::E1 ? 1.0 : p.alpha * s_cumulative(iv.length() / p.alpha, kMomentAcc);
    for (double& e : err) e += curvature / 8.0 * mass;
  }
  const double worst = *std::max_element(err.begin(), err.end());
  return OperatorReport{GridFunction(iv, std::move(values)), std::move(ok), worst, std::move(err)};
}

std::uint64_t binomial(int n, int k) {
  std::uint64_t c = 1;
  for (int i = 1; i <= k; ++i) c = c * static_cast<std::uint64_t>(n - k + i) / i;
  return c;
}

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// int_0^R z^k E1(z) dz.
double e1_power_integral(int k, double R) {
  if (R <= 0.0) return 0.0;
  return e1_moment(k, R) + factorial(k) / (k + 1.0);
}

void check_closed_point(const OperatorParams& p, double x) {
  p.validate();
  if (!p.interval.contains(x)) throw DomainError("closed form: x outside the interval");
}

}  // namespace

const char* side_name(Side side) { return side == Side::Left ? "left" : "right"; }

void OperatorParams::validate() const {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw DomainError("alpha must be positive");
  acc.validate();
}

bool OperatorReport::all_converged() const {
  return std::all_of(per_point_converged.begin(), per_point_converged.end(), [](bool b) { return b; });
}

PiecewiseLinear::PiecewiseLinear(std::vector<double> nodes, std::vector<double> values)
    : nodes_(std::move(nodes)), values_(std::move(values)) {
  if (nodes_.size() < 2 || nodes_.size() != values_.size()) {
    throw DomainError("PiecewiseLinear: need matching node/value arrays of length >= 2");
  }
  for (std::size_t j = 0; j < nodes_.size(); ++j) {
    if (!std::isfinite(nodes_[j]) || !std::isfinite(values_[j])) {
      throw DomainError("PiecewiseLinear: non-finite input");
    }
    if (j > 0 && !(nodes_[j] > nodes_[j - 1])) {
      throw DomainError("PiecewiseLinear: nodes must be strictly increasing");
    }
  }
  const double h = (nodes_.back() - nodes_.front()) / static_cast<double>(nodes_.size() - 1);
  uniform_ = true;
  for (std::size_t j = 1; j < nodes_.size(); ++j) {
    if (std::fabs(nodes_[j] - nodes_.front() - j * h) > 1e-12 * (nodes_.back() - nodes_.front())) {
      uniform_ = false;
      break;
    }
  }
}

PiecewiseLinear::PiecewiseLinear(const GridFunction& g)
    : PiecewiseLinear(
          [&g] {
            std::vector<double> t(g.points());
            for (int j = 0; j < g.points(); ++j) t[j] = g.node(j);
            return t;
          }(),
          std::vector<double>(g.values().data(), g.values().data() + g.points())) {}

std::size_t PiecewiseLinear::cell_of(double x) const {
  const auto it = std::upper_bound(nodes_.begin(), nodes_.end(), x);
  const auto j = static_cast<std::ptrdiff_t>(it - nodes_.begin()) - 1;
  return static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(j, 0, static_cast<std::ptrdiff_t>(nodes_.size()) - 2));
}

double PiecewiseLinear::operator()(double x) const {
  const double span = nodes_.back() - nodes_.front();
  if (x < nodes_.front() - 1e-12 * span || x > nodes_.back() + 1e-12 * span) {
    throw DomainError("PiecewiseLinear: x outside the node range");
  }
  const std::size_t j = cell_of(x);
  const double t = (x - nodes_[j]) / (nodes_[j + 1] - nodes_[j]);
  return values_[j] + t * (values_[j + 1] - values_[j]);
}

double PiecewiseLinear::slope(double x) const {
  const std::size_t j = cell_of(x);
  return (values_[j + 1] - values_[j]) / (nodes_[j + 1] - nodes_[j]);
}

double PiecewiseLinear::integral(double lo, double hi) const {
  if (hi < lo) return -integral(hi, lo);
  double sum = 0.0;
  for (std::size_t j = 0; j + 1 < nodes_.size(); ++j) {
    const double l = std::max(lo, nodes_[j]);
    const double r = std::min(hi, nodes_[j + 1]);
    if (r <= l) continue;
    sum += 0.5 * (r - l) * ((*this)(l) + (*this)(r));
  }
  return sum;
}

Source source_of(const FunctionSpec& f, const Interval& interval, double alpha) {
  if (const auto* g = std::get_if<spec::Grid>(&f)) return source_of(g->grid);
  Source s;
  s.eval = [f, interval, alpha](double x) { return eval_spec(f, x, interval, alpha); };
  s.at_a = singular_at_left(f) ? Singularity::Log : Singularity::None;
  s.at_b = singular_at_right(f) ? Singularity::Log : Singularity::None;
  return s;
}

Source source_of(const GridFunction& g) {
  return source_of(std::make_shared<const PiecewiseLinear>(g));
}

Source source_of(std::shared_ptr<const PiecewiseLinear> pl) {
  Source s;
  s.eval = [pl](double x) { return (*pl)(x); };
  s.piecewise = std::move(pl);
  return s;
}

std::vector<double> graded_nodes(const Interval& iv, Side side, int uniform_cells) {
  if (uniform_cells < 2) throw DomainError("graded_nodes: need at least 2 uniform cells");
  const double L = iv.length();
  const double H = L / uniform_cells;
  std::vector<double> offsets{0.0};
  std::vector<double> geometric;
  for (double d = H / 1.25; d > 1e-12 * L; d /= 1.25) geometric.push_back(d);
  offsets.insert(offsets.end(), geometric.rbegin(), geometric.rend());
  for (int i = 1; i <= uniform_cells; ++i) offsets.push_back(i == uniform_cells ? L : i * H);
  std::vector<double> nodes(offsets.size());
  for (std::size_t i = 0; i < offsets.size(); ++i) {
    nodes[i] = side == Side::Left ? iv.a + offsets[i] : iv.b - offsets[i];
  }
  if (side == Side::Right) std::reverse(nodes.begin(), nodes.end());
  nodes.front() = iv.a;
  nodes.back() = iv.b;
  return nodes;
}

std::shared_ptr<const PiecewiseLinear> sample_graded(const Source& f, const Interval& iv, Side side,
                                                     int uniform_cells) {
  std::vector<double> t = graded_nodes(iv, side, uniform_cells);
  std::vector<double> v(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) v[i] = f.eval(t[i]);
  return std::make_shared<const PiecewiseLinear>(std::move(t), std::move(v));
}

QuadResult j_at(const Source& f, const OperatorParams& p, double x) {
  return at_point(f, p, x, Kernel::E1);
}

QuadResult s_at(const Source& f, const OperatorParams& p, double x) {
  return at_point(f, p, x, Kernel::S);
}

Source j_source(Source f, const OperatorParams& p) {
  Source out;
  out.eval = [f = std::move(f), p](double x) { return j_at(f, p, x).value; };
  return out;
}

Source s_source(Source f, const OperatorParams& p) {
  Source out;
  out.eval = [f = std::move(f), p](double x) { return s_at(f, p, x).value; };
  return out;
}

OperatorReport apply_j(const FunctionSpec& f, const OperatorParams& p, int n_out) {
  return apply(source_of(f, p.interval, p.alpha), p, n_out, Kernel::E1);
}

OperatorReport apply_s(const FunctionSpec& f, const OperatorParams& p, int n_out) {
  return apply(source_of(f, p.interval, p.alpha), p, n_out, Kernel::S);
}

OperatorReport apply_j(const Source& f, const OperatorParams& p, int n_out) {
  return apply(f, p, n_out, Kernel::E1);
}

OperatorReport apply_s(const Source& f, const OperatorParams& p, int n_out) {
  return apply(f, p, n_out, Kernel::S);
}

GridFunction running_integral(const FunctionSpec& f, const Interval& interval, Side side, int n_out) {
  return running_integral(source_of(f, interval, 1.0), interval, side, n_out);
}

GridFunction running_integral(const Source& f, const Interval& interval, Side side, int n_out) {
  if (n_out < 2) throw DomainError("n_out must be at least 2");
  const double h = interval.length() / (n_out - 1);
  auto node = [&](int j) { return j + 1 == n_out ? interval.b : interval.a + j * h; };
  const Accuracy acc{1e-13, 1e-13, 4000};
  auto piece = [&](int j) {  // int over [node(j), node(j+1)]
    const double lo = node(j);
    const double hi = node(j + 1);
    if (f.piecewise) return f.piecewise->integral(lo, hi);
    Integrand g{f.eval};
    if (j == 0) g.left = f.at_a;
    if (j + 2 == n_out) g.right = f.at_b;
    return integrate(g, lo, hi, acc).value;
  };
  Eigen::VectorXd out = Eigen::VectorXd::Zero(n_out);
  if (side == Side::Left) {
    for (int j = 1; j < n_out; ++j) out[j] = out[j - 1] + piece(j - 1);
  } else {
    for (int j = n_out - 2; j >= 0; --j) out[j] = out[j + 1] + piece(j);
  }
  return GridFunction(interval, std::move(out));
}

QuadResult integrate_against_s(const std::function<double(double)>& g, double upper,
                               Singularity at_upper, const Accuracy& acc) {
  if (!(upper > 0.0)) throw DomainError("integrate_against_s: upper must be positive");
  acc.validate();
  return s_integral(g, upper, at_upper, acc);
}

QuadResult laplace_s_kernel(double lambda, const Accuracy& acc) {
  if (!(lambda > 0.0)) throw DomainError("laplace_s_kernel: lambda must be positive");
  return integrate_against_s([lambda](double z) { return std::exp(-lambda * z); },
                             std::numeric_limits<double>::infinity(), Singularity::None, acc);
}

namespace {
std::pair<double, double> parts(const FunctionSpec& f, const FunctionSpec& g, const OperatorParams& p,
                                Kernel k) {
  p.validate();
  OperatorParams left = p;
  left.side = Side::Left;
  OperatorParams right = p;
  right.side = Side::Right;
  const Source sf = source_of(f, p.interval, p.alpha);
  const Source sg = source_of(g, p.interval, p.alpha);
  const GaussRule rule = gauss_legendre(10);
  const int panels = 64;
  const double w = p.interval.length() / panels;
  double lhs = 0.0;
  double rhs = 0.0;
  for (int m = 0; m < panels; ++m) {
    const double c = p.interval.a + (m + 0.5) * w;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double x = c + 0.5 * w * rule.nodes[i];
      const double wt = 0.5 * w * rule.weights[i];
      lhs += wt * at_point(sf, left, x, k).value * sg.eval(x);
      rhs += wt * sf.eval(x) * at_point(sg, right, x, k).value;
    }
  }
  return {lhs, rhs};
}
}  // namespace

std::pair<double, double> parts_j(const FunctionSpec& f, const FunctionSpec& g, const OperatorParams& p) {
  return parts(f, g, p, Kernel::E1);
}

std::pair<double, double> parts_s(const FunctionSpec& f, const FunctionSpec& g, const OperatorParams& p) {
  return parts(f, g, p, Kernel::S);
}

Eigen::MatrixXd j_lattice_weights(int intervals, double step, double alpha, Side side) {
  return lattice_weights(intervals, step, alpha, side, Kernel::E1);
}

Eigen::MatrixXd s_lattice_weights(int intervals, double step, double alpha, Side side,
                                  const Accuracy& /*acc*/) {
  return lattice_weights(intervals, step, alpha, side, Kernel::S);
}

Eigen::VectorXd j_left_shifted(const Eigen::VectorXd& values, double step, double alpha,
                               double shift) {
  const auto n = static_cast<int>(values.size()) - 1;
  if (n < 1) throw DomainError("j_left_shifted: need at least 2 values");
  if (!(step > 0.0) || !(alpha > 0.0)) throw DomainError("j_left_shifted: step and alpha must be positive");
  if (!(shift >= 0.0) || !(shift < step)) throw DomainError("j_left_shifted: need 0 <= shift < step");
  const double w = step / alpha;
  const double sp = shift / alpha;
  std::vector<Moments> m(n);
  for (int k = 0; k < n; ++k) m[k] = e1_cell(k * w + sp, (k + 1) * w + sp);
  const Moments part = sp > 0.0 ? e1_cell(0.0, sp) : Moments{0.0, 0.0};
  Eigen::VectorXd out(n);
  for (int i = 0; i < n; ++i) {
    double sum = 0.0;
    if (sp > 0.0) {
      const double f_near = values[i] + (shift / step) * (values[i + 1] - values[i]);
      sum += f_near * part.m0 + (values[i] - f_near) * part.m1c / sp;
    }
    for (int j = 0; j < i; ++j) {
      const Moments& c = m[i - 1 - j];
      sum += values[j + 1] * c.m0 + (values[j] - values[j + 1]) * c.m1c / w;
    }
    out[i] = sum;
  }
  return out;
}

double j_closed_constant(double C, const OperatorParams& p, double x) {
  check_closed_point(p, x);
  return C * e1_power_integral(0, z_extent(p, x));
}

double j_closed_monomial(int n, const OperatorParams& p, double x) {
  check_closed_point(p, x);
  if (n < 0 || n > 20) throw DomainError("j_closed_monomial: need 0 <= n <= 20");
  const double R = z_extent(p, x);
  // Left: (x - alpha z)^n; Right: (x + alpha z)^n.
  const double s = p.side == Side::Left ? -p.alpha : p.alpha;
  double sum = 0.0;
  for (int k = 0; k <= n; ++k) {
    sum += std::pow(s, k) * static_cast<double>(binomial(n, k)) * std::pow(x, n - k) *
           e1_power_integral(k, R);
  }
  return sum;
}

double j_closed_powshift(int n, const OperatorParams& p, double x) {
  check_closed_point(p, x);
  if (n < 0 || n > 20) throw DomainError("j_closed_powshift: need 0 <= n <= 20");
  const double R = z_extent(p, x);
  const double d = p.side == Side::Left ? x - p.interval.a : p.interval.b - x;
  double sum = 0.0;
  for (int k = 0; k <= n; ++k) {
    sum += std::pow(-p.alpha, k) * static_cast<double>(binomial(n, k)) * std::pow(d, n - k) *
           e1_power_integral(k, R);
  }
  return sum;
}

double j_closed_e1kernel(const OperatorParams& p, double x) {
  check_closed_point(p, x);
  const double r = z_extent(p, x);
  if (!(r > 0.0)) throw DomainError("j_closed_e1kernel: x at the singular endpoint");
  return e1_self_convolution(r);
}

double e1_self_convolution(double r) {
  if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("e1_self_convolution: r must be positive");
  const SpecialConstants k = special_constants();
  const double L = k.euler_gamma + std::log(r);
  long double series = 0.0L;
  long double power = 1.0L;  // (-r)^m / m!
  for (int m = 1; m < 1000; ++m) {
    power *= -static_cast<long double>(r) / m;
    const long double term = power / (static_cast<long double>(m) * m);
    series += term;
    if (std::fabs(static_cast<double>(term)) < 1e-15 && m > r) break;
  }
  return 2.0 * L * std::exp(-r) + 2.0 * (1.0 - k.euler_gamma * r - r * std::log(r)) * e1(r) -
         r * (k.zeta2 + L * L) - 2.0 * r * static_cast<double>(series);
}

}  // namespace fracalc
