#include "fracalc/special.hpp"

#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <vector>

#include "fracalc/quadrature.hpp"

namespace fracalc {

namespace {

constexpr double kTiny = 1e-300;

void require_positive(double x, const char* what) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError(std::string(what) + ": argument must be positive and finite");
  }
}

// Lanczos approximation, g = 7, 9 terms.
constexpr double kLanczosG = 7.0;
constexpr double kLanczos[9] = {0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
                                771.32342877765313,   -176.61502916214059,   12.507343278686905,
                                -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

double log_gamma_lanczos(double s) {
  const double z = s - 1.0;
  double x = kLanczos[0];
  for (int i = 1; i < 9; ++i) x += kLanczos[i] / (z + i);
  const double t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

double log_gamma_stirling(double s) {
  const double r = 1.0 / s;
  const double r2 = r * r;
  const double series =
      r * (1.0 / 12.0 -
           r2 * (1.0 / 360.0 - r2 * (1.0 / 1260.0 - r2 * (1.0 / 1680.0 - r2 * (1.0 / 1188.0)))));
  return (s - 0.5) * std::log(s) - s + 0.5 * std::log(2.0 * std::numbers::pi) + series;
}

// Series for P(s, x): x^s e^-x / Gamma(s+1) * sum x^k / ((s+1)...(s+k)).
double p_series(double s, double x) {
  double ap = s;
  double del = 1.0 / s;
  double sum = del;
  for (int n = 0; n < 100000; ++n) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::fabs(del) < std::fabs(sum) * 1e-17) break;
  }
  return sum * std::exp(-x + s * std::log(x) - log_gamma(s));
}

// Continued fraction for Q(s, x) = 1 - P(s, x), modified Lentz.
double q_continued_fraction(double s, double x) {
  double b = x + 1.0 - s;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 100000; ++i) {
    const double an = -i * (i - s);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-16) break;
  }
  return std::exp(-x + s * std::log(x) - log_gamma(s)) * h;
}

// ---------------------------------------------------------------------------
// s-axis integration shared by S, Q and Q1.
//
// Composite 16-point Gauss-Legendre on panels of width h starting at s = 0.
// The integrand is integrated over [0, s_max] and then in doubling blocks
// until a block adds less than `block_tol`. For the integrands used here the
// s-profile is unimodal with its peak below `peak_hint`; past the peak a
// panel contributing below the cut-off terminates the block early.

template <typename F>
double s_axis_sum(F&& g, double h, double s_max, double peak_hint, double block_tol) {
  const GaussRule& gl = gauss_legendre16();
  double total = 0.0;
  double lo = 0.0;
  double hi = s_max;
  bool first_block = true;
  for (int block = 0; block < 64; ++block) {
    double block_sum = 0.0;
    bool stopped = false;
    for (double p = lo; p < hi - 0.5 * h; p += h) {
      double panel = 0.0;
      const double mid = p + 0.5 * h;
      for (int i = 0; i < 16; ++i) panel += gl.weights[i] * g(mid + 0.5 * h * gl.nodes[i]);
      panel *= 0.5 * h;
      block_sum += panel;
      if (p > peak_hint && std::fabs(panel) < 1e-3 * block_tol &&
          std::fabs(panel) <= 1e-18 * std::fabs(total + block_sum)) {
        stopped = true;
        break;
      }
    }
    total += block_sum;
    if (stopped) break;
    if (!first_block && std::fabs(block_sum) < block_tol) break;
    first_block = false;
    lo = hi;
    hi *= 2.0;
  }
  return total;
}

// Initial panel width: entire-in-s integrands with log-slope |ln x| need
// panels narrow enough that GL16 resolves e^{s ln x}.
double initial_width(double x) {
  const double slope = std::fabs(std::log(x));
  return slope > 2.0 ? std::ldexp(1.0, -static_cast<int>(std::ceil(std::log2(slope / 2.0)))) : 1.0;
}

template <typename Integrand>
double s_axis_integral(Integrand&& make_g, double x, double s_max, double peak_hint,
                       const Accuracy& acc, const char* what) {
  double h = initial_width(x);
  const double block_tol = acc.abs_tol * 1e-2;
  double prev = s_axis_sum(make_g, h, s_max, peak_hint, block_tol);
  const int max_levels = std::max(3, std::min(10, acc.max_work / 400));
  for (int level = 0; level < max_levels; ++level) {
    h *= 0.5;
    const double next = s_axis_sum(make_g, h, s_max, peak_hint, block_tol);
    if (std::fabs(next - prev) <= acc.target(next)) return next;
    prev = next;
  }
  throw ConvergenceError(std::string(what) + ": panel halving did not settle");
}

}  // namespace

SpecialConstants special_constants() {
  return {kEulerGamma, std::numbers::pi * std::numbers::pi / 6.0};
}

double e1_series(double x, const Accuracy& acc) {
  require_positive(x, "e1");
  double sum = 0.0;
  double term = 1.0;  // x^k / k!
  const double stop = acc.abs_tol * 1e-2;
  for (int k = 1; k <= 60; ++k) {
    term *= x / k;
    const double t = term / k;
    sum += (k % 2 == 1) ? t : -t;
    if (t < stop) break;
  }
  return -kEulerGamma - std::log(x) + sum;
}

double e1_continued_fraction(double x) {
  require_positive(x, "e1");
  double b = x + 1.0;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 100000; ++i) {
    const double an = -static_cast<double>(i) * i;
    b += 2.0;
    d = 1.0 / (an * d + b);
    c = b + an / c;
    const double del = c * d;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-15) break;
  }
  return h * std::exp(-x);
}

double e1(double x, const Accuracy& acc) {
  require_positive(x, "e1");
  return x <= 1.0 ? e1_series(x, acc) : e1_continued_fraction(x);
}

double ek(int k, double x) {
  if (k < 0) throw DomainError("ek: k must be nonnegative");
  double term = 1.0;
  double sum = 1.0;
  for (int i = 1; i <= k; ++i) {
    term *= x / i;
    sum += term;
  }
  return sum;
}

double e1_moment(int n, double x, const Accuracy& acc) {
  if (n < 0) throw DomainError("e1_moment: n must be nonnegative");
  require_positive(x, "e1_moment");
  const double np1 = n + 1.0;
  double nfact = 1.0;
  for (int i = 2; i <= n; ++i) nfact *= i;
  double head = 0.0;
  if (x < 700.0) {
    head = std::pow(x, np1) / np1 * e1(x, acc);
  }
  return head - nfact / np1 * ek(n, x) * std::exp(-x);
}

double log_gamma(double s) {
  if (!(s > 0.0) || !std::isfinite(s)) throw DomainError("log_gamma: s must be positive");
  if (s < 0.5) return log_gamma_lanczos(s + 1.0) - std::log(s);
  if (s < 10.0) return log_gamma_lanczos(s);
  return log_gamma_stirling(s);
}

double p_regularized(double s, double x, const Accuracy& /*acc*/) {
  require_positive(s, "p_regularized");
  if (!(x >= 0.0) || !std::isfinite(x)) throw DomainError("p_regularized: x must be nonnegative");
  if (x == 0.0) return 0.0;
  if (x < s + 1.0) return std::min(1.0, p_series(s, x));
  return std::max(0.0, 1.0 - q_continued_fraction(s, x));
}

namespace {

// ln Gamma on the nodes of the level-k panel grid (width 2^-k), cached.
class LogGammaNodes {
 public:
  static const LogGammaNodes& level(int k) {
    static std::once_flag flags[kLevels];
    static LogGammaNodes tables[kLevels];
    std::call_once(flags[k], [k] { tables[k].build(k); });
    return tables[k];
  }

  static constexpr int kLevels = 12;

  double width() const { return width_; }
  std::size_t panels() const { return values_.size() / 16; }
  double at(std::size_t panel, int i) const { return values_[panel * 16 + i]; }

 private:
  void build(int k) {
    width_ = std::ldexp(1.0, -k);
    const double cap = k <= 1 ? 4096.0 : std::ldexp(4096.0, -(k - 1));
    const auto n = static_cast<std::size_t>(cap / width_);
    const GaussRule& gl = gauss_legendre16();
    values_.resize(n * 16);
    for (std::size_t p = 0; p < n; ++p) {
      const double mid = (p + 0.5) * width_;
      for (int i = 0; i < 16; ++i) values_[p * 16 + i] = log_gamma(mid + 0.5 * width_ * gl.nodes[i]);
    }
  }

  double width_ = 1.0;
  std::vector<double> values_;
};

// S(x) by composite GL16 in s with cached ln Gamma. Same refinement rules as
// s_axis_integral, specialised for speed.
double volterra_sum(double x, int level, double s_max, double block_tol) {
  const GaussRule& gl = gauss_legendre16();
  const LogGammaNodes& table = LogGammaNodes::level(level);
  const double h = table.width();
  const double lx = std::log(x);
  const double peak = x + 1.0;
  double total = 0.0;
  double lo = 0.0;
  double hi = s_max;
  bool first_block = true;
  for (int block = 0; block < 64; ++block) {
    double block_sum = 0.0;
    bool stopped = false;
    const auto p_lo = static_cast<std::size_t>(std::llround(lo / h));
    const auto p_hi = static_cast<std::size_t>(std::llround(hi / h));
    for (std::size_t p = p_lo; p < p_hi; ++p) {
      const double mid = (p + 0.5) * h;
      double panel = 0.0;
      for (int i = 0; i < 16; ++i) {
        const double s = mid + 0.5 * h * gl.nodes[i];
        const double lg = p < table.panels() ? table.at(p, i) : log_gamma(s);
        const double phi = (s - 1.0) * lx - lg - x;
        if (phi > -745.0) panel += gl.weights[i] * std::exp(phi);
      }
      panel *= 0.5 * h;
      block_sum += panel;
      if (mid > peak && panel < 1e-3 * block_tol && panel <= 1e-18 * (total + block_sum)) {
        stopped = true;
        break;
      }
    }
    total += block_sum;
    if (stopped) break;
    if (!first_block && block_sum < block_tol) break;
    first_block = false;
    lo = hi;
    hi *= 2.0;
  }
  return total;
}

}  // namespace

double volterra_s(double x, const Accuracy& acc) {
  if (!(x >= kVolterraMinArgument) || !std::isfinite(x)) {
    throw DomainError("volterra_s: argument must be >= 1e-12 (use s_cumulative near 0)");
  }
  const double s_max = std::max(60.0, 2.0 * x + 40.0 * std::sqrt(x + 1.0));
  const double block_tol = acc.abs_tol * 1e-2;
  int level = static_cast<int>(std::round(-std::log2(initial_width(x))));
  double prev = volterra_sum(x, level, s_max, block_tol);
  const int max_level = LogGammaNodes::kLevels - 1;
  while (level < max_level) {
    ++level;
    const double next = volterra_sum(x, level, s_max, block_tol);
    if (std::fabs(next - prev) <= acc.target(next)) return next;
    prev = next;
  }
  throw ConvergenceError("volterra_s: panel halving did not settle");
}

double s_moment(int k, double X, const Accuracy& acc) {
  if (k < 0) throw DomainError("s_moment: k must be nonnegative");
  if (!(X >= 0.0) || !std::isfinite(X)) throw DomainError("s_moment: X must be nonnegative");
  if (X == 0.0) return 0.0;
  const double s_max = std::max(60.0, 2.0 * X + 40.0 * std::sqrt(X + 1.0));
  // Gamma(s+k)/Gamma(s) = s (s+1) ... (s+k-1).
  return s_axis_integral(
      [X, k](double s) {
        if (s <= 0.0) return k == 0 ? 1.0 : 0.0;
        double rising = 1.0;
        for (int i = 0; i < k; ++i) rising *= s + i;
        return rising * p_regularized(s + k, X);
      },
      X, s_max, X + 1.0, acc, "s_moment");
}

double s_cumulative(double X, const Accuracy& acc) { return s_moment(0, X, acc); }

double s_first_moment(double X, const Accuracy& acc) { return s_moment(1, X, acc); }

// ---------------------------------------------------------------------------

namespace {
constexpr double kTableXMin = 1e-6;
constexpr double kTableXMax = 512.0;
constexpr double kTableCell = 0.5;

double chebyshev_node(int j) {
  return std::cos(std::numbers::pi * j / (VolterraTable::kNodes - 1));
}
}  // namespace

const VolterraTable& VolterraTable::instance() {
  static const VolterraTable table;
  return table;
}

VolterraTable::VolterraTable()
    : u_min_(std::log(kTableXMin)), cell_width_(kTableCell), x_min_(kTableXMin), x_max_(kTableXMax) {
  const double u_max = std::log(kTableXMax);
  const int n_cells = static_cast<int>(std::ceil((u_max - u_min_) / cell_width_));
  x_max_ = std::exp(u_min_ + n_cells * cell_width_);
  cells_.resize(n_cells);
  const Accuracy acc{1e-14, 1e-14, 4000};
  for (int c = 0; c < n_cells; ++c) {
    const double lo = u_min_ + c * cell_width_;
    for (int j = 0; j < kNodes; ++j) {
      const double u = lo + 0.5 * cell_width_ * (1.0 + chebyshev_node(j));
      const double x = std::exp(u);
      cells_[c][j] = std::log(x * volterra_s(x, acc));
    }
  }
}

double VolterraTable::operator()(double x) const {
  // Past the table S - 1 is below e^{-512}.
  if (x >= x_max_) return 1.0;
  if (!(x >= x_min_)) return volterra_s(x);
  const double u = std::log(x);
  const auto c = std::min(static_cast<std::size_t>((u - u_min_) / cell_width_), cells_.size() - 1);
  const double lo = u_min_ + c * cell_width_;
  const double t = 2.0 * (u - lo) / cell_width_ - 1.0;
  // Barycentric interpolation on Chebyshev points of the second kind.
  double num = 0.0;
  double den = 0.0;
  const auto& f = cells_[c];
  for (int j = 0; j < kNodes; ++j) {
    const double diff = t - chebyshev_node(j);
    if (diff == 0.0) return std::exp(f[j]) / x;
    double w = (j % 2 == 0) ? 1.0 : -1.0;
    if (j == 0 || j == kNodes - 1) w *= 0.5;
    w /= diff;
    num += w * f[j];
    den += w;
  }
  return std::exp(num / den) / x;
}

}  // namespace fracalc
