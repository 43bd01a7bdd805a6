#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "fracalc/operators.hpp"
#include "fracalc/special.hpp"
#include "support.hpp"

using namespace fracalc;
using support::params;

// Oracle values (dyadically graded Romberg on the z-form integrals).
namespace frozen {
constexpr double j_const_a1_x1 = 0.8515044932223282;   // J 1, alpha = 1, x - a = 1
constexpr double j_t_a1_x1 = 0.6096919671960106;       // J t on [0, 2], alpha = 1, x = 1
constexpr double j_powshift2 = 0.6541552460564083;     // J (x-a)^2 on [0, 2], alpha = 0.5, x = 1
constexpr double e1_self_conv_1 = 0.4145093397144276;  // int_0^1 E1(1-t) E1(t) dt
constexpr double e1_self_conv_micro = 0.0002020841221357469;  // same at r = 1e-6
constexpr double e1_self_conv_nano = 4.465105038372227e-07;    // same at r = 1e-9
constexpr double j_sin_right = 0.8985055035901036;     // J_b sin on [0, 2], alpha = 0.5, x = 1.3
constexpr double j_sin_left[5] = {0.05894173445242826, 0.1682981112141571, 0.2961258935488736,
                                  0.4282966028673002, 0.5559105183789531};  // [0, 1], alpha = 0.5, x = i/6
constexpr double semigroup_gap = 0.1492684517426029;  // at x = 0.1, the worst of x = 0.1..1
}  // namespace frozen

TEST_CASE("validation") {
  OperatorParams p = params(Side::Left, 0.0);
  CHECK_THROWS_AS(p.validate(), DomainError);
  p.alpha = 0.5;
  CHECK_THROWS_AS(apply_j(spec::Const{1.0}, p, 1), DomainError);
  CHECK_THROWS_AS(j_at(source_of(spec::Const{1.0}, p.interval, 0.5), p, 1.5), DomainError);
}

TEST_CASE("J of a constant") {
  const OperatorParams p = params(Side::Left, 1.0, {0.0, 2.0});
  const Source one = source_of(spec::Const{1.0}, p.interval, 1.0);
  CHECK(std::fabs(j_at(one, p, 1.0).value - frozen::j_const_a1_x1) < 1e-8);
  CHECK(std::fabs(j_closed_constant(1.0, p, 1.0) - frozen::j_const_a1_x1) < 1e-8);
  CHECK(j_closed_constant(0.0, p, 1.0) == 0.0);
  CHECK(std::fabs(j_closed_constant(1.0, p, 1e-12)) < 1e-10);
  CHECK(std::fabs(j_at(one, p, 1e-12).value) < 1e-10);
  const OperatorReport r = apply_j(spec::Const{1.0}, p, 5);
  CHECK(r.all_converged());
  CHECK(r.outputs.values()[0] == 0.0);
  CHECK(std::fabs(r.outputs.values()[2] - frozen::j_const_a1_x1) < 1e-8);
  CHECK(r.per_point_err.size() == 5);
}

TEST_CASE("collapsed endpoint is zero on both sides") {
  for (Side side : {Side::Left, Side::Right}) {
    const OperatorParams p = params(side, 0.4);
    const OperatorReport j = apply_j(spec::Sin{2.0}, p, 11);
    const OperatorReport s = apply_s(spec::Sin{2.0}, p, 11);
    const int end = side == Side::Left ? 0 : 10;
    CHECK(j.outputs.values()[end] == 0.0);
    CHECK(s.outputs.values()[end] == 0.0);
  }
}

TEST_CASE("closed forms for monomials and shifted powers") {
  {
    const OperatorParams p = params(Side::Left, 0.5);
    const GridFunction out = apply_j(spec::Poly{{0.0, 1.0}}, p, 11).outputs;
    CHECK(support::sup_gap(out, [&](double x) { return j_closed_monomial(1, p, x); }) < 1e-7);
  }
  {
    const OperatorParams p = params(Side::Left, 1.0, {0.0, 2.0});
    CHECK(std::fabs(j_closed_monomial(1, p, 1.0) - frozen::j_t_a1_x1) < 1e-8);
    for (double x : {0.1, 0.4, 1.0, 1.5, 2.0}) CHECK(j_closed_monomial(0, p, x) == j_closed_constant(1.0, p, x));
    for (int n = 0; n <= 4; ++n) {
      // J 1 ~ r |ln r| near the endpoint, so 1e-9 gives about 2e-8.
      CHECK(std::fabs(j_closed_monomial(n, p, 1e-9)) < 1e-7);
      CHECK(j_closed_powshift(0, p, 0.7) == doctest::Approx(j_closed_constant(1.0, p, 0.7)).epsilon(1e-15));
    }
    CHECK_THROWS_AS(j_closed_monomial(21, p, 1.0), DomainError);
  }
  {
    const OperatorParams p = params(Side::Left, 0.5, {0.0, 2.0});
    CHECK(std::fabs(j_closed_powshift(2, p, 1.0) - frozen::j_powshift2) < 1e-7);
    CHECK(std::fabs(j_closed_powshift(3, p, 1e-9)) < 1e-8);
  }
}

TEST_CASE("closed forms agree with quadrature for both sides") {
  for (double alpha : {0.3, 1.0}) {
    for (Side side : {Side::Left, Side::Right}) {
      const OperatorParams p = params(side, alpha);
      for (int n = 0; n <= 3; ++n) {
        std::vector<double> c(n + 1, 0.0);
        c[n] = 1.0;
        CHECK(support::sup_gap(apply_j(spec::Poly{c}, p, 11).outputs,
                               [&](double x) { return j_closed_monomial(n, p, x); }) < 1e-7);
        const FunctionSpec ps = side == Side::Left ? FunctionSpec{spec::PowShiftLeft{n}}
                                                   : FunctionSpec{spec::PowShiftRight{n}};
        CHECK(support::sup_gap(apply_j(ps, p, 11).outputs, [&](double x) { return j_closed_powshift(n, p, x); }) <
              1e-7);
      }
    }
  }
}

TEST_CASE("J of the E1 kernel") {
  const OperatorParams p = params(Side::Left, 1.0, {0.0, 2.0});
  CHECK(std::fabs(j_closed_e1kernel(p, 1.0) - frozen::e1_self_conv_1) < 1e-6);
  CHECK(std::fabs(e1_self_convolution(1.0) - frozen::e1_self_conv_1) < 1e-12);
  // Near the endpoint the value behaves like r ((ln r + gamma)^2 - 2(ln r + gamma) + 2 - zeta(2)):
  // about 2.02e-4 at r = 1e-6, falling to 4.5e-7 at r = 1e-9.
  CHECK(std::fabs(j_closed_e1kernel(p, 1e-6) - frozen::e1_self_conv_micro) < 1e-12);
  CHECK(std::fabs(j_closed_e1kernel(p, 1e-9) - frozen::e1_self_conv_nano) < 1e-8 * frozen::e1_self_conv_nano);
  CHECK(j_closed_e1kernel(p, 1e-9) < j_closed_e1kernel(p, 1e-6));
  CHECK_THROWS_AS(j_closed_e1kernel(p, 0.0), DomainError);
  const OperatorParams r = params(Side::Right, 1.0, {0.0, 2.0});
  for (double x : {0.3, 1.0, 1.7}) CHECK(std::fabs(j_closed_e1kernel(p, x) - j_closed_e1kernel(r, 2.0 - x)) < 1e-10);
  for (double alpha : {0.3, 1.0}) {
    for (Side side : {Side::Left, Side::Right}) {
      const OperatorParams q = params(side, alpha);
      const Source k = source_of(side == Side::Left ? FunctionSpec{spec::E1KernelLeft{}}
                                                    : FunctionSpec{spec::E1KernelRight{}},
                                 q.interval, alpha);
      for (int i = 1; i <= 5; ++i) {
        const double x = i / 6.0;
        CHECK(std::fabs(j_at(k, q, x).value - j_closed_e1kernel(q, x)) < 1e-6);
      }
    }
  }
}

TEST_CASE("J matches the oracle on sin") {
  const OperatorParams p = params(Side::Left, 0.5);
  const Source s = source_of(spec::Sin{1.0}, p.interval, 0.5);
  for (int i = 1; i <= 5; ++i) CHECK(std::fabs(j_at(s, p, i / 6.0).value - frozen::j_sin_left[i - 1]) < 1e-6);
  const OperatorParams r = params(Side::Right, 0.5, {0.0, 2.0});
  CHECK(std::fabs(j_at(source_of(spec::Sin{1.0}, r.interval, 0.5), r, 1.3).value - frozen::j_sin_right) < 1e-9);
}

TEST_CASE("S of a constant") {
  for (Side side : {Side::Left, Side::Right}) {
    const OperatorParams p = params(side, 0.5, {0.0, 2.0});
    const GridFunction out = apply_s(spec::Const{3.0}, p, 11).outputs;
    CHECK(support::sup_gap(out, [&](double x) {
            const double d = side == Side::Left ? x : 2.0 - x;
            return 0.5 * 3.0 * s_cumulative(d / 0.5);
          }) < 1e-6);
    CHECK(sup_norm(apply_s(spec::Const{0.0}, p, 11).outputs) == 0.0);
  }
}

TEST_CASE("running integral") {
  const Interval pi_iv(0.0, std::numbers::pi);
  CHECK(support::sup_gap(running_integral(spec::Sin{1.0}, pi_iv, Side::Left, 21),
                         [](double x) { return 1.0 - std::cos(x); }) < 1e-10);
  CHECK(support::sup_gap(running_integral(spec::Const{2.0}, {1.0, 3.0}, Side::Left, 9),
                         [](double x) { return 2.0 * (x - 1.0); }) < 1e-13);
  CHECK(support::sup_gap(running_integral(spec::Const{1.0}, {0.0, 1.0}, Side::Right, 9),
                         [](double x) { return 1.0 - x; }) < 1e-13);
}

TEST_CASE("J then S and S then J give the running integral") {
  for (double alpha : {0.2, 0.3, 0.5}) {
    for (Side side : {Side::Left, Side::Right}) {
      for (const char* f : {"sin:1", "poly:0,1"}) {
        const ResidualReport r = check_inversion_js(parse_spec(f), params(side, alpha));
        CHECK_MESSAGE(r.residual < 1e-5, f << " alpha " << alpha << " " << std::string(side_name(side)));
      }
    }
  }
}

TEST_CASE("kernel identities") {
  const Accuracy acc{1e-11, 1e-11, 4000};
  for (double x : {0.1, 0.5, 1.0, 2.0}) {
    const QuadResult r = integrate_against_s([x](double z) { return z < x ? e1(x - z) : 0.0; }, x,
                                             Singularity::Log, acc);
    CHECK(std::fabs(r.value - 1.0) < 1e-6);
  }
  for (double lambda : {0.5, 1.0, 2.0}) {
    CHECK(std::fabs(laplace_s_kernel(lambda, acc).value - 1.0 / std::log1p(lambda)) < 1e-6);
  }
  CHECK(std::fabs(laplace_s_kernel(std::numbers::e - 1.0, acc).value - 1.0) < 1e-6);
}

TEST_CASE("norm bounds on random grids") {
  std::mt19937_64 rng(20240611);
  for (int trial = 0; trial < 10; ++trial) {
    const GridFunction g = support::random_grid(rng);
    const Source src = source_of(g);
    for (Side side : {Side::Left, Side::Right}) {
      const double alpha = trial % 2 ? 0.5 : 0.2;
      const OperatorParams p = params(side, alpha);
      const GridFunction jg = apply_j(src, p, 2001).outputs;
      CHECK(l1_norm(jg) <= l1_norm(g) * (1.0 + 1e-8));
      CHECK(l2_norm(jg) <= l2_norm(g) * (1.0 + 1e-8));
      CHECK(sup_norm(jg) <= sup_norm(g) * (1.0 + 1e-8));
      const GridFunction sg = apply_s(src, p, 2001).outputs;
      CHECK(l1_norm(sg) <= alpha * s_cumulative(1.0 / alpha) * l1_norm(g) * (1.0 + 1e-8));
    }
  }
}

TEST_CASE("lattice weights") {
  const int n = 40;
  const double h = 1.0 / n;
  const Eigen::MatrixXd W = j_lattice_weights(n, h, 0.3, Side::Left);
  // Lower triangular; interior columns are Toeplitz (the first and last
  // weights of a row are half hats). The right-sided matrix is the reversal.
  for (int i = 1; i <= n; ++i) {
    for (int j = 2; j < i; ++j) CHECK(W(i, j) == doctest::Approx(W(i - 1, j - 1)).epsilon(1e-14));
    for (int j = i + 1; j <= n; ++j) CHECK(W(i, j) == 0.0);
  }
  const Eigen::MatrixXd R = j_lattice_weights(n, h, 0.3, Side::Right);
  CHECK((R - W.reverse()).cwiseAbs().maxCoeff() < 1e-15);
  // Row sums reproduce J of a constant exactly.
  const OperatorParams p = params(Side::Left, 0.3);
  for (int i = 0; i <= n; ++i) CHECK(std::fabs(W.row(i).sum() - j_closed_constant(1.0, p, i * h)) < 1e-12);
  const Eigen::MatrixXd S = s_lattice_weights(n, h, 0.3, Side::Left);
  for (int i = 0; i <= n; ++i) CHECK(std::fabs(S.row(i).sum() - 0.3 * s_cumulative(i * h / 0.3)) < 1e-10);
}

TEST_CASE("grid inputs carry the interpolation term") {
  const OperatorParams p = params(Side::Left, 0.4);
  const GridFunction coarse = GridFunction::sample(p.interval, 11, [](double x) { return std::sin(4.0 * x); });
  const OperatorReport r = apply_j(source_of(coarse), p, 11);
  const OperatorReport exact = apply_j(spec::Sin{4.0}, p, 11);
  for (int i = 0; i < 11; ++i) {
    CHECK(std::fabs(r.outputs.values()[i] - exact.outputs.values()[i]) <= r.per_point_err[i] + 1e-12);
  }
  CHECK(r.worst_err_estimate > 0.0);
}

TEST_CASE("shifted lattice evaluation") {
  const int n = 64;
  const double h = 1.0 / n;
  const OperatorParams p = params(Side::Left, 0.25);
  const GridFunction g = GridFunction::sample(p.interval, n + 1, [](double x) { return x * x; });
  const Eigen::VectorXd shifted = j_left_shifted(g.values(), h, 0.25, 0.3 * h);
  const Source src = source_of(g);
  for (int m = 0; m < n; m += 7) CHECK(std::fabs(shifted[m] - j_at(src, p, m * h + 0.3 * h).value) < 1e-10);
}

TEST_CASE("integration by parts") {
  for (double alpha : {0.2, 0.5}) {
    const OperatorParams p = params(Side::Left, alpha);
    CHECK(support::relative_gap(parts_j(spec::Sin{2.0}, spec::Poly{{1.0, -1.0}}, p)) < 1e-6);
    CHECK(support::relative_gap(parts_s(spec::Sin{2.0}, spec::Poly{{1.0, -1.0}}, p)) < 1e-6);
  }
}

TEST_CASE("approximate identity along the alpha ladder") {
  const std::vector<double> ladder{0.2, 0.1, 0.05, 0.025};
  for (Side side : {Side::Left, Side::Right}) {
    const auto [j, s] = support::identity_ladder(spec::Sin{3.0}, side, ladder);
    CHECK(support::decreases_with_ratio(j, 0.9));
    CHECK(support::decreases_with_ratio(s, 0.9));
  }
}

TEST_CASE("semigroup property fails") {
  const OperatorParams p3 = params(Side::Left, 0.3);
  const OperatorParams p6 = params(Side::Left, 0.6);
  const Source jj = j_source(source_of(spec::Const{1.0}, p3.interval, 0.3), p3);
  double gap = 0.0;
  for (int i = 1; i <= 10; ++i) {
    const double x = i / 10.0;
    gap = std::max(gap, std::fabs(j_at(jj, p3, x).value - j_closed_constant(1.0, p6, x)));
  }
  CHECK(gap > 1e-3);
  CHECK(std::fabs(gap - frozen::semigroup_gap) < 1e-9);
}

TEST_CASE("graded nodes") {
  const Interval iv(0.0, 2.0);
  const std::vector<double> left = graded_nodes(iv, Side::Left, 64);
  CHECK(left.front() == 0.0);
  CHECK(left.back() == 2.0);
  CHECK(left[1] <= 2.0 * 1e-12 * 1.25 + 1e-30);
  CHECK(std::is_sorted(left.begin(), left.end()));
  const std::vector<double> right = graded_nodes(iv, Side::Right, 64);
  CHECK(2.0 - right[right.size() - 2] <= 2.0 * 1e-12 * 1.25);
}
