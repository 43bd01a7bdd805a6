// fracalc command-line front end: kernels, operators, identity suites,
// alpha sweeps and the relaxation solver. Output is CSV on stdout (or --out).

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fracalc/derivatives.hpp"
#include "fracalc/format.hpp"
#include "fracalc/operators.hpp"
#include "fracalc/relaxation.hpp"
#include "fracalc/special.hpp"

using namespace fracalc;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitVerifyFailed = 3;

struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<double> parse_list(const std::string& text, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const double v = std::stod(item, &used);
      while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
      if (used != item.size() || !std::isfinite(v)) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw ValidationError(std::string(what) + ": malformed number '" + item + "'");
    }
  }
  if (out.empty()) throw ValidationError(std::string(what) + ": empty list");
  return out;
}

std::vector<double> parse_alpha_list(const std::string& text) {
  std::vector<double> a = parse_list(text, "--alpha-list");
  for (double v : a) {
    if (!(v > 0.0)) throw ValidationError("--alpha-list: alpha must be positive");
  }
  return a;
}

Interval parse_interval(const std::string& text) {
  const std::vector<double> v = parse_list(text, "--interval");
  if (v.size() != 2) throw ValidationError("--interval: expected a,b");
  if (!(v[0] < v[1])) throw ValidationError("--interval: need a < b");
  return {v[0], v[1]};
}

Side parse_side(const std::string& s) {
  if (s == "left") return Side::Left;
  if (s == "right") return Side::Right;
  throw ValidationError("--side must be left or right");
}

// FRACALC_MAX_WORK, when set, replaces max_work in every accuracy budget.
Accuracy with_env_max_work(Accuracy acc) {
  if (const char* env = std::getenv("FRACALC_MAX_WORK")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 8 || v > 100000000) {
      throw ValidationError("FRACALC_MAX_WORK must be an integer >= 8");
    }
    acc.max_work = static_cast<int>(v);
  }
  return acc;
}

Accuracy operator_accuracy() { return with_env_max_work({1e-11, 1e-11, 4000}); }

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw ValidationError("cannot write '" + path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

// ---------------------------------------------------------------------------
// kernel

int run_kernel(const std::string& which, const std::string& points, double s, const std::string& out) {
  const std::vector<double> xs = parse_list(points, "--points");
  const Accuracy acc = with_env_max_work({});
  Output o(out);
  std::ostream& os = o.stream();
  os << "x,value\n";
  for (double x : xs) {
    double v = 0.0;
    if (which == "e1") {
      v = e1(x, acc);
    } else if (which == "s") {
      v = volterra_s(x, acc);
    } else if (which == "p") {
      v = p_regularized(s, x, acc);
    } else if (which == "q") {
      v = s_cumulative(x, acc);
    } else {
      throw ValidationError("--which must be e1, s, p or q");
    }
    os << format_number(x) << ',' << format_number(v) << '\n';
  }
  return 0;
}

// ---------------------------------------------------------------------------
// apply

void write_report(std::ostream& os, const OperatorReport& r) {
  os << "x,value,converged,err_estimate\n";
  for (int j = 0; j < r.outputs.points(); ++j) {
    os << format_number(r.outputs.node(j)) << ',' << format_number(r.outputs.values()[j]) << ','
       << (r.per_point_converged[j] ? "true" : "false") << ',' << format_number(r.per_point_err[j])
       << '\n';
  }
}

int run_apply(const std::string& op, const std::string& side, double alpha, const std::string& spec_text,
              const std::string& interval, int n_out, const std::string& out) {
  if (!(alpha > 0.0)) throw ValidationError("--alpha must be positive");
  if (n_out < 2) throw ValidationError("--n-out must be at least 2");
  OperatorParams p;
  p.side = parse_side(side);
  p.alpha = alpha;
  p.interval = parse_interval(interval);
  p.acc = operator_accuracy();
  const FunctionSpec f = parse_spec(spec_text);
  OperatorReport rep{GridFunction(p.interval, Eigen::VectorXd::Zero(2)), {}, 0.0, {}};
  if (op == "j") {
    rep = apply_j(f, p, n_out);
  } else if (op == "s") {
    rep = apply_s(f, p, n_out);
  } else if (op == "d") {
    if (const auto* g = std::get_if<spec::Grid>(&f)) {
      if (!(g->grid.interval() == p.interval)) {
        throw ValidationError("apply --op d: --interval must match the grid file's x range");
      }
      const double h = std::min(default_difference_step(p.interval), g->grid.step());
      const GridFunction d = d_frac_numeric(g->grid, p, h);
      rep = OperatorReport{d, std::vector<bool>(d.points(), true), 0.0, std::vector<double>(d.points(), 0.0)};
    } else {
      // AC representation with the calculus derivative of the catalog form.
      const double boundary = eval_spec(f, p.side == Side::Left ? p.interval.a : p.interval.b,
                                        p.interval, p.alpha);
      if (boundary != 0.0) {
        throw ValidationError(
            "apply --op d: f is nonzero at the operator's endpoint, where D f is unbounded");
      }
      Source fprime;
      fprime.eval = [f, p](double y) { return eval_spec_derivative(f, y, p.interval, p.alpha); };
      rep = apply_j(fprime, p, n_out);
    }
  } else {
    throw ValidationError("--op must be j, s or d");
  }
  Output o(out);
  write_report(o.stream(), rep);
  return 0;
}

// ---------------------------------------------------------------------------
// verify

struct Row {
  std::string check;
  std::string side;
  std::string alpha;
  double value;
  double expected;
  double tolerance;
  bool pass;
};

enum class Rule { Near, AtMost, Exceeds };

class Suite {
 public:
  void add(std::string check, std::string side, std::string alpha, double value, double expected,
           double tol, Rule rule = Rule::Near) {
    bool pass = false;
    switch (rule) {
      case Rule::Near:
        pass = std::fabs(value - expected) <= tol;
        break;
      case Rule::AtMost:
        pass = value <= expected + tol;
        break;
      case Rule::Exceeds:
        pass = std::fabs(value - expected) > tol;
        break;
    }
    if (!std::isfinite(value)) pass = false;
    std::replace(check.begin(), check.end(), ',', '_');  // spec arguments inside a CSV field
    rows_.push_back({std::move(check), std::move(side), std::move(alpha), value, expected, tol, pass});
  }
  void add(const ResidualReport& r) {
    add(r.check, side_name(r.side), format_number(r.alpha), r.residual, 0.0, r.tolerance);
  }
  bool all_pass() const {
    for (const Row& r : rows_) {
      if (!r.pass) return false;
    }
    return true;
  }
  void write(std::ostream& os) const {
    os << "check,side,alpha,value,expected,tolerance,pass\n";
    for (const Row& r : rows_) {
      os << r.check << ',' << r.side << ',' << r.alpha << ',' << format_number(r.value) << ','
         << format_number(r.expected) << ',' << format_number(r.tolerance) << ','
         << (r.pass ? "true" : "false") << '\n';
    }
  }

 private:
  std::vector<Row> rows_;
};

const Interval kUnit{0.0, 1.0};

OperatorParams params(Side side, double alpha, Interval iv = kUnit) {
  OperatorParams p;
  p.side = side;
  p.alpha = alpha;
  p.interval = iv;
  p.acc = operator_accuracy();
  return p;
}

// sup over the output grid of |report - closed(x)|.
template <typename F>
double sup_gap(const OperatorReport& r, F&& closed) {
  double worst = 0.0;
  for (int j = 0; j < r.outputs.points(); ++j) {
    worst = std::max(worst, std::fabs(r.outputs.values()[j] - closed(r.outputs.node(j))));
  }
  return worst;
}

double relative_gap(std::pair<double, double> v) {
  return std::fabs(v.first - v.second) / std::max(std::fabs(v.first), std::fabs(v.second));
}

void suite_integrals(Suite& s, const std::vector<double>& alphas) {
  {
    const QuadResult r = integrate_semi_infinite(Integrand::log_at_left([](double t) { return e1(t); }), 0.0,
                                                 with_env_max_work({1e-12, 1e-12, 4000}));
    s.add("e1_normalization", "-", "-", r.value, 1.0, 1e-8);
  }
  for (double x : {0.1, 0.5, 1.0, 2.0}) {
    const QuadResult r = integrate_against_s([x](double z) { return z < x ? e1(x - z) : 0.0; }, x,
                                             Singularity::Log, with_env_max_work({1e-11, 1e-11, 4000}));
    s.add("convolution_e1_s_x=" + format_number(x), "-", "-", r.value, 1.0, 1e-5);
  }
  {
    const OperatorParams p3 = params(Side::Left, 0.3);
    const OperatorParams p6 = params(Side::Left, 0.6);
    const Source jj = j_source(source_of(spec::Const{1.0}, kUnit, 0.3), p3);
    double gap = 0.0;
    for (int i = 1; i <= 10; ++i) {
      const double x = i / 10.0;
      gap = std::max(gap, std::fabs(j_at(jj, p3, x).value - j_closed_constant(1.0, p6, x)));
    }
    s.add("semigroup_gap_0.3_0.3", "left", "0.3", gap, 0.0, 1e-3, Rule::Exceeds);
  }
  for (double alpha : alphas) {
    const std::string as = format_number(alpha);
    for (Side side : {Side::Left, Side::Right}) {
      const std::string sn = side_name(side);
      const OperatorParams p = params(side, alpha);
      s.add("j_closed_constant", sn, as,
            sup_gap(apply_j(spec::Const{1.0}, p, 11), [&](double x) { return j_closed_constant(1.0, p, x); }),
            0.0, 1e-7);
      for (int n = 1; n <= 3; ++n) {
        std::vector<double> c(n + 1, 0.0);
        c[n] = 1.0;
        s.add("j_closed_monomial_n=" + std::to_string(n), sn, as,
              sup_gap(apply_j(spec::Poly{c}, p, 11), [&](double x) { return j_closed_monomial(n, p, x); }),
              0.0, 1e-7);
      }
      for (int n = 0; n <= 3; ++n) {
        const FunctionSpec f = side == Side::Left ? FunctionSpec{spec::PowShiftLeft{n}}
                                                  : FunctionSpec{spec::PowShiftRight{n}};
        s.add("j_closed_powshift_n=" + std::to_string(n), sn, as,
              sup_gap(apply_j(f, p, 11), [&](double x) { return j_closed_powshift(n, p, x); }), 0.0, 1e-7);
      }
      {
        const FunctionSpec k = side == Side::Left ? FunctionSpec{spec::E1KernelLeft{}}
                                                  : FunctionSpec{spec::E1KernelRight{}};
        const Source src = source_of(k, kUnit, alpha);
        double worst = 0.0;
        for (int i = 1; i <= 5; ++i) {
          const double x = i / 6.0;
          worst = std::max(worst, std::fabs(j_at(src, p, x).value - j_closed_e1kernel(p, x)));
        }
        s.add("j_closed_e1kernel", sn, as, worst, 0.0, 1e-6);
      }
      {
        const double q_scale = alpha;
        s.add("s_closed_constant", sn, as,
              sup_gap(apply_s(spec::Const{1.0}, p, 11),
                      [&](double x) {
                        const double d = side == Side::Left ? x : 1.0 - x;
                        return q_scale * s_cumulative(d / alpha);
                      }),
              0.0, 1e-6);
      }
      {
        // L1 bounds on a fixed pseudo-random grid.
        std::mt19937_64 rng(20240611);
        Eigen::VectorXd v(2001);
        for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = static_cast<double>(rng() >> 11) * 0x1.0p-53 * 2.0 - 1.0;
        const GridFunction g(kUnit, v);
        const double n1 = l1_norm(g);
        s.add("l1_bound_j", sn, as, l1_norm(apply_j(source_of(g), p, 2001).outputs) / n1, 1.0, 1e-8,
              Rule::AtMost);
        const double bound = alpha * s_cumulative(1.0 / alpha);
        s.add("l1_bound_s", sn, as, l1_norm(apply_s(source_of(g), p, 2001).outputs) / (bound * n1), 1.0,
              1e-8, Rule::AtMost);
      }
    }
    const OperatorParams p = params(Side::Left, alpha);
    s.add("parts_j", "both", as, relative_gap(parts_j(spec::Sin{2.0}, spec::Poly{{1.0, -1.0}}, p)), 0.0, 1e-6);
    s.add("parts_s", "both", as, relative_gap(parts_s(spec::Sin{2.0}, spec::Poly{{1.0, -1.0}}, p)), 0.0, 1e-6);
  }
}

void suite_laplace(Suite& s) {
  for (double lambda : {0.5, 1.0, 2.0}) {
    const QuadResult r = laplace(Integrand::log_at_left([](double t) { return e1(t); }), lambda,
                                 with_env_max_work({1e-12, 1e-12, 4000}));
    s.add("laplace_e1_lambda=" + format_number(lambda), "-", "-", r.value, std::log1p(lambda) / lambda, 1e-6);
  }
  const QuadResult r = laplace_s_kernel(std::numbers::e - 1.0, with_env_max_work({1e-11, 1e-11, 4000}));
  s.add("laplace_s_lambda=e-1", "-", "-", r.value, 1.0, 1e-5);
}

void suite_inversion(Suite& s, const std::vector<double>& alphas) {
  for (double alpha : alphas) {
    for (Side side : {Side::Left, Side::Right}) {
      const OperatorParams p = params(side, alpha);
      for (const char* f : {"sin:1", "poly:0,1"}) {
        ResidualReport r = check_inversion_js(parse_spec(f), p);
        r.check += std::string("_") + f;
        s.add(r);
      }
      for (const char* phi : {"const:1", "sin:2", "poly:1,0,1"}) {
        ResidualReport r = check_inversion_ds(parse_spec(phi), p);
        r.check += std::string("_") + phi;
        s.add(r);
      }
      for (const char* f : {"const:1", "poly:1,1"}) {
        ResidualReport r = katr_residual(parse_spec(f), p);
        r.check += std::string("_") + f;
        s.add(r);
      }
    }
  }
}

void suite_derivatives(Suite& s, const std::vector<double>& alphas) {
  const int n = 2049;
  const double h = 1.0 / (n - 1);
  for (double alpha : alphas) {
    const std::string as = format_number(alpha);
    for (Side side : {Side::Left, Side::Right}) {
      const std::string sn = side_name(side);
      const OperatorParams p = params(side, alpha);
      // Boundary-zero AC functions: x^2 (left), (1-x)^2 (right); and x^2 (1-x)^2.
      const std::vector<std::pair<std::string, std::pair<FunctionSpec, FunctionSpec>>> cases = {
          {side == Side::Left ? "x^2" : "(1-x)^2",
           side == Side::Left ? std::pair<FunctionSpec, FunctionSpec>{spec::Poly{{0, 0, 1}}, spec::Poly{{0, 2}}}
                              : std::pair<FunctionSpec, FunctionSpec>{spec::Poly{{1, -2, 1}}, spec::Poly{{-2, 2}}}},
          {"x^2(1-x)^2", {spec::Poly{{0, 0, 1, -2, 1}}, spec::Poly{{0, 2, -6, 4}}}},
      };
      for (const auto& [name, fd] : cases) {
        const AcFunction f = AcFunction::make(fd.first, fd.second, p);
        const OperatorReport ac = d_frac_ac(f, p, n);
        const GridFunction g = GridFunction::sample(kUnit, n, [&](double x) { return eval_spec(fd.first, x, kUnit, alpha); });
        const GridFunction num = d_frac_numeric(g, p, default_difference_step(kUnit));
        double worst = 0.0;
        for (int j = 1; j + 1 < n; ++j) worst = std::max(worst, std::fabs(ac.outputs.values()[j] - num.values()[j]));
        s.add("d_ac_vs_numeric_" + name, sn, as, worst, 0.0, std::max(1e-3, 10.0 * h * h));
      }
      {
        const FunctionSpec lin = side == Side::Left ? FunctionSpec{spec::PowShiftLeft{1}}
                                                    : FunctionSpec{spec::PowShiftRight{1}};
        const FunctionSpec dlin = spec::Const{side == Side::Left ? 1.0 : -1.0};
        const AcFunction f = AcFunction::make(lin, dlin, p);
        const OperatorReport r = d_frac_ac(f, p, 11);
        const double sign = side == Side::Left ? 1.0 : -1.0;
        s.add("d_powshift1_closed", sn, as,
              sup_gap(r, [&](double x) { return sign * j_closed_constant(1.0, p, x); }), 0.0, 1e-7);
      }
    }
    const OperatorParams p = params(Side::Left, alpha);
    s.add("parts_fractional_const", "both", as,
          relative_gap(parts_fractional(spec::Const{1.0}, spec::Const{1.0}, p)), 0.0, 1e-5);
    s.add("parts_fractional_sin_x", "both", as,
          relative_gap(parts_fractional(spec::Sin{1.0}, spec::Poly{{0.0, 1.0}}, p)), 0.0, 1e-4);
  }
}

int run_verify(const std::string& suite, const std::string& alpha_list, const std::string& out) {
  const std::vector<double> alphas = parse_alpha_list(alpha_list);
  const bool all = suite == "all";
  if (!all && suite != "integrals" && suite != "inversion" && suite != "derivatives" && suite != "laplace") {
    throw ValidationError("--suite must be all, integrals, inversion, derivatives or laplace");
  }
  Suite s;
  if (all || suite == "integrals") suite_integrals(s, alphas);
  if (all || suite == "laplace") suite_laplace(s);
  if (all || suite == "inversion") suite_inversion(s, alphas);
  if (all || suite == "derivatives") suite_derivatives(s, alphas);
  Output o(out);
  s.write(o.stream());
  return s.all_pass() ? 0 : kExitVerifyFailed;
}

// ---------------------------------------------------------------------------
// sweep

int run_sweep(const std::string& spec_text, const std::string& alpha_list, const std::string& norm,
              const std::string& interval, const std::string& out) {
  if (norm != "l1") throw ValidationError("--norm must be l1");
  const std::vector<double> alphas = parse_alpha_list(alpha_list);
  const Interval iv = parse_interval(interval);
  const FunctionSpec f = parse_spec(spec_text);
  const int n = 2001;
  Output o(out);
  std::ostream& os = o.stream();
  os << "alpha,side,j_minus_f_l1,s_minus_running_l1\n";
  for (double alpha : alphas) {
    for (Side side : {Side::Left, Side::Right}) {
      OperatorParams p;
      p.side = side;
      p.alpha = alpha;
      p.interval = iv;
      p.acc = operator_accuracy();
      const Source src = source_of(f, iv, alpha);
      const GridFunction fg = GridFunction::sample(iv, n, [&](double x) { return src.eval(x); });
      const GridFunction jf = apply_j(src, p, n).outputs;
      const GridFunction sf = apply_s(src, p, n).outputs;
      const GridFunction run = running_integral(src, iv, side, n);
      os << format_number(alpha) << ',' << side_name(side) << ',' << format_number(l1_norm(jf - fg)) << ','
         << format_number(l1_norm(sf - run)) << '\n';
    }
  }
  return 0;
}

// ---------------------------------------------------------------------------
// relax

int run_relax(const std::string& problem_path, const std::string& u0_text, const std::string& out,
              const std::string& diagnostics_path) {
  const RelaxationProblem prob = load_problem(problem_path);
  double c = 0.0;
  if (u0_text == "zero") {
    c = 0.0;
  } else if (u0_text.rfind("const:", 0) == 0) {
    const FunctionSpec s = parse_spec(u0_text);
    c = std::get<spec::Const>(s).c;
  } else {
    throw ValidationError("--u0 must be zero or const:<c>");
  }
  const GridFunction u0(RelaxationProblem::domain(), Eigen::VectorXd::Constant(prob.grid_n + 1, c));
  const RelaxationSolution sol = solve_picard(prob, u0);
  {
    Output o(out);
    std::ostream& os = o.stream();
    os << "t,u\n";
    for (int j = 0; j < sol.u.points(); ++j) {
      os << format_number(sol.u.node(j)) << ',' << format_number(sol.u.values()[j]) << '\n';
    }
  }
  const std::string diag = diagnostics_json(sol.diagnostics);
  if (diagnostics_path.empty()) {
    std::cerr << diag;
  } else {
    Output d(diagnostics_path);
    d.stream() << diag;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fracalc: fractional integrals and derivatives with exponential-integral kernels"};
  app.require_subcommand(1);

  std::string out;
  std::string which;
  std::string points;
  double s_param = 0.5;
  auto* kernel = app.add_subcommand("kernel", "Evaluate E1, S, P(s, x) or Q at points");
  kernel->add_option("--which", which, "e1 | s | p | q")->required();
  kernel->add_option("--points", points, "comma-separated x values")->required();
  kernel->add_option("--s", s_param, "shape parameter for --which p");
  kernel->add_option("--out", out, "output path (default stdout)");

  std::string op;
  std::string side = "left";
  double alpha = 1.0;
  std::string spec_text;
  std::string interval = "0,1";
  int n_out = 11;
  auto* apply = app.add_subcommand("apply", "Apply J, S or D to a function on a uniform grid");
  apply->add_option("--op", op, "j | s | d")->required();
  apply->add_option("--side", side, "left | right");
  apply->add_option("--alpha", alpha, "order alpha > 0");
  apply->add_option("--spec", spec_text, "function spec, e.g. const:1, poly:0,1, grid:f.csv")->required();
  apply->add_option("--interval", interval, "a,b");
  apply->add_option("--n-out", n_out, "number of output points (>= 2)");
  apply->add_option("--out", out, "output path (default stdout)");

  std::string suite = "all";
  std::string alpha_list = "0.2,0.5";
  auto* verify = app.add_subcommand("verify", "Run identity suites; exit 3 if any check fails");
  verify->add_option("--suite", suite, "all | integrals | inversion | derivatives | laplace");
  verify->add_option("--alpha-list", alpha_list, "comma-separated alphas");
  verify->add_option("--out", out, "output path (default stdout)");

  std::string norm = "l1";
  auto* sweep = app.add_subcommand("sweep", "L1 distances of J f to f and S f to the running integral");
  sweep->add_option("--spec", spec_text, "function spec")->required();
  sweep->add_option("--alpha-list", alpha_list, "comma-separated alphas")->required();
  sweep->add_option("--norm", norm, "l1");
  sweep->add_option("--interval", interval, "a,b");
  sweep->add_option("--out", out, "output path (default stdout)");

  std::string problem;
  std::string u0 = "zero";
  std::string diagnostics;
  auto* relax = app.add_subcommand("relax", "Solve the fractional relaxation problem by Picard iteration");
  relax->add_option("--problem", problem, "problem JSON path")->required();
  relax->add_option("--u0", u0, "zero | const:<c>");
  relax->add_option("--out", out, "solution CSV path (default stdout)");
  relax->add_option("--diagnostics", diagnostics, "diagnostics JSON path (default stderr)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  try {
    if (kernel->parsed()) return run_kernel(which, points, s_param, out);
    if (apply->parsed()) return run_apply(op, side, alpha, spec_text, interval, n_out, out);
    if (verify->parsed()) return run_verify(suite, alpha_list, out);
    if (sweep->parsed()) return run_sweep(spec_text, alpha_list, norm, interval, out);
    if (relax->parsed()) return run_relax(problem, u0, out, diagnostics);
  } catch (const ValidationError& e) {
    std::cerr << "fracalc: " << e.what() << '\n';
    return kExitValidation;
  } catch (const ParseError& e) {
    std::cerr << "fracalc: " << e.what() << '\n';
    return kExitValidation;
  } catch (const DomainError& e) {
    std::cerr << "fracalc: " << e.what() << '\n';
    return kExitValidation;
  } catch (const ConvergenceError& e) {
    std::cerr << "fracalc: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
