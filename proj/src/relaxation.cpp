#include "fracalc/relaxation.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fracalc/operators.hpp"
#include "fracalc/special.hpp"

namespace fracalc {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

Eigen::VectorXd forcing(const RelaxationProblem& prob, const GridFunction& u) {
  const Interval dom = RelaxationProblem::domain();
  Eigen::VectorXd out(u.points());
  const auto& [g, c] = std::visit(
      overloaded{[](const rhs::Autonomous& r) { return std::pair<const FunctionSpec&, double>{r.g, 0.0}; },
                 [](const rhs::Affine& r) { return std::pair<const FunctionSpec&, double>{r.g, r.c}; }},
      prob.rhs);
  for (int j = 0; j < u.points(); ++j) {
    out[j] = eval_spec(g, u.node(j), dom, prob.alpha) + c * u.values()[j];
  }
  return out;
}

}  // namespace

void RelaxationProblem::validate() const {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw DomainError("relaxation: alpha must be positive");
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw DomainError("relaxation: lambda must be positive");
  if (!(lipschitz_cf >= 0.0)) throw DomainError("relaxation: lipschitz_cf must be nonnegative");
  if (const auto* aff = std::get_if<rhs::Affine>(&rhs)) {
    if (lipschitz_cf < std::fabs(aff->c)) throw DomainError("relaxation: lipschitz_cf must be >= |c|");
  } else if (lipschitz_cf != 0.0) {
    throw DomainError("relaxation: autonomous rhs has lipschitz_cf = 0");
  }
  if (grid_n < 16) throw DomainError("relaxation: grid_n must be at least 16");
  if (!(tol > 0.0)) throw DomainError("relaxation: tol must be positive");
  if (max_iter < 1) throw DomainError("relaxation: max_iter must be positive");
}

double contraction_constant(double alpha, double lambda, double cf) {
  if (!(alpha > 0.0)) throw DomainError("contraction_constant: alpha must be positive");
  if (!(lambda >= 0.0) || !(cf >= 0.0)) throw DomainError("contraction_constant: lambda, cf must be nonnegative");
  const double m = lambda + cf;
  if (m == 0.0) return 0.0;
  return alpha * m * s_cumulative(1.0 / alpha, {1e-14, 1e-14, 4000});
}

RelaxationOperator::RelaxationOperator(int grid_n, double alpha)
    : grid_n_(grid_n), weights_(s_lattice_weights(grid_n, 1.0 / grid_n, alpha, Side::Left)) {}

GridFunction apply_t(const GridFunction& h, double alpha) {
  if (!(h.interval() == RelaxationProblem::domain())) throw DomainError("apply_t: h must live on [0, 1]");
  const RelaxationOperator t(h.intervals(), alpha);
  return GridFunction(h.interval(), t.apply(h.values()));
}

GridFunction picard_map(const RelaxationProblem& prob, const RelaxationOperator& t, const GridFunction& u) {
  if (u.intervals() != t.grid_n()) throw DomainError("picard_map: grid size mismatch");
  const Eigen::VectorXd src = -prob.lambda * u.values() + forcing(prob, u);
  return GridFunction(u.interval(), t.apply(src));
}

RelaxationSolution solve_picard(const RelaxationProblem& prob, const GridFunction& u0) {
  prob.validate();
  if (u0.intervals() != prob.grid_n || !(u0.interval() == RelaxationProblem::domain())) {
    throw DomainError("solve_picard: u0 must sample [0, 1] on grid_n intervals");
  }
  const RelaxationOperator t(prob.grid_n, prob.alpha);
  SolveDiagnostics diag;
  diag.kappa = contraction_constant(prob.alpha, prob.lambda, prob.lipschitz_cf);
  diag.warning = diag.kappa >= 1.0;
  GridFunction u = u0;
  while (diag.iterations < prob.max_iter) {
    GridFunction next = picard_map(prob, t, u);
    const double change = (next.values() - u.values()).cwiseAbs().maxCoeff();
    diag.sup_changes.push_back(change);
    ++diag.iterations;
    u = std::move(next);
    if (change < prob.tol) {
      diag.converged = true;
      break;
    }
  }
  return {std::move(u), std::move(diag)};
}

RelaxationProblem parse_problem_json(const std::string& text) {
  using nlohmann::json;
  RelaxationProblem prob;
  try {
    const json doc = json::parse(text);
    if (!doc.is_object()) throw DomainError("problem: top level must be an object");
    prob.alpha = doc.value("alpha", prob.alpha);
    prob.lambda = doc.value("lambda", prob.lambda);
    prob.lipschitz_cf = doc.value("lipschitz_cf", prob.lipschitz_cf);
    prob.grid_n = doc.value("grid_n", prob.grid_n);
    prob.tol = doc.value("tol", prob.tol);
    prob.max_iter = doc.value("max_iter", prob.max_iter);
    if (doc.contains("rhs")) {
      const json& r = doc.at("rhs");
      const std::string type = r.at("type").get<std::string>();
      FunctionSpec g = parse_spec(r.at("g").get<std::string>());
      if (type == "autonomous") {
        prob.rhs = rhs::Autonomous{std::move(g)};
      } else if (type == "affine") {
        prob.rhs = rhs::Affine{std::move(g), r.at("c").get<double>()};
      } else {
        throw DomainError("problem: rhs.type must be autonomous or affine");
      }
    }
  } catch (const json::exception& e) {
    throw DomainError(std::string("problem: ") + e.what());
  } catch (const ParseError& e) {
    throw DomainError(std::string("problem: rhs.g: ") + e.what());
  }
  prob.validate();
  return prob;
}

RelaxationProblem load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open problem file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_problem_json(buf.str());
  } catch (const DomainError& e) {
    throw DomainError("problem file '" + path + "': " + e.what());
  }
}

std::string diagnostics_json(const SolveDiagnostics& d) {
  nlohmann::ordered_json j;
  j["iterations"] = d.iterations;
  j["kappa"] = d.kappa;
  j["sup_changes"] = d.sup_changes;
  j["converged"] = d.converged;
  j["warning"] = d.warning;
  return j.dump(2) + "\n";
}

}  // namespace fracalc
