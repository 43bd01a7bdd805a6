#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "fracalc/grid.hpp"

namespace fracalc {

namespace spec {
struct Const {
  double c;
  friend bool operator==(const Const&, const Const&) = default;
};
/// c0 + c1 x + ... + cn x^n
struct Poly {
  std::vector<double> coeffs;
  friend bool operator==(const Poly&, const Poly&) = default;
};
/// (x - a)^n
struct PowShiftLeft {
  int n;
  friend bool operator==(const PowShiftLeft&, const PowShiftLeft&) = default;
};
/// (b - x)^n
struct PowShiftRight {
  int n;
  friend bool operator==(const PowShiftRight&, const PowShiftRight&) = default;
};
/// sin(w x)
struct Sin {
  double w;
  friend bool operator==(const Sin&, const Sin&) = default;
};
/// exp(k x)
struct Exp {
  double k;
  friend bool operator==(const Exp&, const Exp&) = default;
};
/// E1((x - a) / alpha)
struct E1KernelLeft {
  friend bool operator==(const E1KernelLeft&, const E1KernelLeft&) = default;
};
/// E1((b - x) / alpha)
struct E1KernelRight {
  friend bool operator==(const E1KernelRight&, const E1KernelRight&) = default;
};
struct Grid {
  GridFunction grid;
  std::string path;
  friend bool operator==(const Grid& l, const Grid& r) { return l.grid == r.grid; }
};
}  // namespace spec

using FunctionSpec = std::variant<spec::Const, spec::Poly, spec::PowShiftLeft, spec::PowShiftRight,
                                  spec::Sin, spec::Exp, spec::E1KernelLeft, spec::E1KernelRight,
                                  spec::Grid>;

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " (at position " + std::to_string(position) + ")"),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Parses `const:<c>`, `poly:<c0>,<c1>,...`, `powshift-left:<n>`,
/// `powshift-right:<n>`, `sin:<w>`, `exp:<k>`, `e1kernel-left`,
/// `e1kernel-right` and `grid:<path>`. Whitespace around tokens is ignored.
FunctionSpec parse_spec(std::string_view text);

/// Inverse of parse_spec (numbers printed with round-trip precision).
std::string render_spec(const FunctionSpec& f);

/// Evaluates f at x in [a, b]. alpha scales the E1 kernel variants.
double eval_spec(const FunctionSpec& f, double x, const Interval& ctx, double alpha);

/// Calculus derivative of f at x (grids: slope of the interpolant).
double eval_spec_derivative(const FunctionSpec& f, double x, const Interval& ctx, double alpha);

/// Declared endpoint behaviour: true when f is unbounded at a (resp. b).
bool singular_at_left(const FunctionSpec& f);
bool singular_at_right(const FunctionSpec& f);

/// Reads a CSV grid file (`x,value` rows, optional header) whose x column
/// is strictly increasing and uniform to 1e-9 relative.
GridFunction read_grid_csv(const std::string& path);
void write_grid_csv(const GridFunction& g, const std::string& path);

}  // namespace fracalc
