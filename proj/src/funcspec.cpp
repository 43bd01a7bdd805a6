#include "fracalc/funcspec.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "fracalc/special.hpp"

namespace fracalc {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

class Cursor {
 public:
  explicit Cursor(std::string_view s) : s_(s) {}

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool done() {
    skip_ws();
    return pos_ >= s_.size();
  }
  std::size_t pos() const { return pos_; }

  std::string tag() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '-')) {
      ++pos_;
    }
    if (pos_ == start) throw ParseError("expected a function tag", start);
    std::string t(s_.substr(start, pos_ - start));
    for (char& c : t) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return t;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) throw ParseError(std::string("expected '") + c + "'", pos_);
  }

  double number() {
    skip_ws();
    const std::size_t start = pos_;
    std::size_t p = pos_;
    if (p < s_.size() && s_[p] == '+') ++p;  // from_chars rejects a leading '+'
    double v = 0.0;
    auto [end, ec] = std::from_chars(s_.data() + p, s_.data() + s_.size(), v);
    if (ec != std::errc() || !std::isfinite(v)) throw ParseError("malformed number", start);
    pos_ = static_cast<std::size_t>(end - s_.data());
    return v;
  }

  int integer() {
    skip_ws();
    const std::size_t start = pos_;
    std::size_t p = pos_;
    if (p < s_.size() && s_[p] == '+') ++p;
    int v = 0;
    auto [end, ec] = std::from_chars(s_.data() + p, s_.data() + s_.size(), v);
    if (ec != std::errc()) throw ParseError("malformed integer", start);
    if (v < 0) throw ParseError("exponent must be non-negative", start);
    pos_ = static_cast<std::size_t>(end - s_.data());
    return v;
  }

  std::string rest() {
    skip_ws();
    std::string r(s_.substr(pos_));
    while (!r.empty() && std::isspace(static_cast<unsigned char>(r.back()))) r.pop_back();
    pos_ = s_.size();
    return r;
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
};

std::string shortest(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string trim(std::string s) {
  auto ws = [](char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; };
  while (!s.empty() && ws(s.back())) s.pop_back();
  std::size_t i = 0;
  while (i < s.size() && ws(s[i])) ++i;
  return s.substr(i);
}

bool parse_double(const std::string& s, double& out) {
  std::string t = trim(s);
  const char* b = t.data();
  if (!t.empty() && t[0] == '+') ++b;
  auto [end, ec] = std::from_chars(b, t.data() + t.size(), out);
  return ec == std::errc() && end == t.data() + t.size();
}

}  // namespace

FunctionSpec parse_spec(std::string_view text) {
  Cursor c(text);
  const std::size_t tag_pos = (c.skip_ws(), c.pos());
  const std::string tag = c.tag();
  FunctionSpec out;
  if (tag == "e1kernel-left" || tag == "e1kernel-right") {
    if (tag == "e1kernel-left") {
      out = spec::E1KernelLeft{};
    } else {
      out = spec::E1KernelRight{};
    }
  } else {
    c.expect(':');
    if (tag == "const") {
      out = spec::Const{c.number()};
    } else if (tag == "poly") {
      if (c.done()) throw ParseError("empty coefficient list", c.pos());
      std::vector<double> coeffs{c.number()};
      while (c.accept(',')) coeffs.push_back(c.number());
      out = spec::Poly{std::move(coeffs)};
    } else if (tag == "powshift-left") {
      out = spec::PowShiftLeft{c.integer()};
    } else if (tag == "powshift-right") {
      out = spec::PowShiftRight{c.integer()};
    } else if (tag == "sin") {
      out = spec::Sin{c.number()};
    } else if (tag == "exp") {
      out = spec::Exp{c.number()};
    } else if (tag == "grid") {
      const std::size_t at = c.pos();
      std::string path = c.rest();
      if (path.empty()) throw ParseError("empty grid path", at);
      try {
        out = spec::Grid{read_grid_csv(path), path};
      } catch (const DomainError& e) {
        throw ParseError(std::string("grid: ") + e.what(), at);
      }
      return out;
    } else {
      throw ParseError("unknown function tag '" + tag + "'", tag_pos);
    }
  }
  if (!c.done()) throw ParseError("unexpected trailing input", c.pos());
  return out;
}

std::string render_spec(const FunctionSpec& f) {
  return std::visit(
      overloaded{
          [](const spec::Const& s) { return "const:" + shortest(s.c); },
          [](const spec::Poly& s) {
            std::string r = "poly:";
            for (std::size_t i = 0; i < s.coeffs.size(); ++i) {
              if (i) r += ',';
              r += shortest(s.coeffs[i]);
            }
            return r;
          },
          [](const spec::PowShiftLeft& s) { return "powshift-left:" + std::to_string(s.n); },
          [](const spec::PowShiftRight& s) { return "powshift-right:" + std::to_string(s.n); },
          [](const spec::Sin& s) { return "sin:" + shortest(s.w); },
          [](const spec::Exp& s) { return "exp:" + shortest(s.k); },
          [](const spec::E1KernelLeft&) { return std::string("e1kernel-left"); },
          [](const spec::E1KernelRight&) { return std::string("e1kernel-right"); },
          [](const spec::Grid& s) { return "grid:" + s.path; },
      },
      f);
}

double eval_spec(const FunctionSpec& f, double x, const Interval& ctx, double alpha) {
  return std::visit(
      overloaded{
          [](const spec::Const& s) { return s.c; },
          [x](const spec::Poly& s) {
            double v = 0.0;
            for (auto it = s.coeffs.rbegin(); it != s.coeffs.rend(); ++it) v = v * x + *it;
            return v;
          },
          [&](const spec::PowShiftLeft& s) { return s.n == 0 ? 1.0 : std::pow(x - ctx.a, s.n); },
          [&](const spec::PowShiftRight& s) { return s.n == 0 ? 1.0 : std::pow(ctx.b - x, s.n); },
          [x](const spec::Sin& s) { return std::sin(s.w * x); },
          [x](const spec::Exp& s) { return std::exp(s.k * x); },
          [&](const spec::E1KernelLeft&) {
            if (!(x > ctx.a)) throw DomainError("e1kernel-left is unbounded at x = a");
            return e1((x - ctx.a) / alpha);
          },
          [&](const spec::E1KernelRight&) {
            if (!(x < ctx.b)) throw DomainError("e1kernel-right is unbounded at x = b");
            return e1((ctx.b - x) / alpha);
          },
          [x](const spec::Grid& s) { return s.grid(x); },
      },
      f);
}

double eval_spec_derivative(const FunctionSpec& f, double x, const Interval& ctx, double alpha) {
  return std::visit(
      overloaded{
          [](const spec::Const&) { return 0.0; },
          [x](const spec::Poly& s) {
            double v = 0.0;
            for (std::size_t k = s.coeffs.size(); k-- > 1;) v = v * x + k * s.coeffs[k];
            return v;
          },
          [&](const spec::PowShiftLeft& s) {
            return s.n == 0 ? 0.0 : s.n * std::pow(x - ctx.a, s.n - 1);
          },
          [&](const spec::PowShiftRight& s) {
            return s.n == 0 ? 0.0 : -s.n * std::pow(ctx.b - x, s.n - 1);
          },
          [x](const spec::Sin& s) { return s.w * std::cos(s.w * x); },
          [x](const spec::Exp& s) { return s.k * std::exp(s.k * x); },
          [&](const spec::E1KernelLeft&) {
            if (!(x > ctx.a)) throw DomainError("e1kernel-left is unbounded at x = a");
            const double z = (x - ctx.a) / alpha;
            return -std::exp(-z) / (z * alpha);
          },
          [&](const spec::E1KernelRight&) {
            if (!(x < ctx.b)) throw DomainError("e1kernel-right is unbounded at x = b");
            const double z = (ctx.b - x) / alpha;
            return std::exp(-z) / (z * alpha);
          },
          [x](const spec::Grid& s) { return s.grid.slope(x); },
      },
      f);
}

bool singular_at_left(const FunctionSpec& f) {
  return std::holds_alternative<spec::E1KernelLeft>(f);
}

bool singular_at_right(const FunctionSpec& f) {
  return std::holds_alternative<spec::E1KernelRight>(f);
}

GridFunction read_grid_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open grid file '" + path + "'");
  auto fail = [&path](const std::string& msg) { return DomainError("grid file '" + path + "': " + msg); };
  std::vector<double> xs;
  std::vector<double> vs;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto comma = line.find(',');
    double x = 0.0;
    double v = 0.0;
    const bool ok = comma != std::string::npos && parse_double(line.substr(0, comma), x) &&
                    parse_double(line.substr(comma + 1), v);
    if (!ok) {
      if (xs.empty() && line_no == 1) continue;  // header
      throw fail("line " + std::to_string(line_no) + ": expected x,value");
    }
    xs.push_back(x);
    vs.push_back(v);
  }
  if (xs.size() < 3) throw fail("needs at least 3 rows");
  const std::size_t n = xs.size() - 1;
  const double h = (xs.back() - xs.front()) / static_cast<double>(n);
  if (!(h > 0.0)) throw fail("x column must be strictly increasing");
  for (std::size_t j = 1; j <= n; ++j) {
    const double d = xs[j] - xs[j - 1];
    if (!(d > 0.0)) throw fail("x column must be strictly increasing");
    if (std::fabs(d - h) > 1e-9 * h) throw fail("x column is not uniform");
  }
  Eigen::VectorXd values = Eigen::Map<Eigen::VectorXd>(vs.data(), static_cast<Eigen::Index>(vs.size()));
  if (!values.allFinite()) throw fail("values must be finite");
  return GridFunction(Interval(xs.front(), xs.back()), std::move(values));
}

void write_grid_csv(const GridFunction& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DomainError("cannot write grid file '" + path + "'");
  out << "x,value\n";
  for (int j = 0; j < g.points(); ++j) {
    out << shortest(g.node(j)) << ',' << shortest(g.values()[j]) << '\n';
  }
}

}  // namespace fracalc
