#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

#include "leafflow/linalg.hpp"

namespace leafflow {

struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, std::size_t offset)
      : std::runtime_error(msg + " (at offset " + std::to_string(offset) + ")"),
        offset(offset) {}
  std::size_t offset;
};

struct EvalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Forward-mode dual number carrying the value and the three partials
// with respect to (x, y, z).
struct Dual {
  double v = 0.0;
  double dx = 0.0, dy = 0.0, dz = 0.0;
};

// Immutable scalar field on R^3. Gradients are exact (dual numbers),
// no finite differencing anywhere in the evaluation path.
class Expr {
 public:
  struct Node;
  using NodePtr = std::shared_ptr<const Node>;

  Expr() = default;

  static Expr constant(double v);
  static Expr var(int axis);  // 0=x, 1=y, 2=z
  static Expr x() { return var(0); }
  static Expr y() { return var(1); }
  static Expr z() { return var(2); }

  Expr operator+(const Expr& o) const;
  Expr operator-(const Expr& o) const;
  Expr operator*(const Expr& o) const;
  Expr operator/(const Expr& o) const;
  Expr operator-() const;
  Expr pow(int n) const;

  friend Expr exp(const Expr& e);
  friend Expr cosh(const Expr& e);
  friend Expr sinh(const Expr& e);

  bool valid() const { return node_ != nullptr; }
  bool uses_var(int axis) const;

  double eval(const Point3& p) const;
  Dual eval_dual(const Point3& p) const;
  Covec3 gradient(const Point3& p) const;

  std::string to_string() const;

 private:
  explicit Expr(NodePtr n) : node_(std::move(n)) {}
  NodePtr node_;
};

inline Expr operator+(double a, const Expr& b) { return Expr::constant(a) + b; }
inline Expr operator-(double a, const Expr& b) { return Expr::constant(a) - b; }
inline Expr operator*(double a, const Expr& b) { return Expr::constant(a) * b; }
inline Expr operator/(double a, const Expr& b) { return Expr::constant(a) / b; }
inline Expr operator+(const Expr& a, double b) { return a + Expr::constant(b); }
inline Expr operator-(const Expr& a, double b) { return a - Expr::constant(b); }
inline Expr operator*(const Expr& a, double b) { return a * Expr::constant(b); }
inline Expr operator/(const Expr& a, double b) { return a / Expr::constant(b); }

// Grammar: + - on top, then * /, then unary -, then ^ with an integer
// exponent, then atoms (literals, x/y/z, exp/cosh/sinh, parentheses).
Expr parse_expression(std::string_view src);

}  // namespace leafflow
