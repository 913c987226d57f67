#include "leafflow/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <type_traits>
#include <vector>

namespace leafflow {

enum class Op {
  Const,
  Var,
  Add,
  Sub,
  Mul,
  Div,
  Neg,
  Pow,
  Exp,
  Cosh,
  Sinh,
};

struct Expr::Node {
  Op op;
  double value = 0.0;  // Const
  int axis = 0;        // Var
  int exponent = 0;    // Pow
  NodePtr lhs, rhs;
};

namespace {

const char* op_name(Op op) {
  switch (op) {
    case Op::Const: return "constant";
    case Op::Var: return "variable";
    case Op::Add: return "+";
    case Op::Sub: return "-";
    case Op::Mul: return "*";
    case Op::Div: return "/";
    case Op::Neg: return "unary -";
    case Op::Pow: return "^";
    case Op::Exp: return "exp";
    case Op::Cosh: return "cosh";
    case Op::Sinh: return "sinh";
  }
  return "?";
}

Dual dual_const(double v) { return {v, 0, 0, 0}; }

Dual operator+(const Dual& a, const Dual& b) {
  return {a.v + b.v, a.dx + b.dx, a.dy + b.dy, a.dz + b.dz};
}
Dual operator-(const Dual& a, const Dual& b) {
  return {a.v - b.v, a.dx - b.dx, a.dy - b.dy, a.dz - b.dz};
}
Dual operator-(const Dual& a) { return {-a.v, -a.dx, -a.dy, -a.dz}; }
Dual operator*(const Dual& a, const Dual& b) {
  return {a.v * b.v, a.dx * b.v + a.v * b.dx, a.dy * b.v + a.v * b.dy,
          a.dz * b.v + a.v * b.dz};
}
Dual operator/(const Dual& a, const Dual& b) {
  const double inv = 1.0 / b.v;
  const double q = a.v * inv;
  return {q, (a.dx - q * b.dx) * inv, (a.dy - q * b.dy) * inv,
          (a.dz - q * b.dz) * inv};
}
Dual chain(const Dual& a, double f, double fprime) {
  return {f, fprime * a.dx, fprime * a.dy, fprime * a.dz};
}

double ipow(double b, int n) {
  if (n < 0) return 1.0 / ipow(b, -n);
  double r = 1.0;
  while (n > 0) {
    if (n & 1) r *= b;
    b *= b;
    n >>= 1;
  }
  return r;
}

double value_of(double v) { return v; }
double value_of(const Dual& d) { return d.v; }

template <class T>
T make_var(const Point3& p, int axis) {
  const double v = axis == 0 ? p.x : (axis == 1 ? p.y : p.z);
  if constexpr (std::is_same_v<T, Dual>) {
    Dual d = dual_const(v);
    if (axis == 0) d.dx = 1.0;
    if (axis == 1) d.dy = 1.0;
    if (axis == 2) d.dz = 1.0;
    return d;
  } else {
    return v;
  }
}

template <class T>
T pow_node(const T& base, int n) {
  if constexpr (std::is_same_v<T, Dual>) {
    return chain(base, ipow(base.v, n), n * ipow(base.v, n - 1));
  } else {
    return ipow(base, n);
  }
}

template <class T>
T apply_fn(Op op, const T& a) {
  if constexpr (std::is_same_v<T, Dual>) {
    switch (op) {
      case Op::Exp: {
        const double e = std::exp(a.v);
        return chain(a, e, e);
      }
      case Op::Cosh: return chain(a, std::cosh(a.v), std::sinh(a.v));
      default: return chain(a, std::sinh(a.v), std::cosh(a.v));
    }
  } else {
    switch (op) {
      case Op::Exp: return std::exp(a);
      case Op::Cosh: return std::cosh(a);
      default: return std::sinh(a);
    }
  }
}

template <class T>
T check_finite(Op op, T result) {
  if (!std::isfinite(value_of(result))) {
    throw EvalError(std::string("non-finite value at node '") + op_name(op) +
                    "'");
  }
  return result;
}

}  // namespace

template <class T>
static T eval_rec(const Expr::Node* n, const Point3& p) {
  switch (n->op) {
    case Op::Const:
      if constexpr (std::is_same_v<T, Dual>)
        return dual_const(n->value);
      else
        return n->value;
    case Op::Var:
      return make_var<T>(p, n->axis);
    case Op::Add:
      return check_finite(n->op, eval_rec<T>(n->lhs.get(), p) +
                                     eval_rec<T>(n->rhs.get(), p));
    case Op::Sub:
      return check_finite(n->op, eval_rec<T>(n->lhs.get(), p) -
                                     eval_rec<T>(n->rhs.get(), p));
    case Op::Mul:
      return check_finite(n->op, eval_rec<T>(n->lhs.get(), p) *
                                     eval_rec<T>(n->rhs.get(), p));
    case Op::Div:
      return check_finite(n->op, eval_rec<T>(n->lhs.get(), p) /
                                     eval_rec<T>(n->rhs.get(), p));
    case Op::Neg:
      return -eval_rec<T>(n->lhs.get(), p);
    case Op::Pow:
      return check_finite(
          n->op, pow_node<T>(eval_rec<T>(n->lhs.get(), p), n->exponent));
    case Op::Exp:
    case Op::Cosh:
    case Op::Sinh:
      return check_finite(n->op,
                          apply_fn<T>(n->op, eval_rec<T>(n->lhs.get(), p)));
  }
  throw EvalError("corrupt expression node");
}

Expr Expr::constant(double v) {
  auto n = std::make_shared<Node>();
  n->op = Op::Const;
  n->value = v;
  return Expr(std::move(n));
}

Expr Expr::var(int axis) {
  auto n = std::make_shared<Node>();
  n->op = Op::Var;
  n->axis = axis;
  return Expr(std::move(n));
}

Expr Expr::operator+(const Expr& o) const {
  auto n = std::make_shared<Node>();
  n->op = Op::Add;
  n->lhs = node_;
  n->rhs = o.node_;
  return Expr(std::move(n));
}

Expr Expr::operator-(const Expr& o) const {
  auto n = std::make_shared<Node>();
  n->op = Op::Sub;
  n->lhs = node_;
  n->rhs = o.node_;
  return Expr(std::move(n));
}

Expr Expr::operator*(const Expr& o) const {
  auto n = std::make_shared<Node>();
  n->op = Op::Mul;
  n->lhs = node_;
  n->rhs = o.node_;
  return Expr(std::move(n));
}

Expr Expr::operator/(const Expr& o) const {
  auto n = std::make_shared<Node>();
  n->op = Op::Div;
  n->lhs = node_;
  n->rhs = o.node_;
  return Expr(std::move(n));
}

Expr Expr::operator-() const {
  auto n = std::make_shared<Node>();
  n->op = Op::Neg;
  n->lhs = node_;
  return Expr(std::move(n));
}

Expr Expr::pow(int e) const {
  auto n = std::make_shared<Node>();
  n->op = Op::Pow;
  n->lhs = node_;
  n->exponent = e;
  return Expr(std::move(n));
}

Expr exp(const Expr& e) {
  auto n = std::make_shared<Expr::Node>();
  n->op = Op::Exp;
  n->lhs = e.node_;
  return Expr(std::move(n));
}

Expr cosh(const Expr& e) {
  auto n = std::make_shared<Expr::Node>();
  n->op = Op::Cosh;
  n->lhs = e.node_;
  return Expr(std::move(n));
}

Expr sinh(const Expr& e) {
  auto n = std::make_shared<Expr::Node>();
  n->op = Op::Sinh;
  n->lhs = e.node_;
  return Expr(std::move(n));
}

bool Expr::uses_var(int axis) const {
  if (!node_) return false;
  std::vector<const Node*> stack{node_.get()};
  while (!stack.empty()) {
    const Node* n = stack.back();
    stack.pop_back();
    if (n->op == Op::Var && n->axis == axis) return true;
    if (n->lhs) stack.push_back(n->lhs.get());
    if (n->rhs) stack.push_back(n->rhs.get());
  }
  return false;
}

double Expr::eval(const Point3& p) const {
  if (!node_) throw EvalError("empty expression");
  return eval_rec<double>(node_.get(), p);
}

Dual Expr::eval_dual(const Point3& p) const {
  if (!node_) throw EvalError("empty expression");
  return eval_rec<Dual>(node_.get(), p);
}

Covec3 Expr::gradient(const Point3& p) const {
  const Dual d = eval_dual(p);
  return {d.dx, d.dy, d.dz};
}

namespace {

int precedence(Op op) {
  switch (op) {
    case Op::Add:
    case Op::Sub: return 1;
    case Op::Mul:
    case Op::Div: return 2;
    case Op::Neg: return 3;
    case Op::Pow: return 4;
    default: return 5;
  }
}

void print_node(const Expr::Node* n, std::ostringstream& out);

void print_child(const Expr::Node* n, std::ostringstream& out, int prec) {
  const bool paren = precedence(n->op) < prec;
  if (paren) out << '(';
  print_node(n, out);
  if (paren) out << ')';
}

void print_node(const Expr::Node* n, std::ostringstream& out) {
  switch (n->op) {
    case Op::Const: {
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", n->value);
      out << buf;
      break;
    }
    case Op::Var:
      out << "xyz"[n->axis];
      break;
    case Op::Add:
      print_child(n->lhs.get(), out, 1);
      out << " + ";
      print_child(n->rhs.get(), out, 2);
      break;
    case Op::Sub:
      print_child(n->lhs.get(), out, 1);
      out << " - ";
      print_child(n->rhs.get(), out, 2);
      break;
    case Op::Mul:
      print_child(n->lhs.get(), out, 2);
      out << "*";
      print_child(n->rhs.get(), out, 3);
      break;
    case Op::Div:
      print_child(n->lhs.get(), out, 2);
      out << "/";
      print_child(n->rhs.get(), out, 3);
      break;
    case Op::Neg:
      out << "-";
      print_child(n->lhs.get(), out, 4);
      break;
    case Op::Pow:
      print_child(n->lhs.get(), out, 5);
      out << "^";
      if (n->exponent < 0)
        out << '(' << n->exponent << ')';
      else
        out << n->exponent;
      break;
    case Op::Exp:
    case Op::Cosh:
    case Op::Sinh:
      out << op_name(n->op) << '(';
      print_node(n->lhs.get(), out);
      out << ')';
      break;
  }
}

}  // namespace

std::string Expr::to_string() const {
  if (!node_) return "";
  std::ostringstream out;
  print_node(node_.get(), out);
  return out.str();
}

// ---------------------------------------------------------------------------
// Parser

namespace {

struct Parser {
  std::string_view src;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < src.size() &&
           std::isspace(static_cast<unsigned char>(src[pos])))
      ++pos;
  }

  bool eat(char c) {
    skip_ws();
    if (pos < src.size() && src[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, pos); }

  Expr parse_sum() {
    Expr lhs = parse_product();
    for (;;) {
      if (eat('+'))
        lhs = lhs + parse_product();
      else if (eat('-'))
        lhs = lhs - parse_product();
      else
        return lhs;
    }
  }

  Expr parse_product() {
    Expr lhs = parse_unary();
    for (;;) {
      if (eat('*'))
        lhs = lhs * parse_unary();
      else if (eat('/'))
        lhs = lhs / parse_unary();
      else
        return lhs;
    }
  }

  Expr parse_unary() {
    if (eat('-')) return -parse_unary();
    return parse_power();
  }

  Expr parse_power() {
    Expr base = parse_atom();
    if (eat('^')) {
      skip_ws();
      const bool paren = eat('(');
      const bool neg = eat('-');
      skip_ws();
      const std::size_t start = pos;
      while (pos < src.size() &&
             std::isdigit(static_cast<unsigned char>(src[pos])))
        ++pos;
      if (pos == start) fail("expected integer exponent after '^'");
      int exponent =
          std::atoi(std::string(src.substr(start, pos - start)).c_str());
      if (neg) exponent = -exponent;
      if (paren && !eat(')')) fail("expected ')' after exponent");
      return base.pow(exponent);
    }
    return base;
  }

  Expr parse_atom() {
    skip_ws();
    if (pos >= src.size()) fail("unexpected end of expression");
    const char c = src[pos];
    if (c == '(') {
      ++pos;
      Expr e = parse_sum();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const char* begin = src.data() + pos;
      char* end = nullptr;
      const double v = std::strtod(begin, &end);
      if (end == begin) fail("malformed number literal");
      pos += static_cast<std::size_t>(end - begin);
      return Expr::constant(v);
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos;
      while (pos < src.size() &&
             std::isalpha(static_cast<unsigned char>(src[pos])))
        ++pos;
      const std::string_view name = src.substr(start, pos - start);
      if (name == "x") return Expr::x();
      if (name == "y") return Expr::y();
      if (name == "z") return Expr::z();
      if (name == "exp" || name == "cosh" || name == "sinh") {
        if (!eat('(')) fail("expected '(' after function name");
        Expr arg = parse_sum();
        if (!eat(')')) fail("expected ')' after function argument");
        if (name == "exp") return exp(arg);
        if (name == "cosh") return cosh(arg);
        return sinh(arg);
      }
      pos = start;
      fail("unknown identifier '" + std::string(name) + "'");
    }
    fail(std::string("unexpected character '") + c + "'");
  }
};

}  // namespace

Expr parse_expression(std::string_view src) {
  Parser p{src};
  Expr e = p.parse_sum();
  p.skip_ws();
  if (p.pos != src.size()) p.fail("trailing characters");
  return e;
}

}  // namespace leafflow
