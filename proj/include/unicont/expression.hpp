#pragma once

#include <cmath>
#include <memory>
#include <string>
#include <string_view>
#include <variant>

#include "unicont/text.hpp"

namespace unicont {

/// Immutable expression tree in the single variable `x`.
///
/// Primitives: numeric constants, `pi`, `x`, unary minus, + - * / ^, and the
/// functions sin, cos, abs. Nodes are shared, so copies are cheap.
class Expression {
public:
  enum class Unary { negate, sin, cos, abs };
  enum class Binary { add, sub, mul, div, pow };

  static Expression constant(double v) { return Expression(std::make_shared<Node>(Node{Constant{v}})); }
  static Expression variable() { return Expression(std::make_shared<Node>(Node{Variable{}})); }
  static Expression unary(Unary op, Expression arg) {
    return Expression(std::make_shared<Node>(Node{UnaryNode{op, std::move(arg.node_)}}));
  }
  static Expression binary(Binary op, Expression lhs, Expression rhs) {
    return Expression(
        std::make_shared<Node>(Node{BinaryNode{op, std::move(lhs.node_), std::move(rhs.node_)}}));
  }

  double operator()(double x) const { return eval(*node_, x); }

  /// Fully parenthesised form; constants with 17 significant digits.
  std::string to_string() const {
    std::string out;
    print(*node_, out);
    return out;
  }

  /// Parses an expression starting at the scanner's position; stops before
  /// the first character that cannot continue it.
  static Expression parse(detail::Scanner& in) { return parse_sum(in); }

  static Expression parse(std::string_view text) {
    detail::Scanner in(text);
    Expression e = parse_sum(in);
    if (!in.at_end()) in.fail("unexpected trailing input");
    return e;
  }

private:
  struct Node;
  using NodePtr = std::shared_ptr<const Node>;
  struct Constant {
    double value;
  };
  struct Variable {};
  struct UnaryNode {
    Unary op;
    NodePtr arg;
  };
  struct BinaryNode {
    Binary op;
    NodePtr lhs;
    NodePtr rhs;
  };
  struct Node {
    std::variant<Constant, Variable, UnaryNode, BinaryNode> kind;
  };

  explicit Expression(NodePtr node) : node_(std::move(node)) {}

  static double eval(const Node& n, double x) {
    if (const auto* c = std::get_if<Constant>(&n.kind)) return c->value;
    if (std::holds_alternative<Variable>(n.kind)) return x;
    if (const auto* u = std::get_if<UnaryNode>(&n.kind)) {
      const double v = eval(*u->arg, x);
      switch (u->op) {
        case Unary::negate: return -v;
        case Unary::sin: return std::sin(v);
        case Unary::cos: return std::cos(v);
        case Unary::abs: return std::fabs(v);
      }
    }
    const auto& b = std::get<BinaryNode>(n.kind);
    const double l = eval(*b.lhs, x);
    const double r = eval(*b.rhs, x);
    switch (b.op) {
      case Binary::add: return l + r;
      case Binary::sub: return l - r;
      case Binary::mul: return l * r;
      case Binary::div: return l / r;
      case Binary::pow: return std::pow(l, r);
    }
    return 0.0;  // unreachable
  }

  static void print(const Node& n, std::string& out) {
    if (const auto* c = std::get_if<Constant>(&n.kind)) {
      // Negative literals are wrapped so they re-parse as a unary minus on a constant.
      if (std::signbit(c->value)) {
        out += "(-" + format_number(-c->value) + ")";
      } else {
        out += format_number(c->value);
      }
      return;
    }
    if (std::holds_alternative<Variable>(n.kind)) {
      out += 'x';
      return;
    }
    if (const auto* u = std::get_if<UnaryNode>(&n.kind)) {
      switch (u->op) {
        case Unary::negate: out += "(-"; break;
        case Unary::sin: out += "sin("; break;
        case Unary::cos: out += "cos("; break;
        case Unary::abs: out += "abs("; break;
      }
      print(*u->arg, out);
      out += ')';
      return;
    }
    const auto& b = std::get<BinaryNode>(n.kind);
    out += '(';
    print(*b.lhs, out);
    switch (b.op) {
      case Binary::add: out += '+'; break;
      case Binary::sub: out += '-'; break;
      case Binary::mul: out += '*'; break;
      case Binary::div: out += '/'; break;
      case Binary::pow: out += '^'; break;
    }
    print(*b.rhs, out);
    out += ')';
  }

  // sum := product (('+'|'-') product)*
  static Expression parse_sum(detail::Scanner& in) {
    Expression lhs = parse_product(in);
    for (;;) {
      if (in.accept('+')) {
        lhs = binary(Binary::add, lhs, parse_product(in));
      } else if (in.accept('-')) {
        lhs = binary(Binary::sub, lhs, parse_product(in));
      } else {
        return lhs;
      }
    }
  }

  // product := signed (('*'|'/') signed)*
  static Expression parse_product(detail::Scanner& in) {
    Expression lhs = parse_signed(in);
    for (;;) {
      if (in.accept('*')) {
        lhs = binary(Binary::mul, lhs, parse_signed(in));
      } else if (in.accept('/')) {
        lhs = binary(Binary::div, lhs, parse_signed(in));
      } else {
        return lhs;
      }
    }
  }

  // signed := '-' signed | power
  static Expression parse_signed(detail::Scanner& in) {
    if (in.accept('-')) {
      Expression arg = parse_signed(in);
      // Fold "-<literal>" back into a constant so canonical text round-trips.
      if (const auto* c = std::get_if<Constant>(&arg.node_->kind); c && !std::signbit(c->value)) {
        return constant(-c->value);
      }
      return unary(Unary::negate, arg);
    }
    return parse_power(in);
  }

  // power := atom ('^' signed)?   (right associative)
  static Expression parse_power(detail::Scanner& in) {
    Expression base = parse_atom(in);
    if (in.accept('^')) return binary(Binary::pow, base, parse_signed(in));
    return base;
  }

  static Expression parse_atom(detail::Scanner& in) {
    if (in.accept('(')) {
      Expression inner = parse_sum(in);
      in.expect(')');
      return inner;
    }
    const char c = in.peek();
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return constant(in.number());
    const std::size_t start = in.position();
    const std::string_view name = in.identifier();
    if (name == "x") return variable();
    if (name == "pi") return constant(M_PI);
    Unary op;
    if (name == "sin") {
      op = Unary::sin;
    } else if (name == "cos") {
      op = Unary::cos;
    } else if (name == "abs") {
      op = Unary::abs;
    } else {
      throw parse_error(start, "expected a number, 'x', 'pi', sin, cos, abs or '('");
    }
    in.expect('(');
    Expression arg = parse_sum(in);
    in.expect(')');
    return unary(op, arg);
  }

  NodePtr node_;
};

}  // namespace unicont
