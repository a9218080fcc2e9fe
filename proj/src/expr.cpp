#include "kahler/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>
#include <string>

#include "kahler/errors.hpp"

namespace kahler {
namespace {

using Kind = ExprAst::Kind;
using Node = ExprAst::Node;
using NodePtr = ExprAst::NodePtr;

constexpr int kMaxExponent = 64;

NodePtr make(Kind kind, std::vector<NodePtr> children = {}) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->children = std::move(children);
  return n;
}

class Parser {
public:
  Parser(std::string_view text, ParseOptions options) : text_(text), options_(options) {}

  ExprAst run() {
    skip_ws();
    if (at_end()) {
      fail("expression", "empty expression");
    }
    NodePtr root = parse_expr();
    skip_ws();
    if (!at_end()) {
      fail("operator or end of input", std::string("unexpected '") + text_[pos_] + "'");
    }
    return ExprAst(std::move(root));
  }

private:
  std::string_view text_;
  ParseOptions options_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& expected, const std::string& message) const {
    throw ParseError(pos_ + 1, expected,
                     message + " at offset " + std::to_string(pos_ + 1) + ", expected " + expected);
  }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  bool accept(char c) {
    skip_ws();
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    skip_ws();
    if (peek() != c) {
      fail(std::string("'") + c + "'",
           at_end() ? std::string("unexpected end of input")
                    : std::string("unexpected '") + peek() + "'");
    }
    ++pos_;
  }

  NodePtr parse_expr() {
    NodePtr lhs = parse_term();
    for (;;) {
      skip_ws();
      if (accept('+')) {
        lhs = make(Kind::add, {lhs, parse_term()});
      } else if (accept('-')) {
        lhs = make(Kind::sub, {lhs, parse_term()});
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_term() {
    NodePtr lhs = parse_unary();
    for (;;) {
      if (accept('*')) {
        lhs = make(Kind::mul, {lhs, parse_unary()});
      } else if (accept('/')) {
        lhs = make(Kind::div, {lhs, parse_unary()});
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_unary() {
    if (accept('-')) {
      return make(Kind::neg, {parse_unary()});
    }
    return parse_power();
  }

  NodePtr parse_power() {
    NodePtr base = parse_primary();
    if (!accept('^')) {
      return base;
    }
    skip_ws();
    int sign = 1;
    if (peek() == '-' || peek() == '+') {
      sign = peek() == '-' ? -1 : 1;
      ++pos_;
      skip_ws();
    }
    if (!std::isdigit(static_cast<unsigned char>(peek()))) {
      fail("integer exponent", at_end() ? "unexpected end of input"
                                        : std::string("unexpected '") + peek() + "'");
    }
    const std::size_t start = pos_;
    long value = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      value = value * 10 + (peek() - '0');
      if (value > kMaxExponent) {
        pos_ = start;
        fail("integer exponent of magnitude <= 64", "exponent too large");
      }
      ++pos_;
    }
    if (peek() == '.' || peek() == 'e' || peek() == 'E') {
      pos_ = start;
      fail("integer exponent", "non-integer exponent");
    }
    auto n = std::make_shared<Node>();
    n->kind = Kind::pow;
    n->exponent = sign * static_cast<int>(value);
    n->children = {base};
    return n;
  }

  NodePtr parse_number() {
    const std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      ++pos_;
    }
    if (peek() == '.') {
      ++pos_;
      while (std::isdigit(static_cast<unsigned char>(peek()))) {
        ++pos_;
      }
    }
    if (peek() == 'e' || peek() == 'E') {
      std::size_t look = pos_ + 1;
      if (look < text_.size() && (text_[look] == '+' || text_[look] == '-')) {
        ++look;
      }
      if (look < text_.size() && std::isdigit(static_cast<unsigned char>(text_[look]))) {
        pos_ = look;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
          ++pos_;
        }
      }
    }
    const std::string literal(text_.substr(start, pos_ - start));
    if (literal == ".") {
      pos_ = start;
      fail("number", "malformed number");
    }
    auto n = std::make_shared<Node>();
    n->kind = Kind::number;
    n->number = std::stod(literal);
    return n;
  }

  NodePtr parse_primary() {
    skip_ws();
    if (at_end()) {
      fail("operand", "unexpected end of input");
    }
    const char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      return parse_number();
    }
    if (c == '(') {
      ++pos_;
      NodePtr inner = parse_expr();
      expect(')');
      return inner;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') {
        ++pos_;
      }
      const std::string_view name = text_.substr(start, pos_ - start);
      return parse_identifier(name, start);
    }
    fail("operand", std::string("unexpected '") + c + "'");
  }

  NodePtr parse_identifier(std::string_view name, std::size_t start) {
    auto variable = [&](ExprAst::Variable var) {
      auto n = std::make_shared<Node>();
      n->kind = Kind::variable;
      n->variable = var;
      return NodePtr(n);
    };
    if ((name == "u" || name == "v") && options_.allow_uv) {
      return variable(name == "u" ? ExprAst::Variable::u : ExprAst::Variable::v);
    }
    if (name == "t" && options_.allow_t) {
      return variable(ExprAst::Variable::t);
    }
    if (name == "pi") {
      return make(Kind::constant_pi);
    }
    if (name == "e") {
      return make(Kind::constant_e);
    }
    Kind fn;
    if (name == "sin") {
      fn = Kind::sin;
    } else if (name == "cos") {
      fn = Kind::cos;
    } else if (name == "exp") {
      fn = Kind::exp;
    } else if (name == "sqrt") {
      fn = Kind::sqrt;
    } else if (name == "atan2") {
      expect('(');
      NodePtr y = parse_expr();
      expect(',');
      NodePtr x = parse_expr();
      expect(')');
      return make(Kind::atan2, {y, x});
    } else {
      pos_ = start;
      fail("variable, constant or function", "unknown identifier '" + std::string(name) + "'");
    }
    expect('(');
    NodePtr arg = parse_expr();
    expect(')');
    return make(fn, {arg});
  }
};

std::string format_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void print(const Node& n, std::string& out) {
  auto unary = [&](const char* name) {
    out += name;
    out += '(';
    print(*n.children[0], out);
    out += ')';
  };
  auto binary = [&](const char* op) {
    out += '(';
    print(*n.children[0], out);
    out += op;
    print(*n.children[1], out);
    out += ')';
  };
  switch (n.kind) {
  case Kind::number:
    out += format_number(n.number);
    return;
  case Kind::variable:
    out += n.variable == ExprAst::Variable::u ? "u" : n.variable == ExprAst::Variable::v ? "v" : "t";
    return;
  case Kind::constant_pi:
    out += "pi";
    return;
  case Kind::constant_e:
    out += "e";
    return;
  case Kind::neg:
    out += "(-";
    print(*n.children[0], out);
    out += ')';
    return;
  case Kind::sin:
    return unary("sin");
  case Kind::cos:
    return unary("cos");
  case Kind::exp:
    return unary("exp");
  case Kind::sqrt:
    return unary("sqrt");
  case Kind::add:
    return binary(" + ");
  case Kind::sub:
    return binary(" - ");
  case Kind::mul:
    return binary(" * ");
  case Kind::div:
    return binary(" / ");
  case Kind::pow:
    out += '(';
    print(*n.children[0], out);
    out += '^';
    out += std::to_string(n.exponent);
    out += ')';
    return;
  case Kind::atan2:
    out += "atan2(";
    print(*n.children[0], out);
    out += ", ";
    print(*n.children[1], out);
    out += ')';
    return;
  }
}

bool equal(const Node& a, const Node& b) {
  if (a.kind != b.kind || a.children.size() != b.children.size()) {
    return false;
  }
  switch (a.kind) {
  case Kind::number:
    if (a.number != b.number) {
      return false;
    }
    break;
  case Kind::variable:
    if (a.variable != b.variable) {
      return false;
    }
    break;
  case Kind::pow:
    if (a.exponent != b.exponent) {
      return false;
    }
    break;
  default:
    break;
  }
  for (std::size_t i = 0; i < a.children.size(); ++i) {
    if (!equal(*a.children[i], *b.children[i])) {
      return false;
    }
  }
  return true;
}

bool uses(const Node& n, ExprAst::Variable var) {
  if (n.kind == Kind::variable && n.variable == var) {
    return true;
  }
  for (const auto& c : n.children) {
    if (uses(*c, var)) {
      return true;
    }
  }
  return false;
}

Jet3 jet(const Node& n, ParamPoint p) {
  switch (n.kind) {
  case Kind::number:
    return Jet3::constant(n.number);
  case Kind::variable:
    switch (n.variable) {
    case ExprAst::Variable::u:
      return Jet3::variable_u(p.u);
    case ExprAst::Variable::v:
      return Jet3::variable_v(p.v);
    case ExprAst::Variable::t:
      throw std::invalid_argument("loop parameter 't' has no jet over (u, v)");
    }
    break;
  case Kind::constant_pi:
    return Jet3::constant(std::numbers::pi);
  case Kind::constant_e:
    return Jet3::constant(std::numbers::e);
  case Kind::neg:
    return -jet(*n.children[0], p);
  case Kind::sin:
    return sin(jet(*n.children[0], p));
  case Kind::cos:
    return cos(jet(*n.children[0], p));
  case Kind::exp:
    return exp(jet(*n.children[0], p));
  case Kind::sqrt:
    return sqrt(jet(*n.children[0], p));
  case Kind::add:
    return jet(*n.children[0], p) + jet(*n.children[1], p);
  case Kind::sub:
    return jet(*n.children[0], p) - jet(*n.children[1], p);
  case Kind::mul:
    return jet(*n.children[0], p) * jet(*n.children[1], p);
  case Kind::div:
    return jet(*n.children[0], p) / jet(*n.children[1], p);
  case Kind::pow:
    return pow(jet(*n.children[0], p), n.exponent);
  case Kind::atan2:
    return atan2(jet(*n.children[0], p), jet(*n.children[1], p));
  }
  throw std::logic_error("unhandled expression node");
}

double value(const Node& n, double u, double v, double t) {
  auto arg = [&](std::size_t i) { return value(*n.children[i], u, v, t); };
  switch (n.kind) {
  case Kind::number:
    return n.number;
  case Kind::variable:
    return n.variable == ExprAst::Variable::u ? u : n.variable == ExprAst::Variable::v ? v : t;
  case Kind::constant_pi:
    return std::numbers::pi;
  case Kind::constant_e:
    return std::numbers::e;
  case Kind::neg:
    return -arg(0);
  case Kind::sin:
    return std::sin(arg(0));
  case Kind::cos:
    return std::cos(arg(0));
  case Kind::exp:
    return std::exp(arg(0));
  case Kind::sqrt: {
    const double x = arg(0);
    if (x < 0.0) {
      throw DomainError("sqrt of negative value");
    }
    return std::sqrt(x);
  }
  case Kind::add:
    return arg(0) + arg(1);
  case Kind::sub:
    return arg(0) - arg(1);
  case Kind::mul:
    return arg(0) * arg(1);
  case Kind::div: {
    const double d = arg(1);
    if (d == 0.0) {
      throw DomainError("division by zero");
    }
    return arg(0) / d;
  }
  case Kind::pow: {
    const double b = arg(0);
    if (b == 0.0 && n.exponent < 0) {
      throw DomainError("negative power of zero");
    }
    return std::pow(b, n.exponent);
  }
  case Kind::atan2:
    return std::atan2(arg(0), arg(1));
  }
  throw std::logic_error("unhandled expression node");
}

} // namespace

std::string ExprAst::to_string() const {
  std::string out;
  if (root_) {
    print(*root_, out);
  }
  return out;
}

bool ExprAst::uses_variable(Variable var) const { return root_ && uses(*root_, var); }

bool operator==(const ExprAst& a, const ExprAst& b) {
  if (a.empty() || b.empty()) {
    return a.empty() == b.empty();
  }
  return equal(*a.root_, *b.root_);
}

ExprAst parse(std::string_view text, ParseOptions options) {
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (static_cast<unsigned char>(text[i]) > 127) {
      throw ParseError(i + 1, "ASCII character", "non-ASCII byte at offset " + std::to_string(i + 1));
    }
  }
  return Parser(text, options).run();
}

Jet3 eval_jet(const ExprAst& ast, ParamPoint p) {
  if (ast.empty()) {
    throw std::invalid_argument("eval_jet on an empty expression");
  }
  return jet(ast.root(), p);
}

double eval_value(const ExprAst& ast, double u, double v, double t) {
  if (ast.empty()) {
    throw std::invalid_argument("eval_value on an empty expression");
  }
  return value(ast.root(), u, v, t);
}

double eval_constant(std::string_view text) {
  const ExprAst ast = parse(text, ParseOptions{.allow_t = false, .allow_uv = false});
  return eval_value(ast, 0.0, 0.0);
}

} // namespace kahler
