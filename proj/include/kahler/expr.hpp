#pragma once

// Real-valued expressions over the surface parameters, parsed by recursive
// descent and evaluated on jets.
//
// Grammar (whitespace insignificant):
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ['^' ['-' | '+'] INTEGER]
//   primary := NUMBER | VARIABLE | CONSTANT | FUNC '(' expr ')'
//            | 'atan2' '(' expr ',' expr ')' | '(' expr ')'
//   VARIABLE := 'u' | 'v' (and 't' for loop curves)
//   CONSTANT := 'pi' | 'e'
//   FUNC     := 'sin' | 'cos' | 'exp' | 'sqrt'
// Exponents are integer literals only; there is no implicit multiplication.

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "kahler/jet.hpp"

namespace kahler {

class ExprAst {
public:
  enum class Kind {
    number,
    variable,
    constant_pi,
    constant_e,
    neg,
    sin,
    cos,
    exp,
    sqrt,
    add,
    sub,
    mul,
    div,
    pow,
    atan2,
  };
  enum class Variable { u, v, t };

  struct Node {
    Kind kind = Kind::number;
    double number = 0.0;
    Variable variable = Variable::u;
    int exponent = 0;
    std::vector<std::shared_ptr<const Node>> children;
  };
  using NodePtr = std::shared_ptr<const Node>;

  ExprAst() = default;
  explicit ExprAst(NodePtr root) : root_(std::move(root)) {}

  [[nodiscard]] bool empty() const { return !root_; }
  [[nodiscard]] const Node& root() const { return *root_; }
  [[nodiscard]] const NodePtr& root_ptr() const { return root_; }

  /// Canonical, fully parenthesized text that re-parses to the same tree.
  [[nodiscard]] std::string to_string() const;
  [[nodiscard]] bool uses_variable(Variable var) const;

  friend bool operator==(const ExprAst& a, const ExprAst& b);

private:
  NodePtr root_;
};

struct ParseOptions {
  bool allow_t = false;
  bool allow_uv = true;
};

/// Throws ParseError with a 1-based offset into `text`.
ExprAst parse(std::string_view text, ParseOptions options = {});

/// Jet of the expression at p. Propagates DomainError from jet arithmetic.
Jet3 eval_jet(const ExprAst& ast, ParamPoint p);

/// Plain value; `t` is only meaningful for loop-curve expressions.
double eval_value(const ExprAst& ast, double u, double v, double t = 0.0);

/// Parses and evaluates a closed expression such as "pi/6".
double eval_constant(std::string_view text);

} // namespace kahler
