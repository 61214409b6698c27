#pragma once

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace soliton::expr {

/// Parse failure with the byte offset of the offending token.
struct ParseError : std::runtime_error {
  std::size_t offset;
  ParseError(const std::string& what, std::size_t off)
      : std::runtime_error(what + " (offset " + std::to_string(off) + ")"), offset(off) {}
};

/// Evaluation outside the real domain (log of a non-positive value, even
/// root of a negative value, tan at a pole, division by zero).
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class NodeKind { Constant, Variable, Unary, Binary, Power };
enum class UnaryOp { Neg, Sin, Cos, Tan, Sinh, Cosh, Tanh, Log, Exp, Sqrt };
enum class BinaryOp { Add, Sub, Mul, Div };

/// Exact rational exponent of '^'.  Variable exponents are not representable.
struct Rational {
  long long num = 0;
  long long den = 1;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  bool is_integer() const { return den == 1; }
};

struct Node;
using ExprPtr = std::shared_ptr<const Node>;

/// Immutable expression tree.  Shared subtrees are fine; nothing mutates a
/// node after construction, so expressions are safe to use concurrently.
struct Node {
  NodeKind kind;
  double constant = 0.0;   // Constant
  std::string name;        // Variable
  UnaryOp uop{};           // Unary
  BinaryOp bop{};          // Binary
  Rational exponent{};     // Power
  ExprPtr a, b;
};

using Bindings = std::map<std::string, double>;

/// Grammar:
///   expr   := term (("+"|"-") term)* ;
///   term   := unary (("*"|"/") unary)* ;
///   unary  := "-" unary | power ;
///   power  := atom ("^" ratnum)? ;
///   atom   := number | ident | ident "(" expr ")" | "(" expr ")" ;
///   ratnum := "-"? (integer | integer "/" integer | decimal) ;
/// Implicit multiplication is rejected; idents are [a-zA-Z][a-zA-Z0-9_]*.
/// A unary minus applied directly to a numeric literal folds into the
/// constant, so rendering round-trips to an equal tree.
ExprPtr parse(const std::string& text, const std::vector<std::string>& vars);

double eval(const ExprPtr& e, const Bindings& b);

/// Exact symbolic derivative with constant folding (0*e -> 0, 1*e -> e,
/// constant op constant folded).  No further simplification is attempted;
/// algebraic equality is checked numerically where needed.
ExprPtr differentiate(const ExprPtr& e, const std::string& var);

/// Canonical infix rendering; parse(render(e)) is structurally equal to e,
/// and render o parse o render is a fixed point on rendered output.
std::string render(const ExprPtr& e);

bool equal(const ExprPtr& a, const ExprPtr& b);

/// One-variable function bundled with its first two symbolic derivatives.
class Function1 {
 public:
  Function1(ExprPtr f, std::string var);
  static Function1 parse(const std::string& text, const std::string& var);

  struct Jet {
    double value, d1, d2;
  };
  Jet jet(double s) const;
  double operator()(double s) const;

  const ExprPtr& ast() const { return f_; }

 private:
  ExprPtr f_, d1_, d2_;
  std::string var_;
};

/// Two-variable function with all partials through second order.
class Surface2 {
 public:
  Surface2(ExprPtr f, std::string xvar, std::string yvar);
  static Surface2 parse(const std::string& text, const std::string& xvar, const std::string& yvar);

  struct Jet {
    double value, dx, dy, dxx, dxy, dyy;
  };
  Jet jet(double x, double y) const;

 private:
  ExprPtr f_, fx_, fy_, fxx_, fxy_, fyy_;
  std::string xvar_, yvar_;
};

}  // namespace soliton::expr
