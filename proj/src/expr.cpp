#include "soliton/expr.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <numeric>

namespace soliton::expr {

namespace {

ExprPtr make_constant(double v) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Constant;
  n->constant = v;
  return n;
}

ExprPtr make_variable(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Variable;
  n->name = std::move(name);
  return n;
}

ExprPtr make_unary(UnaryOp op, ExprPtr a) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Unary;
  n->uop = op;
  n->a = std::move(a);
  return n;
}

ExprPtr make_binary(BinaryOp op, ExprPtr a, ExprPtr b) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Binary;
  n->bop = op;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

ExprPtr make_power(ExprPtr a, Rational r) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Power;
  n->exponent = r;
  n->a = std::move(a);
  return n;
}

bool is_const(const ExprPtr& e, double v) {
  return e->kind == NodeKind::Constant && e->constant == v;
}

// --- tokenizer ------------------------------------------------------------

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
  Tok kind = Tok::End;
  std::size_t offset = 0;
  double number = 0;
  std::string text;

  Token() = default;
  Token(Tok k, std::size_t off) : kind(k), offset(off) {}
};

struct Lexer {
  const std::string& s;
  std::size_t pos = 0;

  explicit Lexer(const std::string& str) : s(str) {}

  Token next() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    std::size_t start = pos;
    if (pos >= s.size()) return {Tok::End, start};
    char c = s[pos];
    switch (c) {
      case '+': ++pos; return {Tok::Plus, start};
      case '-': ++pos; return {Tok::Minus, start};
      case '*': ++pos; return {Tok::Star, start};
      case '/': ++pos; return {Tok::Slash, start};
      case '^': ++pos; return {Tok::Caret, start};
      case '(': ++pos; return {Tok::LParen, start};
      case ')': ++pos; return {Tok::RParen, start};
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t p = pos;
      while (p < s.size() && std::isdigit(static_cast<unsigned char>(s[p]))) ++p;
      if (p < s.size() && s[p] == '.') {
        ++p;
        if (p >= s.size() || !std::isdigit(static_cast<unsigned char>(s[p])))
          throw ParseError("malformed number", start);
        while (p < s.size() && std::isdigit(static_cast<unsigned char>(s[p]))) ++p;
      }
      if (p < s.size() && (s[p] == 'e' || s[p] == 'E')) {
        std::size_t q = p + 1;
        if (q < s.size() && (s[q] == '+' || s[q] == '-')) ++q;
        if (q < s.size() && std::isdigit(static_cast<unsigned char>(s[q]))) {
          ++q;
          while (q < s.size() && std::isdigit(static_cast<unsigned char>(s[q]))) ++q;
          p = q;
        }
      }
      Token t{Tok::Number, start};
      t.text = s.substr(start, p - start);
      t.number = std::strtod(t.text.c_str(), nullptr);
      pos = p;
      return t;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t p = pos;
      while (p < s.size() && (std::isalnum(static_cast<unsigned char>(s[p])) || s[p] == '_')) ++p;
      Token t{Tok::Ident, start};
      t.text = s.substr(start, p - start);
      pos = p;
      return t;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", start);
  }
};

const std::map<std::string, UnaryOp>& function_table() {
  static const std::map<std::string, UnaryOp> table = {
      {"sin", UnaryOp::Sin},   {"cos", UnaryOp::Cos},   {"tan", UnaryOp::Tan},
      {"sinh", UnaryOp::Sinh}, {"cosh", UnaryOp::Cosh}, {"tanh", UnaryOp::Tanh},
      {"log", UnaryOp::Log},   {"exp", UnaryOp::Exp},   {"sqrt", UnaryOp::Sqrt}};
  return table;
}

struct Parser {
  Lexer lex;
  Token cur;
  const std::vector<std::string>& vars;

  Parser(const std::string& text, const std::vector<std::string>& v) : lex(text), vars(v) {
    cur = lex.next();
  }

  void advance() { cur = lex.next(); }

  void expect(Tok k, const char* what) {
    if (cur.kind != k) throw ParseError(std::string("expected ") + what, cur.offset);
    advance();
  }

  ExprPtr parse_expr() {
    ExprPtr lhs = parse_term();
    while (cur.kind == Tok::Plus || cur.kind == Tok::Minus) {
      BinaryOp op = cur.kind == Tok::Plus ? BinaryOp::Add : BinaryOp::Sub;
      advance();
      lhs = make_binary(op, lhs, parse_term());
    }
    return lhs;
  }

  ExprPtr parse_term() {
    ExprPtr lhs = parse_unary();
    while (cur.kind == Tok::Star || cur.kind == Tok::Slash) {
      BinaryOp op = cur.kind == Tok::Star ? BinaryOp::Mul : BinaryOp::Div;
      advance();
      lhs = make_binary(op, lhs, parse_unary());
    }
    return lhs;
  }

  ExprPtr parse_unary() {
    if (cur.kind == Tok::Minus) {
      advance();
      ExprPtr inner = parse_unary();
      if (inner->kind == NodeKind::Constant) return make_constant(-inner->constant);
      return make_unary(UnaryOp::Neg, inner);
    }
    return parse_power();
  }

  ExprPtr parse_power() {
    ExprPtr base = parse_atom();
    if (cur.kind == Tok::Caret) {
      advance();
      return make_power(base, parse_ratnum());
    }
    return base;
  }

  Rational parse_ratnum() {
    bool negative = false;
    if (cur.kind == Tok::Minus) {
      negative = true;
      advance();
    }
    if (cur.kind != Tok::Number) throw ParseError("expected numeric exponent", cur.offset);
    Rational r = decode_ratnum(cur.text, cur.offset);
    advance();
    // integer "/" integer form, only when a bare integer was read
    if (r.den == 1 && cur.kind == Tok::Slash) {
      std::size_t save_pos = lex.pos;
      Token save_cur = cur;
      advance();
      if (cur.kind == Tok::Number && cur.text.find('.') == std::string::npos &&
          cur.text.find('e') == std::string::npos && cur.text.find('E') == std::string::npos) {
        long long den = std::strtoll(cur.text.c_str(), nullptr, 10);
        if (den == 0) throw ParseError("zero denominator in exponent", cur.offset);
        advance();
        r.den = den;
        long long g = std::gcd(r.num, r.den);
        if (g > 1) { r.num /= g; r.den /= g; }
      } else {
        lex.pos = save_pos;  // it was a division, not a rational exponent
        cur = save_cur;
      }
    }
    if (negative) r.num = -r.num;
    return r;
  }

  static Rational decode_ratnum(const std::string& text, std::size_t off) {
    if (text.find('e') != std::string::npos || text.find('E') != std::string::npos)
      throw ParseError("exponent must be integer, integer/integer or plain decimal", off);
    auto dot = text.find('.');
    if (dot == std::string::npos) {
      return {std::strtoll(text.c_str(), nullptr, 10), 1};
    }
    // exact decimal -> rational
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    long long num = std::strtoll(digits.c_str(), nullptr, 10);
    long long den = 1;
    for (std::size_t i = 0; i < text.size() - dot - 1; ++i) den *= 10;
    long long g = std::gcd(num, den);
    if (g > 1) { num /= g; den /= g; }
    return {num, den};
  }

  ExprPtr parse_atom() {
    if (cur.kind == Tok::Number) {
      double v = cur.number;
      advance();
      return make_constant(v);
    }
    if (cur.kind == Tok::Ident) {
      std::string name = cur.text;
      std::size_t off = cur.offset;
      advance();
      if (cur.kind == Tok::LParen) {
        auto it = function_table().find(name);
        if (it == function_table().end())
          throw ParseError("unknown function '" + name + "'", off);
        advance();
        ExprPtr arg = parse_expr();
        expect(Tok::RParen, "')'");
        return make_unary(it->second, arg);
      }
      if (std::find(vars.begin(), vars.end(), name) == vars.end()) {
        if (function_table().count(name))
          throw ParseError("function '" + name + "' needs an argument", off);
        throw ParseError("unknown identifier '" + name + "'", off);
      }
      return make_variable(name);
    }
    if (cur.kind == Tok::LParen) {
      advance();
      ExprPtr inner = parse_expr();
      expect(Tok::RParen, "')'");
      return inner;
    }
    throw ParseError("expected number, identifier or '('", cur.offset);
  }
};

// --- folding constructors used by differentiate ----------------------------

ExprPtr fold_neg(ExprPtr a) {
  if (a->kind == NodeKind::Constant) return make_constant(-a->constant);
  if (a->kind == NodeKind::Unary && a->uop == UnaryOp::Neg) return a->a;
  return make_unary(UnaryOp::Neg, std::move(a));
}

ExprPtr fold_add(ExprPtr a, ExprPtr b) {
  if (is_const(a, 0)) return b;
  if (is_const(b, 0)) return a;
  if (a->kind == NodeKind::Constant && b->kind == NodeKind::Constant)
    return make_constant(a->constant + b->constant);
  return make_binary(BinaryOp::Add, std::move(a), std::move(b));
}

ExprPtr fold_sub(ExprPtr a, ExprPtr b) {
  if (is_const(b, 0)) return a;
  if (is_const(a, 0)) return fold_neg(std::move(b));
  if (a->kind == NodeKind::Constant && b->kind == NodeKind::Constant)
    return make_constant(a->constant - b->constant);
  return make_binary(BinaryOp::Sub, std::move(a), std::move(b));
}

ExprPtr fold_mul(ExprPtr a, ExprPtr b) {
  if (is_const(a, 0) || is_const(b, 0)) return make_constant(0);
  if (is_const(a, 1)) return b;
  if (is_const(b, 1)) return a;
  if (a->kind == NodeKind::Constant && b->kind == NodeKind::Constant)
    return make_constant(a->constant * b->constant);
  return make_binary(BinaryOp::Mul, std::move(a), std::move(b));
}

ExprPtr fold_div(ExprPtr a, ExprPtr b) {
  if (is_const(a, 0)) return make_constant(0);
  if (is_const(b, 1)) return a;
  if (a->kind == NodeKind::Constant && b->kind == NodeKind::Constant && b->constant != 0)
    return make_constant(a->constant / b->constant);
  return make_binary(BinaryOp::Div, std::move(a), std::move(b));
}

ExprPtr fold_pow(ExprPtr a, Rational r) {
  if (r.num == 0) return make_constant(1);
  if (r.num == 1 && r.den == 1) return a;
  return make_power(std::move(a), r);
}

double eval_pow(double base, Rational r) {
  if (r.is_integer()) {
    if (base == 0 && r.num < 0) throw DomainError("zero base with negative exponent");
    return std::pow(base, static_cast<double>(r.num));
  }
  if (base < 0) throw DomainError("fractional power of a negative value");
  if (base == 0 && r.num < 0) throw DomainError("zero base with negative exponent");
  return std::pow(base, r.value());
}

}  // namespace

ExprPtr parse(const std::string& text, const std::vector<std::string>& vars) {
  Parser p(text, vars);
  ExprPtr e = p.parse_expr();
  if (p.cur.kind != Tok::End) throw ParseError("trailing input", p.cur.offset);
  return e;
}

double eval(const ExprPtr& e, const Bindings& b) {
  switch (e->kind) {
    case NodeKind::Constant:
      return e->constant;
    case NodeKind::Variable: {
      auto it = b.find(e->name);
      if (it == b.end()) throw DomainError("unbound variable '" + e->name + "'");
      return it->second;
    }
    case NodeKind::Unary: {
      double a = eval(e->a, b);
      switch (e->uop) {
        case UnaryOp::Neg: return -a;
        case UnaryOp::Sin: return std::sin(a);
        case UnaryOp::Cos: return std::cos(a);
        case UnaryOp::Tan:
          if (std::fabs(std::cos(a)) <= 1e-12) throw DomainError("tan at a pole");
          return std::tan(a);
        case UnaryOp::Sinh: return std::sinh(a);
        case UnaryOp::Cosh: return std::cosh(a);
        case UnaryOp::Tanh: return std::tanh(a);
        case UnaryOp::Log:
          if (a <= 0) throw DomainError("log of a non-positive value");
          return std::log(a);
        case UnaryOp::Exp: return std::exp(a);
        case UnaryOp::Sqrt:
          if (a < 0) throw DomainError("sqrt of a negative value");
          return std::sqrt(a);
      }
      break;
    }
    case NodeKind::Binary: {
      double a = eval(e->a, b);
      double c = eval(e->b, b);
      switch (e->bop) {
        case BinaryOp::Add: return a + c;
        case BinaryOp::Sub: return a - c;
        case BinaryOp::Mul: return a * c;
        case BinaryOp::Div:
          if (c == 0) throw DomainError("division by zero");
          return a / c;
      }
      break;
    }
    case NodeKind::Power:
      return eval_pow(eval(e->a, b), e->exponent);
  }
  throw std::logic_error("corrupt expression node");
}

ExprPtr differentiate(const ExprPtr& e, const std::string& var) {
  switch (e->kind) {
    case NodeKind::Constant:
      return make_constant(0);
    case NodeKind::Variable:
      return make_constant(e->name == var ? 1 : 0);
    case NodeKind::Unary: {
      ExprPtr da = differentiate(e->a, var);
      const ExprPtr& a = e->a;
      switch (e->uop) {
        case UnaryOp::Neg: return fold_neg(da);
        case UnaryOp::Sin: return fold_mul(make_unary(UnaryOp::Cos, a), da);
        case UnaryOp::Cos: return fold_mul(fold_neg(make_unary(UnaryOp::Sin, a)), da);
        case UnaryOp::Tan:
          return fold_mul(fold_add(make_constant(1),
                                   fold_pow(make_unary(UnaryOp::Tan, a), {2, 1})),
                          da);
        case UnaryOp::Sinh: return fold_mul(make_unary(UnaryOp::Cosh, a), da);
        case UnaryOp::Cosh: return fold_mul(make_unary(UnaryOp::Sinh, a), da);
        case UnaryOp::Tanh:
          return fold_mul(fold_sub(make_constant(1),
                                   fold_pow(make_unary(UnaryOp::Tanh, a), {2, 1})),
                          da);
        case UnaryOp::Log: return fold_div(da, a);
        case UnaryOp::Exp: return fold_mul(make_unary(UnaryOp::Exp, a), da);
        case UnaryOp::Sqrt:
          return fold_div(da, fold_mul(make_constant(2), make_unary(UnaryOp::Sqrt, a)));
      }
      break;
    }
    case NodeKind::Binary: {
      ExprPtr da = differentiate(e->a, var);
      ExprPtr db = differentiate(e->b, var);
      switch (e->bop) {
        case BinaryOp::Add: return fold_add(da, db);
        case BinaryOp::Sub: return fold_sub(da, db);
        case BinaryOp::Mul:
          return fold_add(fold_mul(da, e->b), fold_mul(e->a, db));
        case BinaryOp::Div:
          return fold_div(fold_sub(fold_mul(da, e->b), fold_mul(e->a, db)),
                          fold_pow(e->b, {2, 1}));
      }
      break;
    }
    case NodeKind::Power: {
      // d(u^r) = r u^(r-1) u'
      ExprPtr da = differentiate(e->a, var);
      Rational r = e->exponent;
      Rational rm1{r.num - r.den, r.den};
      long long g = std::gcd(rm1.num < 0 ? -rm1.num : rm1.num, rm1.den);
      if (g > 1) { rm1.num /= g; rm1.den /= g; }
      ExprPtr coeff = r.den == 1 ? make_constant(static_cast<double>(r.num))
                                 : fold_div(make_constant(static_cast<double>(r.num)),
                                            make_constant(static_cast<double>(r.den)));
      return fold_mul(fold_mul(coeff, fold_pow(e->a, rm1)), da);
    }
  }
  throw std::logic_error("corrupt expression node");
}

namespace {

std::string render_number(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

// Precedence levels: add/sub 1, mul/div 2, unary minus 3, power 4, atom 5.
int precedence(const ExprPtr& e) {
  switch (e->kind) {
    case NodeKind::Constant: return e->constant < 0 ? 3 : 5;
    case NodeKind::Variable: return 5;
    case NodeKind::Unary: return e->uop == UnaryOp::Neg ? 3 : 5;
    case NodeKind::Binary:
      return (e->bop == BinaryOp::Add || e->bop == BinaryOp::Sub) ? 1 : 2;
    case NodeKind::Power: return 4;
  }
  return 5;
}

void render_into(const ExprPtr& e, std::string& out, int min_level);

void render_child(const ExprPtr& e, std::string& out, int min_level) {
  if (precedence(e) < min_level) {
    out += '(';
    render_into(e, out, 0);
    out += ')';
  } else {
    render_into(e, out, 0);
  }
}

void render_into(const ExprPtr& e, std::string& out, int) {
  switch (e->kind) {
    case NodeKind::Constant:
      out += render_number(e->constant);
      return;
    case NodeKind::Variable:
      out += e->name;
      return;
    case NodeKind::Unary:
      if (e->uop == UnaryOp::Neg) {
        out += '-';
        render_child(e->a, out, 4);
        return;
      }
      switch (e->uop) {
        case UnaryOp::Sin: out += "sin"; break;
        case UnaryOp::Cos: out += "cos"; break;
        case UnaryOp::Tan: out += "tan"; break;
        case UnaryOp::Sinh: out += "sinh"; break;
        case UnaryOp::Cosh: out += "cosh"; break;
        case UnaryOp::Tanh: out += "tanh"; break;
        case UnaryOp::Log: out += "log"; break;
        case UnaryOp::Exp: out += "exp"; break;
        case UnaryOp::Sqrt: out += "sqrt"; break;
        case UnaryOp::Neg: break;
      }
      out += '(';
      render_into(e->a, out, 0);
      out += ')';
      return;
    case NodeKind::Binary: {
      const char* op = nullptr;
      int left = 0, right = 0;
      switch (e->bop) {
        case BinaryOp::Add: op = "+"; left = 1; right = 2; break;
        case BinaryOp::Sub: op = "-"; left = 1; right = 2; break;
        case BinaryOp::Mul: op = "*"; left = 2; right = 3; break;
        case BinaryOp::Div: op = "/"; left = 2; right = 3; break;
      }
      render_child(e->a, out, left);
      out += op;
      render_child(e->b, out, right);
      return;
    }
    case NodeKind::Power:
      render_child(e->a, out, 5);
      out += '^';
      if (e->exponent.is_integer()) {
        out += std::to_string(e->exponent.num);
      } else {
        out += std::to_string(e->exponent.num);
        out += '/';
        out += std::to_string(e->exponent.den);
      }
      return;
  }
}

}  // namespace

std::string render(const ExprPtr& e) {
  std::string out;
  render_into(e, out, 0);
  return out;
}

bool equal(const ExprPtr& a, const ExprPtr& b) {
  if (a == b) return true;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case NodeKind::Constant: return a->constant == b->constant;
    case NodeKind::Variable: return a->name == b->name;
    case NodeKind::Unary: return a->uop == b->uop && equal(a->a, b->a);
    case NodeKind::Binary: return a->bop == b->bop && equal(a->a, b->a) && equal(a->b, b->b);
    case NodeKind::Power:
      return a->exponent.num == b->exponent.num && a->exponent.den == b->exponent.den &&
             equal(a->a, b->a);
  }
  return false;
}

Function1::Function1(ExprPtr f, std::string var) : f_(std::move(f)), var_(std::move(var)) {
  d1_ = differentiate(f_, var_);
  d2_ = differentiate(d1_, var_);
}

Function1 Function1::parse(const std::string& text, const std::string& var) {
  return Function1(expr::parse(text, {var}), var);
}

Function1::Jet Function1::jet(double s) const {
  Bindings b{{var_, s}};
  return {eval(f_, b), eval(d1_, b), eval(d2_, b)};
}

double Function1::operator()(double s) const {
  Bindings b{{var_, s}};
  return eval(f_, b);
}

Surface2::Surface2(ExprPtr f, std::string xvar, std::string yvar)
    : f_(std::move(f)), xvar_(std::move(xvar)), yvar_(std::move(yvar)) {
  fx_ = differentiate(f_, xvar_);
  fy_ = differentiate(f_, yvar_);
  fxx_ = differentiate(fx_, xvar_);
  fxy_ = differentiate(fx_, yvar_);
  fyy_ = differentiate(fy_, yvar_);
}

Surface2 Surface2::parse(const std::string& text, const std::string& xvar,
                         const std::string& yvar) {
  return Surface2(expr::parse(text, {xvar, yvar}), xvar, yvar);
}

Surface2::Jet Surface2::jet(double x, double y) const {
  Bindings b{{xvar_, x}, {yvar_, y}};
  return {eval(f_, b), eval(fx_, b), eval(fy_, b), eval(fxx_, b), eval(fxy_, b), eval(fyy_, b)};
}

}  // namespace soliton::expr
