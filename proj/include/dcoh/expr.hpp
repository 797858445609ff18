#pragma once

#include "dcoh/rational.hpp"

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace dcoh {

/// Syntax error with the byte offset where parsing failed.
class ParseError : public std::invalid_argument {
 public:
  ParseError(size_t offset, const std::string& what)
      : std::invalid_argument("syntax error at offset " + std::to_string(offset) + ": " + what), offset_(offset) {}
  size_t offset() const { return offset_; }

 private:
  size_t offset_;
};

/// Raised while evaluating (division by zero, non-finite result).
class EvalError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

enum class Op { Const, Pi, Var, Add, Sub, Mul, Div, Neg, Pow, Sin, Cos, Exp };

struct ExprNode;

/// Immutable expression tree over named variables. Constructors fold constants and
/// drop neutral elements, so derivatives stay small.
class Expr {
 public:
  Expr() : Expr(Rational(0)) {}
  Expr(const Rational& q);  // NOLINT(google-explicit-constructor)
  Expr(long v) : Expr(Rational(v)) {}  // NOLINT(google-explicit-constructor)
  static Expr var(const std::string& name);
  static Expr pi();

  Op op() const;
  const ExprNode& node() const { return *node_; }
  bool is_const() const { return op() == Op::Const; }
  bool is_zero() const;
  bool is_one() const;
  /// Constant value; throws unless is_const().
  const Rational& value() const;

  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator/(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a);
  friend Expr pow(const Expr& a, int k);
  friend Expr sin(const Expr& a);
  friend Expr cos(const Expr& a);
  friend Expr exp(const Expr& a);

  /// Variables occurring in the expression, sorted.
  std::vector<std::string> variables() const;
  std::string str() const;

 private:
  explicit Expr(std::shared_ptr<const ExprNode> n) : node_(std::move(n)) {}
  static Expr make(Op op, std::vector<Expr> args, int power = 0);
  std::shared_ptr<const ExprNode> node_;
};

struct ExprNode {
  Op op;
  Rational value;    // Const
  std::string name;  // Var
  int power = 0;     // Pow
  std::vector<Expr> args;
};

/// expr := term (('+'|'-') term)*; term := unary (('*'|'/') unary)*;
/// unary := '-' unary | factor; factor := base ('^' integer)?;
/// base := number | ident | func '(' expr ')' | '(' expr ')'; funcs sin, cos, exp;
/// the identifier `pi` is the constant.
Expr parse_expr(const std::string& text);

/// Exact symbolic derivative.
Expr symbolic_d(const Expr& e, const std::string& var);

/// Expression compiled against a fixed variable order; unknown identifiers are
/// rejected here.
class BoundExpr {
 public:
  BoundExpr() = default;
  BoundExpr(const Expr& e, const std::vector<std::string>& vars);
  double operator()(const double* x) const;
  double operator()(const std::vector<double>& x) const { return (*this)(x.data()); }

 private:
  struct Instr {
    Op op;
    double value;
    int index;
  };
  std::vector<Instr> code_;
  mutable std::vector<double> stack_;
};

}  // namespace dcoh
