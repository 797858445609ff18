#include "dcoh/expr.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <set>

namespace dcoh {

Expr::Expr(const Rational& q) {
  auto n = std::make_shared<ExprNode>();
  n->op = Op::Const;
  n->value = q;
  n->value.canonicalize();
  node_ = std::move(n);
}

Expr Expr::var(const std::string& name) {
  auto n = std::make_shared<ExprNode>();
  n->op = Op::Var;
  n->name = name;
  return Expr(std::shared_ptr<const ExprNode>(std::move(n)));
}

Expr Expr::pi() {
  auto n = std::make_shared<ExprNode>();
  n->op = Op::Pi;
  return Expr(std::shared_ptr<const ExprNode>(std::move(n)));
}

Op Expr::op() const { return node_->op; }
bool Expr::is_zero() const { return op() == Op::Const && sgn(node_->value) == 0; }
bool Expr::is_one() const { return op() == Op::Const && node_->value == 1; }

const Rational& Expr::value() const {
  if (!is_const()) throw std::logic_error("Expr::value on a non-constant expression");
  return node_->value;
}

Expr Expr::make(Op op, std::vector<Expr> args, int power) {
  auto n = std::make_shared<ExprNode>();
  n->op = op;
  n->args = std::move(args);
  n->power = power;
  return Expr(std::shared_ptr<const ExprNode>(std::move(n)));
}

Expr operator+(const Expr& a, const Expr& b) {
  if (a.is_const() && b.is_const()) return Expr(a.value() + b.value());
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  return Expr::make(Op::Add, {a, b});
}

Expr operator-(const Expr& a, const Expr& b) {
  if (a.is_const() && b.is_const()) return Expr(a.value() - b.value());
  if (b.is_zero()) return a;
  if (a.is_zero()) return -b;
  return Expr::make(Op::Sub, {a, b});
}

Expr operator*(const Expr& a, const Expr& b) {
  if (a.is_const() && b.is_const()) return Expr(a.value() * b.value());
  if (a.is_zero() || b.is_zero()) return Expr(0L);
  if (a.is_one()) return b;
  if (b.is_one()) return a;
  if (a.is_const() && a.value() == -1) return -b;
  if (b.is_const() && b.value() == -1) return -a;
  return Expr::make(Op::Mul, {a, b});
}

Expr operator/(const Expr& a, const Expr& b) {
  if (b.is_zero()) throw EvalError("division by the constant zero");
  if (a.is_const() && b.is_const()) return Expr(a.value() / b.value());
  if (a.is_zero()) return Expr(0L);
  if (b.is_one()) return a;
  return Expr::make(Op::Div, {a, b});
}

Expr operator-(const Expr& a) {
  if (a.is_const()) return Expr(-a.value());
  if (a.op() == Op::Neg) return a.node().args[0];
  return Expr::make(Op::Neg, {a});
}

Expr pow(const Expr& a, int k) {
  if (k == 0) return Expr(1L);
  if (k == 1) return a;
  if (a.is_const()) {
    if (k < 0 && a.is_zero()) throw EvalError("zero raised to a negative power");
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), a.value().get_num_mpz_t(), static_cast<unsigned long>(std::abs(k)));
    mpz_pow_ui(den.get_mpz_t(), a.value().get_den_mpz_t(), static_cast<unsigned long>(std::abs(k)));
    return k > 0 ? Expr(Rational(num, den)) : Expr(Rational(den, num));
  }
  return Expr::make(Op::Pow, {a}, k);
}

Expr sin(const Expr& a) {
  if (a.is_zero()) return Expr(0L);
  return Expr::make(Op::Sin, {a});
}
Expr cos(const Expr& a) {
  if (a.is_zero()) return Expr(1L);
  return Expr::make(Op::Cos, {a});
}
Expr exp(const Expr& a) {
  if (a.is_zero()) return Expr(1L);
  return Expr::make(Op::Exp, {a});
}

namespace {

void collect(const Expr& e, std::set<std::string>& out) {
  if (e.op() == Op::Var) out.insert(e.node().name);
  for (const auto& a : e.node().args) collect(a, out);
}

int precedence(Op op) {
  switch (op) {
    case Op::Add:
    case Op::Sub:
      return 1;
    case Op::Mul:
    case Op::Div:
      return 2;
    case Op::Neg:
      return 3;
    case Op::Pow:
      return 4;
    default:
      return 5;
  }
}

std::string render(const Expr& e);

std::string wrap(const Expr& e, int min_prec) {
  const std::string s = render(e);
  return precedence(e.op()) < min_prec ? "(" + s + ")" : s;
}

std::string render(const Expr& e) {
  const auto& n = e.node();
  switch (n.op) {
    case Op::Const: {
      const std::string s = to_string(n.value);
      return sgn(n.value) < 0 || s.find('/') != std::string::npos ? "(" + s + ")" : s;
    }
    case Op::Pi:
      return "pi";
    case Op::Var:
      return n.name;
    case Op::Add:
      return render(n.args[0]) + " + " + wrap(n.args[1], 2);
    case Op::Sub:
      return render(n.args[0]) + " - " + wrap(n.args[1], 2);
    case Op::Mul:
      return wrap(n.args[0], 2) + "*" + wrap(n.args[1], 3);
    case Op::Div:
      return wrap(n.args[0], 2) + "/" + wrap(n.args[1], 3);
    case Op::Neg:
      return "-" + wrap(n.args[0], 3);
    case Op::Pow:
      return wrap(n.args[0], 5) + "^" + (n.power < 0 ? "(" + std::to_string(n.power) + ")" : std::to_string(n.power));
    case Op::Sin:
      return "sin(" + render(n.args[0]) + ")";
    case Op::Cos:
      return "cos(" + render(n.args[0]) + ")";
    case Op::Exp:
      return "exp(" + render(n.args[0]) + ")";
  }
  return "?";
}

class Parser {
 public:
  explicit Parser(const std::string& text) : s_(text) {}

  Expr parse() {
    Expr e = expr();
    skip();
    if (pos_ != s_.size()) throw ParseError(pos_, std::string("unexpected '") + s_[pos_] + "'");
    return e;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) {
      skip();
      throw ParseError(pos_, std::string("expected '") + c + "'" + (pos_ < s_.size() ? "" : " before end of input"));
    }
  }

  Expr expr() {
    Expr e = term();
    for (;;) {
      if (accept('+'))
        e = e + term();
      else if (accept('-'))
        e = e - term();
      else
        return e;
    }
  }
  Expr term() {
    Expr e = unary();
    for (;;) {
      if (accept('*')) {
        e = e * unary();
      } else if (accept('/')) {
        const size_t at = pos_;
        Expr d = unary();
        if (d.is_zero()) throw ParseError(at, "division by zero");
        e = e / d;
      } else {
        return e;
      }
    }
  }
  Expr unary() {
    if (accept('-')) return -unary();
    return factor();
  }
  Expr factor() {
    Expr b = base();
    if (accept('^')) {
      skip();
      const size_t start = pos_;
      bool neg = false;
      if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) neg = s_[pos_++] == '-';
      const size_t digits = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (pos_ == digits) throw ParseError(start, "integer exponent expected");
      const int k = std::stoi(s_.substr(digits, pos_ - digits));
      return pow(b, neg ? -k : k);
    }
    return b;
  }
  Expr base() {
    skip();
    if (pos_ >= s_.size()) throw ParseError(pos_, "unexpected end of input");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Expr e = expr();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const size_t start = pos_;
      while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) ++pos_;
      try {
        return Expr(parse_rational(s_.substr(start, pos_ - start)));
      } catch (const std::invalid_argument&) {
        throw ParseError(start, "malformed number");
      }
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      const std::string id = s_.substr(start, pos_ - start);
      if (id == "sin" || id == "cos" || id == "exp") {
        expect('(');
        Expr a = expr();
        expect(')');
        return id == "sin" ? sin(a) : id == "cos" ? cos(a) : exp(a);
      }
      if (id == "pi") return Expr::pi();
      return Expr::var(id);
    }
    throw ParseError(pos_, std::string("unexpected '") + c + "'");
  }

  const std::string& s_;
  size_t pos_ = 0;
};

}  // namespace

std::vector<std::string> Expr::variables() const {
  std::set<std::string> s;
  collect(*this, s);
  return {s.begin(), s.end()};
}

std::string Expr::str() const { return render(*this); }

Expr parse_expr(const std::string& text) { return Parser(text).parse(); }

Expr symbolic_d(const Expr& e, const std::string& v) {
  const auto& n = e.node();
  switch (n.op) {
    case Op::Const:
    case Op::Pi:
      return Expr(0L);
    case Op::Var:
      return Expr(n.name == v ? 1L : 0L);
    case Op::Add:
      return symbolic_d(n.args[0], v) + symbolic_d(n.args[1], v);
    case Op::Sub:
      return symbolic_d(n.args[0], v) - symbolic_d(n.args[1], v);
    case Op::Mul:
      return symbolic_d(n.args[0], v) * n.args[1] + n.args[0] * symbolic_d(n.args[1], v);
    case Op::Div: {
      const Expr& f = n.args[0];
      const Expr& g = n.args[1];
      return (symbolic_d(f, v) * g - f * symbolic_d(g, v)) / pow(g, 2);
    }
    case Op::Neg:
      return -symbolic_d(n.args[0], v);
    case Op::Pow:
      return Expr(static_cast<long>(n.power)) * pow(n.args[0], n.power - 1) * symbolic_d(n.args[0], v);
    case Op::Sin:
      return cos(n.args[0]) * symbolic_d(n.args[0], v);
    case Op::Cos:
      return -(sin(n.args[0]) * symbolic_d(n.args[0], v));
    case Op::Exp:
      return e * symbolic_d(n.args[0], v);
  }
  return Expr(0L);
}

// ---------------------------------------------------------------- evaluation

namespace {

template <class Emit>
void compile(const Expr& e, const std::vector<std::string>& vars, Emit&& emit) {
  const auto& n = e.node();
  for (const auto& a : n.args) compile(a, vars, emit);
  double value = 0;
  int index = n.power;
  if (n.op == Op::Const) value = n.value.get_d();
  if (n.op == Op::Pi) value = std::numbers::pi;
  if (n.op == Op::Var) {
    const auto it = std::find(vars.begin(), vars.end(), n.name);
    if (it == vars.end()) throw std::invalid_argument("unknown identifier '" + n.name + "'");
    index = static_cast<int>(it - vars.begin());
  }
  emit(n.op, value, index);
}

}  // namespace

BoundExpr::BoundExpr(const Expr& e, const std::vector<std::string>& vars) {
  compile(e, vars, [this](Op op, double value, int index) { code_.push_back({op, value, index}); });
  stack_.reserve(code_.size());
}

double BoundExpr::operator()(const double* x) const {
  auto& st = stack_;
  st.clear();
  for (const auto& in : code_) {
    switch (in.op) {
      case Op::Const:
      case Op::Pi:
        st.push_back(in.value);
        break;
      case Op::Var:
        st.push_back(x[in.index]);
        break;
      case Op::Neg:
        st.back() = -st.back();
        break;
      case Op::Sin:
        st.back() = std::sin(st.back());
        break;
      case Op::Cos:
        st.back() = std::cos(st.back());
        break;
      case Op::Exp:
        st.back() = std::exp(st.back());
        break;
      case Op::Pow: {
        const double b = st.back();
        if (b == 0 && in.index < 0) throw EvalError("zero raised to a negative power");
        st.back() = std::pow(b, in.index);
        break;
      }
      default: {
        const double r = st.back();
        st.pop_back();
        double& l = st.back();
        if (in.op == Op::Add) l += r;
        if (in.op == Op::Sub) l -= r;
        if (in.op == Op::Mul) l *= r;
        if (in.op == Op::Div) {
          if (r == 0) throw EvalError("division by zero");
          l /= r;
        }
      }
    }
  }
  if (st.empty()) return 0;
  if (!std::isfinite(st.back())) throw EvalError("non-finite value");
  return st.back();
}

}  // namespace dcoh
