#pragma once

#include "dcoh/expr.hpp"

#include <complex>
#include <map>
#include <vector>

namespace dcoh {

/// Complex-valued expression re + i im.
struct CExpr {
  Expr re, im;
  CExpr() = default;
  CExpr(Expr r, Expr i = Expr()) : re(std::move(r)), im(std::move(i)) {}  // NOLINT(google-explicit-constructor)
  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  friend CExpr operator+(const CExpr& a, const CExpr& b) { return {a.re + b.re, a.im + b.im}; }
  friend CExpr operator-(const CExpr& a, const CExpr& b) { return {a.re - b.re, a.im - b.im}; }
  friend CExpr operator-(const CExpr& a) { return {-a.re, -a.im}; }
  friend CExpr operator*(const CExpr& a, const CExpr& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
};
CExpr symbolic_d(const CExpr& e, const std::string& var);

/// Square matrix of complex expressions.
class CMatrix {
 public:
  CMatrix() = default;
  explicit CMatrix(size_t n) : n_(n), a_(n * n) {}
  static CMatrix identity(size_t n);
  size_t size() const { return n_; }
  CExpr& operator()(size_t i, size_t j) { return a_[i * n_ + j]; }
  const CExpr& operator()(size_t i, size_t j) const { return a_[i * n_ + j]; }
  bool is_zero() const;
  CExpr trace() const;
  friend CMatrix operator+(const CMatrix& a, const CMatrix& b);
  friend CMatrix operator-(const CMatrix& a, const CMatrix& b);
  friend CMatrix operator*(const CMatrix& a, const CMatrix& b);
  friend CMatrix operator*(const CExpr& s, const CMatrix& a);

 private:
  size_t n_ = 0;
  std::vector<CExpr> a_;
};

/// Sorted coordinate indices of a basis form dx^{i1} ^ ... ^ dx^{ip}.
using FormIndex = std::vector<int>;

/// Sign of the shuffle merging disjoint sorted index lists; 0 if they overlap.
int merge_sign(const FormIndex& a, const FormIndex& b, FormIndex& merged);

/// Matrix-valued differential form of a fixed degree; absent components are zero.
struct MatForm {
  size_t rank = 1;
  int degree = 0;
  std::map<FormIndex, CMatrix> comp;
};

/// Scalar complex form of a fixed degree.
struct Form {
  int degree = 0;
  std::map<FormIndex, CExpr> comp;
};

MatForm wedge(const MatForm& a, const MatForm& b);
MatForm operator+(const MatForm& a, const MatForm& b);
Form trace(const MatForm& f);
Form scale(const Form& f, const Rational& s);
/// Exterior derivative with respect to coordinates 0..coords.size()-1.
Form exterior_d(const Form& f, const std::vector<std::string>& coords);
MatForm exterior_d(const MatForm& f, const std::vector<std::string>& coords);

/// Numeric coefficients at a point, keyed like the symbolic form.
std::map<FormIndex, std::complex<double>> evaluate(const Form& f, const std::vector<std::string>& coords,
                                                   const std::vector<double>& x);

/// Finite sum of b^k times a 2k-form (b formal, degree -2).
struct BGradedForm {
  struct Term {
    int k = 0;
    Form form;
  };
  std::vector<Term> terms;
  std::vector<std::string> coords;
  /// Largest coefficient modulus among terms of positive b-degree at x.
  double sup_positive(const std::vector<double>& x) const;
  std::complex<double> constant(const std::vector<double>& x) const;
};

std::string form_to_string(const Form& f, const std::vector<std::string>& coords);

}  // namespace dcoh
