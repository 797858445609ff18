#include "dcoh/forms.hpp"

#include <algorithm>

namespace dcoh {

CExpr symbolic_d(const CExpr& e, const std::string& var) { return {symbolic_d(e.re, var), symbolic_d(e.im, var)}; }

CMatrix CMatrix::identity(size_t n) {
  CMatrix m(n);
  for (size_t i = 0; i < n; ++i) m(i, i) = CExpr(Expr(1L));
  return m;
}

bool CMatrix::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](const CExpr& e) { return e.is_zero(); });
}

CExpr CMatrix::trace() const {
  CExpr t;
  for (size_t i = 0; i < n_; ++i) t = t + (*this)(i, i);
  return t;
}

CMatrix operator+(const CMatrix& a, const CMatrix& b) {
  CMatrix c(a.n_);
  for (size_t i = 0; i < a.a_.size(); ++i) c.a_[i] = a.a_[i] + b.a_[i];
  return c;
}

CMatrix operator-(const CMatrix& a, const CMatrix& b) {
  CMatrix c(a.n_);
  for (size_t i = 0; i < a.a_.size(); ++i) c.a_[i] = a.a_[i] - b.a_[i];
  return c;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
  const size_t n = a.n_;
  CMatrix c(n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      CExpr s;
      for (size_t k = 0; k < n; ++k) {
        const CExpr& x = a(i, k);
        const CExpr& y = b(k, j);
        if (!x.is_zero() && !y.is_zero()) s = s + x * y;
      }
      c(i, j) = s;
    }
  return c;
}

CMatrix operator*(const CExpr& s, const CMatrix& a) {
  CMatrix c(a.n_);
  for (size_t i = 0; i < a.a_.size(); ++i) c.a_[i] = s * a.a_[i];
  return c;
}

int merge_sign(const FormIndex& a, const FormIndex& b, FormIndex& merged) {
  merged.clear();
  int inversions = 0;
  size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (i < a.size() && j < b.size() && a[i] == b[j]) return 0;
    if (j == b.size() || (i < a.size() && a[i] < b[j])) {
      merged.push_back(a[i++]);
    } else {
      // b[j] jumps over the remaining a's.
      inversions += static_cast<int>(a.size() - i);
      merged.push_back(b[j++]);
    }
  }
  return inversions % 2 == 0 ? 1 : -1;
}

MatForm wedge(const MatForm& a, const MatForm& b) {
  MatForm r;
  r.rank = a.rank;
  r.degree = a.degree + b.degree;
  FormIndex merged;
  for (const auto& [ia, ma] : a.comp)
    for (const auto& [ib, mb] : b.comp) {
      const int s = merge_sign(ia, ib, merged);
      if (s == 0) continue;
      CMatrix p = ma * mb;
      if (s < 0) p = CExpr(Expr(-1L)) * p;
      auto it = r.comp.find(merged);
      if (it == r.comp.end())
        r.comp.emplace(merged, p);
      else
        it->second = it->second + p;
    }
  for (auto it = r.comp.begin(); it != r.comp.end();) it = it->second.is_zero() ? r.comp.erase(it) : std::next(it);
  return r;
}

MatForm operator+(const MatForm& a, const MatForm& b) {
  if (a.degree != b.degree) throw std::invalid_argument("sum of forms of different degrees");
  MatForm r = a;
  for (const auto& [i, m] : b.comp) {
    auto it = r.comp.find(i);
    if (it == r.comp.end())
      r.comp.emplace(i, m);
    else
      it->second = it->second + m;
  }
  return r;
}

Form trace(const MatForm& f) {
  Form t;
  t.degree = f.degree;
  for (const auto& [i, m] : f.comp) {
    CExpr tr = m.trace();
    if (!tr.is_zero()) t.comp.emplace(i, tr);
  }
  return t;
}

Form scale(const Form& f, const Rational& s) {
  Form r;
  r.degree = f.degree;
  for (const auto& [i, e] : f.comp) {
    CExpr v = CExpr(Expr(s)) * e;
    if (!v.is_zero()) r.comp.emplace(i, v);
  }
  return r;
}

Form exterior_d(const Form& f, const std::vector<std::string>& coords) {
  Form r;
  r.degree = f.degree + 1;
  FormIndex merged;
  for (const auto& [idx, e] : f.comp)
    for (size_t mu = 0; mu < coords.size(); ++mu) {
      const int s = merge_sign({static_cast<int>(mu)}, idx, merged);
      if (s == 0) continue;
      CExpr de = symbolic_d(e, coords[mu]);
      if (de.is_zero()) continue;
      if (s < 0) de = -de;
      auto it = r.comp.find(merged);
      if (it == r.comp.end())
        r.comp.emplace(merged, de);
      else
        it->second = it->second + de;
    }
  return r;
}

MatForm exterior_d(const MatForm& f, const std::vector<std::string>& coords) {
  MatForm r;
  r.rank = f.rank;
  r.degree = f.degree + 1;
  FormIndex merged;
  for (const auto& [idx, m] : f.comp)
    for (size_t mu = 0; mu < coords.size(); ++mu) {
      const int s = merge_sign({static_cast<int>(mu)}, idx, merged);
      if (s == 0) continue;
      CMatrix dm(m.size());
      for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = 0; j < m.size(); ++j) dm(i, j) = symbolic_d(m(i, j), coords[mu]);
      if (dm.is_zero()) continue;
      if (s < 0) dm = CExpr(Expr(-1L)) * dm;
      auto it = r.comp.find(merged);
      if (it == r.comp.end())
        r.comp.emplace(merged, dm);
      else
        it->second = it->second + dm;
    }
  return r;
}

std::map<FormIndex, std::complex<double>> evaluate(const Form& f, const std::vector<std::string>& coords,
                                                   const std::vector<double>& x) {
  std::map<FormIndex, std::complex<double>> out;
  for (const auto& [idx, e] : f.comp)
    out[idx] = {BoundExpr(e.re, coords)(x), BoundExpr(e.im, coords)(x)};
  return out;
}

double BGradedForm::sup_positive(const std::vector<double>& x) const {
  double s = 0;
  for (const auto& t : terms) {
    if (t.k == 0) continue;
    for (const auto& [idx, v] : evaluate(t.form, coords, x)) s = std::max(s, std::abs(v));
  }
  return s;
}

std::complex<double> BGradedForm::constant(const std::vector<double>& x) const {
  std::complex<double> c = 0;
  for (const auto& t : terms)
    if (t.k == 0)
      for (const auto& [idx, v] : evaluate(t.form, coords, x)) c += v;
  return c;
}

std::string form_to_string(const Form& f, const std::vector<std::string>& coords) {
  if (f.comp.empty()) return "0";
  std::string s;
  for (const auto& [idx, e] : f.comp) {
    if (!s.empty()) s += " + ";
    s += "(" + e.re.str();
    if (!e.im.is_zero()) s += " + i*(" + e.im.str() + ")";
    s += ")";
    for (size_t k = 0; k < idx.size(); ++k) s += (k ? "^d" : " d") + coords[static_cast<size_t>(idx[k])];
  }
  return s;
}

}  // namespace dcoh
