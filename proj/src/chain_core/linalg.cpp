#include "dcoh/linalg.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace dcoh {

namespace {

int abs_cmp(const Integer& a, const Integer& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()); }

// Unimodular elimination towards a diagonal matrix, optionally tracking
// D = P A Q together with P^-1 and Q^-1.
class SmithWorker {
 public:
  SmithWorker(const IntMatrix& a, bool track)
      : d_(a), track_(track), m_(a.rows()), n_(a.cols()) {
    if (track_) {
      p_ = IntMatrix::identity(m_);
      pi_ = IntMatrix::identity(m_);
      q_ = IntMatrix::identity(n_);
      qi_ = IntMatrix::identity(n_);
    }
  }

  SmithForm run() {
    size_t t = 0;
    size_t active_cols = n_;
    for (; t < std::min(m_, n_); ++t) {
      if (!move_pivot(t, active_cols)) break;
      clear_cross(t);
      if (sgn(d_(t, t)) < 0) row_negate(t);
    }
    size_t r = t;
    normalize_diagonal(r);
    SmithForm out;
    for (size_t i = 0; i < r; ++i) out.invariants.push_back(d_(i, i));
    if (track_) {
      out.left = std::move(p_);
      out.left_inv = std::move(pi_);
      out.right = std::move(q_);
      out.right_inv = std::move(qi_);
    }
    return out;
  }

 private:
  // Finds the nonzero entry of least absolute value in the trailing block and
  // moves it to (t, t). Columns found entirely zero are parked at the end.
  bool move_pivot(size_t t, size_t& active_cols) {
    size_t bi = m_, bj = n_;
    Integer best;
    size_t j = t;
    while (j < active_cols) {
      bool any = false;
      for (size_t i = t; i < m_; ++i) {
        const Integer& v = d_(i, j);
        if (sgn(v) == 0) continue;
        any = true;
        if (bi == m_ || abs_cmp(v, best) < 0) {
          best = v;
          bi = i;
          bj = j;
          if (best == 1 || best == -1) break;
        }
      }
      if (!any) {
        --active_cols;
        if (j != active_cols) col_swap(j, active_cols);
        continue;
      }
      if (bi != m_ && (best == 1 || best == -1)) break;
      ++j;
    }
    if (bi == m_) return false;
    if (bi != t) row_swap(bi, t);
    if (bj != t) col_swap(bj, t);
    return true;
  }

  void clear_cross(size_t t) {
    for (;;) {
      bool clean = true;
      // Pick the smallest entry in row t / column t as pivot.
      size_t si = t, sj = t;
      for (size_t i = t + 1; i < m_; ++i)
        if (sgn(d_(i, t)) != 0 && abs_cmp(d_(i, t), d_(si, sj)) < 0) {
          si = i;
          sj = t;
        }
      for (size_t j = t + 1; j < n_; ++j)
        if (sgn(d_(t, j)) != 0 && abs_cmp(d_(t, j), d_(si, sj)) < 0) {
          si = t;
          sj = j;
        }
      if (si != t) row_swap(si, t);
      if (sj != t) col_swap(sj, t);
      Integer q;
      for (size_t i = t + 1; i < m_; ++i) {
        if (sgn(d_(i, t)) == 0) continue;
        mpz_tdiv_q(q.get_mpz_t(), d_(i, t).get_mpz_t(), d_(t, t).get_mpz_t());
        if (sgn(q) != 0) row_addmul(i, t, -q, t);
        if (sgn(d_(i, t)) != 0) clean = false;
      }
      for (size_t j = t + 1; j < n_; ++j) {
        if (sgn(d_(t, j)) == 0) continue;
        mpz_tdiv_q(q.get_mpz_t(), d_(t, j).get_mpz_t(), d_(t, t).get_mpz_t());
        if (sgn(q) != 0) col_addmul(j, t, -q, t);
        if (sgn(d_(t, j)) != 0) clean = false;
      }
      if (clean) return;
    }
  }

  // Turns the diagonal d_0..d_{r-1} into a divisibility chain.
  void normalize_diagonal(size_t r) {
    for (size_t k = 0; k < r; ++k)
      for (size_t l = k + 1; l < r; ++l) {
        const Integer a = d_(k, k);
        const Integer b = d_(l, l);
        if (sgn(b % a) == 0) continue;
        Integer g, s, tt;
        mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), tt.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        col_addmul(k, l, Integer(1), 0);
        row_combine(k, l, s, tt, Integer(-b / g), Integer(a / g));
        col_addmul(l, k, Integer(-(tt * b) / g), 0);
        if (sgn(d_(l, l)) < 0) row_negate(l);
      }
  }

  void row_addmul(size_t i, size_t j, const Integer& k, size_t from) {
    for (size_t c = from; c < n_; ++c)
      if (sgn(d_(j, c)) != 0) d_(i, c) += k * d_(j, c);
    if (!track_) return;
    for (size_t c = 0; c < m_; ++c)
      if (sgn(p_(j, c)) != 0) p_(i, c) += k * p_(j, c);
    for (size_t r = 0; r < m_; ++r)
      if (sgn(pi_(r, i)) != 0) pi_(r, j) -= k * pi_(r, i);
  }

  void col_addmul(size_t j, size_t i, const Integer& k, size_t from) {
    for (size_t r = from; r < m_; ++r)
      if (sgn(d_(r, i)) != 0) d_(r, j) += k * d_(r, i);
    if (!track_) return;
    for (size_t r = 0; r < n_; ++r)
      if (sgn(q_(r, i)) != 0) q_(r, j) += k * q_(r, i);
    for (size_t c = 0; c < n_; ++c)
      if (sgn(qi_(j, c)) != 0) qi_(i, c) -= k * qi_(j, c);
  }

  // rows (k, l) <- [[s, t], [u, v]] * rows (k, l), determinant one.
  void row_combine(size_t k, size_t l, const Integer& s, const Integer& t, const Integer& u, const Integer& v) {
    auto apply_rows = [&](IntMatrix& x, size_t width) {
      for (size_t c = 0; c < width; ++c) {
        Integer a = x(k, c), b = x(l, c);
        x(k, c) = s * a + t * b;
        x(l, c) = u * a + v * b;
      }
    };
    apply_rows(d_, n_);
    if (!track_) return;
    apply_rows(p_, m_);
    // inverse [[v, -t], [-u, s]] applied on the right of P^-1
    for (size_t r = 0; r < m_; ++r) {
      Integer a = pi_(r, k), b = pi_(r, l);
      pi_(r, k) = a * v - b * u;
      pi_(r, l) = -a * t + b * s;
    }
  }

  void row_swap(size_t i, size_t j) {
    for (size_t c = 0; c < n_; ++c) swap(d_(i, c), d_(j, c));
    if (!track_) return;
    for (size_t c = 0; c < m_; ++c) swap(p_(i, c), p_(j, c));
    for (size_t r = 0; r < m_; ++r) swap(pi_(r, i), pi_(r, j));
  }

  void col_swap(size_t i, size_t j) {
    for (size_t r = 0; r < m_; ++r) swap(d_(r, i), d_(r, j));
    if (!track_) return;
    for (size_t r = 0; r < n_; ++r) swap(q_(r, i), q_(r, j));
    for (size_t c = 0; c < n_; ++c) swap(qi_(i, c), qi_(j, c));
  }

  void row_negate(size_t i) {
    for (size_t c = 0; c < n_; ++c) d_(i, c) = -d_(i, c);
    if (!track_) return;
    for (size_t c = 0; c < m_; ++c) p_(i, c) = -p_(i, c);
    for (size_t r = 0; r < m_; ++r) pi_(r, i) = -pi_(r, i);
  }

  IntMatrix d_;
  bool track_;
  size_t m_, n_;
  IntMatrix p_, pi_, q_, qi_;
};

Integer row_denominator_lcm(const RatMatrix& a, size_t i, const Rational* extra) {
  Integer l = 1;
  for (size_t j = 0; j < a.cols(); ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a(i, j).get_den_mpz_t());
  if (extra) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), extra->get_den_mpz_t());
  return l;
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& a, bool with_transforms) {
  return SmithWorker(a, with_transforms).run();
}

std::vector<Integer> invariant_factors(const IntMatrix& a) { return SmithWorker(a, false).run().invariants; }

Rref rref(const RatMatrix& a) {
  Rref out{a, {}};
  RatMatrix& r = out.reduced;
  const size_t m = r.rows(), n = r.cols();
  size_t row = 0;
  for (size_t col = 0; col < n && row < m; ++col) {
    size_t piv = m;
    for (size_t i = row; i < m; ++i)
      if (sgn(r(i, col)) != 0) {
        piv = i;
        break;
      }
    if (piv == m) continue;
    if (piv != row)
      for (size_t c = 0; c < n; ++c) swap(r(piv, c), r(row, c));
    Rational inv = 1 / r(row, col);
    for (size_t c = col; c < n; ++c)
      if (sgn(r(row, c)) != 0) r(row, c) *= inv;
    for (size_t i = 0; i < m; ++i) {
      if (i == row || sgn(r(i, col)) == 0) continue;
      Rational f = r(i, col);
      for (size_t c = col; c < n; ++c)
        if (sgn(r(row, c)) != 0) r(i, c) -= f * r(row, c);
    }
    out.pivot_cols.push_back(col);
    ++row;
  }
  return out;
}

size_t rank(const IntMatrix& a) { return invariant_factors(a).size(); }

size_t rank(const RatMatrix& a) {
  IntMatrix scaled_rows(a.rows(), a.cols());
  for (size_t i = 0; i < a.rows(); ++i) {
    Integer l = row_denominator_lcm(a, i, nullptr);
    for (size_t j = 0; j < a.cols(); ++j) {
      Rational v = a(i, j) * l;
      scaled_rows(i, j) = v.get_num();
    }
  }
  return rank(scaled_rows);
}

std::vector<RatVec> nullspace(const RatMatrix& a) {
  Rref rr = rref(a);
  const size_t n = a.cols();
  std::vector<bool> is_pivot(n, false);
  for (size_t c : rr.pivot_cols) is_pivot[c] = true;
  std::vector<RatVec> basis;
  for (size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    RatVec v(n);
    v[f] = 1;
    for (size_t i = 0; i < rr.pivot_cols.size(); ++i) v[rr.pivot_cols[i]] = -rr.reduced(i, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<RatVec> solve_rational(const RatMatrix& a, const RatVec& b) {
  if (b.size() != a.rows()) throw std::invalid_argument("solve_rational: dimension mismatch");
  RatMatrix aug(a.rows(), a.cols() + 1);
  for (size_t i = 0; i < a.rows(); ++i) {
    for (size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  Rref rr = rref(aug);
  if (!rr.pivot_cols.empty() && rr.pivot_cols.back() == a.cols()) return std::nullopt;
  RatVec x(a.cols());
  for (size_t i = 0; i < rr.pivot_cols.size(); ++i) x[rr.pivot_cols[i]] = rr.reduced(i, a.cols());
  return x;
}

IntMatrix integer_kernel(const IntMatrix& a) {
  SmithForm s = smith_normal_form(a, true);
  const size_t n = a.cols(), r = s.rank();
  IntMatrix k(n, n - r);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = r; j < n; ++j) k(i, j - r) = s.right(i, j);
  return k;
}

std::optional<IntVec> solve_integer(const IntMatrix& a, const IntVec& b) {
  if (b.size() != a.rows()) throw std::invalid_argument("solve_integer: dimension mismatch");
  if (a.cols() == 0) return is_zero(b) ? std::optional<IntVec>(IntVec{}) : std::nullopt;
  SmithForm s = smith_normal_form(a, true);
  IntVec c = s.left * b;
  IntVec y(a.cols());
  for (size_t i = 0; i < c.size(); ++i) {
    if (i < s.rank()) {
      if (sgn(c[i] % s.invariants[i]) != 0) return std::nullopt;
      y[i] = c[i] / s.invariants[i];
    } else if (sgn(c[i]) != 0) {
      return std::nullopt;
    }
  }
  return s.right * y;
}

std::optional<MixedSolution> mixed_solve(const IntMatrix& a_int, const RatMatrix& a_rat, const RatVec& b) {
  const size_t rows = b.size();
  if (a_int.rows() != rows || a_rat.rows() != rows)
    throw std::invalid_argument("mixed_solve: matrices have " + std::to_string(a_int.rows()) + " and " +
                                std::to_string(a_rat.rows()) + " rows, right-hand side has " +
                                std::to_string(rows));
  const size_t p = a_int.cols(), q = a_rat.cols();

  // Rows of `proj` span the left annihilator of A_rat: proj * A_rat = 0.
  std::vector<RatVec> annihilator = q == 0 ? std::vector<RatVec>{} : nullspace(a_rat.transpose());
  RatMatrix proj;
  if (q == 0) {
    proj = RatMatrix::identity(rows);
  } else {
    proj = RatMatrix(annihilator.size(), rows);
    for (size_t i = 0; i < annihilator.size(); ++i)
      for (size_t j = 0; j < rows; ++j) proj(i, j) = annihilator[i][j];
  }

  RatMatrix reduced = proj * to_rational(a_int);
  RatVec rhs = proj * b;
  IntMatrix m(reduced.rows(), p);
  IntVec v(reduced.rows());
  for (size_t i = 0; i < reduced.rows(); ++i) {
    Integer l = row_denominator_lcm(reduced, i, &rhs[i]);
    for (size_t j = 0; j < p; ++j) m(i, j) = Rational(reduced(i, j) * l).get_num();
    v[i] = Rational(rhs[i] * l).get_num();
  }
  auto x = solve_integer(m, v);
  if (!x) return std::nullopt;

  RatVec residual = b - to_rationals(a_int * *x);
  RatVec y;
  if (q == 0) {
    if (!is_zero(residual)) return std::nullopt;
  } else {
    auto sol = solve_rational(a_rat, residual);
    if (!sol) return std::nullopt;
    y = std::move(*sol);
  }

  RatVec check = to_rationals(a_int * *x);
  if (q > 0) check = check + a_rat * y;
  if (check != b) throw std::logic_error("mixed_solve: substitution check failed");
  return MixedSolution{std::move(*x), std::move(y)};
}

}  // namespace dcoh
