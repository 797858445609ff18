#include "dcoh/complex.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace dcoh {

std::string to_string(Ring r) { return r == Ring::Z ? "Z" : "Q"; }

Ring parse_ring(const std::string& s) {
  if (s == "Z" || s == "z") return Ring::Z;
  if (s == "Q" || s == "q") return Ring::Q;
  throw std::invalid_argument("unknown ring '" + s + "' (expected Z or Q)");
}

// ---------------------------------------------------------------- Complex

Complex::Complex(Ring ring, int lo, int hi, std::vector<size_t> ranks, std::vector<RatMatrix> differentials)
    : ring_(ring), lo_(lo), hi_(hi), ranks_(std::move(ranks)), diffs_(std::move(differentials)) {
  const size_t span = hi_ >= lo_ ? static_cast<size_t>(hi_ - lo_ + 1) : 0;
  if (ranks_.size() != span)
    throw std::invalid_argument("Complex: expected " + std::to_string(span) + " ranks, got " +
                                std::to_string(ranks_.size()));
  const size_t ndiff = span > 0 ? span - 1 : 0;
  if (diffs_.size() != ndiff)
    throw std::invalid_argument("Complex: expected " + std::to_string(ndiff) + " differentials, got " +
                                std::to_string(diffs_.size()));
  for (size_t i = 0; i < ndiff; ++i) {
    const auto& d = diffs_[i];
    if (d.rows() != ranks_[i + 1] || d.cols() != ranks_[i])
      throw std::invalid_argument("Complex: d^" + std::to_string(lo_ + static_cast<int>(i)) + " has shape " +
                                  std::to_string(d.rows()) + "x" + std::to_string(d.cols()) + ", expected " +
                                  std::to_string(ranks_[i + 1]) + "x" + std::to_string(ranks_[i]));
    if (ring_ == Ring::Z && !is_integral(d))
      throw std::invalid_argument("Complex: non-integral entry in d^" + std::to_string(lo_ + static_cast<int>(i)) +
                                  " of a Z-complex");
  }
  for (size_t i = 0; i + 1 < ndiff; ++i)
    if (!(diffs_[i + 1] * diffs_[i]).is_zero())
      throw std::invalid_argument("Complex: d^" + std::to_string(lo_ + static_cast<int>(i) + 1) + " o d^" +
                                  std::to_string(lo_ + static_cast<int>(i)) + " != 0");
}

Complex Complex::zero(Ring ring, int lo, int hi) {
  const size_t span = hi >= lo ? static_cast<size_t>(hi - lo + 1) : 0;
  std::vector<RatMatrix> d(span > 0 ? span - 1 : 0, RatMatrix(0, 0));
  return Complex(ring, lo, hi, std::vector<size_t>(span, 0), std::move(d));
}

size_t Complex::rank(int n) const { return in_window(n) ? ranks_[static_cast<size_t>(n - lo_)] : 0; }

RatMatrix Complex::differential(int n) const {
  if (in_window(n) && in_window(n + 1)) return diffs_[static_cast<size_t>(n - lo_)];
  return RatMatrix(rank(n + 1), rank(n));
}

IntMatrix Complex::integral_differential(int n) const { return to_integer(differential(n)); }

Complex Complex::widened(int lo, int hi) const {
  lo = std::min(lo, lo_);
  hi = std::max(hi, hi_);
  if (hi_ < lo_) return zero(ring_, lo, hi);
  std::vector<size_t> ranks;
  std::vector<RatMatrix> diffs;
  for (int n = lo; n <= hi; ++n) {
    ranks.push_back(rank(n));
    if (n < hi) diffs.push_back(differential(n));
  }
  return Complex(ring_, lo, hi, std::move(ranks), std::move(diffs));
}

size_t Complex::total_rank() const {
  size_t t = 0;
  for (auto r : ranks_) t += r;
  return t;
}

bool operator==(const Complex& a, const Complex& b) {
  if (a.ring_ != b.ring_) return false;
  const int lo = std::min(a.lo_, b.lo_), hi = std::max(a.hi_, b.hi_);
  for (int n = lo; n <= hi; ++n) {
    if (a.rank(n) != b.rank(n)) return false;
    if (!(a.differential(n) == b.differential(n))) return false;
  }
  return true;
}

// ---------------------------------------------------------------- ChainMap

ChainMap::ChainMap(Complex source, Complex target, int lo, std::vector<RatMatrix> components)
    : source_(std::move(source)), target_(std::move(target)), lo_(lo), comps_(std::move(components)) {
  if (source_.ring() != target_.ring()) throw std::invalid_argument("ChainMap: mismatched rings");
  for (size_t i = 0; i < comps_.size(); ++i) {
    const int n = lo_ + static_cast<int>(i);
    const auto& f = comps_[i];
    if (f.rows() != target_.rank(n) || f.cols() != source_.rank(n))
      throw std::invalid_argument("ChainMap: component in degree " + std::to_string(n) + " has wrong shape");
    if (source_.ring() == Ring::Z && !is_integral(f))
      throw std::invalid_argument("ChainMap: non-integral component over Z");
  }
  const int lo_all = std::min(source_.lo(), target_.lo()) - 1;
  const int hi_all = std::max(source_.hi(), target_.hi());
  for (int n = lo_all; n <= hi_all; ++n) {
    RatMatrix lhs = component(n + 1) * source_.differential(n);
    RatMatrix rhs = target_.differential(n) * component(n);
    if (!(lhs == rhs))
      throw std::invalid_argument("ChainMap: does not commute with differentials in degree " + std::to_string(n));
  }
}

ChainMap ChainMap::identity(const Complex& c) {
  std::vector<RatMatrix> comps;
  for (int n = c.lo(); n <= c.hi(); ++n) comps.push_back(RatMatrix::identity(c.rank(n)));
  return ChainMap(c, c, c.lo(), std::move(comps));
}

ChainMap ChainMap::zero(const Complex& source, const Complex& target) { return ChainMap(source, target, 0, {}); }

RatMatrix ChainMap::component(int n) const {
  const int i = n - lo_;
  if (i >= 0 && i < static_cast<int>(comps_.size())) return comps_[static_cast<size_t>(i)];
  return RatMatrix(target_.rank(n), source_.rank(n));
}

ChainMap ChainMap::then(const ChainMap& next) const {
  const int lo = std::min(source_.lo(), next.target().lo());
  const int hi = std::max(source_.hi(), next.target().hi());
  std::vector<RatMatrix> comps;
  for (int n = lo; n <= hi; ++n) comps.push_back(next.component(n) * component(n));
  return ChainMap(source_, next.target(), lo, std::move(comps));
}

// ---------------------------------------------------------------- groups

std::string to_string(const FgAbGroup& g) {
  std::vector<std::string> parts;
  const std::string base = g.ring == Ring::Z ? "Z" : "Q";
  if (g.rank == 1) parts.push_back(base);
  if (g.rank > 1) parts.push_back(base + "^" + std::to_string(g.rank));
  for (const auto& t : g.torsion) parts.push_back("Z/" + to_string(t));
  if (g.divisible == 1) parts.push_back("Q/Z");
  if (g.divisible > 1) parts.push_back("(Q/Z)^" + std::to_string(g.divisible));
  if (parts.empty()) return "0";
  std::string s = parts.front();
  for (size_t i = 1; i < parts.size(); ++i) s += " + " + parts[i];
  return s;
}

// ---------------------------------------------------------------- operations

Complex shift(const Complex& c, int k) {
  if (c.hi() < c.lo()) return Complex::zero(c.ring(), c.lo() - k, c.hi() - k);
  const int lo = c.lo() - k, hi = c.hi() - k;
  std::vector<size_t> ranks;
  std::vector<RatMatrix> diffs;
  const bool odd = (k % 2) != 0;
  for (int n = lo; n <= hi; ++n) {
    ranks.push_back(c.rank(n + k));
    if (n < hi) diffs.push_back(odd ? -c.differential(n + k) : c.differential(n + k));
  }
  return Complex(c.ring(), lo, hi, std::move(ranks), std::move(diffs));
}

Complex atom(Ring ring, int k) { return Complex(ring, -k, -k, {1}, {}); }

Complex truncate_above(const Complex& c, int m) {
  if (c.hi() < c.lo()) return c;
  std::vector<size_t> ranks;
  std::vector<RatMatrix> diffs;
  for (int n = c.lo(); n <= c.hi(); ++n) {
    ranks.push_back(n >= m ? c.rank(n) : 0);
    if (n < c.hi()) diffs.push_back(n >= m ? c.differential(n) : RatMatrix(n + 1 >= m ? c.rank(n + 1) : 0, 0));
  }
  return Complex(c.ring(), c.lo(), c.hi(), std::move(ranks), std::move(diffs));
}

Complex truncate_below(const Complex& c, int m) {
  if (c.hi() < c.lo()) return c;
  std::vector<size_t> ranks;
  std::vector<RatMatrix> diffs;
  for (int n = c.lo(); n <= c.hi(); ++n) {
    ranks.push_back(n <= m ? c.rank(n) : 0);
    if (n < c.hi()) diffs.push_back(n + 1 <= m ? c.differential(n) : RatMatrix(0, n <= m ? c.rank(n) : 0));
  }
  return Complex(c.ring(), c.lo(), c.hi(), std::move(ranks), std::move(diffs));
}

Cone cone(const ChainMap& f) {
  const Complex& a = f.source();
  const Complex& b = f.target();
  if (a.ring() != b.ring()) throw std::invalid_argument("cone: mismatched rings");
  const int lo = std::min(b.lo(), a.lo() - 1);
  const int hi = std::max(b.hi(), a.hi() - 1);
  std::vector<size_t> ranks;
  std::vector<RatMatrix> diffs;
  for (int n = lo; n <= hi; ++n) {
    ranks.push_back(b.rank(n) + a.rank(n + 1));
    if (n < hi) {
      // [[d_B, -f], [0, -d_A]] from B^n + A^{n+1} to B^{n+1} + A^{n+2}
      diffs.push_back(block(b.differential(n), RatMatrix(-f.component(n + 1)), RatMatrix(a.rank(n + 2), b.rank(n)),
                            RatMatrix(-a.differential(n + 1))));
    }
  }
  Complex c(a.ring(), lo, hi, std::move(ranks), std::move(diffs));

  std::vector<RatMatrix> inc, proj;
  for (int n = lo; n <= hi; ++n) {
    inc.push_back(vstack(RatMatrix::identity(b.rank(n)), RatMatrix(a.rank(n + 1), b.rank(n))));
    proj.push_back(hstack(RatMatrix(a.rank(n + 1), b.rank(n)), RatMatrix::identity(a.rank(n + 1))));
  }
  ChainMap inclusion(b, c, lo, std::move(inc));
  ChainMap projection(c, shift(a, 1), lo, std::move(proj));
  return Cone{std::move(c), std::move(inclusion), std::move(projection)};
}

Complex fiber(const ChainMap& f) { return shift(cone(f).complex, -1); }

FgAbGroup homology(const Complex& c, int n) {
  FgAbGroup g;
  g.ring = c.ring();
  if (!c.in_window(n) || c.rank(n) == 0) return g;
  if (c.ring() == Ring::Q) {
    g.rank = c.rank(n) - rank(c.differential(n)) - rank(c.differential(n - 1));
    return g;
  }
  auto incoming = invariant_factors(c.integral_differential(n - 1));
  const size_t out_rank = rank(c.integral_differential(n));
  g.rank = c.rank(n) - out_rank - incoming.size();
  for (const auto& t : incoming)
    if (t != 1) g.torsion.push_back(t);
  return g;
}

bool homology_exact_at(const ChainMap& g, const ChainMap& h, int n) {
  const Complex& x = g.source();
  const Complex& y = g.target();
  const Complex& z = h.target();
  const RatMatrix gn = g.component(n), hn = h.component(n);
  const RatMatrix dx = x.differential(n), dy = y.differential(n), dy_in = y.differential(n - 1);
  const RatMatrix dz_in = z.differential(n - 1);
  const bool integral = x.ring() == Ring::Z;

  // Composite vanishes on cocycles of X.
  std::vector<RatVec> x_cocycles;
  if (integral) {
    IntMatrix k = integer_kernel(to_integer(dx));
    for (size_t j = 0; j < k.cols(); ++j) x_cocycles.push_back(to_rationals(k.col(j)));
  } else {
    x_cocycles = nullspace(dx);
  }
  for (const auto& v : x_cocycles) {
    RatVec w = hn * (gn * v);
    if (integral) {
      if (!solve_integer(to_integer(dz_in), to_integers(w))) return false;
    } else if (!solve_rational(dz_in, w)) {
      return false;
    }
  }

  // Kernel of h on cohomology lies in the image of g.
  // Pairs (v, u) with dy v = 0 and h v = dz u.
  RatMatrix pair_system = block(dy, RatMatrix(dy.rows(), dz_in.cols()), hn, RatMatrix(-dz_in));
  std::vector<RatVec> kernel;
  if (integral) {
    IntMatrix k = integer_kernel(to_integer(pair_system));
    for (size_t j = 0; j < k.cols(); ++j) kernel.push_back(to_rationals(k.col(j)));
  } else {
    kernel = nullspace(pair_system);
  }
  // v = g xx + dy_in uu with dx xx = 0
  RatMatrix lift = block(gn, dy_in, dx, RatMatrix(dx.rows(), dy_in.cols()));
  for (const auto& pv : kernel) {
    RatVec v(pv.begin(), pv.begin() + static_cast<long>(y.rank(n)));
    RatVec rhs = v;
    rhs.resize(v.size() + dx.rows());
    if (integral) {
      if (!solve_integer(to_integer(lift), to_integers(rhs))) return false;
    } else if (!solve_rational(lift, rhs)) {
      return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------- IntegralCohomology

IntegralCohomology::IntegralCohomology(const IntMatrix& d_in, const IntMatrix& d_out)
    : dim_(d_out.cols()), d_out_(d_out) {
  if (d_in.rows() != dim_) throw std::invalid_argument("IntegralCohomology: incompatible differentials");
  if (!(d_out * d_in).is_zero()) throw std::invalid_argument("IntegralCohomology: d_out o d_in != 0");
  SmithForm out = smith_normal_form(d_out, true);
  const size_t r = out.rank();
  const size_t k = dim_ - r;
  IntMatrix kernel(dim_, k);
  kernel_left_inverse_ = IntMatrix(k, dim_);
  for (size_t i = 0; i < dim_; ++i)
    for (size_t j = 0; j < k; ++j) {
      kernel(i, j) = out.right(i, r + j);
      kernel_left_inverse_(j, i) = out.right_inv(r + j, i);
    }
  IntMatrix relations = kernel_left_inverse_ * d_in;  // k x dim C^{n-1}
  SmithForm rel = smith_normal_form(relations, true);
  class_left_ = rel.left;
  relation_invariants_ = rel.invariants;
  IntMatrix gen_matrix = kernel * rel.left_inv;
  for (size_t i = 0; i < k; ++i) {
    Integer order = i < rel.rank() ? rel.invariants[i] : Integer(0);
    if (order == 1) continue;
    kept_.push_back(i);
    gens_.push_back(gen_matrix.col(i));
    orders_.push_back(order);
  }
}

FgAbGroup IntegralCohomology::group() const {
  FgAbGroup g;
  for (const auto& o : orders_) {
    if (o == 0)
      ++g.rank;
    else
      g.torsion.push_back(o);
  }
  return g;
}

IntVec IntegralCohomology::coordinates(const IntVec& c) const {
  if (c.size() != dim_) throw std::invalid_argument("IntegralCohomology: cochain has wrong length");
  if (!is_zero(d_out_ * c)) throw std::invalid_argument("IntegralCohomology: cochain is not a cocycle");
  IntVec y = kernel_left_inverse_ * c;
  IntVec z = class_left_ * y;
  IntVec coords;
  for (size_t idx = 0; idx < kept_.size(); ++idx) {
    Integer v = z[kept_[idx]];
    if (orders_[idx] != 0) mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), orders_[idx].get_mpz_t());
    coords.push_back(v);
  }
  return coords;
}

IntVec IntegralCohomology::representative(const IntVec& coords) const {
  if (coords.size() != gens_.size()) throw std::invalid_argument("IntegralCohomology: wrong number of coordinates");
  IntVec c(dim_);
  for (size_t i = 0; i < gens_.size(); ++i)
    if (sgn(coords[i]) != 0) c = c + scaled(gens_[i], coords[i]);
  return c;
}

// ---------------------------------------------------------------- RationalCohomology

RationalCohomology::RationalCohomology(const RatMatrix& d_in, const RatMatrix& d_out) : d_out_(d_out) {
  const size_t dim = d_out.cols();
  if (d_in.rows() != dim) throw std::invalid_argument("RationalCohomology: incompatible differentials");
  Rref in = rref(d_in);
  std::vector<RatVec> cols;
  for (size_t c : in.pivot_cols) cols.push_back(d_in.col(c));
  boundary_count_ = cols.size();
  for (auto& z : nullspace(d_out)) {
    std::vector<RatVec> trial = cols;
    trial.push_back(z);
    if (rank(from_columns(trial, dim)) == trial.size()) {
      cols.push_back(z);
      reps_.push_back(z);
    }
  }
  spanning_ = from_columns(cols, dim);
}

RatVec RationalCohomology::coordinates(const RatVec& z) const {
  if (!is_zero(d_out_ * z)) throw std::invalid_argument("RationalCohomology: cochain is not a cocycle");
  auto sol = solve_rational(spanning_, z);
  if (!sol) throw std::logic_error("RationalCohomology: cocycle outside span");
  return RatVec(sol->begin() + static_cast<long>(boundary_count_), sol->end());
}

}  // namespace dcoh
