#pragma once

// Random generators shared by the unit tests and the acceptance run.

#include "dcoh/complex.hpp"
#include "dcoh/linalg.hpp"
#include "dcoh/tot.hpp"
#include "oracle.hpp"

namespace gen {

using namespace dcoh;

inline IntMatrix random_unimodular(size_t n) {
  IntMatrix u = IntMatrix::identity(n);
  for (int step = 0; step < 12 && n > 1; ++step) {
    const size_t i = static_cast<size_t>(oracle::small_int(0, static_cast<long>(n) - 1));
    size_t j = static_cast<size_t>(oracle::small_int(0, static_cast<long>(n) - 2));
    if (j >= i) ++j;
    const long f = oracle::small_int(-2, 2);
    for (size_t c = 0; c < n; ++c) u(i, c) += f * u(j, c);
  }
  return u;
}

// Random complex Z^a -> Z^b -> Z^c with d1 d0 = 0.
inline Complex random_complex() {
  const size_t a = static_cast<size_t>(oracle::small_int(1, 3));
  const size_t b = static_cast<size_t>(oracle::small_int(2, 4));
  const size_t c = static_cast<size_t>(oracle::small_int(1, 3));
  // d1 = [M | 0] on a split Z^b = Z^k + Z^{b-k}, d0 lands in the second summand.
  const size_t k = static_cast<size_t>(oracle::small_int(0, static_cast<long>(b) - 1));
  RatMatrix d0(b, a), d1(c, b);
  for (size_t i = k; i < b; ++i)
    for (size_t j = 0; j < a; ++j) d0(i, j) = oracle::small_int(-3, 3);
  for (size_t i = 0; i < c; ++i)
    for (size_t j = 0; j < k; ++j) d1(i, j) = oracle::small_int(-3, 3);
  IntMatrix u = random_unimodular(b);
  // Conjugate the middle basis; u^{-1} is obtained from the Smith transforms of u itself.
  SmithForm s = smith_normal_form(u);
  IntMatrix u_inv = s.right * s.left;
  return Complex(Ring::Z, -1, 1, {a, b, c}, {to_rational(u) * d0, d1 * to_rational(u_inv)});
}

inline ChainMap random_map(const Complex& src, const Complex& tgt) {
  // f = h d + d h for a random integral homotopy h keeps f a chain map.
  std::vector<RatMatrix> comps;
  const int lo = std::min(src.lo(), tgt.lo()), hi = std::max(src.hi(), tgt.hi());
  std::vector<RatMatrix> h;  // h^n : src^n -> tgt^{n-1}
  for (int n = lo; n <= hi + 1; ++n) {
    RatMatrix m(tgt.rank(n - 1), src.rank(n));
    for (size_t i = 0; i < m.rows(); ++i)
      for (size_t j = 0; j < m.cols(); ++j) m(i, j) = oracle::small_int(-2, 2);
    h.push_back(m);
  }
  for (int n = lo; n <= hi; ++n) {
    const RatMatrix& hn = h[static_cast<size_t>(n - lo)];
    const RatMatrix& hn1 = h[static_cast<size_t>(n + 1 - lo)];
    comps.push_back(tgt.differential(n - 1) * hn + hn1 * src.differential(n));
  }
  return ChainMap(src, tgt, lo, std::move(comps));
}

// Cech object of a random subfamily of vertex stars of a strip of three triangles.
inline CosimplicialTrunc random_cosimplicial(int N) {
  const CellComplex k = simplicial_from_facets({{0, 1, 2}, {1, 2, 3}, {2, 3, 4}});
  std::vector<CellSet> cover;
  for (size_t v = 0; v < k.count(0); ++v)
    if (oracle::small_int(0, 1) == 1 || cover.empty()) cover.push_back(closed_star(k, v));
  return cech_double(k, cover, Ring::Z, N);
}

}  // namespace gen
