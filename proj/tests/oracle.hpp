#pragma once

// Reference computations used as test oracles. They deliberately avoid the
// library's Smith normal form and rational elimination: ranks are taken modulo
// primes with machine integers, and torsion is read off from rank drops.

#include "dcoh/cells.hpp"
#include "dcoh/matrix.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace oracle {

inline std::string data(const std::string& name) { return std::string(DCOH_DATA_DIR) + "/" + name + ".json"; }

inline int64_t mod(const mpz_class& x, int64_t p) {
  mpz_class r = x % p;
  if (r < 0) r += p;
  return r.get_si();
}

inline int64_t power_mod(int64_t a, int64_t e, int64_t p) {
  int64_t r = 1;
  a %= p;
  while (e > 0) {
    if (e & 1) r = static_cast<int64_t>((__int128)r * a % p);
    a = static_cast<int64_t>((__int128)a * a % p);
    e >>= 1;
  }
  return r;
}

/// Rank over F_p by plain Gaussian elimination.
inline size_t rank_mod(const dcoh::IntMatrix& m, int64_t p) {
  const size_t rows = m.rows(), cols = m.cols();
  std::vector<std::vector<int64_t>> a(rows, std::vector<int64_t>(cols));
  for (size_t i = 0; i < rows; ++i)
    for (size_t j = 0; j < cols; ++j) a[i][j] = mod(m(i, j), p);
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t piv = r;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[r]);
    const int64_t inv = power_mod(a[r][c], p - 2, p);
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      const int64_t f = static_cast<int64_t>((__int128)a[i][c] * inv % p);
      for (size_t j = c; j < cols; ++j) a[i][j] = static_cast<int64_t>(((__int128)a[i][j] - (__int128)f * a[r][j] % p + p) % p);
    }
    ++r;
  }
  return r;
}

/// Rational rank, taken as the rank modulo two large primes (equal for the small
/// integer matrices used in tests).
inline size_t rank_q(const dcoh::IntMatrix& m) {
  return std::max(rank_mod(m, 1000000007LL), rank_mod(m, 998244353LL));
}

inline dcoh::IntMatrix integral(const dcoh::RatMatrix& m) { return dcoh::to_integer(m); }

struct Homology {
  size_t free_rank = 0;
  std::vector<long> torsion_primes;  // one entry per cyclic p-summand, assuming square-free orders
};

/// H = ker(d_out) / im(d_in) with d_in : C^{n-1} -> C^n and d_out : C^n -> C^{n+1}.
inline Homology homology(const dcoh::IntMatrix& d_in, const dcoh::IntMatrix& d_out, size_t dim) {
  Homology h;
  const size_t rin = rank_q(d_in);
  h.free_rank = dim - rank_q(d_out) - rin;
  for (long p : {2L, 3L, 5L, 7L, 11L, 13L}) {
    const size_t rp = rank_mod(d_in, p);
    for (size_t k = rp; k < rin; ++k) h.torsion_primes.push_back(p);
  }
  return h;
}

inline std::mt19937_64& rng() {
  static std::mt19937_64 g(0);
  return g;
}
inline long small_int(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng()); }
inline mpq_class small_rational() {
  mpq_class q(small_int(-9, 9), small_int(1, 6));
  q.canonicalize();
  return q;
}
inline dcoh::RatVec random_rationals(size_t n) {
  dcoh::RatVec v(n);
  for (auto& x : v) x = small_rational();
  return v;
}
inline dcoh::IntVec random_integers(size_t n, long bound = 5) {
  dcoh::IntVec v(n);
  for (auto& x : v) x = small_int(-bound, bound);
  return v;
}

// Fundamental 2-cycle of a closed oriented surface: the +-1 combination of
// triangles with zero boundary, found by propagating orientations across edges.
inline dcoh::IntVec fundamental_cycle(const dcoh::CellComplex& k) {
  const dcoh::IntMatrix b = k.boundary_matrix(2);
  dcoh::IntVec z(k.count(2));
  z[0] = 1;
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t e = 0; e < b.rows(); ++e) {
      long known = -1, unknown = -1;
      for (size_t f = 0; f < b.cols(); ++f) {
        if (b(e, f) == 0) continue;
        if (z[f] != 0)
          known = static_cast<long>(f);
        else
          unknown = static_cast<long>(f);
      }
      if (known >= 0 && unknown >= 0) {
        z[unknown] = -z[known] * b(e, known) * b(e, unknown);
        changed = true;
      }
    }
  }
  return z;
}

}  // namespace oracle
