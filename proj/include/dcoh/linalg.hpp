#pragma once

#include "dcoh/matrix.hpp"

#include <optional>
#include <vector>

namespace dcoh {

/// Smith normal form D = left * A * right with unimodular left/right.
/// `invariants` holds the nonzero diagonal entries d_1 | d_2 | ... (all positive);
/// its size is the rank of A.
struct SmithForm {
  std::vector<Integer> invariants;
  IntMatrix left, left_inv, right, right_inv;  // empty unless transforms were requested
  size_t rank() const { return invariants.size(); }
};

/// Pivots on the entry of smallest absolute value; deterministic.
SmithForm smith_normal_form(const IntMatrix& a, bool with_transforms = true);

/// Invariant factors only; cheaper path used by homology.
std::vector<Integer> invariant_factors(const IntMatrix& a);

// Rational linear algebra (Gaussian elimination).

struct Rref {
  RatMatrix reduced;
  std::vector<size_t> pivot_cols;
};
Rref rref(const RatMatrix& a);
size_t rank(const RatMatrix& a);
size_t rank(const IntMatrix& a);
/// Basis of {x : a x = 0}.
std::vector<RatVec> nullspace(const RatMatrix& a);
/// Some x with a x = b, or nullopt.
std::optional<RatVec> solve_rational(const RatMatrix& a, const RatVec& b);

// Integer linear algebra via Smith normal form.

/// Lattice basis of {x in Z^n : a x = 0}; columns of the returned matrix.
IntMatrix integer_kernel(const IntMatrix& a);
/// Some x in Z^n with a x = b, or nullopt.
std::optional<IntVec> solve_integer(const IntMatrix& a, const IntVec& b);

/// Solution of a mixed system A_int x + A_rat y = b with x integral and y rational.
struct MixedSolution {
  IntVec integral;
  RatVec rational;
};

/// Solves A_int x + A_rat y = b, x in Z^p, y in Q^q. Returns nullopt when no solution
/// exists; a returned solution has been verified by exact substitution. Both matrices
/// must have b.size() rows (throws std::invalid_argument otherwise).
std::optional<MixedSolution> mixed_solve(const IntMatrix& a_int, const RatMatrix& a_rat, const RatVec& b);

}  // namespace dcoh
