#pragma once

#include "dcoh/linalg.hpp"
#include "dcoh/matrix.hpp"

#include <string>
#include <vector>

namespace dcoh {

enum class Ring { Z, Q };

std::string to_string(Ring r);
Ring parse_ring(const std::string& s);

/// Bounded cochain complex of finite free modules, cohomologically graded.
/// Components live in the window [lo, hi]; d^n maps degree n to degree n + 1
/// and is stored as a rank(n+1) x rank(n) matrix. Everything outside the window
/// is zero. Construction checks shapes, integrality over Z and d o d = 0.
class Complex {
 public:
  Complex() = default;
  Complex(Ring ring, int lo, int hi, std::vector<size_t> ranks, std::vector<RatMatrix> differentials);

  static Complex zero(Ring ring, int lo = 0, int hi = -1);

  Ring ring() const { return ring_; }
  int lo() const { return lo_; }
  int hi() const { return hi_; }
  bool in_window(int n) const { return n >= lo_ && n <= hi_; }

  size_t rank(int n) const;
  /// d^n : degree n -> degree n + 1 (correctly shaped zero matrix outside the window).
  RatMatrix differential(int n) const;
  IntMatrix integral_differential(int n) const;

  /// Same complex on a larger window (zero components added).
  Complex widened(int lo, int hi) const;

  size_t total_rank() const;

  friend bool operator==(const Complex& a, const Complex& b);

 private:
  Ring ring_ = Ring::Z;
  int lo_ = 0;
  int hi_ = -1;
  std::vector<size_t> ranks_;
  std::vector<RatMatrix> diffs_;
};

/// Degreewise matrices f^n : source^n -> target^n commuting with differentials.
class ChainMap {
 public:
  ChainMap() = default;
  /// `components[i]` is f^{lo + i}; degrees outside the supplied range are zero.
  ChainMap(Complex source, Complex target, int lo, std::vector<RatMatrix> components);

  static ChainMap identity(const Complex& c);
  static ChainMap zero(const Complex& source, const Complex& target);

  const Complex& source() const { return source_; }
  const Complex& target() const { return target_; }
  RatMatrix component(int n) const;

  ChainMap then(const ChainMap& next) const;  // next o this

 private:
  Complex source_, target_;
  int lo_ = 0;
  std::vector<RatMatrix> comps_;
};

/// Finitely generated abelian group in canonical form: Z^rank + (+)Z/t_i with
/// t_1 | t_2 | ..., plus `divisible` copies of Q/Z for Q/Z-coefficient groups.
/// For ring Q only `rank` (the dimension) is meaningful.
struct FgAbGroup {
  Ring ring = Ring::Z;
  size_t rank = 0;
  std::vector<Integer> torsion;
  size_t divisible = 0;

  bool is_zero() const { return rank == 0 && torsion.empty() && divisible == 0; }
  friend bool operator==(const FgAbGroup& a, const FgAbGroup& b) {
    return a.ring == b.ring && a.rank == b.rank && a.torsion == b.torsion && a.divisible == b.divisible;
  }
};
std::string to_string(const FgAbGroup& g);

Complex shift(const Complex& c, int k);
/// Ring in degree -k, zero elsewhere.
Complex atom(Ring ring, int k);
/// sigma^{>=m}: components below degree m discarded.
Complex truncate_above(const Complex& c, int m);
/// sigma^{<=m}: components above degree m discarded.
Complex truncate_below(const Complex& c, int m);

struct Cone {
  Complex complex;        // Cone(f)^n = B^n (+) A^{n+1}
  ChainMap inclusion;     // B -> Cone(f)
  ChainMap projection;    // Cone(f) -> A[1]
};
/// d(b, a) = (db - f(a), -da).
Cone cone(const ChainMap& f);
/// shift(cone(f), -1).
Complex fiber(const ChainMap& f);

FgAbGroup homology(const Complex& c, int n);

/// Exactness of H^n(X) -> H^n(Y) -> H^n(Z) induced by g : X -> Y and h : Y -> Z,
/// verified constructively over the ring of the complexes.
bool homology_exact_at(const ChainMap& g, const ChainMap& h, int n);

/// Integral cohomology ker(d_out) / im(d_in) with explicit generators and
/// class coordinates.
class IntegralCohomology {
 public:
  IntegralCohomology(const IntMatrix& d_in, const IntMatrix& d_out);

  FgAbGroup group() const;
  /// Cocycle representatives; generator i has order orders()[i] (0 = infinite).
  const std::vector<IntVec>& generators() const { return gens_; }
  const std::vector<Integer>& orders() const { return orders_; }
  /// Coordinates in the generator basis, torsion entries reduced to [0, order).
  /// Throws std::invalid_argument if c is not a cocycle.
  IntVec coordinates(const IntVec& c) const;
  bool same_class(const IntVec& a, const IntVec& b) const { return coordinates(a) == coordinates(b); }
  IntVec representative(const IntVec& coords) const;
  size_t cochain_dim() const { return dim_; }

 private:
  size_t dim_ = 0;
  IntMatrix d_out_;
  IntMatrix kernel_left_inverse_;  // k x dim
  IntMatrix class_left_;           // P of the SNF of the relation matrix
  std::vector<Integer> relation_invariants_;
  std::vector<size_t> kept_;       // indices of non-unit invariants/free coordinates
  std::vector<IntVec> gens_;
  std::vector<Integer> orders_;
};

/// Rational cohomology with a chosen basis of cocycle representatives.
class RationalCohomology {
 public:
  RationalCohomology(const RatMatrix& d_in, const RatMatrix& d_out);
  size_t dimension() const { return reps_.size(); }
  const std::vector<RatVec>& basis() const { return reps_; }
  /// Coordinates of the class of a cocycle z in basis(); throws if z is not a cocycle.
  RatVec coordinates(const RatVec& z) const;

 private:
  RatMatrix d_out_;
  RatMatrix spanning_;  // [coboundary basis | reps]
  size_t boundary_count_ = 0;
  std::vector<RatVec> reps_;
};

}  // namespace dcoh
