#pragma once

#include "dcoh/cells.hpp"
#include "dcoh/complex.hpp"

#include <vector>

namespace dcoh {

/// Cosimplicial complex truncated at level N = levels.size() - 1.
/// cofaces[q][i] : A[q] -> A[q+1] for 0 <= i <= q+1 and q < N.
/// Semi-cosimplicial data suffice (no codegeneracies are used).
struct CosimplicialTrunc {
  std::vector<Complex> levels;
  std::vector<std::vector<ChainMap>> cofaces;

  int N() const { return static_cast<int>(levels.size()) - 1; }
  /// Checks shapes and d_j d_i = d_i d_{j-1} for i < j; throws std::invalid_argument.
  void validate() const;
};

/// Simplicial complex truncated at level N. faces[q][i] : A[q+1] -> A[q] for 0 <= i <= q+1.
struct SimplicialTrunc {
  std::vector<Complex> levels;
  std::vector<std::vector<ChainMap>> faces;

  int N() const { return static_cast<int>(levels.size()) - 1; }
  /// Checks d_i d_j = d_{j-1} d_i for i < j; throws std::invalid_argument.
  void validate() const;
};

/// Thrown when the truncation level cannot determine the requested window.
class InsufficientLevel : public std::invalid_argument {
 public:
  InsufficientLevel(const std::string& what, int required)
      : std::invalid_argument(what), required_(required) {}
  int required() const { return required_; }

 private:
  int required_;
};

/// Smallest N for which tot_cosimplicial is exact on [lo, hi].
int required_level_cosimplicial(const CosimplicialTrunc& a, int lo, int hi);

/// tot^n = (+)_{p+q=n, q<=N} A[q]^p with d x = (-1)^q d^A x + sum_{i=0}^{q+1} (-1)^i d_i x.
/// The result lives on [lo-1, hi+1]; its cohomology is meaningful on [lo, hi].
Complex tot_cosimplicial(const CosimplicialTrunc& a, int lo, int hi);

/// tot^n = (+)_{p-q=n, q<=N} A[q]^p with d x = (-1)^q d^A x + sum_{i=0}^{q} (-1)^i d_i x.
/// Levels q <= N form a subcomplex of the full total complex. Requires N >= hi - lo + 2.
Complex tot_simplicial(const SimplicialTrunc& a, int lo, int hi);

/// Constant objects with identity structure maps.
CosimplicialTrunc constant_cosimplicial(const Complex& c, int N);
SimplicialTrunc constant_simplicial(const Complex& c, int N);

// ---------------------------------------------------------------- Cech descent

/// One closed vertex star per vertex of a simplicial complex.
std::vector<CellSet> star_cover(const CellComplex& k);
/// The trivial cover {K}.
std::vector<CellSet> whole_cover(const CellComplex& k);

/// Alternating Cech object: level q is the product of cochain complexes of the
/// nonempty intersections U_{i_0} cap ... cap U_{i_q} with i_0 < ... < i_q, cofaces are
/// restrictions. Levels past the last nonempty intersection are zero up to N.
CosimplicialTrunc cech_double(const CellComplex& k, const std::vector<CellSet>& cover, Ring ring, int N);

struct DescentDegree {
  int degree = 0;
  FgAbGroup direct, cech;
  bool match = false;
};
struct DescentReport {
  Ring ring = Ring::Z;
  int level = 0;
  std::vector<DescentDegree> degrees;
  bool all_match() const;
};
/// Compares H^n(C^*(K)) with H^n(tot of the Cech object) on [lo, hi].
DescentReport descent_check(const CellComplex& k, const std::vector<CellSet>& cover, Ring ring, int lo, int hi);

// ---------------------------------------------------------------- homotopification at a point

/// q -> sigma^{>=m} C^*(Delta^q; Q) for q = 0..N, faces restricting along coface inclusions.
SimplicialTrunc point_simplicial_object(int m, int N);

struct PointDegree {
  int degree = 0;
  FgAbGroup group;
  bool stable = false;  // unchanged between levels N-1 and N
};
struct PointReport {
  int m = 0, N = 0;
  std::vector<PointDegree> degrees;
};
/// Requires m >= 1 and N >= 2 (hi - lo) + 2.
PointReport underlying_at_point(int m, int N, int lo, int hi);

}  // namespace dcoh
