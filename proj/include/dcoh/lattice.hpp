#pragma once

#include "dcoh/connection.hpp"
#include "dcoh/diffcoh.hpp"

#include <array>
#include <optional>
#include <random>

namespace dcoh {

/// U(1) bundle with connection on a closed oriented surface: integral 2-cocycle n and
/// rational 1-cochain a, in units where integral periods are integers.
struct LatticeLineBundle {
  CellComplex k;
  IntVec n;
  RatVec a;
  /// Throws std::invalid_argument unless K is 2-dimensional, lengths match and dn = 0.
  void validate() const;
};

/// (c, h, omega) = (n, a, da + n) with m = n = 2.
DiffCochain lattice_class(const LatticeLineBundle& l);
/// a -> a + d lambda + mu, n -> n - d mu.
LatticeLineBundle gauge_transform(const LatticeLineBundle& l, const RatVec& lambda, const IntVec& mu);

/// chi(z) = a(z) mod 1, in [0, 1); z must be an integral 1-cycle.
Rational differential_character(const LatticeLineBundle& l, const IntVec& z);
/// chi(dw) == <da + n, w> mod 1 for an integral 2-chain w.
bool cs_property_check(const LatticeLineBundle& l, const IntVec& w);

/// Integral homology generators in degree d: cycles with their orders (0 = free).
struct CycleBasis {
  std::vector<IntVec> cycles;
  std::vector<Integer> orders;
};
CycleBasis homology_cycles(const CellComplex& k, int d);
/// Integral d-cocycle pairing to 1 with the free cycle `which` and to 0 with the other
/// free cycles of the basis.
IntVec dual_cocycle(const CellComplex& k, int d, const CycleBasis& basis, size_t which);

/// Charge-d monopole: n = d times the generator of H^2(K; Z), a = 0. Its total curvature
/// is d for the orientation in which the generator integrates to 1.
LatticeLineBundle monopole(const CellComplex& k, long charge);
/// Flat bundle n = 0, a = sum theta_i times the cocycle dual to the i-th free 1-cycle.
LatticeLineBundle wilson_lines(const CellComplex& k, const std::vector<Rational>& theta);
LatticeLineBundle random_bundle(const CellComplex& k, std::mt19937_64& rng);

/// Placement of the cells of a surface complex in the coordinate plane of a connection:
/// every edge and triangle gets coordinates for its vertices in sorted vertex order.
/// Cells may be placed in different translates when the connection is periodic.
struct SurfaceChart {
  std::vector<std::array<std::vector<double>, 2>> edges;  // indexed like the 1-cells
  std::vector<std::array<std::vector<double>, 3>> faces;  // indexed like the 2-cells
};

/// Edge and face integrals of a rank-1 connection (A real, 2pi-normalized) and the
/// lattice bundle they define: a(e) = integral of A, n(f) = integral of F - (da)(f),
/// which must be an integer.
struct Discretization {
  std::vector<double> edge_integrals;
  std::vector<double> face_integrals;
  IntVec n;
  double max_residual = 0;  // distance of n(f) from the nearest integer
  bool converged = false;
};
Discretization discretize(const SmoothConnection& conn, const CellComplex& k, const SurfaceChart& chart,
                          int steps = 16);

struct CycleMapReport {
  bool equal = false;
  bool converged = false;
  std::string detail;
  std::optional<DiffCochain> witness;
  double max_lift_error = 0;  // largest distance between a numeric value and its rational lift
};

/// Checks class(nabla_1) - class(nabla_0) = a(discretized transgression) for a rank-1 path
/// over (fiber, chart coordinates). Numeric differences are lifted to the nearest rational
/// with denominator at most 10^6 before the exact comparison. Throws std::invalid_argument
/// when the two ends have different underlying classes.
CycleMapReport cycle_map_homotopy_check(const SmoothConnection& path, const CellComplex& k, const SurfaceChart& chart,
                                        int steps = 16, const std::string& fiber = "u");
/// The exact core: class(l1) - class(l0) against a(tau).
CycleMapReport cycle_map_homotopy_check(const LatticeLineBundle& l0, const LatticeLineBundle& l1, const RatVec& tau);

/// Chart of the 7-vertex torus {i, i+1, i+3}, {i, i+2, i+3} (mod 7) in the unit-periodic
/// plane: the lattice point (x, y) carries label x + 3y mod 7 and is placed at
/// ((x + 3y)/7, (y - 2x)/7).
SurfaceChart csaszar_torus_chart(const CellComplex& k);

}  // namespace dcoh
