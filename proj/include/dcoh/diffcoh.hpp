#pragma once

#include "dcoh/cells.hpp"
#include "dcoh/complex.hpp"

#include <optional>
#include <random>
#include <string>
#include <vector>

namespace dcoh {

/// Differential cochain (c, h, omega) of degree n for truncation m on a cell complex:
/// c integral n-cochain, h rational (n-1)-cochain, omega rational n-cochain that is
/// zero when n < m. The host complex is passed alongside.
struct DiffCochain {
  int m = 1;
  int n = 0;
  IntVec c;
  RatVec h;
  RatVec omega;

  friend bool operator==(const DiffCochain& a, const DiffCochain& b) {
    return a.m == b.m && a.n == b.n && a.c == b.c && a.h == b.h && a.omega == b.omega;
  }
};

/// Checks lengths against K and the truncation condition; throws std::invalid_argument.
void validate(const CellComplex& k, const DiffCochain& x);
DiffCochain zero_cochain(const CellComplex& k, int m, int n);
DiffCochain operator+(const DiffCochain& a, const DiffCochain& b);
DiffCochain operator-(const DiffCochain& a, const DiffCochain& b);

/// dhat(c, h, omega) = (dc, omega - c - dh, d omega).
DiffCochain dhat(const CellComplex& k, const DiffCochain& x);
bool is_cocycle(const CellComplex& k, const DiffCochain& x);

/// R(x) = omega; throws std::invalid_argument unless x is a cocycle.
RatVec curvature_R(const CellComplex& k, const DiffCochain& x);
/// I(x) = class of c, as coordinates in the generators of IntegralCohomology of degree n.
IntVec underlying_I(const CellComplex& k, const DiffCochain& x);
/// a(alpha) = (0, alpha, d alpha) in degree n = deg(alpha) + 1 (default n = m).
DiffCochain forms_a(const CellComplex& k, int m, const RatVec& alpha, int n = -1);

/// Some w with x - y = dhat(w), w integral in c and with omega zero below m; nullopt if none.
std::optional<DiffCochain> equal_classes(const CellComplex& k, const DiffCochain& x, const DiffCochain& y);

/// Flat part of a curvature-free cocycle: the rational (n-1)-cochain h, read mod Z and
/// mod coboundaries as an element of H^{n-1}(K; Q/Z). nullopt when R(x) != 0.
std::optional<RatVec> flat_part(const CellComplex& k, const DiffCochain& x);
/// Inclusion of flat classes: u -> (-du, u, 0); inverse of flat_part on classes.
DiffCochain flat_inclusion(const CellComplex& k, int m, const RatVec& u);

/// H^j(K; Q/Z): rational j-cochains u with du integral, modulo Z-valued cochains and
/// rational coboundaries. As a group it is (Q/Z)^{b_j} + torsion of H^{j+1}(K; Z).
class QZCohomology {
 public:
  QZCohomology(const CellComplex& k, int j);
  int degree() const { return j_; }
  FgAbGroup group() const;
  bool is_element(const RatVec& u) const;
  bool equal(const RatVec& u, const RatVec& v) const;
  /// Bockstein H^j(Q/Z) -> H^{j+1}(Z): class of -du, in IntegralCohomology coordinates.
  IntVec bockstein(const RatVec& u) const;
  /// Random element: rational combination of rational classes plus lifts of torsion, plus noise.
  RatVec sample(std::mt19937_64& rng) const;
  /// Lift of a torsion class of H^{j+1}(Z) (given by coordinates) along the Bockstein.
  RatVec torsion_lift(const IntVec& coords) const;

 private:
  const CellComplex* k_;
  int j_;
  IntMatrix d_prev_, d_;
  IntegralCohomology above_;
  size_t betti_;
  std::vector<RatVec> rational_basis_;
};

/// Random dhat-cocycle of degree n: c an integral cocycle, h random, omega = c + dh.
DiffCochain random_cocycle(const CellComplex& k, int m, int n, std::mt19937_64& rng);
Rational random_rational(std::mt19937_64& rng, long num_bound = 9, long den_bound = 6);
RatVec random_cochain(std::mt19937_64& rng, size_t size);
IntVec random_integral(std::mt19937_64& rng, size_t size, long bound = 4);

// ---------------------------------------------------------------- reports

struct CheckResult {
  std::string name;
  bool pass = true;
  size_t checked = 0;
  std::string detail;
};

struct Report {
  std::string title;
  std::vector<CheckResult> checks;
  std::vector<std::pair<std::string, std::string>> facts;  // informational key/value data
  bool all_pass() const;
  CheckResult& add(const std::string& name);
};

/// Node groups and structure maps of the differential cohomology hexagon in degree m.
struct HexagonData {
  int m = 1;
  size_t forms_dim = 0;        // A = C^{m-1}(Q) / d C^{m-2}(Q)
  size_t closed_dim = 0;       // Z = closed m-cochains
  FgAbGroup hq_prev, hq;       // H^{m-1}(Q), H^m(Q)
  FgAbGroup qz_prev;           // H^{m-1}(Q/Z)
  FgAbGroup hz;                // H^m(Z)
  RatMatrix characteristic;    // H^m(Z) -> H^m(Q) in generator coordinates
};
HexagonData hexagon(const CellComplex& k, int m);

/// Constructive exactness verification on `samples` random elements per check.
Report hexagon_exactness(const CellComplex& k, int m, size_t samples, uint64_t seed);

/// Checks end1^* x - end0^* x - a(pi_! omega) = dhat(w) with the witness found by the
/// solver, and that the explicit witness (pi_! c, -pi_! h, 0) also verifies. Throws
/// std::invalid_argument on a non-cocycle.
bool homotopy_formula_check(const Prism& p, const DiffCochain& x);
/// Same on `samples` random cocycles, plus the strict identity on proj^* images.
Report homotopy_formula_suite(const CellComplex& k, int m, size_t samples, uint64_t seed);

/// Pullback of a differential cochain along a cellular map.
DiffCochain pullback(const CellularMap& f, const DiffCochain& x);

/// (pi_! c, -pi_! h, 0): the explicit primitive of end1^* x - end0^* x - a(pi_! omega).
DiffCochain homotopy_witness(const Prism& p, const DiffCochain& x);

/// x - proj^* s^* x, which vanishes on the base section s.
DiffCochain reduce_to_base(const CircleProduct& c, const DiffCochain& x);
/// (pi_! c, -pi_! h, pi_! omega) with truncation m-1 and degree n-1. Requires m >= 2 and
/// x vanishing on the base section.
DiffCochain s1_integrate(const CircleProduct& c, const DiffCochain& x);
Report s1_integrate_suite(const CellComplex& k, int m, size_t samples, uint64_t seed);

Report pullback_classification_check(const CellComplex& k, int m, size_t samples, uint64_t seed);

}  // namespace dcoh
