#pragma once

#include "dcoh/forms.hpp"

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace dcoh {

/// A = sum_mu A_mu dx^mu on a coordinate box, A_mu an r x r matrix of complex expressions.
struct SmoothConnection {
  size_t rank = 1;
  std::vector<std::string> coords;
  std::vector<std::pair<double, double>> domain;  // per coordinate
  std::vector<CMatrix> a;                         // per coordinate

  void validate() const;
  int coord_index(const std::string& name) const;  // -1 if absent
  bool contains(const std::vector<double>& x) const;
  /// A as a matrix-valued 1-form.
  MatForm as_form() const;
  /// A_mu at x.
  Eigen::MatrixXcd value(size_t mu, const std::vector<double>& x) const;
};

/// Rank r trivial connection on the given box.
SmoothConnection trivial_connection(size_t rank, std::vector<std::string> coords,
                                    std::vector<std::pair<double, double>> domain);
/// Block-diagonal sum of two connections on the same coordinates.
SmoothConnection direct_sum(const SmoothConnection& a, const SmoothConnection& b);

/// F = dA + A ^ A.
MatForm curvature(const SmoothConnection& conn);

/// Largest relative error between the symbolic curvature and central finite
/// differences of A at `probes` random points of the domain.
struct CurvatureProbe {
  double max_rel_error = 0;
  size_t probes = 0;
  bool pass = false;
};
CurvatureProbe curvature_fd_check(const SmoothConnection& conn, size_t probes = 20, uint64_t seed = 0);

/// Tr exp(bF) expanded up to the top nonzero power: term k = b^k Tr(F^k)/k!.
BGradedForm chern_character_form(const SmoothConnection& conn);
/// Largest modulus of d(ch) over `samples` random points (symbolic d, numeric evaluation).
double closedness_residual(const BGradedForm& ch, const SmoothConnection& conn, size_t samples = 20,
                           uint64_t seed = 0);

/// Fiber integral over u in [0,1] of the du-components of ch(path), a b-graded form
/// on the remaining coordinates, tabulated on a sample grid of the base box.
struct Transgression {
  std::vector<std::string> base_coords;
  std::vector<std::vector<double>> points;
  struct Term {
    int k = 0;
    FormIndex index;  // in base coordinates
    std::vector<std::complex<double>> values;  // per sample point
  };
  std::vector<Term> terms;
  int steps = 0;
  double sup_norm = 0;
  double change_on_doubling = 0;
  bool converged = false;
};
Transgression transgress_ch(const SmoothConnection& path, int steps, const std::string& fiber = "u",
                            size_t grid = 4);
/// Same integral of the du-components at one base point.
std::vector<Transgression::Term> transgression_at(const SmoothConnection& path, const std::vector<double>& base,
                                                  int steps, const std::string& fiber = "u");

/// Gauss-Legendre nodes and weights on [0, 1].
std::vector<std::pair<double, double>> gauss_legendre01(int n);

/// Loop u in [0,1] -> coordinates. A coordinate with a nonzero period lives on a
/// circle, so its endpoints only have to agree modulo the period.
struct Loop {
  std::vector<std::string> coords;
  std::vector<Expr> x;
  std::vector<double> periods;  // empty, or one per coordinate (0 = not periodic)
  double tolerance = 1e-9;
  void validate() const;
};

/// Parallel transport dU/du = -A(x'(u)) U, U(0) = 1, by classic RK4 with `steps` steps.
Eigen::MatrixXcd holonomy(const SmoothConnection& conn, const Loop& loop, int steps = 4096);
std::complex<double> bch_zero(const SmoothConnection& conn, const Loop& loop, int steps = 4096);
/// |tr hol(steps) - tr hol(2 steps)|.
double holonomy_consistency(const SmoothConnection& conn, const Loop& loop, int steps = 4096);

}  // namespace dcoh
