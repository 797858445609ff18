#pragma once

#include "dcoh/complex.hpp"

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace dcoh {

/// One cell: its boundary as (index among cells of dimension d-1, incidence).
/// Simplicial cells also record their sorted vertex indices.
struct Cell {
  std::string label;
  std::vector<std::pair<size_t, int>> boundary;
  std::vector<int> vertices;
};

/// Finite regular cell complex with integer incidences, cells grouped by dimension.
/// Invariant: the boundary of a d-cell references (d-1)-cells only and the
/// boundary operator squares to zero.
class CellComplex {
 public:
  CellComplex() = default;
  explicit CellComplex(std::vector<std::vector<Cell>> cells_by_dim);

  int dim() const { return static_cast<int>(cells_.size()) - 1; }
  size_t count(int d) const;
  const Cell& cell(int d, size_t i) const { return cells_.at(static_cast<size_t>(d)).at(i); }
  const std::vector<std::vector<Cell>>& cells() const { return cells_; }

  /// Boundary matrix of d-cells: count(d-1) x count(d).
  IntMatrix boundary_matrix(int d) const;
  /// Coboundary delta^p : C^p -> C^{p+1}, the transpose of the boundary of (p+1)-cells.
  IntMatrix coboundary(int p) const;
  int euler_characteristic() const;
  bool is_simplicial() const;

 private:
  std::vector<std::vector<Cell>> cells_;
};

/// All faces of the given facets, oriented by the global vertex order; duplicate
/// facets collapse. Vertex ids are arbitrary integers.
CellComplex simplicial_from_facets(const std::vector<std::vector<int>>& facets);

/// Cochain complex over `ring` in degrees 0..dim K with d = transpose of the boundary.
Complex cochain_complex(const CellComplex& k, Ring ring);

/// A cochain: degree plus one value per cell of that degree.
struct Cochain {
  int degree = 0;
  RatVec values;
};

/// Cellular map given on chains: each source d-cell maps to a signed sum of target d-cells.
struct CellularMap {
  std::vector<size_t> source_counts;  // per dimension
  std::vector<size_t> target_counts;
  std::vector<std::vector<std::vector<std::pair<size_t, int>>>> images;  // [d][cell]

  /// (f^* z)(sigma) = sum of incidence * z(image cell).
  template <class Vec>
  Vec pullback(int degree, const Vec& z) const;
  Cochain pullback(const Cochain& z) const { return {z.degree, pullback(z.degree, z.values)}; }
};

/// Subcomplex with the index of each of its cells in the parent complex.
struct Subcomplex {
  CellComplex complex;
  std::vector<std::vector<size_t>> parent_index;  // [d][cell in sub] -> cell in parent
};

/// Membership flags per dimension.
using CellSet = std::vector<std::vector<bool>>;
/// Closed star of a vertex of a simplicial complex: simplices sharing a coface with it.
CellSet closed_star(const CellComplex& k, size_t vertex);
CellSet intersect(const CellSet& a, const CellSet& b);
bool is_empty(const CellSet& s);
Subcomplex subcomplex(const CellComplex& k, const CellSet& cells);
/// Restriction of a parent cochain to a subcomplex.
template <class Vec>
Vec restrict_to(const Subcomplex& s, int degree, const Vec& z);

/// Product complex A x B with the Leibniz boundary
/// d(tau x sigma) = d tau x sigma + (-1)^{|tau|} tau x d sigma.
struct ProductComplex {
  CellComplex complex;
  std::vector<std::vector<size_t>> offsets;  // offsets[d][da]
  std::vector<size_t> a_counts, b_counts;

  size_t index(int da, size_t a, int db, size_t b) const;
};
ProductComplex product(const CellComplex& a, const CellComplex& b);

/// (alpha x beta)(tau x sigma) = alpha(tau) beta(sigma).
template <class Vec>
Vec cross(const ProductComplex& p, int da, const Vec& alpha, int db, const Vec& beta);

/// Delta^1 x K: cells {0}x s, {1}x s and I x s with d(I x s) = {1}x s - {0}x s - I x ds.
struct Prism {
  CellComplex base;
  ProductComplex product;
  CellularMap end0, end1, proj;

  const CellComplex& complex() const { return product.complex; }
  size_t end_cell(int end, int d, size_t s) const { return product.index(0, static_cast<size_t>(end), d, s); }
  size_t interval_cell(int d, size_t s) const { return product.index(1, 0, d, s); }
};
Prism prism(const CellComplex& k);

/// The 1-simplex (two vertices, one edge with boundary v1 - v0).
CellComplex interval();
/// Regular 3-vertex circle.
CellComplex circle3();

/// S^1 x K with the 3-vertex circle, the base section at circle vertex 0 and the projection.
struct CircleProduct {
  CellComplex base;
  ProductComplex product;
  CellularMap base_section, proj;
  std::array<int, 3> edge_signs{};  // circle edges summing to the fundamental cycle

  const CellComplex& complex() const { return product.complex; }
  /// Integral 1-cocycle on the circle pairing to 1 with the fundamental cycle.
  IntVec fundamental_cocycle() const;
};
CircleProduct circle_product(const CellComplex& k);

/// (pi_! z)(s) = z(I x s); degree drops by one. Stokes:
/// pi_!(dz) + d(pi_! z) = end1^* z - end0^* z.
template <class Vec>
Vec fiber_integrate_prism(const Prism& p, int degree, const Vec& z);
Cochain fiber_integrate_prism(const Prism& p, const Cochain& z);

/// (pi_! z)(s) = sum over circle edges e of sign(e) z(e x s);
/// closed-fiber Stokes: pi_!(dz) + d(pi_! z) = 0.
template <class Vec>
Vec fiber_integrate_circle(const CircleProduct& c, int degree, const Vec& z);
Cochain fiber_integrate_circle(const CircleProduct& c, const Cochain& z);

/// delta^p z computed directly from the incidences.
template <class Vec>
Vec coboundary_apply(const CellComplex& k, int p, const Vec& z);

// ---------------------------------------------------------------- templates

template <class Vec>
Vec CellularMap::pullback(int degree, const Vec& z) const {
  const auto d = static_cast<size_t>(degree);
  const size_t n_src = d < source_counts.size() ? source_counts[d] : 0;
  const size_t n_tgt = d < target_counts.size() ? target_counts[d] : 0;
  if (z.size() != n_tgt)
    throw std::invalid_argument("pullback: cochain of length " + std::to_string(z.size()) + " on " +
                                std::to_string(n_tgt) + " target cells");
  Vec out(n_src);
  if (degree < 0) return out;
  for (size_t i = 0; i < n_src; ++i)
    for (const auto& [t, inc] : images[d][i]) out[i] += z[t] * inc;
  return out;
}

template <class Vec>
Vec restrict_to(const Subcomplex& s, int degree, const Vec& z) {
  Vec out;
  if (degree < 0 || degree > s.complex.dim()) return out;
  for (size_t parent : s.parent_index[static_cast<size_t>(degree)]) out.push_back(z.at(parent));
  return out;
}

template <class Vec>
Vec cross(const ProductComplex& p, int da, const Vec& alpha, int db, const Vec& beta) {
  const int d = da + db;
  Vec out(p.complex.count(d));
  if (alpha.size() != p.a_counts.at(static_cast<size_t>(da)) || beta.size() != p.b_counts.at(static_cast<size_t>(db)))
    throw std::invalid_argument("cross: factor cochain has wrong length");
  for (size_t a = 0; a < alpha.size(); ++a) {
    if (sgn(alpha[a]) == 0) continue;
    for (size_t b = 0; b < beta.size(); ++b) out[p.index(da, a, db, b)] = alpha[a] * beta[b];
  }
  return out;
}

template <class Vec>
Vec fiber_integrate_prism(const Prism& p, int degree, const Vec& z) {
  if (degree < 1)
    throw std::invalid_argument("fiber_integrate_prism: degree " + std::to_string(degree) +
                                " cochain has no fiber component (degree >= 1 required)");
  if (z.size() != p.complex().count(degree)) throw std::invalid_argument("fiber_integrate_prism: wrong length");
  Vec out(p.base.count(degree - 1));
  for (size_t s = 0; s < out.size(); ++s) out[s] = z[p.interval_cell(degree - 1, s)];
  return out;
}

template <class Vec>
Vec fiber_integrate_circle(const CircleProduct& c, int degree, const Vec& z) {
  if (degree < 1)
    throw std::invalid_argument("fiber_integrate_circle: degree " + std::to_string(degree) +
                                " cochain has no fiber component (degree >= 1 required)");
  if (z.size() != c.complex().count(degree)) throw std::invalid_argument("fiber_integrate_circle: wrong length");
  Vec out(c.base.count(degree - 1));
  for (size_t s = 0; s < out.size(); ++s)
    for (size_t e = 0; e < 3; ++e) out[s] += z[c.product.index(1, e, degree - 1, s)] * c.edge_signs[e];
  return out;
}

template <class Vec>
Vec coboundary_apply(const CellComplex& k, int p, const Vec& z) {
  Vec out(k.count(p + 1));
  if (z.size() != k.count(p)) throw std::invalid_argument("coboundary_apply: wrong length");
  if (p + 1 > k.dim() || p + 1 < 0) return out;
  const auto& cells = k.cells()[static_cast<size_t>(p + 1)];
  for (size_t i = 0; i < cells.size(); ++i)
    for (const auto& [f, inc] : cells[i].boundary) out[i] += z[f] * inc;
  return out;
}

}  // namespace dcoh
