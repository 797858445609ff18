#include "dcoh/cells.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace dcoh {

namespace {

std::string vertex_label(const std::vector<int>& v) {
  std::string s = "[";
  for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "]";
}

CellularMap empty_map(const CellComplex& src, const CellComplex& tgt) {
  CellularMap f;
  for (int d = 0; d <= src.dim(); ++d) f.source_counts.push_back(src.count(d));
  for (int d = 0; d <= tgt.dim(); ++d) f.target_counts.push_back(tgt.count(d));
  f.images.resize(f.source_counts.size());
  for (size_t d = 0; d < f.source_counts.size(); ++d) f.images[d].resize(f.source_counts[d]);
  return f;
}

}  // namespace

CellComplex::CellComplex(std::vector<std::vector<Cell>> cells_by_dim) : cells_(std::move(cells_by_dim)) {
  for (size_t d = 0; d < cells_.size(); ++d)
    for (size_t i = 0; i < cells_[d].size(); ++i) {
      const auto& c = cells_[d][i];
      if (d == 0 && !c.boundary.empty())
        throw std::invalid_argument("CellComplex: vertex " + c.label + " has a nonempty boundary");
      for (const auto& [f, inc] : c.boundary)
        if (d == 0 || f >= cells_[d - 1].size())
          throw std::invalid_argument("CellComplex: cell " + c.label + " references a missing face");
    }
  for (int d = 2; d <= dim(); ++d)
    if (!(boundary_matrix(d - 1) * boundary_matrix(d)).is_zero())
      throw std::invalid_argument("CellComplex: boundary does not square to zero in dimension " + std::to_string(d));
}

size_t CellComplex::count(int d) const {
  if (d < 0 || d > dim()) return 0;
  return cells_[static_cast<size_t>(d)].size();
}

IntMatrix CellComplex::boundary_matrix(int d) const {
  IntMatrix m(count(d - 1), count(d));
  if (d <= 0 || d > dim()) return m;
  const auto& cells = cells_[static_cast<size_t>(d)];
  for (size_t j = 0; j < cells.size(); ++j)
    for (const auto& [f, inc] : cells[j].boundary) m(f, j) += inc;
  return m;
}

IntMatrix CellComplex::coboundary(int p) const { return boundary_matrix(p + 1).transpose(); }

int CellComplex::euler_characteristic() const {
  int chi = 0;
  for (int d = 0; d <= dim(); ++d) chi += (d % 2 ? -1 : 1) * static_cast<int>(count(d));
  return chi;
}

bool CellComplex::is_simplicial() const {
  for (size_t d = 0; d < cells_.size(); ++d)
    for (const auto& c : cells_[d])
      if (c.vertices.size() != d + 1) return false;
  return true;
}

CellComplex simplicial_from_facets(const std::vector<std::vector<int>>& facets) {
  if (facets.empty()) throw std::invalid_argument("simplicial_from_facets: no facets");
  std::vector<std::set<std::vector<int>>> by_dim;
  for (auto f : facets) {
    std::sort(f.begin(), f.end());
    if (f.empty() || std::adjacent_find(f.begin(), f.end()) != f.end())
      throw std::invalid_argument("simplicial_from_facets: facet " + vertex_label(f) + " is empty or repeats a vertex");
    const size_t n = f.size();
    if (by_dim.size() < n) by_dim.resize(n);
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
      std::vector<int> face;
      for (size_t i = 0; i < n; ++i)
        if (mask & (1u << i)) face.push_back(f[i]);
      by_dim[face.size() - 1].insert(face);
    }
  }
  std::vector<std::map<std::vector<int>, size_t>> index(by_dim.size());
  std::vector<std::vector<Cell>> cells(by_dim.size());
  for (size_t d = 0; d < by_dim.size(); ++d) {
    for (const auto& s : by_dim[d]) {
      Cell c;
      c.label = vertex_label(s);
      c.vertices = s;
      if (d > 0)
        for (size_t i = 0; i < s.size(); ++i) {
          std::vector<int> face = s;
          face.erase(face.begin() + static_cast<long>(i));
          c.boundary.emplace_back(index[d - 1].at(face), i % 2 ? -1 : 1);
        }
      index[d][s] = cells[d].size();
      cells[d].push_back(std::move(c));
    }
  }
  return CellComplex(std::move(cells));
}

Complex cochain_complex(const CellComplex& k, Ring ring) {
  std::vector<size_t> ranks;
  std::vector<RatMatrix> diffs;
  for (int p = 0; p <= k.dim(); ++p) {
    ranks.push_back(k.count(p));
    if (p < k.dim()) diffs.push_back(to_rational(k.coboundary(p)));
  }
  return Complex(ring, 0, k.dim(), std::move(ranks), std::move(diffs));
}

CellSet closed_star(const CellComplex& k, size_t vertex) {
  if (!k.is_simplicial()) throw std::invalid_argument("closed_star: complex is not simplicial");
  if (vertex >= k.count(0)) throw std::invalid_argument("closed_star: no vertex " + std::to_string(vertex));
  const int v = k.cell(0, vertex).vertices.at(0);
  std::set<std::vector<int>> all;
  for (const auto& dim_cells : k.cells())
    for (const auto& c : dim_cells) all.insert(c.vertices);
  CellSet out(k.cells().size());
  for (size_t d = 0; d < k.cells().size(); ++d) {
    out[d].resize(k.cells()[d].size());
    for (size_t i = 0; i < out[d].size(); ++i) {
      auto s = k.cells()[d][i].vertices;
      if (!std::binary_search(s.begin(), s.end(), v)) {
        s.insert(std::lower_bound(s.begin(), s.end(), v), v);
        out[d][i] = all.count(s) > 0;
      } else {
        out[d][i] = true;
      }
    }
  }
  return out;
}

CellSet intersect(const CellSet& a, const CellSet& b) {
  CellSet out(a);
  for (size_t d = 0; d < out.size(); ++d)
    for (size_t i = 0; i < out[d].size(); ++i) out[d][i] = a[d][i] && b.at(d).at(i);
  return out;
}

bool is_empty(const CellSet& s) {
  for (const auto& d : s)
    for (bool x : d)
      if (x) return false;
  return true;
}

Subcomplex subcomplex(const CellComplex& k, const CellSet& cells) {
  Subcomplex out;
  std::vector<std::vector<Cell>> sub;
  std::vector<std::map<size_t, size_t>> reindex(cells.size());
  for (size_t d = 0; d < cells.size(); ++d) {
    std::vector<Cell> layer;
    std::vector<size_t> parents;
    for (size_t i = 0; i < cells[d].size(); ++i) {
      if (!cells[d][i]) continue;
      Cell c = k.cell(static_cast<int>(d), i);
      for (auto& [f, inc] : c.boundary) {
        auto it = reindex[d - 1].find(f);
        if (it == reindex[d - 1].end())
          throw std::invalid_argument("subcomplex: cell " + c.label + " has a face outside the subcomplex");
        f = it->second;
      }
      reindex[d][i] = layer.size();
      layer.push_back(std::move(c));
      parents.push_back(i);
    }
    if (layer.empty()) break;
    sub.push_back(std::move(layer));
    out.parent_index.push_back(std::move(parents));
  }
  out.complex = CellComplex(std::move(sub));
  return out;
}

size_t ProductComplex::index(int da, size_t a, int db, size_t b) const {
  const auto d = static_cast<size_t>(da + db);
  if (a >= a_counts.at(static_cast<size_t>(da)) || b >= b_counts.at(static_cast<size_t>(db)))
    throw std::out_of_range("ProductComplex::index: factor cell out of range");
  return offsets.at(d).at(static_cast<size_t>(da)) + a * b_counts[static_cast<size_t>(db)] + b;
}

ProductComplex product(const CellComplex& a, const CellComplex& b) {
  ProductComplex p;
  for (int d = 0; d <= a.dim(); ++d) p.a_counts.push_back(a.count(d));
  for (int d = 0; d <= b.dim(); ++d) p.b_counts.push_back(b.count(d));
  const int top = a.dim() + b.dim();
  p.offsets.assign(static_cast<size_t>(top + 1), std::vector<size_t>(static_cast<size_t>(a.dim() + 1), 0));
  for (int d = 0; d <= top; ++d) {
    size_t off = 0;
    for (int da = 0; da <= a.dim(); ++da) {
      p.offsets[d][da] = off;
      const int db = d - da;
      if (db >= 0 && db <= b.dim()) off += a.count(da) * b.count(db);
    }
  }
  std::vector<std::vector<Cell>> cells(static_cast<size_t>(top + 1));
  for (int d = 0; d <= top; ++d)
    for (int da = 0; da <= a.dim(); ++da) {
      const int db = d - da;
      if (db < 0 || db > b.dim()) continue;
      for (size_t i = 0; i < a.count(da); ++i)
        for (size_t j = 0; j < b.count(db); ++j) {
          const Cell& ca = a.cell(da, i);
          const Cell& cb = b.cell(db, j);
          Cell c;
          c.label = ca.label + "x" + cb.label;
          for (const auto& [f, inc] : ca.boundary) c.boundary.emplace_back(p.index(da - 1, f, db, j), inc);
          const int sign = da % 2 ? -1 : 1;
          for (const auto& [f, inc] : cb.boundary) c.boundary.emplace_back(p.index(da, i, db - 1, f), sign * inc);
          cells[static_cast<size_t>(d)].push_back(std::move(c));
        }
    }
  p.complex = CellComplex(std::move(cells));
  return p;
}

CellComplex interval() { return simplicial_from_facets({{0, 1}}); }

CellComplex circle3() { return simplicial_from_facets({{0, 1}, {1, 2}, {0, 2}}); }

Prism prism(const CellComplex& k) {
  Prism p;
  p.base = k;
  p.product = product(interval(), k);
  const CellComplex& pk = p.product.complex;
  p.end0 = empty_map(k, pk);
  p.end1 = empty_map(k, pk);
  p.proj = empty_map(pk, k);
  for (int d = 0; d <= k.dim(); ++d)
    for (size_t s = 0; s < k.count(d); ++s) {
      p.end0.images[d][s] = {{p.end_cell(0, d, s), 1}};
      p.end1.images[d][s] = {{p.end_cell(1, d, s), 1}};
      p.proj.images[d][p.end_cell(0, d, s)] = {{s, 1}};
      p.proj.images[d][p.end_cell(1, d, s)] = {{s, 1}};
    }
  return p;
}

CircleProduct circle_product(const CellComplex& k) {
  CircleProduct c;
  c.base = k;
  const CellComplex s1 = circle3();
  c.product = product(s1, k);
  const CellComplex& ck = c.product.complex;
  IntMatrix cycles = integer_kernel(s1.boundary_matrix(1));
  if (cycles.cols() != 1) throw std::logic_error("circle_product: circle has no unique fundamental cycle");
  int flip = sgn(cycles(0, 0)) < 0 ? -1 : 1;
  for (size_t e = 0; e < 3; ++e) c.edge_signs[e] = flip * static_cast<int>(cycles(e, 0).get_si());
  c.base_section = empty_map(k, ck);
  c.proj = empty_map(ck, k);
  for (int d = 0; d <= k.dim(); ++d)
    for (size_t s = 0; s < k.count(d); ++s) {
      c.base_section.images[d][s] = {{c.product.index(0, 0, d, s), 1}};
      for (size_t v = 0; v < 3; ++v) c.proj.images[d][c.product.index(0, v, d, s)] = {{s, 1}};
    }
  return c;
}

IntVec CircleProduct::fundamental_cocycle() const {
  IntVec theta(3);
  for (size_t e = 0; e < 3; ++e)
    if (edge_signs[e] != 0) {
      theta[e] = edge_signs[e];
      break;
    }
  return theta;
}

Cochain fiber_integrate_prism(const Prism& p, const Cochain& z) {
  return {z.degree - 1, fiber_integrate_prism(p, z.degree, z.values)};
}

Cochain fiber_integrate_circle(const CircleProduct& c, const Cochain& z) {
  return {z.degree - 1, fiber_integrate_circle(c, z.degree, z.values)};
}

}  // namespace dcoh
