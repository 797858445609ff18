#include "dcoh/tot.hpp"

#include <map>

namespace dcoh {

namespace {

struct Block {
  int q, p;
  size_t offset, size;
};

// Blocks of total degree n, where p = n + sign * q.
std::vector<Block> blocks_of(const std::vector<Complex>& levels, int n, int sign) {
  std::vector<Block> out;
  size_t off = 0;
  for (int q = 0; q < static_cast<int>(levels.size()); ++q) {
    const int p = n + sign * q;
    const size_t r = levels[static_cast<size_t>(q)].rank(p);
    if (r == 0) continue;
    out.push_back({q, p, off, r});
    off += r;
  }
  return out;
}

size_t total(const std::vector<Block>& b) { return b.empty() ? 0 : b.back().offset + b.back().size; }

const Block* find(const std::vector<Block>& bs, int q) {
  for (const auto& b : bs)
    if (b.q == q) return &b;
  return nullptr;
}

void add_block(RatMatrix& m, size_t r0, size_t c0, const RatMatrix& b, int sign) {
  for (size_t i = 0; i < b.rows(); ++i)
    for (size_t j = 0; j < b.cols(); ++j)
      if (sgn(b(i, j)) != 0) m(r0 + i, c0 + j) += sign > 0 ? b(i, j) : Rational(-b(i, j));
}

Ring ring_of(const std::vector<Complex>& levels) {
  Ring r = levels.empty() ? Ring::Z : levels.front().ring();
  for (const auto& l : levels)
    if (l.ring() != r) throw std::invalid_argument("tot: levels have mismatched rings");
  return r;
}

// face_sign = +1 for cosimplicial (q increases), -1 for simplicial.
Complex assemble(const std::vector<Complex>& levels, const std::vector<std::vector<ChainMap>>& maps, int lo, int hi,
                 int sign) {
  const Ring ring = ring_of(levels);
  const int a = lo - 1, b = hi + 1;
  std::vector<size_t> ranks;
  std::vector<RatMatrix> diffs;
  std::vector<std::vector<Block>> all;
  for (int n = a; n <= b; ++n) {
    all.push_back(blocks_of(levels, n, -sign));
    ranks.push_back(total(all.back()));
  }
  for (int n = a; n < b; ++n) {
    const auto& src = all[static_cast<size_t>(n - a)];
    const auto& tgt = all[static_cast<size_t>(n + 1 - a)];
    RatMatrix d(total(tgt), total(src));
    for (const Block& s : src) {
      const Complex& lvl = levels[static_cast<size_t>(s.q)];
      if (const Block* t = find(tgt, s.q)) add_block(d, t->offset, s.offset, lvl.differential(s.p), s.q % 2 ? -1 : 1);
      const int q2 = s.q + sign;
      if (const Block* t = find(tgt, q2)) {
        const auto& ms = maps[static_cast<size_t>(sign > 0 ? s.q : q2)];
        const size_t count = sign > 0 ? static_cast<size_t>(s.q) + 2 : static_cast<size_t>(s.q) + 1;
        for (size_t i = 0; i < count; ++i) add_block(d, t->offset, s.offset, ms[i].component(s.p), i % 2 ? -1 : 1);
      }
    }
    diffs.push_back(std::move(d));
  }
  return Complex(ring, a, b, std::move(ranks), std::move(diffs));
}

template <class Trunc>
void check_shapes(const Trunc& t, const std::vector<std::vector<ChainMap>>& maps, bool up, const char* name) {
  if (t.levels.empty()) throw std::invalid_argument(std::string(name) + ": no levels");
  if (maps.size() != t.levels.size() - 1)
    throw std::invalid_argument(std::string(name) + ": expected one list of structure maps per level below N");
  for (size_t q = 0; q < maps.size(); ++q) {
    if (maps[q].size() != q + 2)
      throw std::invalid_argument(std::string(name) + ": level " + std::to_string(q) + " needs " +
                                  std::to_string(q + 2) + " structure maps");
    const Complex& from = up ? t.levels[q] : t.levels[q + 1];
    const Complex& to = up ? t.levels[q + 1] : t.levels[q];
    for (const auto& f : maps[q])
      if (!(f.source() == from) || !(f.target() == to))
        throw std::invalid_argument(std::string(name) + ": structure map at level " + std::to_string(q) +
                                    " has the wrong source or target");
  }
}

bool same_map(const ChainMap& f, const ChainMap& g) {
  const int lo = std::min(f.source().lo(), f.target().lo());
  const int hi = std::max(f.source().hi(), f.target().hi());
  for (int n = lo; n <= hi; ++n)
    if (!(f.component(n) == g.component(n))) return false;
  return true;
}

int min_degree(const std::vector<Complex>& levels, bool& any) {
  int pmin = 0;
  any = false;
  for (const auto& l : levels)
    for (int p = l.lo(); p <= l.hi(); ++p)
      if (l.rank(p) > 0) {
        pmin = any ? std::min(pmin, p) : p;
        any = true;
        break;
      }
  return pmin;
}

}  // namespace

void CosimplicialTrunc::validate() const {
  check_shapes(*this, cofaces, true, "CosimplicialTrunc");
  for (size_t q = 0; q + 2 < levels.size(); ++q)
    for (size_t j = 1; j <= q + 2; ++j)
      for (size_t i = 0; i < j; ++i)
        if (!same_map(cofaces[q][i].then(cofaces[q + 1][j]), cofaces[q][j - 1].then(cofaces[q + 1][i])))
          throw std::invalid_argument("CosimplicialTrunc: identity d_" + std::to_string(j) + " d_" + std::to_string(i) +
                                      " = d_" + std::to_string(i) + " d_" + std::to_string(j - 1) +
                                      " fails at level " + std::to_string(q));
}

void SimplicialTrunc::validate() const {
  check_shapes(*this, faces, false, "SimplicialTrunc");
  // faces[q+1][j] : A[q+2] -> A[q+1], then faces[q][i] : A[q+1] -> A[q].
  for (size_t q = 0; q + 2 < levels.size(); ++q)
    for (size_t j = 1; j <= q + 2; ++j)
      for (size_t i = 0; i < j; ++i)
        if (!same_map(faces[q + 1][j].then(faces[q][i]), faces[q + 1][i].then(faces[q][j - 1])))
          throw std::invalid_argument("SimplicialTrunc: identity d_" + std::to_string(i) + " d_" + std::to_string(j) +
                                      " = d_" + std::to_string(j - 1) + " d_" + std::to_string(i) +
                                      " fails at level " + std::to_string(q));
}

int required_level_cosimplicial(const CosimplicialTrunc& a, int lo, int hi) {
  bool any = false;
  const int pmin = min_degree(a.levels, any);
  int need = hi - lo + 2;
  if (any) need = std::max(need, hi + 1 - pmin);
  return need;
}

Complex tot_cosimplicial(const CosimplicialTrunc& a, int lo, int hi) {
  a.validate();
  bool any = false;
  min_degree(a.levels, any);
  if (!any) return Complex::zero(ring_of(a.levels), lo - 1, hi + 1);
  const int need = required_level_cosimplicial(a, lo, hi);
  if (a.N() < need)
    throw InsufficientLevel("tot_cosimplicial: truncation level " + std::to_string(a.N()) + " is too small for window [" +
                                std::to_string(lo) + ", " + std::to_string(hi) + "]; level " + std::to_string(need) +
                                " is required",
                            need);
  return assemble(a.levels, a.cofaces, lo, hi, +1);
}

Complex tot_simplicial(const SimplicialTrunc& a, int lo, int hi) {
  a.validate();
  const int need = hi - lo + 2;
  if (a.N() < need)
    throw InsufficientLevel("tot_simplicial: truncation level " + std::to_string(a.N()) + " is too small for window [" +
                                std::to_string(lo) + ", " + std::to_string(hi) + "]; level " + std::to_string(need) +
                                " is required",
                            need);
  return assemble(a.levels, a.faces, lo, hi, -1);
}

CosimplicialTrunc constant_cosimplicial(const Complex& c, int N) {
  CosimplicialTrunc t;
  t.levels.assign(static_cast<size_t>(N + 1), c);
  for (int q = 0; q < N; ++q) t.cofaces.emplace_back(static_cast<size_t>(q + 2), ChainMap::identity(c));
  return t;
}

SimplicialTrunc constant_simplicial(const Complex& c, int N) {
  SimplicialTrunc t;
  t.levels.assign(static_cast<size_t>(N + 1), c);
  for (int q = 0; q < N; ++q) t.faces.emplace_back(static_cast<size_t>(q + 2), ChainMap::identity(c));
  return t;
}

bool DescentReport::all_match() const {
  for (const auto& d : degrees)
    if (!d.match) return false;
  return true;
}

SimplicialTrunc point_simplicial_object(int m, int N) {
  if (N < 0) throw std::invalid_argument("point_simplicial_object: negative level");
  std::vector<CellComplex> simplices;
  SimplicialTrunc t;
  for (int q = 0; q <= N; ++q) {
    std::vector<int> all(static_cast<size_t>(q + 1));
    for (int v = 0; v <= q; ++v) all[static_cast<size_t>(v)] = v;
    simplices.push_back(simplicial_from_facets({all}));
    t.levels.push_back(truncate_above(cochain_complex(simplices.back(), Ring::Q), m).widened(0, N));
  }
  for (int q = 0; q < N; ++q) {
    const CellComplex& small = simplices[static_cast<size_t>(q)];
    const CellComplex& big = simplices[static_cast<size_t>(q + 1)];
    std::vector<ChainMap> faces;
    for (int i = 0; i <= q + 1; ++i) {
      std::vector<RatMatrix> comps;
      for (int p = 0; p <= N; ++p) {
        RatMatrix f(t.levels[static_cast<size_t>(q)].rank(p), t.levels[static_cast<size_t>(q + 1)].rank(p));
        if (f.rows() > 0) {
          std::map<std::vector<int>, size_t> big_index;
          for (size_t c = 0; c < big.count(p); ++c) big_index[big.cell(p, c).vertices] = c;
          for (size_t c = 0; c < small.count(p); ++c) {
            auto v = small.cell(p, c).vertices;
            for (auto& x : v)
              if (x >= i) ++x;
            f(c, big_index.at(v)) = 1;
          }
        }
        comps.push_back(std::move(f));
      }
      faces.emplace_back(t.levels[static_cast<size_t>(q + 1)], t.levels[static_cast<size_t>(q)], 0, std::move(comps));
    }
    t.faces.push_back(std::move(faces));
  }
  return t;
}

PointReport underlying_at_point(int m, int N, int lo, int hi) {
  if (m < 1) throw std::invalid_argument("underlying_at_point: m must be at least 1");
  const int need = 2 * (hi - lo) + 2;
  if (N < need)
    throw InsufficientLevel("underlying_at_point: level " + std::to_string(N) + " is too small for window [" +
                                std::to_string(lo) + ", " + std::to_string(hi) + "]; level " + std::to_string(need) +
                                " is required",
                            need);
  const SimplicialTrunc full = point_simplicial_object(m, N);
  SimplicialTrunc prev;
  prev.levels.assign(full.levels.begin(), full.levels.end() - 1);
  prev.faces.assign(full.faces.begin(), full.faces.end() - 1);
  const Complex t_full = assemble(full.levels, full.faces, lo, hi, -1);
  const Complex t_prev = assemble(prev.levels, prev.faces, lo, hi, -1);
  PointReport r{m, N, {}};
  for (int n = lo; n <= hi; ++n) {
    PointDegree d;
    d.degree = n;
    d.group = homology(t_full, n);
    d.stable = d.group == homology(t_prev, n);
    r.degrees.push_back(d);
  }
  return r;
}

}  // namespace dcoh
