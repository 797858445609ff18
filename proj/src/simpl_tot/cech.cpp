#include "dcoh/tot.hpp"

#include <map>

namespace dcoh {

namespace {

struct Piece {
  std::vector<size_t> tuple;
  Subcomplex sub;
  std::vector<std::map<size_t, size_t>> local;  // [d] parent cell -> index in sub
};

Piece make_piece(const CellComplex& k, std::vector<size_t> tuple, const CellSet& cells) {
  Piece p{std::move(tuple), subcomplex(k, cells), {}};
  p.local.resize(p.sub.parent_index.size());
  for (size_t d = 0; d < p.sub.parent_index.size(); ++d)
    for (size_t i = 0; i < p.sub.parent_index[d].size(); ++i) p.local[d][p.sub.parent_index[d][i]] = i;
  return p;
}

// Direct sum of cochain complexes of the pieces, on the window [0, dim].
Complex level_complex(const std::vector<Piece>& pieces, Ring ring, int dim) {
  std::vector<size_t> ranks(static_cast<size_t>(dim + 1), 0);
  std::vector<std::vector<size_t>> offsets(pieces.size(), std::vector<size_t>(static_cast<size_t>(dim + 1), 0));
  for (size_t j = 0; j < pieces.size(); ++j)
    for (int p = 0; p <= dim; ++p) {
      offsets[j][static_cast<size_t>(p)] = ranks[static_cast<size_t>(p)];
      ranks[static_cast<size_t>(p)] += pieces[j].sub.complex.count(p);
    }
  std::vector<RatMatrix> diffs;
  for (int p = 0; p < dim; ++p) {
    RatMatrix d(ranks[static_cast<size_t>(p + 1)], ranks[static_cast<size_t>(p)]);
    for (size_t j = 0; j < pieces.size(); ++j) {
      const CellComplex& c = pieces[j].sub.complex;
      if (p + 1 > c.dim()) continue;
      const auto& cells = c.cells()[static_cast<size_t>(p + 1)];
      for (size_t s = 0; s < cells.size(); ++s)
        for (const auto& [f, inc] : cells[s].boundary)
          d(offsets[j][static_cast<size_t>(p + 1)] + s, offsets[j][static_cast<size_t>(p)] + f) += inc;
    }
    diffs.push_back(std::move(d));
  }
  return Complex(ring, 0, dim, std::move(ranks), std::move(diffs));
}

std::vector<size_t> piece_offsets(const std::vector<Piece>& pieces, int p) {
  std::vector<size_t> off;
  size_t o = 0;
  for (const auto& pc : pieces) {
    off.push_back(o);
    o += pc.sub.complex.count(p);
  }
  return off;
}

}  // namespace

std::vector<CellSet> star_cover(const CellComplex& k) {
  std::vector<CellSet> cover;
  for (size_t v = 0; v < k.count(0); ++v) cover.push_back(closed_star(k, v));
  return cover;
}

std::vector<CellSet> whole_cover(const CellComplex& k) {
  CellSet all;
  for (const auto& d : k.cells()) all.emplace_back(d.size(), true);
  return {all};
}

CosimplicialTrunc cech_double(const CellComplex& k, const std::vector<CellSet>& cover, Ring ring, int N) {
  if (cover.empty()) throw std::invalid_argument("cech_double: empty cover");
  const int dim = k.dim();
  for (const auto& u : cover) {
    if (u.size() != k.cells().size()) throw std::invalid_argument("cech_double: cover element has the wrong shape");
    for (size_t d = 0; d < u.size(); ++d)
      if (u[d].size() != k.count(static_cast<int>(d)))
        throw std::invalid_argument("cech_double: cover element has the wrong shape");
  }
  // Nerve levels: strictly increasing tuples with nonempty intersection.
  std::vector<std::vector<Piece>> nerve;
  std::vector<std::pair<std::vector<size_t>, CellSet>> frontier;
  for (size_t i = 0; i < cover.size(); ++i)
    if (!is_empty(cover[i])) frontier.push_back({{i}, cover[i]});
  while (!frontier.empty() && static_cast<int>(nerve.size()) <= N) {
    std::vector<Piece> level;
    std::vector<std::pair<std::vector<size_t>, CellSet>> next;
    for (auto& [tuple, cells] : frontier) {
      for (size_t j = tuple.back() + 1; j < cover.size(); ++j) {
        CellSet c = intersect(cells, cover[j]);
        if (is_empty(c)) continue;
        auto t = tuple;
        t.push_back(j);
        next.push_back({std::move(t), std::move(c)});
      }
      level.push_back(make_piece(k, tuple, cells));
    }
    nerve.push_back(std::move(level));
    frontier = std::move(next);
  }

  CosimplicialTrunc out;
  for (int q = 0; q <= N; ++q)
    out.levels.push_back(q < static_cast<int>(nerve.size()) ? level_complex(nerve[static_cast<size_t>(q)], ring, dim)
                                                             : Complex::zero(ring, 0, dim));
  for (int q = 0; q < N; ++q) {
    std::vector<ChainMap> cofaces;
    const bool have = q + 1 < static_cast<int>(nerve.size());
    for (int i = 0; i <= q + 1; ++i) {
      if (!have) {
        cofaces.push_back(ChainMap::zero(out.levels[static_cast<size_t>(q)], out.levels[static_cast<size_t>(q + 1)]));
        continue;
      }
      const auto& src = nerve[static_cast<size_t>(q)];
      const auto& tgt = nerve[static_cast<size_t>(q + 1)];
      std::map<std::vector<size_t>, size_t> src_index;
      for (size_t s = 0; s < src.size(); ++s) src_index[src[s].tuple] = s;
      std::vector<RatMatrix> comps;
      for (int p = 0; p <= dim; ++p) {
        const auto so = piece_offsets(src, p);
        const auto to = piece_offsets(tgt, p);
        RatMatrix f(out.levels[static_cast<size_t>(q + 1)].rank(p), out.levels[static_cast<size_t>(q)].rank(p));
        for (size_t t = 0; t < tgt.size(); ++t) {
          auto face = tgt[t].tuple;
          face.erase(face.begin() + i);
          const size_t s = src_index.at(face);
          const Piece& from = src[s];
          const Piece& to_piece = tgt[t];
          if (p > to_piece.sub.complex.dim()) continue;
          const auto& parents = to_piece.sub.parent_index[static_cast<size_t>(p)];
          for (size_t c = 0; c < parents.size(); ++c)
            f(to[t] + c, so[s] + from.local[static_cast<size_t>(p)].at(parents[c])) = 1;
        }
        comps.push_back(std::move(f));
      }
      cofaces.emplace_back(out.levels[static_cast<size_t>(q)], out.levels[static_cast<size_t>(q + 1)], 0,
                           std::move(comps));
    }
    out.cofaces.push_back(std::move(cofaces));
  }
  return out;
}

DescentReport descent_check(const CellComplex& k, const std::vector<CellSet>& cover, Ring ring, int lo, int hi) {
  const Complex direct = cochain_complex(k, ring);
  // Probe with a minimal level to learn the bound, then build at that level.
  CosimplicialTrunc probe = cech_double(k, cover, ring, 0);
  int level = std::max(hi - lo + 2, hi + 1);
  level = std::max(level, required_level_cosimplicial(probe, lo, hi));
  const Complex tot = tot_cosimplicial(cech_double(k, cover, ring, level), lo, hi);
  DescentReport r;
  r.ring = ring;
  r.level = level;
  for (int n = lo; n <= hi; ++n) {
    DescentDegree d;
    d.degree = n;
    d.direct = homology(direct, n);
    d.cech = homology(tot, n);
    d.match = d.direct == d.cech;
    r.degrees.push_back(d);
  }
  return r;
}

}  // namespace dcoh
