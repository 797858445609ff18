#include <doctest.h>

#include "dcoh/cells.hpp"
#include "dcoh/cells_json.hpp"
#include "oracle.hpp"

using namespace dcoh;

namespace {

CellComplex load(const std::string& name) { return load_cell_complex(oracle::data(name)); }

CellComplex point() { return simplicial_from_facets({{0}}); }

FgAbGroup z_group(size_t rank, std::vector<long> torsion = {}) {
  FgAbGroup g;
  g.rank = rank;
  for (long t : torsion) g.torsion.emplace_back(t);
  return g;
}

void check_homology_against_oracle(const CellComplex& k) {
  const Complex c = cochain_complex(k, Ring::Z);
  for (int n = 0; n <= k.dim(); ++n) {
    const auto o = oracle::homology(k.coboundary(n - 1), k.coboundary(n), k.count(n));
    const FgAbGroup g = homology(c, n);
    CHECK(g.rank == o.free_rank);
    std::vector<long> torsion;
    for (const auto& t : g.torsion) torsion.push_back(t.get_si());
    CHECK(torsion == o.torsion_primes);
  }
}

}  // namespace

TEST_CASE("simplicial_from_facets") {
  const CellComplex tri = simplicial_from_facets({{0, 1}, {1, 2}, {0, 2}});
  CHECK(tri.count(0) == 3);
  CHECK(tri.count(1) == 3);
  CHECK(tri.dim() == 1);
  const CellComplex dup = simplicial_from_facets({{0, 1}, {1, 0}, {1, 2}});
  CHECK(dup.count(1) == 2);
  const CellComplex mixed = simplicial_from_facets({{0, 1, 2}, {2, 3}});
  CHECK(mixed.count(1) == 4);
  CHECK(mixed.euler_characteristic() == 1);
  CHECK_THROWS_AS(simplicial_from_facets({}), std::invalid_argument);
  CHECK_THROWS_AS(simplicial_from_facets({{0, 0}}), std::invalid_argument);
  // Orientation: d[0,1,2] = [1,2] - [0,2] + [0,1].
  const CellComplex t = simplicial_from_facets({{0, 1, 2}});
  const IntMatrix d2 = t.boundary_matrix(2);
  CHECK(d2(0, 0) == 1);   // [0,1]
  CHECK(d2(1, 0) == -1);  // [0,2]
  CHECK(d2(2, 0) == 1);   // [1,2]
}

TEST_CASE("bundled complexes: Euler characteristics") {
  CHECK(load("circle3").euler_characteristic() == 0);
  CHECK(load("octahedron").euler_characteristic() == 2);
  CHECK(load("csaszar_torus").euler_characteristic() == 0);
  CHECK(load("csaszar_torus").count(2) == 14);
  CHECK(load("csaszar_torus").count(1) == 21);
  CHECK(load("rp2_6").euler_characteristic() == 1);
}

TEST_CASE("bundled complexes: integral cohomology") {
  const Complex circle = cochain_complex(load("circle3"), Ring::Z);
  CHECK(homology(circle, 0) == z_group(1));
  CHECK(homology(circle, 1) == z_group(1));
  const Complex oct = cochain_complex(load("octahedron"), Ring::Z);
  CHECK(homology(oct, 0) == z_group(1));
  CHECK(homology(oct, 1) == z_group(0));
  CHECK(homology(oct, 2) == z_group(1));
  const Complex rp2 = cochain_complex(load("rp2_6"), Ring::Z);
  CHECK(homology(rp2, 0) == z_group(1));
  CHECK(homology(rp2, 1) == z_group(0));
  CHECK(homology(rp2, 2) == z_group(0, {2}));
  const Complex torus = cochain_complex(load("csaszar_torus"), Ring::Z);
  CHECK(homology(torus, 0) == z_group(1));
  CHECK(homology(torus, 1) == z_group(2));
  CHECK(homology(torus, 2) == z_group(1));
  for (const char* name : {"circle3", "octahedron", "rp2_6", "csaszar_torus"}) check_homology_against_oracle(load(name));
}

TEST_CASE("fundamental 2-cocycle of the octahedron is not a coboundary") {
  const CellComplex k = load("octahedron");
  RatVec f(k.count(2));
  f[0] = 1;
  CHECK(!mixed_solve(k.coboundary(1), RatMatrix(k.count(2), 0), f));
}

TEST_CASE("prism") {
  const Prism pp = prism(point());
  CHECK(pp.complex().count(0) == 2);
  CHECK(pp.complex().count(1) == 1);
  const IntMatrix d = pp.complex().boundary_matrix(1);
  CHECK(d(pp.end_cell(1, 0, 0), 0) == 1);
  CHECK(d(pp.end_cell(0, 0, 0), 0) == -1);
  for (const char* name : {"circle3", "octahedron", "rp2_6"}) {
    const CellComplex k = load(name);
    const Prism p = prism(k);
    CHECK(p.complex().euler_characteristic() == k.euler_characteristic());
    // d(I x s) = {1}x s - {0}x s - I x ds
    for (int dd = 1; dd <= k.dim(); ++dd)
      for (size_t s = 0; s < k.count(dd); ++s) {
        const IntMatrix b = p.complex().boundary_matrix(dd + 1);
        const size_t col = p.interval_cell(dd, s);
        CHECK(b(p.end_cell(1, dd, s), col) == 1);
        CHECK(b(p.end_cell(0, dd, s), col) == -1);
        for (const auto& [f, inc] : k.cell(dd, s).boundary) CHECK(b(p.interval_cell(dd - 1, f), col) == -inc);
      }
  }
}

TEST_CASE("circle product") {
  const CircleProduct cp = circle_product(point());
  CHECK(cp.complex().count(0) == 3);
  CHECK(cp.complex().count(1) == 3);
  const Complex c = cochain_complex(cp.complex(), Ring::Z);
  CHECK(homology(c, 0) == z_group(1));
  CHECK(homology(c, 1) == z_group(1));
  for (const char* name : {"circle3", "octahedron", "rp2_6", "csaszar_torus"})
    CHECK(circle_product(load(name)).complex().euler_characteristic() == 0);
  const Complex t2 = cochain_complex(circle_product(circle3()).complex(), Ring::Q);
  CHECK(homology(t2, 0).rank == 1);
  CHECK(homology(t2, 1).rank == 2);
  CHECK(homology(t2, 2).rank == 1);
  int total = 0;
  for (int e : cp.edge_signs) total += e != 0;
  CHECK(total == 3);
  // The fundamental cocycle pairs to 1 with the fundamental cycle.
  Integer pairing = 0;
  const IntVec theta = cp.fundamental_cocycle();
  for (size_t e = 0; e < 3; ++e) pairing += theta[e] * cp.edge_signs[e];
  CHECK(pairing == 1);
}

TEST_CASE("pullbacks are chain maps and ends are sections of the projection") {
  const CellComplex k = circle3();
  const Prism p = prism(k);
  for (int trial = 0; trial < 50; ++trial)
    for (int d = 0; d <= k.dim(); ++d) {
      const RatVec z = oracle::random_rationals(k.count(d));
      const RatVec lifted = p.proj.pullback(d, z);
      CHECK(p.end0.pullback(d, lifted) == z);
      CHECK(p.end1.pullback(d, lifted) == z);
      CHECK(is_zero(p.end1.pullback(d, lifted) - p.end0.pullback(d, lifted)));
      CHECK(coboundary_apply(p.complex(), d, lifted) == p.proj.pullback(d + 1, coboundary_apply(k, d, z)));
    }
  for (int trial = 0; trial < 50; ++trial)
    for (int d = 0; d <= p.complex().dim(); ++d) {
      const RatVec w = oracle::random_rationals(p.complex().count(d));
      for (const CellularMap* f : {&p.end0, &p.end1})
        CHECK(coboundary_apply(k, d, f->pullback(d, w)) == f->pullback(d + 1, coboundary_apply(p.complex(), d, w)));
    }
  const CircleProduct c = circle_product(k);
  for (int trial = 0; trial < 30; ++trial)
    for (int d = 0; d <= c.complex().dim(); ++d) {
      const RatVec w = oracle::random_rationals(c.complex().count(d));
      CHECK(coboundary_apply(k, d, c.base_section.pullback(d, w)) ==
            c.base_section.pullback(d + 1, coboundary_apply(c.complex(), d, w)));
    }
  CHECK_THROWS_AS(p.end0.pullback(1, RatVec(2)), std::invalid_argument);
}

TEST_CASE("prism fiber integration") {
  const CellComplex k = load("octahedron");
  const Prism p = prism(k);
  for (int d = 0; d <= k.dim(); ++d) {
    const RatVec z = oracle::random_rationals(k.count(d));
    if (d >= 1) CHECK(is_zero(fiber_integrate_prism(p, d, p.proj.pullback(d, z))));
  }
  // Stokes on 200 random cochains: pi_!(dz) + d(pi_! z) = end1^* z - end0^* z.
  for (int trial = 0; trial < 200; ++trial) {
    const int d = 1 + trial % 3;
    const RatVec z = oracle::random_rationals(p.complex().count(d));
    const RatVec lhs = fiber_integrate_prism(p, d + 1, coboundary_apply(p.complex(), d, z)) +
                       coboundary_apply(k, d - 1, fiber_integrate_prism(p, d, z));
    CHECK(lhs == p.end1.pullback(d, z) - p.end0.pullback(d, z));
  }
  RatVec ind(p.complex().count(2));
  ind[p.interval_cell(1, 4)] = 1;
  RatVec expected(k.count(1));
  expected[4] = 1;
  CHECK(fiber_integrate_prism(p, 2, ind) == expected);
  CHECK_THROWS_AS(fiber_integrate_prism(p, 0, RatVec(p.complex().count(0))), std::invalid_argument);
  const Cochain c{2, ind};
  CHECK(fiber_integrate_prism(p, c).degree == 1);
}

TEST_CASE("circle fiber integration") {
  const CellComplex k = circle3();
  const CircleProduct c = circle_product(k);
  for (int d = 0; d <= 1; ++d) {
    const RatVec z = oracle::random_rationals(k.count(d));
    if (d >= 1) CHECK(is_zero(fiber_integrate_circle(c, d, c.proj.pullback(d, z))));
  }
  // theta x eta integrates to eta.
  const RatVec theta = to_rationals(c.fundamental_cocycle());
  for (int d = 0; d <= 1; ++d) {
    const RatVec eta = oracle::random_rationals(k.count(d));
    const RatVec z = cross(c.product, 1, theta, d, eta);
    CHECK(fiber_integrate_circle(c, d + 1, z) == eta);
  }
  for (int trial = 0; trial < 200; ++trial) {
    const int d = 1 + trial % 2;
    const RatVec z = oracle::random_rationals(c.complex().count(d));
    const RatVec lhs = fiber_integrate_circle(c, d + 1, coboundary_apply(c.complex(), d, z)) +
                       coboundary_apply(k, d - 1, fiber_integrate_circle(c, d, z));
    CHECK(is_zero(lhs));
  }
  CHECK_THROWS_AS(fiber_integrate_circle(c, 0, RatVec(c.complex().count(0))), std::invalid_argument);
}

TEST_CASE("cross product satisfies the Leibniz rule") {
  const CellComplex a = circle3();
  const CellComplex b = load("octahedron");
  const ProductComplex p = product(a, b);
  for (int trial = 0; trial < 40; ++trial) {
    const int da = trial % 2, db = trial % 3;
    const RatVec alpha = oracle::random_rationals(a.count(da));
    const RatVec beta = oracle::random_rationals(b.count(db));
    const RatVec lhs = coboundary_apply(p.complex, da + db, cross(p, da, alpha, db, beta));
    RatVec rhs(p.complex.count(da + db + 1));
    if (da + 1 <= a.dim()) rhs = rhs + cross(p, da + 1, coboundary_apply(a, da, alpha), db, beta);
    if (db + 1 <= b.dim()) {
      const RatVec t = cross(p, da, alpha, db + 1, coboundary_apply(b, db, beta));
      rhs = da % 2 ? rhs - t : rhs + t;
    }
    CHECK(lhs == rhs);
  }
}

TEST_CASE("closed stars and subcomplexes") {
  const CellComplex k = load("octahedron");
  const CellSet s = closed_star(k, 0);
  const Subcomplex sub = subcomplex(k, s);
  CHECK(sub.complex.count(2) == 4);
  CHECK(sub.complex.count(0) == 5);
  CHECK(sub.complex.euler_characteristic() == 1);
  const CellSet opposite = intersect(closed_star(k, 0), closed_star(k, 1));
  const Subcomplex eq = subcomplex(k, opposite);
  CHECK(eq.complex.count(2) == 0);
  CHECK(eq.complex.count(1) == 4);
  const RatVec z = oracle::random_rationals(k.count(1));
  const RatVec r = restrict_to(sub, 1, z);
  for (size_t i = 0; i < r.size(); ++i) CHECK(r[i] == z[sub.parent_index[1][i]]);
}

TEST_CASE("cell complex JSON") {
  using nlohmann::json;
  const CellComplex k = load("rp2_6");
  const CellComplex back = cell_complex_from_json(cell_complex_to_json(k));
  CHECK(back.count(2) == k.count(2));
  CHECK(back.boundary_matrix(2) == k.boundary_matrix(2));
  CHECK_THROWS_AS(cell_complex_from_json(json{{"vertices", {0, 1}}, {"facets", {{0, 7}}}}), InputError);
  CHECK_THROWS_AS(cell_complex_from_json(json{{"cells", {{{"id", "a"}, {"dim", 1}, {"boundary", json::array()}}}}}),
                  InputError);
  // boundary that does not square to zero
  json bad = {{"cells",
               {{{"id", "v"}, {"dim", 0}},
                {{"id", "w"}, {"dim", 0}},
                {{"id", "e"}, {"dim", 1}, {"boundary", {{"v", 1}}}},
                {{"id", "f"}, {"dim", 2}, {"boundary", {{"e", 1}}}}}}};
  CHECK_THROWS_AS(cell_complex_from_json(bad), InputError);
  CHECK_THROWS_AS(cell_complex_from_json(json::array()), InputError);
}
