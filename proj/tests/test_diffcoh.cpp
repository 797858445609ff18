#include <doctest.h>

#include "dcoh/cells_json.hpp"
#include "dcoh/diffcoh.hpp"
#include "dcoh/diffcoh_json.hpp"
#include "oracle.hpp"

using namespace dcoh;

namespace {

CellComplex load(const std::string& name) { return load_cell_complex(oracle::data(name)); }

DiffCochain random_chain(const CellComplex& k, int m, int n) {
  DiffCochain x = zero_cochain(k, m, n);
  x.c = oracle::random_integers(k.count(n));
  x.h = oracle::random_rationals(k.count(n - 1));
  if (n >= m) x.omega = oracle::random_rationals(k.count(n));
  return x;
}

bool all_pass(const Report& r) {
  for (const auto& c : r.checks) {
    INFO(r.title << ": " << c.name << " " << c.detail);
    CHECK(c.pass);
    // Kernel witnesses are vacuous when H^{m-1} has no free part.
    if (c.name.find("kernel witnesses") == std::string::npos) CHECK(c.checked > 0);
  }
  return r.all_pass();
}

std::string fact(const Report& r, const std::string& key) {
  for (const auto& [k, v] : r.facts)
    if (k == key) return v;
  return "<missing>";
}

Integer pair(const IntVec& a, const IntVec& b) {
  Integer s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

TEST_CASE("dhat squares to zero and kills a(alpha)") {
  const CellComplex k = load("octahedron");
  CHECK(dhat(k, zero_cochain(k, 2, 1)) == zero_cochain(k, 2, 2));
  for (int trial = 0; trial < 50; ++trial)
    for (int n = 0; n <= 2; ++n) {
      const DiffCochain x = random_chain(k, 2, n);
      const DiffCochain dd = dhat(k, dhat(k, x));
      CHECK(is_zero(dd.c));
      CHECK(is_zero(dd.h));
      CHECK(is_zero(dd.omega));
    }
  for (int trial = 0; trial < 50; ++trial) {
    const RatVec alpha = oracle::random_rationals(k.count(1));
    const DiffCochain a = forms_a(k, 2, alpha);
    CHECK(is_cocycle(k, a));
    CHECK(curvature_R(k, a) == coboundary_apply(k, 1, alpha));
    CHECK(is_zero(underlying_I(k, a)));
  }
  DiffCochain bad = zero_cochain(k, 2, 1);
  bad.omega[0] = 1;
  CHECK_THROWS_AS(validate(k, bad), std::invalid_argument);
  CHECK_THROWS_AS(forms_a(k, 2, RatVec(k.count(0)), 1), std::invalid_argument);
  DiffCochain not_closed = zero_cochain(k, 2, 2);
  not_closed.c[0] = 1;
  CHECK_THROWS_AS(curvature_R(k, not_closed), std::invalid_argument);
  CHECK_THROWS_AS(underlying_I(k, not_closed), std::invalid_argument);
}

TEST_CASE("octahedron fundamental class") {
  const CellComplex k = load("octahedron");
  const IntVec cycle = oracle::fundamental_cycle(k);
  REQUIRE(is_zero(k.boundary_matrix(2) * cycle));
  IntVec f(k.count(2));
  f[0] = cycle[0];
  const DiffCochain x{2, 2, f, RatVec(k.count(1)), to_rationals(f)};
  REQUIRE(is_cocycle(k, x));
  const IntVec coords = underlying_I(k, x);
  REQUIRE(coords.size() == 1);
  CHECK(abs(coords[0]) == 1);
  CHECK(pair(to_integers(curvature_R(k, x)), cycle) == 1);
}

TEST_CASE("equal_classes") {
  const CellComplex k = load("octahedron");
  for (int trial = 0; trial < 20; ++trial) {
    std::mt19937_64 rng(static_cast<uint64_t>(trial));
    const DiffCochain x = random_cocycle(k, 2, 2, rng);
    const auto w0 = equal_classes(k, x, x);
    REQUIRE(w0);
    CHECK(dhat(k, *w0) == zero_cochain(k, 2, 2));
    DiffCochain w = zero_cochain(k, 2, 1);
    w.c = oracle::random_integers(k.count(1));
    w.h = oracle::random_rationals(k.count(0));
    const DiffCochain y = x + dhat(k, w);
    const auto found = equal_classes(k, y, x);
    REQUIRE(found);
    CHECK(dhat(k, *found) == y - x);
  }
  // Circle, m = 1: a(alpha) is trivial exactly when alpha is an integral constant,
  // since the only closed 0-cochains are constants.
  const CellComplex c = load("circle3");
  const DiffCochain zero = zero_cochain(c, 1, 1);
  const RatVec two(3, Rational(2)), half(3, Rational(1, 2));
  CHECK(equal_classes(c, forms_a(c, 1, two), zero));
  CHECK(!equal_classes(c, forms_a(c, 1, half), zero));
  RatVec ramp{Rational(0), Rational(1), Rational(2)};
  CHECK(!equal_classes(c, forms_a(c, 1, ramp), zero));
  CHECK_THROWS_AS(equal_classes(c, zero, zero_cochain(c, 1, 0)), std::invalid_argument);
}

TEST_CASE("flat classes") {
  const CellComplex k = load("octahedron");
  // a(alpha) with d alpha = 0 has flat part alpha.
  const IntMatrix z1 = integer_kernel(k.coboundary(1));
  RatVec alpha = to_rationals(z1 * oracle::random_integers(z1.cols()));
  alpha = scaled(alpha, Rational(1, 3));
  const auto fp = flat_part(k, forms_a(k, 2, alpha));
  REQUIRE(fp);
  CHECK(*fp == alpha);
  DiffCochain curved{2, 2, IntVec(k.count(2)), RatVec(k.count(1)), RatVec(k.count(2))};
  curved.c[0] = 1;
  curved.omega[0] = 1;
  CHECK(!flat_part(k, curved));

  // Circle, m = 1: the constant theta on vertices is a flat class with value theta mod 1.
  const CellComplex c = load("circle3");
  const QZCohomology qz0(c, 0);
  for (const Rational theta : {Rational(1, 3), Rational(4, 3), Rational(-2, 3)}) {
    const DiffCochain x{1, 1, IntVec(3), RatVec(3, theta), RatVec(3)};
    REQUIRE(is_cocycle(c, x));
    const auto u = flat_part(c, x);
    REQUIRE(u);
    CHECK(qz0.equal(*u, RatVec(3, Rational(1, 3))));
    CHECK(!qz0.equal(*u, RatVec(3, Rational(1, 2))));
  }
  CHECK(qz0.group().divisible == 1);
  CHECK(qz0.group().torsion.empty());

  // RP^2, m = 2: a flat class with nonzero underlying class in H^2 = Z/2.
  const CellComplex rp2 = load("rp2_6");
  const QZCohomology qz1(rp2, 1);
  CHECK(qz1.group().divisible == 0);
  REQUIRE(qz1.group().torsion.size() == 1);
  CHECK(qz1.group().torsion[0] == 2);
  const RatVec u = qz1.torsion_lift({Integer(1)});
  CHECK(!is_integral(u));
  CHECK(is_integral(scaled(u, Rational(2))));
  const DiffCochain x = flat_inclusion(rp2, 2, u);
  REQUIRE(is_cocycle(rp2, x));
  CHECK(is_zero(curvature_R(rp2, x)));
  const IntVec cls = underlying_I(rp2, x);
  REQUIRE(cls.size() == 1);
  CHECK(cls[0] == 1);
  CHECK(qz1.bockstein(u) == cls);
  // Oracle: c = -du is not a coboundary mod 2 but 2c is an integral coboundary.
  const IntMatrix c_col = from_columns<Integer>({x.c}, rp2.count(2));
  CHECK(oracle::rank_mod(hstack(rp2.coboundary(1), c_col), 2) == oracle::rank_mod(rp2.coboundary(1), 2) + 1);
  CHECK(flat_part(rp2, x) == u);
  CHECK_THROWS_AS(flat_inclusion(rp2, 2, RatVec(rp2.count(1), Rational(1, 3))), std::invalid_argument);
}

TEST_CASE("hexagon data") {
  const HexagonData circle = hexagon(load("circle3"), 1);
  CHECK(circle.forms_dim == 3);
  CHECK(circle.closed_dim == 3);
  CHECK(circle.hq_prev.rank == 1);
  CHECK(circle.hq.rank == 1);
  CHECK(circle.qz_prev.divisible == 1);
  CHECK(circle.hz.rank == 1);
  REQUIRE(circle.characteristic.rows() == 1);
  CHECK(abs(circle.characteristic(0, 0)) == 1);

  const HexagonData oct3 = hexagon(load("octahedron"), 3);
  CHECK(oct3.closed_dim == 0);
  CHECK(oct3.hz.is_zero());
  CHECK(oct3.qz_prev.divisible == 1);

  const HexagonData rp2 = hexagon(load("rp2_6"), 2);
  CHECK(rp2.hz.rank == 0);
  REQUIRE(rp2.hz.torsion.size() == 1);
  CHECK(rp2.qz_prev.torsion == rp2.hz.torsion);
  CHECK(rp2.characteristic.rows() == 0);

  CHECK_THROWS_AS(hexagon(load("circle3"), 0), std::invalid_argument);
  CHECK_THROWS_AS(hexagon(load("circle3"), 3), std::invalid_argument);
}

TEST_CASE("hexagon exactness") {
  CHECK(all_pass(hexagon_exactness(load("circle3"), 1, 20, 0)));
  CHECK(all_pass(hexagon_exactness(load("circle3"), 2, 20, 0)));
  CHECK(all_pass(hexagon_exactness(load("octahedron"), 1, 10, 1)));
  CHECK(all_pass(hexagon_exactness(load("octahedron"), 2, 20, 0)));
  CHECK(all_pass(hexagon_exactness(load("octahedron"), 3, 20, 0)));
  CHECK(all_pass(hexagon_exactness(load("rp2_6"), 2, 20, 0)));
  CHECK(all_pass(hexagon_exactness(load("csaszar_torus"), 2, 10, 0)));
  const Report a = hexagon_exactness(load("circle3"), 1, 5, 7);
  const Report b = hexagon_exactness(load("circle3"), 1, 5, 7);
  CHECK(report_to_json(a) == report_to_json(b));
}

TEST_CASE("homotopy formula") {
  for (const char* name : {"circle3", "octahedron"})
    for (int m : {1, 2}) CHECK(all_pass(homotopy_formula_suite(load(name), m, 15, 0)));
  const Prism p = prism(load("circle3"));
  DiffCochain bad = zero_cochain(p.complex(), 1, 1);
  bad.c[0] = 1;
  CHECK_THROWS_AS(homotopy_formula_check(p, bad), std::invalid_argument);
  // The explicit witness: dhat(pi_! c, -pi_! h, 0) against an independent expansion.
  std::mt19937_64 rng(3);
  const DiffCochain x = random_cocycle(p.complex(), 1, 1, rng);
  const DiffCochain w = homotopy_witness(p, x);
  for (size_t s = 0; s < p.base.count(0); ++s) CHECK(w.c[s] == x.c[p.interval_cell(0, s)]);
}

TEST_CASE("S^1 integration") {
  CHECK(all_pass(s1_integrate_suite(load("circle3"), 2, 20, 0)));
  CHECK(all_pass(s1_integrate_suite(load("octahedron"), 2, 10, 0)));
  CHECK(all_pass(s1_integrate_suite(load("octahedron"), 3, 10, 0)));
  const CircleProduct cp = circle_product(load("circle3"));
  std::mt19937_64 rng(5);
  const DiffCochain x1 = reduce_to_base(cp, random_cocycle(cp.complex(), 1, 1, rng));
  CHECK_THROWS_AS(s1_integrate(cp, x1), std::invalid_argument);
  // A pulled-back cocycle does not vanish on the base section unless reduced.
  const DiffCochain z = random_cocycle(cp.base, 2, 2, rng);
  const DiffCochain pz = pullback(cp.proj, z);
  if (!is_zero(z.c) || !is_zero(z.h)) CHECK_THROWS_AS(s1_integrate(cp, pz), std::invalid_argument);
}

TEST_CASE("pullback classification") {
  const Report circle = pullback_classification_check(load("circle3"), 1, 20, 0);
  CHECK(all_pass(circle));
  CHECK(fact(circle, "independent kernel witnesses") == "1");
  const Report oct = pullback_classification_check(load("octahedron"), 2, 20, 0);
  CHECK(all_pass(oct));
  CHECK(fact(oct, "independent kernel witnesses") == "0");
  const Report torus = pullback_classification_check(load("csaszar_torus"), 2, 10, 0);
  CHECK(all_pass(torus));
  CHECK(fact(torus, "independent kernel witnesses") == "2");
}

TEST_CASE("JSON round trip") {
  const CellComplex k = load("octahedron");
  std::mt19937_64 rng(11);
  const DiffCochain x = random_cocycle(k, 2, 2, rng);
  const nlohmann::json j = diff_cochain_to_json(x);
  CHECK(diff_cochain_from_json(nlohmann::json::parse(j.dump())) == x);
  CHECK_THROWS_AS(diff_cochain_from_json(nlohmann::json{{"m", 1}}), InputError);
  CHECK_THROWS_AS(diff_cochain_from_json(nlohmann::json{{"m", 1}, {"n", 1}, {"c", {"x"}}, {"h", {}}, {"omega", {}}}),
                  InputError);
  const Report r = hexagon_exactness(load("circle3"), 1, 2, 0);
  const nlohmann::json rj = report_to_json(r);
  CHECK(rj["pass"] == true);
  CHECK(rj["checks"].size() == r.checks.size());
  CHECK(report_to_table(r).find("PASS") != std::string::npos);
}
