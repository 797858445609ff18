#include "dcoh/diffcoh.hpp"

namespace dcoh {

namespace {

struct Nodes {
  const CellComplex& k;
  int m;
  IntMatrix d_m2, d_m1, d_m;  // coboundaries out of degrees m-2, m-1, m
  IntegralCohomology hz;      // H^m(Z)
  RationalCohomology hq_prev, hq;
  QZCohomology qz;            // H^{m-1}(Q/Z)
  RatMatrix characteristic;

  Nodes(const CellComplex& k_, int m_)
      : k(k_),
        m(m_),
        d_m2(k_.coboundary(m_ - 2)),
        d_m1(k_.coboundary(m_ - 1)),
        d_m(k_.coboundary(m_)),
        hz(d_m1, d_m),
        hq_prev(to_rational(d_m2), to_rational(d_m1)),
        hq(to_rational(d_m1), to_rational(d_m)),
        qz(k_, m_ - 1) {
    characteristic = RatMatrix(hq.dimension(), hz.generators().size());
    for (size_t j = 0; j < hz.generators().size(); ++j) {
      const RatVec col = hq.coordinates(to_rationals(hz.generators()[j]));
      for (size_t i = 0; i < col.size(); ++i) characteristic(i, j) = col[i];
    }
  }

  RatVec rationalize(const IntVec& coords) const { return characteristic * to_rationals(coords); }

  RatVec closed_form(std::mt19937_64& rng) const {
    RatVec a(k.count(m - 1));
    for (const auto& b : hq_prev.basis()) a = a + scaled(b, random_rational(rng));
    return a;
  }
  RatVec exact_form(std::mt19937_64& rng, int deg) const {
    return coboundary_apply(k, deg - 1, random_cochain(rng, k.count(deg - 1)));
  }
  IntVec random_class(std::mt19937_64& rng, bool torsion_only) const {
    IntVec coords(hz.orders().size());
    for (size_t i = 0; i < coords.size(); ++i) {
      const Integer& o = hz.orders()[i];
      if (o == 0)
        coords[i] = torsion_only ? 0 : std::uniform_int_distribution<long>(-3, 3)(rng);
      else
        coords[i] = std::uniform_int_distribution<long>(0, o.get_si() - 1)(rng);
    }
    return coords;
  }
  DiffCochain lift_class(const IntVec& coords) const {
    const IntVec g = hz.representative(coords);
    return {m, m, g, RatVec(k.count(m - 1)), to_rationals(g)};
  }
};

bool classes_equal(const CellComplex& k, const DiffCochain& x, const DiffCochain& y) {
  return equal_classes(k, x, y).has_value();
}

template <class F>
void run(CheckResult& r, size_t samples, F&& body) {
  for (size_t s = 0; s < samples; ++s) {
    ++r.checked;
    std::string why;
    if (!body(why)) {
      r.pass = false;
      if (r.detail.empty()) r.detail = "sample " + std::to_string(s) + ": " + why;
    }
  }
}

void check_degree(const CellComplex& k, int m) {
  if (m < 1 || m > k.dim() + 1)
    throw std::invalid_argument("hexagon: m = " + std::to_string(m) + " is outside 1.." + std::to_string(k.dim() + 1) +
                                " for a complex of dimension " + std::to_string(k.dim()));
}

}  // namespace

HexagonData hexagon(const CellComplex& k, int m) {
  check_degree(k, m);
  const Nodes nd(k, m);
  HexagonData h;
  h.m = m;
  h.forms_dim = k.count(m - 1) - rank(nd.d_m2);
  h.closed_dim = k.count(m) - rank(nd.d_m);
  h.hq_prev.ring = h.hq.ring = Ring::Q;
  h.hq_prev.rank = nd.hq_prev.dimension();
  h.hq.rank = nd.hq.dimension();
  h.qz_prev = nd.qz.group();
  h.hz = nd.hz.group();
  h.characteristic = nd.characteristic;
  return h;
}

Report hexagon_exactness(const CellComplex& k, int m, size_t samples, uint64_t seed) {
  check_degree(k, m);
  std::mt19937_64 rng(seed);
  const Nodes nd(k, m);
  const HexagonData data = hexagon(k, m);
  Report rep;
  rep.title = "hexagon m=" + std::to_string(m);
  rep.facts = {{"A = C^{m-1}/im d (dim)", std::to_string(data.forms_dim)},
               {"closed m-cochains (dim)", std::to_string(data.closed_dim)},
               {"H^{m-1}(Q)", to_string(data.hq_prev)},
               {"H^m(Q)", to_string(data.hq)},
               {"H^{m-1}(Q/Z)", to_string(data.qz_prev)},
               {"H^m(Z)", to_string(data.hz)}};
  const size_t cm1 = k.count(m - 1);

  run(rep.add("R o a = d"), samples, [&](std::string& why) {
    const RatVec a = random_cochain(rng, cm1);
    why = "curvature of a(alpha) differs from d alpha";
    return curvature_R(k, forms_a(k, m, a)) == coboundary_apply(k, m - 1, a);
  });
  run(rep.add("I o a = 0"), samples, [&](std::string& why) {
    why = "a(alpha) has nonzero underlying class";
    return is_zero(underlying_I(k, forms_a(k, m, random_cochain(rng, cm1))));
  });
  run(rep.add("R o flat = 0"), samples, [&](std::string& why) {
    why = "flat class has curvature";
    return is_zero(curvature_R(k, flat_inclusion(k, m, nd.qz.sample(rng))));
  });
  run(rep.add("I o flat = Bockstein"), samples, [&](std::string& why) {
    const RatVec u = nd.qz.sample(rng);
    why = "underlying class of a flat class differs from its Bockstein";
    return underlying_I(k, flat_inclusion(k, m, u)) == nd.qz.bockstein(u);
  });
  run(rep.add("[R] = rationalization o I"), samples, [&](std::string& why) {
    const DiffCochain x = random_cocycle(k, m, m, rng);
    why = "de Rham class of the curvature differs from the rationalized underlying class";
    return nd.hq.coordinates(curvature_R(k, x)) == nd.rationalize(underlying_I(k, x));
  });
  run(rep.add("a o incl = flat o reduce"), samples, [&](std::string& why) {
    const RatVec a = nd.closed_form(rng);
    why = "left square does not commute";
    return forms_a(k, m, a) == flat_inclusion(k, m, a);
  });
  run(rep.add("top row composites vanish"), samples, [&](std::string& why) {
    const RatVec a = nd.closed_form(rng);
    const RatVec da = coboundary_apply(k, m - 1, random_cochain(rng, cm1));
    why = "d o incl or [.] o d is nonzero";
    return is_zero(coboundary_apply(k, m - 1, a)) && is_zero(nd.hq.coordinates(da));
  });
  run(rep.add("bottom row composites vanish"), samples, [&](std::string& why) {
    const RatVec a = nd.closed_form(rng);
    why = "Bockstein o reduce or rationalization o Bockstein is nonzero";
    return is_zero(nd.qz.bockstein(a)) && is_zero(nd.rationalize(nd.qz.bockstein(nd.qz.sample(rng))));
  });
  run(rep.add("exact at A"), samples, [&](std::string& why) {
    // Kernel of d on A: closed forms mod exact ones; preimage is the de Rham class.
    const RatVec a = nd.closed_form(rng) + nd.exact_form(rng, m - 1);
    const RatVec coords = nd.hq_prev.coordinates(a);
    RatVec rep_form(cm1);
    for (size_t i = 0; i < coords.size(); ++i) rep_form = rep_form + scaled(nd.hq_prev.basis()[i], coords[i]);
    why = "closed form differs from its class representative by a non-exact form";
    return solve_rational(to_rational(nd.d_m2), a - rep_form).has_value();
  });
  run(rep.add("exact at closed m-cochains"), samples, [&](std::string& why) {
    const RatVec z = nd.exact_form(rng, m);
    why = "cohomologically trivial closed form has no primitive";
    return is_zero(nd.hq.coordinates(z)) && solve_rational(to_rational(nd.d_m1), z).has_value();
  });
  run(rep.add("exact at H^{m-1}(Q/Z)"), samples, [&](std::string& why) {
    RatVec u = nd.qz.sample(rng);
    u = u - nd.qz.torsion_lift(nd.qz.bockstein(u));
    if (!is_zero(nd.qz.bockstein(u))) {
      why = "could not produce a Bockstein-kernel element";
      return false;
    }
    // du = dy for integral y; then u - y is closed and reduces to u.
    auto y = solve_integer(nd.d_m1, to_integers(to_rational(nd.d_m1) * u));
    if (!y) {
      why = "du is not an integral coboundary";
      return false;
    }
    const RatVec closed = u - to_rationals(*y);
    why = "preimage does not reduce to the sampled class";
    return is_zero(coboundary_apply(k, m - 1, closed)) && nd.qz.equal(closed, u);
  });
  run(rep.add("exact at H^m(Z)"), samples, [&](std::string& why) {
    const IntVec t = nd.random_class(rng, true);
    if (!is_zero(nd.rationalize(t))) {
      why = "torsion class rationalizes to nonzero";
      return false;
    }
    why = "torsion class has no Bockstein preimage";
    return nd.qz.bockstein(nd.qz.torsion_lift(t)) == nd.hz.coordinates(nd.hz.representative(t));
  });
  run(rep.add("exact at H^m-hat along a/I"), samples, [&](std::string& why) {
    DiffCochain x = random_cocycle(k, m, m, rng);
    x = x - nd.lift_class(underlying_I(k, x));
    if (!is_zero(underlying_I(k, x))) {
      why = "could not produce a class with I = 0";
      return false;
    }
    auto b = solve_integer(nd.d_m1, x.c);
    if (!b) {
      why = "c is not an integral coboundary";
      return false;
    }
    const DiffCochain ax = forms_a(k, m, x.h + to_rationals(*b));
    DiffCochain w = zero_cochain(k, m, m - 1);
    w.c = *b;
    why = "x - a(h + b) differs from dhat(b, 0, 0)";
    return x - ax == dhat(k, w) && classes_equal(k, x, ax);
  });
  run(rep.add("exact at H^m-hat along flat/R"), samples, [&](std::string& why) {
    DiffCochain w = zero_cochain(k, m, m - 1);
    w.c = random_integral(rng, cm1);
    w.h = random_cochain(rng, k.count(m - 2));
    const DiffCochain x = flat_inclusion(k, m, nd.qz.sample(rng)) + dhat(k, w);
    auto u = flat_part(k, x);
    if (!u) {
      why = "curvature-free cocycle has no flat part";
      return false;
    }
    why = "flat inclusion of the flat part does not recover x";
    return flat_inclusion(k, m, *u) == x;
  });
  run(rep.add("I surjective"), samples, [&](std::string& why) {
    const IntVec g = nd.random_class(rng, false);
    const DiffCochain x = nd.lift_class(g);
    why = "lift (g, 0, g) is not a cocycle with I = [g]";
    return is_cocycle(k, x) && underlying_I(k, x) == nd.hz.coordinates(nd.hz.representative(g));
  });
  run(rep.add("R onto closed forms with integral periods"), samples, [&](std::string& why) {
    const RatVec z = to_rationals(nd.hz.representative(nd.random_class(rng, false))) + nd.exact_form(rng, m);
    const size_t cm = k.count(m);
    auto sol = mixed_solve(IntMatrix::identity(cm), to_rational(nd.d_m1), z);
    if (!sol) {
      why = "no integral representative for a form with integral periods";
      return false;
    }
    const DiffCochain x{m, m, sol->integral, sol->rational, z};
    why = "preimage is not a cocycle with curvature z";
    return is_cocycle(k, x) && curvature_R(k, x) == z;
  });
  run(rep.add("flat inclusion injective"), samples, [&](std::string& why) {
    const RatVec u = nd.qz.sample(rng);
    RatVec v = nd.qz.sample(rng);
    if (std::uniform_int_distribution<int>(0, 1)(rng) == 1)
      v = u + to_rationals(random_integral(rng, cm1)) + nd.exact_form(rng, m - 1);
    why = "equality of flat classes disagrees with equality in H^{m-1}(Q/Z)";
    return classes_equal(k, flat_inclusion(k, m, u), flat_inclusion(k, m, v)) == nd.qz.equal(u, v);
  });
  run(rep.add("kernel of a = forms with integral periods"), samples, [&](std::string& why) {
    const IntMatrix z = integer_kernel(nd.d_m1);
    const RatVec integral_closed = to_rationals(z * random_integral(rng, z.cols())) + nd.exact_form(rng, m - 1);
    const DiffCochain zero = zero_cochain(k, m, m);
    if (!classes_equal(k, forms_a(k, m, integral_closed), zero)) {
      why = "a(integral closed form) is not zero";
      return false;
    }
    // A closed form whose class is not integral is not in the kernel.
    if (nd.hq_prev.dimension() > 0) {
      const RatVec half = scaled(nd.hq_prev.basis()[0], Rational(1, 2 * (1 + static_cast<long>(rng() % 3))));
      const bool integral_class = mixed_solve(IntMatrix::identity(cm1), to_rational(nd.d_m2), half).has_value() ||
                                  nd.qz.equal(half, RatVec(cm1));
      why = "a(closed form with non-integral periods) vanishes";
      return classes_equal(k, forms_a(k, m, half), zero) == integral_class;
    }
    return true;
  });
  run(rep.add("equal_classes is an equivalence"), samples, [&](std::string& why) {
    const DiffCochain x = random_cocycle(k, m, m, rng);
    DiffCochain w = zero_cochain(k, m, m - 1);
    w.c = random_integral(rng, cm1);
    w.h = random_cochain(rng, k.count(m - 2));
    const DiffCochain y = x + dhat(k, w);
    const DiffCochain z = random_cocycle(k, m, m, rng);
    auto xy = equal_classes(k, x, y);
    auto yx = equal_classes(k, y, x);
    auto xx = equal_classes(k, x, x);
    why = "reflexivity or symmetry failed";
    if (!xy || !yx || !xx) return false;
    auto xz = equal_classes(k, x, z);
    auto yz = equal_classes(k, y, z);
    why = "transitivity failed";
    return xz.has_value() == yz.has_value();
  });
  return rep;
}

}  // namespace dcoh
