#include "dcoh/diffcoh.hpp"

#include <sstream>

namespace dcoh {

namespace {

// Fiber integrals of degree-0 cochains land in degree -1, where there are no cells.
RatVec prism_integral(const Prism& p, int degree, const RatVec& z) {
  return degree < 1 ? RatVec{} : fiber_integrate_prism(p, degree, z);
}
IntVec prism_integral(const Prism& p, int degree, const IntVec& z) {
  return degree < 1 ? IntVec{} : fiber_integrate_prism(p, degree, z);
}
RatVec circle_integral(const CircleProduct& c, int degree, const RatVec& z) {
  return degree < 1 ? RatVec{} : fiber_integrate_circle(c, degree, z);
}
IntVec circle_integral(const CircleProduct& c, int degree, const IntVec& z) {
  return degree < 1 ? IntVec{} : fiber_integrate_circle(c, degree, z);
}

template <class Vec>
Vec pull(const CellularMap& f, int degree, const Vec& z) {
  return degree < 0 ? Vec{} : f.pullback(degree, z);
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

void require_cocycle(const CellComplex& k, const DiffCochain& x, const char* who) {
  validate(k, x);
  if (!is_cocycle(k, x)) throw std::invalid_argument(std::string(who) + ": input is not a dhat-cocycle");
}

DiffCochain end_difference(const Prism& p, const DiffCochain& x) {
  const DiffCochain d = pullback(p.end1, x) - pullback(p.end0, x);
  const RatVec alpha = prism_integral(p, x.n, x.omega);
  if (x.n < x.m) return d;  // omega = 0, so a(pi_! omega) = 0
  return d - forms_a(p.base, x.m, alpha, x.n);
}

std::string matrix_string(const RatMatrix& m) {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < m.rows(); ++i) {
    os << (i ? "; " : "");
    for (size_t j = 0; j < m.cols(); ++j) os << (j ? " " : "") << to_string(m(i, j));
  }
  os << "]";
  return os.str();
}

}  // namespace

DiffCochain pullback(const CellularMap& f, const DiffCochain& x) {
  return {x.m, x.n, pull(f, x.n, x.c), pull(f, x.n - 1, x.h), pull(f, x.n, x.omega)};
}

DiffCochain homotopy_witness(const Prism& p, const DiffCochain& x) {
  DiffCochain w{x.m, x.n - 1, prism_integral(p, x.n, x.c), -prism_integral(p, x.n - 1, x.h),
                RatVec(p.base.count(x.n - 1))};
  return w;
}

bool homotopy_formula_check(const Prism& p, const DiffCochain& x) {
  require_cocycle(p.complex(), x, "homotopy_formula_check");
  const DiffCochain diff = end_difference(p, x);
  const auto w = equal_classes(p.base, diff, zero_cochain(p.base, x.m, x.n));
  return w.has_value() && dhat(p.base, homotopy_witness(p, x)) == diff;
}

Report homotopy_formula_suite(const CellComplex& k, int m, size_t samples, uint64_t seed) {
  std::mt19937_64 rng(seed);
  const Prism p = prism(k);
  const CellComplex& pk = p.complex();
  Report rep;
  rep.title = "homotopy formula m=" + std::to_string(m);

  run(rep.add("end1* - end0* - a(pi_! omega) is dhat-exact"), samples, [&](std::string& why) {
    const DiffCochain x = random_cocycle(pk, m, m, rng);
    why = "no witness for a random prism cocycle";
    return homotopy_formula_check(p, x);
  });
  run(rep.add("strict identity on proj* images"), samples, [&](std::string& why) {
    const DiffCochain y = random_cocycle(k, m, m, rng);
    const DiffCochain d = end_difference(p, pullback(p.proj, y));
    why = "difference on a pulled-back cocycle is not exactly zero";
    return d == zero_cochain(k, m, m);
  });
  run(rep.add("pi_! o proj* = 0"), samples, [&](std::string& why) {
    for (int d = 1; d <= k.dim() + 1; ++d)
      if (!is_zero(prism_integral(p, d, p.proj.pullback(d, random_cochain(rng, k.count(d)))))) {
        why = "fiber integral of a pulled-back cochain in degree " + std::to_string(d) + " is nonzero";
        return false;
      }
    return true;
  });
  run(rep.add("curvature on prism cells only: exact at cochain level"), samples, [&](std::string& why) {
    // h = v1 x alpha with alpha closed gives omega = I x alpha.
    const IntMatrix z = integer_kernel(k.coboundary(m - 1));
    RatVec alpha(k.count(m - 1));
    for (size_t j = 0; j < z.cols(); ++j) alpha = alpha + scaled(to_rationals(z.col(j)), random_rational(rng));
    alpha = alpha + coboundary_apply(k, m - 2, random_cochain(rng, k.count(m - 2)));
    const RatVec v1{Rational(0), Rational(1)};
    DiffCochain x = zero_cochain(pk, m, m);
    x.h = cross(p.product, 0, v1, m - 1, alpha);
    x.omega = coboundary_apply(pk, m - 1, x.h);
    const RatVec interval_part = cross(p.product, 1, RatVec{Rational(1)}, m - 1, alpha);
    if (!is_cocycle(pk, x) || x.omega != interval_part) {
      why = "constructed cochain is not a cocycle concentrated on prism cells";
      return false;
    }
    why = "end difference differs from a(pi_! omega)";
    return end_difference(p, x) == zero_cochain(k, m, m);
  });
  return rep;
}

DiffCochain reduce_to_base(const CircleProduct& c, const DiffCochain& x) {
  return x - pullback(c.proj, pullback(c.base_section, x));
}

DiffCochain s1_integrate(const CircleProduct& c, const DiffCochain& x) {
  require_cocycle(c.complex(), x, "s1_integrate");
  if (x.m < 2)
    throw std::invalid_argument("s1_integrate: m = " + std::to_string(x.m) +
                                " leaves no truncation for the result (m >= 2 required)");
  const DiffCochain s = pullback(c.base_section, x);
  if (!is_zero(s.c) || !is_zero(s.h) || !is_zero(s.omega))
    throw std::invalid_argument(
        "s1_integrate: x must vanish on the base section (reduced object); apply reduce_to_base first");
  DiffCochain y{x.m - 1, x.n - 1, circle_integral(c, x.n, x.c), -circle_integral(c, x.n - 1, x.h),
                circle_integral(c, x.n, x.omega)};
  if (y.omega.empty()) y.omega = RatVec(c.base.count(y.n));
  return y;
}

Report s1_integrate_suite(const CellComplex& k, int m, size_t samples, uint64_t seed) {
  std::mt19937_64 rng(seed);
  const CircleProduct cp = circle_product(k);
  const CellComplex& ck = cp.complex();
  Report rep;
  rep.title = "S^1 integration m=" + std::to_string(m);
  const IntegralCohomology h_below(k.coboundary(m - 2), k.coboundary(m - 1));

  run(rep.add("result is a dhat-cocycle"), samples, [&](std::string& why) {
    const DiffCochain y = s1_integrate(cp, reduce_to_base(cp, random_cocycle(ck, m, m, rng)));
    why = "integrated cochain is not a cocycle for truncation m-1";
    return is_cocycle(k, y);
  });
  run(rep.add("R and I commute with fiber integration"), samples, [&](std::string& why) {
    const DiffCochain x = reduce_to_base(cp, random_cocycle(ck, m, m, rng));
    const DiffCochain y = s1_integrate(cp, x);
    why = "R or I of the integral differs from the integrated curvature or class";
    return curvature_R(k, y) == circle_integral(cp, m, curvature_R(ck, x)) &&
           underlying_I(k, y) == h_below.coordinates(circle_integral(cp, m, x.c));
  });
  run(rep.add("reduced proj* images integrate to zero"), samples, [&](std::string& why) {
    const DiffCochain y = random_cocycle(k, m, m, rng);
    const DiffCochain x = reduce_to_base(cp, pullback(cp.proj, y));
    why = "reduction of a pulled-back cocycle does not integrate to zero";
    return s1_integrate(cp, x) == zero_cochain(k, m - 1, m - 1);
  });
  run(rep.add("theta x z integrates to [z]"), samples, [&](std::string& why) {
    const IntMatrix zk = integer_kernel(k.coboundary(m - 1));
    const IntVec z = zk * random_integral(rng, zk.cols());
    DiffCochain x = zero_cochain(ck, m, m);
    x.c = cross(cp.product, 1, cp.fundamental_cocycle(), m - 1, z);
    x.omega = to_rationals(x.c);
    const DiffCochain y = s1_integrate(cp, x);
    why = "class of the integral differs from [z]";
    return y.c == z && underlying_I(k, y) == h_below.coordinates(z);
  });
  return rep;
}

Report pullback_classification_check(const CellComplex& k, int m, size_t samples, uint64_t seed) {
  if (m < 1 || m > k.dim() + 1) throw std::invalid_argument("pullback_classification_check: m out of range");
  std::mt19937_64 rng(seed);
  const IntMatrix d_m2 = k.coboundary(m - 2), d_m1 = k.coboundary(m - 1), d_m = k.coboundary(m);
  const IntegralCohomology hz(d_m1, d_m), hz_prev(d_m2, d_m1);
  const RationalCohomology hq(to_rational(d_m1), to_rational(d_m)), hq_prev(to_rational(d_m2), to_rational(d_m1));
  const QZCohomology qz(k, m - 1);
  const HexagonData data = hexagon(k, m);
  const size_t cm1 = k.count(m - 1);
  Report rep;
  rep.title = "pullback classification m=" + std::to_string(m);
  rep.facts = {{"characteristic map H^m(Z) -> H^m(Q)", matrix_string(data.characteristic)},
               {"H^m(Z)", to_string(data.hz)},
               {"kernel of (I, R) = H^{m-1}(Q) / integral classes, dim", std::to_string(hq_prev.dimension())}};

  run(rep.add("(I, R) onto the fiber product"), samples, [&](std::string& why) {
    IntVec u(hz.orders().size());
    for (size_t i = 0; i < u.size(); ++i)
      u[i] = hz.orders()[i] == 0 ? Integer(std::uniform_int_distribution<long>(-3, 3)(rng))
                                 : Integer(std::uniform_int_distribution<long>(0, hz.orders()[i].get_si() - 1)(rng));
    // A compatible pair: z closed with [z] the rationalization of u.
    const IntVec g = hz.representative(u);
    const RatVec z = to_rationals(g) + coboundary_apply(k, m - 1, random_cochain(rng, cm1));
    if (hq.coordinates(z) != data.characteristic * to_rationals(u)) {
      why = "sampled pair is not compatible";
      return false;
    }
    auto h = solve_rational(to_rational(d_m1), z - to_rationals(g));
    if (!h) {
      why = "z - c has no rational primitive";
      return false;
    }
    const DiffCochain x{m, m, g, *h, z};
    why = "constructed preimage has the wrong (I, R)";
    return is_cocycle(k, x) && underlying_I(k, x) == hz.coordinates(g) && curvature_R(k, x) == z;
  });
  run(rep.add("a(H^{m-1}(Q)) lies in the kernel of (I, R)"), samples, [&](std::string& why) {
    RatVec alpha(cm1);
    for (const auto& b : hq_prev.basis()) alpha = alpha + scaled(b, random_rational(rng));
    const DiffCochain x = forms_a(k, m, alpha);
    why = "a(closed form) has nonzero I or R";
    return is_zero(underlying_I(k, x)) && is_zero(curvature_R(k, x));
  });
  run(rep.add("kernel of (I, R) lies in a(H^{m-1}(Q))"), samples, [&](std::string& why) {
    RatVec u = qz.sample(rng);
    u = u - qz.torsion_lift(qz.bockstein(u));
    DiffCochain w = zero_cochain(k, m, m - 1);
    w.c = random_integral(rng, cm1);
    w.h = random_cochain(rng, k.count(m - 2));
    const DiffCochain x = flat_inclusion(k, m, u) + dhat(k, w);
    if (!is_zero(underlying_I(k, x)) || !is_zero(curvature_R(k, x))) {
      why = "sample is not in the kernel";
      return false;
    }
    auto b = solve_integer(d_m1, x.c);
    if (!b) {
      why = "c is not an integral coboundary";
      return false;
    }
    // h + b is closed; replace it by the combination of basis classes.
    const RatVec closed = x.h + to_rationals(*b);
    const RatVec coords = hq_prev.coordinates(closed);
    RatVec alpha(cm1);
    for (size_t i = 0; i < coords.size(); ++i) alpha = alpha + scaled(hq_prev.basis()[i], coords[i]);
    why = "kernel element is not a(alpha) for its de Rham class alpha";
    return equal_classes(k, x, forms_a(k, m, alpha)).has_value();
  });
  auto& wit = rep.add("kernel witnesses: a(g) ~ 0 and a(g/2) !~ 0 for free generators g");
  for (size_t i = 0; i < hz_prev.generators().size(); ++i) {
    if (hz_prev.orders()[i] != 0) continue;
    ++wit.checked;
    const RatVec g = to_rationals(hz_prev.generators()[i]);
    const DiffCochain zero = zero_cochain(k, m, m);
    const bool ok = equal_classes(k, forms_a(k, m, g), zero).has_value() &&
                    !equal_classes(k, forms_a(k, m, scaled(g, Rational(1, 2))), zero).has_value();
    if (!ok) {
      wit.pass = false;
      wit.detail = "generator " + std::to_string(i) + " does not behave as an integral kernel witness";
    }
  }
  rep.facts.emplace_back("independent kernel witnesses", std::to_string(wit.checked));
  return rep;
}

}  // namespace dcoh
