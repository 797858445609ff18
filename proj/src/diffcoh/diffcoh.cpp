#include "dcoh/diffcoh.hpp"

namespace dcoh {

namespace {

void require_same_shape(const DiffCochain& a, const DiffCochain& b) {
  if (a.m != b.m || a.n != b.n || a.c.size() != b.c.size() || a.h.size() != b.h.size() ||
      a.omega.size() != b.omega.size())
    throw std::invalid_argument("differential cochains of different type (m, n or host) cannot be combined");
}

void put(RatMatrix& dst, size_t r0, size_t c0, const IntMatrix& src, int sign) {
  for (size_t i = 0; i < src.rows(); ++i)
    for (size_t j = 0; j < src.cols(); ++j)
      if (sgn(src(i, j)) != 0) dst(r0 + i, c0 + j) = sign * Rational(src(i, j));
}

}  // namespace

void validate(const CellComplex& k, const DiffCochain& x) {
  if (x.m < 1) throw std::invalid_argument("differential cochain: truncation m must be at least 1");
  if (x.c.size() != k.count(x.n) || x.h.size() != k.count(x.n - 1) || x.omega.size() != k.count(x.n))
    throw std::invalid_argument("differential cochain of degree " + std::to_string(x.n) +
                                ": component lengths do not match the complex (expected " +
                                std::to_string(k.count(x.n)) + ", " + std::to_string(k.count(x.n - 1)) + ", " +
                                std::to_string(k.count(x.n)) + ")");
  if (x.n < x.m && !is_zero(x.omega))
    throw std::invalid_argument("differential cochain: omega must vanish in degree " + std::to_string(x.n) +
                                " below m = " + std::to_string(x.m));
}

DiffCochain zero_cochain(const CellComplex& k, int m, int n) {
  return {m, n, IntVec(k.count(n)), RatVec(k.count(n - 1)), RatVec(k.count(n))};
}

DiffCochain operator+(const DiffCochain& a, const DiffCochain& b) {
  require_same_shape(a, b);
  return {a.m, a.n, a.c + b.c, a.h + b.h, a.omega + b.omega};
}

DiffCochain operator-(const DiffCochain& a, const DiffCochain& b) {
  require_same_shape(a, b);
  return {a.m, a.n, a.c - b.c, a.h - b.h, a.omega - b.omega};
}

DiffCochain dhat(const CellComplex& k, const DiffCochain& x) {
  validate(k, x);
  DiffCochain y;
  y.m = x.m;
  y.n = x.n + 1;
  y.c = coboundary_apply(k, x.n, x.c);
  y.h = x.omega - to_rationals(x.c) - coboundary_apply(k, x.n - 1, x.h);
  y.omega = coboundary_apply(k, x.n, x.omega);
  return y;
}

bool is_cocycle(const CellComplex& k, const DiffCochain& x) {
  const DiffCochain d = dhat(k, x);
  return is_zero(d.c) && is_zero(d.h) && is_zero(d.omega);
}

RatVec curvature_R(const CellComplex& k, const DiffCochain& x) {
  if (!is_cocycle(k, x)) throw std::invalid_argument("curvature_R: input is not a dhat-cocycle");
  return x.omega;
}

IntVec underlying_I(const CellComplex& k, const DiffCochain& x) {
  if (!is_cocycle(k, x)) throw std::invalid_argument("underlying_I: input is not a dhat-cocycle");
  return IntegralCohomology(k.coboundary(x.n - 1), k.coboundary(x.n)).coordinates(x.c);
}

DiffCochain forms_a(const CellComplex& k, int m, const RatVec& alpha, int n) {
  if (n < 0) n = m;
  if (n < m) throw std::invalid_argument("forms_a: degree " + std::to_string(n) + " is below m = " + std::to_string(m));
  if (alpha.size() != k.count(n - 1)) throw std::invalid_argument("forms_a: alpha has the wrong length");
  DiffCochain x{m, n, IntVec(k.count(n)), alpha, coboundary_apply(k, n - 1, alpha)};
  return x;
}

std::optional<DiffCochain> equal_classes(const CellComplex& k, const DiffCochain& x, const DiffCochain& y) {
  require_same_shape(x, y);
  validate(k, x);
  validate(k, y);
  const DiffCochain diff = x - y;
  const int n = x.n, m = x.m;
  const size_t cn = k.count(n), cn1 = k.count(n - 1), cn2 = k.count(n - 2);
  const bool with_eta = n - 1 >= m;
  const size_t rows = cn + cn1 + cn;
  // Unknowns: b (integral, n-1), kappa (rational, n-2), eta (rational, n-1, only at or above m).
  // dhat(b, kappa, eta) = (db, eta - b - d kappa, d eta).
  RatMatrix a_int_q(rows, cn1);
  put(a_int_q, 0, 0, k.coboundary(n - 1), 1);
  for (size_t i = 0; i < cn1; ++i) a_int_q(cn + i, i) = -1;
  RatMatrix a_rat(rows, cn2 + (with_eta ? cn1 : 0));
  put(a_rat, cn, 0, k.coboundary(n - 2), -1);
  if (with_eta) {
    for (size_t i = 0; i < cn1; ++i) a_rat(cn + i, cn2 + i) = 1;
    put(a_rat, cn + cn1, cn2, k.coboundary(n - 1), 1);
  }
  RatVec rhs = to_rationals(diff.c);
  rhs.insert(rhs.end(), diff.h.begin(), diff.h.end());
  rhs.insert(rhs.end(), diff.omega.begin(), diff.omega.end());
  auto sol = mixed_solve(to_integer(a_int_q), a_rat, rhs);
  if (!sol) return std::nullopt;
  DiffCochain w{m, n - 1, sol->integral, RatVec(sol->rational.begin(), sol->rational.begin() + static_cast<long>(cn2)),
                RatVec(cn1)};
  if (with_eta) w.omega.assign(sol->rational.begin() + static_cast<long>(cn2), sol->rational.end());
  if (!(dhat(k, w) == diff)) throw std::logic_error("equal_classes: witness failed verification");
  return w;
}

std::optional<RatVec> flat_part(const CellComplex& k, const DiffCochain& x) {
  if (!is_cocycle(k, x)) throw std::invalid_argument("flat_part: input is not a dhat-cocycle");
  if (!is_zero(x.omega)) return std::nullopt;
  return x.h;
}

DiffCochain flat_inclusion(const CellComplex& k, int m, const RatVec& u) {
  if (u.size() != k.count(m - 1)) throw std::invalid_argument("flat_inclusion: cochain has the wrong length");
  const RatVec du = coboundary_apply(k, m - 1, u);
  if (!is_integral(du)) throw std::invalid_argument("flat_inclusion: du is not integral, so u is not a Q/Z cocycle");
  return {m, m, to_integers(-du), u, RatVec(k.count(m))};
}

// ---------------------------------------------------------------- Q/Z cohomology

QZCohomology::QZCohomology(const CellComplex& k, int j)
    : k_(&k),
      j_(j),
      d_prev_(k.coboundary(j - 1)),
      d_(k.coboundary(j)),
      above_(k.coboundary(j), k.coboundary(j + 1)) {
  RationalCohomology hq(to_rational(d_prev_), to_rational(d_));
  betti_ = hq.dimension();
  rational_basis_ = hq.basis();
}

FgAbGroup QZCohomology::group() const {
  FgAbGroup g;
  g.ring = Ring::Z;
  g.divisible = betti_;
  g.torsion = above_.group().torsion;
  return g;
}

bool QZCohomology::is_element(const RatVec& u) const {
  return u.size() == k_->count(j_) && is_integral(to_rational(d_) * u);
}

bool QZCohomology::equal(const RatVec& u, const RatVec& v) const {
  if (!is_element(u) || !is_element(v)) throw std::invalid_argument("QZCohomology: not a Q/Z cocycle");
  const size_t n = u.size();
  return mixed_solve(IntMatrix::identity(n), to_rational(d_prev_), u - v).has_value();
}

IntVec QZCohomology::bockstein(const RatVec& u) const {
  if (!is_element(u)) throw std::invalid_argument("QZCohomology: not a Q/Z cocycle");
  return above_.coordinates(to_integers(-(to_rational(d_) * u)));
}

RatVec QZCohomology::torsion_lift(const IntVec& coords) const {
  // u = y / t with d y = -t g, so that the Bockstein [-du] equals [g].
  const IntVec g = above_.representative(coords);
  Integer t = 1;
  for (size_t i = 0; i < coords.size(); ++i) {
    if (sgn(coords[i]) == 0) continue;
    if (above_.orders()[i] == 0) throw std::invalid_argument("torsion_lift: class has a free component");
    t = lcm(t, above_.orders()[i]);
  }
  auto y = solve_integer(d_, to_integers(scaled(to_rationals(g), Rational(-t))));
  if (!y) throw std::logic_error("torsion_lift: t g is not a coboundary");
  return scaled(to_rationals(*y), Rational(1) / Rational(t));
}

RatVec QZCohomology::sample(std::mt19937_64& rng) const {
  RatVec u(k_->count(j_));
  for (const auto& b : rational_basis_) u = u + scaled(b, random_rational(rng));
  const auto& orders = above_.orders();
  IntVec coords(orders.size());
  bool torsion = false;
  for (size_t i = 0; i < orders.size(); ++i)
    if (orders[i] != 0) {
      coords[i] = std::uniform_int_distribution<long>(0, orders[i].get_si() - 1)(rng);
      torsion = torsion || sgn(coords[i]) != 0;
    }
  if (torsion) u = u + torsion_lift(coords);
  u = u + to_rationals(random_integral(rng, u.size()));
  u = u + to_rational(d_prev_) * random_cochain(rng, k_->count(j_ - 1));
  return u;
}

// ---------------------------------------------------------------- sampling

Rational random_rational(std::mt19937_64& rng, long num_bound, long den_bound) {
  Rational q(std::uniform_int_distribution<long>(-num_bound, num_bound)(rng),
             std::uniform_int_distribution<long>(1, den_bound)(rng));
  q.canonicalize();
  return q;
}

RatVec random_cochain(std::mt19937_64& rng, size_t size) {
  RatVec v(size);
  for (auto& x : v) x = random_rational(rng);
  return v;
}

IntVec random_integral(std::mt19937_64& rng, size_t size, long bound) {
  IntVec v(size);
  for (auto& x : v) x = std::uniform_int_distribution<long>(-bound, bound)(rng);
  return v;
}

DiffCochain random_cocycle(const CellComplex& k, int m, int n, std::mt19937_64& rng) {
  const IntMatrix z = integer_kernel(k.coboundary(n));
  const IntVec coeffs = random_integral(rng, z.cols(), 3);
  DiffCochain x = zero_cochain(k, m, n);
  x.c = z * coeffs;
  x.h = random_cochain(rng, k.count(n - 1));
  if (n >= m) {
    x.omega = to_rationals(x.c) + coboundary_apply(k, n - 1, x.h);
  } else {
    // Below m the cocycle condition forces c + dh = 0.
    const auto y = random_integral(rng, k.count(n - 1));
    x.c = coboundary_apply(k, n - 1, y);
    x.h = -to_rationals(y);
  }
  return x;
}

// ---------------------------------------------------------------- reports

bool Report::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

CheckResult& Report::add(const std::string& name) {
  checks.push_back({name, true, 0, {}});
  return checks.back();
}

}  // namespace dcoh
