#include "dcoh/lattice.hpp"

#include <cmath>
#include <set>

namespace dcoh {

void LatticeLineBundle::validate() const {
  if (k.dim() != 2) throw std::invalid_argument("lattice bundle: the complex must be 2-dimensional");
  if (n.size() != k.count(2)) throw std::invalid_argument("lattice bundle: n needs one entry per 2-cell");
  if (a.size() != k.count(1)) throw std::invalid_argument("lattice bundle: a needs one entry per 1-cell");
  if (!is_zero(coboundary_apply(k, 2, n))) throw std::invalid_argument("lattice bundle: dn != 0");
}

DiffCochain lattice_class(const LatticeLineBundle& l) {
  l.validate();
  return {2, 2, l.n, l.a, coboundary_apply(l.k, 1, l.a) + to_rationals(l.n)};
}

LatticeLineBundle gauge_transform(const LatticeLineBundle& l, const RatVec& lambda, const IntVec& mu) {
  l.validate();
  if (lambda.size() != l.k.count(0) || mu.size() != l.k.count(1))
    throw std::invalid_argument("gauge_transform: lambda must be a 0-cochain and mu a 1-cochain");
  LatticeLineBundle g = l;
  g.a = l.a + coboundary_apply(l.k, 0, lambda) + to_rationals(mu);
  g.n = l.n - coboundary_apply(l.k, 1, mu);
  return g;
}

Rational differential_character(const LatticeLineBundle& l, const IntVec& z) {
  l.validate();
  if (z.size() != l.k.count(1)) throw std::invalid_argument("differential_character: z must be a 1-chain");
  if (!is_zero(l.k.boundary_matrix(1) * z)) throw std::invalid_argument("differential_character: z is not a cycle");
  Rational s = 0;
  for (size_t e = 0; e < z.size(); ++e) s += l.a[e] * z[e];
  return frac(s);
}

bool cs_property_check(const LatticeLineBundle& l, const IntVec& w) {
  l.validate();
  if (w.size() != l.k.count(2)) throw std::invalid_argument("cs_property_check: w must be a 2-chain");
  const IntVec boundary = l.k.boundary_matrix(2) * w;
  const RatVec omega = lattice_class(l).omega;
  Rational pairing = 0;
  for (size_t f = 0; f < w.size(); ++f) pairing += omega[f] * w[f];
  return differential_character(l, boundary) == frac(pairing);
}

CycleBasis homology_cycles(const CellComplex& k, int d) {
  const IntegralCohomology h(k.boundary_matrix(d + 1), k.boundary_matrix(d));
  return {h.generators(), h.orders()};
}

IntVec dual_cocycle(const CellComplex& k, int d, const CycleBasis& basis, size_t which) {
  const IntMatrix cob = k.coboundary(d);
  std::vector<size_t> free;
  for (size_t i = 0; i < basis.cycles.size(); ++i)
    if (basis.orders[i] == 0) free.push_back(i);
  if (which >= basis.cycles.size() || basis.orders[which] != 0)
    throw std::invalid_argument("dual_cocycle: cycle " + std::to_string(which) + " is not a free generator");
  IntMatrix sys(cob.rows() + free.size(), k.count(d));
  IntVec rhs(sys.rows());
  for (size_t i = 0; i < cob.rows(); ++i)
    for (size_t j = 0; j < cob.cols(); ++j) sys(i, j) = cob(i, j);
  for (size_t r = 0; r < free.size(); ++r) {
    for (size_t j = 0; j < sys.cols(); ++j) sys(cob.rows() + r, j) = basis.cycles[free[r]][j];
    rhs[cob.rows() + r] = free[r] == which ? 1 : 0;
  }
  auto c = solve_integer(sys, rhs);
  if (!c) throw std::logic_error("dual_cocycle: no integral dual cocycle");
  return *c;
}

LatticeLineBundle monopole(const CellComplex& k, long charge) {
  const CycleBasis top = homology_cycles(k, 2);
  if (top.cycles.size() != 1 || top.orders[0] != 0)
    throw std::invalid_argument("monopole: the surface is not closed and oriented");
  const IntegralCohomology h2(k.coboundary(1), k.coboundary(2));
  if (h2.generators().size() != 1 || h2.orders()[0] != 0)
    throw std::invalid_argument("monopole: H^2 is not Z");
  return {k, scaled(h2.generators()[0], Integer(charge)), RatVec(k.count(1))};
}

LatticeLineBundle wilson_lines(const CellComplex& k, const std::vector<Rational>& theta) {
  const CycleBasis h1 = homology_cycles(k, 1);
  LatticeLineBundle l{k, IntVec(k.count(2)), RatVec(k.count(1))};
  size_t t = 0;
  for (size_t i = 0; i < h1.cycles.size() && t < theta.size(); ++i) {
    if (h1.orders[i] != 0) continue;
    l.a = l.a + scaled(to_rationals(dual_cocycle(k, 1, h1, i)), theta[t++]);
  }
  if (t != theta.size()) throw std::invalid_argument("wilson_lines: more angles than free 1-cycles");
  return l;
}

LatticeLineBundle random_bundle(const CellComplex& k, std::mt19937_64& rng) {
  LatticeLineBundle l{k, random_integral(rng, k.count(2), 3), random_cochain(rng, k.count(1))};
  l.validate();
  return l;
}

// ---------------------------------------------------------------- discretization

namespace {

constexpr double kConvergence = 1e-9;

struct RankOneField {
  std::vector<BoundExpr> a;  // per path coordinate
  BoundExpr f;               // curvature coefficient on (base0, base1)
  std::vector<FormIndex> fiber_index;
  std::vector<int> fiber_sign;
  std::vector<BoundExpr> fiber_coeff;  // du-components of F, per base direction
  int ui = -1;
  size_t b0 = 0, b1 = 0;
  size_t dims = 0;
};

RankOneField bind_rank_one(const SmoothConnection& c, int ui) {
  c.validate();
  if (c.rank != 1) throw std::invalid_argument("cycle map check: only rank-1 connections are supported");
  RankOneField r;
  r.ui = ui;
  r.dims = c.coords.size();
  std::vector<size_t> base;
  for (size_t i = 0; i < c.coords.size(); ++i)
    if (static_cast<int>(i) != ui) base.push_back(i);
  if (base.size() != 2) throw std::invalid_argument("cycle map check: the base must have two coordinates");
  r.b0 = base[0];
  r.b1 = base[1];
  for (size_t mu = 0; mu < c.coords.size(); ++mu) {
    if (!c.a[mu](0, 0).im.is_zero())
      throw std::invalid_argument("cycle map check: A must be real (2pi-normalized U(1) connection)");
    r.a.emplace_back(c.a[mu](0, 0).re, c.coords);
  }
  const MatForm f = curvature(c);
  const auto find = [&](int i, int j) {
    const auto it = f.comp.find(FormIndex{i, j});
    return it == f.comp.end() ? Expr() : it->second(0, 0).re;
  };
  r.f = BoundExpr(find(static_cast<int>(r.b0), static_cast<int>(r.b1)), c.coords);
  if (ui >= 0)
    for (size_t b : base) {
      const int lo = std::min(ui, static_cast<int>(b)), hi = std::max(ui, static_cast<int>(b));
      // F = F_{lo,hi} dlo ^ dhi; du ^ db coefficient is +F when u comes first.
      r.fiber_coeff.emplace_back(find(lo, hi), c.coords);
      r.fiber_sign.push_back(ui < static_cast<int>(b) ? 1 : -1);
    }
  return r;
}

std::vector<double> embed(const RankOneField& r, double u, const std::vector<double>& p) {
  std::vector<double> x(r.dims);
  if (r.ui >= 0) x[static_cast<size_t>(r.ui)] = u;
  x[r.b0] = p[0];
  x[r.b1] = p[1];
  return x;
}

// Line integral of A(u, .) along the segment p0 -> p1.
double edge_integral(const RankOneField& r, double u, const std::vector<double>& p0, const std::vector<double>& p1,
                     int steps) {
  double s = 0;
  for (const auto& [tau, w] : gauss_legendre01(steps)) {
    const std::vector<double> p{p0[0] + tau * (p1[0] - p0[0]), p0[1] + tau * (p1[1] - p0[1])};
    const auto x = embed(r, u, p);
    s += w * (r.a[r.b0](x) * (p1[0] - p0[0]) + r.a[r.b1](x) * (p1[1] - p0[1]));
  }
  return s;
}

// Integral of F(u, .) over the affine triangle (collapsed coordinates).
double face_integral(const RankOneField& r, double u, const std::array<std::vector<double>, 3>& p, int steps) {
  const double e1x = p[1][0] - p[0][0], e1y = p[1][1] - p[0][1];
  const double e2x = p[2][0] - p[0][0], e2y = p[2][1] - p[0][1];
  const double det = e1x * e2y - e1y * e2x;
  const auto nodes = gauss_legendre01(steps);
  double s = 0;
  for (const auto& [xi, wx] : nodes)
    for (const auto& [zeta, wz] : nodes) {
      const double eta = (1 - xi) * zeta;
      const std::vector<double> q{p[0][0] + xi * e1x + eta * e2x, p[0][1] + xi * e1y + eta * e2y};
      s += wx * wz * (1 - xi) * r.f(embed(r, u, q));
    }
  return s * det;
}

// Transgression 1-form integrated over u in [0,1] and along the edge.
double transgression_edge(const RankOneField& r, const std::vector<double>& p0, const std::vector<double>& p1,
                          int steps) {
  const auto nodes = gauss_legendre01(steps);
  const double dx[2] = {p1[0] - p0[0], p1[1] - p0[1]};
  double s = 0;
  for (const auto& [u, wu] : nodes)
    for (const auto& [tau, wt] : nodes) {
      const std::vector<double> p{p0[0] + tau * dx[0], p0[1] + tau * dx[1]};
      const auto x = embed(r, u, p);
      for (size_t j = 0; j < 2; ++j) s += wu * wt * r.fiber_sign[j] * r.fiber_coeff[j](x) * dx[j];
    }
  return s;
}

void check_chart(const CellComplex& k, const SurfaceChart& chart) {
  if (k.dim() != 2) throw std::invalid_argument("surface chart: the complex must be 2-dimensional");
  if (chart.edges.size() != k.count(1) || chart.faces.size() != k.count(2))
    throw std::invalid_argument("surface chart: one placement per edge and per triangle is required");
  for (const auto& e : chart.edges)
    for (const auto& p : e)
      if (p.size() != 2) throw std::invalid_argument("surface chart: points must have two coordinates");
  for (const auto& f : chart.faces)
    for (const auto& p : f)
      if (p.size() != 2) throw std::invalid_argument("surface chart: points must have two coordinates");
}

Discretization discretize_at(const RankOneField& r, double u, const CellComplex& k, const SurfaceChart& chart,
                             int steps) {
  Discretization d;
  d.converged = true;
  for (const auto& e : chart.edges) {
    const double a = edge_integral(r, u, e[0], e[1], steps);
    d.converged = d.converged && std::abs(a - edge_integral(r, u, e[0], e[1], 2 * steps)) < kConvergence;
    d.edge_integrals.push_back(a);
  }
  for (const auto& f : chart.faces) {
    const double a = face_integral(r, u, f, steps);
    d.converged = d.converged && std::abs(a - face_integral(r, u, f, 2 * steps)) < kConvergence;
    d.face_integrals.push_back(a);
  }
  const std::vector<double> da = coboundary_apply(k, 1, d.edge_integrals);
  for (size_t f = 0; f < da.size(); ++f) {
    const double v = d.face_integrals[f] - da[f];
    const double rounded = std::round(v);
    d.max_residual = std::max(d.max_residual, std::abs(v - rounded));
    d.n.emplace_back(static_cast<long>(rounded));
  }
  return d;
}

Rational lift(double x, double& worst) {
  const Rational q = nearest_rational(x, 1000000);
  worst = std::max(worst, std::abs(q.get_d() - x));
  return q;
}

CycleMapReport compare(const CellComplex& k, const DiffCochain& diff) {
  CycleMapReport r;
  r.converged = true;
  auto w = equal_classes(k, diff, zero_cochain(k, 2, 2));
  r.equal = w.has_value();
  r.witness = w;
  r.detail = r.equal ? "class(nabla_1) - class(nabla_0) = a(transgression), witness verified"
                     : "difference is not dhat-exact";
  return r;
}

void require_same_underlying(const CellComplex& k, const IntVec& n0, const IntVec& n1) {
  const IntegralCohomology h2(k.coboundary(1), k.coboundary(2));
  if (h2.coordinates(n0) != h2.coordinates(n1))
    throw std::invalid_argument(
        "cycle map check: the underlying class changes between the ends, which no path of connections can do");
}

}  // namespace

Discretization discretize(const SmoothConnection& conn, const CellComplex& k, const SurfaceChart& chart, int steps) {
  check_chart(k, chart);
  const RankOneField r = bind_rank_one(conn, -1);
  return discretize_at(r, 0, k, chart, steps);
}

CycleMapReport cycle_map_homotopy_check(const LatticeLineBundle& l0, const LatticeLineBundle& l1, const RatVec& tau) {
  l0.validate();
  l1.validate();
  require_same_underlying(l0.k, l0.n, l1.n);
  return compare(l0.k, lattice_class(l1) - lattice_class(l0) - forms_a(l0.k, 2, tau));
}

CycleMapReport cycle_map_homotopy_check(const SmoothConnection& path, const CellComplex& k, const SurfaceChart& chart,
                                        int steps, const std::string& fiber) {
  check_chart(k, chart);
  const int ui = path.coord_index(fiber);
  if (ui < 0) throw std::invalid_argument("cycle map check: path has no coordinate '" + fiber + "'");
  const RankOneField r = bind_rank_one(path, ui);
  const Discretization d0 = discretize_at(r, 0, k, chart, steps);
  const Discretization d1 = discretize_at(r, 1, k, chart, steps);
  if (d0.max_residual > 1e-6 || d1.max_residual > 1e-6)
    throw std::invalid_argument("cycle map check: face integrals of F minus da are not integers (residual " +
                                std::to_string(std::max(d0.max_residual, d1.max_residual)) + ")");
  require_same_underlying(k, d0.n, d1.n);
  std::vector<double> tau;
  bool converged = d0.converged && d1.converged;
  for (const auto& e : chart.edges) {
    const double t = transgression_edge(r, e[0], e[1], steps);
    converged = converged && std::abs(t - transgression_edge(r, e[0], e[1], 2 * steps)) < kConvergence;
    tau.push_back(t);
  }
  // Numeric difference class(1) - class(0) - a(tau), lifted to rationals.
  std::vector<double> h(k.count(1)), omega(k.count(2));
  for (size_t e = 0; e < h.size(); ++e) h[e] = d1.edge_integrals[e] - d0.edge_integrals[e] - tau[e];
  const std::vector<double> dh = coboundary_apply(k, 1, h);
  double worst = 0;
  DiffCochain diff = zero_cochain(k, 2, 2);
  diff.c = d1.n - d0.n;
  for (size_t e = 0; e < h.size(); ++e) diff.h[e] = lift(h[e], worst);
  for (size_t f = 0; f < omega.size(); ++f) {
    omega[f] = dh[f] + Integer(d1.n[f] - d0.n[f]).get_d();
    diff.omega[f] = lift(omega[f], worst);
  }
  CycleMapReport rep = compare(k, diff);
  rep.converged = converged;
  rep.max_lift_error = worst;
  if (!converged) rep.detail += " (quadrature did not converge)";
  return rep;
}

SurfaceChart csaszar_torus_chart(const CellComplex& k) {
  auto place = [](int x, int y) {
    return std::vector<double>{(x + 3.0 * y) / 7.0, (y - 2.0 * x) / 7.0};
  };
  auto mod7 = [](int v) { return ((v % 7) + 7) % 7; };
  if (k.dim() != 2 || k.count(0) != 7 || k.count(2) != 14)
    throw std::invalid_argument("csaszar_torus_chart: not the 7-vertex torus");
  SurfaceChart chart;
  for (size_t e = 0; e < k.count(1); ++e) {
    const auto& v = k.cell(1, e).vertices;
    static const int dx[7] = {0, 1, -1, 0, 0, 1, -1}, dy[7] = {0, 0, 1, 1, -1, -1, 0};
    const int diff = mod7(v[1] - v[0]);
    chart.edges.push_back({place(v[0], 0), place(v[0] + dx[diff], dy[diff])});
  }
  for (size_t f = 0; f < k.count(2); ++f) {
    const auto& v = k.cell(2, f).vertices;
    const std::set<int> s(v.begin(), v.end());
    std::map<int, std::vector<double>> pos;
    for (int i = 0; i < 7 && pos.empty(); ++i) {
      if (s == std::set<int>{i, mod7(i + 1), mod7(i + 3)}) {
        pos[i] = place(i, 0);
        pos[mod7(i + 1)] = place(i + 1, 0);
        pos[mod7(i + 3)] = place(i, 1);
      } else if (s == std::set<int>{i, mod7(i + 2), mod7(i + 3)}) {
        pos[i] = place(i, 0);
        pos[mod7(i + 2)] = place(i - 1, 1);
        pos[mod7(i + 3)] = place(i, 1);
      }
    }
    if (pos.empty()) throw std::invalid_argument("csaszar_torus_chart: unexpected triangle " + k.cell(2, f).label);
    chart.faces.push_back({pos.at(v[0]), pos.at(v[1]), pos.at(v[2])});
  }
  return chart;
}

}  // namespace dcoh
