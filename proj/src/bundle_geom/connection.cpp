#include "dcoh/connection.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace dcoh {

namespace {

// A_mu compiled entrywise against the connection's coordinates.
class BoundMatrix {
 public:
  BoundMatrix(const CMatrix& m, const std::vector<std::string>& coords) : n_(m.size()) {
    for (size_t i = 0; i < n_; ++i)
      for (size_t j = 0; j < n_; ++j) {
        re_.emplace_back(m(i, j).re, coords);
        im_.emplace_back(m(i, j).im, coords);
      }
  }
  Eigen::MatrixXcd operator()(const double* x) const {
    Eigen::MatrixXcd r(n_, n_);
    for (size_t i = 0; i < n_; ++i)
      for (size_t j = 0; j < n_; ++j) r(i, j) = {re_[i * n_ + j](x), im_[i * n_ + j](x)};
    return r;
  }

 private:
  size_t n_;
  std::vector<BoundExpr> re_, im_;
};

std::vector<BoundMatrix> bind_all(const SmoothConnection& c) {
  std::vector<BoundMatrix> out;
  for (const auto& m : c.a) out.emplace_back(m, c.coords);
  return out;
}

std::vector<double> random_point(const SmoothConnection& c, std::mt19937_64& rng, double margin) {
  std::vector<double> x(c.coords.size());
  for (size_t i = 0; i < x.size(); ++i) {
    const auto [lo, hi] = c.domain[i];
    const double pad = std::min(margin, (hi - lo) / 4);
    x[i] = std::uniform_real_distribution<double>(lo + pad, hi - pad)(rng);
  }
  return x;
}

double factorial(int k) {
  double f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

}  // namespace

void SmoothConnection::validate() const {
  if (rank == 0) throw std::invalid_argument("connection: rank must be positive");
  if (coords.empty()) throw std::invalid_argument("connection: no coordinates");
  if (domain.size() != coords.size() || a.size() != coords.size())
    throw std::invalid_argument("connection: domain and A must have one entry per coordinate");
  for (size_t i = 0; i < coords.size(); ++i) {
    if (!(domain[i].first < domain[i].second))
      throw std::invalid_argument("connection: empty interval for coordinate '" + coords[i] + "'");
    if (a[i].size() != rank)
      throw std::invalid_argument("connection: A_" + coords[i] + " is not " + std::to_string(rank) + "x" +
                                  std::to_string(rank));
    for (size_t r = 0; r < rank; ++r)
      for (size_t s = 0; s < rank; ++s) {
        BoundExpr(a[i](r, s).re, coords);  // rejects unknown identifiers
        BoundExpr(a[i](r, s).im, coords);
      }
  }
  for (size_t i = 0; i < coords.size(); ++i)
    for (size_t j = i + 1; j < coords.size(); ++j)
      if (coords[i] == coords[j]) throw std::invalid_argument("connection: duplicate coordinate '" + coords[i] + "'");
}

int SmoothConnection::coord_index(const std::string& name) const {
  const auto it = std::find(coords.begin(), coords.end(), name);
  return it == coords.end() ? -1 : static_cast<int>(it - coords.begin());
}

bool SmoothConnection::contains(const std::vector<double>& x) const {
  for (size_t i = 0; i < coords.size(); ++i)
    if (x[i] < domain[i].first - 1e-12 || x[i] > domain[i].second + 1e-12) return false;
  return true;
}

MatForm SmoothConnection::as_form() const {
  MatForm f;
  f.rank = rank;
  f.degree = 1;
  for (size_t mu = 0; mu < a.size(); ++mu)
    if (!a[mu].is_zero()) f.comp.emplace(FormIndex{static_cast<int>(mu)}, a[mu]);
  return f;
}

Eigen::MatrixXcd SmoothConnection::value(size_t mu, const std::vector<double>& x) const {
  return BoundMatrix(a.at(mu), coords)(x.data());
}

SmoothConnection trivial_connection(size_t rank, std::vector<std::string> coords,
                                    std::vector<std::pair<double, double>> domain) {
  SmoothConnection c;
  c.rank = rank;
  c.a.assign(coords.size(), CMatrix(rank));
  c.coords = std::move(coords);
  c.domain = std::move(domain);
  c.validate();
  return c;
}

SmoothConnection direct_sum(const SmoothConnection& x, const SmoothConnection& y) {
  if (x.coords != y.coords) throw std::invalid_argument("direct_sum: connections on different coordinates");
  SmoothConnection c = x;
  c.rank = x.rank + y.rank;
  for (size_t mu = 0; mu < x.coords.size(); ++mu) {
    CMatrix m(c.rank);
    for (size_t i = 0; i < x.rank; ++i)
      for (size_t j = 0; j < x.rank; ++j) m(i, j) = x.a[mu](i, j);
    for (size_t i = 0; i < y.rank; ++i)
      for (size_t j = 0; j < y.rank; ++j) m(x.rank + i, x.rank + j) = y.a[mu](i, j);
    c.a[mu] = m;
  }
  return c;
}

MatForm curvature(const SmoothConnection& conn) {
  const MatForm a = conn.as_form();
  MatForm f = exterior_d(a, conn.coords) + wedge(a, a);
  f.degree = 2;
  for (auto it = f.comp.begin(); it != f.comp.end();) it = it->second.is_zero() ? f.comp.erase(it) : std::next(it);
  return f;
}

CurvatureProbe curvature_fd_check(const SmoothConnection& conn, size_t probes, uint64_t seed) {
  conn.validate();
  const MatForm f = curvature(conn);
  const size_t d = conn.coords.size();
  std::map<FormIndex, BoundMatrix> fb;
  for (const auto& [idx, m] : f.comp) fb.emplace(idx, BoundMatrix(m, conn.coords));
  const auto ab = bind_all(conn);
  std::mt19937_64 rng(seed);
  CurvatureProbe r;
  const double h = 1e-5;
  for (size_t p = 0; p < probes; ++p) {
    const std::vector<double> x = random_point(conn, rng, 2 * h);
    for (size_t mu = 0; mu < d; ++mu)
      for (size_t nu = mu + 1; nu < d; ++nu) {
        auto partial = [&](size_t dir, size_t comp) {
          std::vector<double> xp = x, xm = x;
          xp[dir] += h;
          xm[dir] -= h;
          return Eigen::MatrixXcd((ab[comp](xp.data()) - ab[comp](xm.data())) / (2 * h));
        };
        const Eigen::MatrixXcd am = ab[mu](x.data()), an = ab[nu](x.data());
        const Eigen::MatrixXcd fd = partial(mu, nu) - partial(nu, mu) + am * an - an * am;
        const auto it = fb.find(FormIndex{static_cast<int>(mu), static_cast<int>(nu)});
        const Eigen::MatrixXcd sym =
            it == fb.end() ? Eigen::MatrixXcd::Zero(conn.rank, conn.rank) : it->second(x.data());
        const double err = (sym - fd).norm() / std::max(1.0, sym.norm());
        r.max_rel_error = std::max(r.max_rel_error, err);
      }
    ++r.probes;
  }
  r.pass = r.max_rel_error < 1e-6;
  return r;
}

BGradedForm chern_character_form(const SmoothConnection& conn) {
  conn.validate();
  BGradedForm ch;
  ch.coords = conn.coords;
  Form zero_term;
  zero_term.comp.emplace(FormIndex{}, CExpr(Expr(static_cast<long>(conn.rank))));
  ch.terms.push_back({0, zero_term});
  const MatForm f = curvature(conn);
  MatForm power = f;
  for (int k = 1; 2 * k <= static_cast<int>(conn.coords.size()); ++k) {
    if (k > 1) power = wedge(power, f);
    if (power.comp.empty()) break;
    Form t = trace(power);
    t = scale(t, Rational(1) / Rational(static_cast<long>(factorial(k))));
    ch.terms.push_back({k, t});
  }
  return ch;
}

double closedness_residual(const BGradedForm& ch, const SmoothConnection& conn, size_t samples, uint64_t seed) {
  std::mt19937_64 rng(seed);
  double r = 0;
  std::vector<Form> ds;
  for (const auto& t : ch.terms) ds.push_back(exterior_d(t.form, ch.coords));
  for (size_t s = 0; s < samples; ++s) {
    const auto x = random_point(conn, rng, 0);
    for (const auto& d : ds)
      for (const auto& [idx, v] : evaluate(d, ch.coords, x)) r = std::max(r, std::abs(v));
  }
  return r;
}

std::vector<std::pair<double, double>> gauss_legendre01(int n) {
  if (n < 1) throw std::invalid_argument("Gauss-Legendre: at least one node required");
  std::vector<std::pair<double, double>> nw;
  const auto un = static_cast<unsigned>(n);
  for (int i = 1; i <= n; ++i) {
    double x = std::cos(std::numbers::pi * (i - 0.25) / (n + 0.5));
    double dp = 1;
    for (int it = 0; it < 100; ++it) {
      const double p = std::legendre(un, x);
      const double pm = n > 1 ? std::legendre(un - 1, x) : 1.0;
      dp = n * (x * p - pm) / (x * x - 1);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double p = std::legendre(un, x), pm = n > 1 ? std::legendre(un - 1, x) : 1.0;
    dp = n * (x * p - pm) / (x * x - 1);
    const double w = 2 / ((1 - x * x) * dp * dp);
    nw.emplace_back((1 - x) / 2, w / 2);
  }
  std::sort(nw.begin(), nw.end());
  return nw;
}

namespace {

struct FiberTerm {
  int k;
  FormIndex base_index;
  int sign;
  BoundExpr re, im;
};

std::vector<FiberTerm> fiber_terms(const SmoothConnection& path, int ui) {
  const BGradedForm ch = chern_character_form(path);
  std::vector<FiberTerm> out;
  for (const auto& t : ch.terms) {
    if (t.k == 0) continue;
    for (const auto& [idx, e] : t.form.comp) {
      const auto pos = std::find(idx.begin(), idx.end(), ui);
      if (pos == idx.end()) continue;
      FormIndex base;
      for (int i : idx)
        if (i != ui) base.push_back(i < ui ? i : i - 1);
      const int sign = (pos - idx.begin()) % 2 == 0 ? 1 : -1;
      out.push_back({t.k, base, sign, BoundExpr(e.re, path.coords), BoundExpr(e.im, path.coords)});
    }
  }
  return out;
}

std::vector<Transgression::Term> integrate_fiber(const std::vector<FiberTerm>& ft, int ui,
                                                 const std::vector<double>& base, int steps) {
  std::vector<Transgression::Term> out;
  const auto nodes = gauss_legendre01(steps);
  std::vector<double> x(base.size() + 1);
  for (const auto& t : ft) {
    std::complex<double> s = 0;
    for (const auto& [u, w] : nodes) {
      for (size_t i = 0, j = 0; i < x.size(); ++i) x[i] = static_cast<int>(i) == ui ? u : base[j++];
      s += w * std::complex<double>(t.re(x), t.im(x));
    }
    out.push_back({t.k, t.base_index, {s * static_cast<double>(t.sign)}});
  }
  return out;
}

int fiber_index(const SmoothConnection& path, const std::string& fiber) {
  path.validate();
  const int ui = path.coord_index(fiber);
  if (ui < 0) throw std::invalid_argument("transgression: path has no fiber coordinate '" + fiber + "'");
  const auto [lo, hi] = path.domain[static_cast<size_t>(ui)];
  if (lo > 0 || hi < 1)
    throw std::invalid_argument("transgression: domain of '" + fiber + "' must contain [0, 1]");
  return ui;
}

}  // namespace

std::vector<Transgression::Term> transgression_at(const SmoothConnection& path, const std::vector<double>& base,
                                                  int steps, const std::string& fiber) {
  const int ui = fiber_index(path, fiber);
  if (base.size() + 1 != path.coords.size()) throw std::invalid_argument("transgression_at: wrong base dimension");
  return integrate_fiber(fiber_terms(path, ui), ui, base, steps);
}

Transgression transgress_ch(const SmoothConnection& path, int steps, const std::string& fiber, size_t grid) {
  const int ui = fiber_index(path, fiber);
  Transgression tr;
  tr.steps = steps;
  std::vector<std::pair<double, double>> box;
  for (size_t i = 0; i < path.coords.size(); ++i)
    if (static_cast<int>(i) != ui) {
      tr.base_coords.push_back(path.coords[i]);
      box.push_back(path.domain[i]);
    }
  // Interior grid of the base box.
  size_t total = 1;
  for (size_t i = 0; i < box.size(); ++i) total *= grid;
  for (size_t p = 0; p < total; ++p) {
    std::vector<double> x(box.size());
    size_t rest = p;
    for (size_t i = 0; i < box.size(); ++i) {
      const double frac = (static_cast<double>(rest % grid) + 0.5) / static_cast<double>(grid);
      rest /= grid;
      x[i] = box[i].first + frac * (box[i].second - box[i].first);
    }
    tr.points.push_back(x);
  }
  const auto ft = fiber_terms(path, ui);
  for (const auto& t : ft) tr.terms.push_back({t.k, t.base_index, {}});
  for (const auto& x : tr.points) {
    const auto a = integrate_fiber(ft, ui, x, steps);
    const auto b = integrate_fiber(ft, ui, x, 2 * steps);
    for (size_t i = 0; i < ft.size(); ++i) {
      tr.terms[i].values.push_back(a[i].values[0]);
      tr.sup_norm = std::max(tr.sup_norm, std::abs(a[i].values[0]));
      tr.change_on_doubling = std::max(tr.change_on_doubling, std::abs(a[i].values[0] - b[i].values[0]));
    }
  }
  tr.converged = tr.change_on_doubling < 1e-9;
  return tr;
}

void Loop::validate() const {
  if (coords.size() != x.size() || coords.empty()) throw std::invalid_argument("loop: one expression per coordinate");
  if (!periods.empty() && periods.size() != coords.size())
    throw std::invalid_argument("loop: one period per coordinate");
  for (size_t i = 0; i < x.size(); ++i) {
    const BoundExpr b(x[i], {"u"});
    const double u0 = 0, u1 = 1;
    double gap = std::abs(b(&u0) - b(&u1));
    const double period = periods.empty() ? 0 : periods[i];
    if (period != 0) gap = std::abs(gap - period * std::round(gap / period));
    if (gap > tolerance)
      throw std::invalid_argument("loop: coordinate '" + coords[i] + "' does not close up (endpoint mismatch " +
                                  std::to_string(gap) + ")");
  }
}

Eigen::MatrixXcd holonomy(const SmoothConnection& conn, const Loop& loop, int steps) {
  conn.validate();
  loop.validate();
  if (steps < 1) throw std::invalid_argument("holonomy: steps must be positive");
  const size_t d = conn.coords.size();
  std::vector<BoundExpr> pos(d), vel(d);
  for (size_t mu = 0; mu < d; ++mu) {
    const auto it = std::find(loop.coords.begin(), loop.coords.end(), conn.coords[mu]);
    if (it == loop.coords.end()) throw std::invalid_argument("loop: no expression for coordinate '" + conn.coords[mu] + "'");
    const Expr& e = loop.x[static_cast<size_t>(it - loop.coords.begin())];
    pos[mu] = BoundExpr(e, {"u"});
    vel[mu] = BoundExpr(symbolic_d(e, "u"), {"u"});
  }
  const auto ab = bind_all(conn);
  std::vector<double> x(d);
  auto generator = [&](double u) {
    for (size_t mu = 0; mu < d; ++mu) x[mu] = pos[mu](&u);
    if (!conn.contains(x)) throw std::invalid_argument("holonomy: loop leaves the domain at u = " + std::to_string(u));
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(conn.rank, conn.rank);
    for (size_t mu = 0; mu < d; ++mu) {
      const double v = vel[mu](&u);
      if (v != 0) m += ab[mu](x.data()) * v;
    }
    return Eigen::MatrixXcd(-m);
  };
  Eigen::MatrixXcd u_mat = Eigen::MatrixXcd::Identity(conn.rank, conn.rank);
  const double h = 1.0 / steps;
  for (int i = 0; i < steps; ++i) {
    const double u = i * h;
    const Eigen::MatrixXcd g0 = generator(u), gh = generator(u + h / 2), g1 = generator(u + h);
    const Eigen::MatrixXcd k1 = g0 * u_mat;
    const Eigen::MatrixXcd k2 = gh * (u_mat + k1 * (h / 2));
    const Eigen::MatrixXcd k3 = gh * (u_mat + k2 * (h / 2));
    const Eigen::MatrixXcd k4 = g1 * (u_mat + k3 * h);
    u_mat += (k1 + 2 * k2 + 2 * k3 + k4) * (h / 6);
  }
  return u_mat;
}

std::complex<double> bch_zero(const SmoothConnection& conn, const Loop& loop, int steps) {
  return holonomy(conn, loop, steps).trace();
}

double holonomy_consistency(const SmoothConnection& conn, const Loop& loop, int steps) {
  return std::abs(bch_zero(conn, loop, steps) - bch_zero(conn, loop, 2 * steps));
}

}  // namespace dcoh
