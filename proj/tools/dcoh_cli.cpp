#include "dcoh/cells_json.hpp"
#include "dcoh/diffcoh_json.hpp"
#include "dcoh/geom_json.hpp"
#include "dcoh/tot.hpp"

#include <CLI11.hpp>

#include <iomanip>
#include <iostream>
#include <sstream>

using namespace dcoh;
using nlohmann::json;

namespace {

struct RunConfig {
  std::string format = "table";
  uint64_t seed = 0;
  size_t samples = 100;
  int steps = 0;  // 0 = command default
  std::vector<int> window;
};

// Outcome of a subcommand: a JSON document, its table rendering, and whether every check passed.
struct Output {
  json doc;
  std::string table;
  bool pass = true;
};

std::string fmt(double x) {
  std::ostringstream s;
  s << std::setprecision(12) << x;
  return s.str();
}

std::string fmt(std::complex<double> z) {
  if (std::abs(z.imag()) < 1e-15) return fmt(z.real());
  return fmt(z.real()) + (z.imag() < 0 ? " - " : " + ") + fmt(std::abs(z.imag())) + "i";
}

Output from_report(const Report& r) { return {report_to_json(r), report_to_table(r), r.all_pass()}; }

std::pair<int, int> window_or(const RunConfig& cfg, int lo, int hi) {
  if (cfg.window.empty()) return {lo, hi};
  if (cfg.window[0] > cfg.window[1]) throw InputError("--window", "lo must not exceed hi");
  return {cfg.window[0], cfg.window[1]};
}

// Either a cochain complex file or a cell complex, whose cochains are used.
Complex load_any_complex(const std::string& path, Ring ring, int& lo, int& hi) {
  const json j = read_json_file(path);
  if (j.is_object() && j.contains("differentials")) {
    Complex c = complex_from_json(j, path);
    lo = c.lo();
    hi = c.hi();
    return c;
  }
  const CellComplex k = cell_complex_from_json(j, path);
  lo = 0;
  hi = k.dim();
  return cochain_complex(k, ring);
}

Output cmd_homology(const std::string& path, const std::string& ring_name, const RunConfig& cfg) {
  Ring ring;
  try {
    ring = parse_ring(ring_name);
  } catch (const std::invalid_argument& e) {
    throw InputError("--ring", e.what());
  }
  int lo = 0, hi = -1;
  const Complex c = load_any_complex(path, ring, lo, hi);
  std::tie(lo, hi) = window_or(cfg, lo, hi);
  Output out;
  out.doc = {{"ring", to_string(ring)}, {"groups", json::object()}};
  for (int n = lo; n <= hi; ++n) {
    const FgAbGroup g = homology(c, n);
    out.doc["groups"][std::to_string(n)] = group_to_json(g);
    out.table += (n > lo ? " " : "") + ("H" + std::to_string(n) + "=" + to_string(g));
  }
  out.table += "\n";
  return out;
}

Output cmd_descent(const std::string& path, const std::string& ring_name, const RunConfig& cfg) {
  const CellComplex k = load_cell_complex(path);
  std::vector<Ring> rings;
  if (ring_name == "both")
    rings = {Ring::Z, Ring::Q};
  else
    try {
      rings = {parse_ring(ring_name)};
    } catch (const std::invalid_argument& e) {
      throw InputError("--ring", e.what());
    }
  const auto [lo, hi] = window_or(cfg, 0, k.dim());
  Output out;
  out.doc = json::array();
  for (Ring ring : rings) {
    const DescentReport r = descent_check(k, star_cover(k), ring, lo, hi);
    json entry{{"ring", to_string(ring)}, {"level", r.level}, {"match", r.all_match()}, {"degrees", json::array()}};
    out.table += "ring " + to_string(ring) + " (Cech level " + std::to_string(r.level) + ")\n";
    for (const auto& d : r.degrees) {
      entry["degrees"].push_back(
          {{"degree", d.degree}, {"direct", to_string(d.direct)}, {"cech", to_string(d.cech)}, {"match", d.match}});
      out.table += "  H" + std::to_string(d.degree) + ": direct " + to_string(d.direct) + ", cech " +
                   to_string(d.cech) + (d.match ? "  [PASS]\n" : "  [FAIL]\n");
    }
    out.pass = out.pass && r.all_match();
    out.doc.push_back(entry);
  }
  out.table += out.pass ? "PASS\n" : "FAIL\n";
  return out;
}

Output cmd_underlying_point(int m, int level, const RunConfig& cfg) {
  const auto [lo, hi] = window_or(cfg, -1, 2);
  const PointReport r = underlying_at_point(m, level, lo, hi);
  Output out;
  out.doc = {{"m", r.m}, {"N", r.N}, {"degrees", json::array()}};
  out.table = "m = " + std::to_string(r.m) + ", N = " + std::to_string(r.N) + "\n";
  for (const auto& d : r.degrees) {
    out.doc["degrees"].push_back({{"degree", d.degree}, {"group", to_string(d.group)}, {"stable", d.stable}});
    out.table += "  H" + std::to_string(d.degree) + " = " + to_string(d.group) + (d.stable ? "" : "  (not stable)") + "\n";
    out.pass = out.pass && d.stable;
  }
  return out;
}

Output cmd_holonomy(const std::string& conn_path, const std::string& loop_path, const RunConfig& cfg) {
  const SmoothConnection c = load_connection(conn_path);
  const Loop l = load_loop(loop_path);
  const int steps = cfg.steps > 0 ? cfg.steps : 4096;
  const Eigen::MatrixXcd u = holonomy(c, l, steps);
  const std::complex<double> tr = u.trace();
  const double consistency = holonomy_consistency(c, l, steps);
  Output out;
  out.doc = {{"trace", {tr.real(), tr.imag()}},
             {"holonomy", complex_matrix_to_json(u)},
             {"steps", steps},
             {"step_doubling_change", consistency}};
  std::ostringstream s;
  s << "trace = " << fmt(tr) << "\nholonomy =\n";
  for (Eigen::Index r = 0; r < u.rows(); ++r) {
    s << "  ";
    for (Eigen::Index k = 0; k < u.cols(); ++k) s << std::setw(28) << fmt(u(r, k));
    s << "\n";
  }
  s << "steps = " << steps << ", change on doubling = " << fmt(consistency) << "\n";
  out.table = s.str();
  return out;
}

Output cmd_ch(const std::string& path, const RunConfig& cfg) {
  const SmoothConnection c = load_connection(path);
  const BGradedForm ch = chern_character_form(c);
  const double closed = closedness_residual(ch, c, cfg.samples, cfg.seed);
  // Sample the positive-degree part to decide whether ch is a constant function.
  std::mt19937_64 rng(cfg.seed);
  double sup = 0;
  std::complex<double> constant = 0;
  for (size_t i = 0; i < cfg.samples; ++i) {
    std::vector<double> x;
    for (const auto& [lo, hi] : c.domain) x.push_back(std::uniform_real_distribution<double>(lo, hi)(rng));
    sup = std::max(sup, ch.sup_positive(x));
    constant = ch.constant(x);
  }
  Output out;
  out.doc = {{"terms", json::array()}, {"closedness_residual", closed}, {"sup_positive_degree", sup},
             {"constant", {constant.real(), constant.imag()}}};
  for (const auto& t : ch.terms) {
    const std::string s = form_to_string(t.form, c.coords);
    out.doc["terms"].push_back({{"k", t.k}, {"form", s}});
    out.table += "b^" + std::to_string(t.k) + ": " + s + "\n";
  }
  out.table += "degree-0 part = " + fmt(constant) + ", sup of positive-degree coefficients = " + fmt(sup) +
               ", |d ch| <= " + fmt(closed) + "\n";
  out.pass = closed < 1e-9;
  return out;
}

Output cmd_transgress(const std::string& path, const std::string& fiber, const RunConfig& cfg) {
  const SmoothConnection c = load_connection(path);
  const Transgression t = transgress_ch(c, cfg.steps > 0 ? cfg.steps : 8, fiber);
  Output out;
  out.doc = {{"base_coords", t.base_coords}, {"steps", t.steps}, {"sup_norm", t.sup_norm},
             {"change_on_doubling", t.change_on_doubling}, {"converged", t.converged}, {"terms", json::array()}};
  for (const auto& term : t.terms) {
    double m = 0;
    for (const auto& v : term.values) m = std::max(m, std::abs(v));
    out.doc["terms"].push_back({{"k", term.k}, {"index", term.index}, {"sup", m}});
  }
  out.table = "transgression over " + fiber + ": sup norm " + fmt(t.sup_norm) + " on " +
              std::to_string(t.points.size()) + " base points, change on doubling " + fmt(t.change_on_doubling) +
              (t.converged ? " (converged)\n" : " (NOT converged)\n");
  out.pass = t.converged;
  return out;
}

Output cmd_lattice_class(const std::string& path) {
  const LatticeLineBundle l = load_lattice_bundle(path);
  const DiffCochain x = lattice_class(l);
  const IntVec coords = underlying_I(l.k, x);
  Output out;
  out.doc = {{"class", diff_cochain_to_json(x)}, {"underlying", integers_to_json(coords)},
             {"cocycle", is_cocycle(l.k, x)}};
  out.table = "underlying class coordinates: " + integers_to_json(coords).dump() +
              "\ncurvature: " + rationals_to_json(x.omega).dump() + "\n";
  out.pass = is_cocycle(l.k, x);
  return out;
}

Output cmd_character(const std::string& path, const RunConfig& cfg) {
  const LatticeLineBundle l = load_lattice_bundle(path);
  const CycleBasis h1 = homology_cycles(l.k, 1);
  Output out;
  out.doc = {{"cycles", json::array()}};
  for (size_t i = 0; i < h1.cycles.size(); ++i) {
    const Rational chi = differential_character(l, h1.cycles[i]);
    out.doc["cycles"].push_back({{"cycle", integers_to_json(h1.cycles[i])}, {"order", h1.orders[i].get_str()},
                                 {"chi", rational_to_json(chi)}});
    out.table += "chi(z" + std::to_string(i) + ") = " + chi.get_str() + "\n";
  }
  std::mt19937_64 rng(cfg.seed);
  size_t ok = 0;
  for (size_t i = 0; i < cfg.samples; ++i) ok += cs_property_check(l, random_integral(rng, l.k.count(2), 3));
  out.doc["cs_property"] = {{"checked", cfg.samples}, {"pass", ok}};
  out.table += "CS property chi(dw) = omega(w) mod 1: " + std::to_string(ok) + "/" + std::to_string(cfg.samples) + "\n";
  out.pass = ok == cfg.samples;
  return out;
}

Output cmd_cycle_map_check(const std::string& path, const std::string& complex_path, const std::string& chart_path,
                           const std::string& fiber, const RunConfig& cfg) {
  const SmoothConnection c = load_connection(path);
  const CellComplex k = load_cell_complex(complex_path);
  const SurfaceChart chart = load_chart(chart_path, k);
  const CycleMapReport r = cycle_map_homotopy_check(c, k, chart, cfg.steps > 0 ? cfg.steps : 16, fiber);
  Output out;
  out.doc = {{"equal", r.equal}, {"converged", r.converged}, {"detail", r.detail},
             {"max_lift_error", r.max_lift_error}};
  if (r.witness) out.doc["witness"] = diff_cochain_to_json(*r.witness);
  out.table = std::string(r.equal && r.converged ? "[PASS] " : "[FAIL] ") + r.detail +
              " (max lift error " + fmt(r.max_lift_error) + ")\n";
  out.pass = r.equal && r.converged;
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Differential cohomology on finite cell complexes"};
  app.require_subcommand(1);
  RunConfig cfg;
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "table"}));
  app.add_option("--seed", cfg.seed, "Random seed");
  app.add_option("--samples", cfg.samples, "Random samples")->check(CLI::PositiveNumber);
  app.add_option("--steps", cfg.steps, "Integration steps")->check(CLI::PositiveNumber);
  app.add_option("--window", cfg.window, "Degree window lo hi")->expected(2);

  std::string in1, in2, in3, ring = "Z", fiber = "u";
  int m = 1, level = 8;
  std::function<Output()> run;

  auto global = [&](CLI::App* sub) {
    sub->fallthrough();
    return sub;
  };

  auto* homology_cmd = global(app.add_subcommand("homology", "Cohomology groups of a complex"));
  homology_cmd->add_option("complex", in1, "Complex JSON")->required();
  homology_cmd->add_option("--ring", ring, "Z or Q");
  homology_cmd->callback([&] { run = [&] { return cmd_homology(in1, ring, cfg); }; });

  auto* hexagon_cmd = global(app.add_subcommand("hexagon", "Exactness of the differential cohomology hexagon"));
  hexagon_cmd->add_option("complex", in1, "Triangulation JSON")->required();
  hexagon_cmd->add_option("--m", m, "Degree m")->required();
  hexagon_cmd->callback([&] {
    run = [&] { return from_report(hexagon_exactness(load_cell_complex(in1), m, cfg.samples, cfg.seed)); };
  });

  auto* descent_cmd = global(app.add_subcommand("descent", "Star-cover Cech descent check"));
  descent_cmd->add_option("complex", in1, "Triangulation JSON")->required();
  descent_cmd->add_option("--ring", ring, "Z, Q or both")->default_str("both");
  descent_cmd->callback([&] {
    if (descent_cmd->count("--ring") == 0) ring = "both";
    run = [&] { return cmd_descent(in1, ring, cfg); };
  });

  auto* homotopy_cmd = global(app.add_subcommand("homotopy-formula", "Homotopy formula on the prism"));
  homotopy_cmd->add_option("complex", in1, "Triangulation JSON")->required();
  homotopy_cmd->add_option("--m", m, "Degree m")->required();
  homotopy_cmd->callback([&] {
    run = [&] { return from_report(homotopy_formula_suite(load_cell_complex(in1), m, cfg.samples, cfg.seed)); };
  });

  auto* s1_cmd = global(app.add_subcommand("s1-integrate", "Integration over the circle factor"));
  s1_cmd->add_option("complex", in1, "Triangulation JSON")->required();
  s1_cmd->add_option("--m", m, "Degree m")->required();
  s1_cmd->callback([&] {
    run = [&] { return from_report(s1_integrate_suite(load_cell_complex(in1), m, cfg.samples, cfg.seed)); };
  });

  auto* point_cmd = global(app.add_subcommand("underlying-point", "Homotopification of the truncated point"));
  point_cmd->add_option("--m", m, "Degree m")->required();
  point_cmd->add_option("--N", level, "Truncation level");
  point_cmd->callback([&] { run = [&] { return cmd_underlying_point(m, level, cfg); }; });

  auto* holonomy_cmd = global(app.add_subcommand("holonomy", "Holonomy of a connection around a loop"));
  holonomy_cmd->add_option("connection", in1, "Connection JSON")->required();
  holonomy_cmd->add_option("loop", in2, "Loop JSON")->required();
  holonomy_cmd->callback([&] { run = [&] { return cmd_holonomy(in1, in2, cfg); }; });

  auto* ch_cmd = global(app.add_subcommand("ch", "Chern character form"));
  ch_cmd->add_option("connection", in1, "Connection JSON")->required();
  ch_cmd->callback([&] { run = [&] { return cmd_ch(in1, cfg); }; });

  auto* transgress_cmd = global(app.add_subcommand("transgress", "Transgression along a path of connections"));
  transgress_cmd->add_option("path", in1, "Connection JSON over (u, base)")->required();
  transgress_cmd->add_option("--fiber", fiber, "Path coordinate");
  transgress_cmd->callback([&] { run = [&] { return cmd_transgress(in1, fiber, cfg); }; });

  auto* lattice_cmd = global(app.add_subcommand("lattice-class", "Differential cocycle of a lattice bundle"));
  lattice_cmd->add_option("bundle", in1, "Lattice bundle JSON")->required();
  lattice_cmd->callback([&] { run = [&] { return cmd_lattice_class(in1); }; });

  auto* character_cmd = global(app.add_subcommand("character", "Differential character on homology cycles"));
  character_cmd->add_option("bundle", in1, "Lattice bundle JSON")->required();
  character_cmd->callback([&] { run = [&] { return cmd_character(in1, cfg); }; });

  auto* cycle_cmd = global(app.add_subcommand("cycle-map-check", "Cycle map against transgression"));
  cycle_cmd->add_option("path", in1, "Rank-1 connection JSON over (u, s, t)")->required();
  cycle_cmd->add_option("complex", in2, "Surface triangulation JSON")->required();
  cycle_cmd->add_option("chart", in3, "Surface chart JSON")->required();
  cycle_cmd->add_option("--fiber", fiber, "Path coordinate");
  cycle_cmd->callback([&] { run = [&] { return cmd_cycle_map_check(in1, in2, in3, fiber, cfg); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const Output out = run();
    if (cfg.format == "json")
      std::cout << out.doc.dump(2) << "\n";
    else
      std::cout << out.table;
    return out.pass ? 0 : 1;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
