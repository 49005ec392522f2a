// modgeo command-line driver.

#include "modgeo/atypical.hpp"
#include "modgeo/errors.hpp"
#include "modgeo/geodesics.hpp"
#include "modgeo/modular_forms.hpp"
#include "modgeo/modular_polynomials.hpp"
#include "modgeo/real_modular_curves.hpp"
#include "modgeo/restriction.hpp"
#include "modgeo/serialization.hpp"
#include "modgeo/svg.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace modgeo;

namespace {

enum Exit : int {
  kOk = 0,
  kNegative = 1,
  kPrecision = 2,
  kNoSeeds = 3,
  kInconclusive = 4,
  kUsage = 64,
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Config {
  long precision_bits = kDefaultPrecision;
  double tolerance = 0.0;  // 0: per-command default
  std::string out;
  std::string format = "json";
  long max_level = 10;

  [[nodiscard]] double tol_or(double fallback) const { return tolerance > 0 ? tolerance : fallback; }
  [[nodiscard]] Precision prec() const { return static_cast<Precision>(precision_bits); }
  [[nodiscard]] ModpolyOptions modpoly() const {
    ModpolyOptions o;
    o.max_level = max_level;
    return o;
  }
  [[nodiscard]] int digits() const { return static_cast<int>(std::ceil(precision_bits * 0.30103)) + 1; }
};

std::string sci(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6e", x);
  return buf;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot write " + path);
  f << text;
}

void flatten(const Json& j, const std::string& prefix, std::ostringstream& s) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, s);
  } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
    for (std::size_t k = 0; k < j.size(); ++k) flatten(j[k], prefix + "[" + std::to_string(k) + "]", s);
  } else {
    s << prefix << " = " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

void emit(const Config& cfg, const Json& j) {
  if (cfg.format == "text") {
    std::ostringstream s;
    flatten(j, "", s);
    write_text(cfg.out, s.str());
  } else {
    write_text(cfg.out, j.dump(2) + "\n");
  }
}

Json complex_json(const Complex& z, int digits) {
  return {{"re", z.re().to_string(digits)}, {"im", z.im().to_string(digits)}};
}

Json matrix_json(const RationalMatrix2& m) {
  return Json::array({Json::array({rational_to_string(m.a()), rational_to_string(m.b())}),
                      Json::array({rational_to_string(m.c()), rational_to_string(m.d())})});
}

RationalMatrix2 parse_matrix(const std::vector<std::string>& e, std::size_t offset = 0) {
  if (e.size() < offset + 4) throw UsageError("a matrix needs four entries a b c d");
  return {parse_exact_rational(e[offset]), parse_exact_rational(e[offset + 1]), parse_exact_rational(e[offset + 2]),
          parse_exact_rational(e[offset + 3])};
}

GaussianBivariatePoly load_curve(const std::string& file, const std::string& equation, Precision prec) {
  if (!equation.empty() && !file.empty()) throw UsageError("give either --curve or --equation");
  if (!equation.empty()) return parse_curve_expression(equation, prec);
  if (file.empty()) throw UsageError("a curve is required (--curve FILE or --equation EXPR)");
  std::ifstream f(file);
  if (!f) throw UsageError("cannot read " + file);
  std::stringstream buf;
  buf << f.rdbuf();
  const std::string text = buf.str();
  Json j = Json::parse(text, nullptr, false);
  if (!j.is_discarded()) return gaussian_poly_from_json(j);
  return parse_curve_expression(text, prec);
}

Json branch_json(const TracedBranch& b, int digits) {
  Json pts = Json::array();
  for (const auto& p : b.points) {
    Json row = Json::array();
    for (const auto& c : p) row.push_back(c.to_string(digits));
    pts.push_back(std::move(row));
  }
  Json res = Json::array();
  for (double r : b.residuals) res.push_back(sci(r));
  return {{"dimension", b.dimension},
          {"step", sci(b.step)},
          {"start_end", to_string(b.start_end)},
          {"finish_end", to_string(b.finish_end)},
          {"closed", b.closed},
          {"well_conditioned_steps", b.well_conditioned_steps},
          {"max_residual", sci(b.max_residual())},
          {"points", std::move(pts)},
          {"residuals", std::move(res)}};
}

Json branches_json(const std::vector<TracedBranch>& branches, const Config& cfg, double tol) {
  Json arr = Json::array();
  bool all_ok = true;
  for (const auto& b : branches) {
    arr.push_back(branch_json(b, 20));
    all_ok = all_ok && b.max_residual() <= tol;
  }
  return {{"branches", std::move(arr)},
          {"branch_count", branches.size()},
          {"tol", sci(tol)},
          {"all_within_tol", all_ok},
          {"digits", 20},
          {"precision_bits", cfg.precision_bits}};
}

Json locus_json(const GeodesicMatrix& a, Precision prec) {
  GeodesicLocus l = locus(a);
  Json out{{"matrix", matrix_json(a.matrix())}, {"canonical", matrix_json(a.canonical().matrix())}};
  if (l.kind == GeodesicLocus::Kind::VerticalLine) {
    out["kind"] = "vertical_line";
    out["x0"] = rational_to_string(l.x0);
    out["endpoints"] = Json::array({rational_to_string(l.x0), "infinity"});
  } else {
    out["kind"] = "semicircle";
    out["center"] = rational_to_string(l.center);
    out["radius_sq"] = rational_to_string(l.radius_sq);
    out["rational_endpoints"] = l.has_rational_endpoints();
    const int digits = static_cast<int>(std::ceil(prec * 0.30103)) + 1;
    Real c(l.center, prec);
    Real r = sqrt(Real(l.radius_sq, prec));
    out["endpoints"] = Json::array({(c - r).to_string(digits), (c + r).to_string(digits)});
  }
  return out;
}

BoundingBox bbox_from(const std::vector<double>& v) {
  if (v.empty()) return {-2000, 10000, -5000, 5000};
  if (v.size() != 4) throw UsageError("--bbox takes xmin xmax ymin ymax");
  BoundingBox b{v[0], v[1], v[2], v[3]};
  if (!b.nondegenerate()) throw UsageError("--bbox is degenerate");
  return b;
}

struct TraceArgs {
  long level = 1;
  std::vector<double> bbox;
  double step = 0.0;
  std::size_t max_points = 20000;
  int grid = 256;
  std::string svg;
};

int run_trace_zn(const Config& cfg, const TraceArgs& a) {
  TraceOptions o;
  o.bbox = bbox_from(a.bbox);
  o.step = a.step > 0 ? a.step : std::hypot(o.bbox.xmax - o.bbox.xmin, o.bbox.ymax - o.bbox.ymin) / 400.0;
  o.tol = cfg.tol_or(1e-10);
  o.grid = a.grid;
  o.max_points = a.max_points;
  o.precision = cfg.prec();
  o.modpoly = cfg.modpoly();
  RealCurveZN z = build_zn(a.level, o.modpoly);
  auto branches = trace_zn(z, o);
  if (!a.svg.empty()) write_text(a.svg, branches_svg(branches, "Z_" + std::to_string(a.level)));
  Json j = branches_json(branches, cfg, o.tol);
  j["N"] = a.level;
  j["bbox"] = {sci(o.bbox.xmin), sci(o.bbox.xmax), sci(o.bbox.ymin), sci(o.bbox.ymax)};
  if (cfg.format == "svg") {
    write_text(cfg.out, branches_svg(branches, "Z_" + std::to_string(a.level)));
  } else {
    emit(cfg, j);
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Modular polynomials, special geodesics and strongly special curves"};
  app.require_subcommand(1);
  app.fallthrough();

  Config cfg;
  app.add_option("--prec", cfg.precision_bits, "Working precision in bits")->check(CLI::Range(64L, 1L << 20));
  app.add_option("--tol", cfg.tolerance, "Tolerance")->check(CLI::PositiveNumber);
  app.add_option("--out", cfg.out, "Output file ('-' for stdout)");
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "text", "svg"}));
  app.add_option("--max-level", cfg.max_level, "Largest level computed for modular polynomials")
      ->check(CLI::PositiveNumber);

  int code = kOk;

  // modpoly
  long mp_level = 1;
  auto* c_modpoly = app.add_subcommand("modpoly", "Compute Phi_N and write modpoly_N.json");
  c_modpoly->add_option("N", mp_level)->required()->check(CLI::PositiveNumber);
  c_modpoly->callback([&] {
    auto m = modpoly(mp_level, cfg.modpoly());
    Config c = cfg;
    if (c.out.empty()) c.out = ModularPolynomialCache::file_name(mp_level).string();
    Json j = to_json(*m);
    emit(c, j);
    if (c.out != "-") std::cout << "wrote " << c.out << " (" << j["terms"].size() << " terms)\n";
  });

  // j-eval / j-inv
  std::string jr = "0", ji = "1";
  auto* c_jeval = app.add_subcommand("j-eval", "Evaluate j at z = RE + i IM");
  c_jeval->add_option("RE", jr)->required();
  c_jeval->add_option("IM", ji)->required();
  c_jeval->callback([&] {
    UpperHalfPoint z(Complex(Real(jr, cfg.prec()), Real(ji, cfg.prec())));
    emit(cfg, {{"z", complex_json(z.z(), cfg.digits())},
               {"j", complex_json(j_eval(z), cfg.digits())},
               {"precision_bits", cfg.precision_bits}});
  });
  auto* c_jinv = app.add_subcommand("j-inv", "Find z in the fundamental domain with j(z) = RE + i IM");
  c_jinv->add_option("RE", jr)->required();
  c_jinv->add_option("IM", ji)->required();
  c_jinv->callback([&] {
    Complex c(Real(jr, cfg.prec()), Real(ji, cfg.prec()));
    UpperHalfPoint z = j_inverse(c);
    emit(cfg, {{"j", complex_json(c, cfg.digits())},
               {"z", complex_json(z.z(), cfg.digits())},
               {"precision_bits", cfg.precision_bits}});
  });

  // geodesic
  std::vector<std::string> g_matrix, g_by;
  auto* c_geo = app.add_subcommand("geodesic", "Special geodesics S_A");
  c_geo->require_subcommand(1);
  auto geo_matrix = [&](CLI::App* sub) {
    sub->add_option("--matrix", g_matrix, "a b c d of A (trace 0, det < 0)")->required();
  };
  auto* g_end = c_geo->add_subcommand("endpoints", "Endpoints of S_A on the real line");
  auto* g_locus = c_geo->add_subcommand("locus", "Semicircle or vertical line of S_A");
  auto* g_conj = c_geo->add_subcommand("conjugate", "B A B^-1 and its locus");
  auto* g_plot = c_geo->add_subcommand("plot", "SVG of one or more geodesics");
  for (auto* s : {g_end, g_locus, g_conj, g_plot}) geo_matrix(s);
  g_conj->add_option("--by", g_by, "a b c d of B (det > 0)")->required()->expected(4);
  g_end->callback([&] {
    Json l = locus_json(GeodesicMatrix(parse_matrix(g_matrix)), cfg.prec());
    emit(cfg, {{"endpoints", l["endpoints"]}, {"precision_bits", cfg.precision_bits}});
  });
  g_locus->callback([&] {
    Json l = locus_json(GeodesicMatrix(parse_matrix(g_matrix)), cfg.prec());
    l["precision_bits"] = cfg.precision_bits;
    emit(cfg, l);
  });
  g_conj->callback([&] {
    GeodesicMatrix a(parse_matrix(g_matrix));
    GeodesicMatrix c = conjugate_geodesic(parse_matrix(g_by), a);
    emit(cfg, {{"A", locus_json(a, cfg.prec())},
               {"B", matrix_json(parse_matrix(g_by))},
               {"conjugate", locus_json(c, cfg.prec())},
               {"precision_bits", cfg.precision_bits}});
  });
  g_plot->callback([&] {
    if (g_matrix.size() % 4 != 0) throw UsageError("--matrix entries must come in groups of four");
    std::vector<GeodesicLocus> loci;
    for (std::size_t k = 0; k < g_matrix.size(); k += 4) loci.push_back(locus(GeodesicMatrix(parse_matrix(g_matrix, k))));
    write_text(cfg.out, geodesics_svg(loci, "special geodesics"));
  });

  // zn
  TraceArgs ta;
  std::string zx, zy;
  auto* c_zn = app.add_subcommand("zn", "Real modular curves Z_N");
  c_zn->require_subcommand(1);
  auto* zn_build = c_zn->add_subcommand("build", "Exact equation of Z_N");
  zn_build->add_option("N", ta.level)->required()->check(CLI::PositiveNumber);
  zn_build->callback([&] {
    RealCurveZN z = build_zn(ta.level, cfg.modpoly());
    Json j = to_json(z.equation);
    j["N"] = ta.level;
    j["vars"] = {"x", "y"};
    emit(cfg, j);
  });
  auto trace_flags = [&](CLI::App* sub) {
    sub->add_option("N", ta.level)->required()->check(CLI::PositiveNumber);
    sub->add_option("--bbox", ta.bbox, "xmin xmax ymin ymax")->expected(4);
    sub->add_option("--step", ta.step, "Step length (default: box diagonal / 400)");
    sub->add_option("--max-points", ta.max_points);
    sub->add_option("--grid", ta.grid)->check(CLI::Range(2, 1 << 16));
    sub->add_option("--svg", ta.svg, "Also write an SVG plot");
  };
  auto* zn_trace = c_zn->add_subcommand("trace", "Trace real branches of Z_N");
  trace_flags(zn_trace);
  zn_trace->callback([&] { code = run_trace_zn(cfg, ta); });
  auto* zn_cert = c_zn->add_subcommand("certify", "Certify (X, Y) on Z_N as a point of a special geodesic image");
  zn_cert->add_option("N", ta.level)->required()->check(CLI::PositiveNumber);
  zn_cert->add_option("X", zx)->required();
  zn_cert->add_option("Y", zy)->required();
  zn_cert->callback([&] {
    auto c = certify_special_geodesic_point(ta.level, Real(zx, cfg.prec()), Real(zy, cfg.prec()), cfg.tol_or(1e-10));
    Json out{{"N", c.level},
               {"A", matrix_json(c.matrix)},
               {"det", rational_to_string(c.matrix.det())},
               {"z", complex_json(c.z.z(), cfg.digits())},
               {"isogeny", {c.isogeny.a, c.isogeny.b, c.isogeny.d}},
               {"gamma", matrix_json(c.gamma)},
               {"residual", c.residual.to_string(8)},
               {"conditioning", sci(c.conditioning)},
               {"bound", sci(c.bound)},
               {"trace_zero", c.trace_zero},
               {"precision_bits", cfg.precision_bits}};
    if (c.geodesic) out["geodesic"] = locus_json(*c.geodesic, cfg.prec());
    emit(cfg, out);
  });

  // restrict
  std::string curve_file, equation;
  auto* c_restrict = app.add_subcommand("restrict", "Weil restriction of a complex plane curve");
  c_restrict->add_option("--curve", curve_file, "Curve file (polynomial JSON or expression)");
  c_restrict->add_option("--equation", equation, "Curve as an expression in T1, T2, i");
  c_restrict->callback([&] {
    ComplexPlaneCurve c(load_curve(curve_file, equation, cfg.prec()));
    WeilRestriction w = weil_restrict(c);
    emit(cfg, {{"curve", to_json(c.poly())}, {"re", to_json(w.re_part)}, {"im", to_json(w.im_part)}});
  });

  // trace
  long m_level = 1;
  std::vector<double> bbox4;
  std::size_t int_max_points = 2000;
  std::size_t int_max_branches = 16;
  auto* c_trace = app.add_subcommand("trace", "Trace Z_N or the 4D intersection curve");
  c_trace->require_subcommand(1);
  auto* t_zn = c_trace->add_subcommand("zn", "Trace real branches of Z_N");
  trace_flags(t_zn);
  t_zn->callback([&] { code = run_trace_zn(cfg, ta); });
  auto* t_int = c_trace->add_subcommand("intersect", "Trace {P(f2(u)) = 0, F_M(x1, y1) = 0} in R^4");
  t_int->add_option("--curve", curve_file, "Curve file (polynomial JSON or expression)");
  t_int->add_option("--equation", equation, "Curve as an expression in T1, T2, i");
  t_int->add_option("--M", m_level, "Level of the first projection")->check(CLI::PositiveNumber);
  t_int->add_option("--bbox", bbox4, "x1min x1max y1min y1max x2min x2max y2min y2max")->expected(8);
  t_int->add_option("--step", ta.step, "Step length (default: (x1, y1) diagonal / 400)");
  t_int->add_option("--max-points", int_max_points);
  t_int->add_option("--max-branches", int_max_branches);
  t_int->add_option("--svg", ta.svg, "Also write an SVG plot");
  t_int->callback([&] {
    ComplexPlaneCurve c(load_curve(curve_file, equation, cfg.prec()));
    IntersectionOptions o;
    if (!bbox4.empty()) {
      for (int k = 0; k < 4; ++k) {
        o.bbox.lo[k] = bbox4[2 * k];
        o.bbox.hi[k] = bbox4[2 * k + 1];
      }
    }
    o.step = ta.step;
    o.tol = cfg.tol_or(1e-10);
    o.max_points = int_max_points;
    o.max_branches = int_max_branches;
    o.precision = cfg.prec();
    auto branches = trace_intersection(c, m_level, o);
    const std::string title = "C~ with M = " + std::to_string(m_level);
    if (!ta.svg.empty()) write_text(ta.svg, branches_svg(branches, title));
    if (cfg.format == "svg") {
      write_text(cfg.out, branches_svg(branches, title));
    } else {
      Json j = branches_json(branches, cfg, o.tol);
      j["M"] = m_level;
      emit(cfg, j);
    }
  });

  // detect
  std::string detect_file;
  DetectorBudget budget;
  auto* c_detect = app.add_subcommand("detect", "Decide whether a curve is strongly special");
  c_detect->add_option("CURVE", detect_file, "Curve file (polynomial JSON or expression)");
  c_detect->add_option("--curve", curve_file, "Curve file (polynomial JSON or expression)");
  c_detect->add_option("--equation", equation, "Curve as an expression in T1, T2, i");
  c_detect->add_option("--nmax-exact", budget.nmax_exact)->check(CLI::PositiveNumber);
  c_detect->add_option("--nmax-search", budget.nmax_search)->check(CLI::PositiveNumber);
  c_detect->add_option("--M", budget.m_list, "Levels used for the first projection");
  c_detect->add_option("--evidence-pairs", budget.evidence_pairs);
  c_detect->add_option("--step", budget.trace.step);
  c_detect->add_option("--max-points", budget.trace.max_points);
  c_detect->callback([&] {
    const std::string file = !detect_file.empty() ? detect_file : curve_file;
    ComplexPlaneCurve c(load_curve(file, equation, cfg.prec()));
    budget.tol = cfg.tol_or(budget.tol);
    budget.trace.precision = cfg.prec();
    Verdict v = detect_strongly_special(c, budget);
    emit(cfg, to_json(v, budget));
    switch (v.kind) {
      case VerdictKind::StronglySpecial: code = kOk; break;
      case VerdictKind::NotSpecial: code = kNegative; break;
      default: code = kInconclusive;
    }
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const HorizontalVerticalError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const PreconditionError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const FormatError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const DimensionError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const NoSeeds& e) {
    std::cerr << "no seeds: " << e.what() << "\n";
    return kNoSeeds;
  } catch (const CertificationFailed& e) {
    std::cerr << "certification failed: " << e.what() << "\n";
    return kNegative;
  } catch (const LevelTooLarge& e) {
    std::cerr << "LevelTooLarge: " << e.what() << "\n";
    return kPrecision;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kPrecision;
  } catch (const Json::exception& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  }
  return code;
}
