// Command dispatch for the wsphere tool. run() performs one command and
// returns the exit status together with the JSON report and a one-line
// summary; the executable only parses flags and writes files.
#ifndef WSPHERE_CLI_HPP
#define WSPHERE_CLI_HPP

#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "wsphere/json_io.hpp"

namespace wsphere::cli {

enum class Variant { Section2, PengXiao };

struct RunConfig {
  std::string command;
  unsigned k = 4;
  unsigned precision = 60;
  std::string output_path;
  /// 0 means the default grid sequence (energy) or 32 x 64 (mesh)
  unsigned radial = 0;
  unsigned angular = 0;
  /// unset means C / sqrt(radial)
  std::optional<double> exclusion_radius;
  Variant variant = Variant::Section2;
  std::string obj_path;
  std::array<double, 4> view_pole{0, 0, 0, 1};
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitCertification = 1;
inline constexpr int kExitUsage = 2;
inline constexpr unsigned kMinPrecision = 30;
inline constexpr unsigned kDefaultPrecision = 60;

inline const std::vector<std::string>& commands() {
  static const std::vector<std::string> c{"verify-contact", "pipeline", "verify-paper-f", "solve-pengxiao",
                                          "energy", "mesh", "self-test"};
  return c;
}

/// The default precision, overridden by WF_PRECISION when set.
inline unsigned default_precision() {
  if (const char* env = std::getenv("WF_PRECISION")) {
    try {
      std::size_t used = 0;
      const long v = std::stol(env, &used);
      if (used == std::string(env).size() && v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
    throw Error(ErrorKind::InvalidArgument, std::string("WF_PRECISION is not a positive integer: '") + env + "'");
  }
  return kDefaultPrecision;
}

struct RunResult {
  int exit_code = kExitOk;
  Json report;
  std::string summary;
};

namespace detail {

inline void require_k(const RunConfig& c, unsigned lo, unsigned hi) {
  if (c.k < lo || c.k > hi)
    throw Error(ErrorKind::InvalidArgument,
                c.command + " supports k in " + std::to_string(lo) + ".." + std::to_string(hi) + ", got " + std::to_string(c.k));
}

inline std::string pass(bool ok) { return ok ? "PASS" : "FAIL"; }

inline RunResult verify_contact(const RunConfig& c) {
  require_k(c, 0, 64);
  ProjectiveCurve4 curve = contact_curve(c.k);  // throws Degenerate for k = 0, 3
  auto cert = verify_contact(curve);
  const unsigned degree = curve_degree(curve);
  const bool nondeg = nondegenerate(curve);
  BranchDivisor div = branch_divisor(curve);
  bool ok = cert.contact;
  if (c.k >= 4) ok = ok && degree == 2 * c.k && nondeg && div.total == 2 * c.k - 3;
  RunResult r;
  r.report = {{"command", c.command},   {"k", c.k},           {"contact", cert.contact}, {"pairing", to_json(cert.pairing)},
              {"degree", degree},       {"nondegenerate", nondeg}, {"branch_total", div.total},
              {"branch_divisor", to_json(div)}, {"curve", to_json(curve)}, {"ok", ok}};
  r.exit_code = ok ? kExitOk : kExitCertification;
  r.summary = "verify-contact k=" + std::to_string(c.k) + ": contact=" + (cert.contact ? "true" : "false") +
              " degree=" + std::to_string(degree) + " branch_total=" + std::to_string(div.total) + " [" + pass(ok) + "]";
  return r;
}

inline RunResult run_pipeline(const RunConfig& c) {
  require_k(c, 4, 32);
  PipelineResult p = pipeline(c.k);
  const bool ok = p.certificate.ok(c.k);
  RunResult r;
  r.report = {{"command", c.command}, {"k", c.k}, {"certificate", to_json(p.certificate)},
              {"F", to_json(p.F)},     {"curve", to_json(p.curve)}, {"ok", ok}};
  r.exit_code = ok ? kExitOk : kExitCertification;
  r.summary = "pipeline k=" + std::to_string(c.k) + ": poles=" + std::to_string(p.certificate.pole_count) +
              (p.certificate.simple_poles ? " simple" : " not simple") + " null=" + (p.certificate.null_ok ? "true" : "false") +
              " [" + pass(ok) + "]";
  return r;
}

inline RunResult verify_paper_f(const RunConfig& c) {
  RunResult r;
  r.report = {{"command", c.command}, {"k", c.k}, {"precision", c.precision}};
  bool ok = false;
  if (c.variant == Variant::Section2) {
    require_k(c, 4, 32);
    ExactMap3 f = paper_F(c.k);
    auto nul = verify_null_C3(f);
    auto poles = pole_analysis(f);
    ok = nul.null && poles.all_simple && poles.count == 2 * c.k + 1;
    r.report["variant"] = "section2";
    r.report["null"] = nul.null;
    r.report["pole_count"] = poles.count;
    r.report["simple_poles"] = poles.all_simple;
    r.report["F"] = to_json(f);
  } else {
    require_k(c, 4, 4);
    NumMap3 f = paper_F_pengxiao(c.precision);
    auto nul = verify_null_C3(f, c.precision);
    auto poles = pole_analysis(f, c.precision);
    // distance from each recovered pole to the expected set {0, i^j, mu i^j}
    BigFloat worst;
    for (const auto& p : poles.finite) {
      BigFloat best(1e300, 20);
      for (const auto& e : end_set(paper_k4_params(c.precision))) best = std::min(best, (p.value - e.point).abs());
      worst = max(worst, best);
    }
    const bool located = poles.finite.size() == 9 && worst < BigFloat::pow10(-40, c.precision);
    ok = nul.max_relative_residual < 1e-30 && poles.all_simple && poles.count == 9 && located;
    r.report["variant"] = "pengxiao";
    r.report["max_null_residual"] = nul.max_relative_residual;
    r.report["pole_count"] = poles.count;
    r.report["simple_poles"] = poles.all_simple;
    r.report["pole_location_error"] = worst.str(6);
    Json pl = Json::array();
    for (const auto& p : poles.finite) pl.push_back(to_json(p.value));
    r.report["poles"] = pl;
  }
  r.report["ok"] = ok;
  r.exit_code = ok ? kExitOk : kExitCertification;
  r.summary = "verify-paper-f k=" + std::to_string(c.k) + " variant=" + r.report["variant"].get<std::string>() +
              ": poles=" + std::to_string(r.report["pole_count"].get<unsigned>()) + " [" + pass(ok) + "]";
  return r;
}

inline RunResult solve_pengxiao(const RunConfig& c) {
  require_k(c, 4, 8);
  std::ostringstream log;
  SolveOptions opt;
  opt.log = &log;
  PengXiaoParams start = paper_k4_params(c.precision);
  PengXiaoParams sol = solve_residues(c.k, start, c.precision, opt);
  BigFloat worst;
  for (const auto& e : end_residues(sol, c.precision))
    for (const auto& x : e) worst = max(worst, x.abs());
  Json lines = Json::array();
  std::istringstream in(log.str());
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  RunResult r;
  r.report = {{"command", c.command}, {"k", c.k},        {"precision", c.precision}, {"params", to_json(sol)},
              {"max_residual", worst.str(6)}, {"log", lines}, {"ok", true}};
  r.summary = "solve-pengxiao k=" + std::to_string(c.k) + ": max residual " + worst.str(3) + " [PASS]";
  return r;
}

inline SurfaceModel model_for(const RunConfig& c) {
  if (c.variant == Variant::PengXiao) {
    require_k(c, 4, 4);
    return make_model(paper_F_pengxiao(c.precision), c.precision);
  }
  require_k(c, 4, 16);
  PipelineResult p = pipeline(c.k);
  if (!p.certificate.ok(c.k)) throw Error(ErrorKind::CertificationFailed, "pipeline certificate failed");
  return make_model(p.F, c.precision);
}

inline std::vector<MeshSpec> grids_for(const RunConfig& c) {
  if (c.radial == 0) {
    if (c.exclusion_radius)
      throw Error(ErrorKind::InvalidArgument, "--exclusion needs an explicit --radial");
    return default_energy_grids();
  }
  const unsigned a = c.angular ? c.angular : 2 * c.radial;
  const double rho = c.exclusion_radius.value_or(default_exclusion_radius(c.radial));
  return {{c.radial, a, rho}};
}

inline RunResult energy(const RunConfig& c) {
  SurfaceModel m = model_for(c);
  ConvergenceStudy st = energy_study(m, grids_for(c));
  const EnergyReport& f = st.finest();
  const bool ok = f.relative_error <= 0.01;
  Json grids = Json::array();
  for (const auto& rep : st.reports) grids.push_back(to_json(rep));
  RunResult r;
  r.report = {{"command", c.command}, {"k", c.k},
              {"variant", c.variant == Variant::PengXiao ? "pengxiao" : "section2"},
              {"energy", to_json(f)},  {"refinements", grids},
              {"monotone", st.monotone}, {"within_bands", st.within_bands}, {"ok", ok}};
  r.exit_code = ok ? kExitOk : kExitCertification;
  std::ostringstream s;
  s.precision(10);
  s << "energy k=" << c.k << ": n=" << f.n << " willmore=" << f.willmore << " quadrature=" << f.quadrature_estimate
    << " rel_err=" << f.relative_error << (st.within_bands ? "" : " (outside bands)") << " [" << pass(ok) << "]";
  r.summary = s.str();
  return r;
}

inline std::string stem(const std::string& path) {
  const auto dot = path.rfind('.');
  const auto slash = path.rfind('/');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return path;
  return path.substr(0, dot);
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write " + path);
  out << content;
}

inline RunResult mesh(const RunConfig& c) {
  SurfaceModel m = model_for(c);
  const unsigned radial = c.radial ? c.radial : 32;
  MeshSpec spec{radial, c.angular ? c.angular : 2 * radial, c.exclusion_radius.value_or(default_exclusion_radius(radial))};
  Mesh mesh = make_mesh(m, spec);
  RunResult r;
  r.report = {{"command", c.command},
              {"k", c.k},
              {"variant", c.variant == Variant::PengXiao ? "pengxiao" : "section2"},
              {"grid", to_json(spec)},
              {"vertices", mesh.vertices.size()},
              {"faces", mesh.faces.size()},
              {"implied_vertices", mesh.implied_vertices},
              {"excluded_vertices", mesh.excluded_vertices},
              {"excluded_disks", mesh.excluded_disks},
              {"boundary_loops", mesh.boundary_loops},
              {"ok", true}};
  if (!c.obj_path.empty()) {
    std::ostringstream obj, s3obj;
    write_obj(obj, mesh);
    write_file(c.obj_path, obj.str());
    write_obj(s3obj, stereographic_view(mesh.s3, c.view_pole), mesh.faces);
    const std::string base = stem(c.obj_path);
    write_file(base + ".s3.obj", s3obj.str());
    write_file(base + ".s3.json", s3_sidecar(mesh, c.view_pole).dump(1) + "\n");
    r.report["files"] = {c.obj_path, base + ".s3.obj", base + ".s3.json"};
  }
  r.summary = "mesh k=" + std::to_string(c.k) + ": " + std::to_string(mesh.vertices.size()) + " vertices, " +
              std::to_string(mesh.faces.size()) + " faces, " + std::to_string(mesh.boundary_loops) +
              " boundary loops [PASS]";
  return r;
}

inline RunResult self_test(const RunConfig& c) {
  Json checks = Json::array();
  bool all = true;
  auto check = [&](const std::string& name, bool ok) {
    checks.push_back({{"name", name}, {"ok", ok}});
    all = all && ok;
  };
  check("gram isometry", gram_self_test().ok());
  check("contact k=4", verify_contact(contact_curve(4)).contact);
  {
    BranchDivisor d = branch_divisor(contact_curve(4));
    check("branch divisor k=4", d.total == 5 && d.order_at_infinity() == 1);
  }
  check("pipeline k=4", pipeline(4).certificate.ok(4));
  {
    ExactMap3 f = paper_F(4);
    auto poles = pole_analysis(f);
    check("closed-form F k=4 null", verify_null_C3(f).null);
    check("closed-form F k=4 poles", poles.count == 9 && poles.all_simple);
    ExactMap3 g = psi_invert(psi_embed(f));
    check("psi roundtrip k=4", g[0] == f[0] && g[1] == f[1] && g[2] == f[2]);
  }
  {
    const unsigned p = std::max(c.precision, 60u);
    BigFloat worst;
    for (const auto& e : end_residues(paper_k4_params(p), p))
      for (const auto& x : e) worst = max(worst, x.abs());
    check("k=4 residues", worst < BigFloat::pow10(-35, p));
    check("radical F null", verify_null_C3(paper_F_pengxiao(p), p).max_relative_residual < 1e-30);
    PengXiaoParams q = paper_k4_params(p);
    PengXiaoParams back = params_from_json(Json::parse(to_json(q).dump()));
    check("params json roundtrip", (back.a - q.a).abs() < BigFloat::pow10(-static_cast<long>(p) + 2, p) &&
                                       (back.lambda - q.lambda).abs() < BigFloat::pow10(-static_cast<long>(p) + 4, p));
  }
  RunResult r;
  r.report = {{"command", c.command}, {"checks", checks}, {"ok", all}};
  r.exit_code = all ? kExitOk : kExitCertification;
  r.summary = "self-test: " + std::to_string(checks.size()) + " checks [" + pass(all) + "]";
  return r;
}

}  // namespace detail

/// Runs one command. Usage problems (unknown command, k out of range,
/// degenerate k, precision below 30) give exit 2; failed certificates or
/// failed numerics give exit 1 with the report so far.
inline RunResult run(const RunConfig& config) {
  RunResult r;
  try {
    if (config.precision < kMinPrecision)
      throw Error(ErrorKind::InvalidArgument, "precision must be at least " + std::to_string(kMinPrecision));
    const std::string& cmd = config.command;
    if (cmd == "verify-contact") r = detail::verify_contact(config);
    else if (cmd == "pipeline") r = detail::run_pipeline(config);
    else if (cmd == "verify-paper-f") r = detail::verify_paper_f(config);
    else if (cmd == "solve-pengxiao") r = detail::solve_pengxiao(config);
    else if (cmd == "energy") r = detail::energy(config);
    else if (cmd == "mesh") r = detail::mesh(config);
    else if (cmd == "self-test") r = detail::self_test(config);
    else throw Error(ErrorKind::InvalidArgument, "unknown command '" + cmd + "'");
  } catch (const Error& e) {
    const bool usage = e.kind() == ErrorKind::InvalidArgument || e.kind() == ErrorKind::Degenerate;
    r.exit_code = usage ? kExitUsage : kExitCertification;
    r.report = {{"command", config.command}, {"k", config.k}, {"error", e.what()}, {"ok", false}};
    r.summary = config.command + ": " + e.what();
  }
  if (!config.output_path.empty() && r.exit_code != kExitUsage)
    detail::write_file(config.output_path, r.report.dump(1) + "\n");
  return r;
}

}  // namespace wsphere::cli

#endif  // WSPHERE_CLI_HPP
