// wsphere: certify, solve, sample and mesh the minimal surfaces with planar
// ends. See `wsphere --help`.
#include <CLI11.hpp>

#include <iostream>
#include <map>

#include "wsphere/cli.hpp"

int main(int argc, char** argv) {
  using namespace wsphere::cli;
  CLI::App app{"Minimal surfaces with an odd number of planar ends: certification and sampling"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::optional<unsigned> precision;
  std::string variant = "section2";
  std::vector<double> pole;
  std::map<std::string, std::string> help{
      {"verify-contact", "exact contact, degree and branch certificate of the contact curve"},
      {"pipeline", "contact curve to null curve in C^3, with certificate"},
      {"verify-paper-f", "null and pole checks for the closed-form F"},
      {"solve-pengxiao", "solve the residue conditions for the spinor ansatz"},
      {"energy", "total curvature quadrature against the closed-form energy"},
      {"mesh", "two-chart triangle mesh in R^3 and S^3"},
      {"self-test", "isometry, k = 4 fixtures and round trips"}};
  for (const auto& name : commands()) {
    CLI::App* sub = app.add_subcommand(name, help[name]);
    sub->add_option("--k", cfg.k, "family parameter (n = 2k + 1 ends)");
    sub->add_option("--precision", precision, "working precision in decimal digits (default 60, or WF_PRECISION)");
    sub->add_option("--out", cfg.output_path, "JSON report path");
    if (name == "verify-paper-f" || name == "energy" || name == "mesh")
      sub->add_option("--variant", variant, "section2 or pengxiao")->check(CLI::IsMember({"section2", "pengxiao"}));
    if (name == "energy" || name == "mesh") {
      sub->add_option("--radial", cfg.radial, "radial divisions per chart");
      sub->add_option("--angular", cfg.angular, "angular divisions (default 2 x radial)");
      sub->add_option("--exclusion", cfg.exclusion_radius, "exclusion radius around the ends");
    }
    if (name == "mesh") {
      sub->add_option("--obj", cfg.obj_path, "R^3 OBJ path; the S^3 view and sidecar are written next to it");
      sub->add_option("--view-pole", pole, "unit 4-vector for the S^3 stereographic view")->expected(4);
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  cfg.command = app.get_subcommands().front()->get_name();
  cfg.variant = variant == "pengxiao" ? Variant::PengXiao : Variant::Section2;
  if (pole.size() == 4) cfg.view_pole = {pole[0], pole[1], pole[2], pole[3]};
  try {
    cfg.precision = precision ? *precision : default_precision();
  } catch (const wsphere::Error& e) {
    std::cerr << e.what() << '\n';
    return kExitUsage;
  }

  RunResult r = run(cfg);
  (r.exit_code == kExitUsage ? std::cerr : std::cout) << r.summary << '\n';
  return r.exit_code;
}
