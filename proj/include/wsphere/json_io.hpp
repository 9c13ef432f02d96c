// JSON forms of the library's values. Exact scalars are {"re": "n/d",
// "im": "n/d"}; high-precision scalars carry decimal strings and their
// precision in digits. Polynomials are coefficient arrays, lowest degree
// first. Keys are sorted, so equal values serialize to identical bytes.
#ifndef WSPHERE_JSON_IO_HPP
#define WSPHERE_JSON_IO_HPP

#include <json.hpp>

#include <string>
#include <vector>

#include "wsphere/contact.hpp"
#include "wsphere/geometry.hpp"
#include "wsphere/klein.hpp"
#include "wsphere/weierstrass.hpp"

namespace wsphere {

using Json = nlohmann::json;

inline Json to_json(const ExactComplex& z) { return {{"re", rational_to_string(z.re())}, {"im", rational_to_string(z.im())}}; }

inline ExactComplex exact_complex_from_json(const Json& j) {
  return {rational_from_string(j.at("re").get<std::string>()), rational_from_string(j.at("im").get<std::string>())};
}

inline Json to_json(const BigComplex& z) {
  const unsigned d = z.digits();
  return {{"re", z.re().str(d)}, {"im", z.im().str(d)}, {"precision", d}};
}

inline BigComplex big_complex_from_json(const Json& j) {
  const unsigned d = j.at("precision").get<unsigned>();
  return {BigFloat(j.at("re").get<std::string>(), d), BigFloat(j.at("im").get<std::string>(), d)};
}

template <Scalar T>
Json to_json(const Polynomial<T>& p) {
  Json a = Json::array();
  for (const auto& c : p.coeffs()) a.push_back(to_json(c));
  return a;
}

template <Scalar T>
Json to_json(const RationalFunction<T>& f) {
  return {{"num", to_json(f.num())}, {"den", to_json(f.den())}};
}

template <Scalar T>
Json to_json(const MeroMap3<T>& f) {
  return Json::array({to_json(f[0]), to_json(f[1]), to_json(f[2])});
}

inline Json to_json(const PengXiaoParams& p) {
  return {{"k", p.k}, {"a", to_json(p.a)}, {"b", to_json(p.b)}, {"c", to_json(p.c)}, {"lambda", to_json(p.lambda)}};
}

inline PengXiaoParams params_from_json(const Json& j) {
  return {j.at("k").get<unsigned>(), big_complex_from_json(j.at("a")), big_complex_from_json(j.at("b")),
          big_complex_from_json(j.at("c")), big_complex_from_json(j.at("lambda"))};
}

inline Json to_json(const ProjectiveCurve4& c) {
  Json lift = Json::array();
  for (const auto& p : c.lift) lift.push_back(to_json(p));
  return {{"lift", lift}, {"homogeneous_degree", c.homogeneous_degree}};
}

inline Json to_json(const NullCurve5& c) {
  Json w = Json::array();
  for (const auto& p : c.w) w.push_back(to_json(p));
  return {{"w", w}, {"degree", c.degree()}};
}

inline Json to_json(const BranchDivisor& d) {
  Json entries = Json::array();
  for (const auto& e : d.entries) entries.push_back({{"point", e.point.label()}, {"order", e.order}});
  return {{"entries", entries}, {"total", d.total}};
}

inline Json to_json(const PipelineCertificate& c) {
  return {{"contact", c.contact},
          {"degree", c.degree},
          {"branch_total", c.branch_total},
          {"plucker_ok", c.plucker_ok},
          {"omega_ok", c.omega_ok},
          {"null_ok", c.null_ok},
          {"pole_count", c.pole_count},
          {"simple_poles", c.simple_poles},
          {"embedded_degree", c.embedded_degree},
          {"nondegenerate", c.nondegenerate},
          {"used_fallback", c.used_fallback}};
}

inline Json to_json(const GramReport& g) {
  return {{"isometry", g.isometry}, {"invertible", g.invertible}, {"fallback_isometry", g.fallback_isometry}};
}

inline Json to_json(const MeshSpec& s) {
  return {{"radial", s.radial}, {"angular", s.angular}, {"exclusion_radius", s.exclusion_radius}};
}

inline Json to_json(const EnergyReport& r) {
  return {{"n", r.n},
          {"total_curvature", r.total_curvature},
          {"willmore", r.willmore},
          {"quadrature_estimate", r.quadrature_estimate},
          {"relative_error", r.relative_error},
          {"willmore_relative_error", r.willmore_relative_error},
          {"gauss_degree", r.gauss_degree},
          {"excluded_cells", r.excluded_cells},
          {"tail", r.tail},
          {"grid", to_json(r.grid)},
          {"derivation", r.derivation}};
}

/// Sidecar for an S^3 mesh: the 4D coordinates and the view pole used for
/// the accompanying OBJ.
inline Json s3_sidecar(const Mesh& m, const std::array<double, 4>& pole) {
  Json v = Json::array();
  for (const auto& x : m.s3) v.push_back({x[0] + 0.0, x[1] + 0.0, x[2] + 0.0, x[3] + 0.0});  // no -0
  return {{"view_pole", {pole[0], pole[1], pole[2], pole[3]}}, {"vertices", v}, {"faces", m.faces.size()}};
}

}  // namespace wsphere

#endif  // WSPHERE_JSON_IO_HPP
