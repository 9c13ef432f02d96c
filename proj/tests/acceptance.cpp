// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Tolerances and time budgets are fixed here.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "test_support.hpp"
#include "wsphere/algebra/linalg.hpp"
#include "wsphere/algebra/residue.hpp"
#include "wsphere/algebra/roots.hpp"
#include "wsphere/geometry.hpp"
#include "wsphere/klein.hpp"
#include "wsphere/weierstrass.hpp"

using namespace wsphere;
using wsphere::testing::random_gaussian;
using wsphere::testing::random_poly;

namespace {

constexpr unsigned P = 60;
constexpr double kPi = std::numbers::pi;

ExactPoly zp(std::size_t n) { return ExactPoly::monomial(ExactComplex(1), n); }
ExactPoly cst(const ExactComplex& c) { return ExactPoly(c); }

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects failures; the first few reasons end up in the report line.
struct Checker {
  Outcome out;
  int reasons = 0;
  void require(bool ok, const std::string& why) {
    if (ok) return;
    out.pass = false;
    if (reasons++ < 3) out.detail += (out.detail.empty() ? "" : "; ") + why;
  }
};

BigFloat max_residue(const PengXiaoParams& p) {
  BigFloat m;
  for (const auto& r : end_residues(p, P))
    for (const auto& x : r) m = max(m, x.abs());
  return m;
}

Outcome contact_certificates() {
  Checker c;
  for (unsigned k = 4; k <= 12; ++k) c.require(verify_contact(contact_curve(k)).contact, "k=" + std::to_string(k));
  c.out.detail = c.out.pass ? "Omega(psi ^ psi') == 0 for k = 4..12" : c.out.detail;
  return c.out;
}

Outcome degree_and_branching() {
  Checker c;
  for (unsigned k = 4; k <= 12; ++k) {
    const std::string tag = "k=" + std::to_string(k);
    auto curve = contact_curve(k);
    c.require(curve_degree(curve) == 2 * k, tag + " degree");
    c.require(nondegenerate(curve), tag + " degenerate");
    auto div = branch_divisor(curve);
    std::set<unsigned> roots;
    bool extra = false;
    for (const auto& e : div.entries) {
      if (e.point.kind == PointKind::Infinity) continue;
      if (e.point.kind == PointKind::Binomial && e.point.m == k && e.point.exact == ExactComplex(1) && e.order == 1)
        roots.insert(e.point.index);
      else
        extra = true;
    }
    c.require(roots.size() == k && !extra, tag + " finite branch points are not the k-th roots of unity");
    c.require(div.order_at_infinity() == k - 3, tag + " order at infinity");
    c.require(div.total == 2 * k - 3, tag + " total");
  }
  if (c.out.pass) c.out.detail = "degree 2k, roots of unity (order 1) + inf (order k-3), total 2k-3";
  return c.out;
}

Outcome degenerate_members() {
  Checker c;
  auto one = contact_curve(1);
  c.require(curve_degree(one) == 2, "k=1 degree");
  // a degree-one binomial z - c is the exact point c
  std::vector<ExactComplex> pts;
  for (const auto& e : branch_divisor(one).entries) {
    c.require(e.order == 1, "k=1 order");
    const bool exact = e.point.kind == PointKind::Exact || (e.point.kind == PointKind::Binomial && e.point.m == 1);
    c.require(exact, "k=1 inexact branch point");
    if (exact) pts.push_back(e.point.exact);
  }
  c.require(pts.size() == 2 && ((pts[0] == ExactComplex(0) && pts[1] == ExactComplex(1)) ||
                                (pts[0] == ExactComplex(1) && pts[1] == ExactComplex(0))),
            "k=1 branch points");
  c.require(curve_degree(contact_curve(2)) == 2, "k=2 degree");
  for (unsigned k : {0u, 3u}) {
    bool rejected = false;
    try {
      contact_curve(k);
    } catch (const Error& e) {
      rejected = e.kind() == ErrorKind::Degenerate;
    }
    c.require(rejected, "k=" + std::to_string(k) + " accepted");
  }
  if (c.out.pass) c.out.detail = "k=1: degree 2, branched at 0 and 1; k=2: degree 2; k=0,3 rejected";
  return c.out;
}

Outcome klein_pipeline() {
  Checker c;
  for (unsigned k = 4; k <= 8; ++k) {
    const std::string tag = "k=" + std::to_string(k);
    Pluecker6 eta = second_associated(contact_curve(k));
    c.require(quadric_form(eta).is_zero(), tag + " Pluecker/q");
    c.require(omega_of(eta).is_zero(), tag + " Omega(eta)");
    auto w = identify_W_with_C5(eta);
    c.require(inner(w.w, w.w).is_zero(), tag + " <w,w>");
    auto dw = lift_derivative(w.w);
    c.require(inner(dw, dw).is_zero(), tag + " <w',w'>");
    c.require(w.degree() == static_cast<int>(2 * k + 1), tag + " reduced degree " + std::to_string(w.degree()));
  }
  if (c.out.pass) c.out.detail = "q = Omega = <w,w> = <w',w'> = 0, reduced degree 2k+1 for k = 4..8";
  return c.out;
}

Outcome null_maps() {
  Checker c;
  for (unsigned k = 4; k <= 12; ++k) {
    for (const auto& [name, f] : {std::pair<std::string, ExactMap3>{"pipeline", pipeline(k).F}, {"closed form", paper_F(k)}}) {
      const std::string tag = name + " k=" + std::to_string(k);
      c.require(verify_null_C3(f).null, tag + " not null");
      auto poles = pole_analysis(f);
      c.require(poles.count == 2 * k + 1 && poles.all_simple, tag + " poles " + std::to_string(poles.count));
    }
  }
  if (c.out.pass) c.out.detail = "(F',F') == 0 exactly, 2k+1 simple poles, k = 4..12";
  return c.out;
}

Outcome radical_closed_form() {
  Checker c;
  auto f = paper_F_pengxiao(P);
  auto cert = verify_null_C3(f, P, 100);
  c.require(cert.max_relative_residual < 1e-30, "null residual");
  auto poles = pole_analysis(f, P);
  c.require(poles.finite.size() == 9 && poles.all_simple && !poles.pole_at_infinity, "pole count");
  BigComplex mu = principal_root(BigComplex(BigFloat(-31) - BigFloat(8) * sqrt(BigFloat(15.0, P))), 4);
  std::vector<BigComplex> expect{BigComplex(BigFloat(0.0, P))};
  for (unsigned j = 0; j < 4; ++j) {
    expect.push_back(unit_root(j, 4, P));
    expect.push_back(mu * unit_root(j, 4, P));
  }
  BigFloat worst;
  for (const auto& e : expect) {
    BigFloat best = BigFloat(1.0, P);
    for (const auto& r : poles.finite)
      if ((r.value - e).abs() < best) best = (r.value - e).abs();
    worst = max(worst, best);
  }
  c.require(worst < BigFloat::pow10(-40, P), "pole distance " + worst.str(4));
  std::ostringstream os;
  os << "null residual " << cert.max_relative_residual << " (< 1e-30), pole error " << worst.str(3) << " (< 1e-40)";
  if (c.out.pass) c.out.detail = os.str();
  return c.out;
}

Outcome end_residue_values() {
  BigFloat m = max_residue(paper_k4_params(P));
  return {m < BigFloat::pow10(-35, P), "max residue over 9 ends " + m.str(3) + " (< 1e-35)"};
}

Outcome newton_recovery() {
  Checker c;
  auto truth = paper_k4_params(P);
  BigComplex eps(BigFloat::pow10(-3, P));
  PengXiaoParams start{4, truth.a + eps, truth.b + eps, truth.c + eps, truth.lambda + eps};
  auto sol = solve_residues(4, start, P);
  BigFloat move = max(max((sol.a - truth.a).abs(), (sol.b - truth.b).abs()),
                      max((sol.c - truth.c).abs(), (sol.lambda - truth.lambda).abs()));
  c.require(move < BigFloat::pow10(-10, P), "k=4 recovery " + move.str(3));
  auto k5 = solve_residues(5, truth, P);
  auto k6 = solve_residues(6, k5, P);
  BigFloat r5 = max_residue(k5), r6 = max_residue(k6);
  c.require(r5 < BigFloat::pow10(-40, P), "k=5 residual " + r5.str(3));
  c.require(r6 < BigFloat::pow10(-40, P), "k=6 residual " + r6.str(3));
  if (c.out.pass)
    c.out.detail = "k=4 error " + move.str(3) + " (< 1e-10); residual k=5 " + r5.str(3) + ", k=6 " + r6.str(3) + " (< 1e-40)";
  return c.out;
}

Outcome energy() {
  Checker c;
  const MeshSpec finest = default_energy_grids().back();
  std::ostringstream os;
  os.precision(8);
  auto k4 = total_curvature(make_model(paper_F(4), P), finest, 1.0);
  c.require(k4.n == 9, "k=4 ends");
  c.require(std::abs(k4.quadrature_estimate - 36 * kPi) <= 0.01 * 36 * kPi, "k=4 quadrature off by more than 1%");
  c.require(std::abs(k4.willmore - 32 * kPi) <= 1e-12 * 32 * kPi, "k=4 Willmore energy is not 32 pi");
  auto k5 = total_curvature(make_model(pipeline(5).F, P), finest, 1.0);
  c.require(k5.n == 11, "pipeline(5) ends");
  c.require(std::abs(k5.quadrature_estimate - 44 * kPi) <= 0.01 * 44 * kPi, "pipeline(5) quadrature off by more than 1%");
  os << "grid " << finest.radial << "x" << finest.angular << "; k=4: int(-K) " << k4.total_curvature << ", +4pi "
     << k4.quadrature_estimate << " vs 36pi " << 36 * kPi << " (rel " << k4.relative_error << "), W " << k4.willmore
     << "; pipeline(5): int(-K) " << k5.total_curvature << ", +4pi " << k5.quadrature_estimate << " vs 44pi "
     << 44 * kPi << " (rel " << k5.relative_error << ")";
  c.out.detail = c.out.pass ? os.str() : c.out.detail + "; " + os.str();
  return c.out;
}

// Second-order central differences: the error in H is about C h^2 with C
// growing with the curvature, so the worst sample is reported in full.
Outcome minimality() {
  Checker c;
  auto m = make_model(paper_F(4), P);
  std::mt19937_64 rng(1009);
  std::uniform_real_distribution<double> r(0.2, 3.0), t(0.0, 2 * kPi);
  const double h = 1e-4;
  double worst_h = 0, worst_slope = 1e9, worst_k = 0;
  std::string worst_z;
  int taken = 0, above = 0;
  while (taken < 50) {
    const double rad = r(rng), ang = t(rng);
    BigComplex z = polar_point(rad, ang, P);
    if (distance_to_ends(m, z).to_double() < 0.1) continue;
    ++taken;
    const auto e1 = curvature_estimates(m, z, h);
    const double h2 = curvature_estimates(m, z, h / 2).H;
    const double h4 = curvature_estimates(m, z, h / 4).H;
    if (std::abs(e1.H) >= 1e-6) ++above;
    if (std::abs(e1.H) > worst_h) {
      worst_h = std::abs(e1.H);
      worst_k = e1.K;
      worst_z = z.str(4);
    }
    worst_slope = std::min(worst_slope, std::log2(std::abs(e1.H - h2) / std::abs(h2 - h4)));
  }
  c.require(worst_h < 1e-6, std::to_string(above) + " of 50 samples have |H| >= 1e-6");
  c.require(worst_slope >= 1.8, "Richardson slope too small");
  std::ostringstream os;
  os << "max |H| " << worst_h << " (< 1e-6) at z = " << worst_z << " where K = " << worst_k
     << ", min Richardson slope " << worst_slope << " (>= 1.8)";
  c.out.detail = c.out.pass ? os.str() : c.out.detail + "; " + os.str();
  return c.out;
}

ExactPoly antiderivative(const ExactPoly& p) {
  if (p.is_zero()) return p;
  std::vector<ExactComplex> co(static_cast<std::size_t>(p.degree()) + 2);
  for (int i = 0; i <= p.degree(); ++i) co[i + 1] = p.coeff(i) / ExactComplex(i + 1);
  return ExactPoly(std::move(co));
}

Outcome property_suites() {
  Checker c;
  std::mt19937_64 rng(20261017);
  // exact algebra: division, square-free recomposition, reduced rational functions
  for (int trial = 0; trial < 40; ++trial) {
    ExactPoly p = random_poly(rng, trial % 6), q = random_poly(rng, 1 + trial % 4);
    auto [quot, rem] = divmod(p * q, q);
    c.require(quot == p && rem.is_zero(), "division round trip");
    ExactPoly s = random_poly(rng, 1, 4);
    ExactPoly prod = s * s * q;
    ExactPoly back(ExactComplex(1));
    auto parts = square_free_decomposition(prod);
    for (std::size_t i = 0; i < parts.size(); ++i) back = back * pow(parts[i], static_cast<unsigned>(i + 1));
    c.require(back == prod.monic(), "square-free recomposition");
    ExactRational f(p * q, q * s);
    c.require(f == ExactRational(p, s), "rational reduction");
  }
  // residue theorem: finite residues plus the residue at infinity sum to zero
  for (int trial = 0; trial < 20; ++trial) {
    ExactPoly den = random_poly(rng, 2 + trial % 4, 5);
    if (trial % 3 == 0) den = den * pow(zp(1) - cst(ExactComplex(1)), 2);
    ExactRational f(random_poly(rng, den.degree() - 1, 5), den);
    if (f.den().degree() < 1) continue;
    BigComplex sum(residue_at_infinity(f), P);
    for (const auto& root : poly_roots(f.den(), P)) sum += residue(f, root.value, P);
    c.require(sum.abs() < BigFloat::pow10(-45, P), "residue sum " + sum.abs().str(3));
  }
  // psi_embed / psi_invert on polynomial null curves from random spinors
  const ExactComplex I = ExactComplex::i();
  for (int trial = 0; trial < 20; ++trial) {
    ExactPoly s1 = random_poly(rng, 2, 3), s2 = random_poly(rng, 2, 3);
    ExactPoly a = s1 * s1, b = s2 * s2;
    ExactMap3 f{{ExactRational(antiderivative(a + b)), ExactRational(antiderivative(I * (a - b))),
                 ExactRational(antiderivative((ExactComplex(-2) * I) * (s1 * s2)))}};
    auto g = psi_invert(psi_embed(f));
    c.require(g[0] == f[0] && g[1] == f[1] && g[2] == f[2], "psi round trip");
  }
  for (unsigned k = 4; k <= 8; ++k) {
    auto f = paper_F(k);
    auto g = psi_invert(psi_embed(f));
    c.require(g[0] == f[0] && g[1] == f[1] && g[2] == f[2], "psi round trip k=" + std::to_string(k));
  }
  // degree law on curves with a prescribed branch order b at z = 0
  int done = 0;
  std::uniform_int_distribution<int> bdist(0, 3);
  while (done < 20) {
    const unsigned b = static_cast<unsigned>(bdist(rng));
    Lift4 base{cst(ExactComplex(1)), zp(b + 1) * (cst(ExactComplex(1)) + random_poly(rng, 1, 3) * zp(1)),
               zp(b + 2) * (cst(ExactComplex(2)) + random_poly(rng, 1, 3) * zp(1)),
               zp(b + 3) * (cst(ExactComplex(3)) + random_poly(rng, 1, 3) * zp(1))};
    Matrix<ExactComplex> a(4, std::vector<ExactComplex>(4));
    for (auto& row : a)
      for (auto& x : row) x = random_gaussian(rng, 3);
    if (exact_rank(a) < 4) continue;
    Lift4 l;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) l[i] = l[i] + a[i][j] * base[j];
    auto curve = make_curve(l);
    auto div = branch_divisor(curve);
    const unsigned d = curve_degree(curve);
    c.require(div.total >= b, "branch order at 0");
    c.require(static_cast<unsigned>(second_associated(curve).degree()) == 2 * d - 2 - div.total, "degree law");
    ++done;
  }
  auto gram = gram_self_test();
  c.require(gram.isometry && gram.invertible && gram.fallback_isometry, "Gram self-test");
  if (c.out.pass)
    c.out.detail = "algebra round trips, residue sums, psi round trips, degree law on 20 curves, Gram self-test";
  return c.out;
}

struct Criterion {
  int id;
  const char* name;
  double budget_s;  // 0: no time limit
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "exact contact", 1.0, contact_certificates},
      {2, "degree and branch divisor", 2.0, degree_and_branching},
      {3, "degenerate members", 0.0, degenerate_members},
      {4, "Klein pipeline", 10.0, klein_pipeline},
      {5, "exact null maps", 10.0, null_maps},
      {6, "radical closed form", 0.0, radical_closed_form},
      {7, "end residues", 0.0, end_residue_values},
      {8, "Newton recovery", 30.0, newton_recovery},
      {9, "energy", 120.0, energy},
      {10, "minimality", 0.0, minimality},
      {11, "property suites", 0.0, property_suites},
  };
  int failures = 0;
  for (const auto& cr : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = cr.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (cr.budget_s > 0 && dt > cr.budget_s) {
      o.pass = false;
      o.detail += "; over the " + std::to_string(static_cast<int>(cr.budget_s)) + " s budget";
    }
    if (!o.pass) ++failures;
    std::printf("criterion %2d %-26s %s  [%.2f s]  %s\n", cr.id, cr.name, o.pass ? "PASS" : "FAIL", dt, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
