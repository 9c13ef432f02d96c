// Numerical geometry of f = Re F for a meromorphic null map F: evaluation,
// conformality and curvature checks, the passage to S^3, total curvature by
// quadrature and two-chart triangle meshes.
#ifndef WSPHERE_GEOMETRY_HPP
#define WSPHERE_GEOMETRY_HPP

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <numbers>
#include <ostream>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "wsphere/algebra/roots.hpp"
#include "wsphere/error.hpp"
#include "wsphere/klein.hpp"

namespace wsphere {

/// Neumaier's compensated sum.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    comp_ += std::abs(sum_) >= std::abs(x) ? (sum_ - t) + x : (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// Everything needed to sample f = Re F: F and F' at working precision,
/// the reduced Gauss map g = N/D and the poles (the ends).
struct SurfaceModel {
  NumMap3 F;
  std::array<NumRational, 3> dF;
  NumPoly g_num, g_den, dg_num, dg_den;
  int gauss_degree = 0;
  std::vector<BigComplex> poles;
  bool pole_at_infinity = false;
  unsigned digits = 0;

  unsigned ends() const { return static_cast<unsigned>(poles.size()) + (pole_at_infinity ? 1u : 0u); }
};

namespace detail {

inline void attach_gauss_map(SurfaceModel& m, NumPoly num, NumPoly den) {
  m.gauss_degree = std::max(num.degree(), den.degree());
  m.dg_num = poly_derivative(num);
  m.dg_den = poly_derivative(den);
  m.g_num = std::move(num);
  m.g_den = std::move(den);
}

}  // namespace detail

/// Model of an exactly known map: F' and g are computed exactly and then
/// rounded to `digits`.
inline SurfaceModel make_model(const ExactMap3& f, unsigned digits) {
  SurfaceModel m;
  m.digits = digits;
  m.F = to_numeric(f, digits);
  std::array<ExactRational, 3> phi{derivative(f[0]), derivative(f[1]), derivative(f[2])};
  for (std::size_t i = 0; i < 3; ++i) m.dF[i] = to_numeric(phi[i], digits);
  const ExactComplex i = ExactComplex::i();
  ExactRational den = phi[0] - ExactRational(i) * phi[1];
  if (den.is_zero()) throw Error(ErrorKind::Degenerate, "phi1 - i phi2 vanishes identically");
  ExactRational g = ExactRational(i) * phi[2] / den;
  detail::attach_gauss_map(m, to_numeric(g.num(), digits), to_numeric(g.den(), digits));
  PoleReport poles = pole_analysis(f, digits);
  for (const auto& r : poles.finite) m.poles.push_back(r.value);
  m.pole_at_infinity = poles.pole_at_infinity;
  return m;
}

/// Model of a numeric map whose components share a denominator.
inline SurfaceModel make_model(const NumMap3& f, unsigned digits) {
  SurfaceModel m;
  m.digits = digits;
  m.F = f;
  for (std::size_t i = 0; i < 3; ++i) m.dF[i] = derivative(f[i]);
  const BigComplex i = BigComplex::i();
  // with a shared denominator the derivatives share one as well
  NumPoly num = i * m.dF[2].num();
  NumPoly den = m.dF[0].num() - i * m.dF[1].num();
  if (den.is_zero()) throw Error(ErrorKind::Degenerate, "phi1 - i phi2 vanishes identically");
  NumRational g = cancel_common_roots(NumRational(num, den), digits);
  detail::attach_gauss_map(m, g.num(), g.den());
  PoleReport poles = pole_analysis(f, digits);
  for (const auto& r : poles.finite) m.poles.push_back(r.value);
  m.pole_at_infinity = poles.pole_at_infinity;
  return m;
}

struct SurfaceSample {
  BigComplex z;
  std::array<BigFloat, 3> xyz;
  std::array<double, 4> s3{};
  double K = 0.0;
  double H = 0.0;

  std::array<double, 3> xyz_double() const { return {xyz[0].to_double(), xyz[1].to_double(), xyz[2].to_double()}; }
};

/// x = (2 y, |y|^2 - 1) / (|y|^2 + 1), the inverse of the projection from
/// p = (0, 0, 0, 1).
template <class Real>
std::array<Real, 4> inverse_stereographic(const std::array<Real, 3>& y) {
  const Real n2 = y[0] * y[0] + y[1] * y[1] + y[2] * y[2];
  const Real d = n2 + Real(1);
  return {Real(2) * y[0] / d, Real(2) * y[1] / d, Real(2) * y[2] / d, (n2 - Real(1)) / d};
}

/// Distance from z to the nearest end, measured in z for |z| <= 1 and in
/// w = 1/z otherwise (the chart the point lives in).
inline BigFloat distance_to_ends(const SurfaceModel& m, const BigComplex& z) {
  const bool outer = z.abs() > BigFloat(1);
  BigFloat best(1e300, 20);
  const BigComplex w = outer ? BigComplex(1) / z : BigComplex();
  for (const auto& p : m.poles) {
    if (!outer) {
      best = std::min(best, (z - p).abs());
    } else if (!p.is_zero()) {
      best = std::min(best, (w - BigComplex(1) / p).abs());
    }
  }
  if (outer && m.pole_at_infinity) best = std::min(best, w.abs());
  return best;
}

/// (Re F1, Re F2, Re F3) at z, which must keep `exclusion_radius` away from
/// every end.
inline SurfaceSample eval_surface(const SurfaceModel& m, const BigComplex& z, double exclusion_radius = 0.0) {
  BigComplex zz = z.with_digits(m.digits);
  if (exclusion_radius > 0.0 && distance_to_ends(m, zz) < BigFloat(exclusion_radius, 20))
    throw Error(ErrorKind::InvalidArgument, "sample " + zz.str(10) + " lies inside an exclusion disk");
  SurfaceSample s;
  s.z = zz;
  for (std::size_t i = 0; i < 3; ++i) {
    BigComplex den = m.F[i].den()(zz);
    if (den.is_zero()) throw Error(ErrorKind::InvalidArgument, "sample hits a pole");
    s.xyz[i] = (m.F[i].num()(zz) / den).re();
  }
  s.s3 = inverse_stereographic(s.xyz_double());
  return s;
}

struct ConformalityReport {
  /// max |(F', F')| / |F'|^2
  double null_residual = 0.0;
  /// max |f_x . f_y| / |f_x|^2 and max ||f_x| - |f_y|| / |f_x| from central differences
  double fd_orthogonality = 0.0;
  double fd_length_defect = 0.0;
};

inline ConformalityReport conformality_residual(const SurfaceModel& m, const std::vector<BigComplex>& samples,
                                                double h = 1e-4) {
  ConformalityReport rep;
  const BigComplex hh(BigFloat(h, m.digits));
  const BigComplex ih = BigComplex::i() * hh;
  auto f = [&](const BigComplex& z) {
    std::array<BigFloat, 3> out;
    for (std::size_t i = 0; i < 3; ++i) out[i] = m.F[i](z).re();
    return out;
  };
  for (const auto& z0 : samples) {
    BigComplex z = z0.with_digits(m.digits);
    BigComplex s;
    BigFloat n;
    for (std::size_t i = 0; i < 3; ++i) {
      BigComplex v = m.dF[i](z);
      s += v * v;
      n += v.norm();
    }
    if (n.is_zero()) throw Error(ErrorKind::Degenerate, "F' vanishes at a sample");
    rep.null_residual = std::max(rep.null_residual, (s.abs() / n).to_double());
    auto xp = f(z + hh), xm = f(z - hh), yp = f(z + ih), ym = f(z - ih);
    BigFloat two_h = BigFloat(2) * hh.re();
    BigFloat dot, ex, ey;
    for (std::size_t i = 0; i < 3; ++i) {
      BigFloat fx = (xp[i] - xm[i]) / two_h, fy = (yp[i] - ym[i]) / two_h;
      dot += fx * fy;
      ex += fx * fx;
      ey += fy * fy;
    }
    rep.fd_orthogonality = std::max(rep.fd_orthogonality, (abs(dot) / ex).to_double());
    rep.fd_length_defect = std::max(rep.fd_length_defect, (abs(sqrt(ex) - sqrt(ey)) / sqrt(ex)).to_double());
  }
  return rep;
}

struct CurvatureEstimate {
  double K = 0.0;
  double H = 0.0;
};

/// Gauss and mean curvature of f = Re F at z from central differences with
/// step h (fundamental forms from f_x, f_y, f_xx, f_xy, f_yy).
inline CurvatureEstimate curvature_estimates(const SurfaceModel& m, const BigComplex& z0, double h) {
  const unsigned d = m.digits;
  const BigComplex z = z0.with_digits(d);
  const BigFloat hf(h, d);
  const BigComplex dx(hf), dy = BigComplex::i() * dx;
  auto f = [&](const BigComplex& p) {
    std::array<BigFloat, 3> out;
    for (std::size_t i = 0; i < 3; ++i) {
      BigComplex den = m.F[i].den()(p);
      if (den.is_zero()) throw Error(ErrorKind::InvalidArgument, "finite-difference stencil hits a pole");
      out[i] = (m.F[i].num()(p) / den).re();
    }
    return out;
  };
  auto c = f(z), xp = f(z + dx), xm = f(z - dx), yp = f(z + dy), ym = f(z - dy);
  auto pp = f(z + dx + dy), pm = f(z + dx - dy), mp = f(z - dx + dy), mm = f(z - dx - dy);
  const BigFloat two(2), h2 = hf * hf;
  std::array<BigFloat, 3> fx, fy, fxx, fyy, fxy;
  for (std::size_t i = 0; i < 3; ++i) {
    fx[i] = (xp[i] - xm[i]) / (two * hf);
    fy[i] = (yp[i] - ym[i]) / (two * hf);
    fxx[i] = (xp[i] - two * c[i] + xm[i]) / h2;
    fyy[i] = (yp[i] - two * c[i] + ym[i]) / h2;
    fxy[i] = (pp[i] - pm[i] - mp[i] + mm[i]) / (BigFloat(4) * h2);
  }
  auto dot = [](const std::array<BigFloat, 3>& a, const std::array<BigFloat, 3>& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
  };
  const BigFloat E = dot(fx, fx), F = dot(fx, fy), G = dot(fy, fy);
  const BigFloat det = E * G - F * F;
  if (!(det > BigFloat::pow10(-12, d) * (E + G) * (E + G)))
    throw Error(ErrorKind::Degenerate, "metric is degenerate at " + z.str(10));
  std::array<BigFloat, 3> n{fx[1] * fy[2] - fx[2] * fy[1], fx[2] * fy[0] - fx[0] * fy[2], fx[0] * fy[1] - fx[1] * fy[0]};
  const BigFloat nn = sqrt(dot(n, n));
  for (auto& x : n) x = x / nn;
  const BigFloat L = dot(fxx, n), M = dot(fxy, n), N = dot(fyy, n);
  return {((L * N - M * M) / det).to_double(), ((E * N - two * F * M + G * L) / (two * det)).to_double()};
}

/// Pullback density of the sphere's area form under g = N/D,
/// 4 |N'D - ND'|^2 / (|N|^2 + |D|^2)^2, i.e. -K dA per unit chart area.
inline BigFloat gauss_density(const SurfaceModel& m, const BigComplex& z) {
  BigComplex n = m.g_num(z), d = m.g_den(z);
  BigComplex w = m.dg_num(z) * d - n * m.dg_den(z);
  BigFloat s = n.norm() + d.norm();
  return BigFloat(4) * w.norm() / (s * s);
}

inline BigComplex polar_point(double r, double t, unsigned digits) {
  return {BigFloat(r * std::cos(t), digits), BigFloat(r * std::sin(t), digits)};
}

namespace detail {

/// Gauss map at `digits` in the z chart, or in the w = 1/z chart (reversed
/// coefficients of equal length, so that g(1/w) = N~(w) / D~(w)).
inline SurfaceModel chart_gauss_map(const SurfaceModel& m, unsigned digits, bool outer) {
  const int deg = std::max(m.g_num.degree(), m.g_den.degree());
  auto convert = [&](const NumPoly& p) {
    std::vector<BigComplex> c(static_cast<std::size_t>(deg) + 1, BigComplex(BigFloat(0.0, digits)));
    for (int i = 0; i <= p.degree(); ++i) c[static_cast<std::size_t>(outer ? deg - i : i)] = p.coeff(i).with_digits(digits);
    return NumPoly(std::move(c));
  };
  SurfaceModel g;
  g.g_num = convert(m.g_num);
  g.g_den = convert(m.g_den);
  g.dg_num = poly_derivative(g.g_num);
  g.dg_den = poly_derivative(g.g_den);
  return g;
}

}  // namespace detail

struct MeshSpec {
  unsigned radial = 32;
  unsigned angular = 64;
  double exclusion_radius = 0.0;

  void validate() const {
    if (radial < 8 || angular < 8) throw Error(ErrorKind::InvalidArgument, "mesh divisions must be at least 8");
    if (!(exclusion_radius > 0.0)) throw Error(ErrorKind::InvalidArgument, "exclusion radius must be positive (poles would be hit)");
  }
};

/// Exclusion radius C / sqrt(radial divisions) with C = 1/2.
inline double default_exclusion_radius(unsigned radial) { return 0.5 / std::sqrt(static_cast<double>(radial)); }

/// Grids used by the energy command, coarse to fine.
inline std::vector<MeshSpec> default_energy_grids() {
  std::vector<MeshSpec> out;
  for (unsigned r : {16u, 32u, 64u}) out.push_back({r, 2 * r, default_exclusion_radius(r)});
  return out;
}

struct EnergyReport {
  unsigned n = 0;
  /// Integral of -K dA over the minimal surface in R^3 (= 4 pi deg g).
  double total_curvature = 0.0;
  /// 4 pi (n - 1), the closed form.
  double willmore = 0.0;
  /// Integral of (H^2 + 1) dA over the compactified sphere in S^3, obtained
  /// as total_curvature + 4 pi; tends to 4 pi n.
  double quadrature_estimate = 0.0;
  /// |quadrature_estimate - 4 pi n| / (4 pi n)
  double relative_error = 0.0;
  /// |total_curvature - willmore| / willmore
  double willmore_relative_error = 0.0;
  int gauss_degree = 0;
  unsigned excluded_cells = 0;
  double tail = 0.0;
  MeshSpec grid;
  std::string derivation =
      "The Willmore integrand is pointwise conformally invariant: (H^2 - K + 1) dA on S^3 equals (H^2 - K) dA on R^3, so "
      "W = int(-K) dA = 4 pi deg g for a minimal surface. Gauss-Bonnet on the sphere (chi = 2) gives "
      "int K dA = 4 pi on S^3, hence int (H^2 + 1) dA = W + 4 pi, which is 4 pi n when W = 4 pi (n - 1).";
};

namespace detail {

/// Runs `row(i)` for i in [0, rows) on a small pool; results are stored per
/// row so the reduction order does not depend on scheduling.
template <class Fn>
void parallel_rows(unsigned rows, Fn&& row) {
  const unsigned workers = std::max(1u, std::min(rows, std::thread::hardware_concurrency()));
  std::atomic<unsigned> next{0};
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (unsigned i = next++; i < rows; i = next++) row(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace detail

/// The Gauss-map density in double precision, for quadrature.
struct DoubleGaussMap {
  std::array<std::vector<std::complex<double>>, 4> c;  // N, D, N', D'

  explicit DoubleGaussMap(const SurfaceModel& g) {
    const NumPoly* src[4] = {&g.g_num, &g.g_den, &g.dg_num, &g.dg_den};
    for (std::size_t i = 0; i < 4; ++i)
      for (const auto& x : src[i]->coeffs()) c[i].push_back(x.to_complex());
  }

  double operator()(std::complex<double> z) const {
    std::array<std::complex<double>, 4> v{};
    for (std::size_t i = 0; i < 4; ++i)
      for (auto it = c[i].rbegin(); it != c[i].rend(); ++it) v[i] = v[i] * z + *it;
    const double s = std::norm(v[0]) + std::norm(v[1]);
    return 4.0 * std::norm(v[2] * v[1] - v[0] * v[3]) / (s * s);
  }
};

/// Adaptive quadrature of the Gauss-map pullback over the z-chart |z| < 1
/// and the w = 1/z chart |w| < 1, in double precision with coefficients
/// rounded from the working precision.
///
/// Base cells whose centre lies within the exclusion radius of an end count
/// as the density at that end times the cell area (the Gauss map extends
/// holomorphically across a planar end). Every other base cell is
/// integrated with a 2 x 2 Gauss rule and compared against its four
/// children; cells that disagree by more than `tolerance` (relative to the
/// target 4 pi n, per unit chart area) are split, up to `max_depth` times.
/// The density can be sharply peaked where the Gauss map nearly cancels,
/// which a fixed grid would only resolve at very large sizes.
inline EnergyReport total_curvature(const SurfaceModel& m, const MeshSpec& spec, double max_relative_error = 0.01,
                                    double tolerance = 1e-6, unsigned max_depth = 8) {
  spec.validate();
  const unsigned R = spec.radial, A = spec.angular;
  const double pi = std::numbers::pi;
  const double dr = 1.0 / R, dt = 2.0 * pi / A;
  // Gauss map in each chart; in w = 1/z the reversed polynomials give g(1/w)
  const std::array<SurfaceModel, 2> chart{detail::chart_gauss_map(m, m.digits, false),
                                          detail::chart_gauss_map(m, m.digits, true)};
  const std::array<DoubleGaussMap, 2> dens{DoubleGaussMap(chart[0]), DoubleGaussMap(chart[1])};
  struct End {
    std::complex<double> local;
    double density;
  };
  std::array<std::vector<End>, 2> ends;
  for (const auto& p : m.poles) {
    if (p.abs() <= BigFloat(1)) ends[0].push_back({p.to_complex(), gauss_density(chart[0], p).to_double()});
    if (!p.is_zero() && p.abs() >= BigFloat(1)) {
      BigComplex w = BigComplex(1) / p;
      ends[1].push_back({w.to_complex(), gauss_density(chart[1], w).to_double()});
    }
  }
  if (m.pole_at_infinity) {
    const BigComplex origin(BigFloat(0.0, m.digits));
    ends[1].push_back({0.0, gauss_density(chart[1], origin).to_double()});
  }
  const double tol_density = tolerance * 4.0 * pi * std::max(1u, m.ends()) / (2.0 * pi);
  const double g = 0.5 / std::sqrt(3.0);

  auto gauss4 = [&](unsigned c, double r0, double r1, double t0, double t1) {
    double out = 0.0;
    const double rm = 0.5 * (r0 + r1), hr = r1 - r0, tm = 0.5 * (t0 + t1), ht = t1 - t0;
    for (double a : {-g, g})
      for (double b : {-g, g}) {
        const double r = rm + a * hr;
        out += dens[c](std::polar(r, tm + b * ht)) * 0.25 * r * hr * ht;
      }
    return out;
  };
  std::function<double(unsigned, double, double, double, double, double, unsigned)> refine =
      [&](unsigned c, double r0, double r1, double t0, double t1, double coarse, unsigned depth) -> double {
    const double rm = 0.5 * (r0 + r1), tm = 0.5 * (t0 + t1);
    const std::array<std::array<double, 4>, 4> kids{{{r0, rm, t0, tm}, {r0, rm, tm, t1}, {rm, r1, t0, tm}, {rm, r1, tm, t1}}};
    std::array<double, 4> q{};
    double fine = 0.0;
    for (std::size_t i = 0; i < 4; ++i) fine += q[i] = gauss4(c, kids[i][0], kids[i][1], kids[i][2], kids[i][3]);
    const double area = 0.5 * (r1 * r1 - r0 * r0) * (t1 - t0);
    if (depth == 0 || std::abs(fine - coarse) <= tol_density * area) return fine;
    double out = 0.0;
    for (std::size_t i = 0; i < 4; ++i) out += refine(c, kids[i][0], kids[i][1], kids[i][2], kids[i][3], q[i], depth - 1);
    return out;
  };

  std::vector<double> row_sum(2 * R, 0.0), row_tail(2 * R, 0.0);
  std::vector<unsigned> row_excluded(2 * R, 0);
  detail::parallel_rows(2 * R, [&](unsigned idx) {
    const unsigned c = idx / R, i = idx % R;
    const double r0 = i * dr, r1 = r0 + dr;
    CompensatedSum s, tail;
    unsigned excluded = 0;
    for (unsigned j = 0; j < A; ++j) {
      const double t0 = j * dt, t1 = t0 + dt;
      const auto centre = std::polar(0.5 * (r0 + r1), 0.5 * (t0 + t1));
      const End* hit = nullptr;
      for (const auto& e : ends[c])
        if (std::abs(centre - e.local) < spec.exclusion_radius) hit = &e;
      if (hit) {
        tail.add(hit->density * 0.5 * (r1 * r1 - r0 * r0) * dt);
        ++excluded;
        continue;
      }
      s.add(refine(c, r0, r1, t0, t1, gauss4(c, r0, r1, t0, t1), max_depth));
    }
    row_sum[idx] = s.value();
    row_tail[idx] = tail.value();
    row_excluded[idx] = excluded;
  });
  CompensatedSum total, tail;
  EnergyReport rep;
  for (unsigned idx = 0; idx < 2 * R; ++idx) {
    total.add(row_sum[idx]);
    total.add(row_tail[idx]);
    tail.add(row_tail[idx]);
    rep.excluded_cells += row_excluded[idx];
  }
  rep.n = m.ends();
  rep.gauss_degree = m.gauss_degree;
  rep.grid = spec;
  rep.tail = tail.value();
  rep.total_curvature = total.value();
  rep.willmore = 4.0 * pi * (static_cast<double>(rep.n) - 1.0);
  rep.quadrature_estimate = rep.total_curvature + 4.0 * pi;
  const double target = 4.0 * pi * rep.n;
  rep.relative_error = std::abs(rep.quadrature_estimate - target) / target;
  rep.willmore_relative_error = rep.willmore > 0 ? std::abs(rep.total_curvature - rep.willmore) / rep.willmore : 0.0;
  if (rep.relative_error > max_relative_error)
    throw Error(ErrorKind::NoConvergence, "energy quadrature relative error " + std::to_string(rep.relative_error) +
                                              " above " + std::to_string(max_relative_error));
  return rep;
}

/// Energy on a sequence of grids, coarse to fine. The last three relative
/// errors are expected inside the 1%, 0.5% and 0.25% bands and to decrease;
/// anything else is flagged rather than thrown.
struct ConvergenceStudy {
  std::vector<EnergyReport> reports;
  bool monotone = true;
  bool within_bands = true;

  const EnergyReport& finest() const { return reports.back(); }
};

inline ConvergenceStudy energy_study(const SurfaceModel& m, const std::vector<MeshSpec>& grids = default_energy_grids()) {
  if (grids.empty()) throw Error(ErrorKind::InvalidArgument, "energy study needs at least one grid");
  ConvergenceStudy st;
  for (const auto& g : grids) st.reports.push_back(total_curvature(m, g, 1.0));
  static constexpr std::array<double, 3> kBands{0.01, 0.005, 0.0025};
  const std::size_t n = st.reports.size();
  for (std::size_t i = 1; i < n; ++i)
    if (st.reports[i].relative_error > st.reports[i - 1].relative_error) st.monotone = false;
  for (std::size_t j = 0; j < std::min<std::size_t>(3, n); ++j)
    if (st.reports[n - 1 - j].relative_error > kBands[2 - j]) st.within_bands = false;
  return st;
}

// --- meshes ------------------------------------------------------------------

struct Mesh {
  std::vector<std::array<double, 3>> vertices;
  std::vector<std::array<double, 4>> s3;
  std::vector<std::array<std::uint32_t, 3>> faces;
  /// number of grid vertices before exclusion: 2 + (2R - 1) A
  std::size_t implied_vertices = 0;
  std::size_t excluded_vertices = 0;
  /// ends whose exclusion disk removed at least one vertex
  std::size_t excluded_disks = 0;
  std::size_t boundary_loops = 0;
};

namespace detail {

/// Loops formed by edges that belong to exactly one face.
inline std::size_t count_boundary_loops(const std::vector<std::array<std::uint32_t, 3>>& faces) {
  std::map<std::pair<std::uint32_t, std::uint32_t>, int> edges;
  for (const auto& f : faces)
    for (int e = 0; e < 3; ++e) {
      std::uint32_t a = f[e], b = f[(e + 1) % 3];
      edges[{std::min(a, b), std::max(a, b)}]++;
    }
  std::map<std::uint32_t, std::vector<std::uint32_t>> adj;
  for (const auto& [e, n] : edges)
    if (n == 1) {
      adj[e.first].push_back(e.second);
      adj[e.second].push_back(e.first);
    }
  std::map<std::uint32_t, bool> seen;
  std::size_t loops = 0;
  for (const auto& [v, nb] : adj) {
    if (seen[v]) continue;
    ++loops;
    std::vector<std::uint32_t> stack{v};
    seen[v] = true;
    while (!stack.empty()) {
      auto x = stack.back();
      stack.pop_back();
      for (auto y : adj[x])
        if (!seen[y]) {
          seen[y] = true;
          stack.push_back(y);
        }
    }
  }
  return loops;
}

}  // namespace detail

/// Sphere grid in z: rings |z| = i/R (i = 1..R) plus z = 0, and rings
/// |z| = R/i (i = R-1..1) plus z = infinity, all with A angular samples.
/// Vertices inside an exclusion disk are dropped with their triangles.
inline Mesh make_mesh(const SurfaceModel& m, const MeshSpec& spec, double degenerate_fraction = 1e-3) {
  spec.validate();
  const unsigned R = spec.radial, A = spec.angular;
  const unsigned rings = 2 * R - 1;  // ring r has radius z_r, r = 0..rings-1
  const double two_pi = 2.0 * std::numbers::pi;
  auto ring_radius = [&](unsigned r) { return r < R ? (r + 1.0) / R : static_cast<double>(R) / (2 * R - 1 - r); };
  // vertex ids: 0 = z=0, 1 + r A + j = ring r, last = infinity
  const std::size_t total = 2 + static_cast<std::size_t>(rings) * A;
  const std::size_t inf_id = total - 1;
  std::vector<std::array<double, 3>> pos(total);
  std::vector<std::array<double, 4>> s3(total);
  std::vector<char> keep(total, 1);
  std::vector<BigComplex> zs(total);
  zs[0] = BigComplex(BigFloat(0.0, m.digits));
  for (unsigned r = 0; r < rings; ++r)
    for (unsigned j = 0; j < A; ++j) zs[1 + r * A + j] = polar_point(ring_radius(r), two_pi * j / A, m.digits);

  // exclusion, measured in the chart of each vertex
  std::vector<std::size_t> disk_hits(m.poles.size() + 1, 0);
  const BigFloat rho(spec.exclusion_radius, 20);
  auto check = [&](std::size_t id, bool at_inf) {
    if (at_inf) {
      if (m.pole_at_infinity) {
        keep[id] = 0;
        ++disk_hits.back();
      }
      return;
    }
    const BigComplex& z = zs[id];
    const bool outer = z.abs() > BigFloat(1);
    for (std::size_t p = 0; p < m.poles.size(); ++p) {
      const BigComplex& e = m.poles[p];
      BigFloat dist = outer ? (e.is_zero() ? BigFloat(1e300, 20) : (BigComplex(1) / z - BigComplex(1) / e).abs())
                            : (z - e).abs();
      if (dist < rho) {
        keep[id] = 0;
        ++disk_hits[p];
      }
    }
    if (outer && m.pole_at_infinity && (BigComplex(1) / z).abs() < rho) {
      keep[id] = 0;
      ++disk_hits.back();
    }
  };
  for (std::size_t id = 0; id + 1 < total; ++id) check(id, false);
  check(inf_id, true);

  // f at infinity: limit of F, i.e. ratio of leading coefficients where the
  // degrees agree
  auto eval_inf = [&]() {
    std::array<double, 3> out{};
    for (std::size_t i = 0; i < 3; ++i) {
      const auto& f = m.F[i];
      if (f.num().degree() < f.den().degree() || f.num().is_zero()) out[i] = 0.0;
      else out[i] = (f.num().leading() / f.den().leading()).re().to_double();
    }
    return out;
  };
  std::vector<char> bad(total, 0);
  detail::parallel_rows(rings + 2, [&](unsigned row) {
    auto eval = [&](std::size_t id) {
      if (!keep[id]) return;
      if (id == inf_id) {
        pos[id] = eval_inf();
      } else {
        pos[id] = eval_surface(m, zs[id]).xyz_double();
      }
      s3[id] = inverse_stereographic(pos[id]);
      for (double x : pos[id])
        if (!std::isfinite(x)) bad[id] = 1;
    };
    if (row == 0) eval(0);
    else if (row == rings + 1) eval(inf_id);
    else
      for (unsigned j = 0; j < A; ++j) eval(1 + (row - 1) * A + j);
  });
  for (std::size_t id = 0; id < total; ++id)
    if (keep[id] && bad[id]) throw Error(ErrorKind::Degenerate, "non-finite vertex in mesh");

  Mesh mesh;
  mesh.implied_vertices = total;
  std::vector<std::int64_t> index(total, -1);
  for (std::size_t id = 0; id < total; ++id) {
    if (!keep[id]) {
      ++mesh.excluded_vertices;
      continue;
    }
    index[id] = static_cast<std::int64_t>(mesh.vertices.size());
    mesh.vertices.push_back(pos[id]);
    mesh.s3.push_back(s3[id]);
  }
  for (auto h : disk_hits)
    if (h > 0) ++mesh.excluded_disks;

  auto tri = [&](std::size_t a, std::size_t b, std::size_t c) {
    if (index[a] < 0 || index[b] < 0 || index[c] < 0) return;
    mesh.faces.push_back({static_cast<std::uint32_t>(index[a]), static_cast<std::uint32_t>(index[b]),
                          static_cast<std::uint32_t>(index[c])});
  };
  auto vid = [&](unsigned r, unsigned j) { return 1 + static_cast<std::size_t>(r) * A + (j % A); };
  for (unsigned j = 0; j < A; ++j) tri(0, vid(0, j), vid(0, j + 1));
  for (unsigned r = 0; r + 1 < rings; ++r)
    for (unsigned j = 0; j < A; ++j) {
      tri(vid(r, j), vid(r + 1, j), vid(r + 1, j + 1));
      tri(vid(r, j), vid(r + 1, j + 1), vid(r, j + 1));
    }
  for (unsigned j = 0; j < A; ++j) tri(inf_id, vid(rings - 1, j + 1), vid(rings - 1, j));

  // degenerate triangles: area below 1e-12 of the mean area
  if (mesh.faces.empty()) throw Error(ErrorKind::Degenerate, "mesh has no faces");
  std::vector<double> areas;
  CompensatedSum sum;
  for (const auto& f : mesh.faces) {
    const auto &a = mesh.vertices[f[0]], &b = mesh.vertices[f[1]], &c = mesh.vertices[f[2]];
    std::array<double, 3> u{b[0] - a[0], b[1] - a[1], b[2] - a[2]}, v{c[0] - a[0], c[1] - a[1], c[2] - a[2]};
    std::array<double, 3> x{u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]};
    areas.push_back(0.5 * std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]));
    sum.add(areas.back());
  }
  const double mean = sum.value() / static_cast<double>(areas.size());
  std::size_t degenerate = 0;
  for (double a : areas)
    if (!(a > 1e-12 * mean)) ++degenerate;
  if (static_cast<double>(degenerate) > degenerate_fraction * static_cast<double>(areas.size()))
    throw Error(ErrorKind::Degenerate, std::to_string(degenerate) + " of " + std::to_string(areas.size()) +
                                           " triangles are degenerate (metric degenerate?)");
  mesh.boundary_loops = detail::count_boundary_loops(mesh.faces);
  return mesh;
}

namespace detail {

inline std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x == 0.0 ? 0.0 : x);
  return buf;
}

}  // namespace detail

/// Wavefront OBJ: "v x y z" lines then "f i j k" with 1-based indices.
inline void write_obj(std::ostream& os, const std::vector<std::array<double, 3>>& vertices,
                      const std::vector<std::array<std::uint32_t, 3>>& faces) {
  for (const auto& v : vertices) os << "v " << detail::fmt(v[0]) << ' ' << detail::fmt(v[1]) << ' ' << detail::fmt(v[2]) << '\n';
  for (const auto& f : faces) os << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
}

inline void write_obj(std::ostream& os, const Mesh& m) { write_obj(os, m.vertices, m.faces); }

/// Stereographic view of S^3 points from the unit vector `pole`: points are
/// projected to the orthogonal complement of the pole, expressed in the
/// Gram-Schmidt basis obtained from e1..e4.
inline std::vector<std::array<double, 3>> stereographic_view(const std::vector<std::array<double, 4>>& pts,
                                                            std::array<double, 4> pole) {
  double n = 0;
  for (double x : pole) n += x * x;
  n = std::sqrt(n);
  if (!(n > 0)) throw Error(ErrorKind::InvalidArgument, "view pole must be nonzero");
  for (double& x : pole) x /= n;
  std::vector<std::array<double, 4>> basis;
  for (int e = 0; e < 4 && basis.size() < 3; ++e) {
    std::array<double, 4> v{};
    v[e] = 1.0;
    auto project_out = [&](const std::array<double, 4>& b) {
      double d = 0;
      for (int i = 0; i < 4; ++i) d += v[i] * b[i];
      for (int i = 0; i < 4; ++i) v[i] -= d * b[i];
    };
    project_out(pole);
    for (const auto& b : basis) project_out(b);
    double len = 0;
    for (double x : v) len += x * x;
    len = std::sqrt(len);
    if (len < 1e-8) continue;
    for (double& x : v) x /= len;
    basis.push_back(v);
  }
  std::vector<std::array<double, 3>> out;
  for (const auto& p : pts) {
    double t = 0;
    for (int i = 0; i < 4; ++i) t += p[i] * pole[i];
    const double s = 1.0 / (1.0 - t);
    std::array<double, 3> y{};
    for (int k = 0; k < 3; ++k) {
      double d = 0;
      for (int i = 0; i < 4; ++i) d += p[i] * basis[k][i];
      y[k] = d * s;
    }
    out.push_back(y);
  }
  return out;
}

}  // namespace wsphere

#endif  // WSPHERE_GEOMETRY_HPP
