#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "test_support.hpp"
#include "wsphere/weierstrass.hpp"

using namespace wsphere;
using wsphere::testing::near;
using wsphere::testing::random_gaussian;
using wsphere::testing::tenth_power;

namespace {

constexpr unsigned P = 60;

const ExactPoly Z = ExactPoly::monomial(ExactComplex(1), 1);
const ExactPoly ONE{ExactComplex(1)};

BigComplex num(double re, double im = 0.0) { return BigComplex(std::complex<double>(re, im), P); }

PengXiaoParams generic_k4() {
  return {4, BigComplex(ExactComplex::ratio(11, 10), P), BigComplex(ExactComplex::ratio(22, 10), P),
          BigComplex(ExactComplex::ratio(33, 10), P), BigComplex(ExactComplex(-5), P)};
}

BigFloat max_abs(const std::vector<BigComplex>& v) {
  BigFloat m;
  for (const auto& x : v) m = max(m, x.abs());
  return m;
}

}  // namespace

TEST(KnownParams, MatchDoublePrecisionRadicals) {
  auto p = paper_k4_params(P);
  const double s7 = std::sqrt(7.0);
  EXPECT_NEAR(p.a.re().to_double(), 10 - 4 * s7 + std::sqrt(635.0 / 3 - 80 * s7), 1e-12);
  EXPECT_NEAR(p.b.re().to_double(), 10 + 4 * s7 + std::sqrt(635.0 / 3 + 80 * s7), 1e-12);
  EXPECT_NEAR(p.c.re().to_double(), -3 - 4 * std::sqrt(0.6), 1e-12);
  EXPECT_NEAR(p.lambda.re().to_double(), -31 - 8 * std::sqrt(15.0), 1e-12);
  EXPECT_GE(p.digits(), P);
}

TEST(PengXiaoSpinors, Shapes) {
  auto sp = pengxiao_spinors(paper_k4_params(P));
  EXPECT_EQ(sp.s1.num().degree(), 5);
  EXPECT_EQ(sp.s1.den().degree(), 8);
  EXPECT_TRUE(SpinorPair<BigComplex>::numeric_mode);
  EXPECT_FALSE(SpinorPair<ExactComplex>::numeric_mode);

  PengXiaoParams k2{2, num(2), num(3), num(4), num(5)};
  auto sp2 = pengxiao_spinors(k2);
  EXPECT_EQ(numeric_zero_order(sp2.s2.den(), num(0), P), 1u);
  EXPECT_EQ(numeric_zero_order(sp2.s2.num(), num(0), P), 0u);
}

TEST(PengXiaoSpinors, RejectsCollidingParameters) {
  auto p = paper_k4_params(P);
  p.b = p.a;
  EXPECT_THROW(pengxiao_spinors(p), Error);
  auto q = paper_k4_params(P);
  q.lambda = num(1);
  EXPECT_THROW(pengxiao_spinors(q), Error);
}

TEST(PengXiaoSpinors, MixedResidueVanishesAtOne) {
  auto quad = spinor_quadratics(pengxiao_spinors(paper_k4_params(P)));
  EXPECT_LT(residue(quad[1], num(1), P).abs(), tenth_power(-40));
}

TEST(DelF, ConstantExamples) {
  auto f = del_f(SpinorPair<ExactComplex>{ExactRational(ONE), ExactRational()});
  EXPECT_EQ(f[0], ExactRational(ONE));
  EXPECT_EQ(f[1], ExactRational(ExactComplex::i()));
  EXPECT_TRUE(f[2].is_zero());
  auto g = del_f(SpinorPair<ExactComplex>{ExactRational(), ExactRational(ONE)});
  EXPECT_EQ(g[0], ExactRational(ONE));
  EXPECT_EQ(g[1], ExactRational(-ExactComplex::i()));
  EXPECT_TRUE(g[2].is_zero());
}

TEST(DelF, NullIdentityExact) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    ExactRational s1(wsphere::testing::random_poly(rng, 2), wsphere::testing::random_poly(rng, 1));
    ExactRational s2(wsphere::testing::random_poly(rng, 1), wsphere::testing::random_poly(rng, 2));
    EXPECT_TRUE(null_defect(del_f(SpinorPair<ExactComplex>{s1, s2})).is_zero());
  }
}

TEST(DelF, NullIdentityNumeric) {
  auto f = del_f(pengxiao_spinors(paper_k4_params(P)));
  auto defect = null_defect(f);
  BigFloat scale = coeff_norm(f[0].num() * f[0].num()) + coeff_norm(f[2].num() * f[2].num());
  EXPECT_LT(coeff_norm(defect.num()) / scale, tenth_power(-(long)(P - 15)));
}

TEST(DelF, QuadraticInTheSpinors) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    ExactRational s1(wsphere::testing::random_poly(rng, 2), wsphere::testing::random_poly(rng, 2));
    ExactRational s2(wsphere::testing::random_poly(rng, 3), wsphere::testing::random_poly(rng, 1));
    ExactComplex t = random_gaussian(rng, 5);
    if (t.is_zero()) t = ExactComplex(2);
    ExactRational tt(t);
    auto f = del_f(SpinorPair<ExactComplex>{s1, s2});
    auto g = del_f(SpinorPair<ExactComplex>{tt * s1, tt * s2});
    for (int i = 0; i < 3; ++i) EXPECT_EQ(g[i], ExactRational(t * t) * f[i]);
  }
}

TEST(ResidueSystem, KnownSolutionVanishes) {
  auto r = residue_system(paper_k4_params(P), P);
  ASSERT_EQ(r.size(), 9u);
  EXPECT_LT(max_abs(r), tenth_power(-(long)(P - 20)));
}

TEST(ResidueSystem, GenericParametersMatchClosedForms) {
  // closed forms at z = 1 for k = 4, evaluated in exact arithmetic
  const Rational a(11, 10), b(22, 10), c(33, 10), l(-5);
  const Rational d = 16 * (l - 1) * (l - 1) * (l - 1);
  const Rational s11 = -(c - 1) * (c * l - 9 * c + 7 * l + 1) / d;
  const Rational s12 = (3 * a * b * c * l - 11 * a * b * c + a * b * l + 7 * a * b + a * c * l + 7 * a * c - 5 * a * l -
                        3 * a + b * c * l + 7 * b * c - 5 * b * l - 3 * b - 5 * c * l - 3 * c + 9 * l - 1) /
                       d;
  const Rational s22 = -(a - 1) * (b - 1) * (5 * a * b * l - 13 * a * b + 3 * a * l + 5 * a + 3 * b * l + 5 * b - 11 * l + 3) / d;
  EXPECT_EQ(s11, Rational(-9223, 172800));

  auto r = residue_system(generic_k4(), P);
  EXPECT_GT(max_abs(r), BigFloat(0.01, P));
  EXPECT_TRUE(near(r[3], BigComplex(ExactComplex(s11), P), tenth_power(-45)));
  EXPECT_TRUE(near(r[4], BigComplex(ExactComplex(s12), P), tenth_power(-45)));
  EXPECT_TRUE(near(r[5], BigComplex(ExactComplex(s22), P), tenth_power(-45)));
}

TEST(ResidueSystem, OriginResidueOfS2SquaredVanishes) {
  // s2^2 is z^-2 times a function of z^k, so its z^-1 coefficient is zero
  PengXiaoParams p{4, num(0), num(0.5), num(0.7, 0.2), num(-3)};
  EXPECT_TRUE(residue_system(p, P)[2].abs() < tenth_power(-50));
  EXPECT_TRUE(residue_system(generic_k4(), P)[2].abs() < tenth_power(-50));
}

TEST(ResidueSystem, UFormAgreesWithLaurentExpansion) {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> u(-3, 3);
  for (unsigned k : {2u, 4u, 5u, 7u}) {
    for (int trial = 0; trial < 3; ++trial) {
      PengXiaoParams p{k, num(u(rng), u(rng)), num(u(rng), u(rng)), num(u(rng), u(rng)), num(u(rng) - 5, u(rng))};
      auto lr = residue_system(p, P);
      auto ur = residues_u(p);
      for (int i = 0; i < 6; ++i)
        EXPECT_TRUE(near(lr[3 + i], ur[i], tenth_power(-40) * max(BigFloat(1), ur[i].abs()))) << "k=" << k << " i=" << i << " " << lr[3 + i] << " " << ur[i];
    }
  }
}

TEST(ResidueSystem, RotationWeights) {
  // res at zeta^j p equals zeta^(j m) res at p, m = 3, 1, -1
  for (auto p : {generic_k4(), PengXiaoParams{5, num(0.3, 1), num(2), num(-1, 0.5), num(-7, 2)}}) {
    auto ends = end_set(p);
    auto res = end_residues(p, P);
    ASSERT_EQ(ends.size(), 2 * p.k + 1);
    for (unsigned j = 0; j < p.k; ++j) {
      BigComplex zeta = unit_root(j, p.k, P);
      for (int q = 0; q < 3; ++q) {
        BigComplex w = pow(zeta, kSymmetryWeights[q]);
        EXPECT_TRUE(near(res[1 + j][q], w * res[1][q], tenth_power(-40)));
        EXPECT_TRUE(near(res[1 + p.k + j][q], w * res[1 + p.k][q], tenth_power(-40)));
      }
    }
  }
}

TEST(SolveResidues, RecoversKnownSolutionFromPerturbation) {
  auto truth = paper_k4_params(P);
  BigComplex eps(BigFloat::pow10(-3, P));
  PengXiaoParams start{4, truth.a + eps, truth.b - eps, truth.c + eps, truth.lambda - eps};
  std::ostringstream log;
  SolveOptions opt;
  opt.log = &log;
  auto sol = solve_residues(4, start, P, opt);
  for (const auto& [x, y] : {std::pair{sol.a, truth.a}, {sol.b, truth.b}, {sol.c, truth.c}, {sol.lambda, truth.lambda}})
    EXPECT_TRUE(near(x, y, tenth_power(-10)));
  EXPECT_NE(log.str().find('\n'), std::string::npos);
}

TEST(SolveResidues, KnownSolutionIsFixedPoint) {
  auto truth = paper_k4_params(P);
  auto next = newton_step(truth, P);
  BigFloat move = max(max((next.a - truth.a).abs(), (next.b - truth.b).abs()),
                      max((next.c - truth.c).abs(), (next.lambda - truth.lambda).abs()));
  EXPECT_LT(move, tenth_power(-(long)(P - 25)));
}

TEST(SolveResidues, DegenerateStartIsRejected) {
  auto p = paper_k4_params(P);
  p.b = p.a;
  EXPECT_THROW(solve_residues(4, p, P), Error);
  EXPECT_THROW(solve_residues(3, paper_k4_params(P), P), Error);
}

TEST(SolveResidues, FindsSolutionsForFiveAndSix) {
  auto k5 = solve_residues(5, paper_k4_params(P), P);
  EXPECT_NEAR(k5.a.re().to_double(), -0.438100327450744, 1e-12);
  EXPECT_NEAR(k5.b.re().to_double(), 19.6499846601666, 1e-10);
  EXPECT_NEAR(k5.c.re().to_double(), -3.13663417676994, 1e-12);
  EXPECT_NEAR(k5.lambda.re().to_double(), -22.9564392373896, 1e-10);
  EXPECT_LT(max_abs(residue_system(k5, P)), tenth_power(-40));

  auto k6 = solve_residues(6, k5, P);
  const double s3 = std::sqrt(3.0);
  EXPECT_NEAR(k6.c.re().to_double(), -1 - 2 / s3, 1e-12);
  EXPECT_NEAR(k6.lambda.re().to_double(), -7 - 4 * s3, 1e-12);
  EXPECT_LT(max_abs(residue_system(k6, P)), tenth_power(-40));
}

TEST(GaussMap, Examples) {
  auto g = gauss_map(del_f(SpinorPair<ExactComplex>{ExactRational(ONE), ExactRational(Z)}));
  EXPECT_EQ(g.g, ExactRational(Z));
  EXPECT_EQ(g.degree, 1);
  auto h = gauss_map(del_f(SpinorPair<ExactComplex>{ExactRational(Z), ExactRational(Z)}));
  EXPECT_EQ(h.g, ExactRational(ONE));
  EXPECT_EQ(h.degree, 0);
  EXPECT_THROW(gauss_map(del_f(SpinorPair<ExactComplex>{ExactRational(), ExactRational(Z)})), Error);
}

TEST(GaussMap, PengXiaoDegreeByPreimageCount) {
  auto p = paper_k4_params(P);
  auto g = gauss_map(del_f(pengxiao_spinors(p)));
  // independent check: g = s2/s1 = (u-a)(u-b) / (z^2 (u-c)), u = z^4, so the
  // preimages of a generic value w are the roots of (u-a)(u-b) - w z^2 (u-c)
  BigComplex w = num(0.37, -1.21);
  std::vector<BigComplex> c(9);
  c[0] = p.a * p.b;
  c[2] = w * p.c;
  c[4] = -(p.a + p.b);
  c[6] = -w;
  c[8] = BigComplex(1);
  auto pre = poly_roots(NumPoly(c), P);
  unsigned count = 0;
  for (const auto& r : pre) {
    count += r.multiplicity;
    EXPECT_TRUE(near(g.g(r.value), w, tenth_power(-30)));
  }
  EXPECT_EQ(count, 8u);
  EXPECT_EQ(g.degree, 8);
}
