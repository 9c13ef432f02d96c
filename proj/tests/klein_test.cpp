#include <gtest/gtest.h>

#include <random>

#include "test_support.hpp"
#include "wsphere/klein.hpp"

using namespace wsphere;
using wsphere::testing::random_gaussian;
using wsphere::testing::random_poly;

namespace {

constexpr unsigned P = 60;

ExactPoly zp(std::size_t n) { return ExactPoly::monomial(ExactComplex(1), n); }
ExactPoly cst(long v) { return ExactPoly(ExactComplex(v)); }
const ExactComplex I = ExactComplex::i();

Pluecker6 bivector(long p12, long p13, long p14, long p23, long p24, long p34) {
  return {cst(p12), cst(p13), cst(p14), cst(p23), cst(p24), cst(p34)};
}

ExactPoly antiderivative(const ExactPoly& p) {
  if (p.is_zero()) return p;
  std::vector<ExactComplex> c(static_cast<std::size_t>(p.degree()) + 2);
  for (int i = 0; i <= p.degree(); ++i) c[i + 1] = p.coeff(i) / ExactComplex(i + 1);
  return ExactPoly(std::move(c));
}

/// Polynomial null curve integrated from polynomial spinors.
ExactMap3 polynomial_null(std::mt19937_64& rng) {
  ExactPoly s1 = random_poly(rng, 2, 3), s2 = random_poly(rng, 2, 3);
  ExactPoly a = s1 * s1, b = s2 * s2;
  return {{ExactRational(antiderivative(a + b)), ExactRational(antiderivative(I * (a - b))),
           ExactRational(antiderivative((ExactComplex(-2) * I) * (s1 * s2)))}};
}

/// The inversion w0 <-> w4 of the quadric maps null curves to null curves.
ExactMap3 invert(const ExactMap3& f) {
  auto w = psi_embed(f).w;
  std::swap(w[0], w[4]);
  return psi_invert(NullCurve5{w, false});
}

}  // namespace

TEST(OmegaOf, Examples) {
  EXPECT_EQ(omega_of(bivector(1, 0, 0, 0, 0, 0)), cst(1));
  EXPECT_TRUE(omega_of(bivector(1, 0, 0, 0, 0, -1)).is_zero());
  for (unsigned k = 4; k <= 12; ++k) EXPECT_TRUE(omega_of(second_associated(contact_curve(k))).is_zero()) << k;
}

TEST(QuadricForm, Examples) {
  EXPECT_TRUE(quadric_form(bivector(0, 1, 0, 0, 0, 0)).is_zero());
  EXPECT_EQ(quadric_form(bivector(1, 0, 0, 0, 0, -1)), cst(-1));
  EXPECT_EQ(quadric_form(bivector(1, 0, 0, 0, 0, 1)), cst(1));
}

TEST(SecondAssociated, Degrees) {
  EXPECT_EQ(second_associated(contact_curve(4)).degree(), 9);
  EXPECT_EQ(second_associated(make_curve({cst(1), zp(1), zp(2), zp(3)})).degree(), 4);
  for (unsigned k = 4; k <= 8; ++k) EXPECT_EQ(second_associated(contact_curve(k)).degree(), static_cast<int>(2 * k + 1));
}

TEST(SecondAssociated, PluckerRelationOnRandomCurves) {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 20; ++trial) {
    Lift4 l{random_poly(rng, 3, 4), random_poly(rng, 4, 4), random_poly(rng, 2, 4), random_poly(rng, 3, 4)};
    EXPECT_TRUE(quadric_form(second_associated(make_curve(l))).is_zero());
  }
}

TEST(Isometry, GramSelfTest) {
  auto g = gram_self_test();
  EXPECT_TRUE(g.isometry);
  EXPECT_TRUE(g.invertible);
  EXPECT_TRUE(g.fallback_isometry);
}

TEST(Isometry, PreservesQuadricOnRandomElementsOfW) {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 50; ++trial) {
    Pluecker6 e{random_poly(rng, 2, 5), random_poly(rng, 1, 5), random_poly(rng, 2, 5), random_poly(rng, 0, 5),
                random_poly(rng, 3, 5), {}};
    e.p34 = -e.p12;
    auto w = identify_W_with_C5(e);
    EXPECT_EQ(inner(w.w, w.w), quadric_form(e));
  }
  auto zero = identify_W_with_C5(Pluecker6{});
  for (const auto& p : zero.w) EXPECT_TRUE(p.is_zero());
  EXPECT_THROW(identify_W_with_C5(bivector(1, 0, 0, 0, 0, 0)), Error);
}

TEST(Isometry, PipelineCurvesAreNull) {
  for (unsigned k = 4; k <= 8; ++k) {
    auto w = identify_W_with_C5(second_associated(contact_curve(k)));
    EXPECT_TRUE(w.reduced);
    EXPECT_EQ(w.degree(), static_cast<int>(2 * k + 1));
    EXPECT_TRUE(inner(w.w, w.w).is_zero());
    auto dw = lift_derivative(w.w);
    EXPECT_TRUE(inner(dw, dw).is_zero());
  }
}

TEST(PsiEmbed, Examples) {
  ExactMap3 line{{ExactRational(zp(1)), ExactRational(I * zp(1)), ExactRational()}};
  auto w = psi_embed(line);
  Lift5 expect{ExactPoly(), zp(1), I * zp(1), ExactPoly(), cst(1)};
  for (int i = 0; i < 5; ++i) EXPECT_EQ(w.w[i], expect[i]) << i;
  EXPECT_EQ(w.degree(), 1);
  ExactMap3 point{{ExactRational(ExactComplex(2)), ExactRational(ExactComplex(3)), ExactRational(I)}};
  EXPECT_EQ(psi_embed(point).degree(), 0);
}

TEST(PsiInvert, RoundTripOnRandomNullTriples) {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 20; ++trial) {
    ExactMap3 f = polynomial_null(rng);
    if (trial % 2) f = invert(f);
    ASSERT_TRUE(verify_null_C3(f).null) << trial;
    auto g = psi_invert(psi_embed(f));
    for (int i = 0; i < 3; ++i) EXPECT_EQ(g[i], f[i]) << trial;
  }
}

TEST(PsiInvert, Errors) {
  EXPECT_THROW(psi_invert(NullCurve5{Lift5{cst(1), zp(1), ExactPoly(), ExactPoly(), ExactPoly()}, true}), Error);
  // a non-null lift fails the w0 check
  EXPECT_THROW(psi_invert(NullCurve5{Lift5{cst(5), zp(1), ExactPoly(), ExactPoly(), cst(1)}, true}), Error);
}

TEST(PsiInvert, PoleOrderBookkeeping) {
  // F = (1/z, i/z + 1, 0): (F,F)/2 = i/z + 1/2; the unreduced lift has w4 = z^2
  // with w1 = z, so F1 keeps a simple pole at 0
  NullCurve5 w{Lift5{I * zp(1) + ExactComplex::ratio(1, 2) * zp(2), zp(1), I * zp(1) + zp(2), ExactPoly(), zp(2)}, false};
  auto f = psi_invert(w);
  EXPECT_EQ(f[0], ExactRational(cst(1), zp(1)));
  auto poles = pole_analysis(f);
  EXPECT_EQ(poles.count, 1u);
  EXPECT_TRUE(poles.all_simple);
}

TEST(VerifyNull, Examples) {
  EXPECT_TRUE(verify_null_C3(ExactMap3{{ExactRational(zp(1)), ExactRational(I * zp(1)), ExactRational()}}).null);
  auto bad = verify_null_C3(ExactMap3{{ExactRational(zp(1)), ExactRational(zp(1)), ExactRational()}});
  EXPECT_FALSE(bad.null);
  EXPECT_EQ(bad.numerator, cst(2));
}

TEST(ClosedFormF, ClosedFormIsNullWithSimplePoles) {
  for (unsigned k = 4; k <= 12; ++k) {
    auto f = paper_F(k);
    EXPECT_TRUE(verify_null_C3(f).null) << k;
    auto poles = pole_analysis(f);
    EXPECT_EQ(poles.count, 2 * k + 1) << k;
    EXPECT_TRUE(poles.all_simple) << k;
    EXPECT_EQ(psi_embed(f).degree(), static_cast<int>(2 * k + 1)) << k;
  }
}

TEST(ClosedFormF, KEqualsFourDenominator) {
  // 4z(45 - 90 z^4 - 3 z^8), made monic
  ExactPoly expect = zp(9) + ExactComplex(30) * zp(5) - ExactComplex(15) * zp(1);
  EXPECT_EQ(common_denominator(paper_F(4)), expect);
  EXPECT_THROW(paper_F(3), Error);
}

TEST(ClosedFormF, RadicalVariantPolesAndNullness) {
  auto f = paper_F_pengxiao(P);
  EXPECT_TRUE(verify_null_C3(f, P).null);
  auto poles = pole_analysis(f, P);
  ASSERT_EQ(poles.finite.size(), 9u);
  EXPECT_TRUE(poles.all_simple);
  EXPECT_FALSE(poles.pole_at_infinity);
  BigComplex lambda(BigFloat(-31) - BigFloat(8) * sqrt(BigFloat(15.0, P)));
  BigComplex mu = principal_root(lambda, 4);
  std::vector<BigComplex> expect{BigComplex(BigFloat(0.0, P))};
  for (unsigned j = 0; j < 4; ++j) {
    expect.push_back(unit_root(j, 4, P));
    expect.push_back(mu * unit_root(j, 4, P));
  }
  for (const auto& e : expect) {
    bool hit = false;
    for (const auto& r : poles.finite)
      if ((r.value - e).abs() < BigFloat::pow10(-40, P)) hit = true;
    EXPECT_TRUE(hit) << e;
  }
}

TEST(Pipeline, CertifiedForSmallK) {
  for (unsigned k : {4u, 5u}) {
    auto r = pipeline(k);
    const auto& c = r.certificate;
    EXPECT_TRUE(c.ok(k)) << k;
    EXPECT_EQ(c.pole_count, 2 * k + 1);
    EXPECT_EQ(c.embedded_degree, 2 * k + 1);
    EXPECT_FALSE(c.used_fallback);
  }
  EXPECT_THROW(pipeline(3), Error);
}

TEST(Pipeline, AgreesWithClosedFormOnInvariants) {
  for (unsigned k = 4; k <= 12; ++k) {
    auto r = pipeline(k);
    auto f = paper_F(k);
    EXPECT_TRUE(r.certificate.ok(k)) << k;
    EXPECT_EQ(pole_analysis(r.F).count, pole_analysis(f).count) << k;
    EXPECT_EQ(psi_embed(r.F).degree(), psi_embed(f).degree()) << k;
  }
}
