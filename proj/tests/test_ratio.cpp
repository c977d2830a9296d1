#include <gtest/gtest.h>

#include <random>

#include "dhzero/dh.hpp"
#include "dhzero/ratio.hpp"

using namespace dhzero;
using namespace dhzero::ratio;

namespace {
Complex cplx(const char* text, const PrecisionContext& ctx) { return parse_complex(text, ctx); }
}  // namespace

TEST(Ratio, ModulusIsOneOnCriticalLine) {
  const PrecisionContext ctx(60);
  const mpfr_prec_t p = ctx.bits();
  for (const char* t : {"0.1", "1.2116", "14.404003", "50"}) {
    const Complex s(rational(1, 2, p), parse_decimal(t, ctx));
    EXPECT_LE(abs(abs_x(s, ctx) - 1L), pow10_neg(60, p)) << t;
    EXPECT_LE(abs(log_abs_x(s, ctx)), pow10_neg(60, p)) << t;
  }
}

TEST(Ratio, InversionProductIsOne) {
  const PrecisionContext ctx(60);
  const mpfr_prec_t p = ctx.bits();
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> re(-5.0, 6.0), im(-30.0, 30.0);
  for (int k = 0; k < 30; ++k) {
    const Complex s(Real::from_double(re(rng), p), Real::from_double(im(rng), p));
    EXPECT_LE(abs(inversion_product(s, ctx) - 1L), pow10_neg(55, p)) << to_decimal(s, 8);
  }
  EXPECT_THROW(inversion_product(cplx("-1", ctx), ctx), Error);  // 1 - s = 2 is a pole
}

TEST(Ratio, ZeroPoleDuality) {
  const ZeroPoleSet set = x_zeros_poles(3);
  EXPECT_EQ(set.zeros, (std::vector<long>{-1, -3, -5, -7}));
  EXPECT_EQ(set.poles, (std::vector<long>{2, 4, 6, 8}));
  for (const auto& d : set.duality) EXPECT_EQ(1 - d.zero, d.pole);
  EXPECT_THROW(x_zeros_poles(-1), Error);
}

TEST(Ratio, DigammaAndSeriesFormsAgree) {
  const PrecisionContext ctx(50);
  const mpfr_prec_t p = ctx.bits();
  const Real tol = pow10_neg(10, p);
  for (const char* s_text : {"0.3+5i", "0.8+2i", "-1.5+12i", "2.7-4i"}) {
    const Complex s = cplx(s_text, ctx);
    const TimeDerivative d = d_abs_x_dt_digamma(s, ctx);
    const SeriesDerivative series = d_abs_x_dt_series(s, tol, ctx);
    EXPECT_LE(abs(d.value - series.value), tol) << s_text;
    EXPECT_LE(d.im_leak, pow10_neg(45, p));
    EXPECT_GT(series.terms, 0);
  }
  // Reference values computed independently.
  EXPECT_EQ(to_decimal(d_abs_x_dt_digamma(cplx("0.3+5i", ctx), ctx).value, 12), "0.0528587987765");
  EXPECT_EQ(to_decimal(d_abs_x_dt_digamma(cplx("0.8+2i", ctx), ctx).value, 13), "-0.1283332914315");
}

TEST(Ratio, SeriesTolerance) {
  const PrecisionContext ctx(40);
  const mpfr_prec_t p = ctx.bits();
  try {
    d_abs_x_dt_series(cplx("0.3+5i", ctx), pow10_neg(13, p), ctx);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TolTooTight);
  }
  EXPECT_TRUE(d_abs_x_dt_series(cplx("0.5+5i", ctx), pow10_neg(6, p), ctx).value.is_zero());
  EXPECT_TRUE(d_abs_x_dt_series(cplx("0.3", ctx), pow10_neg(6, p), ctx).value.is_zero());
}

TEST(Ratio, DerivativeSignFollowsOffsetAndHeight) {
  const PrecisionContext ctx(50);
  const mpfr_prec_t p = ctx.bits();
  std::mt19937_64 rng(123);
  std::uniform_real_distribution<double> re(-3.0, 4.0), im(-40.0, 40.0);
  for (int k = 0; k < 40; ++k) {
    const double x = re(rng), y = im(rng);
    if (std::fabs(x - 0.5) < 1e-3 || std::fabs(y) < 1e-3) continue;
    const Complex s(Real::from_double(x, p), Real::from_double(y, p));
    const int expected = ((0.5 - x) * y > 0) ? 1 : -1;
    EXPECT_EQ(d_abs_x_dt_digamma(s, ctx).value.sign(), expected) << x << " " << y;
  }
  EXPECT_TRUE(d_abs_x_dt_digamma(cplx("0.5+9i", ctx), ctx).value.is_zero());
}

TEST(Ratio, MonotonicityScan) {
  const PrecisionContext ctx(40);
  const mpfr_prec_t p = ctx.bits();
  const auto inc = monotonicity_scan(parse_decimal("0.3", ctx), Real(0, p), Real(20, p), 30, ctx);
  EXPECT_EQ(inc.direction, Direction::Increasing);
  EXPECT_EQ(inc.violations, 0);
  EXPECT_EQ(inc.samples.size(), 30u);
  const auto dec = monotonicity_scan(parse_decimal("1.7", ctx), Real(1, p), Real(30, p), 25, ctx);
  EXPECT_EQ(dec.direction, Direction::Decreasing);
  EXPECT_EQ(dec.violations, 0);
  const auto flat = monotonicity_scan(rational(1, 2, p), Real(0, p), Real(10, p), 10, ctx);
  EXPECT_EQ(flat.direction, Direction::Constant);
  EXPECT_EQ(flat.violations, 0);
  EXPECT_THROW(monotonicity_scan(rational(1, 2, p), Real(5, p), Real(1, p), 10, ctx), Error);
  EXPECT_THROW(monotonicity_scan(rational(1, 2, p), Real(0, p), Real(1, p), 1, ctx), Error);
}

TEST(Ratio, RatioDerivativeAgreesAwayFromZeros) {
  const PrecisionContext ctx(60);
  const mpfr_prec_t p = ctx.bits();
  const Real gap = ratio_derivative_check(cplx("0.3+5i", ctx), pow10_neg(20, p), ctx);
  EXPECT_LE(gap, pow10_neg(30, p));
}

TEST(Ratio, PseudoZeroScore) {
  const PrecisionContext ctx(40);
  const mpfr_prec_t p = ctx.bits();
  const Real kappa = parse_decimal("1.21164", ctx);
  EXPECT_TRUE(pseudo_zero_score(rational(1, 2, p), Real(100, p), kappa) == 1L);
  const Real s1 = pseudo_zero_score(parse_decimal("0.808517", ctx), parse_decimal("85.699348", ctx), kappa);
  // exp(-0.308517 * 85.699348 / 1.21164) = 3.33...e-10
  EXPECT_NEAR(s1.to_double(), 3.3346e-10, 0.001e-10);
  EXPECT_THROW(pseudo_zero_score(Real(1, p), Real(1, p), Real(0, p)), Error);
}
