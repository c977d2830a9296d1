#include <gtest/gtest.h>

#include <random>

#include "dhzero/dh.hpp"
#include "dhzero/specfun.hpp"

using namespace dhzero;
using namespace dhzero::dh;

namespace {

Complex cplx(const char* text, const PrecisionContext& ctx) { return parse_complex(text, ctx); }

template <typename F>
void expect_error(ErrorCode code, F&& f) {
  try {
    f();
    ADD_FAILURE() << "expected " << to_string(code);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), code) << e.what();
  }
}

}  // namespace

TEST(DH, TanThetaClosedForm) {
  const PrecisionContext ctx(60);
  const mpfr_prec_t p = ctx.bits();
  const Real t = tan_theta(ctx);
  EXPECT_EQ(to_decimal(t, 31), "0.2840790438404122960282918323931");
  // Same closed form evaluated at twice the precision.
  const PrecisionContext hi(120);
  const Real s5 = sqrt(Real(5, hi.bits()));
  const Real direct = (sqrt(Real(10, hi.bits()) - s5 * 2) - 2L) / (s5 - 1L);
  EXPECT_LE(abs(direct.at(p) - t), pow10_neg(68, p));
}

TEST(DH, ParametersHoldFiveShiftsAndSigns) {
  const PrecisionContext ctx(40);
  const DHParameters params(ctx.bits());
  EXPECT_EQ(to_decimal(params.shifts[0], 10), "0.2");
  EXPECT_EQ(to_decimal(params.shifts[3], 10), "0.8");
  EXPECT_TRUE(params.weights[0] == 1L);
  EXPECT_TRUE(params.weights[3] == -1L);
  EXPECT_TRUE(params.weights[1] == -params.weights[2]);
}

TEST(DH, FunctionalEquationOnRandomPoints) {
  const PrecisionContext ctx(50);
  const mpfr_prec_t p = ctx.bits();
  std::mt19937_64 rng(2718);
  std::uniform_real_distribution<double> re(-3.0, 4.0), im(-40.0, 40.0);
  int checked = 0;
  while (checked < 30) {
    const double x = re(rng), y = im(rng);
    if (std::hypot(x - 1, y) < 0.3 || std::hypot(x, y) < 0.3 || std::hypot(x - 2, y) < 0.3 ||
        std::hypot(x - 4, y) < 0.3 || std::hypot(x + 1, y) < 0.3 || std::hypot(x + 3, y) < 0.3) {
      continue;
    }
    ++checked;
    const Complex s(Real::from_double(x, p), Real::from_double(y, p));
    EXPECT_LE(functional_equation_residual(s, ctx), pow10_neg(40, p)) << to_decimal(s, 10);
  }
}

TEST(DH, ConjugateSymmetry) {
  const PrecisionContext ctx(50);
  const mpfr_prec_t p = ctx.bits();
  for (const char* s_text : {"0.3+5i", "-1.2+17i", "2.5+0.1i"}) {
    const Complex s = cplx(s_text, ctx);
    EXPECT_LE(abs(f_eval(conj(s), ctx) - conj(f_eval(s, ctx))), pow10_neg(50, p));
    EXPECT_LE(abs(x_eval(conj(s), ctx) - conj(x_eval(s, ctx))), pow10_neg(50, p));
  }
}

TEST(DH, DerivativeMatchesFiniteDifference) {
  const PrecisionContext ctx(60);
  const mpfr_prec_t p = ctx.bits();
  const Real h = pow10_neg(20, p);
  for (const char* s_text : {"0.5+14.4i", "0.8+85.7i", "-2+3i"}) {
    const Complex s = cplx(s_text, ctx);
    const FValue fv = f_with_derivative(s, ctx);
    const Complex fd = (f_eval(s + Complex(h), ctx) - f_eval(s - Complex(h), ctx)) / (h * 2);
    EXPECT_LE(abs(fv.derivative - fd) / abs(fd), pow10_neg(35, p)) << s_text;
    EXPECT_LE(abs(fv.value - f_eval(s, ctx)), pow10_neg(65, p));
    EXPECT_LE(abs(f_prime(s, ctx) - fv.derivative), pow10_neg(65, p));
  }
}

TEST(DH, LogXDerivativeMatchesFiniteDifference) {
  const PrecisionContext ctx(60);
  const mpfr_prec_t p = ctx.bits();
  const Real h = pow10_neg(20, p);
  const Complex s = cplx("0.3+7i", ctx);
  const Complex fd = (log_x(s + Complex(h), ctx) - log_x(s - Complex(h), ctx)) / (h * 2);
  EXPECT_LE(abs(log_x_derivative(s, ctx) - fd), pow10_neg(35, p));
}

TEST(DH, ExcludedPointAndPoles) {
  const PrecisionContext ctx(40);
  expect_error(ErrorCode::ExcludedPoint, [&] { f_eval(cplx("1", ctx), ctx); });
  expect_error(ErrorCode::PoleOfX, [&] { x_eval(cplx("2", ctx), ctx); });
  expect_error(ErrorCode::PoleOfX, [&] { log_x(cplx("6", ctx), ctx); });
  expect_error(ErrorCode::DomainError, [&] { log_x(cplx("-3", ctx), ctx); });
  expect_error(ErrorCode::PoleOfX, [&] { functional_equation_residual(cplx("4", ctx), ctx); });
  expect_error(ErrorCode::ExcludedPoint, [&] { functional_equation_residual(cplx("0", ctx), ctx); });
}

TEST(DH, ZerosAndPolesOfX) {
  const PrecisionContext ctx(40);
  EXPECT_TRUE(x_eval(cplx("-1", ctx), ctx).re().is_zero());
  EXPECT_TRUE(x_eval(cplx("-5", ctx), ctx).im().is_zero());
  EXPECT_TRUE(is_pole_of_x(cplx("8", ctx)));
  EXPECT_FALSE(is_pole_of_x(cplx("3", ctx)));
  EXPECT_FALSE(is_pole_of_x(cplx("2+1e-30i", ctx)));
  EXPECT_TRUE(is_zero_of_x(cplx("-7", ctx)));
  EXPECT_FALSE(is_zero_of_x(cplx("-2", ctx)));
}

TEST(DH, TrivialZerosStartAtMinusThree) {
  const PrecisionContext ctx(40);
  EXPECT_FALSE(is_trivial_zero(cplx("-1", ctx)));
  EXPECT_TRUE(is_trivial_zero(cplx("-3", ctx)));
  EXPECT_TRUE(is_trivial_zero(cplx("-9", ctx)));
  EXPECT_FALSE(is_trivial_zero(cplx("-4", ctx)));
  EXPECT_FALSE(is_trivial_zero(cplx("-3+1e-20i", ctx)));
  // f itself is tiny at s = -3, as the functional equation forces.
  EXPECT_LE(abs(f_eval(cplx("-3", ctx), ctx)), pow10_neg(35, ctx.bits()));
}

TEST(DH, ZIsRealAndChangesSignNearFirstZero) {
  const PrecisionContext ctx(50);
  const mpfr_prec_t p = ctx.bits();
  const ZValue a = z_function(parse_decimal("14.3", ctx), ctx);
  const ZValue b = z_function(parse_decimal("14.5", ctx), ctx);
  EXPECT_NE(a.value.sign(), b.value.sign());
  EXPECT_LE(a.im_leak, pow10_neg(45, p));
  // |Z(t)| = |f(1/2 + it)|
  const Real t = parse_decimal("9.7", ctx);
  EXPECT_LE(abs(abs(z_function(t, ctx).value) - abs(f_eval(Complex(rational(1, 2, p), t), ctx))), pow10_neg(50, p));
}

TEST(DH, ZDerivativeMatchesFiniteDifference) {
  const PrecisionContext ctx(60);
  const mpfr_prec_t p = ctx.bits();
  const Real h = pow10_neg(20, p);
  for (const char* t_text : {"3.1", "14.404", "23.9"}) {
    const Real t = parse_decimal(t_text, ctx);
    const ZDerivative zd = z_with_derivative(t, ctx);
    const Real fd = (z_function(t + h, ctx).value - z_function(t - h, ctx).value) / (h * 2);
    EXPECT_LE(abs(zd.derivative - fd) / abs(fd), pow10_neg(35, p)) << t_text;
  }
}
