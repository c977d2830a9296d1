#include "dhzero/dh.hpp"

#include "dhzero/specfun.hpp"

namespace dhzero::dh {

namespace {

bool is_real_integer(const Complex& s) { return s.is_real() && s.re().is_integer(); }

void require_not_one(const Complex& s, const char* what) {
  if (s.is_real() && s.re() == 1L) {
    throw Error(ErrorCode::ExcludedPoint, std::string(what) + " is not evaluated at s = 1");
  }
}

}  // namespace

Real tan_theta(const PrecisionContext& ctx) {
  const mpfr_prec_t wp = ctx.bits() + 16;
  const Real root5 = sqrt(Real(5, wp));
  const Real numer = sqrt(10L - root5 * 2) - 2;
  return (numer / (root5 - 1)).at(ctx.bits());
}

DHParameters::DHParameters(mpfr_prec_t prec)
    : tan_theta(prec),
      shifts{rational(1, 5, prec), rational(2, 5, prec), rational(3, 5, prec), rational(4, 5, prec)},
      weights{Real(1, prec), Real(prec), Real(prec), Real(-1, prec)},
      log5(log(Real(5, prec))),
      log5_over_pi(log(Real(5, prec) / const_pi(prec))) {
  const Real root5 = sqrt(Real(5, prec));
  tan_theta = (sqrt(10L - root5 * 2) - 2) / (root5 - 1);
  weights[1] = tan_theta;
  weights[2] = -tan_theta;
}

FValue f_with_derivative(const Complex& s_in, const PrecisionContext& ctx) {
  require_not_one(s_in, "f");
  const DHParameters p(ctx.bits() + 16);
  const Complex s = s_in.at(ctx.bits() + 16);
  Complex sum(s.precision());
  Complex dsum(s.precision());
  for (size_t k = 0; k < 4; ++k) {
    const auto z = specfun::hurwitz_zeta_with_derivative(s, p.shifts[k], ctx);
    sum += z.value * p.weights[k];
    dsum += z.derivative * p.weights[k];
  }
  const Complex scale = pow_neg(p.log5, s);
  Complex value = scale * sum;
  Complex derivative = scale * dsum - value * p.log5;
  return FValue{value.at(ctx.bits()), derivative.at(ctx.bits())};
}

Complex f_eval(const Complex& s_in, const PrecisionContext& ctx) {
  require_not_one(s_in, "f");
  const DHParameters p(ctx.bits() + 16);
  const Complex s = s_in.at(ctx.bits() + 16);
  Complex sum(s.precision());
  for (size_t k = 0; k < 4; ++k) sum += specfun::hurwitz_zeta(s, p.shifts[k], ctx) * p.weights[k];
  return (pow_neg(p.log5, s) * sum).at(ctx.bits());
}

Complex f_prime(const Complex& s, const PrecisionContext& ctx) { return f_with_derivative(s, ctx).derivative; }

bool is_pole_of_x(const Complex& s) {
  if (!is_real_integer(s) || s.re() < 2L) return false;
  return s.re().to_long() % 2 == 0;
}

bool is_zero_of_x(const Complex& s) {
  if (!is_real_integer(s) || s.re() > -1L) return false;
  return s.re().to_long() % 2 != 0;
}

Complex log_x(const Complex& s_in, const PrecisionContext& ctx) {
  if (is_pole_of_x(s_in)) throw Error(ErrorCode::PoleOfX, "X(s) has a pole at s = " + to_decimal(s_in.re(), 20));
  if (is_zero_of_x(s_in)) {
    throw Error(ErrorCode::DomainError, "log X(s) is -infinity at the zero s = " + to_decimal(s_in.re(), 20));
  }
  const mpfr_prec_t wp = ctx.bits() + 16;
  const Complex s = s_in.at(wp);
  const Real half = rational(1, 2, wp);
  const Real lb = log(Real(5, wp) / const_pi(wp));
  Complex result = (Complex(half) - s) * lb;
  result += specfun::log_gamma(1L - s * half, ctx);
  result -= specfun::log_gamma((s + 1) * half, ctx);
  return result.at(ctx.bits());
}

Complex log_x_derivative(const Complex& s_in, const PrecisionContext& ctx) {
  if (is_pole_of_x(s_in)) throw Error(ErrorCode::PoleOfX, "X(s) has a pole at s = " + to_decimal(s_in.re(), 20));
  if (is_zero_of_x(s_in)) throw Error(ErrorCode::PoleError, "log X(s) is singular at s = " + to_decimal(s_in.re(), 20));
  const mpfr_prec_t wp = ctx.bits() + 16;
  const Complex s = s_in.at(wp);
  const Real half = rational(1, 2, wp);
  Complex psi = specfun::digamma(1L - s * half, ctx) + specfun::digamma((s + 1) * half, ctx);
  Complex result = -(psi * half);
  result.re() -= log(Real(5, wp) / const_pi(wp));
  return result.at(ctx.bits());
}

Complex x_eval(const Complex& s, const PrecisionContext& ctx) {
  if (is_zero_of_x(s)) return Complex(ctx.bits());
  return exp(log_x(s, ctx));
}

Real functional_equation_residual(const Complex& s, const PrecisionContext& ctx) {
  if (is_pole_of_x(s)) throw Error(ErrorCode::PoleOfX, "X(s) has a pole at s = " + to_decimal(s.re(), 20));
  const Complex reflected = 1L - s;
  require_not_one(s, "functional_equation_residual");
  require_not_one(reflected, "functional_equation_residual (1 - s)");

  const Complex lhs = f_eval(s, ctx);
  const Complex rhs = x_eval(s, ctx) * f_eval(reflected, ctx);
  const Real floor = pow10_neg(ctx.digits(), ctx.bits());
  const Real denom = max(max(abs(lhs), abs(rhs)), floor);
  return abs(lhs - rhs) / denom;
}

ZValue z_function(const Real& t, const PrecisionContext& ctx) {
  const mpfr_prec_t wp = ctx.bits();
  const Complex s(rational(1, 2, wp), t.at(wp));
  const Real phi = log_x(s, ctx).im();
  const Complex rotation = exp(Complex(Real(wp), -(phi / 2)));
  const Complex z = rotation * f_eval(s, ctx);
  return ZValue{z.re(), abs(z.im())};
}

ZDerivative z_with_derivative(const Real& t, const PrecisionContext& ctx) {
  const mpfr_prec_t wp = ctx.bits();
  const Complex s(rational(1, 2, wp), t.at(wp));
  const Real phi = log_x(s, ctx).im();
  const Real dphi = log_x_derivative(s, ctx).re();
  const Complex rotation = exp(Complex(Real(wp), -(phi / 2)));
  const FValue f = f_with_derivative(s, ctx);
  // d/dt [e^{-i phi/2} f(1/2 + it)] = e^{-i phi/2} (i f'(s) - (i/2) phi'(t) f(s))
  const Complex inner = mul_i(f.derivative) - mul_i(f.value) * (dphi / 2);
  return ZDerivative{(rotation * f.value).re(), (rotation * inner).re()};
}

bool is_trivial_zero(const Complex& s) { return is_zero_of_x(s) && s.re() <= -3L; }

}  // namespace dhzero::dh
