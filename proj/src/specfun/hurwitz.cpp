#include <cmath>

#include "dhzero/specfun.hpp"

namespace dhzero::specfun {

namespace {

void validate(const Complex& s, const Real& a) {
  if (!(a > 0L) || a > 2L) {
    throw Error(ErrorCode::DomainError, "hurwitz_zeta requires 0 < a <= 2, got a = " + to_decimal(a, 20));
  }
  if (s.is_real() && s.re() == 1L) throw Error(ErrorCode::PoleError, "hurwitz_zeta has a pole at s = 1");
}

// Euler-Maclaurin with shift N:
//   zeta(s,a) = sum_{n<N} (n+a)^-s + (N+a)^(1-s)/(s-1) + (N+a)^-s/2
//             + sum_{k>=1} B_2k/(2k)! (s)_(2k-1) (N+a)^(-s-2k+1)
// The derivative differentiates every term; the rising factorial and its
// derivative are carried along by the product rule.
ZetaPair evaluate(const Complex& s_in, const Real& a_in, const PrecisionContext& ctx, bool with_derivative) {
  validate(s_in, a_in);

  const double sigma = s_in.re().to_double();
  const double t = std::fabs(s_in.im().to_double());
  const double mod_s = std::hypot(sigma, t);
  const double total = ctx.total_digits();
  const double target_digits = ctx.digits() + ctx.guard_digits() / 2.0;

  long shift = std::max(static_cast<long>(std::ceil(1.3 * total)), static_cast<long>(std::ceil(t / 2.0)) + 10);

  for (int attempt = 0; attempt < 4; ++attempt, shift *= 2) {
    const double growth = std::max(0.0, -sigma) * std::log2(static_cast<double>(shift) + 2.0);
    const mpfr_prec_t wp = ctx.bits() + 24 + static_cast<mpfr_prec_t>(std::ceil(growth + std::log2(mod_s + 2.0)));
    const Complex s = s_in.at(wp);
    const Real a = a_in.at(wp);

    Complex value(wp);
    Complex deriv(wp);
    for (long n = 0; n < shift; ++n) {
      const Real ln = log(a + n);
      const Complex p = pow_neg(ln, s);
      if (with_derivative) deriv -= p * ln;
      value += p;
    }

    const Real big_n = a + shift;
    const Real log_n = log(big_n);
    const Complex power = pow_neg(log_n, s);  // (N+a)^-s
    const Complex sm1 = s - 1;
    const Complex integral = power * big_n / sm1;
    value += integral;
    value += power / 2;
    if (with_derivative) {
      deriv -= integral * log_n + integral / sm1;
      deriv -= power * log_n / 2;
    }

    // Correction terms.
    const Real inv_n2 = Real(1, wp) / sqr(big_n);
    Complex rising = s;                    // (s)_(2k-1)
    Complex rising_d(Real(1, wp));         // d/ds (s)_(2k-1)
    Complex pw = power / big_n;            // (N+a)^(-s-2k+1)
    Real factorial(2, wp);                 // (2k)!
    const Real abs_value_floor(1, wp);
    bool converged = false;
    Real previous(wp);
    const long cap = static_cast<long>(4 * total) + 200;
    for (long k = 1; k <= cap; ++k) {
      const Real& b2k = detail::even_bernoulli_reals(wp, static_cast<size_t>(k) + 1)[static_cast<size_t>(k)];
      const Real coef = b2k / factorial;
      const Complex term = rising * pw * coef;
      value += term;
      Real mag = abs(term);
      if (with_derivative) {
        const Complex dterm = (rising_d - rising * log_n) * pw * coef;
        deriv += dterm;
        mag = max(mag, abs(dterm));
      }

      const Real scale = max(abs_value_floor, abs(value));
      if (mag.is_zero() || log10(mag / scale).to_double() < -target_digits) {
        converged = true;
        break;
      }
      if (k > 2 && mag > previous) break;
      previous = mag;

      // Advance k -> k+1: multiply by (s + 2k - 1)(s + 2k).
      for (long m = 2 * k - 1; m <= 2 * k; ++m) {
        const Complex factor = s + m;
        rising_d = rising_d * factor + rising;
        rising *= factor;
      }
      pw *= inv_n2;
      factorial *= (2 * k + 1) * (2 * k + 2);
    }
    if (!converged) continue;
    return ZetaPair{value.at(ctx.bits()), deriv.at(ctx.bits())};
  }
  throw Error(ErrorCode::PrecisionError, "Euler-Maclaurin corrections did not reach the target precision");
}

}  // namespace

Complex hurwitz_zeta(const Complex& s, const Real& a, const PrecisionContext& ctx) {
  return evaluate(s, a, ctx, false).value;
}

Complex hurwitz_zeta_ds(const Complex& s, const Real& a, const PrecisionContext& ctx) {
  return evaluate(s, a, ctx, true).derivative;
}

ZetaPair hurwitz_zeta_with_derivative(const Complex& s, const Real& a, const PrecisionContext& ctx) {
  return evaluate(s, a, ctx, true);
}

}  // namespace dhzero::specfun
