#include "dhzero/ratio.hpp"

#include <algorithm>
#include <cmath>

#include "dhzero/dh.hpp"
#include "dhzero/specfun.hpp"

namespace dhzero::ratio {

Real abs_x(const Complex& s, const PrecisionContext& ctx) {
  if (dh::is_zero_of_x(s)) return Real(ctx.bits());
  return exp(dh::log_x(s, ctx).re());
}

Real log_abs_x(const Complex& s, const PrecisionContext& ctx) { return dh::log_x(s, ctx).re(); }

Complex inversion_product(const Complex& s, const PrecisionContext& ctx) {
  const Complex reflected = 1L - s;
  if (dh::is_pole_of_x(s) || dh::is_pole_of_x(reflected)) {
    throw Error(ErrorCode::PoleOfX, "inversion product touches a pole of X");
  }
  return dh::x_eval(s, ctx) * dh::x_eval(reflected, ctx);
}

ZeroPoleSet x_zeros_poles(int n_max) {
  if (n_max < 0) throw Error(ErrorCode::DomainError, "n_max must be >= 0");
  ZeroPoleSet out;
  for (long n = 0; n <= n_max; ++n) {
    out.zeros.push_back(-2 * n - 1);
    out.poles.push_back(2 * n + 2);
    out.duality.push_back({-2 * n - 1, 2 * n + 2});
  }
  return out;
}

TimeDerivative d_abs_x_dt_digamma(const Complex& s, const PrecisionContext& ctx) {
  if (dh::is_pole_of_x(s)) throw Error(ErrorCode::PoleOfX, "d|X|/dt is undefined at a pole of X");
  const mpfr_prec_t wp = ctx.bits() + 16;
  const Complex z = s.at(wp);
  const Complex zc = conj(z);
  const Real half = rational(1, 2, wp);
  Complex bracket = specfun::digamma(1L - zc * half, ctx);
  bracket -= specfun::digamma(1L - z * half, ctx);
  bracket -= specfun::digamma((z + 1) * half, ctx);
  bracket += specfun::digamma((zc + 1) * half, ctx);

  const Real modulus = abs_x(s, ctx).at(wp);
  // i * bracket = -Im(bracket) + i Re(bracket)
  Real value = -(bracket.im() * modulus) / 4;
  Real leak = abs(bracket.re() * modulus) / 4;
  return TimeDerivative{value.at(ctx.bits()), leak.at(ctx.bits())};
}

SeriesDerivative d_abs_x_dt_series(const Complex& s, const Real& tol, const PrecisionContext& ctx) {
  if (tol < pow10_neg(12, tol.precision())) {
    throw Error(ErrorCode::TolTooTight, "d_abs_x_dt_series tolerance must be >= 1e-12");
  }
  const mpfr_prec_t wp = ctx.bits();
  const Real sigma = s.re().at(wp);
  const Real t = s.im().at(wp);
  const Real delta = sigma - rational(1, 2, wp);
  if (delta.is_zero() || t.is_zero()) return SeriesDerivative{Real(wp), 0, Real(wp)};

  const Real prefactor = -delta * t * abs_x(s, ctx);

  const double mod_s = std::hypot(sigma.to_double(), t.to_double());
  const long terms = std::max(static_cast<long>(std::ceil(mod_s)) + 10,
                              static_cast<long>(std::ceil(std::sqrt(1.0 / tol.to_double()))));

  const Real t2 = sqr(t);
  Real sum(wp);
  for (long n = 1; n <= terms; ++n) {
    const Real numer = (Real(4 * n, wp) - 1) * 2;  // 8(n - 1/4)
    const Real a = sqr(sigma + (2 * n - 1)) + t2;  // |2n + s - 1|^2
    const Real b = sqr((2 * n) - sigma) + t2;      // |2n - conj(s)|^2
    const Real term = numer / (a * b);
    if (!(term > 0L)) throw Error(ErrorCode::PrecisionError, "non-positive series term at n = " + std::to_string(n));
    sum += term;
  }

  // With v = 2x - 1/2 the summand is (1/delta)[1/((v-delta)^2+t^2) - 1/((v+delta)^2+t^2)],
  // so its integral over x from N + 1/2 to infinity has a closed form in arctangents.
  const Real abs_t = abs(t);
  const Real v0 = Real(2 * terms, wp) + rational(1, 2, wp);
  const Real tail = (atan((v0 + delta) / abs_t) - atan((v0 - delta) / abs_t)) / (delta * abs_t * 2);
  sum += tail;
  return SeriesDerivative{(prefactor * sum).at(ctx.bits()), terms, tail.at(ctx.bits())};
}

const char* to_string(Direction d) {
  switch (d) {
    case Direction::Increasing: return "Increasing";
    case Direction::Decreasing: return "Decreasing";
    case Direction::Constant: return "Constant";
  }
  return "?";
}

MonotonicityReport monotonicity_scan(const Real& sigma, const Real& t0, const Real& t1, int n,
                                     const PrecisionContext& ctx) {
  if (n < 2) throw Error(ErrorCode::DomainError, "monotonicity_scan needs n >= 2");
  if (t0 < 0L || !(t0 < t1)) throw Error(ErrorCode::DomainError, "monotonicity_scan needs 0 <= t0 < t1");
  const mpfr_prec_t wp = ctx.bits();
  const Real half = rational(1, 2, wp);

  MonotonicityReport report{sigma.at(wp), {}, Direction::Constant, 0};
  const Real gap = half - sigma;
  report.direction = gap > 0L ? Direction::Increasing : (gap < 0L ? Direction::Decreasing : Direction::Constant);

  const Real width = t1.at(wp) - t0;
  for (int i = 0; i < n; ++i) {
    Real t = t0.at(wp) + width * static_cast<long>(i) / static_cast<long>(n - 1);
    Real value = abs_x(Complex(sigma.at(wp), t), ctx);
    report.samples.push_back({std::move(t), std::move(value)});
  }

  const Real unit_tol = pow10_neg(ctx.digits() - 10, wp);
  for (size_t i = 0; i + 1 < report.samples.size(); ++i) {
    const Real& a = report.samples[i].abs_x;
    const Real& b = report.samples[i + 1].abs_x;
    switch (report.direction) {
      case Direction::Increasing:
        if (!(b > a)) ++report.violations;
        break;
      case Direction::Decreasing:
        if (!(b < a)) ++report.violations;
        break;
      case Direction::Constant:
        if (abs(b - 1L) > unit_tol) ++report.violations;
        break;
    }
  }
  if (report.direction == Direction::Constant && abs(report.samples.front().abs_x - 1L) > unit_tol) {
    ++report.violations;
  }
  return report;
}

Real ratio_derivative_check(const Complex& s, const Real& h, const PrecisionContext& ctx) {
  if (dh::is_pole_of_x(s)) throw Error(ErrorCode::PoleOfX, "ratio_derivative_check at a pole of X");
  const mpfr_prec_t wp = ctx.bits();
  const Real floor = pow10_neg(ctx.digits() / 2, wp);

  auto modulus_ratio = [&](const Real& shift) {
    const Complex point(s.re().at(wp), s.im().at(wp) + shift);
    const Real den = abs(dh::f_eval(1L - point, ctx));
    if (den < floor) throw Error(ErrorCode::DivideByZero, "|f(1-s)| is below the division floor");
    return abs(dh::f_eval(point, ctx)) / den;
  };

  // The centre itself must also clear the floor.
  (void)modulus_ratio(Real(wp));
  const Real hp = h.at(wp);
  const Real fd = (modulus_ratio(hp) - modulus_ratio(-hp)) / (hp * 2);
  return abs(fd - d_abs_x_dt_digamma(s, ctx).value);
}

Real pseudo_zero_score(const Real& sigma, const Real& t, const Real& kappa) {
  if (!(kappa > 0L)) throw Error(ErrorCode::DomainError, "kappa must be positive");
  const mpfr_prec_t wp = std::max({sigma.precision(), t.precision(), kappa.precision()});
  const Real offset = abs(sigma.at(wp) - rational(1, 2, wp));
  return exp(-(offset * abs(t.at(wp))) / kappa.at(wp));
}

}  // namespace dhzero::ratio
