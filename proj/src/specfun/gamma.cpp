#include <cmath>
#include <numbers>

#include "dhzero/specfun.hpp"

namespace dhzero::specfun {

namespace {

bool is_nonpositive_integer(const Complex& z) {
  return z.is_real() && z.re().is_integer() && z.re() <= 0L;
}

void require_regular(const Complex& z, const char* what) {
  if (is_nonpositive_integer(z)) {
    throw Error(ErrorCode::PoleError,
                std::string(what) + " has a pole at the nonpositive integer " + to_decimal(z.re(), 20));
  }
}

/// Shift count r so that w = z + r has Re w >= 1 and |w| >= r_min.
long shift_count(const Complex& z, double r_min) {
  const double x = z.re().to_double();
  const double y = std::fabs(z.im().to_double());
  double r = std::max(0.0, std::ceil(1.0 - x));
  if ((x + r) * (x + r) + y * y < r_min * r_min) r = std::max(r, std::ceil(std::sqrt(r_min * r_min - y * y) - x));
  return static_cast<long>(r);
}

/// Extra working bits to cover cancellation against values of size ~|z| log|z|.
mpfr_prec_t magnitude_bits(const Complex& z) {
  const double m = std::hypot(z.re().to_double(), z.im().to_double());
  return 32 + static_cast<mpfr_prec_t>(std::ceil(std::log2(2.0 + m * std::log(2.0 + m))));
}

/// sum_{j<r} log(z + j) with the standard branch: log of the product, with the
/// imaginary part moved onto the sheet given by the summed principal arguments.
Complex shifted_log_sum(const Complex& z, long r) {
  const mpfr_prec_t wp = z.precision();
  Complex product(Real(1, wp));
  double arg_sum = 0.0;
  const double y = z.im().to_double();
  const double x = z.re().to_double();
  for (long j = 0; j < r; ++j) {
    product *= z + j;
    arg_sum += std::atan2(y, x + static_cast<double>(j));
  }
  Complex lp = log(product);
  const double principal = lp.im().to_double();
  const long turns = std::lround((arg_sum - principal) / (2.0 * std::numbers::pi));
  if (turns != 0) lp.im() += const_pi(wp) * (2 * turns);
  return lp;
}

double stirling_radius(const PrecisionContext& ctx) {
  // Smallest Stirling term is about exp(-2 pi |w|).
  return 0.4 * ctx.total_digits() + 4.0;
}

}  // namespace

Complex log_gamma(const Complex& z_in, const PrecisionContext& ctx) {
  require_regular(z_in, "log_gamma");
  const mpfr_prec_t wp = ctx.bits() + magnitude_bits(z_in);
  const Complex z = z_in.at(wp);
  const long r = shift_count(z, stirling_radius(ctx));
  const Complex w = z + r;

  const Real half = rational(1, 2, wp);
  const Complex log_w = log(w);
  Complex sum = (w - half) * log_w - w;
  sum.re() += log(const_pi(wp) * 2) * half;

  const Complex inv = reciprocal(w);
  const Complex inv2 = sqr(inv);
  Complex power = inv;
  const long eps_exp = -static_cast<long>(wp);
  Real previous(wp);
  for (unsigned k = 1;; ++k) {
    const Real& b2k = detail::even_bernoulli_reals(wp, k + 1)[k];
    Complex term = power * (b2k / static_cast<long>(2 * k * (2 * k - 1)));
    const Real mag = abs(term);
    sum += term;
    if (mag.is_zero() || mag.exponent2() < eps_exp + std::max(0L, abs(sum).exponent2())) break;
    if (k > 1 && mag > previous) {
      throw Error(ErrorCode::PrecisionError, "Stirling series diverged before reaching target precision");
    }
    previous = mag;
    power *= inv2;
  }

  if (r > 0) sum -= shifted_log_sum(z, r);
  return sum.at(ctx.bits());
}

Complex digamma(const Complex& z_in, const PrecisionContext& ctx) {
  require_regular(z_in, "digamma");
  const mpfr_prec_t wp = ctx.bits() + magnitude_bits(z_in);
  const Complex z = z_in.at(wp);
  const long r = shift_count(z, stirling_radius(ctx));
  const Complex w = z + r;

  const Complex inv = reciprocal(w);
  const Complex inv2 = sqr(inv);
  Complex sum = log(w) - inv / 2;
  Complex power = inv2;
  const long eps_exp = -static_cast<long>(wp);
  Real previous(wp);
  for (unsigned k = 1;; ++k) {
    const Real& b2k = detail::even_bernoulli_reals(wp, k + 1)[k];
    Complex term = power * (b2k / static_cast<long>(2 * k));
    const Real mag = abs(term);
    sum -= term;
    if (mag.is_zero() || mag.exponent2() < eps_exp + std::max(0L, abs(sum).exponent2())) break;
    if (k > 1 && mag > previous) {
      throw Error(ErrorCode::PrecisionError, "digamma asymptotic series diverged");
    }
    previous = mag;
    power *= inv2;
  }
  for (long j = 0; j < r; ++j) sum -= reciprocal(z + j);
  return sum.at(ctx.bits());
}

Complex digamma_series(const Complex& z_in, const Real& tol, const PrecisionContext& ctx) {
  require_regular(z_in, "digamma_series");
  if (tol < pow10_neg(15, tol.precision())) {
    throw Error(ErrorCode::TolTooTight, "digamma_series tolerance must be >= 1e-15");
  }
  const mpfr_prec_t wp = ctx.bits() + 32;
  const Complex w = z_in.at(wp) - 1;
  const Real target = tol.at(wp) / 8;

  long n_terms = std::max(64L, static_cast<long>(std::ceil(2.0 * abs(w).to_double())) + 10);
  for (int attempt = 0; attempt < 8; ++attempt, n_terms *= 2) {
    // Partial sum of (z-1) / (n (n + z - 1)).
    Complex partial(wp);
    for (long n = 1; n <= n_terms; ++n) {
      partial += w / ((w + n) * n);
    }

    // Tail from n = A on: with g(x) = 1/x - 1/(x + w),
    //   sum_{n>=A} g(n) = log((A + w)/A) + g(A)/2 + sum_k B_2k/(2k) [A^-2k - (A + w)^-2k].
    const long a = n_terms + 1;
    const Complex aw = w + a;
    Complex tail = log(aw / Real(a, wp));
    tail += (reciprocal(Complex(Real(a, wp))) - reciprocal(aw)) / 2;

    const Real inv_a2 = Real(1, wp) / (Real(a, wp) * a);
    const Complex inv_aw2 = sqr(reciprocal(aw));
    Real pa = inv_a2;
    Complex paw = inv_aw2;
    bool closed = false;
    Real previous(wp);
    for (unsigned k = 1; k < 400; ++k) {
      const Real& b2k = detail::even_bernoulli_reals(wp, k + 1)[k];
      Complex term = (Complex(pa) - paw) * (b2k / static_cast<long>(2 * k));
      const Real mag = abs(term);
      tail += term;
      if (mag < target) {
        closed = true;
        break;
      }
      if (k > 1 && mag > previous) break;
      previous = mag;
      pa *= inv_a2;
      paw *= inv_aw2;
    }
    if (!closed) continue;

    Complex result = partial + tail;
    result.re() -= const_euler(wp);
    return result.at(ctx.bits());
  }
  throw Error(ErrorCode::PrecisionError, "digamma_series could not close the tail within tolerance");
}

}  // namespace dhzero::specfun
