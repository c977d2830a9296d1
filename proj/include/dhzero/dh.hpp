#pragma once

#include <array>

#include "dhzero/precision.hpp"

namespace dhzero::dh {

/// Fixed constants of f(s): shifts k/5 with signs {+1, +tan, -tan, -1}, scale
/// 5^-s, and base 5/pi in the gamma factor.
struct DHParameters {
  Real tan_theta;
  std::array<Real, 4> shifts;
  std::array<Real, 4> weights;
  Real log5;
  Real log5_over_pi;

  explicit DHParameters(mpfr_prec_t prec);
};

/// (sqrt(10 - 2 sqrt 5) - 2) / (sqrt 5 - 1)
Real tan_theta(const PrecisionContext& ctx);

struct FValue {
  Complex value;
  Complex derivative;
};

/// f(s) = 5^-s [zeta(s,1/5) + tan*zeta(s,2/5) - tan*zeta(s,3/5) - zeta(s,4/5)].
Complex f_eval(const Complex& s, const PrecisionContext& ctx);
Complex f_prime(const Complex& s, const PrecisionContext& ctx);
FValue f_with_derivative(const Complex& s, const PrecisionContext& ctx);

/// log X(s) = (1/2 - s) log(5/pi) + log_gamma(1 - s/2) - log_gamma((1+s)/2).
/// Throws PoleOfX at s = 2, 4, 6, ... and DomainError at the zeros s = -1, -3, ...
Complex log_x(const Complex& s, const PrecisionContext& ctx);

/// d/ds log X(s) = -log(5/pi) - Psi(1 - s/2)/2 - Psi((1+s)/2)/2.
Complex log_x_derivative(const Complex& s, const PrecisionContext& ctx);

/// X(s) from the gamma closed form; exactly zero at s = -1, -3, -5, ...
Complex x_eval(const Complex& s, const PrecisionContext& ctx);

bool is_pole_of_x(const Complex& s);
bool is_zero_of_x(const Complex& s);

/// |f(s) - X(s) f(1-s)| / max(|f(s)|, |X(s) f(1-s)|, 10^-digits)
Real functional_equation_residual(const Complex& s, const PrecisionContext& ctx);

struct ZValue {
  Real value;
  Real im_leak;
};

/// Real rotation exp(-i phi(t)/2) f(1/2 + it) with phi(t) = Im log X(1/2 + it).
ZValue z_function(const Real& t, const PrecisionContext& ctx);

struct ZDerivative {
  Real value;
  Real derivative;  // dZ/dt
};
ZDerivative z_with_derivative(const Real& t, const PrecisionContext& ctx);

/// True only for the exact negative odd integers <= -3.
bool is_trivial_zero(const Complex& s);

}  // namespace dhzero::dh
