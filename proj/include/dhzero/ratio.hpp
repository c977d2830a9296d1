#pragma once

#include <vector>

#include "dhzero/precision.hpp"

namespace dhzero::ratio {

/// |X(s)| = (5/pi)^(1/2 - sigma) exp(Re[log_gamma(1 - s/2) - log_gamma((1+s)/2)])
Real abs_x(const Complex& s, const PrecisionContext& ctx);

/// log|X(s)|; PoleOfX at the poles, DomainError at the zeros of X.
Real log_abs_x(const Complex& s, const PrecisionContext& ctx);

/// X(s) X(1-s), which is identically 1.
Complex inversion_product(const Complex& s, const PrecisionContext& ctx);

struct ZeroPolePair {
  long zero;  // -2n-1
  long pole;  // 2n+2
};

struct ZeroPoleSet {
  std::vector<long> zeros;
  std::vector<long> poles;
  std::vector<ZeroPolePair> duality;  // X(zero) = 1 / X(pole) in the limit
};

ZeroPoleSet x_zeros_poles(int n_max);

struct TimeDerivative {
  Real value;
  Real im_leak;
};

/// d|X|/dt = (i|X|/4) [Psi(1 - conj(s)/2) - Psi(1 - s/2) - Psi((1+s)/2) + Psi((1+conj(s))/2)]
TimeDerivative d_abs_x_dt_digamma(const Complex& s, const PrecisionContext& ctx);

struct SeriesDerivative {
  Real value;
  long terms;          // summed terms before the tail estimate
  Real tail_estimate;  // integral estimate added for n > terms
};

/// (1/2 - sigma) t |X(s)| sum_{n>=1} 8(n - 1/4) / (|2n + s - 1|^2 |2n - conj(s)|^2).
/// Validator form; tol must be >= 1e-12.
SeriesDerivative d_abs_x_dt_series(const Complex& s, const Real& tol, const PrecisionContext& ctx);

enum class Direction { Increasing, Decreasing, Constant };
const char* to_string(Direction d);

struct MonotonicitySample {
  Real t;
  Real abs_x;
};

struct MonotonicityReport {
  Real sigma;
  std::vector<MonotonicitySample> samples;
  Direction direction;
  int violations = 0;
};

MonotonicityReport monotonicity_scan(const Real& sigma, const Real& t0, const Real& t1, int n,
                                     const PrecisionContext& ctx);

/// |central difference in t of |f(s)|/|f(1-s)| - d|X|/dt| at step h.
Real ratio_derivative_check(const Complex& s, const Real& h, const PrecisionContext& ctx);

/// exp(-|sigma - 1/2| |t| / kappa); 1 on the critical line.
Real pseudo_zero_score(const Real& sigma, const Real& t, const Real& kappa);

}  // namespace dhzero::ratio
