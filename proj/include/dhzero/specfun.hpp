#pragma once

#include <gmpxx.h>

#include <mutex>
#include <shared_mutex>
#include <vector>

#include "dhzero/precision.hpp"

namespace dhzero::specfun {

/// Exact Bernoulli numbers, shared process-wide. Readers proceed concurrently;
/// growing the table takes the writer lock.
class BernoulliTable {
 public:
  static BernoulliTable& instance();

  /// Exact B_n (B_1 = -1/2, odd n >= 3 give zero).
  mpq_class get(unsigned n);
  /// Number of even-index entries currently cached.
  size_t cached_even() const;

 private:
  BernoulliTable() = default;
  void extend_to(unsigned even_count);

  mutable std::shared_mutex mutex_;
  std::vector<mpq_class> even_;  // even_[k] = B_{2k}
};

mpq_class bernoulli(unsigned n);

/// Continuous log-gamma (the branch analytic off the negative real axis with
/// log_gamma(z + 1) = log_gamma(z) + log z).
Complex log_gamma(const Complex& z, const PrecisionContext& ctx);

/// Psi(z) by upward recurrence and the asymptotic series.
Complex digamma(const Complex& z, const PrecisionContext& ctx);

/// Psi(z) = -gamma + sum_{n>=1} (z-1)/(n(n+z-1)), summed directly to a cut-off
/// and closed with an Euler-Maclaurin estimate of the remaining tail. Only meant
/// as a cross-check for digamma(); tol must be >= 1e-15.
Complex digamma_series(const Complex& z, const Real& tol, const PrecisionContext& ctx);

struct ZetaPair {
  Complex value;
  Complex derivative;  // d/ds
};

/// zeta(s, a) for 0 < a <= 2 by Euler-Maclaurin summation.
Complex hurwitz_zeta(const Complex& s, const Real& a, const PrecisionContext& ctx);
Complex hurwitz_zeta_ds(const Complex& s, const Real& a, const PrecisionContext& ctx);
/// Both at once; shares the power evaluations.
ZetaPair hurwitz_zeta_with_derivative(const Complex& s, const Real& a, const PrecisionContext& ctx);

namespace detail {
/// B_{2k} for k = 0..count-1 rounded to `prec`; cached per thread and precision.
const std::vector<Real>& even_bernoulli_reals(mpfr_prec_t prec, size_t count);
}  // namespace detail

}  // namespace dhzero::specfun
