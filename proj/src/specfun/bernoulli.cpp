#include <gmpxx.h>

#include <map>

#include "dhzero/specfun.hpp"

namespace dhzero::specfun {

BernoulliTable& BernoulliTable::instance() {
  static BernoulliTable table;
  return table;
}

size_t BernoulliTable::cached_even() const {
  std::shared_lock lock(mutex_);
  return even_.size();
}

// Tangent numbers by the integer recurrence of Brent and Harvey, then
// B_{2k} = (-1)^(k-1) 2k T_k / (4^k (4^k - 1)). Everything stays in integers
// until the final division, so the table is exact.
void BernoulliTable::extend_to(unsigned even_count) {
  std::unique_lock lock(mutex_);
  if (even_.size() >= even_count) return;

  unsigned target = std::max<unsigned>(even_count, static_cast<unsigned>(even_.size() * 2));
  target = std::max(target, 64u);
  const unsigned n = target - 1;  // tangent numbers T_1..T_n

  std::vector<mpz_class> t(n + 1);
  t[1] = 1;
  for (unsigned k = 2; k <= n; ++k) t[k] = (k - 1) * t[k - 1];
  for (unsigned k = 2; k <= n; ++k) {
    for (unsigned j = k; j <= n; ++j) t[j] = (j - k) * t[j - 1] + (j - k + 2) * t[j];
  }

  even_.resize(target);
  even_[0] = 1;
  for (unsigned k = 1; k <= n; ++k) {
    mpz_class four_k;
    mpz_ui_pow_ui(four_k.get_mpz_t(), 4, k);
    mpq_class b(mpz_class(2 * k) * t[k], four_k * (four_k - 1));
    b.canonicalize();
    if (k % 2 == 0) b = -b;
    even_[k] = b;
  }
}

mpq_class BernoulliTable::get(unsigned n) {
  if (n == 1) return mpq_class(-1, 2);
  if (n % 2 == 1) return mpq_class(0);
  const unsigned k = n / 2;
  {
    std::shared_lock lock(mutex_);
    if (k < even_.size()) return even_[k];
  }
  extend_to(k + 1);
  std::shared_lock lock(mutex_);
  return even_[k];
}

mpq_class bernoulli(unsigned n) { return BernoulliTable::instance().get(n); }

namespace detail {

const std::vector<Real>& even_bernoulli_reals(mpfr_prec_t prec, size_t count) {
  thread_local std::map<mpfr_prec_t, std::vector<Real>> cache;
  auto& values = cache[prec];
  if (values.size() < count) {
    size_t want = std::max(count, values.size() * 2);
    auto& table = BernoulliTable::instance();
    for (size_t k = values.size(); k < want; ++k) {
      mpq_class b = table.get(static_cast<unsigned>(2 * k));
      Real r(prec);
      mpfr_set_q(r.get(), b.get_mpq_t(), MPFR_RNDN);
      values.push_back(std::move(r));
    }
  }
  return values;
}

}  // namespace detail

}  // namespace dhzero::specfun
