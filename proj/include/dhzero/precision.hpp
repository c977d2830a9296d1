#pragma once

#include <mpfr.h>

#include <compare>
#include <string>
#include <string_view>

#include "dhzero/error.hpp"

namespace dhzero {

/// Working precision shared by a computation. Requested digits are what gets
/// published; guard digits are carried internally and never printed.
class PrecisionContext {
 public:
  static constexpr int kMinDigits = 30;
  static constexpr int kDefaultGuard = 10;

  PrecisionContext(int decimal_digits, int guard_digits = kDefaultGuard);

  int digits() const noexcept { return digits_; }
  int guard_digits() const noexcept { return guard_; }
  int total_digits() const noexcept { return digits_ + guard_; }

  /// ceil((digits + guard) * log2(10))
  mpfr_prec_t bits() const noexcept { return bits_; }

  bool operator==(const PrecisionContext&) const = default;

 private:
  int digits_;
  int guard_;
  mpfr_prec_t bits_;
};

PrecisionContext make_context(int decimal_digits);

mpfr_prec_t digits_to_bits(double decimal_digits);

/// Owning wrapper around an mpfr_t. All arithmetic rounds to nearest. Binary
/// operators produce a result at the larger of the operand precisions; mixed
/// operations with integers or doubles keep the precision of the Real operand.
class Real {
 public:
  explicit Real(mpfr_prec_t prec = 64);
  Real(long value, mpfr_prec_t prec);
  Real(int value, mpfr_prec_t prec) : Real(static_cast<long>(value), prec) {}
  static Real from_double(double value, mpfr_prec_t prec);

  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
  /// Copy rounded (or widened) to a new precision.
  Real at(mpfr_prec_t prec) const;

  mpfr_srcptr get() const { return v_; }
  mpfr_ptr get() { return v_; }

  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  bool is_integer() const { return mpfr_integer_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }
  /// Exponent e with |x| in [2^(e-1), 2^e); 0 for x == 0.
  long exponent2() const;

  Real operator-() const;
  Real& operator+=(const Real& o);
  Real& operator-=(const Real& o);
  Real& operator*=(const Real& o);
  Real& operator/=(const Real& o);
  Real& operator+=(long o);
  Real& operator-=(long o);
  Real& operator*=(long o);
  Real& operator/=(long o);

  friend Real operator+(const Real& a, const Real& b);
  friend Real operator-(const Real& a, const Real& b);
  friend Real operator*(const Real& a, const Real& b);
  friend Real operator/(const Real& a, const Real& b);
  friend Real operator+(const Real& a, long b);
  friend Real operator-(const Real& a, long b);
  friend Real operator-(long a, const Real& b);
  friend Real operator*(const Real& a, long b);
  friend Real operator*(long a, const Real& b) { return b * a; }
  friend Real operator/(const Real& a, long b);
  friend Real operator/(long a, const Real& b);

  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend std::partial_ordering operator<=>(const Real& a, const Real& b);
  friend bool operator==(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) == 0; }
  friend std::partial_ordering operator<=>(const Real& a, long b);

 private:
  mpfr_t v_;
};

Real abs(const Real& x);
Real sqrt(const Real& x);
Real exp(const Real& x);
Real log(const Real& x);
Real log10(const Real& x);
Real sin(const Real& x);
Real cos(const Real& x);
void sin_cos(Real& s, Real& c, const Real& x);
Real atan(const Real& x);
Real atan2(const Real& y, const Real& x);
Real pow(const Real& x, const Real& y);
Real sqr(const Real& x);
Real hypot(const Real& x, const Real& y);
Real floor(const Real& x);
Real max(const Real& a, const Real& b);
Real min(const Real& a, const Real& b);

Real const_pi(mpfr_prec_t prec);
Real const_euler(mpfr_prec_t prec);
Real const_log2(mpfr_prec_t prec);
/// 10^(-k), correctly rounded.
Real pow10_neg(long k, mpfr_prec_t prec);
/// p / q for small integers, correctly rounded.
Real rational(long p, long q, mpfr_prec_t prec);

/// Complex value built from two Reals of equal precision.
class Complex {
 public:
  explicit Complex(mpfr_prec_t prec = 64) : re_(prec), im_(prec) {}
  Complex(Real re, Real im);
  Complex(const Real& re);  // NOLINT(google-explicit-constructor)
  Complex(long re, long im, mpfr_prec_t prec) : re_(re, prec), im_(im, prec) {}

  const Real& re() const { return re_; }
  const Real& im() const { return im_; }
  Real& re() { return re_; }
  Real& im() { return im_; }
  mpfr_prec_t precision() const { return re_.precision(); }
  Complex at(mpfr_prec_t prec) const { return Complex(re_.at(prec), im_.at(prec)); }

  bool is_real() const { return im_.is_zero(); }

  Complex operator-() const { return Complex(-re_, -im_); }
  Complex& operator+=(const Complex& o);
  Complex& operator-=(const Complex& o);
  Complex& operator*=(const Complex& o);
  Complex& operator/=(const Complex& o);

  friend Complex operator+(Complex a, const Complex& b) { return a += b; }
  friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
  friend Complex operator*(Complex a, const Complex& b) { return a *= b; }
  friend Complex operator/(Complex a, const Complex& b) { return a /= b; }
  friend Complex operator*(const Complex& a, const Real& b) { return Complex(a.re_ * b, a.im_ * b); }
  friend Complex operator*(const Real& b, const Complex& a) { return a * b; }
  friend Complex operator/(const Complex& a, const Real& b) { return Complex(a.re_ / b, a.im_ / b); }
  friend Complex operator*(const Complex& a, long b) { return Complex(a.re_ * b, a.im_ * b); }
  friend Complex operator/(const Complex& a, long b) { return Complex(a.re_ / b, a.im_ / b); }
  friend Complex operator+(const Complex& a, long b) { return Complex(a.re_ + b, a.im_); }
  friend Complex operator-(const Complex& a, long b) { return Complex(a.re_ - b, a.im_); }
  friend Complex operator-(long b, const Complex& a) { return Complex(b - a.re_, -a.im_); }

  friend bool operator==(const Complex& a, const Complex& b) { return a.re_ == b.re_ && a.im_ == b.im_; }

 private:
  Real re_;
  Real im_;
};

Complex conj(const Complex& z);
Real abs(const Complex& z);
/// |z|^2
Real norm(const Complex& z);
Real arg(const Complex& z);
Complex exp(const Complex& z);
/// Principal branch, Im in (-pi, pi].
Complex log(const Complex& z);
Complex sqr(const Complex& z);
Complex reciprocal(const Complex& z);
/// i * z
Complex mul_i(const Complex& z);
/// b^(-s) for real b > 0, computed as exp(-s * log b) with log b supplied.
Complex pow_neg(const Real& log_base, const Complex& s);

// Decimal I/O -------------------------------------------------------------

/// Parses a signed decimal literal with optional exponent ("-1.5e-3").
Real parse_decimal(std::string_view text, const PrecisionContext& ctx);
Real parse_decimal(std::string_view text, mpfr_prec_t prec);

/// Parses "a", "a+bi", "a-bi", "bi" or "i" style complex literals.
Complex parse_complex(std::string_view text, const PrecisionContext& ctx);

/// Canonical decimal rendering with at most `significant` digits, trailing
/// zeros removed. Positional for decimal exponents in [-6, 20], scientific
/// ("1.449e-219") otherwise.
std::string to_decimal(const Real& x, int significant);
/// Rendering at the context's published precision.
std::string to_decimal(const Real& x, const PrecisionContext& ctx);
/// Shortest rendering that parses back to the identical binary value.
std::string to_exact_decimal(const Real& x);
std::string to_decimal(const Complex& z, int significant);

}  // namespace dhzero
