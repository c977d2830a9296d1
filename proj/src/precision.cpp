#include "dhzero/precision.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <regex>
#include <utility>

namespace dhzero {

namespace {

constexpr mpfr_rnd_t kRnd = MPFR_RNDN;

mpfr_prec_t wider(const Real& a, const Real& b) { return std::max(a.precision(), b.precision()); }

}  // namespace

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::PrecisionTooLow: return "PrecisionTooLow";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::PoleError: return "PoleError";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::TolTooTight: return "TolTooTight";
    case ErrorCode::PrecisionError: return "PrecisionError";
    case ErrorCode::ExcludedPoint: return "ExcludedPoint";
    case ErrorCode::PoleOfX: return "PoleOfX";
    case ErrorCode::DivideByZero: return "DivideByZero";
    case ErrorCode::DerivativeUnderflow: return "DerivativeUnderflow";
    case ErrorCode::NoRootInBracket: return "NoRootInBracket";
  }
  return "Unknown";
}

mpfr_prec_t digits_to_bits(double decimal_digits) {
  return static_cast<mpfr_prec_t>(std::ceil(decimal_digits * 3.3219280948873623478703194));
}

PrecisionContext::PrecisionContext(int decimal_digits, int guard_digits)
    : digits_(decimal_digits), guard_(guard_digits), bits_(digits_to_bits(decimal_digits + guard_digits)) {
  if (decimal_digits < kMinDigits) {
    throw Error(ErrorCode::PrecisionTooLow,
                "decimal_digits must be >= " + std::to_string(kMinDigits) + ", got " +
                    std::to_string(decimal_digits));
  }
  if (guard_digits < 0) throw Error(ErrorCode::DomainError, "guard_digits must be non-negative");
}

PrecisionContext make_context(int decimal_digits) { return PrecisionContext(decimal_digits); }

// Real ---------------------------------------------------------------------

Real::Real(mpfr_prec_t prec) {
  mpfr_init2(v_, prec);
  mpfr_set_zero(v_, 1);
}

Real::Real(long value, mpfr_prec_t prec) {
  mpfr_init2(v_, prec);
  mpfr_set_si(v_, value, kRnd);
}

Real Real::from_double(double value, mpfr_prec_t prec) {
  Real r(prec);
  mpfr_set_d(r.v_, value, kRnd);
  return r;
}

Real::Real(const Real& other) {
  mpfr_init2(v_, other.precision());
  mpfr_set(v_, other.v_, kRnd);
}

Real::Real(Real&& other) noexcept {
  mpfr_init2(v_, MPFR_PREC_MIN);
  mpfr_swap(v_, other.v_);
}

Real& Real::operator=(const Real& other) {
  if (this != &other) {
    mpfr_set_prec(v_, other.precision());
    mpfr_set(v_, other.v_, kRnd);
  }
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  mpfr_swap(v_, other.v_);
  return *this;
}

Real::~Real() { mpfr_clear(v_); }

Real Real::at(mpfr_prec_t prec) const {
  Real r(prec);
  mpfr_set(r.v_, v_, kRnd);
  return r;
}

long Real::exponent2() const {
  if (!mpfr_regular_p(v_)) return 0;
  return mpfr_get_exp(v_);
}

Real Real::operator-() const {
  Real r(precision());
  mpfr_neg(r.v_, v_, kRnd);
  return r;
}

Real& Real::operator+=(const Real& o) {
  if (o.precision() > precision()) mpfr_prec_round(v_, o.precision(), kRnd);
  mpfr_add(v_, v_, o.v_, kRnd);
  return *this;
}
Real& Real::operator-=(const Real& o) {
  if (o.precision() > precision()) mpfr_prec_round(v_, o.precision(), kRnd);
  mpfr_sub(v_, v_, o.v_, kRnd);
  return *this;
}
Real& Real::operator*=(const Real& o) {
  if (o.precision() > precision()) mpfr_prec_round(v_, o.precision(), kRnd);
  mpfr_mul(v_, v_, o.v_, kRnd);
  return *this;
}
Real& Real::operator/=(const Real& o) {
  if (o.precision() > precision()) mpfr_prec_round(v_, o.precision(), kRnd);
  mpfr_div(v_, v_, o.v_, kRnd);
  return *this;
}

Real& Real::operator+=(long o) {
  mpfr_add_si(v_, v_, o, kRnd);
  return *this;
}
Real& Real::operator-=(long o) {
  mpfr_sub_si(v_, v_, o, kRnd);
  return *this;
}
Real& Real::operator*=(long o) {
  mpfr_mul_si(v_, v_, o, kRnd);
  return *this;
}
Real& Real::operator/=(long o) {
  mpfr_div_si(v_, v_, o, kRnd);
  return *this;
}

Real operator+(const Real& a, const Real& b) {
  Real r(wider(a, b));
  mpfr_add(r.v_, a.v_, b.v_, kRnd);
  return r;
}
Real operator-(const Real& a, const Real& b) {
  Real r(wider(a, b));
  mpfr_sub(r.v_, a.v_, b.v_, kRnd);
  return r;
}
Real operator*(const Real& a, const Real& b) {
  Real r(wider(a, b));
  mpfr_mul(r.v_, a.v_, b.v_, kRnd);
  return r;
}
Real operator/(const Real& a, const Real& b) {
  Real r(wider(a, b));
  mpfr_div(r.v_, a.v_, b.v_, kRnd);
  return r;
}
Real operator+(const Real& a, long b) {
  Real r(a.precision());
  mpfr_add_si(r.v_, a.v_, b, kRnd);
  return r;
}
Real operator-(const Real& a, long b) {
  Real r(a.precision());
  mpfr_sub_si(r.v_, a.v_, b, kRnd);
  return r;
}
Real operator-(long a, const Real& b) {
  Real r(b.precision());
  mpfr_si_sub(r.v_, a, b.v_, kRnd);
  return r;
}
Real operator*(const Real& a, long b) {
  Real r(a.precision());
  mpfr_mul_si(r.v_, a.v_, b, kRnd);
  return r;
}
Real operator/(const Real& a, long b) {
  Real r(a.precision());
  mpfr_div_si(r.v_, a.v_, b, kRnd);
  return r;
}
Real operator/(long a, const Real& b) {
  Real r(b.precision());
  mpfr_si_div(r.v_, a, b.v_, kRnd);
  return r;
}

std::partial_ordering operator<=>(const Real& a, const Real& b) {
  if (mpfr_unordered_p(a.v_, b.v_)) return std::partial_ordering::unordered;
  const int c = mpfr_cmp(a.v_, b.v_);
  return c < 0 ? std::partial_ordering::less
               : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

std::partial_ordering operator<=>(const Real& a, long b) {
  if (mpfr_nan_p(a.v_)) return std::partial_ordering::unordered;
  const int c = mpfr_cmp_si(a.v_, b);
  return c < 0 ? std::partial_ordering::less
               : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

#define DHZERO_UNARY(name, fn)                 \
  Real name(const Real& x) {                   \
    Real r(x.precision());                     \
    fn(r.get(), x.get(), kRnd);                \
    return r;                                  \
  }

DHZERO_UNARY(abs, mpfr_abs)
DHZERO_UNARY(sqrt, mpfr_sqrt)
DHZERO_UNARY(exp, mpfr_exp)
DHZERO_UNARY(log, mpfr_log)
DHZERO_UNARY(log10, mpfr_log10)
DHZERO_UNARY(sin, mpfr_sin)
DHZERO_UNARY(cos, mpfr_cos)
DHZERO_UNARY(atan, mpfr_atan)
DHZERO_UNARY(sqr, mpfr_sqr)

#undef DHZERO_UNARY

Real floor(const Real& x) {
  Real r(x.precision());
  mpfr_floor(r.get(), x.get());
  return r;
}

void sin_cos(Real& s, Real& c, const Real& x) {
  mpfr_set_prec(s.get(), x.precision());
  mpfr_set_prec(c.get(), x.precision());
  mpfr_sin_cos(s.get(), c.get(), x.get(), kRnd);
}

Real atan2(const Real& y, const Real& x) {
  Real r(wider(y, x));
  mpfr_atan2(r.get(), y.get(), x.get(), kRnd);
  return r;
}

Real pow(const Real& x, const Real& y) {
  Real r(wider(x, y));
  mpfr_pow(r.get(), x.get(), y.get(), kRnd);
  return r;
}

Real hypot(const Real& x, const Real& y) {
  Real r(wider(x, y));
  mpfr_hypot(r.get(), x.get(), y.get(), kRnd);
  return r;
}

Real max(const Real& a, const Real& b) { return (a < b) ? b : a; }
Real min(const Real& a, const Real& b) { return (b < a) ? b : a; }

Real const_pi(mpfr_prec_t prec) {
  Real r(prec);
  mpfr_const_pi(r.get(), kRnd);
  return r;
}

Real const_euler(mpfr_prec_t prec) {
  Real r(prec);
  mpfr_const_euler(r.get(), kRnd);
  return r;
}

Real const_log2(mpfr_prec_t prec) {
  Real r(prec);
  mpfr_const_log2(r.get(), kRnd);
  return r;
}

Real pow10_neg(long k, mpfr_prec_t prec) {
  Real r(prec);
  mpfr_ui_pow_ui(r.get(), 10, static_cast<unsigned long>(std::labs(k)), kRnd);
  if (k > 0) mpfr_ui_div(r.get(), 1, r.get(), kRnd);
  return r;
}

Real rational(long p, long q, mpfr_prec_t prec) {
  Real r(p, prec);
  mpfr_div_si(r.get(), r.get(), q, kRnd);
  return r;
}

// Complex ------------------------------------------------------------------

Complex::Complex(Real re, Real im) : re_(std::move(re)), im_(std::move(im)) {
  if (re_.precision() != im_.precision()) {
    const mpfr_prec_t p = std::max(re_.precision(), im_.precision());
    re_ = re_.at(p);
    im_ = im_.at(p);
  }
}

Complex::Complex(const Real& re) : re_(re), im_(re.precision()) {}

Complex& Complex::operator+=(const Complex& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

Complex& Complex::operator-=(const Complex& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

Complex& Complex::operator*=(const Complex& o) {
  Real re = re_ * o.re_ - im_ * o.im_;
  Real im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

Complex& Complex::operator/=(const Complex& o) {
  // Smith's algorithm keeps intermediate magnitudes bounded.
  if (abs(o.im_) <= abs(o.re_)) {
    Real r = o.im_ / o.re_;
    Real d = o.re_ + o.im_ * r;
    Real re = (re_ + im_ * r) / d;
    Real im = (im_ - re_ * r) / d;
    re_ = std::move(re);
    im_ = std::move(im);
  } else {
    Real r = o.re_ / o.im_;
    Real d = o.re_ * r + o.im_;
    Real re = (re_ * r + im_) / d;
    Real im = (im_ * r - re_) / d;
    re_ = std::move(re);
    im_ = std::move(im);
  }
  return *this;
}

Complex conj(const Complex& z) { return Complex(z.re(), -z.im()); }
Real abs(const Complex& z) { return hypot(z.re(), z.im()); }
Real norm(const Complex& z) { return sqr(z.re()) + sqr(z.im()); }
Real arg(const Complex& z) { return atan2(z.im(), z.re()); }

Complex exp(const Complex& z) {
  Real m = exp(z.re());
  Real s(z.precision()), c(z.precision());
  sin_cos(s, c, z.im());
  return Complex(m * c, m * s);
}

Complex log(const Complex& z) { return Complex(log(abs(z)), arg(z)); }

Complex sqr(const Complex& z) {
  return Complex(sqr(z.re()) - sqr(z.im()), z.re() * z.im() * 2);
}

Complex reciprocal(const Complex& z) {
  Complex one(Real(1, z.precision()));
  return one / z;
}

Complex mul_i(const Complex& z) { return Complex(-z.im(), z.re()); }

Complex pow_neg(const Real& log_base, const Complex& s) {
  Real m = exp(-(s.re() * log_base));
  Real sn(s.precision()), cs(s.precision());
  sin_cos(sn, cs, s.im() * log_base);
  return Complex(m * cs, -(m * sn));
}

// Decimal I/O --------------------------------------------------------------

namespace {

const std::regex& decimal_pattern() {
  static const std::regex re(R"(^[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?$)");
  return re;
}

std::string trim(std::string_view text) {
  size_t b = 0, e = text.size();
  while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
  return std::string(text.substr(b, e - b));
}

}  // namespace

Real parse_decimal(std::string_view text, mpfr_prec_t prec) {
  const std::string s = trim(text);
  if (!std::regex_match(s, decimal_pattern())) {
    throw Error(ErrorCode::ParseError, "malformed decimal literal '" + std::string(text) + "'");
  }
  Real r(prec);
  if (mpfr_set_str(r.get(), s.c_str(), 10, kRnd) != 0) {
    throw Error(ErrorCode::ParseError, "malformed decimal literal '" + std::string(text) + "'");
  }
  return r;
}

Real parse_decimal(std::string_view text, const PrecisionContext& ctx) {
  return parse_decimal(text, ctx.bits());
}

Complex parse_complex(std::string_view text, const PrecisionContext& ctx) {
  std::string s = trim(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
  if (s.empty()) throw Error(ErrorCode::ParseError, "empty complex literal");
  const mpfr_prec_t prec = ctx.bits();
  if (s.back() != 'i' && s.back() != 'I') return Complex(parse_decimal(s, prec));

  std::string body = s.substr(0, s.size() - 1);
  // Split at the last sign that is not leading and not part of an exponent.
  size_t split = std::string::npos;
  for (size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  std::string re_part = split == std::string::npos ? "" : body.substr(0, split);
  std::string im_part = split == std::string::npos ? body : body.substr(split);
  if (im_part.empty() || im_part == "+") im_part = "1";
  if (im_part == "-") im_part = "-1";
  Real im = parse_decimal(im_part, prec);
  Real re = re_part.empty() ? Real(0, prec) : parse_decimal(re_part, prec);
  return Complex(std::move(re), std::move(im));
}

std::string to_decimal(const Real& x, int significant) {
  if (mpfr_nan_p(x.get())) return "nan";
  if (mpfr_inf_p(x.get())) return x.sign() > 0 ? "inf" : "-inf";
  if (x.is_zero()) return "0";

  mpfr_exp_t e10 = 0;
  char* raw = mpfr_get_str(nullptr, &e10, 10, static_cast<size_t>(std::max(1, significant)), x.get(), kRnd);
  std::string digits(raw);
  mpfr_free_str(raw);

  bool negative = false;
  if (!digits.empty() && digits[0] == '-') {
    negative = true;
    digits.erase(0, 1);
  }
  while (digits.size() > 1 && digits.back() == '0') digits.pop_back();

  // value = 0.d1d2... * 10^e10, so the scientific exponent is e10 - 1.
  const long sci = static_cast<long>(e10) - 1;
  std::string out;
  if (sci >= -6 && sci <= 20) {
    if (sci < 0) {
      out = "0." + std::string(static_cast<size_t>(-sci - 1), '0') + digits;
    } else if (static_cast<size_t>(sci + 1) >= digits.size()) {
      out = digits + std::string(static_cast<size_t>(sci + 1) - digits.size(), '0');
    } else {
      out = digits.substr(0, static_cast<size_t>(sci + 1)) + "." + digits.substr(static_cast<size_t>(sci + 1));
    }
  } else {
    out = digits.substr(0, 1);
    if (digits.size() > 1) out += "." + digits.substr(1);
    out += "e" + std::to_string(sci);
  }
  return negative ? "-" + out : out;
}

std::string to_decimal(const Real& x, const PrecisionContext& ctx) { return to_decimal(x, ctx.digits()); }

std::string to_exact_decimal(const Real& x) {
  // mpfr_get_str with n = 0 picks enough digits for an exact round trip.
  const size_t n = mpfr_get_str_ndigits(10, x.precision());
  return to_decimal(x, static_cast<int>(n));
}

std::string to_decimal(const Complex& z, int significant) {
  std::string re = to_decimal(z.re(), significant);
  std::string im = to_decimal(z.im(), significant);
  if (im.front() != '-') im = "+" + im;
  return re + im + "i";
}

}  // namespace dhzero
