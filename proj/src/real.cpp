#include "scissors/real.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <sstream>

#include "scissors/errors.hpp"

namespace scissors {
namespace {

constexpr mpfr_rnd_t kRnd = MPFR_RNDN;

long max_prec(const Real& a, const Real& b) { return std::max(a.precision(), b.precision()); }

// Grows `x` in place to at least `bits` without losing its value.
void widen(Real& x, long bits) {
  if (x.precision() < bits) mpfr_prec_round(x.get(), bits, kRnd);
}

}  // namespace

Real::Real(long bits) {
  mpfr_init2(v_, std::max<long>(bits, MPFR_PREC_MIN));
  mpfr_set_zero(v_, 1);
}

Real::Real(long bits, long value) {
  mpfr_init2(v_, std::max<long>(bits, MPFR_PREC_MIN));
  mpfr_set_si(v_, value, kRnd);
}

Real::Real(const Real& other) {
  mpfr_init2(v_, mpfr_get_prec(other.v_));
  mpfr_set(v_, other.v_, kRnd);
}

Real::Real(Real&& other) noexcept {
  mpfr_init2(v_, MPFR_PREC_MIN);
  mpfr_swap(v_, other.v_);
}

Real& Real::operator=(const Real& other) {
  if (this != &other) {
    mpfr_set_prec(v_, mpfr_get_prec(other.v_));
    mpfr_set(v_, other.v_, kRnd);
  }
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  mpfr_swap(v_, other.v_);
  return *this;
}

Real::~Real() { mpfr_clear(v_); }

Real Real::from_double(double value, long bits) {
  Real r(bits);
  mpfr_set_d(r.v_, value, kRnd);
  return r;
}

Real Real::from_rational(const mpq_class& value, long bits) {
  Real r(bits);
  mpfr_set_q(r.v_, value.get_mpq_t(), kRnd);
  return r;
}

Real Real::from_integer(const mpz_class& value, long bits) {
  Real r(bits);
  mpfr_set_z(r.v_, value.get_mpz_t(), kRnd);
  return r;
}

Real Real::parse_decimal(std::string_view text, long bits) {
  Real r(bits);
  std::string s(text);
  char* end = nullptr;
  if (!s.empty()) mpfr_strtofr(r.v_, s.c_str(), &end, 10, kRnd);
  if (s.empty() || end != s.c_str() + s.size()) throw ParseError(0, "not a decimal number: '" + s + "'");
  return r;
}

Real Real::pi(long bits) {
  Real r(bits);
  mpfr_const_pi(r.v_, kRnd);
  return r;
}

Real Real::log2(long bits) {
  Real r(bits);
  mpfr_const_log2(r.v_, kRnd);
  return r;
}

Real Real::zeta(unsigned long n, long bits) {
  Real r(bits);
  mpfr_zeta_ui(r.v_, n, kRnd);
  return r;
}

Real Real::pow2(long e, long bits) {
  Real r(bits, 1);
  mpfr_mul_2si(r.v_, r.v_, e, kRnd);
  return r;
}

Real Real::with_precision(long bits) const {
  Real r(bits);
  mpfr_set(r.v_, v_, kRnd);
  return r;
}

long Real::exponent() const {
  if (mpfr_zero_p(v_)) return LONG_MIN;
  return static_cast<long>(mpfr_get_exp(v_));
}

mpz_class Real::round() const {
  mpz_class z;
  mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDN);
  return z;
}

mpz_class Real::floor() const {
  mpz_class z;
  mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDD);
  return z;
}

mpq_class Real::to_rational() const {
  mpq_class q;
  mpfr_get_q(q.get_mpq_t(), v_);
  return q;
}

std::string Real::to_fixed(int digits) const {
  if (!is_finite()) return mpfr_nan_p(v_) ? "nan" : (sign() > 0 ? "inf" : "-inf");
  // floor(|x| * 10^digits) computed with enough bits to make the truncation exact.
  const long extra = static_cast<long>(std::ceil(digits * 3.3219280948873623)) + 64;
  Real scaled(precision() + extra);
  mpfr_set(scaled.v_, v_, kRnd);
  mpfr_abs(scaled.v_, scaled.v_, kRnd);
  mpz_class ten;
  mpz_ui_pow_ui(ten.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  mpfr_mul_z(scaled.v_, scaled.v_, ten.get_mpz_t(), kRnd);
  mpz_class n;
  mpfr_get_z(n.get_mpz_t(), scaled.v_, MPFR_RNDZ);
  std::string s = n.get_str();
  if (static_cast<int>(s.size()) <= digits) s.insert(0, digits + 1 - s.size(), '0');
  if (digits > 0) s.insert(s.size() - digits, ".");
  if (sign() < 0 && n != 0) s.insert(0, "-");
  return s;
}

std::string Real::to_string() const {
  mpfr_exp_t e = 0;
  char* raw = mpfr_get_str(nullptr, &e, 10, 0, v_, kRnd);
  std::string digits(raw);
  mpfr_free_str(raw);
  if (!is_finite() || is_zero()) return is_zero() ? "0" : digits;
  std::string sign;
  if (digits[0] == '-') {
    sign = "-";
    digits.erase(0, 1);
  }
  std::ostringstream os;
  os << sign << digits[0] << '.' << digits.substr(1) << 'e' << (e - 1);
  return os.str();
}

Real Real::operator-() const {
  Real r(precision());
  mpfr_neg(r.v_, v_, kRnd);
  return r;
}

Real& Real::operator+=(const Real& o) {
  widen(*this, o.precision());
  mpfr_add(v_, v_, o.v_, kRnd);
  return *this;
}

Real& Real::operator-=(const Real& o) {
  widen(*this, o.precision());
  mpfr_sub(v_, v_, o.v_, kRnd);
  return *this;
}

Real& Real::operator*=(const Real& o) {
  widen(*this, o.precision());
  mpfr_mul(v_, v_, o.v_, kRnd);
  return *this;
}

Real& Real::operator/=(const Real& o) {
  widen(*this, o.precision());
  mpfr_div(v_, v_, o.v_, kRnd);
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

Real operator+(Real a, long b) {
  mpfr_add_si(a.v_, a.v_, b, kRnd);
  return a;
}

Real operator-(Real a, long b) {
  mpfr_sub_si(a.v_, a.v_, b, kRnd);
  return a;
}

Real operator*(Real a, const mpq_class& b) {
  mpfr_mul_q(a.v_, a.v_, b.get_mpq_t(), kRnd);
  return a;
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

#define SCISSORS_UNARY(name, fn)        \
  Real name(const Real& x) {            \
    Real r(x.precision());              \
    fn(r.get(), x.get(), kRnd);         \
    return r;                           \
  }

SCISSORS_UNARY(abs, mpfr_abs)
SCISSORS_UNARY(sqrt, mpfr_sqrt)
SCISSORS_UNARY(sqr, mpfr_sqr)
SCISSORS_UNARY(exp, mpfr_exp)
SCISSORS_UNARY(sin, mpfr_sin)
SCISSORS_UNARY(cos, mpfr_cos)
#undef SCISSORS_UNARY

Real log(const Real& x) {
  if (x.sign() <= 0) throw DomainError("log of a non-positive real");
  Real r(x.precision());
  mpfr_log(r.get(), x.get(), kRnd);
  return r;
}

Real acos(const Real& x) {
  if (x > 1 || x < -1) throw DomainError("acos argument outside [-1, 1]");
  Real r(x.precision());
  mpfr_acos(r.get(), x.get(), kRnd);
  return r;
}

Real atan2(const Real& y, const Real& x) {
  Real r(max_prec(x, y));
  mpfr_atan2(r.get(), y.get(), x.get(), kRnd);
  return r;
}

Real hypot(const Real& x, const Real& y) {
  Real r(max_prec(x, y));
  mpfr_hypot(r.get(), x.get(), y.get(), kRnd);
  return r;
}

Real max(const Real& a, const Real& b) { return a < b ? b : a; }
Real min(const Real& a, const Real& b) { return b < a ? b : a; }

// ---------------------------------------------------------------- Complex

Complex& Complex::operator+=(const Complex& o) {
  re += o.re;
  im += o.im;
  return *this;
}

Complex& Complex::operator-=(const Complex& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}

Complex& Complex::operator*=(const Complex& o) {
  Real r = re * o.re - im * o.im;
  im = re * o.im + im * o.re;
  re = std::move(r);
  return *this;
}

Complex& Complex::operator/=(const Complex& o) {
  if (o.is_zero()) throw DomainError("complex division by zero");
  const Real d = norm(o);
  Real r = (re * o.re + im * o.im) / d;
  im = (im * o.re - re * o.im) / d;
  re = std::move(r);
  return *this;
}

Complex& Complex::operator*=(const Real& o) {
  re *= o;
  im *= o;
  return *this;
}

Complex& Complex::operator*=(long o) {
  re *= o;
  im *= o;
  return *this;
}

Complex operator+(Complex a, long b) {
  a.re = a.re + b;
  return a;
}

Complex operator-(long b, const Complex& a) { return {Real(a.re.precision(), b) - a.re, -a.im}; }

Complex operator*(Complex a, const mpq_class& b) {
  a.re = a.re * b;
  a.im = a.im * b;
  return a;
}

std::string Complex::to_fixed(int digits) const {
  std::string r = re.to_fixed(digits);
  std::string i = im.to_fixed(digits);
  if (i.front() == '-') return r + i + "i";
  return r + "+" + i + "i";
}

Complex conj(const Complex& z) { return {z.re, -z.im}; }

Real norm(const Complex& z) { return sqr(z.re) + sqr(z.im); }

Real abs(const Complex& z) { return hypot(z.re, z.im); }

Real arg(const Complex& z) {
  if (z.im.is_zero()) {
    if (z.re.sign() < 0) return Real::pi(z.precision());
    return Real(z.precision());
  }
  return atan2(z.im, z.re);
}

Complex exp(const Complex& z) {
  const Real m = exp(z.re);
  return {m * cos(z.im), m * sin(z.im)};
}

Complex sqr(const Complex& z) { return z * z; }

Complex inverse(const Complex& z) { return Complex(z.precision(), 1) / z; }

// ------------------------------------------------------- PrecisionContext

struct PrecisionContext::Constants {
  Real eps;
  Real pi;
  Real pi_squared;
  std::vector<Real> bernoulli;
};

PrecisionContext::PrecisionContext(long bits) : bits_(bits) {
  if (bits < 64) throw ValidationError("precision must be at least 64 bits");
  const long kb = kernel_bits();
  auto k = std::make_shared<Constants>();
  k->eps = Real::pow2(kGuardBits - bits, bits);
  k->pi = Real::pi(kb);
  k->pi_squared = sqr(k->pi);
  // |u| stays below 1.5 in the Bernoulli region, so (1.5/2pi)^(2m) < 2^-(kb+8)
  // bounds the number of terms.
  const long terms = (kb + 8) / 4 + 4;
  const Real two_pi = k->pi * 2;
  Real two_pi_pow(kb, 1);
  k->bernoulli.emplace_back(kb, 1);
  for (long m = 1; m <= terms; ++m) {
    two_pi_pow *= two_pi;
    two_pi_pow *= two_pi;
    // B_{2m}/(2m+1)! = (-1)^(m+1) 2 zeta(2m) / ((2pi)^(2m) (2m+1))
    Real c = Real::zeta(static_cast<unsigned long>(2 * m), kb) * 2 / two_pi_pow / (2 * m + 1);
    if (m % 2 == 0) c = -c;
    k->bernoulli.push_back(std::move(c));
  }
  constants_ = std::move(k);
}

const Real& PrecisionContext::eps() const { return constants_->eps; }
const Real& PrecisionContext::pi() const { return constants_->pi; }
const Real& PrecisionContext::pi_squared() const { return constants_->pi_squared; }
const std::vector<Real>& PrecisionContext::bernoulli_coeffs() const { return constants_->bernoulli; }

}  // namespace scissors
