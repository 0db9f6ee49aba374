#pragma once

// Arbitrary-precision real and complex numbers on top of MPFR.
//
// Every value carries its own precision; binary operations produce a result
// at the larger of the two operand precisions. There is no global default
// precision, so values can be shared freely between threads once built.

#include <gmpxx.h>
#include <mpfr.h>

#include <compare>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace scissors {

class Real {
 public:
  explicit Real(long bits = 64);
  Real(long bits, long value);
  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  static Real from_double(double value, long bits);
  static Real from_rational(const mpq_class& value, long bits);
  static Real from_integer(const mpz_class& value, long bits);
  /// Parses a decimal literal ("-1.25e-3"); throws ParseError on junk.
  static Real parse_decimal(std::string_view text, long bits);
  static Real pi(long bits);
  static Real log2(long bits);
  static Real zeta(unsigned long n, long bits);
  /// 2^e at the given precision.
  static Real pow2(long e, long bits);

  long precision() const { return static_cast<long>(mpfr_get_prec(v_)); }
  /// Copy rounded (or widened) to a new precision.
  Real with_precision(long bits) const;

  mpfr_srcptr get() const { return v_; }
  mpfr_ptr get() { return v_; }

  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  long exponent() const;  // floor(log2|x|) + 1, or LONG_MIN for 0
  /// Nearest integer.
  mpz_class round() const;
  mpz_class floor() const;
  /// Exact binary value as a rational.
  mpq_class to_rational() const;
  /// Decimal string with `digits` fractional digits, truncated toward zero.
  std::string to_fixed(int digits) const;
  /// Round-trip decimal (scientific) representation.
  std::string to_string() const;

  Real operator-() const;
  Real& operator+=(const Real& o);
  Real& operator-=(const Real& o);
  Real& operator*=(const Real& o);
  Real& operator/=(const Real& o);
  Real& operator*=(long o);
  Real& operator/=(long o);

  friend Real operator+(Real a, const Real& b) { return a += b; }
  friend Real operator-(Real a, const Real& b) { return a -= b; }
  friend Real operator*(Real a, const Real& b) { return a *= b; }
  friend Real operator/(Real a, const Real& b) { return a /= b; }
  friend Real operator*(Real a, long b) { return a *= b; }
  friend Real operator*(long b, Real a) { return a *= b; }
  friend Real operator/(Real a, long b) { return a /= b; }
  friend Real operator+(Real a, long b);
  friend Real operator-(Real a, long b);
  friend Real operator*(Real a, const mpq_class& b);

  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend std::partial_ordering operator<=>(const Real& a, const Real& b);
  friend bool operator==(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) == 0; }
  friend std::partial_ordering operator<=>(const Real& a, long b);

 private:
  mpfr_t v_;
};

Real abs(const Real& x);
Real sqrt(const Real& x);
Real sqr(const Real& x);
Real log(const Real& x);
Real exp(const Real& x);
Real sin(const Real& x);
Real cos(const Real& x);
Real acos(const Real& x);
Real atan2(const Real& y, const Real& x);
Real hypot(const Real& x, const Real& y);
Real max(const Real& a, const Real& b);
Real min(const Real& a, const Real& b);

/// Complex number as a pair of Reals. No separate signed-zero semantics:
/// branch selection on cuts is explicit in the functions that need it.
struct Complex {
  Real re;
  Real im;

  Complex() : re(64), im(64) {}
  explicit Complex(long bits) : re(bits), im(bits) {}
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
  explicit Complex(Real r) : re(std::move(r)), im(re.precision()) {}
  Complex(long bits, long r, long i = 0) : re(bits, r), im(bits, i) {}

  static Complex from_double(double r, double i, long bits) {
    return {Real::from_double(r, bits), Real::from_double(i, bits)};
  }
  static Complex from_rational(const mpq_class& r, const mpq_class& i, long bits) {
    return {Real::from_rational(r, bits), Real::from_rational(i, bits)};
  }

  long precision() const { return std::max(re.precision(), im.precision()); }
  Complex with_precision(long bits) const { return {re.with_precision(bits), im.with_precision(bits)}; }
  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  bool is_real() const { return im.is_zero(); }

  Complex operator-() const { return {-re, -im}; }
  Complex& operator+=(const Complex& o);
  Complex& operator-=(const Complex& o);
  Complex& operator*=(const Complex& o);
  Complex& operator/=(const Complex& o);
  Complex& operator*=(const Real& o);
  Complex& operator*=(long o);

  friend Complex operator+(Complex a, const Complex& b) { return a += b; }
  friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
  friend Complex operator*(Complex a, const Complex& b) { return a *= b; }
  friend Complex operator/(Complex a, const Complex& b) { return a /= b; }
  friend Complex operator*(Complex a, const Real& b) { return a *= b; }
  friend Complex operator*(const Real& b, Complex a) { return a *= b; }
  friend Complex operator*(Complex a, long b) { return a *= b; }
  friend Complex operator*(long b, Complex a) { return a *= b; }
  friend Complex operator+(Complex a, long b);
  friend Complex operator-(long b, const Complex& a);
  friend Complex operator*(Complex a, const mpq_class& b);

  friend bool operator==(const Complex& a, const Complex& b) { return a.re == b.re && a.im == b.im; }

  /// "a+bi" with `digits` truncated fractional digits per part.
  std::string to_fixed(int digits) const;
};

Complex conj(const Complex& z);
Real norm(const Complex& z);  // |z|^2
Real abs(const Complex& z);
/// Principal argument in (-pi, pi].
Real arg(const Complex& z);
Complex exp(const Complex& z);
Complex sqr(const Complex& z);
Complex inverse(const Complex& z);

inline constexpr long kDefaultBits = 212;
inline constexpr long kGuardBits = 16;
/// Extra bits carried internally by the special-function kernels.
inline constexpr long kKernelGuardBits = 32;

/// Working precision plus precomputed constants. Immutable after construction;
/// copies share the constant table.
class PrecisionContext {
 public:
  explicit PrecisionContext(long bits = kDefaultBits);

  long bits() const { return bits_; }
  long kernel_bits() const { return bits_ + kKernelGuardBits; }
  /// Acceptance tolerance 2^(guard - bits).
  const Real& eps() const;
  const Real& pi() const;          // at kernel precision
  const Real& pi_squared() const;  // at kernel precision
  /// Coefficients B_n/(n+1)! of Li2(z) = sum c_n u^(n+1), u = -log(1-z);
  /// entry k holds c_{2k} for k >= 1, entry 0 holds c_0 = 1.
  const std::vector<Real>& bernoulli_coeffs() const;

  Real zero() const { return Real(bits_); }
  Complex czero() const { return Complex(bits_); }
  Real real(long v) const { return Real(bits_, v); }
  Real real(const mpq_class& q) const { return Real::from_rational(q, bits_); }

 private:
  struct Constants;
  long bits_;
  std::shared_ptr<const Constants> constants_;
};

}  // namespace scissors
