#include "scissors/dilog.hpp"

#include "scissors/errors.hpp"

namespace scissors {
namespace {

bool is_one(const Complex& z) { return z.im.is_zero() && z.re == 1; }

// Stopping threshold for series at kernel precision.
Real series_cutoff(long kb) { return Real::pow2(-kb - 4, kb); }

Complex li2_power_series(const Complex& z, long kb) {
  // sum_{k>=1} z^k / k^2, |z| <= 1/2.
  const Real cutoff = series_cutoff(kb);
  Complex power = z;
  Complex sum = z;
  for (long k = 2;; ++k) {
    power *= z;
    Complex term = power;
    term.re /= k * k;
    term.im /= k * k;
    sum += term;
    if (abs(term) < cutoff) break;
  }
  return sum;
}

Complex li2_bernoulli(const Complex& z, const PrecisionContext& ctx) {
  // Li2(z) = sum_n B_n u^(n+1)/(n+1)!, u = -log(1 - z); only B_0, B_1 and
  // even indices contribute.
  const long kb = ctx.kernel_bits();
  const Complex u = -plog(1 - z);
  const Complex u2 = sqr(u);
  Complex sum = u;
  Complex quarter = u2;
  quarter.re /= 4;
  quarter.im /= 4;
  sum -= quarter;
  const Real cutoff = series_cutoff(kb);
  const auto& c = ctx.bernoulli_coeffs();
  Complex power = u;
  for (std::size_t m = 1; m < c.size(); ++m) {
    power *= u2;
    Complex term = power * c[m];
    sum += term;
    if (abs(term) < cutoff) return sum;
  }
  throw PrecisionError("dilog: Bernoulli series did not converge");
}

Complex li2_kernel(const Complex& z, const PrecisionContext& ctx) {
  const long kb = ctx.kernel_bits();
  if (z.is_zero()) return Complex(kb);
  const Real& pi2 = ctx.pi_squared();
  if (is_one(z)) return Complex(pi2 / 6);
  const Real r2 = norm(z);
  if (r2 > 1) {
    // Li2(z) = -Li2(1/z) - pi^2/6 - log(-z)^2 / 2
    Complex l = plog(-z);
    Complex v = -li2_kernel(inverse(z), ctx) - Complex(pi2 / 6);
    Complex half = sqr(l);
    half.re /= 2;
    half.im /= 2;
    return v - half;
  }
  if (z.re * 2 > 1) {
    // Li2(z) = pi^2/6 - log(z) log(1 - z) - Li2(1 - z)
    const Complex w = 1 - z;
    return Complex(pi2 / 6) - plog(z) * plog(w) - li2_kernel(w, ctx);
  }
  if (r2 * 4 <= 1) return li2_power_series(z, kb);
  return li2_bernoulli(z, ctx);
}

Complex widened(const Complex& z, long bits) {
  return z.precision() < bits ? z.with_precision(bits) : z;
}

void check_not_zero_one(const Complex& z, const char* fn) {
  if (z.is_zero() || is_one(z)) throw DomainError(std::string(fn) + ": argument must avoid 0 and 1");
}

bool on_negative_axis(const Complex& z) { return z.im.is_zero() && z.re.sign() < 0; }
bool above_one(const Complex& z) { return z.im.is_zero() && z.re > 1; }

}  // namespace

Complex plog(const Complex& z) {
  if (z.is_zero()) throw DomainError("plog: logarithm of zero");
  return {log(abs(z)), arg(z)};
}

Complex dilog(const Complex& z, const PrecisionContext& ctx) {
  return li2_kernel(widened(z, ctx.kernel_bits()), ctx).with_precision(ctx.bits());
}

Real bloch_wigner(const Complex& z, const PrecisionContext& ctx) {
  check_not_zero_one(z, "bloch_wigner");
  if (z.is_real()) return ctx.zero();
  const Complex w = widened(z, ctx.kernel_bits());
  const Complex li = li2_kernel(w, ctx);
  return (li.im + log(abs(w)) * arg(1 - w)).with_precision(ctx.bits());
}

Complex log_z(const Complex& z, Side side, const PrecisionContext& ctx) {
  Complex l = plog(widened(z, ctx.kernel_bits()));
  if (side == Side::lower && on_negative_axis(z)) l.im = -l.im;
  return l;
}

Complex log_one_minus_z(const Complex& z, Side side, const PrecisionContext& ctx) {
  Complex l = plog(1 - widened(z, ctx.kernel_bits()));
  // Principal log(1 - x) for x > 1 is the value seen from x - 0i.
  if (side == Side::upper && above_one(z)) l.im = -l.im;
  return l;
}

Complex dilog(const Complex& z, Side side, const PrecisionContext& ctx) {
  const Complex w = widened(z, ctx.kernel_bits());
  Complex li = li2_kernel(w, ctx);
  if (side == Side::upper && above_one(z)) li.im = -li.im;
  return li;
}

Complex rogers(const Complex& z, Side side, const PrecisionContext& ctx) {
  check_not_zero_one(z, "rogers");
  Complex prod = log_z(z, side, ctx) * log_one_minus_z(z, side, ctx);
  prod.re /= 2;
  prod.im /= 2;
  return dilog(z, side, ctx) + prod - Complex(ctx.pi_squared() / 6);
}

Complex rogers(const Complex& z, const PrecisionContext& ctx) {
  return rogers(z, Side::none, ctx).with_precision(ctx.bits());
}

Complex rogers_lifted(const Complex& z, Side side, long p, long q, const PrecisionContext& ctx) {
  Complex corr = log_one_minus_z(z, side, ctx) * p + log_z(z, side, ctx) * q;
  // (pi i / 2) * corr
  const Real half_pi = ctx.pi() / 2;
  Complex lift(-(corr.im * half_pi), corr.re * half_pi);
  return reduce_mod_pi2(rogers(z, side, ctx) + lift, ctx);
}

Complex reduce_mod_pi2(const Complex& v, const PrecisionContext& ctx) {
  const Real& pi2 = ctx.pi_squared();
  Real q = v.re / pi2;
  Real re = v.re - pi2 * Real::from_integer(q.floor(), ctx.kernel_bits());
  if (re < 0) re += pi2;
  if (re >= pi2) re -= pi2;
  return {re.with_precision(ctx.bits()), v.im.with_precision(ctx.bits())};
}

Real distance_to_multiple(const Real& x, const Real& m) {
  const Real q = x / m;
  return abs(x - m * Real::from_integer(q.round(), x.precision()));
}

Real distance_mod_pi2(const Complex& v, const PrecisionContext& ctx) {
  return hypot(distance_to_multiple(v.re, ctx.pi_squared()), v.im);
}

}  // namespace scissors
