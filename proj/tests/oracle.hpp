#pragma once

// Reference values computed by routes independent of the library's
// dilogarithm kernels: direct series summation and tanh-sinh quadrature of
// the defining integrals. Slow; test use only.

#include <functional>
#include <random>

#include "scissors/extended.hpp"
#include "scissors/real.hpp"

namespace oracle {

using scissors::Complex;
using scissors::Real;

/// Integral over [0, 1]. f receives (s, 1 - s), both accurate near the ends.
Complex tanh_sinh(const std::function<Complex(const Real& s, const Real& one_minus_s)>& f, long bits);

/// sum_{k>=1} z^k / k^2 for |z| < 1, summed until terms drop below 2^-bits.
Complex li2_series(const Complex& z, long bits);

/// zeta(2) by direct summation of 10^4 terms plus the Euler-Maclaurin tail.
Real zeta2_euler_maclaurin(long bits);

/// Li2(z) = -int_0^1 log(1 - s z) / s ds, z off [1, inf).
Complex li2_quadrature(const Complex& z, long bits);

/// D2 from the quadrature Li2.
Real d2_quadrature(const Complex& z, long bits);

/// Cl2(theta) = -int_0^theta log|2 sin(t/2)| dt = D2(e^{i theta}).
Real clausen_quadrature(const Real& theta, long bits);

/// Rogers R(z) from its defining integral along the segment [0, z]:
/// -1/2 int_0^z (log t / (1 - t) + log(1 - t) / t) dt - pi^2/6.
Complex rogers_quadrature(const Complex& z, long bits);

/// Catalan's constant from MPFR.
Real catalan(long bits);

/// Uniform point in the box [lo, hi]^2 of the complex plane.
Complex random_complex(std::mt19937_64& rng, double lo, double hi, long bits);

/// Admissible five-term pair: y in the upper half plane, x = a + b y with
/// a, b > 0, a + b < 1.
std::pair<Complex, Complex> random_admissible_pair(std::mt19937_64& rng, long bits);

/// Cover point with p, q in [-6, 6]: a fifth each on (-inf, 0) and (1, inf)
/// with a random side tag, a fifth in (0, 1), the rest off the real line.
scissors::CoverPoint random_cover_point(std::mt19937_64& rng, long bits);

}  // namespace oracle
