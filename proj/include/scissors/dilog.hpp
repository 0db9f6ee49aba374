#pragma once

// The dilogarithm family: principal log, Li2, Bloch-Wigner D2, Rogers R and
// its lift to the cover of C - {0, 1}.
//
// Branch conventions: log is principal, arg in (-pi, pi]. Li2 is cut along
// (1, inf); on the cut it takes the value approached from below
// (Im Li2(x) = -pi log x), matching principal log(1 - z).

#include "scissors/real.hpp"

namespace scissors {

/// Which side of a cut a real parameter sits on: x + 0i (upper) or x - 0i.
enum class Side { none, upper, lower };

Complex plog(const Complex& z);

Complex dilog(const Complex& z, const PrecisionContext& ctx);

/// D2(z) = Im Li2(z) + log|z| arg(1 - z). Zero on the real line.
Real bloch_wigner(const Complex& z, const PrecisionContext& ctx);

/// R(z) = Li2(z) + log(z) log(1 - z) / 2 - pi^2/6 on principal branches.
Complex rogers(const Complex& z, const PrecisionContext& ctx);

/// Side-aware branches used on the cover. For z off the real cuts `side`
/// must be none and these reduce to the principal values.
Complex log_z(const Complex& z, Side side, const PrecisionContext& ctx);
Complex log_one_minus_z(const Complex& z, Side side, const PrecisionContext& ctx);
Complex dilog(const Complex& z, Side side, const PrecisionContext& ctx);
Complex rogers(const Complex& z, Side side, const PrecisionContext& ctx);

/// R(z; p, q) = R(z) + (pi i / 2)(p log(1 - z) + q log z), reduced mod pi^2.
/// Takes the raw representative; callers holding a CoverPoint use the
/// overload in extended.hpp.
Complex rogers_lifted(const Complex& z, Side side, long p, long q, const PrecisionContext& ctx);

/// Canonical representative of v in C / pi^2 Z: real part in [0, pi^2).
Complex reduce_mod_pi2(const Complex& v, const PrecisionContext& ctx);

/// |x - m * round(x / m)|: distance from x to the nearest multiple of m.
Real distance_to_multiple(const Real& x, const Real& m);

/// Distance of v from pi^2 Z in C.
Real distance_mod_pi2(const Complex& v, const PrecisionContext& ctx);

}  // namespace scissors
