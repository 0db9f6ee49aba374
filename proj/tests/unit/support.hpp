#pragma once

#include <random>
#include <string>

#include "doctest.h"
#include "scissors/expression.hpp"
#include "scissors/real.hpp"

namespace test {

using namespace scissors;

inline const PrecisionContext& ctx() {
  static const PrecisionContext c(kDefaultBits);
  return c;
}

inline Complex cx(const std::string& s, long bits = kDefaultBits) { return parse_complex(s, bits); }
inline Real rx(const std::string& s, long bits = kDefaultBits) { return parse_real(s, bits); }

inline Real dist(const Complex& a, const Complex& b) { return abs(a - b); }
inline Real dist(const Real& a, const Real& b) { return abs(a - b); }

/// k * eps of the default context.
inline Real tol(long k) { return ctx().eps() * k; }

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

}  // namespace test

// Prints both sides at full precision on failure.
#define CHECK_NEAR(a, b, t)                                                                         \
  do {                                                                                              \
    const auto check_near_d_ = test::dist((a), (b));                                                \
    INFO("distance " << check_near_d_.to_string() << " tolerance " << scissors::Real(t).to_string()); \
    CHECK(check_near_d_ <= (t));                                                                    \
  } while (0)
