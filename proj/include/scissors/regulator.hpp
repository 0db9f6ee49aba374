#pragma once

// Borel regulator B(k) -> R^r2.

#include <string>
#include <vector>

#include "scissors/bloch.hpp"

namespace scissors {

/// One entry per complex embedding, in NumberField::complex_embeddings()
/// order (upper-half-plane roots, decreasing real part). Choosing the
/// conjugate root instead flips the sign of an entry.
struct RegulatorVector {
  std::vector<Real> values;
};

/// Component j is sum coeff D2(sigma_j(param)). Throws DegenerateError when
/// a parameter embeds to 0 or 1.
RegulatorVector borel_regulator(const FormalSum& s, const PrecisionContext& ctx);

/// Numerical rank of the matrix whose rows are the regulator vectors.
int regulator_rank(const std::vector<FormalSum>& classes, const PrecisionContext& ctx);

/// Built-in classes over Q[x]/(x^4+x^2-x+1): "beta1" and "beta2", the
/// scissors classes of the knot complements 6_1 and 7_7.
FormalSum builtin_class(const std::string& name);
std::vector<std::string> builtin_class_names();
std::string builtin_class_text(const std::string& name);

}  // namespace scissors
