#pragma once

// Formal sums of ideal-simplex parameters with rational coefficients, the
// five-term relation, the complex Dehn invariant and the volume map.
//
// Text format, one term per line (`#` comments allowed):
//
//   field: x^4+x^2-x+1        # optional; terms are then field elements
//   2 * [[1/2, 0, -1/2, -1/2]]
//   -1/2 * [0.3+0.4i]
//   [exp(i*pi/3)]             # coefficient defaults to 1

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "scissors/numberfield.hpp"
#include "scissors/real.hpp"
#include "scissors/wedge.hpp"

namespace scissors {

using Parameter = std::variant<Complex, FieldElem>;

struct FormalTerm {
  Parameter param;
  mpq_class coeff;
};

class FormalSum {
 public:
  /// Sum over complex literals.
  FormalSum() = default;
  /// Sum over elements of k.
  explicit FormalSum(NumberField k) : field_(std::move(k)) {}

  const std::optional<NumberField>& field() const { return field_; }
  const std::vector<FormalTerm>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  /// Throws DomainError for a parameter equal to 0 or 1, ValidationError for
  /// a parameter of the wrong ground.
  void add(const Complex& z, const mpq_class& coeff);
  void add(const FieldElem& e, const mpq_class& coeff);
  void add(const Parameter& p, const mpq_class& coeff);

  FormalSum& operator+=(const FormalSum& o);
  FormalSum& operator*=(const mpq_class& r);
  std::string to_string(int digits = 30) const;

 private:
  std::optional<NumberField> field_;
  std::vector<FormalTerm> terms_;
};

FormalSum operator+(FormalSum a, const FormalSum& b);
FormalSum operator-(FormalSum a, const FormalSum& b);
FormalSum operator*(FormalSum a, const mpq_class& r);

FormalSum parse_formal_sum(std::string_view text, long bits);

/// Complex values of the parameters. Field sums use `emb`, defaulting to the
/// first complex embedding (or the first real one for totally real fields).
std::vector<Complex> resolve(const FormalSum& s, const PrecisionContext& ctx,
                             const std::optional<Embedding>& emb = std::nullopt);

/// A point of CP1; nullopt is infinity.
using ProjectivePoint = std::optional<Complex>;

/// (z3-z2)(z4-z1) / ((z3-z1)(z4-z2)); factors containing infinity drop out.
Complex cross_ratio(const ProjectivePoint& z1, const ProjectivePoint& z2, const ProjectivePoint& z3,
                    const ProjectivePoint& z4, const PrecisionContext& ctx);

struct SignedParameter {
  Complex value;
  int sign;
};

/// z, 1-1/z, 1/(1-z) with sign +1 and 1/z, z/(z-1), 1-z with sign -1.
std::vector<SignedParameter> six_fold(const Complex& z, const PrecisionContext& ctx);

/// [x] - [y] + [y/x] - [(1-1/x)/(1-1/y)] + [(1-x)/(1-y)]. Throws
/// DegenerateError naming the first of the five parameters that hits 0 or 1.
FormalSum five_term_instance(const Complex& x, const Complex& y, const PrecisionContext& ctx);
FormalSum five_term_instance(const FieldElem& x, const FieldElem& y);

/// sum coeff (1-z) ^ z, multiplicative.
WedgeElem complex_dehn(const FormalSum& s, const PrecisionContext& ctx,
                       const std::optional<Embedding>& emb = std::nullopt);

/// sum coeff D2(z).
Real volume(const FormalSum& s, const PrecisionContext& ctx, const std::optional<Embedding>& emb = std::nullopt);

/// sum |n_i / k| for the presentation k s = sum n_i [z_i]. Throws
/// ValidationError if some k * coeff is not an integer.
mpq_class gromov_upper_bound(const FormalSum& s, long k);

}  // namespace scissors
