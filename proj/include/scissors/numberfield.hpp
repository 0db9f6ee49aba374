#pragma once

// Exact arithmetic in k = Q[x]/(f) and high-precision complex embeddings.
//
// Text formats:
//   field polynomial   x^4+x^2-x+1      (monic, integer coefficients, variable x)
//   field element      [-1/2, 0, 1/2, 1/2]   power basis 1, x, ..., x^(n-1)

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "scissors/real.hpp"

namespace scissors {

enum class EmbeddingKind { real, complex };

/// A complex embedding k -> C given by a root of f. Conjugate pairs are
/// represented by their upper-half-plane root.
class Embedding {
 public:
  EmbeddingKind kind() const { return kind_; }
  int index() const { return index_; }
  /// Root as isolated at field construction.
  const Complex& root() const { return root_; }
  /// Certified radius around root() containing exactly one root of f.
  const Real& radius() const { return radius_; }
  /// The root refined by Newton's method to `bits` of precision.
  Complex root_at(long bits) const;

 private:
  friend class NumberField;
  EmbeddingKind kind_ = EmbeddingKind::real;
  int index_ = 0;
  Complex root_;
  Real radius_;
  std::shared_ptr<const std::vector<mpz_class>> poly_;
};

class FieldElem;

class NumberField {
 public:
  /// `coeffs` low degree first, monic. Verifies squarefreeness and, for
  /// degree <= 4, irreducibility; above degree 4 the caller must assert it.
  static NumberField make(std::vector<mpz_class> coeffs, bool assert_irreducible = false,
                          long isolation_bits = kDefaultBits);
  static NumberField parse(std::string_view text, bool assert_irreducible = false,
                           long isolation_bits = kDefaultBits);

  int degree() const;
  int r1() const;
  int r2() const;
  const std::vector<mpz_class>& min_poly() const;
  /// Real embeddings (ascending) then complex ones (upper-half-plane roots by
  /// decreasing real part, ties by increasing imaginary part).
  const std::vector<Embedding>& embeddings() const;
  std::vector<Embedding> complex_embeddings() const;
  std::string to_string() const;

  FieldElem element(std::vector<mpq_class> coeffs) const;
  FieldElem from_rational(const mpq_class& q) const;
  /// The class of x.
  FieldElem generator() const;
  FieldElem parse_element(std::string_view text) const;

  bool operator==(const NumberField& o) const { return data_ == o.data_ || min_poly() == o.min_poly(); }

 private:
  struct Data;
  std::shared_ptr<const Data> data_;
  friend class FieldElem;
};

class FieldElem {
 public:
  const std::vector<mpq_class>& coeffs() const { return coeffs_; }
  const NumberField& field() const { return field_; }
  bool is_zero() const;
  bool is_one() const;

  FieldElem operator-() const;
  friend FieldElem operator+(const FieldElem& a, const FieldElem& b);
  friend FieldElem operator-(const FieldElem& a, const FieldElem& b);
  friend FieldElem operator*(const FieldElem& a, const FieldElem& b);
  /// Throws DomainError on division by zero.
  friend FieldElem operator/(const FieldElem& a, const FieldElem& b);
  FieldElem inverse() const;
  friend bool operator==(const FieldElem& a, const FieldElem& b) { return a.coeffs_ == b.coeffs_; }

  std::string to_string() const;

 private:
  friend class NumberField;
  FieldElem(NumberField f, std::vector<mpq_class> c) : field_(std::move(f)), coeffs_(std::move(c)) {}
  NumberField field_;
  std::vector<mpq_class> coeffs_;
};

/// sum_j coeffs_j * root^j at context precision.
Complex embed(const FieldElem& e, const Embedding& emb, const PrecisionContext& ctx);

std::string format_polynomial(const std::vector<mpz_class>& coeffs);
std::vector<mpz_class> parse_polynomial(std::string_view text);

}  // namespace scissors
