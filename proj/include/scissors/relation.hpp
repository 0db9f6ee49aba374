#pragma once

// Integer relation detection over high-precision reals.
//
// find_relation runs PSLQ on a single real vector and reports one of three
// outcomes: a relation, a certificate that no relation exists up to the
// coefficient bound, or "inconclusive" when precision runs out first.
// relation_lattice runs integral LLL on vector-valued generators and returns
// every short relation it can certify; it backs the tensor and wedge normal
// forms.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "scissors/real.hpp"

namespace scissors {

enum class SearchStatus { found, none, inconclusive };

std::string to_string(SearchStatus s);

struct Relation {
  std::vector<mpz_class> coeffs;  // primitive, first nonzero entry positive
  Real residual;                  // |sum coeffs_i x_i|
  mpz_class bound;                // max |coeff| searched
};

struct RelationResult {
  SearchStatus status = SearchStatus::inconclusive;
  std::optional<Relation> relation;
  std::string detail;
};

/// PSLQ. `tolerance` is the absolute residual accepted as zero; it defaults
/// to 2^(-bits/2) * |xs|.
RelationResult find_relation(std::span<const Real> xs, const PrecisionContext& ctx, const mpz_class& bound,
                             std::optional<Real> tolerance = std::nullopt);

struct RationalCombination {
  std::vector<mpq_class> coeffs;
  Real residual;  // |target - sum coeffs_i basis_i|
};

struct CombinationResult {
  SearchStatus status = SearchStatus::inconclusive;
  std::optional<RationalCombination> combination;
  std::string detail;
};

/// Writes target as a rational combination of `basis` with common
/// denominator at most `maxden`. `tolerance` bounds the error already present
/// in target and basis (e.g. from printed decimals).
CombinationResult volume_combination_search(const Real& target, std::span<const Real> basis, long maxden,
                                            const PrecisionContext& ctx,
                                            std::optional<Real> tolerance = std::nullopt);

/// Relations sum_i r_i g_i = 0 among vector-valued generators g_i in R^d,
/// with |r|_inf <= bound. Returns an LLL-reduced basis of the relation
/// lattice found; throws PrecisionError unless every relation within the
/// bound is certified to lie in its span.
std::vector<std::vector<mpz_class>> relation_lattice(const std::vector<std::vector<Real>>& generators,
                                                     long bound, const PrecisionContext& ctx);

/// Q-basis extraction from relations among n entries. Entries listed in
/// `absorbed` are treated as zero (their relation coefficients are dropped
/// and they never appear in the basis). Earlier entries are preferred as
/// basis elements.
struct RationalBasis {
  std::vector<std::size_t> basis;                // entry indices
  std::vector<std::vector<mpq_class>> coords;    // coords[entry][basis slot]
};

RationalBasis rational_basis(std::size_t n, const std::vector<std::vector<mpz_class>>& relations,
                             const std::vector<std::size_t>& absorbed = {});

}  // namespace scissors
