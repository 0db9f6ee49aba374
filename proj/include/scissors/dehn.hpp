#pragma once

// Classical Dehn invariant in R (x) R/piQ.
//
// A TensorElem is a list of terms l (x) t with t an angle in radians. The
// quotient by piQ is only applied by tensor_reduce, which rewrites the
// element on a Q-basis of the angles detected by the relation finder. Zero
// is certified relative to (precision, maxden) only.

#include <string>
#include <string_view>
#include <vector>

#include "scissors/real.hpp"

namespace scissors {

inline constexpr long kDefaultMaxden = 64;

struct PolytopeEdge {
  Real length;
  Real angle;
};

using PolytopeEdges = std::vector<PolytopeEdge>;

struct TensorTerm {
  Real length;
  Real angle;
};

struct ReductionInfo {
  long bits = 0;
  long maxden = 0;
  std::size_t input_terms = 0;
  std::size_t relations = 0;  // Q-relations found among {1, t_i/pi}
  std::string certificate;
};

struct TensorElem {
  std::vector<TensorTerm> terms;
  bool reduced = false;
  ReductionInfo info;

  bool empty() const { return terms.empty(); }
  /// Only meaningful on reduced elements.
  bool is_zero() const { return reduced && terms.empty(); }
  TensorElem& operator+=(const TensorElem& o);
};

TensorElem operator+(TensorElem a, const TensorElem& b);
TensorElem operator*(TensorElem a, const mpq_class& r);

/// One unreduced term per edge. Throws ValidationError on a nonpositive
/// length or an angle outside (0, 2pi).
TensorElem dehn_invariant(const PolytopeEdges& edges, const PrecisionContext& ctx);

/// 2 (log|1-z| (x) arg z - log|z| (x) arg(1-z)).
TensorElem ideal_tet_dehn(const Complex& z, const PrecisionContext& ctx);

/// Normal form. Throws PrecisionError when the angle relations cannot be
/// certified at this precision and bound.
TensorElem tensor_reduce(const TensorElem& t, const PrecisionContext& ctx, long maxden = kDefaultMaxden);

/// Edge list text: one `length angle` pair per line, `#` comments. Both
/// fields accept real expressions such as `acos(1/3)` or `pi/2`.
PolytopeEdges parse_edges(std::string_view text, long bits);

}  // namespace scissors
