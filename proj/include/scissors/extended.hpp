#pragma once

// The cover of C - {0, 1} by points (z; p, q), combinatorial flattenings,
// the lifted five-term and transfer relations and the extended Dehn
// invariant.
//
// Real parameters outside [0, 1] sit on a cut and carry a side tag. The two
// tags are identified by
//   (x - 0i; p, q) = (x + 0i; p - 2, q)   for x < 0
//   (x - 0i; p, q) = (x + 0i; p, q - 2)   for x > 1
// and CoverPoint always stores the +0i representative.
//
// Flattened sum text format:  `coeff * [z; p, q]`, real z on a cut written
// with its side, e.g. `-1/2 * [-3-0i; 1, 0]`.

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "scissors/dilog.hpp"
#include "scissors/real.hpp"
#include "scissors/wedge.hpp"

namespace scissors {

class CoverPoint {
 public:
  /// Throws DomainError for z in {0, 1} and ValidationError when the side
  /// tag is missing (real z outside [0, 1]) or forbidden (anywhere else).
  CoverPoint(Complex z, long p, long q, Side side = Side::none);

  const Complex& z() const { return z_; }
  long p() const { return p_; }
  long q() const { return q_; }
  /// upper for points on a cut, none elsewhere.
  Side side() const { return side_; }
  /// (p mod 2, q mod 2); constant on identification classes.
  std::pair<int, int> component() const;
  std::string to_string(int digits = 30) const;

  friend bool operator==(const CoverPoint& a, const CoverPoint& b) {
    return a.z_ == b.z_ && a.p_ == b.p_ && a.q_ == b.q_ && a.side_ == b.side_;
  }

 private:
  Complex z_;
  long p_;
  long q_;
  Side side_;
};

/// True when a real z needs a side tag.
bool on_cut(const Complex& z);

/// (w0, w1, w2) with w0 + w1 + w2 = 0. Components carry 64 bits beyond the
/// context precision so that ell_inverse recovers z exactly.
struct Flattening {
  Complex w0;
  Complex w1;
  Complex w2;
};

/// (log z + p pi i, -log(1 - z) + q pi i, log(1 - z) - log z - (p + q) pi i).
Flattening ell(const CoverPoint& pt, const PrecisionContext& ctx);

/// Inverse of ell; the recovered z is rounded to the context precision.
/// Throws ValidationError when f is not a flattening.
CoverPoint ell_inverse(const Flattening& f, const PrecisionContext& ctx);

/// R(z; p, q) mod pi^2 with real part in [0, pi^2).
Complex rogers_lifted(const CoverPoint& pt, const PrecisionContext& ctx);

/// (x, y, y/x, (1-1/x)/(1-1/y), (1-x)/(1-y)).
std::array<Complex, 5> five_term_parameters(const Complex& x, const Complex& y, const PrecisionContext& ctx);

/// Edges of the 5-vertex configuration, ordered (0,1) (0,2) ... (3,4).
std::array<std::pair<int, int>, 10> configuration_edges();

/// Alternating sums of log-parameters around the ten edges. Simplex i omits
/// vertex i; on it the edges joining positions {0,1} or {2,3} of the four
/// remaining vertices carry w0, {0,3} or {1,2} carry w1, {0,2} or {1,3}
/// carry w2. Throws ValidationError when the parameters are not the
/// cross-ratio family of one configuration.
std::array<Complex, 10> edge_sums(const std::array<CoverPoint, 5>& pts, const PrecisionContext& ctx);

bool is_lifted_five_term(const std::array<CoverPoint, 5>& pts, const PrecisionContext& ctx);

/// Closed-form solution of the flattening conditions for y in the upper half
/// plane and x inside the triangle (0, 1, y):
///   p2 = p1 - p0, p3 = p1 - p0 + q1 - q0, p4 = q1 - q0,
///   q3 = q2 - q1, q4 = q2 - q1 - p0.
/// Throws ValidationError outside that region.
std::array<CoverPoint, 5> lifted_five_term_family(const Complex& x, const Complex& y, long p0, long p1, long q0,
                                                  long q1, long q2, const PrecisionContext& ctx);

/// (log z + p pi i) ^ (-log(1 - z) + q pi i), additive.
WedgeElem ext_dehn(const CoverPoint& pt, const PrecisionContext& ctx);

struct FlattenedTerm {
  CoverPoint point;
  mpq_class coeff;
};

class FlattenedSum {
 public:
  const std::vector<FlattenedTerm>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  void add(const CoverPoint& pt, const mpq_class& coeff);
  FlattenedSum& operator+=(const FlattenedSum& o);
  FlattenedSum operator-() const;
  std::string to_string(int digits = 30) const;

 private:
  std::vector<FlattenedTerm> terms_;
};

FlattenedSum operator+(FlattenedSum a, const FlattenedSum& b);
FlattenedSum operator-(FlattenedSum a, const FlattenedSum& b);

FlattenedSum parse_flattened_sum(std::string_view text, long bits);

/// sum coeff R(pt) mod pi^2.
Complex rogers_lifted(const FlattenedSum& s, const PrecisionContext& ctx);
/// sum coeff ext_dehn(pt), unreduced.
WedgeElem ext_dehn(const FlattenedSum& s, const PrecisionContext& ctx);

struct TransferResidual {
  Real rogers;      // distance of the Rogers combination from pi^2 Z
  WedgeElem dehn;   // reduced ext_dehn of the combination
};

/// [x;p,q] + [x;p',q'] - [x;p,q'] - [x;p',q].
FlattenedSum transfer_combination(const Complex& x, Side side, long p, long q, long p2, long q2);
TransferResidual transfer_check(const Complex& x, Side side, long p, long q, long p2, long q2,
                                const PrecisionContext& ctx, long maxden = kDefaultMaxden);

/// [x;1,1] + [x;0,0] - [x;1,0] - [x;0,1].
FlattenedSum kappa(const Complex& x, Side side = Side::none);

/// [z;0,1] - [z;0,0].
FlattenedSum chi(const Complex& z, Side side = Side::none);
/// log z ^ pi i, additive. Defined for every z != 0.
WedgeElem xi(const Complex& z, const PrecisionContext& ctx);
/// a ^ b -> e^a ^ e^b.
WedgeElem eps_map(const WedgeElem& w, const PrecisionContext& ctx);

}  // namespace scissors
