#pragma once

// Elements of the exterior square over Q.
//
// Multiplicative mode: entries are nonzero complex numbers in C* (x) Q, so
// roots of unity vanish. Additive mode: entries are complex numbers viewed
// as a Q-vector space.

#include <string>
#include <vector>

#include "scissors/dehn.hpp"
#include "scissors/real.hpp"

namespace scissors {

enum class WedgeMode { multiplicative, additive };

struct WedgeTerm {
  Complex a;
  Complex b;
  mpq_class coeff;
};

struct WedgeInfo {
  long bits = 0;
  long maxden = 0;
  std::size_t entries = 0;
  std::size_t rank = 0;  // dimension of the Q-span of the entries
  std::string certificate;
};

class WedgeElem {
 public:
  explicit WedgeElem(WedgeMode mode = WedgeMode::multiplicative) : mode_(mode) {}

  WedgeMode mode() const { return mode_; }
  const std::vector<WedgeTerm>& terms() const { return terms_; }
  bool reduced() const { return reduced_; }
  const WedgeInfo& info() const { return info_; }
  /// Only meaningful on reduced elements.
  bool is_zero() const { return reduced_ && terms_.empty(); }

  /// Adds coeff (a ^ b). a ^ a is dropped; the pair is stored in
  /// lexicographic order with the sign adjusted; repeated pairs merge.
  void add(const Complex& a, const Complex& b, const mpq_class& coeff);

  WedgeElem& operator+=(const WedgeElem& o);
  WedgeElem& operator*=(const mpq_class& r);
  WedgeElem operator-() const;

 private:
  friend WedgeElem wedge_reduce(const WedgeElem&, const PrecisionContext&, long);
  WedgeMode mode_;
  std::vector<WedgeTerm> terms_;
  bool reduced_ = false;
  WedgeInfo info_;
};

WedgeElem operator+(WedgeElem a, const WedgeElem& b);
WedgeElem operator-(WedgeElem a, const WedgeElem& b);
WedgeElem operator*(WedgeElem a, const mpq_class& r);

/// Rewrites the element on a Q-basis of its entries. Multiplicative entries
/// are mapped to (log|a|, arg a / pi) with the torsion direction (0, 1)
/// quotiented out; additive entries to (Re a, Im a). Throws PrecisionError
/// when the dependencies cannot be certified.
WedgeElem wedge_reduce(const WedgeElem& w, const PrecisionContext& ctx, long maxden = kDefaultMaxden);

/// True when wedge_reduce(a - b) is zero.
bool wedge_equal(const WedgeElem& a, const WedgeElem& b, const PrecisionContext& ctx, long maxden = kDefaultMaxden);

/// C* ^ C* = (R ^ R) + (S1 ^ S1) + (R (x) S1) for a multiplicative element.
struct WedgeParts {
  WedgeElem rr{WedgeMode::additive};        // log|a| ^ log|b|, real entries
  WedgeElem aa{WedgeMode::multiplicative};  // e^(i arg a) ^ e^(i arg b)
  TensorElem mixed;                         // log|a| (x) arg b - log|b| (x) arg a
};

WedgeParts decompose_wedge(const WedgeElem& w, const PrecisionContext& ctx);

}  // namespace scissors
