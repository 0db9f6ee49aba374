#include "scissors/wedge.hpp"

#include <algorithm>
#include <sstream>

#include "scissors/errors.hpp"
#include "scissors/relation.hpp"

namespace scissors {
namespace {

bool lex_less(const Complex& a, const Complex& b) {
  if (a.re < b.re) return true;
  if (b.re < a.re) return false;
  return a.im < b.im;
}

}  // namespace

void WedgeElem::add(const Complex& a, const Complex& b, const mpq_class& coeff) {
  if (coeff == 0 || a == b) return;
  const bool swap = lex_less(b, a);
  const Complex& x = swap ? b : a;
  const Complex& y = swap ? a : b;
  const mpq_class c = swap ? mpq_class(-coeff) : coeff;
  reduced_ = false;
  info_ = {};
  for (auto it = terms_.begin(); it != terms_.end(); ++it) {
    if (it->a == x && it->b == y) {
      it->coeff += c;
      if (it->coeff == 0) terms_.erase(it);
      return;
    }
  }
  terms_.push_back({x, y, c});
}

WedgeElem& WedgeElem::operator+=(const WedgeElem& o) {
  if (o.mode_ != mode_) throw ValidationError("cannot add wedges of different modes");
  for (const auto& t : o.terms_) add(t.a, t.b, t.coeff);
  reduced_ = false;
  return *this;
}

WedgeElem& WedgeElem::operator*=(const mpq_class& r) {
  if (r == 0) terms_.clear();
  for (auto& t : terms_) t.coeff *= r;
  reduced_ = false;
  info_ = {};
  return *this;
}

WedgeElem WedgeElem::operator-() const {
  WedgeElem w = *this;
  w *= mpq_class(-1);
  return w;
}

WedgeElem operator+(WedgeElem a, const WedgeElem& b) { return a += b; }
WedgeElem operator-(WedgeElem a, const WedgeElem& b) { return a += -b; }
WedgeElem operator*(WedgeElem a, const mpq_class& r) { return a *= r; }

WedgeElem wedge_reduce(const WedgeElem& w, const PrecisionContext& ctx, long maxden) {
  if (maxden < 1) throw ValidationError("wedge_reduce: maxden must be positive");
  const bool mult = w.mode() == WedgeMode::multiplicative;
  std::vector<Complex> entries;
  auto index_of = [&](const Complex& z) {
    for (std::size_t i = 0; i < entries.size(); ++i)
      if (entries[i] == z) return i;
    entries.push_back(z);
    return entries.size() - 1;
  };
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (const auto& t : w.terms()) pairs.emplace_back(index_of(t.a), index_of(t.b));

  WedgeElem out(w.mode());
  out.reduced_ = true;
  out.info_.bits = ctx.bits();
  out.info_.maxden = maxden;
  out.info_.entries = entries.size();
  if (entries.empty()) {
    out.info_.certificate = "empty";
    return out;
  }

  const long kb = ctx.kernel_bits();
  // Generator 0 is the torsion direction in multiplicative mode.
  const std::size_t off = mult ? 1 : 0;
  std::vector<std::vector<Real>> gens;
  if (mult) gens.push_back({Real(kb), Real(kb, 1)});
  for (const auto& e : entries) {
    if (mult) {
      if (e.is_zero()) throw DomainError("wedge entry 0 is not in C*");
      const Complex ek = e.with_precision(kb);
      gens.push_back({log(abs(ek)), arg(ek) / ctx.pi()});
    } else {
      gens.push_back({e.re.with_precision(kb), e.im.with_precision(kb)});
    }
  }
  const auto rels = relation_lattice(gens, maxden, ctx);
  const RationalBasis qb = mult ? rational_basis(gens.size(), rels, {0}) : rational_basis(gens.size(), rels);
  const std::size_t r = qb.basis.size();
  out.info_.rank = r;

  std::vector<std::vector<mpq_class>> m(r, std::vector<mpq_class>(r, 0));
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const auto& ca = qb.coords[pairs[k].first + off];
    const auto& cb = qb.coords[pairs[k].second + off];
    const mpq_class& c = w.terms()[k].coeff;
    for (std::size_t i = 0; i < r; ++i) {
      if (ca[i] == 0 && cb[i] == 0) continue;
      for (std::size_t j = i + 1; j < r; ++j) m[i][j] += c * (ca[i] * cb[j] - ca[j] * cb[i]);
    }
  }
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i + 1; j < r; ++j)
      if (m[i][j] != 0) {
        m[i][j].canonicalize();
        out.terms_.push_back({entries[qb.basis[i] - off], entries[qb.basis[j] - off], m[i][j]});
      }
  std::ostringstream cert;
  cert << entries.size() << " entries spanning rank " << r << " (bound " << maxden << ", " << ctx.bits()
       << " bits)";
  out.info_.certificate = cert.str();
  return out;
}

bool wedge_equal(const WedgeElem& a, const WedgeElem& b, const PrecisionContext& ctx, long maxden) {
  return wedge_reduce(a - b, ctx, maxden).is_zero();
}

WedgeParts decompose_wedge(const WedgeElem& w, const PrecisionContext& ctx) {
  if (w.mode() != WedgeMode::multiplicative) throw ValidationError("decompose_wedge needs a multiplicative wedge");
  const long kb = ctx.kernel_bits();
  WedgeParts out;
  for (const auto& t : w.terms()) {
    if (t.a.is_zero() || t.b.is_zero()) throw DomainError("wedge entry 0 is not in C*");
    const Complex a = t.a.with_precision(kb), b = t.b.with_precision(kb);
    const Real la = log(abs(a)), lb = log(abs(b));
    const Real ta = arg(a), tb = arg(b);
    out.rr.add(Complex(la.with_precision(ctx.bits())), Complex(lb.with_precision(ctx.bits())), t.coeff);
    const Complex ua{cos(ta), sin(ta)}, ub{cos(tb), sin(tb)};
    out.aa.add(ua.with_precision(ctx.bits()), ub.with_precision(ctx.bits()), t.coeff);
    out.mixed.terms.push_back({(la * t.coeff).with_precision(ctx.bits()), tb.with_precision(ctx.bits())});
    out.mixed.terms.push_back({(-(lb * t.coeff)).with_precision(ctx.bits()), ta.with_precision(ctx.bits())});
  }
  return out;
}

}  // namespace scissors
