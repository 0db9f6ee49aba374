#include "scissors/dehn.hpp"

#include <algorithm>
#include <sstream>

#include "scissors/errors.hpp"
#include "scissors/expression.hpp"
#include "scissors/relation.hpp"
#include "text.hpp"

namespace scissors {

TensorElem& TensorElem::operator+=(const TensorElem& o) {
  terms.insert(terms.end(), o.terms.begin(), o.terms.end());
  reduced = false;
  info = {};
  return *this;
}

TensorElem operator+(TensorElem a, const TensorElem& b) { return a += b; }

TensorElem operator*(TensorElem a, const mpq_class& r) {
  for (auto& t : a.terms) t.length = t.length * r;
  a.reduced = false;
  a.info = {};
  return a;
}

TensorElem dehn_invariant(const PolytopeEdges& edges, const PrecisionContext& ctx) {
  TensorElem out;
  const Real two_pi = ctx.pi() * 2;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto& e = edges[i];
    if (!(e.length > 0)) throw ValidationError("edge " + std::to_string(i) + ": length must be positive");
    if (!(e.angle > 0) || !(e.angle < two_pi))
      throw ValidationError("edge " + std::to_string(i) + ": dihedral angle must lie in (0, 2pi)");
    out.terms.push_back({e.length.with_precision(ctx.bits()), e.angle.with_precision(ctx.bits())});
  }
  return out;
}

TensorElem ideal_tet_dehn(const Complex& z, const PrecisionContext& ctx) {
  if (z.is_zero() || (z.re == 1 && z.im.is_zero())) throw DomainError("ideal_tet_dehn: z must avoid 0 and 1");
  const long kb = ctx.kernel_bits();
  const Complex zk = z.with_precision(kb);
  const Complex w = 1 - zk;
  TensorElem out;
  out.terms.push_back({(log(abs(w)) * 2).with_precision(ctx.bits()), arg(zk).with_precision(ctx.bits())});
  out.terms.push_back({(-log(abs(zk)) * 2).with_precision(ctx.bits()), arg(w).with_precision(ctx.bits())});
  return out;
}

TensorElem tensor_reduce(const TensorElem& t, const PrecisionContext& ctx, long maxden) {
  if (maxden < 1) throw ValidationError("tensor_reduce: maxden must be positive");
  TensorElem out;
  out.reduced = true;
  out.info.bits = ctx.bits();
  out.info.maxden = maxden;
  out.info.input_terms = t.terms.size();

  // Identical angles merge before any relation search.
  std::vector<Real> angles;
  std::vector<std::vector<Real>> lengths;
  for (const auto& term : t.terms) {
    auto it = std::find(angles.begin(), angles.end(), term.angle);
    if (it == angles.end()) {
      angles.push_back(term.angle);
      lengths.push_back({term.length});
    } else {
      lengths[static_cast<std::size_t>(it - angles.begin())].push_back(term.length);
    }
  }
  if (angles.empty()) {
    out.info.certificate = "empty";
    return out;
  }

  const long kb = ctx.kernel_bits();
  const Real pi = ctx.pi();
  std::vector<std::vector<Real>> gens;
  gens.push_back({Real(kb, 1)});
  for (const auto& a : angles) gens.push_back({a.with_precision(kb) / pi});
  const auto rels = relation_lattice(gens, maxden, ctx);
  out.info.relations = rels.size();
  const RationalBasis qb = rational_basis(gens.size(), rels, {0});

  for (std::size_t b = 0; b < qb.basis.size(); ++b) {
    Real coeff(kb), scale(kb, 1);
    for (std::size_t i = 0; i < angles.size(); ++i) {
      const mpq_class& c = qb.coords[i + 1][b];
      if (c == 0) continue;
      for (const auto& l : lengths[i]) {
        const Real v = l.with_precision(kb) * c;
        coeff += v;
        scale += abs(v);
      }
    }
    if (abs(coeff) <= ctx.eps() * scale) continue;
    out.terms.push_back({coeff.with_precision(ctx.bits()), angles[qb.basis[b] - 1]});
  }
  std::ostringstream cert;
  if (qb.basis.empty()) {
    cert << "all angles in pi*Q (maxden " << maxden << ")";
  } else {
    cert << qb.basis.size() << " angle(s) Q-independent mod pi: no relation found at bound " << maxden << ", "
         << ctx.bits() << " bits";
  }
  out.info.certificate = cert.str();
  return out;
}

PolytopeEdges parse_edges(std::string_view input, long bits) {
  PolytopeEdges out;
  for (const auto& line : text::lines(input)) {
    const std::size_t sp = line.content.find_first_of(" \t");
    if (sp == std::string::npos) throw ParseError(line.number, "expected `length angle`");
    const std::string len = line.content.substr(0, sp), ang = text::trim(line.content.substr(sp));
    try {
      out.push_back({parse_real(len, bits), parse_real(ang, bits)});
    } catch (const ParseError& e) {
      throw ParseError(line.number, e.what());
    }
  }
  return out;
}

}  // namespace scissors
