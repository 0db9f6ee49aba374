#include "scissors/bloch.hpp"

#include <array>
#include <sstream>

#include "scissors/dilog.hpp"
#include "scissors/errors.hpp"
#include "scissors/expression.hpp"
#include "text.hpp"

namespace scissors {
namespace {

bool is_one(const Complex& z) { return z.re == 1 && z.im.is_zero(); }

bool same_param(const Parameter& a, const Parameter& b) {
  if (a.index() != b.index()) return false;
  if (const auto* z = std::get_if<Complex>(&a)) return *z == std::get<Complex>(b);
  return std::get<FieldElem>(a) == std::get<FieldElem>(b);
}

}  // namespace

void FormalSum::add(const Complex& z, const mpq_class& coeff) { add(Parameter{z}, coeff); }
void FormalSum::add(const FieldElem& e, const mpq_class& coeff) { add(Parameter{e}, coeff); }

void FormalSum::add(const Parameter& p, const mpq_class& coeff) {
  if (const auto* z = std::get_if<Complex>(&p)) {
    if (field_) throw ValidationError("complex parameter in a sum over a number field");
    if (z->is_zero() || is_one(*z)) throw DomainError("simplex parameter must avoid 0 and 1");
  } else {
    const auto& e = std::get<FieldElem>(p);
    if (!field_) throw ValidationError("field element in a sum over complex literals");
    if (!(e.field() == *field_)) throw ValidationError("field element from a different field");
    if (e.is_zero() || e.is_one()) throw DomainError("simplex parameter must avoid 0 and 1");
  }
  if (coeff == 0) return;
  for (auto it = terms_.begin(); it != terms_.end(); ++it) {
    if (same_param(it->param, p)) {
      it->coeff += coeff;
      if (it->coeff == 0) terms_.erase(it);
      return;
    }
  }
  terms_.push_back({p, coeff});
}

FormalSum& FormalSum::operator+=(const FormalSum& o) {
  if (o.field_.has_value() != field_.has_value() || (field_ && !(*field_ == *o.field_))) {
    if (o.terms_.empty()) return *this;
    if (terms_.empty()) {
      field_ = o.field_;
    } else {
      throw ValidationError("cannot add formal sums over different grounds");
    }
  }
  for (const auto& t : o.terms_) add(t.param, t.coeff);
  return *this;
}

FormalSum& FormalSum::operator*=(const mpq_class& r) {
  if (r == 0) terms_.clear();
  for (auto& t : terms_) t.coeff *= r;
  return *this;
}

FormalSum operator+(FormalSum a, const FormalSum& b) { return a += b; }
FormalSum operator-(FormalSum a, const FormalSum& b) { return a += b * mpq_class(-1); }
FormalSum operator*(FormalSum a, const mpq_class& r) { return a *= r; }

std::string FormalSum::to_string(int digits) const {
  std::ostringstream out;
  if (field_) out << "field: " << field_->to_string() << "\n";
  for (const auto& t : terms_) {
    out << format_rational(t.coeff) << " * [";
    if (const auto* z = std::get_if<Complex>(&t.param)) out << z->to_fixed(digits);
    else out << std::get<FieldElem>(t.param).to_string();
    out << "]\n";
  }
  return out.str();
}

FormalSum parse_formal_sum(std::string_view input, long bits) {
  FormalSum out;
  bool seen_term = false;
  for (const auto& line : text::lines(input)) {
    const std::string& s = line.content;
    try {
      if (text::starts_with_key(s, "field")) {
        if (seen_term) throw ParseError(0, "field header must precede the terms");
        const std::string poly = text::trim(s.substr(s.find(':') + 1));
        if (poly != "none") out = FormalSum(NumberField::parse(poly));
        continue;
      }
      const std::size_t open = s.find('['), close = s.rfind(']');
      if (open == std::string::npos || close == std::string::npos || close < open)
        throw ParseError(0, "expected `coeff * [param]`");
      if (!text::trim(s.substr(close + 1)).empty()) throw ParseError(0, "trailing text after `]`");
      std::string head = text::trim(s.substr(0, open));
      mpq_class coeff = 1;
      if (!head.empty()) {
        if (head.back() != '*') throw ParseError(0, "expected `*` between coefficient and parameter");
        head = text::trim(head.substr(0, head.size() - 1));
        if (head == "-") coeff = -1;
        else if (!head.empty() && head != "+") coeff = parse_rational(head);
      }
      const std::string body = text::trim(s.substr(open + 1, close - open - 1));
      if (out.field()) {
        out.add(out.field()->parse_element(body), coeff);
      } else {
        out.add(parse_complex(body, bits), coeff);
      }
      seen_term = true;
    } catch (const ParseError& e) {
      if (e.line() != 0) throw;
      throw ParseError(static_cast<std::size_t>(line.number), e.what());
    } catch (const Error& e) {
      throw ParseError(static_cast<std::size_t>(line.number), e.what());
    }
  }
  return out;
}

std::vector<Complex> resolve(const FormalSum& s, const PrecisionContext& ctx, const std::optional<Embedding>& emb) {
  std::vector<Complex> out;
  out.reserve(s.terms().size());
  if (!s.field()) {
    for (const auto& t : s.terms()) out.push_back(std::get<Complex>(t.param));
    return out;
  }
  Embedding e;
  if (emb) {
    e = *emb;
  } else {
    const auto cx = s.field()->complex_embeddings();
    e = cx.empty() ? s.field()->embeddings().front() : cx.front();
  }
  for (const auto& t : s.terms()) {
    Complex z = embed(std::get<FieldElem>(t.param), e, ctx);
    out.push_back(std::move(z));
  }
  return out;
}

Complex cross_ratio(const ProjectivePoint& z1, const ProjectivePoint& z2, const ProjectivePoint& z3,
                    const ProjectivePoint& z4, const PrecisionContext& ctx) {
  const std::array<const ProjectivePoint*, 4> pts{&z1, &z2, &z3, &z4};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j) {
      const auto& a = *pts[i];
      const auto& b = *pts[j];
      if (!a && !b) throw DegenerateError("cross_ratio: two points at infinity");
      if (a && b && abs(*a - *b) <= ctx.eps() * (abs(*a) + abs(*b)))
        throw DegenerateError("cross_ratio: points " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                              " coincide");
    }
  const long kb = ctx.kernel_bits();
  auto diff = [&](const ProjectivePoint& a, const ProjectivePoint& b) -> std::optional<Complex> {
    if (!a || !b) return std::nullopt;
    return a->with_precision(kb) - b->with_precision(kb);
  };
  Complex num(kb, 1, 0), den(kb, 1, 0);
  if (auto f = diff(z3, z2)) num *= *f;
  if (auto f = diff(z4, z1)) num *= *f;
  if (auto f = diff(z3, z1)) den *= *f;
  if (auto f = diff(z4, z2)) den *= *f;
  Complex r = (num / den).with_precision(ctx.bits());
  if (r.is_zero() || abs(r - Complex(ctx.bits(), 1, 0)) <= ctx.eps())
    throw DegenerateError("cross_ratio: result is 0 or 1");
  return r;
}

std::vector<SignedParameter> six_fold(const Complex& z, const PrecisionContext& ctx) {
  if (z.is_zero() || is_one(z)) throw DomainError("six_fold: z must avoid 0 and 1");
  const long kb = ctx.kernel_bits();
  const Complex zk = z.with_precision(kb);
  const Complex inv = inverse(zk);
  const Complex omz = 1 - zk;
  auto round = [&](const Complex& c) { return c.with_precision(ctx.bits()); };
  return {
      {round(zk), 1},
      {round(1 - inv), 1},
      {round(inverse(omz)), 1},
      {round(inv), -1},
      {round(zk / (zk - Complex(kb, 1, 0))), -1},
      {round(omz), -1},
  };
}

FormalSum five_term_instance(const Complex& x, const Complex& y, const PrecisionContext& ctx) {
  const long kb = ctx.kernel_bits();
  const Complex one(kb, 1, 0);
  auto check = [&](const Complex& v, const char* name) {
    if (abs(v) <= ctx.eps() || abs(v - one) <= ctx.eps())
      throw DegenerateError(std::string("five-term parameter ") + name + " is degenerate (0 or 1)");
  };
  const Complex xk = x.with_precision(kb), yk = y.with_precision(kb);
  check(xk, "x");
  check(yk, "y");
  const Complex t2 = yk / xk;
  check(t2, "y/x");
  const Complex t3 = (one - inverse(xk)) / (one - inverse(yk));
  check(t3, "(1-1/x)/(1-1/y)");
  const Complex t4 = (one - xk) / (one - yk);
  check(t4, "(1-x)/(1-y)");
  FormalSum s;
  const long b = ctx.bits();
  s.add(xk.with_precision(b), 1);
  s.add(yk.with_precision(b), -1);
  s.add(t2.with_precision(b), 1);
  s.add(t3.with_precision(b), -1);
  s.add(t4.with_precision(b), 1);
  return s;
}

FormalSum five_term_instance(const FieldElem& x, const FieldElem& y) {
  const NumberField& k = x.field();
  const FieldElem one = k.from_rational(1);
  auto check = [&](const FieldElem& v, const char* name) {
    if (v.is_zero() || v.is_one())
      throw DegenerateError(std::string("five-term parameter ") + name + " is degenerate (0 or 1)");
  };
  check(x, "x");
  check(y, "y");
  const FieldElem t2 = y / x;
  check(t2, "y/x");
  const FieldElem t3 = (one - x.inverse()) / (one - y.inverse());
  check(t3, "(1-1/x)/(1-1/y)");
  const FieldElem t4 = (one - x) / (one - y);
  check(t4, "(1-x)/(1-y)");
  FormalSum s(k);
  s.add(x, 1);
  s.add(y, -1);
  s.add(t2, 1);
  s.add(t3, -1);
  s.add(t4, 1);
  return s;
}

WedgeElem complex_dehn(const FormalSum& s, const PrecisionContext& ctx, const std::optional<Embedding>& emb) {
  WedgeElem w(WedgeMode::multiplicative);
  const auto zs = resolve(s, ctx, emb);
  for (std::size_t i = 0; i < zs.size(); ++i) {
    const Complex omz = (1 - zs[i].with_precision(ctx.kernel_bits())).with_precision(ctx.bits());
    w.add(omz, zs[i], s.terms()[i].coeff);
  }
  return w;
}

Real volume(const FormalSum& s, const PrecisionContext& ctx, const std::optional<Embedding>& emb) {
  Real total(ctx.kernel_bits());
  const auto zs = resolve(s, ctx, emb);
  for (std::size_t i = 0; i < zs.size(); ++i)
    total += bloch_wigner(zs[i], ctx).with_precision(ctx.kernel_bits()) * s.terms()[i].coeff;
  return total.with_precision(ctx.bits());
}

mpq_class gromov_upper_bound(const FormalSum& s, long k) {
  if (k < 1) throw ValidationError("gromov_upper_bound: k must be a positive integer");
  mpq_class total = 0;
  for (const auto& t : s.terms()) {
    mpq_class n = t.coeff * k;
    n.canonicalize();
    if (n.get_den() != 1)
      throw ValidationError("gromov_upper_bound: coefficient " + format_rational(t.coeff) + " times " +
                            std::to_string(k) + " is not an integer");
    total += abs(t.coeff);
  }
  return total;
}

}  // namespace scissors
