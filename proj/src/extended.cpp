#include "scissors/extended.hpp"

#include <algorithm>
#include <sstream>

#include "scissors/errors.hpp"
#include "scissors/expression.hpp"
#include "text.hpp"

namespace scissors {
namespace {

constexpr long kFlatteningGuard = 64;

bool is_one(const Complex& z) { return z.im.is_zero() && z.re == 1; }

// pi i * n
Complex pi_i(long n, long bits) { return {Real(bits), Real::pi(bits) * n}; }

// log z and log(1 - z) on the cover branch, at the precision of z.
Complex cover_log_z(const Complex& z, Side side) {
  Complex l = plog(z);
  if (side == Side::lower && z.im.is_zero() && z.re.sign() < 0) l.im = -l.im;
  return l;
}

Complex cover_log_one_minus_z(const Complex& z, Side side) {
  Complex l = plog(1 - z);
  if (side == Side::upper && z.im.is_zero() && z.re > 1) l.im = -l.im;
  return l;
}

}  // namespace

bool on_cut(const Complex& z) { return z.im.is_zero() && (z.re.sign() < 0 || z.re > 1); }

CoverPoint::CoverPoint(Complex z, long p, long q, Side side) : z_(std::move(z)), p_(p), q_(q), side_(side) {
  if (z_.is_zero() || is_one(z_)) throw DomainError("cover point: z must avoid 0 and 1");
  if (on_cut(z_)) {
    if (side_ == Side::none) throw ValidationError("cover point: real z outside [0, 1] needs a side tag (+0i or -0i)");
    if (side_ == Side::lower) {
      if (z_.re.sign() < 0) p_ -= 2;
      else q_ -= 2;
      side_ = Side::upper;
    }
  } else if (side_ != Side::none) {
    throw ValidationError("cover point: side tag only allowed for real z outside [0, 1]");
  }
}

std::pair<int, int> CoverPoint::component() const {
  return {static_cast<int>(((p_ % 2) + 2) % 2), static_cast<int>(((q_ % 2) + 2) % 2)};
}

std::string CoverPoint::to_string(int digits) const {
  std::ostringstream out;
  out << "[";
  if (side_ == Side::upper) out << z_.re.to_fixed(digits) << "+0i";
  else out << z_.to_fixed(digits);
  out << "; " << p_ << ", " << q_ << "]";
  return out.str();
}

Flattening ell(const CoverPoint& pt, const PrecisionContext& ctx) {
  const long bits = ctx.bits() + kFlatteningGuard;
  const Complex z = pt.z().with_precision(bits);
  Flattening f{cover_log_z(z, pt.side()) + pi_i(pt.p(), bits), -cover_log_one_minus_z(z, pt.side()) + pi_i(pt.q(), bits),
               Complex(bits)};
  f.w2 = -(f.w0 + f.w1);
  return f;
}

CoverPoint ell_inverse(const Flattening& f, const PrecisionContext& ctx) {
  const long bits = ctx.bits() + kFlatteningGuard;
  const Complex w0 = f.w0.with_precision(bits), w1 = f.w1.with_precision(bits), w2 = f.w2.with_precision(bits);
  const Real scale = abs(w0) + abs(w1) + abs(w2) + 1;
  const Real tol = ctx.eps() * scale;
  if (abs(w0 + w1 + w2) > tol) throw ValidationError("not a flattening: w0 + w1 + w2 != 0");

  // e^w0 = +-z and e^-w1 = +-(1 - z); exactly one sign choice is consistent.
  const Complex u = exp(w0), v = exp(-w1);
  const Complex one(bits, 1, 0);
  int best_s0 = 0;
  Real best(bits);
  bool first = true;
  for (int s0 : {1, -1})
    for (int s1 : {1, -1}) {
      const Real r = abs(u * static_cast<long>(s0) + v * static_cast<long>(s1) - one);
      if (first || r < best) {
        best = r;
        best_s0 = s0;
        first = false;
      }
    }
  const Real zscale = abs(u) + abs(v) + 1;
  if (best > ctx.eps() * zscale) throw ValidationError("not a flattening: exp(w0) and exp(-w1) do not match z, 1 - z");

  Complex z = u * static_cast<long>(best_s0);
  if (abs(z.im) <= ctx.eps() * abs(z)) z.im = Real(bits);
  if (z.is_zero() || abs(z - one) <= ctx.eps()) throw ValidationError("not a flattening: z degenerates to 0 or 1");
  const Side side = on_cut(z) ? Side::upper : Side::none;

  const Real pi = Real::pi(bits);
  const Complex l0 = cover_log_z(z, side);
  const Complex l1 = cover_log_one_minus_z(z, side);
  const mpz_class p = ((w0.im - l0.im) / pi).round();
  const mpz_class q = ((w1.im + l1.im) / pi).round();
  if (!p.fits_slong_p() || !q.fits_slong_p()) throw ValidationError("not a flattening: p or q out of range");
  const long pl = p.get_si(), ql = q.get_si();
  if (abs(w0 - (l0 + pi_i(pl, bits))) > tol || abs(w1 - (-l1 + pi_i(ql, bits))) > tol)
    throw ValidationError("not a flattening: imaginary parts are not log branches (parity mismatch)");
  Complex zr = z.with_precision(ctx.bits());
  if (side == Side::none && zr.im.is_zero() && on_cut(zr)) throw ValidationError("not a flattening: ambiguous cut point");
  return CoverPoint(std::move(zr), pl, ql, side);
}

Complex rogers_lifted(const CoverPoint& pt, const PrecisionContext& ctx) {
  return rogers_lifted(pt.z(), pt.side(), pt.p(), pt.q(), ctx);
}

std::array<Complex, 5> five_term_parameters(const Complex& x, const Complex& y, const PrecisionContext& ctx) {
  const long kb = ctx.kernel_bits();
  const Complex xk = x.with_precision(kb), yk = y.with_precision(kb);
  const Complex one(kb, 1, 0);
  std::array<Complex, 5> out{xk, yk, yk / xk, (one - inverse(xk)) / (one - inverse(yk)), (one - xk) / (one - yk)};
  for (auto& v : out) v = v.with_precision(ctx.bits());
  return out;
}

std::array<std::pair<int, int>, 10> configuration_edges() {
  std::array<std::pair<int, int>, 10> out;
  std::size_t k = 0;
  for (int j = 0; j < 5; ++j)
    for (int l = j + 1; l < 5; ++l) out[k++] = {j, l};
  return out;
}

std::array<Complex, 10> edge_sums(const std::array<CoverPoint, 5>& pts, const PrecisionContext& ctx) {
  for (const auto& pt : pts)
    if (pt.z().is_zero()) throw ValidationError("edge_sums: degenerate parameter");
  const auto expected = five_term_parameters(pts[0].z(), pts[1].z(), ctx);
  for (std::size_t i = 2; i < 5; ++i) {
    if (abs(expected[i] - pts[i].z()) > ctx.eps() * (abs(expected[i]) + 1))
      throw ValidationError("edge_sums: parameter " + std::to_string(i) +
                            " does not belong to the cross-ratio family of parameters 0 and 1");
  }
  std::array<Flattening, 5> flat{};
  for (std::size_t i = 0; i < 5; ++i) flat[i] = ell(pts[i], ctx);
  const long bits = ctx.bits() + kFlatteningGuard;
  std::array<Complex, 10> out;
  const auto edges = configuration_edges();
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto [j, k] = edges[e];
    Complex sum(bits);
    for (int i = 0; i < 5; ++i) {
      if (i == j || i == k) continue;
      // positions of j and k among the remaining vertices
      const int a = j - (j > i ? 1 : 0);
      const int b = k - (k > i ? 1 : 0);
      const Complex* w = nullptr;
      if ((a == 0 && b == 1) || (a == 2 && b == 3)) w = &flat[static_cast<std::size_t>(i)].w0;
      else if ((a == 0 && b == 3) || (a == 1 && b == 2)) w = &flat[static_cast<std::size_t>(i)].w1;
      else w = &flat[static_cast<std::size_t>(i)].w2;
      if (i % 2 == 0) sum += *w;
      else sum -= *w;
    }
    out[e] = sum.with_precision(ctx.bits());
  }
  return out;
}

bool is_lifted_five_term(const std::array<CoverPoint, 5>& pts, const PrecisionContext& ctx) {
  const auto sums = edge_sums(pts, ctx);
  Real scale(ctx.bits(), 1);
  for (const auto& pt : pts) scale += abs(ell(pt, ctx).w0) + abs(ell(pt, ctx).w1);
  return std::all_of(sums.begin(), sums.end(), [&](const Complex& s) { return abs(s) <= ctx.eps() * scale; });
}

std::array<CoverPoint, 5> lifted_five_term_family(const Complex& x, const Complex& y, long p0, long p1, long q0,
                                                  long q1, long q2, const PrecisionContext& ctx) {
  if (!(y.im > 0) || !(x.im > 0)) throw ValidationError("lifted five-term family: x and y must lie in the upper half plane");
  // x = a + b y
  const long kb = ctx.kernel_bits();
  const Real b = x.im.with_precision(kb) / y.im;
  const Real a = x.re.with_precision(kb) - b * y.re;
  if (!(a > 0) || !(b > 0) || !(a + b < 1))
    throw ValidationError("lifted five-term family: x must lie inside the triangle with vertices 0, 1, y");
  const auto z = five_term_parameters(x, y, ctx);
  const long p2 = p1 - p0, p3 = p1 - p0 + q1 - q0, p4 = q1 - q0;
  const long q3 = q2 - q1, q4 = q2 - q1 - p0;
  auto side_for = [](const Complex& v) { return on_cut(v) ? Side::upper : Side::none; };
  return {CoverPoint(z[0], p0, q0, side_for(z[0])), CoverPoint(z[1], p1, q1, side_for(z[1])),
          CoverPoint(z[2], p2, q2, side_for(z[2])), CoverPoint(z[3], p3, q3, side_for(z[3])),
          CoverPoint(z[4], p4, q4, side_for(z[4]))};
}

WedgeElem ext_dehn(const CoverPoint& pt, const PrecisionContext& ctx) {
  const Flattening f = ell(pt, ctx);
  WedgeElem w(WedgeMode::additive);
  w.add(f.w0.with_precision(ctx.bits()), f.w1.with_precision(ctx.bits()), 1);
  return w;
}

void FlattenedSum::add(const CoverPoint& pt, const mpq_class& coeff) {
  if (coeff == 0) return;
  for (auto it = terms_.begin(); it != terms_.end(); ++it) {
    if (it->point == pt) {
      it->coeff += coeff;
      if (it->coeff == 0) terms_.erase(it);
      return;
    }
  }
  terms_.push_back({pt, coeff});
}

FlattenedSum& FlattenedSum::operator+=(const FlattenedSum& o) {
  for (const auto& t : o.terms_) add(t.point, t.coeff);
  return *this;
}

FlattenedSum FlattenedSum::operator-() const {
  FlattenedSum s = *this;
  for (auto& t : s.terms_) t.coeff = -t.coeff;
  return s;
}

FlattenedSum operator+(FlattenedSum a, const FlattenedSum& b) { return a += b; }
FlattenedSum operator-(FlattenedSum a, const FlattenedSum& b) { return a += -b; }

std::string FlattenedSum::to_string(int digits) const {
  std::ostringstream out;
  for (const auto& t : terms_) out << format_rational(t.coeff) << " * " << t.point.to_string(digits) << "\n";
  return out.str();
}

FlattenedSum parse_flattened_sum(std::string_view input, long bits) {
  FlattenedSum out;
  for (const auto& line : text::lines(input)) {
    const std::string& s = line.content;
    try {
      const std::size_t open = s.find('['), close = s.rfind(']');
      if (open == std::string::npos || close == std::string::npos || close < open)
        throw ParseError(0, "expected `coeff * [z; p, q]`");
      if (!text::trim(s.substr(close + 1)).empty()) throw ParseError(0, "trailing text after `]`");
      std::string head = text::trim(s.substr(0, open));
      mpq_class coeff = 1;
      if (!head.empty()) {
        if (head.back() != '*') throw ParseError(0, "expected `*` between coefficient and point");
        head = text::trim(head.substr(0, head.size() - 1));
        if (head == "-") coeff = -1;
        else if (!head.empty() && head != "+") coeff = parse_rational(head);
      }
      const std::string body = s.substr(open + 1, close - open - 1);
      const std::size_t semi = body.find(';');
      if (semi == std::string::npos) throw ParseError(0, "expected `z; p, q`");
      const std::size_t comma = body.find(',', semi);
      if (comma == std::string::npos) throw ParseError(0, "expected `z; p, q`");
      std::string zt = text::trim(body.substr(0, semi));
      const mpq_class p = parse_rational(text::trim(body.substr(semi + 1, comma - semi - 1)));
      const mpq_class q = parse_rational(text::trim(body.substr(comma + 1)));
      if (p.get_den() != 1 || q.get_den() != 1 || !p.get_num().fits_slong_p() || !q.get_num().fits_slong_p())
        throw ParseError(0, "p and q must be integers");
      Side side = Side::none;
      std::string compact;
      for (char c : zt)
        if (!std::isspace(static_cast<unsigned char>(c))) compact.push_back(c);
      if (compact.size() > 3 && (compact.ends_with("+0i") || compact.ends_with("-0i"))) {
        side = compact[compact.size() - 3] == '+' ? Side::upper : Side::lower;
        compact.resize(compact.size() - 3);
      }
      Complex z = parse_complex(compact, bits);
      if (side != Side::none && !z.im.is_zero()) throw ParseError(0, "side tag on a non-real parameter");
      out.add(CoverPoint(std::move(z), p.get_num().get_si(), q.get_num().get_si(), side), coeff);
    } catch (const ParseError& e) {
      if (e.line() != 0) throw;
      throw ParseError(static_cast<std::size_t>(line.number), e.what());
    } catch (const Error& e) {
      throw ParseError(static_cast<std::size_t>(line.number), e.what());
    }
  }
  return out;
}

Complex rogers_lifted(const FlattenedSum& s, const PrecisionContext& ctx) {
  Complex total(ctx.kernel_bits());
  for (const auto& t : s.terms()) total += rogers_lifted(t.point, ctx).with_precision(ctx.kernel_bits()) * t.coeff;
  return reduce_mod_pi2(total, ctx);
}

WedgeElem ext_dehn(const FlattenedSum& s, const PrecisionContext& ctx) {
  WedgeElem w(WedgeMode::additive);
  for (const auto& t : s.terms()) w += ext_dehn(t.point, ctx) * t.coeff;
  return w;
}

FlattenedSum transfer_combination(const Complex& x, Side side, long p, long q, long p2, long q2) {
  FlattenedSum s;
  s.add(CoverPoint(x, p, q, side), 1);
  s.add(CoverPoint(x, p2, q2, side), 1);
  s.add(CoverPoint(x, p, q2, side), -1);
  s.add(CoverPoint(x, p2, q, side), -1);
  return s;
}

TransferResidual transfer_check(const Complex& x, Side side, long p, long q, long p2, long q2,
                                const PrecisionContext& ctx, long maxden) {
  const FlattenedSum s = transfer_combination(x, side, p, q, p2, q2);
  return {distance_mod_pi2(rogers_lifted(s, ctx), ctx), wedge_reduce(ext_dehn(s, ctx), ctx, maxden)};
}

FlattenedSum kappa(const Complex& x, Side side) { return transfer_combination(x, side, 1, 1, 0, 0); }

FlattenedSum chi(const Complex& z, Side side) {
  FlattenedSum s;
  s.add(CoverPoint(z, 0, 1, side), 1);
  s.add(CoverPoint(z, 0, 0, side), -1);
  return s;
}

WedgeElem xi(const Complex& z, const PrecisionContext& ctx) {
  if (z.is_zero()) throw DomainError("xi: log of zero");
  WedgeElem w(WedgeMode::additive);
  const Complex l = plog(z.with_precision(ctx.kernel_bits())).with_precision(ctx.bits());
  w.add(l, pi_i(1, ctx.bits()), 1);
  return w;
}

WedgeElem eps_map(const WedgeElem& w, const PrecisionContext& ctx) {
  if (w.mode() != WedgeMode::additive) throw ValidationError("eps_map needs an additive wedge");
  WedgeElem out(WedgeMode::multiplicative);
  for (const auto& t : w.terms())
    out.add(exp(t.a.with_precision(ctx.kernel_bits())).with_precision(ctx.bits()),
            exp(t.b.with_precision(ctx.kernel_bits())).with_precision(ctx.bits()), t.coeff);
  return out;
}

}  // namespace scissors
