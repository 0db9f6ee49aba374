#include "scissors/manifold.hpp"

#include <algorithm>
#include <map>
#include <regex>

#include "scissors/errors.hpp"
#include "scissors/expression.hpp"
#include "text.hpp"

namespace scissors {

int slot_component(int slot) {
  switch (slot) {
    case 0:  // 01
    case 5:  // 23
      return 0;
    case 2:  // 03
    case 3:  // 12
      return 1;
    default:  // 02, 13
      return 2;
  }
}

namespace {

int parse_slot(const std::string& s) {
  for (std::size_t i = 0; i < kSlotNames.size(); ++i)
    if (s == kSlotNames[i]) return static_cast<int>(i);
  return -1;
}

long parse_long(const std::string& s) {
  const mpq_class v = parse_rational(s);
  if (v.get_den() != 1 || !v.get_num().fits_slong_p()) throw ParseError(0, "expected an integer, got `" + s + "`");
  return v.get_num().get_si();
}

TetFlattening parse_flat(const std::string& s) {
  static const std::regex re(R"(^\(\s*([-+]?\d+)\s*,\s*([-+]?\d+)\s*\)\s*(?:,\s*([+-])\s*0\s*i)?$)");
  std::smatch m;
  if (!std::regex_match(s, m, re)) throw ParseError(0, "expected flat=(p,q) or flat=(p,q),+0i");
  TetFlattening f;
  f.p = parse_long(m[1]);
  f.q = parse_long(m[2]);
  if (m[3].matched) f.side = m[3] == "+" ? Side::upper : Side::lower;
  return f;
}

}  // namespace

Triangulation load_triangulation(std::string_view input, long bits) {
  Triangulation t;
  static const std::regex tet_re(R"(^tet\s+(\d+)\s*:\s*shape\s*=\s*(.*)$)");
  static const std::regex ref_re(R"(\(\s*(\d+)\s*,\s*(\d+)\s*\))");
  std::map<std::size_t, Tetrahedron> tets;
  struct PendingEdge {
    int line;
    std::vector<std::pair<std::size_t, std::string>> refs;
  };
  std::vector<PendingEdge> pending;
  bool seen_body = false;

  for (const auto& line : text::lines(input)) {
    const std::string& s = line.content;
    const auto num = static_cast<std::size_t>(line.number);
    try {
      if (text::starts_with_key(s, "field")) {
        if (seen_body) throw ParseError(0, "field header must come first");
        const std::size_t colon = s.find(':');
        if (colon == std::string::npos) throw ParseError(0, "expected `field: <polynomial or none>`");
        const std::string poly = text::trim(s.substr(colon + 1));
        if (poly != "none") t.field = NumberField::parse(poly);
        continue;
      }
      seen_body = true;
      std::smatch m;
      if (std::regex_match(s, m, tet_re)) {
        const std::size_t idx = std::stoul(m[1]);
        if (tets.count(idx)) throw ParseError(0, "tet " + std::to_string(idx) + " defined twice");
        std::string rest = m[2];
        std::optional<TetFlattening> flat;
        if (const std::size_t f = rest.find("flat="); f != std::string::npos) {
          flat = parse_flat(text::trim(rest.substr(f + 5)));
          rest = rest.substr(0, f);
        }
        const std::string shape_text = text::trim(rest);
        if (shape_text.empty()) throw ParseError(0, "missing shape");
        Tetrahedron tet{Complex(), flat, line.number};
        if (t.field) {
          FieldElem e = t.field->parse_element(shape_text);
          if (e.is_zero() || e.is_one()) throw ParseError(0, "shape must avoid 0 and 1");
          tet.shape = std::move(e);
        } else {
          Complex z = parse_complex(shape_text, bits);
          if (z.is_zero() || (z.im.is_zero() && z.re == 1)) throw ParseError(0, "shape must avoid 0 and 1");
          if (flat) CoverPoint(z, flat->p, flat->q, flat->side);  // side-tag rules
          tet.shape = std::move(z);
        }
        tets.emplace(idx, std::move(tet));
        continue;
      }
      if (text::starts_with_key(s, "edge")) {
        const std::size_t colon = s.find(':');
        if (colon == std::string::npos) throw ParseError(0, "expected `edge: (t,slot) ...`");
        std::string body = s.substr(colon + 1);
        PendingEdge pe{line.number, {}};
        auto it = std::sregex_iterator(body.begin(), body.end(), ref_re);
        std::string leftover = std::regex_replace(body, ref_re, "");
        if (!text::trim(leftover).empty()) throw ParseError(0, "unexpected text in edge line: `" + text::trim(leftover) + "`");
        for (; it != std::sregex_iterator(); ++it) pe.refs.emplace_back(std::stoul((*it)[1]), (*it)[2]);
        if (pe.refs.empty()) throw ParseError(0, "empty edge class");
        pending.push_back(std::move(pe));
        continue;
      }
      throw ParseError(0, "unrecognized line");
    } catch (const ParseError& e) {
      if (e.line() != 0) throw;
      throw ParseError(num, e.what());
    } catch (const Error& e) {
      throw ParseError(num, e.what());
    }
  }

  std::size_t expect = 0;
  for (auto& [idx, tet] : tets) {
    if (idx != expect) throw ParseError(static_cast<std::size_t>(tet.line), "tet indices must be 0, 1, 2, ... without gaps");
    t.tets.push_back(std::move(tet));
    ++expect;
  }

  std::vector<std::array<int, 6>> used(t.tets.size());
  for (auto& u : used) u.fill(0);
  for (const auto& pe : pending) {
    std::vector<SlotRef> edge;
    for (const auto& [ti, name] : pe.refs) {
      const int slot = parse_slot(name);
      if (slot < 0) throw ParseError(static_cast<std::size_t>(pe.line), "bad slot `" + name + "`");
      if (ti >= t.tets.size()) throw ParseError(static_cast<std::size_t>(pe.line), "no tet " + std::to_string(ti));
      if (used[ti][static_cast<std::size_t>(slot)] != 0)
        throw ParseError(static_cast<std::size_t>(pe.line),
                         "slot (" + std::to_string(ti) + "," + name + ") already used on line " +
                             std::to_string(used[ti][static_cast<std::size_t>(slot)]));
      used[ti][static_cast<std::size_t>(slot)] = pe.line;
      edge.push_back({ti, slot});
    }
    t.edges.push_back(std::move(edge));
  }
  for (std::size_t ti = 0; ti < t.tets.size(); ++ti)
    for (std::size_t s = 0; s < 6; ++s)
      if (used[ti][s] == 0)
        throw ParseError(static_cast<std::size_t>(t.tets[ti].line),
                         std::string("slot (") + std::to_string(ti) + "," + kSlotNames[s] + ") is not in any edge class");
  return t;
}

std::vector<Complex> shape_values(const Triangulation& t, const PrecisionContext& ctx,
                                  const std::optional<Embedding>& emb) {
  std::vector<Complex> out;
  std::optional<Embedding> e = emb;
  if (t.field && !e) {
    const auto cx = t.field->complex_embeddings();
    e = cx.empty() ? t.field->embeddings().front() : cx.front();
  }
  for (const auto& tet : t.tets) {
    if (const auto* z = std::get_if<Complex>(&tet.shape)) out.push_back(z->with_precision(ctx.bits()));
    else out.push_back(embed(std::get<FieldElem>(tet.shape), *e, ctx));
  }
  return out;
}

std::vector<Real> check_angles(const Triangulation& t, const PrecisionContext& ctx,
                               const std::optional<Embedding>& emb) {
  const long kb = ctx.kernel_bits();
  const auto zs = shape_values(t, ctx, emb);
  std::vector<std::array<Real, 3>> angles;
  for (const auto& z : zs) {
    const Complex zk = z.with_precision(kb);
    angles.push_back({arg(zk), arg(inverse(1 - zk)), arg(1 - inverse(zk))});
  }
  std::vector<Real> out;
  for (const auto& edge : t.edges) {
    Real sum = -(ctx.pi() * 2);
    for (const auto& ref : edge) sum += angles[ref.tet][static_cast<std::size_t>(slot_component(ref.slot))];
    out.push_back(sum.with_precision(ctx.bits()));
  }
  return out;
}

namespace {

std::vector<CoverPoint> cover_points(const Triangulation& t, const std::vector<Complex>& zs) {
  std::vector<CoverPoint> pts;
  for (std::size_t i = 0; i < t.tets.size(); ++i) {
    const auto& f = t.tets[i].flattening;
    if (!f) throw ValidationError("tet " + std::to_string(i) + " has no flattening");
    pts.emplace_back(zs[i], f->p, f->q, f->side);
  }
  return pts;
}

}  // namespace

std::vector<Complex> check_flattening(const Triangulation& t, const PrecisionContext& ctx,
                                      const std::optional<Embedding>& emb) {
  const auto zs = shape_values(t, ctx, emb);
  const auto pts = cover_points(t, zs);
  std::vector<Flattening> flats;
  for (const auto& pt : pts) flats.push_back(ell(pt, ctx));
  std::vector<Complex> out;
  for (const auto& edge : t.edges) {
    Complex sum(ctx.kernel_bits());
    for (const auto& ref : edge) {
      const Flattening& f = flats[ref.tet];
      const int c = slot_component(ref.slot);
      sum += c == 0 ? f.w0 : c == 1 ? f.w1 : f.w2;
    }
    out.push_back(sum.with_precision(ctx.bits()));
  }
  return out;
}

Report invariants_report(const Triangulation& t, const PrecisionContext& ctx, long maxden,
                         const std::optional<Embedding>& emb) {
  Report r{t.field ? FormalSum(*t.field) : FormalSum(), ctx.zero(), {}, {}, false, {}, std::nullopt, std::nullopt};
  for (const auto& tet : t.tets) r.beta.add(tet.shape, 1);
  const auto zs = shape_values(t, ctx, emb);
  Real vol(ctx.kernel_bits());
  for (const auto& z : zs) vol += bloch_wigner(z, ctx);
  r.volume = vol.with_precision(ctx.bits());
  r.angle_residuals = check_angles(t, ctx, emb);
  const WedgeElem dehn = wedge_reduce(complex_dehn(r.beta, ctx, emb), ctx, maxden);
  r.dehn_zero = dehn.is_zero();
  r.dehn_certificate = dehn.info().certificate;

  const bool flattened =
      std::all_of(t.tets.begin(), t.tets.end(), [](const Tetrahedron& tet) { return tet.flattening.has_value(); });
  if (flattened) {
    r.flattening_residuals = check_flattening(t, ctx, emb);
    const auto pts = cover_points(t, zs);
    Complex sum(ctx.kernel_bits());
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const Complex v = rogers_lifted(pts[i], ctx).with_precision(ctx.kernel_bits());
      if (zs[i].im.sign() < 0) sum -= v;
      else sum += v;
    }
    r.rogers_sum = reduce_mod_pi2(sum, ctx);
    r.cs = r.rogers_sum->re;
  }
  return r;
}

std::string figure_eight_text() {
  return "# figure-eight knot complement: two regular ideal tetrahedra\n"
         "field: none\n"
         "tet 0: shape=1/2+sqrt(3)/2*i flat=(0,-1)\n"
         "tet 1: shape=1/2+sqrt(3)/2*i flat=(0,-1)\n"
         "edge: (0,01) (0,23) (0,03) (1,01) (1,23) (1,03)\n"
         "edge: (0,12) (0,02) (0,13) (1,12) (1,02) (1,13)\n";
}

}  // namespace scissors
