// scissors: command-line front end.
//
// Exit codes: 0 success, 1 a requested check failed, 2 invalid input,
// 3 inconclusive at the given precision.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "scissors/bloch.hpp"
#include "scissors/dehn.hpp"
#include "scissors/dilog.hpp"
#include "scissors/errors.hpp"
#include "scissors/expression.hpp"
#include "scissors/extended.hpp"
#include "scissors/manifold.hpp"
#include "scissors/regulator.hpp"
#include "scissors/relation.hpp"

using namespace scissors;
using json = nlohmann::ordered_json;

namespace {

constexpr int kCheckFailed = 1;
constexpr int kInvalid = 2;
constexpr int kInconclusive = 3;

struct CliConfig {
  long bits = kDefaultBits;
  int digits = 30;
  long maxden = kDefaultMaxden;
  double bound = 1e6;
  bool json = false;
  std::string output;
};

std::string read_input(const std::string& path) {
  std::stringstream ss;
  if (path == "-") {
    ss << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot read " + path);
    ss << in.rdbuf();
  }
  return ss.str();
}

std::string sci(const Real& x) {
  char buf[64];
  mpfr_snprintf(buf, sizeof buf, "%.3Re", x.get());
  return buf;
}

std::string side_name(Side s) {
  switch (s) {
    case Side::upper: return "upper";
    case Side::lower: return "lower";
    default: return "none";
  }
}

Side parse_side(const std::string& s) {
  if (s.empty() || s == "none") return Side::none;
  if (s == "upper" || s == "+") return Side::upper;
  if (s == "lower" || s == "-") return Side::lower;
  throw ValidationError("side must be upper or lower, got '" + s + "'");
}

json wedge_json(const WedgeElem& w, int digits) {
  json terms = json::array();
  for (const auto& t : w.terms())
    terms.push_back(format_rational(t.coeff) + " * (" + t.a.to_fixed(digits) + ") ^ (" + t.b.to_fixed(digits) + ")");
  return terms;
}

// Text rendering: one "key: value" line per field, arrays joined by ", "
// unless they hold objects or long strings.
void render_text(const json& j, std::ostream& out, const std::string& indent = "") {
  for (auto it = j.begin(); it != j.end(); ++it) {
    const json& v = it.value();
    out << indent << it.key() << ":";
    if (v.is_object()) {
      out << "\n";
      render_text(v, out, indent + "  ");
    } else if (v.is_array()) {
      bool flat = true;
      for (const auto& e : v) flat &= !e.is_structured() && (!e.is_string() || e.get<std::string>().size() <= 40);
      if (flat) {
        for (std::size_t i = 0; i < v.size(); ++i) {
          out << (i ? ", " : " ");
          if (v[i].is_string()) out << v[i].get<std::string>();
          else out << v[i].dump();
        }
        out << "\n";
      } else {
        out << "\n";
        for (const auto& e : v) {
          if (e.is_object()) {
            out << indent << "  -\n";
            render_text(e, out, indent + "    ");
          } else {
            out << indent << "  " << (e.is_string() ? e.get<std::string>() : e.dump()) << "\n";
          }
        }
      }
    } else if (v.is_string()) {
      out << " " << v.get<std::string>() << "\n";
    } else {
      out << " " << v.dump() << "\n";
    }
  }
}

void emit(const json& j, const CliConfig& cfg) {
  std::ofstream file;
  if (!cfg.output.empty()) {
    file.open(cfg.output);
    if (!file) throw ValidationError("cannot write " + cfg.output);
  }
  std::ostream& out = cfg.output.empty() ? std::cout : file;
  if (cfg.json) out << j.dump(2) << "\n";
  else render_text(j, out);
}

Real check_tolerance(const PrecisionContext& ctx) { return ctx.eps() * 64; }

// dilog ---------------------------------------------------------------------

struct DilogArgs {
  std::string z, side;
  std::optional<long> p, q;
};

int run_dilog(const DilogArgs& a, const CliConfig& cfg) {
  const PrecisionContext ctx(cfg.bits);
  const Complex z = parse_complex(a.z, cfg.bits);
  const Side side = parse_side(a.side);
  json j;
  j["z"] = z.to_fixed(cfg.digits);
  j["Li2"] = dilog(z, side, ctx).to_fixed(cfg.digits);
  j["D2"] = bloch_wigner(z, ctx).to_fixed(cfg.digits);
  j["R"] = rogers(z, side, ctx).to_fixed(cfg.digits);
  if (a.p || a.q) {
    const CoverPoint pt(z, a.p.value_or(0), a.q.value_or(0), side);
    j["point"] = pt.to_string(cfg.digits);
    j["R_lifted"] = rogers_lifted(pt, ctx).to_fixed(cfg.digits);
  }
  emit(j, cfg);
  return 0;
}

// dehn ----------------------------------------------------------------------

int run_dehn(const std::string& path, const CliConfig& cfg) {
  const PrecisionContext ctx(cfg.bits);
  const PolytopeEdges edges = parse_edges(read_input(path), cfg.bits);
  const TensorElem t = tensor_reduce(dehn_invariant(edges, ctx), ctx, cfg.maxden);
  json j;
  j["edges"] = edges.size();
  j["zero"] = t.is_zero();
  json terms = json::array();
  for (const auto& term : t.terms)
    terms.push_back(term.length.to_fixed(cfg.digits) + " (x) " + term.angle.to_fixed(cfg.digits));
  j["reduced"] = terms;
  j["certificate"] = t.info.certificate;
  emit(j, cfg);
  return 0;
}

// fiveterm ------------------------------------------------------------------

struct FiveTermArgs {
  std::string x, y, check = "all";
  long p0 = 0, p1 = 0, q0 = 0, q1 = 0, q2 = 0;
};

int run_fiveterm(const FiveTermArgs& a, const CliConfig& cfg) {
  const PrecisionContext ctx(cfg.bits);
  const Complex x = parse_complex(a.x, cfg.bits);
  const Complex y = parse_complex(a.y, cfg.bits);
  const Real tol = check_tolerance(ctx);
  const bool all = a.check == "all";
  json j;
  json params = json::array();
  for (const auto& z : five_term_parameters(x, y, ctx)) params.push_back(z.to_fixed(cfg.digits));
  j["parameters"] = params;
  j["tolerance"] = sci(tol);
  bool pass = true;
  if (all || a.check == "d2") {
    const Real r = abs(volume(five_term_instance(x, y, ctx), ctx));
    j["d2_residual"] = sci(r);
    pass &= r <= tol;
  }
  if (all || a.check == "rogers" || a.check == "dehn") {
    const auto pts = lifted_five_term_family(x, y, a.p0, a.p1, a.q0, a.q1, a.q2, ctx);
    FlattenedSum s;
    for (int i = 0; i < 5; ++i) s.add(pts[static_cast<std::size_t>(i)], i % 2 ? -1 : 1);
    json lifted = json::array();
    for (const auto& pt : pts) lifted.push_back(pt.to_string(cfg.digits));
    j["lifted"] = lifted;
    const bool ok = is_lifted_five_term(pts, ctx);
    j["lifted_ok"] = ok;
    pass &= ok;
    if (all || a.check == "rogers") {
      const Real r = distance_mod_pi2(rogers_lifted(s, ctx), ctx);
      j["rogers_residual"] = sci(r);
      pass &= r <= tol;
    }
    if (all || a.check == "dehn") {
      const bool zero = wedge_reduce(ext_dehn(s, ctx), ctx, cfg.maxden).is_zero();
      j["dehn_zero"] = zero;
      pass &= zero;
    }
  }
  j["pass"] = pass;
  emit(j, cfg);
  return pass ? 0 : kCheckFailed;
}

// flatten -------------------------------------------------------------------

struct FlattenArgs {
  std::string z, side, inverse, sum;
  long p = 0, q = 0;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

int run_flatten(const FlattenArgs& a, const CliConfig& cfg) {
  const PrecisionContext ctx(cfg.bits);
  json j;
  if (!a.sum.empty()) {
    const FlattenedSum s = parse_flattened_sum(read_input(a.sum), cfg.bits);
    const Complex r = rogers_lifted(s, ctx);
    j["terms"] = s.terms().size();
    j["R"] = reduce_mod_pi2(r, ctx).to_fixed(cfg.digits);
    j["R_mod_pi2_residual"] = sci(distance_mod_pi2(r, ctx));
    const WedgeElem w = wedge_reduce(ext_dehn(s, ctx), ctx, cfg.maxden);
    j["dehn_zero"] = w.is_zero();
    j["dehn"] = wedge_json(w, cfg.digits);
    j["certificate"] = w.info().certificate;
  } else if (!a.inverse.empty()) {
    const auto parts = split(a.inverse, ';');
    if (parts.size() != 3) throw ValidationError("--inverse takes w0;w1;w2");
    const long wide = cfg.bits + 64;
    const Flattening f{parse_complex(parts[0], wide), parse_complex(parts[1], wide), parse_complex(parts[2], wide)};
    const CoverPoint pt = ell_inverse(f, ctx);
    j["point"] = pt.to_string(cfg.digits);
    j["z"] = pt.z().to_fixed(cfg.digits);
    j["p"] = pt.p();
    j["q"] = pt.q();
    j["side"] = side_name(pt.side());
  } else {
    if (a.z.empty()) throw ValidationError("one of --z, --inverse, --sum is required");
    const CoverPoint pt(parse_complex(a.z, cfg.bits), a.p, a.q, parse_side(a.side));
    const Flattening f = ell(pt, ctx);
    j["point"] = pt.to_string(cfg.digits);
    j["w0"] = f.w0.to_fixed(cfg.digits);
    j["w1"] = f.w1.to_fixed(cfg.digits);
    j["w2"] = f.w2.to_fixed(cfg.digits);
    j["component"] = std::to_string(pt.component().first) + "," + std::to_string(pt.component().second);
    j["R"] = rogers_lifted(pt, ctx).to_fixed(cfg.digits);
  }
  emit(j, cfg);
  return 0;
}

// regulator -----------------------------------------------------------------

struct RegulatorArgs {
  std::string field, cls, input;
};

int run_regulator(const RegulatorArgs& a, const CliConfig& cfg) {
  const PrecisionContext ctx(cfg.bits);
  if (a.cls.empty() == a.input.empty()) throw ValidationError("give exactly one of --class and --input");
  const FormalSum s = a.cls.empty() ? parse_formal_sum(read_input(a.input), cfg.bits) : builtin_class(a.cls);
  if (!s.field()) throw ValidationError("regulator needs a sum over a number field");
  if (!a.field.empty() && NumberField::parse(a.field).to_string() != s.field()->to_string())
    throw ValidationError("class is defined over " + s.field()->to_string() + ", not " + a.field);
  const auto r = borel_regulator(s, ctx);
  const auto embs = s.field()->complex_embeddings();
  json j;
  j["field"] = s.field()->to_string();
  json roots = json::array(), values = json::array();
  for (std::size_t k = 0; k < r.values.size(); ++k) {
    roots.push_back(embs[k].root_at(cfg.bits).to_fixed(cfg.digits));
    values.push_back(r.values[k].to_fixed(cfg.digits));
  }
  j["embeddings"] = roots;
  j["regulator"] = values;
  emit(j, cfg);
  return 0;
}

// relations -----------------------------------------------------------------

struct RelationsArgs {
  std::string target, basis, input, tolerance;
};

// v1, v2: volumes of beta1, beta2 at the first embedding, oriented so that
// the first is positive.
Real named_basis(const std::string& name, const PrecisionContext& ctx) {
  static const char* names[] = {"v1", "v2"};
  for (int k = 0; k < 2; ++k) {
    if (name != names[k]) continue;
    const Real b1 = borel_regulator(builtin_class("beta1"), ctx).values[0];
    const Real v = borel_regulator(builtin_class(k == 0 ? "beta1" : "beta2"), ctx).values[0];
    return b1.sign() < 0 ? -v : v;
  }
  return parse_real(name, ctx.bits());
}

std::optional<Real> tolerance_of(const std::vector<std::string>& literals, const std::string& explicit_tol,
                                 long bits) {
  if (!explicit_tol.empty()) return parse_real(explicit_tol, bits);
  mpq_class u = 0;
  for (const auto& l : literals) u = std::max(u, literal_uncertainty(l));
  if (u == 0) return std::nullopt;
  return Real::from_rational(u, bits);
}

int run_relations(const RelationsArgs& a, const CliConfig& cfg) {
  const PrecisionContext ctx(cfg.bits);
  json j;
  SearchStatus status;
  if (!a.target.empty()) {
    if (a.basis.empty()) throw ValidationError("--target needs --basis");
    std::vector<std::string> literals{a.target};
    std::vector<Real> basis;
    for (const auto& b : split(a.basis, ',')) {
      basis.push_back(named_basis(b, ctx));
      if (b != "v1" && b != "v2") literals.push_back(b);
    }
    const auto tol = tolerance_of(literals, a.tolerance, cfg.bits);
    const auto r = volume_combination_search(parse_real(a.target, cfg.bits), basis, cfg.maxden, ctx, tol);
    status = r.status;
    j["status"] = to_string(r.status);
    if (r.combination) {
      std::string coeffs;
      for (std::size_t k = 0; k < r.combination->coeffs.size(); ++k)
        coeffs += (k ? ", " : "") + format_rational(r.combination->coeffs[k]);
      j["coefficients"] = coeffs;
      j["residual"] = sci(r.combination->residual);
    }
    if (tol) j["tolerance"] = sci(*tol);
    if (!r.detail.empty()) j["detail"] = r.detail;
  } else {
    std::vector<std::string> literals;
    std::vector<Real> xs;
    std::istringstream in(read_input(a.input.empty() ? "-" : a.input));
    for (std::string line; std::getline(in, line);) {
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      literals.push_back(line);
      xs.push_back(parse_real(line, cfg.bits));
    }
    if (xs.size() < 2) throw ValidationError("need at least two reals");
    if (cfg.bound < 1 || cfg.bound > 1e18) throw ValidationError("--bound must be in [1, 1e18]");
    const mpz_class bound(std::to_string(std::llround(cfg.bound)));
    const auto tol = tolerance_of(literals, a.tolerance, cfg.bits);
    const auto r = find_relation(xs, ctx, bound, tol);
    status = r.status;
    j["status"] = to_string(r.status);
    if (r.relation) {
      json c = json::array();
      for (const auto& v : r.relation->coeffs) c.push_back(v.get_str());
      j["coefficients"] = c;
      j["residual"] = sci(r.relation->residual);
    }
    j["bound"] = bound.get_str();
    if (!r.detail.empty()) j["detail"] = r.detail;
  }
  emit(j, cfg);
  return status == SearchStatus::inconclusive ? kInconclusive : 0;
}

// report --------------------------------------------------------------------

int run_report(const std::string& path, const CliConfig& cfg) {
  const PrecisionContext ctx(cfg.bits);
  const Triangulation t = load_triangulation(read_input(path), cfg.bits);
  const Report r = invariants_report(t, ctx, cfg.maxden);
  json j;
  j["tetrahedra"] = t.tets.size();
  j["volume"] = r.volume.to_fixed(cfg.digits);
  json angles = json::array();
  for (const auto& a : r.angle_residuals) angles.push_back(sci(a));
  j["angle_residuals"] = angles;
  if (!r.flattening_residuals.empty()) {
    json flats = json::array();
    const Real pi = Real::pi(cfg.bits);
    for (const auto& f : r.flattening_residuals) {
      const mpz_class k = (f.im / pi).round();
      const Complex err = f - Complex(Real(cfg.bits), Real::from_integer(k, cfg.bits) * pi);
      flats.push_back(k.get_str() + "*pi*i + " + sci(abs(err)));
    }
    j["flattening_residuals"] = flats;
  }
  j["dehn_zero"] = r.dehn_zero;
  j["dehn_certificate"] = r.dehn_certificate;
  if (r.rogers_sum) j["rogers_sum"] = r.rogers_sum->to_fixed(cfg.digits);
  if (r.cs) j["cs"] = r.cs->to_fixed(cfg.digits);
  emit(j, cfg);
  return 0;
}

// gromov --------------------------------------------------------------------

int run_gromov(const std::string& path, long k, const CliConfig& cfg) {
  const PrecisionContext ctx(cfg.bits);
  const FormalSum s = parse_formal_sum(read_input(path), cfg.bits);
  const mpq_class g = gromov_upper_bound(s, k);
  const Real v = bloch_wigner(exp(Complex(Real(cfg.bits), Real::pi(cfg.bits) / 3)), ctx);
  const Real vol = volume(s, ctx);
  const Real rhs = v * g;
  json j;
  j["terms"] = s.terms().size();
  j["gromov_bound"] = format_rational(g);
  j["volume"] = vol.to_fixed(cfg.digits);
  j["V"] = v.to_fixed(cfg.digits);
  j["V_times_bound"] = rhs.to_fixed(cfg.digits);
  const bool holds = abs(vol) <= rhs + check_tolerance(ctx);
  j["holds"] = holds;
  emit(j, cfg);
  return holds ? 0 : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Scissors congruence invariants"};
  app.require_subcommand(1);
  CliConfig cfg;
  app.add_option("--bits", cfg.bits, "working precision in bits")->check(CLI::Range(64L, 1L << 20));
  app.add_option("--digits", cfg.digits, "fractional digits printed (truncated)")->check(CLI::PositiveNumber);
  app.add_option("--maxden", cfg.maxden, "maximal denominator in Q-reductions")->check(CLI::PositiveNumber);
  app.add_option("--bound", cfg.bound, "coefficient bound for relation searches")->check(CLI::PositiveNumber);
  app.add_flag("--json", cfg.json, "JSON output");
  app.add_option("-o,--output", cfg.output, "write output to a file");
  // Global options may also follow the subcommand name.
  app.fallthrough();

  std::function<int()> action;

  DilogArgs da;
  auto* dl = app.add_subcommand("dilog", "Li2, D2 and Rogers R at a point");
  dl->add_option("--z", da.z, "complex expression")->required();
  dl->add_option("--side", da.side, "upper or lower, for real z on a cut");
  dl->add_option("--p", da.p, "flattening integer p");
  dl->add_option("--q", da.q, "flattening integer q");
  dl->callback([&] { action = [&] { return run_dilog(da, cfg); }; });

  std::string dehn_path;
  auto* dh = app.add_subcommand("dehn", "Dehn invariant of a polytope edge list");
  dh->add_option("input", dehn_path, "file with `length angle` lines, - for stdin")->required();
  dh->callback([&] { action = [&] { return run_dehn(dehn_path, cfg); }; });

  FiveTermArgs fa;
  auto* ft = app.add_subcommand("fiveterm", "five-term relation checks");
  ft->add_option("--x", fa.x)->required();
  ft->add_option("--y", fa.y)->required();
  ft->add_option("--check", fa.check)->check(CLI::IsMember({"d2", "rogers", "dehn", "all"}));
  ft->add_option("--p0", fa.p0);
  ft->add_option("--p1", fa.p1);
  ft->add_option("--q0", fa.q0);
  ft->add_option("--q1", fa.q1);
  ft->add_option("--q2", fa.q2);
  ft->callback([&] { action = [&] { return run_fiveterm(fa, cfg); }; });

  FlattenArgs la;
  auto* fl = app.add_subcommand("flatten", "flattenings of cover points and flattened sums");
  fl->add_option("--z", la.z, "complex expression");
  fl->add_option("--p", la.p);
  fl->add_option("--q", la.q);
  fl->add_option("--side", la.side, "upper or lower, for real z on a cut");
  fl->add_option("--inverse", la.inverse, "w0;w1;w2, recover (z; p, q)");
  fl->add_option("--sum", la.sum, "flattened sum file, - for stdin");
  fl->callback([&] { action = [&] { return run_flatten(la, cfg); }; });

  RegulatorArgs ra;
  auto* rg = app.add_subcommand("regulator", "Borel regulator of a class over a number field");
  rg->add_option("--field", ra.field, "defining polynomial, checked against the class");
  rg->add_option("--class", ra.cls, "built-in class name")->check(CLI::IsMember(builtin_class_names()));
  rg->add_option("--input", ra.input, "formal sum file, - for stdin");
  rg->callback([&] { action = [&] { return run_regulator(ra, cfg); }; });

  RelationsArgs xa;
  auto* rl = app.add_subcommand("relations", "integer relations and rational combinations");
  rl->add_option("--target", xa.target, "real to express in the basis");
  rl->add_option("--basis", xa.basis, "comma-separated reals; v1, v2 name the built-in volumes");
  rl->add_option("--tolerance", xa.tolerance, "absolute error of the inputs");
  rl->add_option("input", xa.input, "file with one real per line, - for stdin");
  rl->callback([&] { action = [&] { return run_relations(xa, cfg); }; });

  std::string report_path;
  auto* rp = app.add_subcommand("report", "invariants of a triangulation file");
  rp->add_option("input", report_path)->required();
  rp->callback([&] { action = [&] { return run_report(report_path, cfg); }; });

  std::string gromov_path;
  long gromov_k = 1;
  auto* gr = app.add_subcommand("gromov", "Gromov norm bound of a formal sum");
  gr->add_option("input", gromov_path)->required();
  gr->add_option("--k", gromov_k, "scale of the bound")->check(CLI::PositiveNumber);
  gr->callback([&] { action = [&] { return run_gromov(gromov_path, gromov_k, cfg); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInvalid;
  }

  try {
    return action();
  } catch (const PrecisionError& e) {
    std::cerr << "inconclusive: " << e.what() << "\n";
    return kInconclusive;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  }
}
