#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>
#include <optional>
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

namespace py = pybind11;
using namespace scissors;

namespace {

using CPair = std::pair<std::string, std::string>;

CPair split(const Complex& z, int digits) { return {z.re.to_fixed(digits), z.im.to_fixed(digits)}; }

Side side_of(const std::string& s) {
  if (s.empty()) return Side::none;
  if (s == "upper") return Side::upper;
  if (s == "lower") return Side::lower;
  throw ValidationError("side must be 'upper', 'lower' or empty");
}

std::string side_name(Side s) { return s == Side::upper ? "upper" : s == Side::lower ? "lower" : ""; }

std::string sci(const Real& x) { return x.to_string(); }

py::dict relation_dict(SearchStatus status, const std::string& detail) {
  py::dict d;
  d["status"] = to_string(status);
  d["detail"] = detail;
  return d;
}

}  // namespace

PYBIND11_MODULE(_scissors, m) {
  m.doc() = "High-precision scissors congruence invariants";

  static py::exception<Error> base(m, "ScissorsError", PyExc_ValueError);
  static py::exception<PrecisionError> precision(m, "PrecisionError", base.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const PrecisionError& e) {
      py::set_error(precision, e.what());
    } catch (const Error& e) {
      py::set_error(base, e.what());
    }
  });

  m.attr("DEFAULT_BITS") = kDefaultBits;

  m.def(
      "dilog",
      [](const std::string& z, const std::string& side, long bits, int digits) {
        const PrecisionContext ctx(bits);
        return split(dilog(parse_complex(z, bits), side_of(side), ctx), digits);
      },
      py::arg("z"), py::arg("side") = "", py::arg("bits") = kDefaultBits, py::arg("digits") = 30);

  m.def(
      "bloch_wigner",
      [](const std::string& z, long bits, int digits) {
        const PrecisionContext ctx(bits);
        return bloch_wigner(parse_complex(z, bits), ctx).to_fixed(digits);
      },
      py::arg("z"), py::arg("bits") = kDefaultBits, py::arg("digits") = 30);

  m.def(
      "rogers",
      [](const std::string& z, const std::string& side, std::optional<long> p, std::optional<long> q, long bits,
         int digits) {
        const PrecisionContext ctx(bits);
        const Complex v = parse_complex(z, bits);
        if (!p && !q) return split(rogers(v, side_of(side), ctx), digits);
        return split(rogers_lifted(CoverPoint(v, p.value_or(0), q.value_or(0), side_of(side)), ctx), digits);
      },
      py::arg("z"), py::arg("side") = "", py::arg("p") = py::none(), py::arg("q") = py::none(),
      py::arg("bits") = kDefaultBits, py::arg("digits") = 30);

  m.def(
      "five_term_residual",
      [](const std::string& x, const std::string& y, long bits) {
        const PrecisionContext ctx(bits);
        return sci(volume(five_term_instance(parse_complex(x, bits), parse_complex(y, bits), ctx), ctx));
      },
      py::arg("x"), py::arg("y"), py::arg("bits") = kDefaultBits);

  m.def(
      "dehn_invariant",
      [](const std::string& edges, long bits, long maxden, int digits) {
        const PrecisionContext ctx(bits);
        const TensorElem t = tensor_reduce(dehn_invariant(parse_edges(edges, bits), ctx), ctx, maxden);
        py::dict d;
        d["zero"] = t.is_zero();
        std::vector<CPair> terms;
        for (const auto& term : t.terms) terms.emplace_back(term.length.to_fixed(digits), term.angle.to_fixed(digits));
        d["terms"] = terms;
        d["certificate"] = t.info.certificate;
        return d;
      },
      py::arg("edges"), py::arg("bits") = kDefaultBits, py::arg("maxden") = kDefaultMaxden, py::arg("digits") = 30);

  m.def(
      "ell",
      [](const std::string& z, long p, long q, const std::string& side, long bits, int digits) {
        const PrecisionContext ctx(bits);
        const Flattening f = ell(CoverPoint(parse_complex(z, bits), p, q, side_of(side)), ctx);
        return std::vector<CPair>{split(f.w0, digits), split(f.w1, digits), split(f.w2, digits)};
      },
      py::arg("z"), py::arg("p") = 0, py::arg("q") = 0, py::arg("side") = "", py::arg("bits") = kDefaultBits,
      py::arg("digits") = 30);

  m.def(
      "ell_inverse",
      [](const std::string& w0, const std::string& w1, const std::string& w2, long bits, int digits) {
        const PrecisionContext ctx(bits);
        const long wide = bits + 64;
        const CoverPoint pt =
            ell_inverse(Flattening{parse_complex(w0, wide), parse_complex(w1, wide), parse_complex(w2, wide)}, ctx);
        return py::make_tuple(split(pt.z(), digits), pt.p(), pt.q(), side_name(pt.side()));
      },
      py::arg("w0"), py::arg("w1"), py::arg("w2"), py::arg("bits") = kDefaultBits, py::arg("digits") = 30);

  m.def(
      "flattened_sum",
      [](const std::string& text, long bits, long maxden, int digits) {
        const PrecisionContext ctx(bits);
        const FlattenedSum s = parse_flattened_sum(text, bits);
        const Complex r = rogers_lifted(s, ctx);
        py::dict d;
        d["rogers"] = split(reduce_mod_pi2(r, ctx), digits);
        d["rogers_residual"] = sci(distance_mod_pi2(r, ctx));
        d["dehn_zero"] = wedge_reduce(ext_dehn(s, ctx), ctx, maxden).is_zero();
        return d;
      },
      py::arg("text"), py::arg("bits") = kDefaultBits, py::arg("maxden") = kDefaultMaxden, py::arg("digits") = 30);

  m.def("builtin_class_names", &builtin_class_names);
  m.def("builtin_class_text", &builtin_class_text, py::arg("name"));

  m.def(
      "borel_regulator",
      [](const std::string& text, long bits, int digits) {
        const PrecisionContext ctx(bits);
        const auto names = builtin_class_names();
        const bool builtin = std::find(names.begin(), names.end(), text) != names.end();
        const FormalSum s = builtin ? builtin_class(text) : parse_formal_sum(text, bits);
        std::vector<std::string> out;
        for (const auto& v : borel_regulator(s, ctx).values) out.push_back(v.to_fixed(digits));
        return out;
      },
      py::arg("cls"), py::arg("bits") = kDefaultBits, py::arg("digits") = 30);

  m.def(
      "volume",
      [](const std::string& text, long bits, int digits) {
        const PrecisionContext ctx(bits);
        return volume(parse_formal_sum(text, bits), ctx).to_fixed(digits);
      },
      py::arg("text"), py::arg("bits") = kDefaultBits, py::arg("digits") = 30);

  m.def(
      "gromov_upper_bound",
      [](const std::string& text, long k) { return format_rational(gromov_upper_bound(parse_formal_sum(text, 64), k)); },
      py::arg("text"), py::arg("k") = 1);

  m.def(
      "find_relation",
      [](const std::vector<std::string>& xs, const std::string& bound, long bits,
         const std::optional<std::string>& tolerance) {
        const PrecisionContext ctx(bits);
        std::vector<Real> vals;
        for (const auto& x : xs) vals.push_back(parse_real(x, bits));
        std::optional<Real> tol;
        if (tolerance) tol = parse_real(*tolerance, bits);
        const auto r = find_relation(vals, ctx, mpz_class(bound), tol);
        py::dict d = relation_dict(r.status, r.detail);
        if (r.relation) {
          std::vector<std::string> c;
          for (const auto& v : r.relation->coeffs) c.push_back(v.get_str());
          d["coeffs"] = c;
          d["residual"] = sci(r.relation->residual);
        }
        return d;
      },
      py::arg("xs"), py::arg("bound") = "1000000", py::arg("bits") = kDefaultBits,
      py::arg("tolerance") = py::none());

  m.def(
      "volume_combination_search",
      [](const std::string& target, const std::vector<std::string>& basis, long maxden, long bits,
         const std::optional<std::string>& tolerance) {
        const PrecisionContext ctx(bits);
        std::vector<Real> vals;
        for (const auto& b : basis) vals.push_back(parse_real(b, bits));
        std::optional<Real> tol;
        if (tolerance) tol = parse_real(*tolerance, bits);
        const auto r = volume_combination_search(parse_real(target, bits), vals, maxden, ctx, tol);
        py::dict d = relation_dict(r.status, r.detail);
        if (r.combination) {
          std::vector<std::string> c;
          for (const auto& v : r.combination->coeffs) c.push_back(format_rational(v));
          d["coeffs"] = c;
          d["residual"] = sci(r.combination->residual);
        }
        return d;
      },
      py::arg("target"), py::arg("basis"), py::arg("maxden") = kDefaultMaxden, py::arg("bits") = kDefaultBits,
      py::arg("tolerance") = py::none());

  m.def("literal_uncertainty", [](const std::string& s) { return format_rational(literal_uncertainty(s)); },
        py::arg("literal"));

  m.def(
      "report",
      [](const std::string& text, long bits, long maxden, int digits) {
        const PrecisionContext ctx(bits);
        const Report r = invariants_report(load_triangulation(text, bits), ctx, maxden);
        py::dict d;
        d["volume"] = r.volume.to_fixed(digits);
        std::vector<std::string> angles, flats;
        for (const auto& a : r.angle_residuals) angles.push_back(sci(a));
        for (const auto& f : r.flattening_residuals) flats.push_back(sci(abs(f)));
        d["angle_residuals"] = angles;
        d["flattening_residuals"] = flats;
        d["dehn_zero"] = r.dehn_zero;
        d["dehn_certificate"] = r.dehn_certificate;
        d["cs"] = r.cs ? py::cast(r.cs->to_fixed(digits)) : py::none();
        return d;
      },
      py::arg("text"), py::arg("bits") = kDefaultBits, py::arg("maxden") = kDefaultMaxden, py::arg("digits") = 30);

  m.def("figure_eight_text", &figure_eight_text);
}
