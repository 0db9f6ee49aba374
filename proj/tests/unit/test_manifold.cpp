#include <fstream>
#include <regex>
#include <sstream>

#include "oracle.hpp"
#include "scissors/errors.hpp"
#include "scissors/manifold.hpp"
#include "support.hpp"

using namespace scissors;
using test::ctx;
using test::tol;

namespace {

std::string fixture(const std::string& name) {
  std::ifstream in(std::string(SCISSORS_FIXTURE_DIR) + "/" + name);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Triangulation load(const std::string& text) { return load_triangulation(text, ctx().bits()); }

const Real& regular_volume() {
  static const Real v = oracle::clausen_quadrature(Real::pi(ctx().bits()) / 3, ctx().bits());
  return v;
}

Real pi2() { return ctx().pi_squared().with_precision(ctx().bits()); }

// Figure-eight text with the given flattening integers.
std::string figure_eight_with(long p0, long q0, long p1, long q1) {
  std::string t = figure_eight_text();
  t = std::regex_replace(t, std::regex(R"(tet 0: (.*) flat=\(0,-1\))"),
                         "tet 0: $1 flat=(" + std::to_string(p0) + "," + std::to_string(q0) + ")");
  t = std::regex_replace(t, std::regex(R"(tet 1: (.*) flat=\(0,-1\))"),
                         "tet 1: $1 flat=(" + std::to_string(p1) + "," + std::to_string(q1) + ")");
  return t;
}

bool flattening_passes(const Triangulation& t) {
  for (const auto& r : check_flattening(t, ctx()))
    if (abs(r) > tol(64)) return false;
  return true;
}

long pi_i_multiple(const Complex& v) {
  CHECK(abs(v.re) <= tol(64));
  return (v.im / Real::pi(ctx().bits())).round().get_si();
}

}  // namespace

TEST_CASE("bundled fixture text") {
  CHECK(fixture("figure8.tri") == figure_eight_text());
  const Triangulation t = load(figure_eight_text());
  CHECK(!t.field);
  REQUIRE(t.tets.size() == 2);
  REQUIRE(t.edges.size() == 2);
  for (const auto& e : t.edges) CHECK(e.size() == 6);
  REQUIRE(t.tets[0].flattening);
  CHECK(t.tets[0].flattening->p == 0);
  CHECK(t.tets[0].flattening->q == -1);
  CHECK(t.tets[0].line == 3);
}

TEST_CASE("load errors carry line numbers") {
  const std::string head = "field: none\ntet 0: shape=2+i\n";
  auto line_of = [](const std::string& text) -> std::size_t {
    try {
      load(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return 0;
  };
  const std::string all = "edge: (0,01) (0,02) (0,03) (0,12) (0,13) (0,23)\n";
  CHECK_NOTHROW(load(head + all));
  // slot used twice
  CHECK(line_of(head + "edge: (0,01) (0,02) (0,03)\nedge: (0,12) (0,13) (0,23) (0,01)\n") == 4);
  try {
    load(head + "edge: (0,01) (0,02) (0,03)\nedge: (0,12) (0,13) (0,23) (0,01)\n");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("already used on line 3") != std::string::npos);
  }
  // slot missing: reported on the tet line
  CHECK(line_of(head + "edge: (0,01) (0,02) (0,03) (0,12) (0,13)\n") == 2);
  CHECK(line_of(head + "edge: (0,01) (0,02) (0,03) (0,12) (0,13) (0,32)\n") == 3);
  CHECK(line_of(head + "edge: (1,01)\n" + all) == 3);
  CHECK(line_of("tet 1: shape=2+i\n" + all) == 1);
  CHECK(line_of(head + "tet 0: shape=3\n") == 3);
  CHECK(line_of("tet 0: shape=1\n") == 1);
  CHECK(line_of("tet 0: shape=-2 flat=(0,0)\n") == 1);  // real shape on a cut needs a side
  CHECK(line_of(head + "bogus\n") == 3);
  CHECK(line_of("tet 0: shape=2+i\nfield: none\n") == 2);
  CHECK_NOTHROW(load("tet 0: shape=-2 flat=(0,0),-0i\n" + all));
}

TEST_CASE("empty triangulation") {
  const Triangulation t = load("# nothing\nfield: none\n");
  CHECK(t.tets.empty());
  CHECK(check_angles(t, ctx()).empty());
  CHECK(check_flattening(t, ctx()).empty());
  const Report r = invariants_report(t, ctx());
  CHECK(r.volume.is_zero());
  CHECK(r.beta.empty());
  CHECK(r.dehn_zero);
  REQUIRE(r.cs);
  CHECK(r.cs->is_zero());
}

TEST_CASE("angle residuals") {
  for (const auto& r : check_angles(load(figure_eight_text()), ctx())) CHECK(abs(r) <= tol(16));

  const Complex z = test::cx("0.3+0.8i");
  const Triangulation one = load("tet 0: shape=0.3+0.8i\nedge: (0,01) (0,23)\nedge: (0,03) (0,12)\nedge: (0,02) (0,13)\n");
  const auto res = check_angles(one, ctx());
  REQUIRE(res.size() == 3);
  const Real two_pi = Real::pi(ctx().bits()) * 2;
  const Complex one_c(ctx().bits(), 1);
  CHECK_NEAR(res[0], arg(z) * 2 - two_pi, tol(8));
  CHECK_NEAR(res[1], arg(inverse(one_c - z)) * 2 - two_pi, tol(8));
  CHECK_NEAR(res[2], arg(one_c - inverse(z)) * 2 - two_pi, tol(8));
  CHECK(abs(res[0]) > 1);
}

TEST_CASE("flattening residuals") {
  const auto res = check_flattening(load(figure_eight_text()), ctx());
  REQUIRE(res.size() == 2);
  for (const auto& r : res) {
    CHECK(pi_i_multiple(r) == 0);
    CHECK(abs(r) <= tol(16));
  }

  const auto bumped = check_flattening(load(figure_eight_with(1, -1, 0, -1)), ctx());
  bool some = false;
  for (const auto& r : bumped) {
    const long k = pi_i_multiple(r);
    CHECK(std::abs(k) <= 2);
    some |= k != 0;
  }
  CHECK(some);
  CHECK_THROWS_AS(check_flattening(load("tet 0: shape=2+i\nedge: (0,01) (0,02) (0,03) (0,12) (0,13) (0,23)\n"), ctx()),
                  ValidationError);
}

TEST_CASE("exhaustive flattening search on the figure-eight") {
  std::vector<std::array<long, 4>> passing;
  for (long p0 = -2; p0 <= 2; ++p0)
    for (long q0 = -2; q0 <= 2; ++q0)
      for (long p1 = -2; p1 <= 2; ++p1)
        for (long q1 = -2; q1 <= 2; ++q1)
          if (flattening_passes(load(figure_eight_with(p0, q0, p1, q1)))) passing.push_back({p0, q0, p1, q1});
  REQUIRE(!passing.empty());
  CHECK(std::find(passing.begin(), passing.end(), std::array<long, 4>{0, -1, 0, -1}) != passing.end());

  const Report ref = invariants_report(load(figure_eight_text()), ctx());
  const Real sixth = pi2() / 6;
  for (const auto& f : passing) {
    const Report r = invariants_report(load(figure_eight_with(f[0], f[1], f[2], f[3])), ctx());
    CHECK_NEAR(r.volume, ref.volume, tol(8));
    CHECK(distance_to_multiple(*r.cs - *ref.cs, sixth) <= tol(64));
  }
}

TEST_CASE("figure-eight invariants") {
  const Report r = invariants_report(load(figure_eight_text()), ctx());
  CHECK_NEAR(r.volume, regular_volume() * 2, tol(16));
  CHECK(r.volume.to_fixed(15) == "2.029883212819307");
  CHECK(r.dehn_zero);
  REQUIRE(r.cs);
  CHECK(distance_to_multiple(*r.cs, pi2() / 6) <= tol(64));
  REQUIRE(r.rogers_sum);
  CHECK_NEAR(r.rogers_sum->im, r.volume, tol(16));
  CHECK(r.beta.terms().size() == 1);
  CHECK(r.beta.terms()[0].coeff == 2);

  const Report f = invariants_report(load(fixture("figure8_field.tri")), ctx());
  CHECK_NEAR(f.volume, r.volume, tol(16));
  CHECK_NEAR(*f.cs, *r.cs, tol(64));
  CHECK(f.dehn_zero);
}

TEST_CASE("disjoint union doubles volume and cs") {
  const Report one = invariants_report(load(figure_eight_text()), ctx());
  const Report two = invariants_report(load(fixture("figure8_double.tri")), ctx());
  CHECK_NEAR(two.volume, one.volume * 2, tol(16));
  CHECK(distance_to_multiple(*two.cs - *one.cs * 2, pi2()) <= tol(64));
}

TEST_CASE("orientation reversal negates volume and cs") {
  const Report one = invariants_report(load(figure_eight_text()), ctx());
  const Report mirror = invariants_report(load(fixture("figure8_mirror.tri")), ctx());
  CHECK_NEAR(mirror.volume, -one.volume, tol(16));
  CHECK(distance_to_multiple(*mirror.cs + *one.cs, pi2()) <= tol(64));
  for (const auto& r : check_flattening(load(fixture("figure8_mirror.tri")), ctx())) CHECK(abs(r) <= tol(16));
  // Negatively oriented: each edge sees six angles of -pi/3.
  const Real four_pi = Real::pi(ctx().bits()) * 4;
  for (const auto& r : check_angles(load(fixture("figure8_mirror.tri")), ctx())) CHECK_NEAR(r, -four_pi, tol(16));
  CHECK(mirror.dehn_zero);
}

TEST_CASE("angle condition implies vanishing Dehn invariant on every fixture") {
  for (const char* name : {"figure8.tri", "figure8_field.tri", "figure8_double.tri"}) {
    CAPTURE(name);
    const Triangulation t = load(fixture(name));
    bool angles_ok = true;
    for (const auto& r : check_angles(t, ctx())) angles_ok &= abs(r) <= tol(64);
    CHECK(angles_ok);
    if (angles_ok) CHECK(invariants_report(t, ctx()).dehn_zero);
  }
}
