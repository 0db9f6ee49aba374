#include <algorithm>
#include <set>

#include "oracle.hpp"
#include "scissors/bloch.hpp"
#include "scissors/errors.hpp"
#include "support.hpp"

using namespace scissors;
using test::ctx;
using test::cx;
using test::tol;

namespace {

FormalSum single(const Complex& z, const mpq_class& c = 1) {
  FormalSum s;
  s.add(z, c);
  return s;
}

bool dehn_zero(const FormalSum& s) { return wedge_reduce(complex_dehn(s, ctx()), ctx()).is_zero(); }

bool tensor_equal(const TensorElem& a, const TensorElem& b) {
  return tensor_reduce(a + b * mpq_class(-1), ctx()).is_zero();
}

const Real& regular_volume() {
  static const Real v = oracle::clausen_quadrature(Real::pi(ctx().bits()) / 3, ctx().bits());
  return v;
}

}  // namespace

TEST_CASE("cross ratio") {
  const long b = ctx().bits();
  auto pt = [&](long v) { return ProjectivePoint(Complex(b, v)); };
  CHECK_NEAR(cross_ratio(pt(0), pt(1), pt(2), pt(3), ctx()), cx("3/4"), tol(1));

  const Complex w = cx("0.3+0.7i");
  const Complex at_inf = cross_ratio(pt(0), std::nullopt, pt(1), w, ctx());
  CHECK_NEAR(at_inf, w, tol(2));
  // The finite formula with z2 = M approaches the infinite one like 1/M.
  Real prev(b, 1000);
  for (long e = 10; e <= 60; e += 10) {
    const Complex m(Real::pow2(e, b), Real(b));
    const Real d = abs(cross_ratio(pt(0), m, pt(1), w, ctx()) - at_inf);
    CHECK(d < prev);
    CHECK(d < Real::pow2(2 - e, b));
    prev = d;
  }

  auto g = test::rng(51);
  for (int k = 0; k < 20; ++k) {
    const Complex a = oracle::random_complex(g, -2, 2, b), c = oracle::random_complex(g, -2, 2, b),
                  d = oracle::random_complex(g, -2, 2, b), e = oracle::random_complex(g, -2, 2, b);
    const Complex base = cross_ratio(a, c, d, e, ctx());
    CHECK_NEAR(cross_ratio(c, a, e, d, ctx()), base, tol(64));
    CHECK_NEAR(cross_ratio(d, e, a, c, ctx()), base, tol(64));
  }
  CHECK_THROWS_AS(cross_ratio(pt(0), pt(0), pt(1), pt(2), ctx()), DegenerateError);
  CHECK_THROWS_AS(cross_ratio(std::nullopt, std::nullopt, pt(1), pt(2), ctx()), DegenerateError);
}

TEST_CASE("six-fold orbits") {
  const auto m1 = six_fold(cx("-1"), ctx());
  REQUIRE(m1.size() == 6);
  const std::vector<std::pair<const char*, int>> expect{{"-1", 1}, {"2", 1}, {"1/2", 1}, {"-1", -1}, {"1/2", -1}, {"2", -1}};
  for (std::size_t k = 0; k < 6; ++k) {
    CHECK_NEAR(m1[k].value, cx(expect[k].first), tol(1));
    CHECK(m1[k].sign == expect[k].second);
  }

  // The orbit of i is closed: every member generates the same six values.
  const auto orbit = six_fold(cx("i"), ctx());
  for (const auto& member : orbit) {
    const auto again = six_fold(member.value, ctx());
    for (const auto& v : again) {
      const bool found = std::any_of(orbit.begin(), orbit.end(),
                                     [&](const SignedParameter& o) { return abs(o.value - v.value) <= tol(8); });
      CHECK(found);
    }
  }
  CHECK_THROWS_AS(six_fold(cx("1"), ctx()), DomainError);
}

TEST_CASE("six-fold relations have zero volume and zero Dehn invariant") {
  auto g = test::rng(52);
  for (int k = 0; k < 40; ++k) {
    const Complex z = oracle::random_complex(g, -2.5, 2.5, ctx().bits());
    for (const auto& v : six_fold(z, ctx())) {
      FormalSum s = single(z);
      s.add(v.value, -v.sign);
      CHECK(abs(volume(s, ctx())) <= tol(16));
      CHECK(dehn_zero(s));
    }
  }
}

TEST_CASE("five-term instances") {
  const Complex x = cx("0.3+0.4i"), y = cx("0.2+0.9i");
  const FormalSum s = five_term_instance(x, y, ctx());
  CHECK(s.terms().size() == 5);
  CHECK(abs(volume(s, ctx())) <= tol(32));
  CHECK(dehn_zero(s));

  CHECK_THROWS_WITH_AS(five_term_instance(x, x, ctx()), doctest::Contains("y/x"), DegenerateError);
  CHECK_THROWS_WITH_AS(five_term_instance(cx("1"), y, ctx()), doctest::Contains("x"), DegenerateError);

  auto g = test::rng(53);
  for (int k = 0; k < 30; ++k) {
    const auto [a, b] = oracle::random_admissible_pair(g, ctx().bits());
    CHECK(dehn_zero(five_term_instance(a, b, ctx())));
  }
}

TEST_CASE("five-term instance over a number field") {
  const auto k = NumberField::parse("x^4+x^2-x+1");
  const FieldElem t = k.generator();
  const FormalSum s = five_term_instance(t, t * t + k.from_rational(1));
  REQUIRE(s.field());
  for (const auto& e : k.complex_embeddings()) {
    CHECK(abs(volume(s, ctx(), e)) <= tol(32));
    CHECK(wedge_reduce(complex_dehn(s, ctx(), e), ctx()).is_zero());
  }
}

TEST_CASE("complex Dehn invariant examples") {
  CHECK(dehn_zero(single(cx("1/2"))));
  auto g = test::rng(54);
  for (int k = 0; k < 20; ++k) {
    const Complex z = oracle::random_complex(g, -2, 2, ctx().bits());
    FormalSum s = single(z);
    s.add(1 - z, 1);
    CHECK(dehn_zero(s));
    CHECK_FALSE(dehn_zero(single(z)));
  }
}

TEST_CASE("complex Dehn invariant is additive") {
  auto g = test::rng(55);
  for (int k = 0; k < 20; ++k) {
    FormalSum s, t;
    for (int j = 0; j < 3; ++j) {
      s.add(oracle::random_complex(g, -2, 2, ctx().bits()), mpq_class(j + 1, 2));
      t.add(oracle::random_complex(g, -2, 2, ctx().bits()), -j - 1);
    }
    CHECK(wedge_equal(complex_dehn(s + t, ctx()), complex_dehn(s, ctx()) + complex_dehn(t, ctx()), ctx()));
    CHECK(wedge_equal(complex_dehn(s * mpq_class(3, 4), ctx()), complex_dehn(s, ctx()) * mpq_class(3, 4), ctx()));
  }
}

TEST_CASE("wedge reduction examples") {
  const long b = ctx().bits();
  const Complex two(b, 2), four(b, 4), three(b, 3);
  WedgeElem w;
  w.add(two, three, 1);
  w.add(three, two, 1);
  CHECK(wedge_reduce(w, ctx()).is_zero());

  WedgeElem v;
  v.add(four, two, 1);
  v.add(two, two, -2);
  CHECK(wedge_reduce(v, ctx()).is_zero());

  WedgeElem u;
  u.add(two, three, 1);
  CHECK_FALSE(wedge_reduce(u, ctx()).is_zero());
  WedgeElem u6;
  u6.add(four, Complex(b, 9), 1);  // 4 (2 ^ 3)
  CHECK(wedge_equal(u6, u * mpq_class(4), ctx()));
  // Roots of unity are torsion.
  WedgeElem r;
  r.add(Complex(b, -1), three, 1);
  r.add(cx("exp(2*pi*i/5)"), two, 1);
  CHECK(wedge_reduce(r, ctx()).is_zero());
}

TEST_CASE("decomposition of the complex Dehn invariant") {
  auto g = test::rng(56);
  for (int k = 0; k < 100; ++k) {
    const Complex z = oracle::random_complex(g, -2.5, 2.5, ctx().bits());
    if (z.im.is_zero()) continue;
    const WedgeParts parts = decompose_wedge(complex_dehn(single(z), ctx()), ctx());
    CHECK(tensor_equal(parts.mixed * mpq_class(2), ideal_tet_dehn(z, ctx())));

    FormalSum pair = single(z);
    pair.add(conj(z), 1);
    const WedgeParts pp = decompose_wedge(complex_dehn(pair, ctx()), ctx());
    CHECK(tensor_reduce(pp.mixed, ctx()).is_zero());
  }
  const WedgeParts reg = decompose_wedge(complex_dehn(single(cx("exp(i*pi/3)")), ctx()), ctx());
  CHECK(tensor_reduce(reg.mixed, ctx()).is_zero());
  WedgeElem diag;
  diag.add(cx("1/2"), cx("1/4"), 1);
  CHECK(wedge_reduce(decompose_wedge(diag, ctx()).rr, ctx()).is_zero());
}

TEST_CASE("volume") {
  const Complex w = cx("exp(i*pi/3)");
  CHECK_NEAR(volume(single(w), ctx()), regular_volume(), tol(8));
  auto g = test::rng(57);
  for (int k = 0; k < 20; ++k) {
    const Complex z = oracle::random_complex(g, -2, 2, ctx().bits());
    FormalSum s = single(z);
    s.add(conj(z), 1);
    CHECK(abs(volume(s, ctx())) <= tol(4));
  }
  CHECK(volume(FormalSum(), ctx()).is_zero());
}

TEST_CASE("Gromov upper bound") {
  const Complex w = cx("exp(i*pi/3)");
  CHECK(gromov_upper_bound(single(w), 1) == 1);
  CHECK(gromov_upper_bound(single(cx("i"), mpq_class(1, 2)), 2) == mpq_class(1, 2));
  CHECK_THROWS_AS(gromov_upper_bound(single(cx("i"), mpq_class(1, 2)), 1), ValidationError);
  CHECK_THROWS_AS(gromov_upper_bound(single(cx("i")), 0), ValidationError);

  auto g = test::rng(58);
  std::uniform_int_distribution<long> n(-5, 5), len(1, 6);
  for (int k = 0; k < 100; ++k) {
    FormalSum s;
    const long m = len(g);
    for (long j = 0; j < m; ++j) s.add(oracle::random_complex(g, -3, 3, ctx().bits()), n(g));
    CHECK(abs(volume(s, ctx())) <= regular_volume() * gromov_upper_bound(s, 1) + tol(16));
  }
}

TEST_CASE("formal sum arithmetic") {
  FormalSum s;
  s.add(cx("i"), 1);
  s.add(cx("i"), mpq_class(1, 2));
  REQUIRE(s.terms().size() == 1);
  CHECK(s.terms()[0].coeff == mpq_class(3, 2));
  s.add(cx("i"), mpq_class(-3, 2));
  CHECK(s.empty());
  CHECK_THROWS_AS(s.add(cx("0"), 1), DomainError);
  CHECK_THROWS_AS(s.add(cx("1"), 1), DomainError);
  const auto k = NumberField::parse("x^2+1");
  CHECK_THROWS_AS(s.add(k.generator(), 1), ValidationError);
  FormalSum f(k);
  CHECK_THROWS_AS(f.add(cx("i"), 1), ValidationError);
  CHECK_THROWS_AS(f.add(k.from_rational(1), 1), DomainError);
}

TEST_CASE("formal sum text") {
  const FormalSum s = parse_formal_sum("# comment\n-1/2 * [0.3+0.4i]\n[exp(i*pi/3)]\n2*[2]\n", ctx().bits());
  REQUIRE(s.terms().size() == 3);
  CHECK(s.terms()[0].coeff == mpq_class(-1, 2));
  CHECK(s.terms()[1].coeff == 1);
  CHECK_NEAR(std::get<Complex>(s.terms()[2].param), cx("2"), tol(1));

  const FormalSum f = parse_formal_sum("field: x^4+x^2-x+1\n2 * [[1/2, 0, -1/2, -1/2]]\n", ctx().bits());
  REQUIRE(f.field());
  CHECK(f.field()->degree() == 4);
  CHECK(std::get<FieldElem>(f.terms()[0].param).coeffs()[0] == mpq_class(1, 2));

  try {
    parse_formal_sum("[0.5]\n\n3 * 0.5\n", ctx().bits());
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  try {
    parse_formal_sum("[0.5]\n[1]\n", ctx().bits());
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(parse_formal_sum("[0.5]\nfield: x^2+1\n", ctx().bits()), ParseError);
}
