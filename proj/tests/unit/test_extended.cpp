#include <map>
#include <set>

#include "oracle.hpp"
#include "scissors/bloch.hpp"
#include "scissors/errors.hpp"
#include "scissors/extended.hpp"
#include "support.hpp"

using namespace scissors;
using test::ctx;
using test::cx;
using test::tol;

namespace {

Complex pi_i(long k = 1) { return Complex(Real(ctx().bits()), Real::pi(ctx().bits()) * k); }

CoverPoint random_point(std::mt19937_64& g) { return oracle::random_cover_point(g, ctx().bits()); }

FlattenedSum alternating(const std::array<CoverPoint, 5>& pts) {
  FlattenedSum s;
  for (int i = 0; i < 5; ++i) s.add(pts[i], i % 2 ? -1 : 1);
  return s;
}

// Integer coefficient of pi i in a sum that should be a multiple of it.
long pi_i_multiple(const Complex& v) {
  const Real k = v.im / Real::pi(ctx().bits());
  const mpz_class r = k.round();
  CHECK(abs(v.re) <= tol(64));
  CHECK(abs(k - Real::from_integer(r, ctx().bits())) <= tol(64));
  return r.get_si();
}

std::array<CoverPoint, 5> shifted(const std::array<CoverPoint, 5>& pts, const std::array<long, 10>& d) {
  return {CoverPoint(pts[0].z(), pts[0].p() + d[0], pts[0].q() + d[1]),
          CoverPoint(pts[1].z(), pts[1].p() + d[2], pts[1].q() + d[3]),
          CoverPoint(pts[2].z(), pts[2].p() + d[4], pts[2].q() + d[5]),
          CoverPoint(pts[3].z(), pts[3].p() + d[6], pts[3].q() + d[7]),
          CoverPoint(pts[4].z(), pts[4].p() + d[8], pts[4].q() + d[9])};
}

}  // namespace

TEST_CASE("cover point validation and canonical side") {
  const long b = ctx().bits();
  CHECK_THROWS_AS(CoverPoint(Complex(b), 0, 0), DomainError);
  CHECK_THROWS_AS(CoverPoint(Complex(b, 1), 0, 0), DomainError);
  CHECK_THROWS_AS(CoverPoint(cx("-2"), 0, 0), ValidationError);
  CHECK_THROWS_AS(CoverPoint(cx("3"), 0, 0), ValidationError);
  CHECK_THROWS_AS(CoverPoint(cx("1/2"), 0, 0, Side::upper), ValidationError);
  CHECK_THROWS_AS(CoverPoint(cx("i"), 0, 0, Side::lower), ValidationError);

  const CoverPoint neg(cx("-3"), 1, 4, Side::lower);
  CHECK(neg.side() == Side::upper);
  CHECK(neg.p() == -1);
  CHECK(neg.q() == 4);
  const CoverPoint big(cx("3"), 1, 4, Side::lower);
  CHECK(big.p() == 1);
  CHECK(big.q() == 2);
  CHECK(neg.component() == std::pair<int, int>{1, 0});
  CHECK(CoverPoint(cx("3"), 1, 4, Side::lower) == CoverPoint(cx("3"), 1, 2, Side::upper));
  CHECK(on_cut(cx("-1")));
  CHECK_FALSE(on_cut(cx("1/2")));
  CHECK_FALSE(on_cut(cx("2+i")));
}

TEST_CASE("flattening map") {
  const long b = ctx().bits();
  const Real l2 = log(Real(b, 2));
  const Flattening f = ell(CoverPoint(cx("1/2"), 0, 0), ctx());
  CHECK_NEAR(f.w0, Complex(-l2), tol(1));
  CHECK_NEAR(f.w1, Complex(l2), tol(1));
  CHECK_NEAR(f.w2, Complex(Real(b)), tol(1));
  CHECK(ell_inverse(f, ctx()) == CoverPoint(cx("1/2"), 0, 0));

  Flattening bad = f;
  bad.w0 += pi_i();
  CHECK_THROWS_AS(ell_inverse(bad, ctx()), ValidationError);
  // Shifting w1 back restores w0 + w1 + w2 = 0: another sheet over 1/2.
  bad.w1 -= pi_i();
  CHECK(ell_inverse(bad, ctx()) == CoverPoint(cx("1/2"), 1, -1));
  // Half-integer shifts keep the sum zero but are no log branch.
  const Complex half_turn(Real(b), Real::pi(b) / 2);
  bad.w0 += half_turn;
  bad.w2 -= half_turn;
  CHECK_THROWS_AS(ell_inverse(bad, ctx()), ValidationError);

  auto g = test::rng(61);
  for (int k = 0; k < 1000; ++k) {
    const CoverPoint pt = random_point(g);
    const Flattening e = ell(pt, ctx());
    CHECK(abs(e.w0 + e.w1 + e.w2) <= tol(1));
    const Flattening e0 = ell(CoverPoint(pt.z(), 0, pt.q(), pt.side()), ctx());
    CHECK_NEAR(e.w0 - e0.w0, pi_i(pt.p()), tol(16));
  }
}

TEST_CASE("ell and ell_inverse are mutually inverse") {
  auto g = test::rng(62);
  for (int k = 0; k < 1000; ++k) {
    const CoverPoint pt = random_point(g);
    CAPTURE(pt.to_string(10));
    const Flattening f = ell(pt, ctx());
    const CoverPoint back = ell_inverse(f, ctx());
    CHECK(back == pt);
    const Flattening again = ell(back, ctx());
    CHECK(again.w0 == f.w0);
    CHECK(again.w1 == f.w1);
    CHECK(again.w2 == f.w2);
  }
}

TEST_CASE("five-term configuration") {
  const auto e = configuration_edges();
  CHECK(e.front() == std::pair<int, int>{0, 1});
  CHECK(e.back() == std::pair<int, int>{3, 4});
  const auto ps = five_term_parameters(cx("0.4+0.3i"), cx("0.3+0.8i"), ctx());
  CHECK_NEAR(ps[2], cx("0.3+0.8i") / cx("0.4+0.3i"), tol(4));
}

TEST_CASE("lifted five-term family") {
  const Complex x = cx("0.4+0.3i"), y = cx("0.3+0.8i");
  const auto zero = lifted_five_term_family(x, y, 0, 0, 0, 0, 0, ctx());
  for (const auto& pt : zero) {
    CHECK(pt.p() == 0);
    CHECK(pt.q() == 0);
  }
  for (const auto& s : edge_sums(zero, ctx())) CHECK(abs(s) <= tol(16));
  CHECK(is_lifted_five_term(zero, ctx()));
  CHECK_THROWS_AS(lifted_five_term_family(y, x, 0, 0, 0, 0, 0, ctx()), ValidationError);

  auto g = test::rng(63);
  std::uniform_int_distribution<long> free(-5, 5), which(0, 9), delta(1, 3);
  for (int k = 0; k < 60; ++k) {
    const auto [a, b] = oracle::random_admissible_pair(g, ctx().bits());
    const auto pts = lifted_five_term_family(a, b, free(g), free(g), free(g), free(g), free(g), ctx());
    for (const auto& s : edge_sums(pts, ctx())) CHECK(abs(s) <= tol(64));
    const FlattenedSum alt = alternating(pts);
    CHECK(distance_mod_pi2(rogers_lifted(alt, ctx()), ctx()) <= tol(64));
    CHECK(wedge_reduce(ext_dehn(alt, ctx()), ctx()).is_zero());

    std::array<long, 10> d{};
    d[which(g)] = free(g) < 0 ? -delta(g) : delta(g);
    const auto bad = shifted(pts, d);
    CHECK_FALSE(is_lifted_five_term(bad, ctx()));
    bool nonzero = false;
    for (const auto& s : edge_sums(bad, ctx())) nonzero |= pi_i_multiple(s) != 0;
    CHECK(nonzero);
    CHECK(distance_mod_pi2(rogers_lifted(alternating(bad), ctx()), ctx()) > Real::pow2(-20, ctx().bits()));
  }
}

TEST_CASE("flattening solutions in a box match the closed-form family") {
  const Complex x = cx("0.35+0.25i"), y = cx("0.2+0.9i");
  const auto base = lifted_five_term_family(x, y, 0, 0, 0, 0, 0, ctx());
  // Column j of A: edge sums (in units of pi i) for a unit shift of unknown j.
  std::array<std::array<long, 10>, 10> a{};
  for (int j = 0; j < 10; ++j) {
    std::array<long, 10> d{};
    d[j] = 1;
    const auto sums = edge_sums(shifted(base, d), ctx());
    for (int r = 0; r < 10; ++r) a[r][j] = pi_i_multiple(sums[r]);
  }

  // Rank over Q.
  std::vector<std::vector<mpq_class>> m(10, std::vector<mpq_class>(10));
  for (int r = 0; r < 10; ++r)
    for (int c = 0; c < 10; ++c) m[r][c] = a[r][c];
  int rank = 0;
  for (int c = 0; c < 10 && rank < 10; ++c) {
    int piv = -1;
    for (int r = rank; r < 10; ++r)
      if (m[r][c] != 0) piv = r;
    if (piv < 0) continue;
    std::swap(m[piv], m[rank]);
    for (int r = 0; r < 10; ++r)
      if (r != rank && m[r][c] != 0) {
        const mpq_class f = m[r][c] / m[rank][c];
        for (int k = 0; k < 10; ++k) m[r][k] -= f * m[rank][k];
      }
    ++rank;
  }
  CHECK(rank == 5);

  // Meet in the middle over [-2, 2]^10: A v = 0 with v = (u, w).
  using Half = std::array<long, 5>;
  auto halves = [](auto&& fn) {
    Half h;
    for (long i0 = -2; i0 <= 2; ++i0)
      for (long i1 = -2; i1 <= 2; ++i1)
        for (long i2 = -2; i2 <= 2; ++i2)
          for (long i3 = -2; i3 <= 2; ++i3)
            for (long i4 = -2; i4 <= 2; ++i4) {
              h = {i0, i1, i2, i3, i4};
              fn(h);
            }
  };
  std::map<std::array<long, 10>, std::vector<Half>> left;
  halves([&](const Half& u) {
    std::array<long, 10> img{};
    for (int r = 0; r < 10; ++r)
      for (int c = 0; c < 5; ++c) img[r] += a[r][c] * u[c];
    left[img].push_back(u);
  });
  std::set<std::array<long, 10>> solutions;
  halves([&](const Half& w) {
    std::array<long, 10> img{};
    for (int r = 0; r < 10; ++r) {
      for (int c = 0; c < 5; ++c) img[r] -= a[r][c + 5] * w[c];
    }
    const auto it = left.find(img);
    if (it == left.end()) return;
    for (const auto& u : it->second) {
      std::array<long, 10> v{};
      for (int c = 0; c < 5; ++c) {
        v[c] = u[c];
        v[c + 5] = w[c];
      }
      solutions.insert(v);
    }
  });

  std::set<std::array<long, 10>> family;
  for (long p0 = -2; p0 <= 2; ++p0)
    for (long p1 = -2; p1 <= 2; ++p1)
      for (long q0 = -2; q0 <= 2; ++q0)
        for (long q1 = -2; q1 <= 2; ++q1)
          for (long q2 = -2; q2 <= 2; ++q2) {
            const auto pts = lifted_five_term_family(x, y, p0, p1, q0, q1, q2, ctx());
            std::array<long, 10> v{};
            bool inside = true;
            for (int i = 0; i < 5; ++i) {
              v[2 * i] = pts[i].p();
              v[2 * i + 1] = pts[i].q();
              inside &= std::abs(v[2 * i]) <= 2 && std::abs(v[2 * i + 1]) <= 2;
            }
            if (inside) family.insert(v);
          }
  CHECK(!solutions.empty());
  CHECK(solutions == family);
}

TEST_CASE("extended Dehn invariant examples") {
  const long b = ctx().bits();
  CHECK(wedge_reduce(ext_dehn(CoverPoint(cx("1/2"), 0, 0), ctx()), ctx()).is_zero());
  const Complex z = cx("0.3+0.4i");
  WedgeElem expect(WedgeMode::additive);
  expect.add(plog(z), -plog(1 - z), 1);
  CHECK(wedge_equal(ext_dehn(CoverPoint(z, 0, 0), ctx()), expect, ctx()));
  CHECK_FALSE(wedge_reduce(expect, ctx()).is_zero());
  CHECK(ext_dehn(CoverPoint(z, 0, 0), ctx()).mode() == WedgeMode::additive);
  (void)b;
}

TEST_CASE("transfer relation and kappa") {
  auto g = test::rng(64);
  std::uniform_int_distribution<long> small(-5, 5);
  const auto same = transfer_check(cx("0.3+0.4i"), Side::none, 2, 3, 2, 3, ctx());
  CHECK(same.rogers <= tol(8));
  CHECK(same.dehn.is_zero());
  for (int k = 0; k < 200; ++k) {
    const CoverPoint pt = random_point(g);
    const auto r = transfer_check(pt.z(), pt.side(), small(g), small(g), small(g), small(g), ctx());
    CHECK(r.rogers <= tol(64));
    CHECK(r.dehn.is_zero());
  }
  for (int k = 0; k < 20; ++k) {
    const CoverPoint pt = random_point(g);
    const FlattenedSum kap = kappa(pt.z(), pt.side());
    CHECK(distance_mod_pi2(rogers_lifted(kap, ctx()), ctx()) <= tol(64));
    CHECK(wedge_reduce(ext_dehn(kap, ctx()), ctx()).is_zero());
  }
}

TEST_CASE("chi, xi and the epsilon map") {
  CHECK(wedge_reduce(xi(cx("1"), ctx()), ctx()).is_zero());
  CHECK_THROWS_AS(xi(cx("0"), ctx()), DomainError);
  auto g = test::rng(65);
  for (int k = 0; k < 100; ++k) {
    const CoverPoint pt = random_point(g);
    const Complex& z = pt.z();
    CHECK(wedge_equal(ext_dehn(chi(z, pt.side()), ctx()), xi(z, ctx()), ctx()));

    FormalSum s;
    s.add(z, 1);
    CHECK(wedge_equal(eps_map(ext_dehn(pt, ctx()), ctx()), complex_dehn(s, ctx()), ctx()));
  }
}

TEST_CASE("flattened sum text and arithmetic") {
  const FlattenedSum s = parse_flattened_sum("-1/2 * [-3-0i; 1, 0]\n[0.3+0.4i; 0, 1]\n2*[5+0i; 0, 0]\n", ctx().bits());
  REQUIRE(s.terms().size() == 3);
  CHECK(s.terms()[0].point == CoverPoint(cx("-3"), -1, 0, Side::upper));
  CHECK(s.terms()[0].coeff == mpq_class(-1, 2));
  CHECK(s.terms()[1].coeff == 1);
  const FlattenedSum again = parse_flattened_sum(s.to_string(), ctx().bits());
  REQUIRE(again.terms().size() == 3);
  for (std::size_t k = 0; k < 3; ++k) CHECK(again.terms()[k].point == s.terms()[k].point);
  CHECK((s - s).empty());
  CHECK_THROWS_AS(parse_flattened_sum("[-3; 0, 0]\n", ctx().bits()), ParseError);
  CHECK_THROWS_AS(parse_flattened_sum("[0.5; 0]\n", ctx().bits()), ParseError);
}
