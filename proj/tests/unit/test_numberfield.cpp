#include <functional>

#include "scissors/errors.hpp"
#include "scissors/numberfield.hpp"
#include "support.hpp"

using namespace scissors;
using test::ctx;
using test::tol;

namespace {

const NumberField& quartic() {
  static const NumberField k = NumberField::parse("x^4+x^2-x+1");
  return k;
}

mpq_class q(long n, long d = 1) { return mpq_class(n, d); }

}  // namespace

TEST_CASE("signatures") {
  CHECK(quartic().degree() == 4);
  CHECK(quartic().r1() == 0);
  CHECK(quartic().r2() == 2);
  const auto rat = NumberField::parse("x");
  CHECK(rat.r1() == 1);
  CHECK(rat.r2() == 0);
  const auto gauss = NumberField::parse("x^2+1");
  CHECK(gauss.r1() == 0);
  CHECK(gauss.r2() == 1);

  struct Sig {
    const char* poly;
    int r1, r2;
    bool assert_irreducible;
  };
  for (const Sig& s : {Sig{"x^3-2", 1, 1, false}, Sig{"x^4-2", 2, 1, false}, Sig{"x^2+x+1", 0, 1, false},
                       Sig{"x^3-3*x+1", 3, 0, false}, Sig{"x^5-x-1", 1, 2, true}, Sig{"x^6+x+1", 0, 3, true}}) {
    CAPTURE(s.poly);
    const auto k = NumberField::parse(s.poly, s.assert_irreducible);
    CHECK(k.r1() == s.r1);
    CHECK(k.r2() == s.r2);
    CHECK(k.r1() + 2 * k.r2() == k.degree());
  }
}

TEST_CASE("invalid polynomials are rejected") {
  CHECK_THROWS_AS(NumberField::make({}), ValidationError);
  CHECK_THROWS_AS(NumberField::parse("2*x^2+1"), ValidationError);
  CHECK_THROWS_AS(NumberField::parse("x^2+2*x+1"), ValidationError);
  CHECK_THROWS_AS(NumberField::parse("x^4+3*x^2+2"), ValidationError);  // (x^2+1)(x^2+2)
  CHECK_THROWS_AS(NumberField::parse("x^3-1"), ValidationError);
  CHECK_THROWS_AS(NumberField::parse("x^5-x-1"), ValidationError);  // degree 5 needs the assertion
  CHECK_THROWS_AS(NumberField::parse("x^^2"), ParseError);
}

TEST_CASE("embeddings of the generator of x^4+x^2-x+1") {
  const auto cxe = quartic().complex_embeddings();
  REQUIRE(cxe.size() == 2);
  const Complex t1 = embed(quartic().generator(), cxe[0], ctx());
  const Complex t2 = embed(quartic().generator(), cxe[1], ctx());
  CHECK(t1.re.to_fixed(5) == "0.54742");
  CHECK(t1.im.to_fixed(5) == "0.58565");
  CHECK(t2.re.to_fixed(5) == "-0.54742");
  CHECK(t2.im.to_fixed(5) == "1.12087");
  for (const auto& e : cxe) CHECK_NEAR(embed(quartic().from_rational(1), e, ctx()), Complex(ctx().bits(), 1), tol(1));
}

TEST_CASE("field arithmetic") {
  const auto& k = quartic();
  const FieldElem t = k.generator();
  const FieldElem one = k.from_rational(1);
  CHECK(t * t.inverse() == one);
  CHECK(t * t * t * t == k.element({q(-1), q(1), q(-1), q(0)}));
  CHECK((one - t) + t == one);
  CHECK((t / t).is_one());
  CHECK_THROWS_AS(one / k.from_rational(0), DomainError);
  const auto other = NumberField::parse("x^2+1");
  CHECK_THROWS_AS(t + other.generator(), ValidationError);
}

TEST_CASE("element and polynomial text round-trips") {
  const auto& k = quartic();
  const FieldElem e = k.parse_element("[-1/2, 0, 1/2, 1/2]");
  CHECK(e.coeffs() == std::vector<mpq_class>{q(-1, 2), q(0), q(1, 2), q(1, 2)});
  CHECK(k.parse_element(e.to_string()) == e);
  CHECK(format_polynomial(parse_polynomial("x^4+x^2-x+1")) == "x^4+x^2-x+1");
  CHECK(NumberField::parse(k.to_string()) == k);
  CHECK_THROWS_AS(k.parse_element("[1, 2]"), ParseError);
  CHECK_THROWS_AS(k.parse_element("1, 2, 3, 4"), ParseError);
}

TEST_CASE("embedding is a ring homomorphism on random expressions") {
  const auto& k = quartic();
  auto g = test::rng(21);
  std::uniform_int_distribution<long> c(-4, 4), op(0, 3);
  const auto embs = k.complex_embeddings();

  struct Pair {
    FieldElem e;
    std::vector<Complex> v;
  };
  auto leaf = [&]() {
    std::vector<mpq_class> cs;
    for (int j = 0; j < 4; ++j) cs.push_back(mpq_class(c(g), 1 + (c(g) + 4) % 3));
    Pair p{k.element(cs), {}};
    for (const auto& e : embs) p.v.push_back(embed(p.e, e, ctx()));
    return p;
  };
  std::function<Pair(int)> build = [&](int depth) -> Pair {
    if (depth == 0) return leaf();
    Pair a = build(depth - 1), b = build(depth - 1);
    const long o = op(g);
    if (o == 3 && b.e.is_zero()) return a;
    Pair r{o == 0 ? a.e + b.e : o == 1 ? a.e - b.e : o == 2 ? a.e * b.e : a.e / b.e, {}};
    for (std::size_t j = 0; j < embs.size(); ++j)
      r.v.push_back(o == 0 ? a.v[j] + b.v[j] : o == 1 ? a.v[j] - b.v[j] : o == 2 ? a.v[j] * b.v[j] : a.v[j] / b.v[j]);
    return r;
  };
  for (int trial = 0; trial < 40; ++trial) {
    const Pair p = build(1 + trial % 5);
    for (std::size_t j = 0; j < embs.size(); ++j) {
      const Complex direct = embed(p.e, embs[j], ctx());
      // Relative: the value can grow with depth.
      const Real scale = max(Real(ctx().bits(), 1), abs(direct));
      CHECK(abs(direct - p.v[j]) <= tol(16) * scale);
    }
  }
}

TEST_CASE("re-isolation at higher precision refines without permuting") {
  for (const char* poly : {"x^4+x^2-x+1", "x^3-2", "x^4-2", "x^3-3*x+1"}) {
    CAPTURE(poly);
    const auto a = NumberField::parse(poly, false, kDefaultBits);
    const auto b = NumberField::parse(poly, false, 2 * kDefaultBits);
    REQUIRE(a.embeddings().size() == b.embeddings().size());
    for (std::size_t j = 0; j < a.embeddings().size(); ++j) {
      const auto& ea = a.embeddings()[j];
      const auto& eb = b.embeddings()[j];
      CHECK(ea.kind() == eb.kind());
      CHECK(abs(ea.root() - eb.root()) <= ea.radius());
    }
  }
}
