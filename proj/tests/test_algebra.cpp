#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "oracles.hpp"

using namespace hypertor;
using namespace testing;

namespace {

Poly randomPoly(const PolyRingPtr<Fp>& s, std::mt19937_64& rng, int maxDeg = 3, int terms = 4) {
  std::uniform_int_distribution<int> deg(0, maxDeg), coeff(-50, 50), count(0, terms);
  Poly p = Poly::integer(s, 0);
  int k = count(rng);
  for (int t = 0; t < k; ++t) {
    std::vector<unsigned> e(s->numVars());
    for (auto& x : e) x = static_cast<unsigned>(deg(rng));
    p += Poly::monomial(s, s->field().fromInteger(coeff(rng)), s->monomial(e));
  }
  return p;
}

// Evaluation at a point mod p, written without the polynomial arithmetic under test.
std::uint64_t evaluate(const Poly& f, const std::vector<std::uint64_t>& point) {
  std::uint64_t p = f.ring()->field().characteristic(), sum = 0;
  for (const auto& t : f.terms()) {
    auto e = t.mono.exponents(point.size());
    std::uint64_t v = t.coeff;
    for (std::size_t i = 0; i < point.size(); ++i) v = v * oracle::powMod(point[i], e[i], p) % p;
    sum = (sum + v) % p;
  }
  return sum;
}

}  // namespace

TEST_SUITE("algebra-core") {
  TEST_CASE("prime field axioms on random elements") {
    PrimeField k(32003);
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::uint32_t> el(0, 32002);
    for (int i = 0; i < 2000; ++i) {
      auto a = el(rng), b = el(rng), c = el(rng);
      CHECK(k.add(k.add(a, b), c) == k.add(a, k.add(b, c)));
      CHECK(k.mul(k.mul(a, b), c) == k.mul(a, k.mul(b, c)));
      CHECK(k.mul(a, k.add(b, c)) == k.add(k.mul(a, b), k.mul(a, c)));
      CHECK(k.add(a, k.neg(a)) == 0);
      CHECK(k.sub(a, b) == k.add(a, k.neg(b)));
      if (a != 0) CHECK(k.mul(a, k.inv(a)) == 1);
      CHECK(k.mul(a, b) == static_cast<std::uint32_t>(std::uint64_t(a) * b % 32003));
    }
    CHECK(k.pow(5, 32002) == 1);
    CHECK_THROWS_AS(k.inv(0), Error);
    CHECK_THROWS_AS(PrimeField(32004), Error);
    CHECK(k.fromRational(mpq_class(1, 2)) == 16002);
    CHECK(k.toString(32002) == "-1");
  }

  TEST_CASE("rational reduction commutes with arithmetic") {
    PrimeField k(101);
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> num(-1000, 1000), den(1, 100);
    for (int i = 0; i < 1000; ++i) {
      mpq_class a(num(rng), den(rng) * 101 + 1), b(num(rng), 3);
      a.canonicalize();
      b.canonicalize();
      CHECK(k.fromRational(a * b) == k.mul(k.fromRational(a), k.fromRational(b)));
      CHECK(k.fromRational(a + b) == k.add(k.fromRational(a), k.fromRational(b)));
    }
    CHECK_THROWS_AS(k.fromRational(mpq_class(1, 101)), Error);
  }

  TEST_CASE("polynomial ring axioms and evaluation homomorphism") {
    auto s = polyRing({"x", "y", "z"});
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<std::uint64_t> pt(0, 32002);
    for (int i = 0; i < 1000; ++i) {
      auto a = randomPoly(s, rng), b = randomPoly(s, rng), c = randomPoly(s, rng);
      CHECK((a + b) + c == a + (b + c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a * b == b * a);
      CHECK((a * b) * c == a * (b * c));
      CHECK((a - a).isZero());
      std::vector<std::uint64_t> point{pt(rng), pt(rng), pt(rng)};
      CHECK(evaluate(a * b, point) == evaluate(a, point) * evaluate(b, point) % 32003);
      CHECK(evaluate(a + b, point) == (evaluate(a, point) + evaluate(b, point)) % 32003);
    }
  }

  TEST_CASE("print then parse is the identity") {
    auto s = polyRing({"x", "y", "u", "v"});
    std::mt19937_64 rng(5);
    for (int i = 0; i < 1000; ++i) {
      auto a = randomPoly(s, rng, 4, 6);
      CHECK(Poly::parse(s, a.toString()) == a);
    }
    CHECK(Poly::parse(s, "x*u - y*v").toString() == "x*u - y*v");
    CHECK(Poly::parse(s, "(x+y)^2") == Poly::parse(s, "x^2 + 2 x y + y^2"));
    CHECK(Poly::parse(s, "3/2 x^2 - 2x y") == Poly::parse(s, "3/2*x^2 - 2*x*y"));
    CHECK_THROWS_AS(Poly::parse(s, "x + w"), Error);
    CHECK_THROWS_AS(Poly::parse(s, "x + "), Error);
  }

  TEST_CASE("monomial orders") {
    auto grevlex = std::make_shared<const PolyRing<Fp>>(PrimeField(32003), std::vector<std::string>{"x", "y", "z"},
                                                        std::vector<int>{}, TermOrder::parse("grevlex"));
    auto lex = std::make_shared<const PolyRing<Fp>>(PrimeField(32003), std::vector<std::string>{"x", "y", "z"},
                                                    std::vector<int>{}, TermOrder::parse("lex"));
    unsigned xz[] = {1, 0, 1}, yy[] = {0, 2, 0}, x[] = {1, 0, 0}, y3[] = {0, 3, 0};
    CHECK(grevlex->compare(grevlex->monomial(yy), grevlex->monomial(xz)) > 0);
    CHECK(lex->compare(lex->monomial(xz), lex->monomial(yy)) > 0);
    CHECK(lex->compare(lex->monomial(x), lex->monomial(y3)) > 0);
    CHECK(grevlex->compare(grevlex->monomial(y3), grevlex->monomial(x)) > 0);
    CHECK_THROWS_AS(TermOrder::parse("deglex"), Error);
  }

  TEST_CASE("weighted grading") {
    auto s = polyRing({"x", "y", "z"}, 32003, {3, 2, 6});
    auto f = Poly::parse(s, "x^2 + y^3 + z");
    REQUIRE(f.isHomogeneous());
    CHECK(*f.homogeneousDegree() == 6);
    CHECK_FALSE(Poly::parse(s, "x + y").isHomogeneous());
    CHECK(s->describe() == "F(32003)[x,y,z : 3,2,6]");
  }

  TEST_CASE("derivatives, Frobenius and exact division") {
    auto s = polyRing({"x", "y", "z"});
    auto f = Poly::parse(s, "x^3 + y^3 + z^3");
    CHECK(f.derivative(0) == Poly::parse(s, "3x^2"));
    auto s2 = polyRing({"x", "y"}, 2);
    CHECK(Poly::parse(s2, "x + y").frobenius(2) == Poly::parse(s2, "x^2 + y^2"));
    std::mt19937_64 rng(2);
    auto s3 = polyRing({"x", "y"}, 3);
    for (int i = 0; i < 200; ++i) {
      auto a = randomPoly(s3, rng, 2, 3);
      CHECK(a.frobenius(9) == a.pow(9));
    }
    for (int i = 0; i < 300; ++i) {
      auto a = randomPoly(s, rng), b = randomPoly(s, rng);
      if (b.isZero()) continue;
      auto q = (a * b).divideExact(b);
      REQUIRE(q.has_value());
      CHECK(*q == a);
    }
    CHECK_FALSE(Poly::parse(s, "x + 1").divideExact(Poly::parse(s, "y")).has_value());
  }

  TEST_CASE("mixing rings is rejected") {
    auto a = polyRing({"x", "y"}), b = polyRing({"x", "y"}, 101);
    CHECK_THROWS_AS(Poly::variable(a, 0) + Poly::variable(b, 0), Error);
    try {
      (void)(Poly::variable(a, 0) * Poly::variable(b, 1));
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::RingMismatch);
    }
  }

  TEST_CASE("matrix algebra") {
    auto s = polyRing({"x", "y", "u", "v"});
    std::mt19937_64 rng(9);
    auto rnd = [&](std::size_t r, std::size_t c) {
      Matrix m(s, r, c);
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m.at(i, j) = randomPoly(s, rng, 2, 2);
      return m;
    };
    for (int i = 0; i < 50; ++i) {
      auto a = rnd(2, 3), b = rnd(3, 2), c = rnd(2, 2);
      CHECK((a * b) * c == a * (b * c));
      CHECK((a * b).transpose() == b.transpose() * a.transpose());
      CHECK(a.kroneckerIdentityRight(2) * b.kroneckerIdentityRight(2) == (a * b).kroneckerIdentityRight(2));
      CHECK(a.kroneckerIdentityLeft(3) * b.kroneckerIdentityLeft(3) == (a * b).kroneckerIdentityLeft(3));
    }
    auto m = matrix(s, {{"x", "-v"}, {"-y", "u"}});
    CHECK(m.toString() == "[[x, -v], [-y, u]]");
    CHECK_THROWS_AS(m * Matrix(s, 3, 1), Error);
    auto inv = matrix(s, {{"2", "1"}, {"1", "1"}}).constantInverse();
    REQUIRE(inv.has_value());
    CHECK(*inv * matrix(s, {{"2", "1"}, {"1", "1"}}) == Matrix::identity(s, 2));
  }
}
