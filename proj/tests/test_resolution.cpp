#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "hypertor/resolution.hpp"
#include "oracles.hpp"

using namespace hypertor;
using namespace testing;

namespace {

// Coefficients of prod (1 + t)^a / (1 - t^2)^b up to t^n.
std::vector<long long> series(int a, int b, std::size_t n) {
  std::vector<long long> c(n + 1, 0);
  c[0] = 1;
  for (int k = 0; k < a; ++k)
    for (std::size_t i = n; i >= 1; --i) c[i] += c[i - 1];
  for (int k = 0; k < b; ++k)
    for (std::size_t i = 2; i <= n; ++i) c[i] += c[i - 2];
  return c;
}

std::vector<std::size_t> asSizes(const std::vector<long long>& v) { return {v.begin(), v.end()}; }

// Exactness of F_{i-1} <- F_i <- F_{i+1} in low degrees, by dense linear algebra.
void checkExactByLinearAlgebra(const FreeComplex<Fp>& c, int maxDeg) {
  const auto& f = c.ring->equation();
  for (std::size_t i = 1; i + 1 <= c.length(); ++i) {
    const auto& src = c.degrees[i];
    for (int d = 0; d <= maxDeg; ++d) {
      auto ker = oracle::kernelDim(c.differentials[i - 1], src, c.degrees[i - 1], f, d);
      auto im = oracle::spanDim(c.differentials[i], src, f, d);
      CHECK_MESSAGE(ker == im, "spot " << i << " degree " << d);
    }
  }
}

}  // namespace

TEST_SUITE("resolution") {
  TEST_CASE("R/(x, y) over xu - yv") {
    auto r = quadric();
    auto res = resolve(cyclic(r, {"x", "y"}), std::size_t{8});
    CHECK(res.ranks() == std::vector<std::size_t>{1, 2, 2, 2, 2, 2, 2, 2, 2});
    CHECK(res.isComplex());
    CHECK_FALSE(res.finite);
    checkExactByLinearAlgebra(resolve(cyclic(r, {"x", "y"}), std::size_t{4}, false), 5);
  }

  TEST_CASE("residue field over xu - yv follows its Poincare series") {
    // For a quadric hypersurface in four variables, sum b_i t^i = (1 + t)^4 / (1 - t^2).
    auto r = quadric();
    auto res = resolve(cyclic(r, {"x", "y", "u", "v"}), std::size_t{9});
    CHECK(res.ranks() == asSizes(series(4, 1, 9)));
    auto plain = resolve(cyclic(r, {"x", "y", "u", "v"}), std::size_t{6}, false);
    CHECK(plain.ranks() == asSizes(series(4, 1, 6)));
    checkExactByLinearAlgebra(plain, 5);
  }

  TEST_CASE("closing by a matrix factorization changes nothing observable") {
    auto r = quadric();
    for (auto gens : std::vector<std::vector<std::string>>{{"x", "y"}, {"x", "y", "u", "v"}, {"x", "u - v"}, {"x^2", "y"}}) {
      auto m = cyclic(r, gens);
      auto closed = resolve(m, std::size_t{8}, true);
      auto plain = resolve(m, std::size_t{8}, false);
      CHECK(closed.ranks() == plain.ranks());
      CHECK(closed.degrees == plain.degrees);
      CHECK(closed.isComplex());
      auto pc = detectPeriodicity(closed), pp = detectPeriodicity(plain);
      if (!closed.finite) CHECK(pc.periodTwoFrom == pp.periodTwoFrom);
    }
  }

  TEST_CASE("resolutions over the polynomial ring are finite") {
    auto s = ringSpec({"x", "y", "z"});
    auto k = resolve(cyclic(s, {"x", "y", "z"}));
    CHECK(k.finite);
    CHECK(k.ranks() == std::vector<std::size_t>{1, 3, 3, 1});
    CHECK(*k.projectiveDimension() == 3);
    checkExactByLinearAlgebra(k, 5);
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> coeff(-3, 3);
    const auto& ring = s->ambient();
    for (int t = 0; t < 10; ++t) {
      std::vector<Poly> gens;
      for (int g = 0; g < 3; ++g) {
        Poly p = Poly::integer(ring, 0);
        for (auto& e : oracle::monomials(3, 2)) p += Poly::monomial(ring, ring->field().fromInteger(coeff(rng)), ring->monomial(e));
        gens.push_back(p);
      }
      auto res = resolve(Module::quotientByIdeal(s, gens));
      CHECK(res.finite);
      CHECK(*res.projectiveDimension() <= 3);
      CHECK(res.isComplex());
      checkExactByLinearAlgebra(res, 5);
    }
    CHECK_THROWS_AS(resolveOverAmbient(cyclic(quadric(), {"x"})), Error);
  }

  TEST_CASE("matrix factorizations of the stable tails") {
    struct Case {
      std::vector<std::string> vars;
      std::string f;
      std::vector<std::string> gens;
    };
    std::vector<Case> cases{
        {{"x"}, "x^2", {"x"}},
        {{"x", "y"}, "x*y", {"x"}},
        {{"x", "y"}, "x*y", {"x", "y"}},
        {{"x", "y", "u", "v"}, "x*u - y*v", {"x", "y"}},
        {{"x", "y", "u", "v"}, "x*u - y*v", {"x", "y", "u", "v"}},
        {{"x", "y", "z"}, "x^3 + y^3 + z^3", {"x", "y", "z"}},
        {{"x", "y", "z"}, "x^3 + y^3 + z^3", {"x + y", "z"}},
    };
    for (const auto& c : cases) {
      auto r = ringSpec(c.vars, c.f);
      auto res = resolve(cyclic(r, c.gens));
      auto p = detectPeriodicity(res);
      CHECK(p.period != Period::Degenerate);
      CHECK(p.periodicFrom <= r->numVars() + 1);
      auto mf = extractMatrixFactorization(res, p);
      auto fi = Matrix::identity(r->ambient(), mf.a.rows()).scaled(r->equation());
      CHECK(mf.a * mf.b == fi);
      CHECK(mf.b * mf.a == fi);
      CHECK(isMatrixFactorization(mf.a, mf.b, r->equation()));
    }
  }

  TEST_CASE("k over k[x]/(x^2) is periodic of period one") {
    auto r = ringSpec({"x"}, "x^2");
    auto res = resolve(cyclic(r, {"x"}), std::size_t{6});
    CHECK(res.ranks() == std::vector<std::size_t>(7, 1));
    CHECK(detectPeriodicity(res).period == Period::One);
  }

  TEST_CASE("short windows and modules of finite projective dimension") {
    auto r = quadric();
    auto res = resolve(cyclic(r, {"x", "y"}), std::size_t{2}, false);
    CHECK_THROWS_AS(detectPeriodicity(res), Error);
    // x is a nonzerodivisor on the domain R, so R/(x) has projective dimension one.
    auto fin = resolve(cyclic(r, {"x"}));
    CHECK(fin.finite);
    CHECK(*fin.projectiveDimension() == 1);
    CHECK(detectPeriodicity(fin).period == Period::Degenerate);
  }

  TEST_CASE("permutation equivalence") {
    auto s = polyRing({"x", "y", "u", "v"});
    auto a = matrix(s, {{"x", "-v"}, {"-y", "u"}});
    auto b = matrix(s, {{"u", "-y"}, {"-v", "x"}});
    CHECK(equivalentUpToPermutation(a, b));
    CHECK(equivalentUpToPermutation(a, matrix(s, {{"-y", "u"}, {"x", "-v"}})));
    CHECK(equivalentUpToPermutation(a, matrix(s, {{"-x", "-v"}, {"y", "u"}})));
    CHECK_FALSE(equivalentUpToPermutation(a, matrix(s, {{"x", "v"}, {"y", "u"}})));
  }

  TEST_CASE("rational coefficients resolve identically") {
    auto q = std::make_shared<const PolyRing<RationalField>>(RationalField(),
                                                             std::vector<std::string>{"x", "y", "u", "v"});
    auto rq = std::make_shared<const RingSpec<RationalField>>(q, Polynomial<RationalField>::parse(q, "x*u - y*v"));
    auto m = ModulePresentation<RationalField>::quotientByIdeal(
        rq, {Polynomial<RationalField>::parse(q, "x"), Polynomial<RationalField>::parse(q, "y"),
             Polynomial<RationalField>::parse(q, "u"), Polynomial<RationalField>::parse(q, "v")});
    CHECK(resolve(m, std::size_t{7}).ranks() == asSizes(series(4, 1, 7)));
  }

  TEST_CASE("the cache returns the stored resolution") {
    auto r = quadric();
    ResolutionCache<Fp> cache;
    auto m = cyclic(r, {"x", "y"});
    auto a = cache.get(m, 6);
    auto b = cache.get(cyclic(r, {"x", "y"}), 6);
    CHECK(a.get() == b.get());
    CHECK(cache.size() == 1);
    cache.get(m, 7);
    CHECK(cache.size() == 2);
  }
}
