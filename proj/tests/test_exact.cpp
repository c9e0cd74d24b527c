#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "c2orb/parity_expr.hpp"

using namespace c2orb;

namespace {

Poly z() { return Poly::variable(Var::z); }
Poly k() { return Poly::variable(Var::k); }
Poly cv() { return Poly::variable(Var::c); }

Rational random_rational(std::mt19937& rng) {
  std::uniform_int_distribution<long> num(-30, 30), den(1, 12);
  return Rational(num(rng), den(rng));
}

Poly random_poly(std::mt19937& rng) {
  std::uniform_int_distribution<int> deg(0, 2), nterms(1, 4);
  Poly p;
  for (int t = nterms(rng); t > 0; --t)
    p += Poly::monomial({static_cast<uint16_t>(deg(rng)), static_cast<uint16_t>(deg(rng)),
                         static_cast<uint16_t>(deg(rng))},
                        random_rational(rng));
  return p;
}

}  // namespace

TEST_CASE("rational canonical form") {
  CHECK(Rational(6, -4).str() == "-3/2");
  CHECK(Rational(0, 7).den() == 1);
  CHECK(Rational::parse("10/4") == Rational(5, 2));
  CHECK(Rational::parse("-3") == Rational(-3));
  CHECK_THROWS_WITH(Rational(1, 0), "zero divisor");
  CHECK_THROWS_WITH(Rational(1) / Rational(0), "zero divisor");
  CHECK(binomial(-3, 2) == Rational(6));
  CHECK(binomial(5, 7) == Rational(0));
  CHECK(factorial(10) == Rational(3628800));
}

TEST_CASE("ratfunc examples") {
  CHECK((RatFunc(z()) + RatFunc(-z())).is_zero());
  CHECK(RatFunc(Poly(1), z() + Poly(1)) * RatFunc(z() + Poly(1)) == RatFunc(1));
  const RatFunc s = RatFunc(Poly(1), z()) + RatFunc(Poly(1), z() + Poly(2));
  CHECK(s == RatFunc(Poly(2) * z() + Poly(2), z() * (z() + Poly(2))));
  CHECK(s.den() == z() * z() + Poly(2) * z());
  CHECK_THROWS_WITH(RatFunc(z()) / RatFunc(0), "zero divisor");
  CHECK_THROWS_WITH(RatFunc(Poly(1), z()).evaluate(Var::z, Rational(0)), "evaluation at pole");
}

TEST_CASE("denominator is monic and common factors cancel") {
  const RatFunc r(Poly(2) * (z() - Poly(1)) * (k() + Poly(3)), Poly(4) * (k() + Poly(3)) * (z() + cv()));
  CHECK(r.den().leading_coefficient() == Rational(1));
  CHECK(r == RatFunc(Rational(1, 2) * (z() - Poly(1)), z() + cv()));
}

TEST_CASE("polynomial gcd and division") {
  const Poly a = (z() + k()) * (z() - Poly(2)) * (cv() + Poly(1));
  const Poly b = (z() + k()) * (cv() + Poly(1)) * (k() - Poly(5));
  const Poly g = gcd(a, b);
  CHECK(exact_divide(g, (z() + k()) * (cv() + Poly(1))).is_constant());
  CHECK(exact_divide(a, g) * g == a);
  CHECK_THROWS_WITH(exact_divide(z(), k()), "inexact polynomial division");
}

TEST_CASE("random arithmetic round trips") {
  std::mt19937 rng(20241);
  for (int trial = 0; trial < 60; ++trial) {
    const Rational a = random_rational(rng), b = random_rational(rng);
    CHECK((a + b) - b == a);
    if (!b.is_zero()) CHECK((a * b) / b == a);

    const Poly p = random_poly(rng), q = random_poly(rng);
    CHECK((p + q) - q == p);
    if (!q.is_zero()) CHECK(exact_divide(p * q, q) == p);

    const RatFunc f(random_poly(rng), random_poly(rng) + Poly(1) + z() * z());
    const RatFunc g(random_poly(rng), k() * k() + Poly(2));
    CHECK((f + g) - g == f);
    if (!g.is_zero()) CHECK((f * g) / g == f);
    CHECK(((f - g).is_zero()) == (f == g));
    CHECK((f - f).is_zero());
  }
}

TEST_CASE("parity_shift examples") {
  const ParityExpr sign("m", RatFunc(1), RatFunc(-1));
  CHECK(parity_shift(sign, 0) == sign);
  const ParityExpr swapped = parity_shift(sign, 1);
  CHECK(swapped.even() == RatFunc(-1));
  CHECK(swapped.odd() == RatFunc(1));

  const ParityExpr m = ParityExpr::index("m");
  const ParityExpr m3 = parity_shift(m, 3);
  CHECK(m3.even() == RatFunc(z() + Poly(3)));
  CHECK(m3.odd() == RatFunc(z() + Poly(3)));
  CHECK(parity_eval(m3, 2) == Rational(5));
  CHECK(parity_eval(m3, 3) == Rational(6));
}

TEST_CASE("parity_shift round trip and pointwise law") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const ParityExpr e("m", RatFunc(random_poly(rng).evaluate(Var::k, 1).evaluate(Var::c, 2)),
                       RatFunc(random_poly(rng).evaluate(Var::k, 3).evaluate(Var::c, -1),
                               z() * z() + Poly(1)));
    for (long s : {-3L, -2L, 1L, 4L, 5L}) {
      const ParityExpr r = parity_shift(e, s);
      CHECK(parity_shift(r, -s) == e);
      for (long n = -4; n <= 4; ++n) CHECK(parity_eval(r, n) == parity_eval(e, n + s));
    }
  }
}

TEST_CASE("parity_eval examples") {
  const ParityExpr e("z", RatFunc(z() * z()), RatFunc(0));
  CHECK(parity_eval(e, 4) == Rational(16));
  CHECK(parity_eval(e, 5) == Rational(0));
  const ParityExpr pole = ParityExpr::uniform("z", RatFunc(Poly(1), z() - Poly(3)));
  CHECK_THROWS_WITH(parity_eval(pole, 3), "evaluation at pole");

  // f(p) written term by term with (-1)^(p-1) = -1 on the even branch.
  auto f_branch = [&](long s) {
    return Poly(630 * (1 + s)) + Poly(308 + 411 * s) * z() + Poly(7 * (16 + 9 * s)) * z().pow(2) +
           Poly(28) * z().pow(3) + Poly(2) * z().pow(4);
  };
  const ParityExpr f("p", RatFunc(f_branch(-1)), RatFunc(f_branch(1)));
  CHECK(parity_eval(f, 2) == Rational(246));
  CHECK(parity_eval(f, 7) == Rational(29274));
}

TEST_CASE("inline and GMP rationals agree near the overflow boundary") {
  std::mt19937_64 rng(99);
  const long big = (1L << 62) - 1;
  std::vector<long> seeds{0, 1, -1, 2, 3, big, -big, big - 1, 1L << 40, -(1L << 41) + 7, 3037000499L};
  for (int t = 0; t < 40; ++t) seeds.push_back(static_cast<long>(rng() >> 2) * ((t % 2) ? 1 : -1));
  for (long a : seeds)
    for (long b : seeds) {
      if (b == 0) continue;
      const Rational x(a, b), y(b, 7);
      const mpq_class qx(x.value()), qy(y.value());
      CHECK((x + y).value() == qx + qy);
      CHECK((x - y).value() == qx - qy);
      CHECK((x * y).value() == qx * qy);
      CHECK((x / y).value() == qx / qy);
      CHECK(((x * y) / y) == x);
      CHECK(Rational(mpq_class(qx * qy)) == x * y);
      CHECK(((x <=> y) < 0) == (qx < qy));
      CHECK(Rational::parse((x * y * y).str()) == x * y * y);
    }
  CHECK(Rational(1L << 62).str() == "4611686018427387904");
  CHECK(Rational(1L << 62) - Rational(1) == Rational(big));
  CHECK((Rational(big) + Rational(1)).hash() == Rational(1L << 62).hash());
}
