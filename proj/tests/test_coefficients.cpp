#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "c2orb/coefficients.hpp"

using namespace c2orb;

namespace {

const Index M = Index::sym("m");
Index I(long n) { return Index::at(n); }
Poly z() { return Poly::variable(Var::z); }
Poly k() { return Poly::variable(Var::k); }

// alpha straight from factorials, independent of the Index machinery.
Rational alpha_oracle(long m, long n, long i) {
  return factorial(m + n - 1) / (factorial(m - 1) * factorial(n - 1)) * binomial(m + n - 1 + i, i) *
         sign_power(n - 1) / Rational(n + i);
}

std::vector<long> sample_points(std::mt19937& rng, int parity, int count, long lo, long hi) {
  std::uniform_int_distribution<long> d(lo, hi);
  std::vector<long> out;
  while (static_cast<int>(out.size()) < count) {
    const long x = d(rng);
    if (((x % 2) + 2) % 2 == parity) out.push_back(x);
  }
  return out;
}

}  // namespace

TEST_CASE("alpha and c examples") {
  CHECK(alpha(I(2), I(1), I(0)).rational() == Rational(2));
  for (long i = 0; i <= 3; ++i) CHECK(alpha(I(1), I(1), I(i)).rational() == Rational(1));
  for (long m = 1; m <= 6; ++m)
    for (long n = 1; n <= 6; ++n)
      for (long i = 0; i <= 6; ++i) {
        CHECK(alpha(I(m), I(n), I(i)).rational() == alpha_oracle(m, n, i));
        CHECK(alpha(I(m), I(n), I(i)) + alpha(I(n), I(m), I(i)) == c_coeff(I(m), I(n), I(i)));
        if (i <= 4) CHECK(c_coeff(I(m), I(n), I(i)) == c_coeff(I(n), I(m), I(i)));
      }
  CHECK(c_coeff(I(2), I(2), I(0)).rational() == Rational(-6));
  CHECK(c_coeff(I(2), I(2), I(1)).rational() == Rational(-16));
}

TEST_CASE("domain errors") {
  CHECK_THROWS_WITH(alpha(I(0), I(1), I(0)), "index out of domain");
  CHECK_THROWS_WITH(c_coeff(I(2), I(-1), I(0)), "index out of domain");
  CHECK_THROWS_WITH(g_const(M, 5, 2), "outside derivation domain");
  CHECK_THROWS_WITH(h_vir(M, 5, 2), "outside derivation domain");
  CHECK_THROWS(alpha(M, Index::sym("n"), I(0)));
}

TEST_CASE("h_weight1 displayed forms") {
  const Poly m = z();
  const RatFunc h_m32 = RatFunc(-(m + Poly(6)) * (m + Poly(4)) * (m + Poly(3)) * m * (m - Poly(3))) / RatFunc(40);
  const RatFunc h_32m = RatFunc((m + Poly(6)) * (m + Poly(4)) * (m + Poly(1)) * m * (m - Poly(1))) / RatFunc(24);
  CHECK(h_weight1(M, I(3), I(2)).parity().even() == h_m32);
  CHECK(h_weight1(I(3), I(2), M).parity().even() == h_32m);
  CHECK(h_weight1(I(4), I(3), I(2)).rational() == Rational(-56));
  CHECK(h_weight1(I(3), I(2), I(4)).rational() == Rational(200));
  CHECK(h_m32.evaluate(Var::z, 4) == RatFunc(-56));
  CHECK(h_32m.evaluate(Var::z, 4) == RatFunc(200));
}

TEST_CASE("h_weight1 closed form equals its composite") {
  for (long m = 1; m <= 6; ++m)
    for (long n = 1; n <= 6; ++n)
      for (long p = 1; p <= 6; ++p)
        CHECK(h_weight1(I(m), I(n), I(p)) == h_weight1_composite(I(m), I(n), I(p)));
  CHECK(h_weight1(M, I(3), I(2)) == h_weight1_composite(M, I(3), I(2)));
  CHECK(h_weight1(I(3), I(2), M) == h_weight1_composite(I(3), I(2), M));
}

TEST_CASE("beta and gamma") {
  const BetaGamma bg = beta_gamma(I(2), I(2), I(2));
  CHECK(bg.beta.rational() == Rational(3, 16));
  CHECK(bg.gamma.rational() == Rational(1, 4));
  for (long q = 2; q <= 5; ++q) {
    const BetaGamma a = beta_gamma(M, I(q), I(q));
    CHECK((a.beta - beta_gamma(M, I(q), I(q)).beta).is_zero());
  }
}

TEST_CASE("F constant") {
  CHECK(F_const(I(3), I(3)) == CoeffValue(RatFunc(Poly(-24) + Poly(16) * k())));
  const CoeffValue shifted = F_const_shifted(I(3), I(3), 2);
  CHECK(shifted == CoeffValue(RatFunc(Poly(-24 + 32) + Poly(16) * k())));
  // -m+n cancels on the diagonal, so F(m,m) only sees the c-terms.
  for (long m = 2; m <= 6; ++m)
    CHECK(F_const(I(m), I(m)) == linear(I(2 * m - 2)) * c_coeff(I(m - 1), I(m - 1), I(0)) -
                                     CoeffValue(RatFunc(k())) * c_coeff(I(m - 1), I(m - 1), I(1)));
}

TEST_CASE("h_vir two routes at m = 7") {
  const CoeffValue sym = h_vir(M, 5, 4) - h_vir(M, 4, 5);
  const Rational direct = Rational(-2 * 3) * c_coeff(I(6), I(4), I(3)).rational() +
                          Rational(2 * 4) * c_coeff(I(6), I(3), I(4)).rational();
  CHECK(sym.at(7).rational() == direct);
}

TEST_CASE("gamma matrix shape") {
  const Matrix2<CoeffValue> g = gamma_matrix(M);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) CHECK(g(i, j).is_symbolic());
  for (int i = 0; i < 2; ++i) {
    const ParityExpr e = g(i, 1).parity();
    CHECK_FALSE(e.even().uses(Var::k));
    CHECK_FALSE(e.odd().uses(Var::c));
  }
  const ParityExpr d = g.det().parity();
  for (const RatFunc* b : {&d.even(), &d.odd()}) {
    REQUIRE(b->is_polynomial());
    CHECK(b->num().degree(Var::z) == 16);
    const Poly top = b->num().coefficients_in(Var::z).at(16);
    CHECK(top == Rational(16, 952560) * k());
  }
}

TEST_CASE("pair scalar grid and closed form") {
  CHECK(pair_scalar(3, 2) == Rational(126));
  for (long m = 1; m <= 30; ++m) {
    CHECK(pair_scalar(m, m) == Rational(0));
    for (long p = 1; p <= 30; ++p) {
      CHECK(pair_scalar(m, p) == pair_scalar_closed_form(m, p));
      if (p != m) CHECK_FALSE(pair_scalar(m, p).is_zero());
    }
  }
}

TEST_CASE("symbolic and concrete evaluation agree") {
  std::mt19937 rng(4242);
  for (int parity = 0; parity < 2; ++parity) {
    for (long m0 : sample_points(rng, parity, 20, 3, 60)) {
      CHECK(alpha(M, I(3), I(2)).at(m0) == alpha(I(m0), I(3), I(2)));
      CHECK(alpha(I(4), M, I(1)).at(m0) == alpha(I(4), I(m0), I(1)));
      CHECK(alpha(I(2), I(3), M).at(m0) == alpha(I(2), I(3), I(m0)));
      CHECK(c_coeff(M, I(2), I(3)).at(m0) == c_coeff(I(m0), I(2), I(3)));
      CHECK(c_coeff(I(3), I(5), M).at(m0) == c_coeff(I(3), I(5), I(m0)));
      CHECK(h_weight1(M, I(3), I(2)).at(m0) == h_weight1(I(m0), I(3), I(2)));
      CHECK(h_weight1(I(3), I(2), M).at(m0) == h_weight1(I(3), I(2), I(m0)));
      const BetaGamma s = beta_gamma(M, I(4), I(3)), c = beta_gamma(I(m0), I(4), I(3));
      CHECK(s.beta.at(m0) == c.beta);
      CHECK(s.gamma.at(m0) == c.gamma);
      CHECK(F_const(M, I(5)).at(m0) == F_const(I(m0), I(5)));
      CHECK(F_const_shifted(M, I(4), 3).at(m0) == F_const_shifted(I(m0), I(4), 3));
      CHECK(g_const(M, 5, 4).at(m0) == g_const(I(m0), 5, 4));
      CHECK(g_const(M, 3, 6).at(m0) == g_const(I(m0), 3, 6));
      CHECK(h_vir(M, 6, 3).at(m0) == h_vir(I(m0), 6, 3));
    }
  }
}
