#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "c2orb/coefficients.hpp"
#include "c2orb/orbifold.hpp"

using namespace c2orb;
using Vec = FockVector<Rational>;

namespace {

Vec random_vector(HeisenbergEngine& eng, std::mt19937& rng, int w) {
  const auto b = eng.basis(w);
  std::uniform_int_distribution<std::size_t> pick(0, b.size() - 1);
  std::uniform_int_distribution<long> coef(-3, 3);
  Vec v;
  for (int i = 0; i < 3; ++i) v.add(b[pick(rng)], Rational(coef(rng)));
  if (v.is_zero()) v.add(b.front(), Rational(1));
  return v;
}

SymTensorVector random_sym(Orbifold& o, std::mt19937& rng, int w) {
  const auto b = o.sym_basis(w);
  std::uniform_int_distribution<std::size_t> pick(0, b.size() - 1);
  std::uniform_int_distribution<long> coef(-4, 4);
  SymTensorVector v;
  for (int i = 0; i < 4; ++i) v.add(b[pick(rng)], Rational(coef(rng)));
  return v;
}

long partitions(int n) {
  std::vector<long> p(n + 1, 0);
  p[0] = 1;
  for (int k = 1; k <= n; ++k)
    for (int i = k; i <= n; ++i) p[i] += p[i - k];
  return p[n];
}

}  // namespace

TEST_CASE("echelon keeps reduced form and agrees with Bareiss rank") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<long> coef(-3, 3), den(1, 4);
  for (int trial = 0; trial < 40; ++trial) {
    const int rows = 2 + trial % 6, cols = 3 + trial % 5;
    std::vector<std::vector<Rational>> dense(rows, std::vector<Rational>(cols));
    Echelon e(cols);
    for (int i = 0; i < rows; ++i) {
      std::map<int, Rational> m;
      for (int j = 0; j < cols; ++j) {
        // Low-rank structure: every third row repeats a combination.
        Rational x = (i % 3 == 2 && i >= 2) ? dense[i - 1][j] - dense[i - 2][j] * Rational(2)
                                            : Rational(coef(rng), den(rng));
        if (trial % 4 == 0 && j % 2 == 0) x = Rational(0);
        dense[i][j] = x;
        m[j] = x;
      }
      e.insert(make_sparse(m));
    }
    CHECK(e.rank() == bareiss_rank(dense));
    for (const auto& [p, row] : e.rows()) {
      CHECK(row.front().first == p);
      CHECK(row.front().second == Rational(1));
      for (const auto& [q, other] : e.rows())
        if (q != p)
          for (const auto& [c, x] : other) CHECK(c != p);
    }
    for (const auto& r : dense) {
      std::map<int, Rational> m;
      for (int j = 0; j < cols; ++j) m[j] = r[j];
      CHECK(e.contains(make_sparse(m)));
    }
  }
  Echelon e(2);
  CHECK_THROWS_AS(e.insert({{5, Rational(1)}}), std::out_of_range);
}

TEST_CASE("symmetric tensors use the doubled off-diagonal convention") {
  Orbifold o(VoaSpec::heisenberg(1));
  auto& E = o.engine();
  const Vec one = E.vacuum(), x = E.generator(0);
  const SymTensorVector e1 = o.eta(one);
  CHECK(e1.terms().size() == 1);
  CHECK(e1.coefficient({FockMonomial(), FockMonomial()}) == Rational(2));
  const SymTensorVector ex = o.eta(x);
  CHECK(ex.terms().size() == 1);
  CHECK(ex.coefficient(TensorMonomial{FockMonomial(), x.terms().begin()->first}.canonical()) == Rational(1));
  CHECK(ex.to_full().is_symmetric());
  CHECK(SymTensorVector::from_full(ex.to_full()) == ex);
  CHECK(o.phi2(x, one) == ex);
  TensorVector lopsided = Orbifold::tensor(x, one);
  CHECK_THROWS_AS(SymTensorVector::from_full(lopsided), std::invalid_argument);
  for (const auto& [t, c] : o.phi2(x, E.nth_product(x, x, -1)).terms()) CHECK(t.is_canonical());
}

TEST_CASE("symmetric basis has Sym^2 dimensions") {
  Orbifold o(VoaSpec::heisenberg(1));
  for (int n = 0; n <= 10; ++n) {
    long expect = 0;
    for (int a = 0; 2 * a < n; ++a) expect += partitions(a) * partitions(n - a);
    if (n % 2 == 0) expect += partitions(n / 2) * (partitions(n / 2) + 1) / 2;
    CHECK(static_cast<long>(o.sym_basis(n).size()) == expect);
  }
  CHECK(o.sym_basis(2).size() == 3);
}

TEST_CASE("eta is closed under nonnegative products and phi2 is the (-1) defect") {
  for (int rank : {1, 2}) {
    Orbifold o(VoaSpec::heisenberg(rank));
    auto& E = o.engine();
    std::mt19937 rng(100 + rank);
    for (int trial = 0; trial < 25; ++trial) {
      const Vec a = random_vector(E, rng, 1 + trial % 4), b = random_vector(E, rng, 1 + (trial / 4) % 4);
      for (long i = 0; i <= 4; ++i) CHECK(o.product(o.eta(a), o.eta(b), i) == o.eta(E.nth_product(a, b, i)));
      CHECK(o.product(o.eta(a), o.eta(b), -1) - o.eta(E.nth_product(a, b, -1)) == o.phi2(a, b));
      CHECK(o.phi_recursion_check(a, b));
      CHECK(o.phi2(a, b) == o.phi2(b, a));
    }
    const Vec b = random_vector(E, rng, 3);
    CHECK(o.phi_recursion_check(E.vacuum(), b));
    CHECK(o.product(o.eta(E.vacuum()), o.eta(b), -1) == Rational(2) * o.eta(b));
  }
}

TEST_CASE("generic C2 slices: generators match exhaustive products") {
  for (int rank : {1, 2}) {
    Orbifold o(VoaSpec::heisenberg(rank));
    const int top = rank == 1 ? 8 : 5;
    for (int w = 0; w <= top; ++w) {
      const auto& g = o.c2_slice(w);
      const auto& all = o.c2_slice(w, Orbifold::SpanMode::exhaustive);
      CHECK(g.dim() == all.dim());
      CHECK(g.dim() <= g.ambient_dim);
      for (const auto& [p, row] : all.echelon.rows()) CHECK(g.echelon.contains(row));
    }
    CHECK(o.c2_slice(0).dim() == 0);
    CHECK(o.c2_slice(1).dim() == 0);
  }
}

TEST_CASE("P/Q fast path agrees with the generic slices") {
  for (int rank : {1, 2}) {
    Orbifold o(VoaSpec::heisenberg(rank));
    const int top = rank == 1 ? 8 : 5;
    std::mt19937 rng(7 + rank);
    for (int w = 0; w <= top; ++w) {
      CHECK(o.quotient_dim(w) == o.quotient_dim_generic(w));
      for (const auto& [p, row] : o.c2_slice(w).echelon.rows()) {
        SymTensorVector v;
        const auto basis = o.sym_basis(w);
        for (const auto& [c, x] : row) v.add(basis[c], x);
        CHECK(o.in_c2(v));
      }
      for (int trial = 0; trial < 12; ++trial) {
        const SymTensorVector v = random_sym(o, rng, w);
        CHECK(o.in_c2(v) == o.in_c2_generic(v));
      }
    }
  }
}

TEST_CASE("fast quotient dims are graded sums over P_{-1} powers") {
  Orbifold o(VoaSpec::heisenberg(1));
  int total = 0;
  for (int w = 0; w <= 12; ++w) {
    int expect = 0;
    for (int k = 0; k <= w; ++k) expect += o.q_slice(w - k).codim();
    CHECK(o.quotient_dim(w) == expect);
    total += o.quotient_dim(w);
  }
  CHECK(total > 0);
  Orbifold par(VoaSpec::heisenberg(1));
  par.prepare(12, 4);
  for (int w = 0; w <= 12; ++w) CHECK(par.q_slice(w).dim() == o.q_slice(w).dim());
}

TEST_CASE("in_c2 examples in rank one") {
  Orbifold o(VoaSpec::heisenberg(1));
  auto& E = o.engine();
  const Vec x = E.generator(0);
  CHECK(o.in_c2(SymTensorVector()));
  CHECK(o.in_c2(o.eta(E.nth_product(x, x, -2))));
  for (long m = 2; m <= 12; m += 2) CHECK(o.in_c2(o.eta(E.nth_product(x, x, -m))));
  for (long m = 8; m <= 12; ++m) CHECK(o.in_c2(o.eta(E.nth_product(x, x, -m))));
  CHECK_FALSE(o.in_c2(o.eta(x)));
  CHECK_FALSE(o.in_c2(o.eta(E.nth_product(x, x, -1))));
  CHECK_FALSE(o.in_c2(o.eta(E.nth_product(x, x, -7))));
  CHECK_FALSE(o.in_c2_generic(o.eta(E.nth_product(x, x, -7))));
  CHECK_THROWS_AS(o.in_c2(o.eta(x) + o.eta(E.nth_product(x, x, -1))), std::invalid_argument);
  CHECK_THROWS_AS(o.in_c2_generic(o.eta(x) + o.eta(E.nth_product(x, x, -1))), std::invalid_argument);
}

TEST_CASE("L_{-1} images lie in C2") {
  Orbifold o(VoaSpec::heisenberg(1));
  auto& E = o.engine();
  const Vec om = E.omega();
  for (int w = 0; w <= 8; ++w)
    for (const auto& u : E.basis(w)) {
      const SymTensorVector v = o.eta(E.nth_product(om, E.monomial(u), 0));
      CHECK(o.in_c2(v));
      if (w <= 6) CHECK(o.in_c2_generic(v));
    }
}

TEST_CASE("rewriting rules for x_{(-n)} hold in rank two") {
  Orbifold o(VoaSpec::heisenberg(2));
  auto& E = o.engine();
  std::mt19937 rng(404);
  for (int trial = 0; trial < 12; ++trial) {
    const Vec x = random_vector(E, rng, 1 + trial % 2), y = random_vector(E, rng, 1 + (trial / 2) % 2),
              z = random_vector(E, rng, 1);
    const long n = 2 + trial % 3;
    CHECK(o.rewrite_check(x, y, z, n));
  }
  for (int trial = 0; trial < 12; ++trial) {
    const Vec x = random_vector(E, rng, 1 + trial % 2), y = random_vector(E, rng, 1);
    const long m = 1 + trial % 3, n = 1 + (trial / 3) % 3;
    CHECK(o.rewrite_check2(x, y, m, n));
    CHECK(o.rewrite_check2(y, x, n, m));
  }
  const Vec x = E.generator(0), y = E.generator(1);
  for (long m = 1; m <= 4; ++m) CHECK(o.rewrite_vector2(x, y, m, 1).is_zero());
  CHECK_THROWS_AS(o.rewrite_check(x, y, x, 1), std::invalid_argument);
}

TEST_CASE("cubic product identity with symbolic h in the concrete orbifold") {
  Orbifold o(VoaSpec::heisenberg(1));
  for (long m = 2; m <= 3; ++m)
    for (long n = 2; n <= 3; ++n)
      for (long p = 1; p <= 2; ++p) CHECK(o.cubic_identity_check(m, n, p));
  // At total index 9 the h term already lies in C2; at 7 it does not, so a wrong h is caught.
  const Rational h = h_weight1(Index::at(4), Index::at(3), Index::at(2)).rational();
  CHECK(h == Rational(-56));
  CHECK(o.in_c2(o.cubic_identity_vector(4, 3, 2, h + Rational(1))));
  const Rational h7 = h_weight1(Index::at(2), Index::at(2), Index::at(3)).rational();
  CHECK(o.in_c2(o.cubic_identity_vector(2, 2, 3, h7)));
  CHECK_FALSE(o.in_c2(o.cubic_identity_vector(2, 2, 3, h7 + Rational(1))));
  CHECK_THROWS_AS(o.cubic_identity_check(1, 2, 1), std::invalid_argument);
  Orbifold two(VoaSpec::heisenberg(2));
  CHECK_THROWS_AS(two.cubic_identity_check(2, 2, 1), std::invalid_argument);
}

TEST_CASE("D probes") {
  Orbifold o(VoaSpec::heisenberg(1));
  auto& E = o.engine();
  const Vec x = E.generator(0), one = E.vacuum(), om = E.omega();
  const ProbeResult px = o.d_probe(x, x, 12);
  CHECK(px.witnesses == std::vector<int>{1, 3, 5, 7});
  for (std::size_t i = 1; i < px.dims.size(); ++i) CHECK(px.dims[i].second >= px.dims[i - 1].second);
  CHECK(px.verdict() == "stabilized-by-cutoff");
  CHECK(px.stabilized_at == 7);

  const ProbeResult pv = o.d_probe(one, x, 10);
  CHECK(pv.dims.back().second == 1);
  CHECK(pv.witnesses == std::vector<int>{1});

  const ProbeResult short_run = o.d_probe(x, x, 9);
  CHECK(short_run.verdict() == "still-growing");
  CHECK_FALSE(short_run.stabilized_at.has_value());

  const ProbeResult pw = o.d_probe(om, om, 14);
  CHECK(pw.verdict() == "stabilized-by-cutoff");
  const std::string js = pw.json();
  CHECK(js.find("\"verdict\":\"stabilized-by-cutoff\"") != std::string::npos);
  CHECK(js.find("\"dims\":[[1,") != std::string::npos);
  CHECK_THROWS_AS(o.d_probe(x, x + om, 5), std::invalid_argument);
}

TEST_CASE("C2 is stable under zero modes on probe vectors") {
  Orbifold o(VoaSpec::heisenberg(1));
  auto& E = o.engine();
  const Vec x = E.generator(0), om = E.omega();
  for (long n = 1; n <= 12; ++n) {
    const Vec u = E.nth_product(om, om, -n);
    if (!o.in_c2(o.eta(u))) continue;
    for (const Vec& a : {x, om, Vec(E.nth_product(x, x, -2))})
      CHECK(o.in_c2(o.eta(E.nth_product(a, u, 0))));
  }
}

TEST_CASE("cubic monomials vanish in the quotient at large total index") {
  Orbifold o(VoaSpec::heisenberg(1));
  auto& E = o.engine();
  const Vec x = E.generator(0), one = E.vacuum();
  int last_outside = 0;
  for (long m1 = 1; m1 <= 12; ++m1)
    for (long m2 = 1; m2 <= m1; ++m2)
      for (long m3 = 1; m3 <= m2 && m1 + m2 + m3 <= 14; ++m3) {
        const Vec v = E.nth_product(x, E.nth_product(x, E.nth_product(x, one, -m3), -m2), -m1);
        if (!o.in_c2(o.eta(v))) last_outside = std::max<int>(last_outside, m1 + m2 + m3);
      }
  MESSAGE("largest total index outside C2: " << last_outside);
  CHECK(last_outside < 14);
}
