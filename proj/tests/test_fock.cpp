#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <random>

#include "c2orb/fock.hpp"

using namespace c2orb;

namespace {

FockMonomial mono(std::initializer_list<std::pair<int, int>> fs) {
  std::vector<Factor> f;
  for (auto [g, m] : fs) f.push_back({static_cast<uint8_t>(g), static_cast<uint8_t>(m)});
  return FockMonomial(f);
}

FockMonomial vir(std::initializer_list<int> ms) {
  std::vector<Factor> f;
  for (int m : ms) f.push_back({0, static_cast<uint8_t>(m)});
  return FockMonomial(f);
}

template <class E>
typename E::Vector random_vector(E& eng, std::mt19937& rng, int max_weight) {
  const auto all = eng.basis_up_to(max_weight);
  std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
  std::uniform_int_distribution<long> coef(-3, 3);
  typename E::Vector v;
  for (int t = 0; t < 2; ++t) v.add(all[pick(rng)], Rational(coef(rng)));
  if (v.is_zero()) v = eng.monomial(all[pick(rng)]);
  return v;
}

}  // namespace

TEST_CASE("heisenberg mode examples") {
  HeisenbergEngine e(VoaSpec::heisenberg(1));
  CHECK(e.mode_apply({0, 1}, e.generator()) == e.vacuum());
  for (const auto& m : e.basis_up_to(5)) CHECK(e.mode_apply({0, 0}, m).is_zero());
  // x_(i) x_(-p) 1 = p delta_{i,p} 1
  for (long p = 1; p <= 6; ++p)
    for (long i = 0; i <= 7; ++i) {
      const auto r = e.mode_apply({0, i}, e.monomial(mono({{0, static_cast<int>(p)}})));
      CHECK(r == (i == p ? e.vacuum() * Rational(p) : HeisenbergEngine::Vector()));
    }
}

TEST_CASE("basis sizes are colored partition counts") {
  HeisenbergEngine e1(VoaSpec::heisenberg(1));
  const std::vector<std::size_t> p{1, 1, 2, 3, 5, 7, 11, 15};
  for (int w = 0; w < 8; ++w) CHECK(e1.basis(w).size() == p[w]);
  HeisenbergEngine e2(VoaSpec::heisenberg(2));
  const std::vector<std::size_t> p2{1, 2, 5, 10, 20, 36};
  for (int w = 0; w < 6; ++w) CHECK(e2.basis(w).size() == p2[w]);
  VirasoroEngine v(VoaSpec::virasoro());
  const std::vector<std::size_t> pv{1, 0, 1, 1, 2, 2, 4, 4, 7};
  for (int w = 0; w < 9; ++w) CHECK(v.basis(w).size() == pv[w]);
}

TEST_CASE("vacuum creation and grading") {
  HeisenbergEngine e(VoaSpec::heisenberg(2));
  std::mt19937 rng(3);
  const auto all = e.basis_up_to(6);
  std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
  for (int t = 0; t < 20; ++t) {
    const auto u = e.monomial(all[pick(rng)]);
    CHECK(e.nth_product(u, e.vacuum(), -1) == u);
    CHECK(e.nth_product(e.vacuum(), u, -1) == u);
  }
  for (int t = 0; t < 20; ++t) {
    const auto u = e.monomial(all[pick(rng)]), v = e.monomial(all[pick(rng)]);
    for (long n = -3; n <= 3; ++n) {
      const auto r = e.nth_product(u, v, n);
      if (!r.is_zero()) CHECK(r.weight() == u.weight() + v.weight() - n - 1);
    }
  }
}

TEST_CASE("omega_(1) is the grading operator") {
  HeisenbergEngine e(VoaSpec::heisenberg(1));
  const auto w = e.omega();
  for (const auto& m : e.basis_up_to(6)) {
    const auto u = e.monomial(m);
    CHECK(e.nth_product(w, u, 1) == u * Rational(m.weight()));
  }
  HeisenbergEngine e2(VoaSpec::heisenberg(2, Rational(2)));
  for (const auto& m : e2.basis_up_to(4))
    CHECK(e2.nth_product(e2.omega(), e2.monomial(m), 1) == e2.monomial(m) * Rational(m.weight()));
}

TEST_CASE("weight-one calculus against omega") {
  HeisenbergEngine e(VoaSpec::heisenberg(1));
  const auto x = e.generator(), w = e.omega();
  CHECK(e.nth_product(x, w, 0).is_zero());
  CHECK(e.nth_product(x, w, 1) == x);
  const auto lam = e.nth_product(x, w, 2);
  CHECK((lam.is_zero() || lam.weight() == 0));
  for (long i = 3; i <= 6; ++i) CHECK(e.nth_product(x, w, i).is_zero());
}

TEST_CASE("virasoro modes") {
  VirasoroEngine v(VoaSpec::virasoro());
  const auto L2 = v.monomial(vir({2}));
  CHECK(v.mode_apply(ModeOp::L(2), L2) == v.vacuum() * (central_charge() * RatFunc(Rational(1, 2))));
  CHECK(v.mode_apply(ModeOp::L(-1), v.vacuum()).is_zero());
  CHECK(v.virasoro_normal_order({-1}, v.vacuum()).is_zero());
  // L_{-2}L_{-3}1 = L_{-3}L_{-2}1 + L_{-5}1
  const auto lhs = v.virasoro_normal_order({2, 3}, v.vacuum());
  CHECK(lhs == v.monomial(vir({3, 2})) + v.monomial(vir({5})));
  for (const auto& m : v.basis_up_to(8)) {
    std::vector<long> word;
    for (const Factor& f : m.factors()) word.push_back(f.m);
    CHECK(v.virasoro_normal_order(word, v.vacuum()) == v.monomial(m));
  }
  // L_0 acts by weight.
  for (const auto& m : v.basis_up_to(8))
    CHECK(v.mode_apply(ModeOp::L(0), v.monomial(m)) == v.monomial(m) * RatFunc(m.weight()));
}

TEST_CASE("virasoro bracket closure from omega modes") {
  VirasoroEngine v(VoaSpec::virasoro());
  const auto basis = v.basis_up_to(7);
  for (long s = -5; s <= 5; ++s)
    for (long t = -5; t <= 5; ++t)
      for (const auto& m : basis) {
        const auto u = v.monomial(m);
        const auto lhs = v.mode_apply(ModeOp::L(s), v.mode_apply(ModeOp::L(t), u)) -
                         v.mode_apply(ModeOp::L(t), v.mode_apply(ModeOp::L(s), u));
        auto rhs = v.mode_apply(ModeOp::L(s + t), u) * RatFunc(s - t);
        if (s + t == 0) rhs += u * (central_charge() * RatFunc(Rational(s * s * s - s, 12)));
        CHECK(lhs == rhs);
      }
  // The same bracket via n-th products of omega.
  const auto w = v.omega();
  for (const auto& m : v.basis_up_to(6))
    for (long n = -3; n <= 4; ++n)
      CHECK(v.nth_product(w, v.monomial(m), n) == v.mode_apply(ModeOp{0, n}, v.monomial(m)));
}

TEST_CASE("expansion, commutator and associativity identities, small instances") {
  HeisenbergEngine e(VoaSpec::heisenberg(2));
  std::mt19937 rng(11);
  for (int t = 0; t < 25; ++t) {
    const auto a = random_vector(e, rng, 3), b = random_vector(e, rng, 3), c = random_vector(e, rng, 3);
    CHECK(e.expansion_check(a, b, c, 1 + t % 3, 1 + t % 2));
    for (long m = -2; m <= 2; ++m) {
      CHECK(e.commutator_defect(a, b, c, m, -1 - t % 2).is_zero());
      CHECK(e.associativity_defect(a, b, c, m, t % 3 - 1).is_zero());
      CHECK(e.skew_defect_unnormalized(a, b, m).is_zero());
    }
  }
  VirasoroEngine v(VoaSpec::virasoro());
  const auto w = v.omega();
  CHECK(v.expansion_check(w, w, v.monomial(vir({2})), 2, 3));
  CHECK(v.commutator_defect(w, w, w, 2, -2).is_zero());
  CHECK(v.skew_defect_unnormalized(w, v.monomial(vir({3})), -1).is_zero());
}

TEST_CASE("skew symmetry with an extra 1/i! fails on x and the vacuum") {
  HeisenbergEngine e(VoaSpec::heisenberg(1));
  const auto x = e.generator(0), one = e.vacuum();
  const auto d = e.skew_defect(x, one, -3);
  CHECK_FALSE(d.is_zero());
  CHECK(d == Rational(1, 2) * e.nth_product(x, one, -3));
  CHECK(e.skew_defect_unnormalized(x, one, -3).is_zero());
  // Terms with i <= 1 are unaffected, so m = -1 and m = -2 agree on both forms.
  CHECK(e.skew_defect(x, one, -1).is_zero());
  CHECK(e.skew_defect(x, one, -2).is_zero());
}

TEST_CASE("product cache round trip and corruption") {
  HeisenbergEngine e(VoaSpec::heisenberg(1));
  const auto a = e.monomial(mono({{0, 2}, {0, 1}}));
  const auto r = e.nth_product(a, a, -2);
  const std::string path = "test_fock_cache.txt";
  e.save_cache(path);
  HeisenbergEngine f(VoaSpec::heisenberg(1));
  CHECK(f.load_cache(path) == e.memo_size());
  CHECK(f.nth_product(a, a, -2) == r);

  VirasoroEngine v(VoaSpec::virasoro());
  const auto w = v.omega();
  const auto vr = v.nth_product(w, v.nth_product(w, w, 1), 3);
  v.save_cache(path);
  VirasoroEngine v2(VoaSpec::virasoro());
  CHECK(v2.load_cache(path) > 0);
  CHECK(v2.nth_product(w, v2.nth_product(w, w, 1), 3) == vr);

  {
    std::ofstream out(path, std::ios::app);
    out << "deadbeef\t1:1\t0\t.\t.=1\n";
  }
  VirasoroEngine v3(VoaSpec::virasoro());
  CHECK_THROWS(v3.load_cache(path));
  HeisenbergEngine h(VoaSpec::heisenberg(1));
  CHECK_THROWS(h.load_cache(path));
  std::remove(path.c_str());
  CHECK(h.load_cache(path) == 0);
}
