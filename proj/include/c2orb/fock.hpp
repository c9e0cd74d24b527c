#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "c2orb/ratfunc.hpp"

namespace c2orb {

enum class VoaKind { heisenberg, virasoro };

struct VoaSpec {
  VoaKind kind = VoaKind::heisenberg;
  int rank = 1;
  /// <a^i, a^i> for every Heisenberg generator.
  Rational norm = Rational(1);

  static VoaSpec heisenberg(int rank = 1, Rational norm = Rational(1));
  static VoaSpec virasoro();

  int generator_weight() const { return kind == VoaKind::heisenberg ? 1 : 2; }
  /// Smallest creation index m in a_{(-m)} (Heisenberg) or L_{-m} (Virasoro).
  int min_mode() const { return kind == VoaKind::heisenberg ? 1 : 2; }
  std::string str() const;
};

/// One creation operator: a^gen_{(-m)} for Heisenberg, L_{-m} for Virasoro (gen = 0).
struct Factor {
  uint8_t gen = 0;
  uint8_t m = 0;
  friend bool operator==(const Factor&, const Factor&) = default;
};

/// A PBW monomial applied to the vacuum. Factors are sorted with the largest m
/// first and ties broken by generator index, so the first factor is the
/// outermost operator.
class FockMonomial {
 public:
  static constexpr std::size_t kMaxFactors = 32;

  FockMonomial() = default;
  explicit FockMonomial(std::vector<Factor> f);

  std::span<const Factor> factors() const { return {f_.data(), size_}; }
  bool is_vacuum() const { return size_ == 0; }
  int weight() const { return weight_; }
  std::size_t size() const { return size_; }

  FockMonomial with(Factor x) const;
  FockMonomial without_first() const;
  /// Removes one copy of x; x must occur.
  FockMonomial without(Factor x) const;
  int count(Factor x) const;

  friend bool operator==(const FockMonomial& a, const FockMonomial& b) {
    return a.size_ == b.size_ && std::equal(a.f_.begin(), a.f_.begin() + a.size_, b.f_.begin());
  }
  friend bool operator<(const FockMonomial& a, const FockMonomial& b);
  std::size_t hash() const;

  std::string str(const VoaSpec& spec) const;
  /// Compact machine form "g:m,g:m" ("" for the vacuum).
  std::string key() const;
  static FockMonomial parse_key(const std::string& s);

 private:
  std::array<Factor, kMaxFactors> f_{};
  uint8_t size_ = 0;
  int16_t weight_ = 0;
};

struct FockMonomialHash {
  std::size_t operator()(const FockMonomial& m) const { return m.hash(); }
};

template <class S>
class FockVector {
 public:
  using Terms = std::unordered_map<FockMonomial, S, FockMonomialHash>;

  FockVector() = default;
  FockVector(const FockMonomial& m, const S& c) { add(m, c); }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add(const FockMonomial& m, const S& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.try_emplace(m, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  void add(const FockVector& v, const S& c) {
    if (c.is_zero()) return;
    if (c == S(Rational(1))) {
      for (const auto& [m, x] : v.terms_) add(m, x);
      return;
    }
    for (const auto& [m, x] : v.terms_) add(m, x * c);
  }
  S coefficient(const FockMonomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? S(Rational(0)) : it->second;
  }

  FockVector& operator+=(const FockVector& o) {
    for (const auto& [m, c] : o.terms_) add(m, c);
    return *this;
  }
  FockVector& operator-=(const FockVector& o) {
    for (const auto& [m, c] : o.terms_) add(m, -c);
    return *this;
  }
  FockVector& operator*=(const S& c) {
    if (c.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, x] : terms_) x *= c;
    return *this;
  }
  friend FockVector operator+(FockVector a, const FockVector& b) { return a += b; }
  friend FockVector operator-(FockVector a, const FockVector& b) { return a -= b; }
  friend FockVector operator*(FockVector a, const S& c) { return a *= c; }
  friend FockVector operator*(const S& c, FockVector a) { return a *= c; }
  friend bool operator==(const FockVector& a, const FockVector& b) { return a.terms_ == b.terms_; }

  /// Weight of a homogeneous vector (-1 for zero, -2 when mixed).
  int weight() const {
    if (terms_.empty()) return -1;
    const int w = terms_.begin()->first.weight();
    for (const auto& t : terms_)
      if (t.first.weight() != w) return -2;
    return w;
  }
  bool is_homogeneous() const { return weight() != -2; }
  int max_weight() const {
    int w = -1;
    for (const auto& t : terms_) w = std::max(w, t.first.weight());
    return w;
  }

  /// Terms in canonical monomial order.
  std::vector<std::pair<FockMonomial, S>> sorted_terms() const {
    std::vector<std::pair<FockMonomial, S>> out(terms_.begin(), terms_.end());
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
  }

  std::string str(const VoaSpec& spec) const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [m, c] : sorted_terms()) {
      if (!out.empty()) out += " + ";
      out += "(" + c.str() + ")*" + m.str(spec);
    }
    return out;
  }

 private:
  Terms terms_;
};

/// a^gen_{(n)}; for Virasoro gen is ignored and the operator is omega_{(n)} = L_{n-1}.
struct ModeOp {
  int gen = 0;
  long n = 0;
  static ModeOp L(long n) { return {0, n + 1}; }
};

/// Exact mode algebra and n-th products on a Heisenberg Fock space (S = Rational)
/// or on the Virasoro vacuum module with symbolic c_V (S = RatFunc).
/// Memo tables are guarded by a mutex, so one engine may be shared by threads.
template <class S>
class Engine {
 public:
  using Vector = FockVector<S>;

  explicit Engine(VoaSpec spec);

  const VoaSpec& spec() const { return spec_; }

  Vector vacuum() const { return Vector(FockMonomial(), one()); }
  Vector monomial(const FockMonomial& m) const { return Vector(m, one()); }
  /// a^gen_{(-1)}1, or omega = L_{-2}1 for Virasoro.
  Vector generator(int gen = 0) const;
  /// The conformal vector: sum_i a^i_{(-1)}a^i / (2 norm), or L_{-2}1.
  Vector omega() const;

  Vector mode_apply(ModeOp op, const Vector& v);
  Vector mode_apply(ModeOp op, const FockMonomial& m);
  Vector nth_product(const Vector& u, const Vector& v, long n);
  Vector nth_product(const FockMonomial& u, const FockMonomial& v, long n);
  /// The word L_{-m_1} ... L_{-m_r} applied to tail, rightmost first.
  Vector virasoro_normal_order(const std::vector<long>& word, const Vector& tail);

  /// Canonical monomial basis of the weight-w subspace.
  std::vector<FockMonomial> basis(int w) const;
  std::vector<FockMonomial> basis_up_to(int w) const;

  /// Left side minus right side of the expansion of (a_{(-m)}b_{(-n)}1)_{(-1)}u.
  Vector expansion_defect(const Vector& a, const Vector& b, const Vector& u, long m, long n);
  bool expansion_check(const Vector& a, const Vector& b, const Vector& u, long m, long n) {
    return expansion_defect(a, b, u, m, n).is_zero();
  }
  /// a_{(m)}(b_{(n)}c) - b_{(n)}(a_{(m)}c) - sum_i binom(m,i)(a_{(i)}b)_{(m+n-i)}c.
  Vector commutator_defect(const Vector& a, const Vector& b, const Vector& c, long m, long n);
  /// a_{(m)}(b_{(n)}c) - sum_i binom(m,i)(-1)^i (a_{(m-i)}(b_{(n+i)}c) - (-1)^m b_{(m+n-i)}(a_{(i)}c))
  /// with the left side computed as (a_{(m)}b)_{(n)}c.
  Vector associativity_defect(const Vector& a, const Vector& b, const Vector& c, long m, long n);
  /// a_{(m)}b - sum_i (-1)^{m-1-i}/i! (b_{(m+i)}a)_{(-1-i)}1, as displayed.
  Vector skew_defect(const Vector& a, const Vector& b, long m);
  /// a_{(m)}b - sum_i (-1)^{m-1-i} (b_{(m+i)}a)_{(-1-i)}1.
  Vector skew_defect_unnormalized(const Vector& a, const Vector& b, long m);

  std::size_t memo_size() const;
  void clear_memo();

  /// Product cache file: header line "c2orb-product-cache 1 <spec>", then one
  /// line per entry "<fnv64 hex>\t<u>\t<n>\t<v>\t<terms>". Returns entries read;
  /// a missing file reads as 0, a corrupt one throws.
  std::size_t load_cache(const std::string& path);
  void save_cache(const std::string& path) const;

 private:
  struct Key {
    FockMonomial u;
    long n;
    FockMonomial v;
    friend bool operator==(const Key&, const Key&) = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      return k.u.hash() * 1000003u ^ (static_cast<std::size_t>(k.n) * 7919u) ^ (k.v.hash() << 1);
    }
  };

  static S one() { return S(Rational(1)); }
  Vector heisenberg_mode(int gen, long n, const FockMonomial& m) const;
  Vector virasoro_mode(long n, const FockMonomial& m);
  Vector product_uncached(const FockMonomial& u, const FockMonomial& v, long n);
  const Vector& product_ref(const FockMonomial& u, const FockMonomial& v, long n);
  // out += c * u_{(n)}v
  void add_product(Vector& out, const Vector& u, const Vector& v, long n, const S& c);

  VoaSpec spec_;
  mutable std::recursive_mutex mu_;
  std::unordered_map<Key, Vector, KeyHash> products_;
  std::unordered_map<Key, Vector, KeyHash> vir_modes_;
};

using HeisenbergEngine = Engine<Rational>;
using VirasoroEngine = Engine<RatFunc>;

extern template class Engine<Rational>;
extern template class Engine<RatFunc>;

/// The central charge symbol c_V as a scalar.
inline RatFunc central_charge() { return RatFunc(Poly::variable(Var::c)); }

}  // namespace c2orb
