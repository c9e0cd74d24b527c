#pragma once

#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "c2orb/echelon.hpp"
#include "c2orb/fock.hpp"

namespace c2orb {

struct TensorMonomial {
  FockMonomial left;
  FockMonomial right;

  int weight() const { return left.weight() + right.weight(); }
  bool is_canonical() const { return !(right < left); }
  TensorMonomial swapped() const { return {right, left}; }
  TensorMonomial canonical() const { return is_canonical() ? *this : swapped(); }

  friend bool operator==(const TensorMonomial&, const TensorMonomial&) = default;
  friend bool operator<(const TensorMonomial& a, const TensorMonomial& b) {
    if (a.left == b.left) return a.right < b.right;
    return a.left < b.left;
  }
  std::size_t hash() const { return left.hash() * 0x100000001B3ULL ^ right.hash(); }
  std::string str(const VoaSpec& spec) const;
};

struct TensorMonomialHash {
  std::size_t operator()(const TensorMonomial& t) const { return t.hash(); }
};

/// Linear combination of tensor monomials with Rational coefficients.
template <class Tag>
class TensorTerms {
 public:
  using Terms = std::unordered_map<TensorMonomial, Rational, TensorMonomialHash>;

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Rational coefficient(const TensorMonomial& t) const {
    auto it = terms_.find(t);
    return it == terms_.end() ? Rational(0) : it->second;
  }
  int weight() const {
    if (terms_.empty()) return -1;
    const int w = terms_.begin()->first.weight();
    for (const auto& t : terms_)
      if (t.first.weight() != w) return -2;
    return w;
  }
  bool is_homogeneous() const { return weight() != -2; }

  std::vector<std::pair<TensorMonomial, Rational>> sorted_terms() const {
    std::vector<std::pair<TensorMonomial, Rational>> out(terms_.begin(), terms_.end());
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
  }
  std::string str(const VoaSpec& spec) const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [t, c] : sorted_terms()) {
      if (!out.empty()) out += " + ";
      out += "(" + c.str() + ")*" + t.str(spec);
    }
    return out;
  }

  friend bool operator==(const TensorTerms& a, const TensorTerms& b) { return a.terms_ == b.terms_; }

 protected:
  void add_raw(const TensorMonomial& t, const Rational& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.try_emplace(t, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  Terms terms_;
};

/// An element of the tensor square, stored in full.
class TensorVector : public TensorTerms<TensorVector> {
 public:
  TensorVector() = default;
  void add(const TensorMonomial& t, const Rational& c) { add_raw(t, c); }
  void add(const TensorVector& v, const Rational& c);
  TensorVector swapped() const;
  bool is_symmetric() const { return swapped() == *this; }

  TensorVector& operator+=(const TensorVector& o) { add(o, Rational(1)); return *this; }
  TensorVector& operator-=(const TensorVector& o) { add(o, Rational(-1)); return *this; }
  friend TensorVector operator+(TensorVector a, const TensorVector& b) { return a += b; }
  friend TensorVector operator-(TensorVector a, const TensorVector& b) { return a -= b; }
};

/// An S2-fixed element of the tensor square. A canonical key L<=R with L != R
/// and coefficient c stands for c(L(x)R + R(x)L); a diagonal key stands for c(L(x)L).
class SymTensorVector : public TensorTerms<SymTensorVector> {
 public:
  SymTensorVector() = default;
  /// Adds c times the symmetric basis element of t's orbit.
  void add(const TensorMonomial& t, const Rational& c) { add_raw(t.canonical(), c); }
  void add(const SymTensorVector& v, const Rational& c);

  /// Throws std::invalid_argument unless v is S2-fixed.
  static SymTensorVector from_full(const TensorVector& v);
  TensorVector to_full() const;

  SymTensorVector& operator+=(const SymTensorVector& o) { add(o, Rational(1)); return *this; }
  SymTensorVector& operator-=(const SymTensorVector& o) { add(o, Rational(-1)); return *this; }
  SymTensorVector& operator*=(const Rational& c);
  friend SymTensorVector operator+(SymTensorVector a, const SymTensorVector& b) { return a += b; }
  friend SymTensorVector operator-(SymTensorVector a, const SymTensorVector& b) { return a -= b; }
  friend SymTensorVector operator*(const Rational& c, SymTensorVector a) { return a *= c; }
};

/// A per-weight slice of a graded subspace: exact RREF with columns indexed by
/// a canonical monomial basis of the weight space.
struct SubspaceSlice {
  int weight = 0;
  int ambient_dim = 0;
  Echelon echelon;
  int dim() const { return echelon.rank(); }
  int codim() const { return ambient_dim - echelon.rank(); }
};

struct ProbeResult {
  std::string voa;
  std::string x;
  std::string y;
  int cutoff = 0;
  int window = 4;
  /// (n, dim of span{eta(x_{(-k)}y) mod C2 : k <= n}).
  std::vector<std::pair<int, int>> dims;
  /// n with eta(x_{(-n)}y) outside C2.
  std::vector<int> witnesses;
  /// Last n that raised the dimension (0 if none), when the verdict is stabilized.
  std::optional<int> stabilized_at;
  std::optional<int> stabilized_weight;
  bool stabilized() const { return stabilized_at.has_value(); }
  std::string verdict() const { return stabilized() ? "stabilized-by-cutoff" : "still-growing"; }
  std::string json() const;
};

/// The S2 orbifold of the tensor square of a Heisenberg Fock space.
///
/// Two C2 routes are provided. The generic one eliminates over the orbifold's
/// own symmetric monomial basis. The fast one uses P = x(x)1 + 1(x)x and
/// Q = x(x)1 - 1(x)x, under which the orbifold is M_P (x) M_Q^+; then C2 is
/// C2(M_P) (x) M_Q^+ + M_P (x) C2(M_Q^+), and only C2(M_Q^+) needs elimination.
class Orbifold {
 public:
  using Vector = FockVector<Rational>;
  enum class SpanMode { generators, exhaustive };

  explicit Orbifold(VoaSpec spec);

  const VoaSpec& spec() const { return engine_.spec(); }
  HeisenbergEngine& engine() { return engine_; }
  const HeisenbergEngine& engine() const { return engine_; }
  /// Engine on the Q modes, with norm twice that of the base space.
  HeisenbergEngine& q_engine() { return q_engine_; }
  const HeisenbergEngine& q_engine() const { return q_engine_; }

  static TensorVector tensor(const Vector& a, const Vector& b);
  SymTensorVector eta(const Vector& a) const;
  SymTensorVector phi2(const Vector& a, const Vector& b) const;

  TensorVector product(const TensorVector& u, const TensorVector& v, long n);
  SymTensorVector product(const SymTensorVector& u, const SymTensorVector& v, long n);

  /// Canonical monomials (left <= right) spanning the orbifold at weight w.
  std::vector<TensorMonomial> sym_basis(int w) const;

  /// C2 slice over sym_basis(w): spanned by eta(a)_{(-2)}v (generators) or by
  /// all u_{(-2)}v with u, v in the orbifold basis (exhaustive).
  const SubspaceSlice& c2_slice(int w, SpanMode mode = SpanMode::generators);
  bool in_c2_generic(const SymTensorVector& v, SpanMode mode = SpanMode::generators);
  int quotient_dim_generic(int w, SpanMode mode = SpanMode::generators);

  /// Membership in C2 through the P/Q decomposition. Throws on non-homogeneous input.
  bool in_c2(const SymTensorVector& v);
  /// dim of the weight-w piece of W / C2(W) through the P/Q decomposition.
  int quotient_dim(int w);
  /// C2(M_Q^+) at Q-weight w, columns indexed by even-degree Q monomials.
  const SubspaceSlice& q_slice(int w);
  /// Builds Q slices up to weight w using up to jobs threads.
  void prepare(int w, int jobs = 1);

  /// The vector written in P/Q monomials: generators 0..r-1 are P, r..2r-1 are Q.
  Vector to_pq(const SymTensorVector& v) const;

  ProbeResult d_probe(const Vector& x, const Vector& y, int cutoff, int window = 4);

  /// phi2(x_{(-n)}y, z) + phi2(y, x_{(-n)}z).
  SymTensorVector rewrite_vector(const Vector& x, const Vector& y, const Vector& z, long n);
  /// eta(x_{(-m)}y_{(-n)}1) - (-1)^{n-1} binom(m+n-2, n-1) eta(x_{(-m-n+1)}y).
  SymTensorVector rewrite_vector2(const Vector& x, const Vector& y, long m, long n);
  bool rewrite_check(const Vector& x, const Vector& y, const Vector& z, long n);
  bool rewrite_check2(const Vector& x, const Vector& y, long m, long n);
  /// The three-term combination with coefficient h; rank 1 only.
  SymTensorVector cubic_identity_vector(long m, long n, long p, const Rational& h);
  bool cubic_identity_check(long m, long n, long p);
  /// eta(a)_{(-1)}eta(b) - eta(a_{(-1)}b) - phi2(b, a), which must vanish.
  SymTensorVector phi_recursion_defect(const Vector& a, const Vector& b);
  bool phi_recursion_check(const Vector& a, const Vector& b) { return phi_recursion_defect(a, b).is_zero(); }

 private:
  struct QData {
    std::vector<FockMonomial> basis;
    std::unordered_map<FockMonomial, int, FockMonomialHash> index;
  };
  const QData& q_data(int w);
  SubspaceSlice build_q_slice(int w);
  SubspaceSlice build_c2_slice(int w, SpanMode mode);
  SparseRow sym_row(const SymTensorVector& v, int w);
  SymTensorVector single(const TensorMonomial& t) const;
  std::unordered_map<TensorMonomial, int, TensorMonomialHash>& sym_index(int w);

  HeisenbergEngine engine_;
  HeisenbergEngine q_engine_;
  std::recursive_mutex mu_;
  std::map<int, std::unique_ptr<SubspaceSlice>> gen_slices_;
  std::map<int, std::unique_ptr<SubspaceSlice>> all_slices_;
  std::map<int, std::unique_ptr<SubspaceSlice>> q_slices_;
  std::map<int, std::unique_ptr<QData>> q_data_;
  std::map<int, std::unique_ptr<std::unordered_map<TensorMonomial, int, TensorMonomialHash>>> sym_index_;
};

}  // namespace c2orb
