#pragma once

#include <array>
#include <string>
#include <utility>
#include <variant>

#include "c2orb/parity_expr.hpp"

namespace c2orb {

/// An integer argument of a coefficient family: either a concrete integer or
/// the free index (displayed as `symbol`) plus a concrete offset.
struct Index {
  long offset = 0;
  bool symbolic = false;
  std::string symbol = "m";

  static Index at(long n) { return {n, false, "m"}; }
  static Index sym(std::string name = "m", long offset = 0) { return {offset, true, std::move(name)}; }

  Index operator+(long d) const { return {offset + d, symbolic, symbol}; }
  Index operator-(long d) const { return {offset - d, symbolic, symbol}; }
  /// Sum of two indices; at most one may be symbolic.
  Index operator+(const Index& o) const;
  Index operator-(const Index& o) const;
};

/// Value of a coefficient family: an element of Q(k, c_V) when every index is
/// concrete, or a parity-split expression when one index is symbolic.
class CoeffValue {
 public:
  CoeffValue() : v_(RatFunc()) {}
  CoeffValue(const RatFunc& f) : v_(f) {}  // NOLINT(google-explicit-constructor)
  CoeffValue(const Rational& r) : v_(RatFunc(r)) {}  // NOLINT(google-explicit-constructor)
  CoeffValue(long r) : v_(RatFunc(r)) {}  // NOLINT(google-explicit-constructor)
  CoeffValue(int r) : v_(RatFunc(r)) {}  // NOLINT(google-explicit-constructor)
  CoeffValue(const ParityExpr& e) : v_(e) {}  // NOLINT(google-explicit-constructor)

  bool is_symbolic() const { return std::holds_alternative<ParityExpr>(v_); }
  const RatFunc& concrete() const;
  /// Concrete value with no k or c_V left.
  Rational rational() const;
  /// The symbolic value; a concrete value is promoted to a uniform expression.
  ParityExpr parity(const std::string& symbol = "m") const;

  bool is_zero() const;

  CoeffValue& operator+=(const CoeffValue& o);
  CoeffValue& operator-=(const CoeffValue& o);
  CoeffValue& operator*=(const CoeffValue& o);
  CoeffValue& operator/=(const CoeffValue& o);
  friend CoeffValue operator+(CoeffValue a, const CoeffValue& b) { return a += b; }
  friend CoeffValue operator-(CoeffValue a, const CoeffValue& b) { return a -= b; }
  friend CoeffValue operator*(CoeffValue a, const CoeffValue& b) { return a *= b; }
  friend CoeffValue operator/(CoeffValue a, const CoeffValue& b) { return a /= b; }
  CoeffValue operator-() const;

  /// Semantic equality: a concrete value equals a symbolic one only when both
  /// branches coincide with it.
  friend bool operator==(const CoeffValue& a, const CoeffValue& b);

  CoeffValue substitute(Var v, const Poly& q) const;
  /// Specializes the symbolic index to n (identity on concrete values).
  CoeffValue at(long n) const;

  std::string str() const;

 private:
  std::variant<RatFunc, ParityExpr> v_;
};

inline std::ostream& operator<<(std::ostream& os, const CoeffValue& v) { return os << v.str(); }

// Building blocks with one possibly symbolic index.
CoeffValue linear(const Index& e);             // the index as a value
CoeffValue sign_power(const Index& e);         // (-1)^e
CoeffValue reciprocal(const Index& e);         // 1/e
CoeffValue binomial(const Index& top, const Index& bottom);
/// top! / (bottoms[0]! * bottoms[1]! * ...); a symbolic top needs exactly one
/// symbolic bottom at a concrete distance below it.
CoeffValue factorial_ratio(const Index& top, std::initializer_list<Index> bottoms);

/// (m+n-1)!/((m-1)!(n-1)!) binom(m+n-1+i, i) (-1)^(n-1)/(n+i)
CoeffValue alpha(const Index& m, const Index& n, const Index& i);
/// alpha(m,n,i) + alpha(n,m,i) in closed form.
CoeffValue c_coeff(const Index& m, const Index& n, const Index& i);
/// Coefficient of eta(x_{-m-n-p}x) produced by (x_{-m}x_{-n}1)_{(-1)}x_{-p}x, closed form.
CoeffValue h_weight1(const Index& m, const Index& n, const Index& p);
/// Same scalar assembled as p c_{m,n;p} + (-1)^{p-1} c_{m,n;1} binom(m+n+p-1, p-1).
CoeffValue h_weight1_composite(const Index& m, const Index& n, const Index& p);

struct BetaGamma {
  CoeffValue beta;
  CoeffValue gamma;
};
BetaGamma beta_gamma(const Index& p, const Index& q, const Index& r);

/// F_{m,n;k} = -m + n + (m+n-2) c_{m-1,n-1;0} - k c_{m-1,n-1;1}; k stays symbolic.
CoeffValue F_const(const Index& m, const Index& n);
/// F_{m,n;k+shift}: F_const with the substitution k -> k + shift.
CoeffValue F_const_shifted(const Index& m, const Index& n, long k_shift);

/// g_{m,p,q;k}; requires p, q >= 3.
CoeffValue g_const(const Index& m, long p, long q);
/// h_{m,p,q} = -2(q-1) c_{m-1,p-1;q-1}; requires p, q >= 3.
CoeffValue h_vir(const Index& m, long p, long q);

template <class T>
struct Matrix2 {
  std::array<std::array<T, 2>, 2> a;
  const T& operator()(int i, int j) const { return a[i][j]; }
  T& operator()(int i, int j) { return a[i][j]; }
  T det() const { return a[0][0] * a[1][1] - a[0][1] * a[1][0]; }
};

/// The 2x2 matrix from the (p,q) = (6,3) and (5,4) relations.
Matrix2<CoeffValue> gamma_matrix(const Index& m);

/// p c_{m,2;p} - m c_{p,2;m}.
Rational pair_scalar(long m, long p);
/// The displayed closed form of the same scalar.
Rational pair_scalar_closed_form(long m, long p);

}  // namespace c2orb
