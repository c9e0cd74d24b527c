#pragma once

#include <ostream>
#include <string>

#include "c2orb/poly.hpp"

namespace c2orb {

/// Rational function num/den over Q(z, k, c_V) in canonical form:
/// gcd(num, den) = 1 and den has leading coefficient 1 (den = 1 for polynomials).
class RatFunc {
 public:
  RatFunc() : den_(1) {}
  RatFunc(const Poly& p) : num_(p), den_(1) {}  // NOLINT(google-explicit-constructor)
  RatFunc(const Rational& c) : num_(c), den_(1) {}  // NOLINT(google-explicit-constructor)
  RatFunc(long c) : num_(c), den_(1) {}  // NOLINT(google-explicit-constructor)
  RatFunc(int c) : num_(c), den_(1) {}   // NOLINT(google-explicit-constructor)
  RatFunc(Poly num, Poly den);

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_one(); }
  bool is_constant() const { return is_polynomial() && num_.is_constant(); }
  bool uses(Var v) const { return num_.uses(v) || den_.uses(v); }

  RatFunc& operator+=(const RatFunc& o);
  RatFunc& operator-=(const RatFunc& o);
  RatFunc& operator*=(const RatFunc& o);
  RatFunc& operator/=(const RatFunc& o);

  friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
  friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
  friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
  friend RatFunc operator/(RatFunc a, const RatFunc& b) { return a /= b; }
  RatFunc operator-() const;

  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  RatFunc substitute(Var v, const Poly& q) const;
  /// Substitutes v = x; throws "evaluation at pole" when the denominator vanishes.
  RatFunc evaluate(Var v, const Rational& x) const;

  std::string str() const;

 private:
  void normalize();
  Poly num_;
  Poly den_;
};

inline std::ostream& operator<<(std::ostream& os, const RatFunc& r) { return os << r.str(); }

}  // namespace c2orb
