#pragma once

#include <ostream>
#include <string>

#include "c2orb/ratfunc.hpp"

namespace c2orb {

/// A function of one integer index, given by a rational function on even
/// values and another on odd values. The index is always the polynomial
/// variable z; `symbol` is only its display name (m, p, ...).
class ParityExpr {
 public:
  ParityExpr() = default;
  ParityExpr(std::string symbol, RatFunc even, RatFunc odd)
      : symbol_(std::move(symbol)), even_(std::move(even)), odd_(std::move(odd)) {}
  /// Same value on both branches.
  static ParityExpr uniform(std::string symbol, const RatFunc& f) { return {std::move(symbol), f, f}; }
  /// The index itself.
  static ParityExpr index(std::string symbol);

  const std::string& symbol() const { return symbol_; }
  const RatFunc& even() const { return even_; }
  const RatFunc& odd() const { return odd_; }
  const RatFunc& branch(long n) const { return (n % 2 == 0) ? even_ : odd_; }

  bool is_zero() const { return even_.is_zero() && odd_.is_zero(); }

  ParityExpr& operator+=(const ParityExpr& o);
  ParityExpr& operator-=(const ParityExpr& o);
  ParityExpr& operator*=(const ParityExpr& o);
  ParityExpr& operator/=(const ParityExpr& o);
  friend ParityExpr operator+(ParityExpr a, const ParityExpr& b) { return a += b; }
  friend ParityExpr operator-(ParityExpr a, const ParityExpr& b) { return a -= b; }
  friend ParityExpr operator*(ParityExpr a, const ParityExpr& b) { return a *= b; }
  friend ParityExpr operator/(ParityExpr a, const ParityExpr& b) { return a /= b; }
  ParityExpr operator-() const { return {symbol_, -even_, -odd_}; }

  /// Equality of stored branches (the display symbol is ignored).
  friend bool operator==(const ParityExpr& a, const ParityExpr& b) {
    return a.even_ == b.even_ && a.odd_ == b.odd_;
  }

  /// Applies a substitution on the coefficient field (k or c_V) to both branches.
  ParityExpr substitute(Var v, const Poly& q) const;

  /// Value at a concrete index; k and c_V stay symbolic.
  RatFunc evaluate(long n) const;
  /// Value at a concrete index when no k or c_V remains.
  Rational evaluate_rational(long n) const;

  std::string str() const;

 private:
  std::string symbol_ = "z";
  RatFunc even_;
  RatFunc odd_;
};

/// r with r(n) = e(n + s) for every integer n.
ParityExpr parity_shift(const ParityExpr& e, long s);

inline Rational parity_eval(const ParityExpr& e, long n) { return e.evaluate_rational(n); }

inline std::ostream& operator<<(std::ostream& os, const ParityExpr& e) { return os << e.str(); }

}  // namespace c2orb
