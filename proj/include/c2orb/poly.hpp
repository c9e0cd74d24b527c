#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <utility>

#include "c2orb/rational.hpp"

namespace c2orb {

/// The three coefficient symbols: z (the free integer index), the L0-weight
/// k, and the central charge c_V.
enum class Var : int { z = 0, k = 1, c = 2 };
inline constexpr int kNumVars = 3;

const char* var_name(Var v);

using Exponent = std::array<std::uint16_t, kNumVars>;

/// Graded lexicographic order, largest first (z > k > c).
struct GradedLexGreater {
  bool operator()(const Exponent& a, const Exponent& b) const;
};

/// Multivariate polynomial over Q in z, k, c_V.
///
/// Terms are kept in a map ordered by graded lex (leading term first) with no
/// zero coefficients, so equal polynomials have identical storage.
class Poly {
 public:
  using Terms = std::map<Exponent, Rational, GradedLexGreater>;

  Poly() = default;
  Poly(const Rational& c);  // NOLINT(google-explicit-constructor)
  Poly(long c) : Poly(Rational(c)) {}  // NOLINT(google-explicit-constructor)
  Poly(int c) : Poly(Rational(c)) {}   // NOLINT(google-explicit-constructor)

  static Poly variable(Var v);
  static Poly monomial(const Exponent& e, const Rational& c);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_one() const;
  Rational constant_term() const;
  bool uses(Var v) const { return degree(v) > 0; }

  int degree(Var v) const;
  int total_degree() const;
  const Exponent& leading_exponent() const;
  const Rational& leading_coefficient() const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly& operator*=(const Rational& c);

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
  friend Poly operator*(const Rational& c, Poly a) { return a *= c; }
  Poly operator-() const;

  friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }

  Poly pow(unsigned e) const;
  /// Replaces v by q everywhere.
  Poly substitute(Var v, const Poly& q) const;
  Poly evaluate(Var v, const Rational& x) const { return substitute(v, Poly(x)); }

  /// View as a univariate polynomial in v: degree -> coefficient free of v.
  std::map<int, Poly> coefficients_in(Var v) const;
  static Poly from_coefficients(Var v, const std::map<int, Poly>& coeffs);

  /// Expanded canonical form, e.g. "16/952560*z^16*k + 3*c - 1".
  std::string str() const;

 private:
  void add_term(const Exponent& e, const Rational& c);
  Terms terms_;
};

/// Exact quotient a / b; throws std::domain_error when b does not divide a.
Poly exact_divide(const Poly& a, const Poly& b);

/// Greatest common divisor, normalized to leading coefficient 1 (0 if both zero).
Poly gcd(const Poly& a, const Poly& b);

/// Pseudo-remainder of a by b viewed as polynomials in v.
Poly pseudo_remainder(const Poly& a, const Poly& b, Var v);

inline std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << p.str(); }

}  // namespace c2orb
