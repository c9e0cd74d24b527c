#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace c2orb {

using BigInt = mpz_class;

/// Exact rational number in lowest terms with positive denominator.
///
/// Values whose numerator and denominator fit in 63 bits live inline; larger
/// ones fall back to GMP. The representation is canonical: a value that fits
/// inline is never stored as a GMP number, so equality compares fields.
class Rational {
 public:
  Rational() = default;
  Rational(long n);  // NOLINT(google-explicit-constructor)
  Rational(int n) : n_(n) {}  // NOLINT(google-explicit-constructor)
  Rational(const BigInt& n) { assign(mpq_class(n)); }  // NOLINT(google-explicit-constructor)
  Rational(const BigInt& n, const BigInt& d);
  Rational(long n, long d);
  explicit Rational(const mpq_class& v) {
    mpq_class c(v);
    c.canonicalize();
    assign(std::move(c));
  }

  Rational(const Rational& o) : n_(o.n_), d_(o.d_) {
    if (o.big_) big_ = std::make_unique<mpq_class>(*o.big_);
  }
  Rational(Rational&&) noexcept = default;
  Rational& operator=(const Rational& o) {
    if (this != &o) {
      n_ = o.n_;
      d_ = o.d_;
      big_ = o.big_ ? std::make_unique<mpq_class>(*o.big_) : nullptr;
    }
    return *this;
  }
  Rational& operator=(Rational&&) noexcept = default;

  /// Parses "p", "-p" or "p/q" (decimal integers only).
  static Rational parse(std::string_view text);

  mpq_class value() const;
  BigInt num() const;
  BigInt den() const;

  bool is_zero() const { return !big_ && n_ == 0; }
  bool is_one() const { return !big_ && n_ == 1 && d_ == 1; }
  bool is_integer() const { return big_ ? big_->get_den() == 1 : d_ == 1; }
  int sign() const { return big_ ? sgn(*big_) : (n_ > 0) - (n_ < 0); }

  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  Rational operator-() const;

  friend bool operator==(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) return a.n_ == b.n_ && a.d_ == b.d_;
    if (a.big_ && b.big_) return *a.big_ == *b.big_;
    return false;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  Rational inverse() const { return Rational(1) / *this; }
  Rational abs() const { return sign() < 0 ? -*this : *this; }

  /// "p" when the denominator is one, otherwise "p/q".
  std::string str() const;

  std::size_t hash() const;

 private:
  void set_big(mpq_class v) { big_ = std::make_unique<mpq_class>(std::move(v)); n_ = 0; d_ = 1; }
  /// Stores a canonical mpq value, inline when it fits.
  void assign(mpq_class v);

  int64_t n_ = 0;
  int64_t d_ = 1;
  std::unique_ptr<mpq_class> big_;
};

inline std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational factorial(long n);
/// Generalized binomial coefficient binom(top, i) for any integer top, i >= 0.
Rational binomial(long top, long i);
inline Rational sign_power(long e) { return (e % 2 == 0) ? Rational(1) : Rational(-1); }

}  // namespace c2orb

template <>
struct std::hash<c2orb::Rational> {
  std::size_t operator()(const c2orb::Rational& r) const { return r.hash(); }
};
