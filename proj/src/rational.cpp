#include "c2orb/rational.hpp"

#include <vector>

namespace c2orb {

namespace {

using i128 = __int128;

// Inline values keep |num|, den < 2^62 so that products of two fit in 128 bits.
constexpr i128 kMax = (static_cast<i128>(1) << 62) - 1;

bool fits(i128 x) { return x <= kMax && x >= -kMax; }

uint64_t ugcd(uint64_t a, uint64_t b) {
  while (b != 0) {
    const uint64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

unsigned __int128 ugcd128(unsigned __int128 a, unsigned __int128 b) {
  while (b != 0) {
    if (a >> 64 == 0 && b >> 64 == 0) return ugcd(static_cast<uint64_t>(a), static_cast<uint64_t>(b));
    const unsigned __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

mpz_class to_mpz(i128 x) {
  const bool neg = x < 0;
  unsigned __int128 u = neg ? -static_cast<unsigned __int128>(x) : static_cast<unsigned __int128>(x);
  mpz_class hi(static_cast<unsigned long>(static_cast<uint64_t>(u >> 64)));
  mpz_class lo(static_cast<unsigned long>(static_cast<uint64_t>(u)));
  mpz_class r = (hi << 64) + lo;
  return neg ? mpz_class(-r) : r;
}

}  // namespace

void Rational::assign(mpq_class v) {
  const mpz_class& num = v.get_num();
  const mpz_class& den = v.get_den();
  if (mpz_sizeinbase(num.get_mpz_t(), 2) <= 62 && mpz_sizeinbase(den.get_mpz_t(), 2) <= 62) {
    big_.reset();
    n_ = num.get_si();
    d_ = den.get_si();
  } else {
    set_big(std::move(v));
  }
}

// Reduces num/den (den > 0) and reports whether the result fits inline.
static bool reduce_small(i128 num, i128 den, int64_t& n, int64_t& d) {
  if (num == 0) {
    n = 0;
    d = 1;
    return true;
  }
  const unsigned __int128 an = num < 0 ? -static_cast<unsigned __int128>(num) : static_cast<unsigned __int128>(num);
  const unsigned __int128 g = ugcd128(an, static_cast<unsigned __int128>(den));
  if (g > 1) {
    num /= static_cast<i128>(g);
    den /= static_cast<i128>(g);
  }
  if (!fits(num) || !fits(den)) return false;
  n = static_cast<int64_t>(num);
  d = static_cast<int64_t>(den);
  return true;
}

Rational::Rational(long n, long d) {
  if (d == 0) throw std::domain_error("zero divisor");
  i128 num = n, den = d;
  if (den < 0) {
    num = -num;
    den = -den;
  }
  int64_t a, b;
  if (reduce_small(num, den, a, b)) {
    n_ = a;
    d_ = b;
    return;
  }
  mpq_class q{mpz_class(n), mpz_class(d)};
  q.canonicalize();
  assign(std::move(q));
}

Rational::Rational(long n) : n_(n) {
  if (!fits(n)) set_big(mpq_class(mpz_class(n)));
}

Rational::Rational(const BigInt& n, const BigInt& d) {
  if (d == 0) throw std::domain_error("zero divisor");
  mpq_class q(n, d);
  q.canonicalize();
  assign(std::move(q));
}

Rational Rational::parse(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  const auto slash = text.find('/');
  BigInt n, d = 1;
  try {
    if (slash == std::string_view::npos) {
      n = BigInt(std::string(text), 10);
    } else {
      n = BigInt(std::string(text.substr(0, slash)), 10);
      d = BigInt(std::string(text.substr(slash + 1)), 10);
    }
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("malformed rational literal: " + std::string(text));
  }
  return Rational(n, d);
}

mpq_class Rational::value() const {
  if (big_) return *big_;
  return mpq_class(mpz_class(static_cast<long>(n_)), mpz_class(static_cast<long>(d_)));
}

BigInt Rational::num() const { return big_ ? BigInt(big_->get_num()) : BigInt(static_cast<long>(n_)); }
BigInt Rational::den() const { return big_ ? BigInt(big_->get_den()) : BigInt(static_cast<long>(d_)); }

Rational& Rational::operator+=(const Rational& o) {
  if (!big_ && !o.big_) {
    i128 num, den;
    if (d_ == o.d_) {
      num = static_cast<i128>(n_) + o.n_;
      den = d_;
    } else {
      num = static_cast<i128>(n_) * o.d_ + static_cast<i128>(o.n_) * d_;
      den = static_cast<i128>(d_) * o.d_;
    }
    int64_t n, d;
    if (d_ == 1 && o.d_ == 1 && fits(num)) {
      n_ = static_cast<int64_t>(num);
      return *this;
    }
    if (reduce_small(num, den, n, d)) {
      n_ = n;
      d_ = d;
      return *this;
    }
    mpq_class q(to_mpz(num), to_mpz(den));
    q.canonicalize();
    assign(std::move(q));
    return *this;
  }
  assign(value() + o.value());
  return *this;
}

Rational& Rational::operator-=(const Rational& o) { return *this += -o; }

Rational& Rational::operator*=(const Rational& o) {
  if (!big_ && !o.big_) {
    if (n_ == 0 || o.n_ == 0) {
      n_ = 0;
      d_ = 1;
      return *this;
    }
    const uint64_t g1 = ugcd(static_cast<uint64_t>(n_ < 0 ? -n_ : n_), static_cast<uint64_t>(o.d_));
    const uint64_t g2 = ugcd(static_cast<uint64_t>(o.n_ < 0 ? -o.n_ : o.n_), static_cast<uint64_t>(d_));
    const i128 num = static_cast<i128>(n_ / static_cast<int64_t>(g1)) * (o.n_ / static_cast<int64_t>(g2));
    const i128 den = static_cast<i128>(d_ / static_cast<int64_t>(g2)) * (o.d_ / static_cast<int64_t>(g1));
    if (fits(num) && fits(den)) {
      n_ = static_cast<int64_t>(num);
      d_ = static_cast<int64_t>(den);
      return *this;
    }
    mpq_class q(to_mpz(num), to_mpz(den));
    assign(std::move(q));
    return *this;
  }
  assign(value() * o.value());
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("zero divisor");
  if (!o.big_) {
    Rational inv;
    if (o.n_ < 0) {
      inv.n_ = -o.d_;
      inv.d_ = -o.n_;
    } else {
      inv.n_ = o.d_;
      inv.d_ = o.n_;
    }
    return *this *= inv;
  }
  assign(value() / o.value());
  return *this;
}

Rational Rational::operator-() const {
  Rational r;
  if (big_) {
    r.set_big(mpq_class(-*big_));
  } else {
    r.n_ = -n_;
    r.d_ = d_;
  }
  return r;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  int c;
  if (!a.big_ && !b.big_) {
    const i128 l = static_cast<i128>(a.n_) * b.d_, r = static_cast<i128>(b.n_) * a.d_;
    c = (l > r) - (l < r);
  } else {
    c = cmp(a.value(), b.value());
  }
  return c < 0 ? std::strong_ordering::less : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::string Rational::str() const {
  if (big_) return big_->get_str();
  if (d_ == 1) return std::to_string(n_);
  return std::to_string(n_) + "/" + std::to_string(d_);
}

std::size_t Rational::hash() const {
  if (!big_) {
    std::size_t h = static_cast<std::size_t>(n_) * 0x9E3779B97F4A7C15ULL;
    return h ^ (static_cast<std::size_t>(d_) + 0x7F4A7C15ULL + (h << 6) + (h >> 2));
  }
  // Low limbs are enough for a hash; equality is checked separately.
  const auto limb = [](const mpz_class& z) -> std::size_t {
    return mpz_size(z.get_mpz_t()) == 0 ? 0 : static_cast<std::size_t>(mpz_getlimbn(z.get_mpz_t(), 0));
  };
  std::size_t h = limb(big_->get_num()) * 0x9E3779B97F4A7C15ULL;
  h ^= limb(big_->get_den()) + 0x7F4A7C15ULL + (h << 6) + (h >> 2);
  return h ^ static_cast<std::size_t>(sgn(*big_) + 1);
}

Rational factorial(long n) {
  if (n < 0) throw std::domain_error("factorial of negative integer");
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return Rational(r);
}

namespace {

constexpr long kTableTop = 96;
constexpr long kTableI = 96;

Rational binomial_direct(long top, long i) {
  Rational r(1);
  for (long j = 0; j < i; ++j) r = r * Rational(top - j) / Rational(j + 1);
  return r;
}

const std::vector<Rational>& binomial_table() {
  static const std::vector<Rational> table = [] {
    std::vector<Rational> t;
    t.reserve((2 * kTableTop + 1) * (kTableI + 1));
    for (long top = -kTableTop; top <= kTableTop; ++top)
      for (long i = 0; i <= kTableI; ++i) t.push_back(binomial_direct(top, i));
    return t;
  }();
  return table;
}

}  // namespace

Rational binomial(long top, long i) {
  if (i < 0) return Rational(0);
  if (top >= -kTableTop && top <= kTableTop && i <= kTableI)
    return binomial_table()[(top + kTableTop) * (kTableI + 1) + i];
  Rational r(1);
  for (long j = 0; j < i; ++j) r *= Rational(top - j);
  return r / factorial(i);
}

}  // namespace c2orb
