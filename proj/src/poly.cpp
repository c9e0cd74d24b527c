#include "c2orb/poly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace c2orb {

const char* var_name(Var v) {
  switch (v) {
    case Var::z: return "z";
    case Var::k: return "k";
    case Var::c: return "cV";
  }
  return "?";
}

namespace {

int total(const Exponent& e) {
  int t = 0;
  for (auto x : e) t += x;
  return t;
}

bool divides(const Exponent& d, const Exponent& e) {
  for (int i = 0; i < kNumVars; ++i)
    if (d[i] > e[i]) return false;
  return true;
}

Exponent unit_exponent(Var v, int power) {
  Exponent e{};
  e[static_cast<int>(v)] = static_cast<std::uint16_t>(power);
  return e;
}

Poly normalized(Poly p) {
  if (p.is_zero()) return p;
  return p * p.leading_coefficient().inverse();
}

}  // namespace

bool GradedLexGreater::operator()(const Exponent& a, const Exponent& b) const {
  const int ta = total(a), tb = total(b);
  if (ta != tb) return ta > tb;
  return a > b;
}

Poly::Poly(const Rational& c) {
  if (!c.is_zero()) terms_.emplace(Exponent{}, c);
}

Poly Poly::variable(Var v) { return monomial(unit_exponent(v, 1), Rational(1)); }

Poly Poly::monomial(const Exponent& e, const Rational& c) {
  Poly p;
  if (!c.is_zero()) p.terms_.emplace(e, c);
  return p;
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && total(terms_.begin()->first) == 0);
}

bool Poly::is_one() const { return is_constant() && !terms_.empty() && terms_.begin()->second.is_one(); }

Rational Poly::constant_term() const {
  auto it = terms_.find(Exponent{});
  return it == terms_.end() ? Rational(0) : it->second;
}

int Poly::degree(Var v) const {
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max<int>(d, e[static_cast<int>(v)]);
  return d;
}

int Poly::total_degree() const { return terms_.empty() ? -1 : total(terms_.begin()->first); }

const Exponent& Poly::leading_exponent() const {
  if (terms_.empty()) throw std::domain_error("leading term of zero polynomial");
  return terms_.begin()->first;
}

const Rational& Poly::leading_coefficient() const {
  if (terms_.empty()) throw std::domain_error("leading term of zero polynomial");
  return terms_.begin()->second;
}

void Poly::add_term(const Exponent& e, const Rational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Poly& Poly::operator+=(const Poly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly r;
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      Exponent e;
      for (int i = 0; i < kNumVars; ++i) e[i] = static_cast<std::uint16_t>(ea[i] + eb[i]);
      r.add_term(e, ca * cb);
    }
  }
  return r;
}

Poly& Poly::operator*=(const Poly& o) { return *this = *this * o; }

Poly& Poly::operator*=(const Rational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, x] : terms_) x *= c;
  return *this;
}

Poly Poly::operator-() const { return *this * Rational(-1); }

Poly Poly::pow(unsigned e) const {
  Poly r(1), base = *this;
  while (e) {
    if (e & 1U) r *= base;
    e >>= 1U;
    if (e) base = base * base;
  }
  return r;
}

Poly Poly::substitute(Var v, const Poly& q) const {
  const auto coeffs = coefficients_in(v);
  // Horner from the top degree down.
  Poly r;
  int prev = -1;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    if (prev >= 0) r *= q.pow(static_cast<unsigned>(prev - it->first));
    r += it->second;
    prev = it->first;
  }
  if (prev > 0) r *= q.pow(static_cast<unsigned>(prev));
  return r;
}

std::map<int, Poly> Poly::coefficients_in(Var v) const {
  std::map<int, Poly> out;
  const int idx = static_cast<int>(v);
  for (const auto& [e, c] : terms_) {
    Exponent rest = e;
    const int d = rest[idx];
    rest[idx] = 0;
    out[d].add_term(rest, c);
  }
  return out;
}

Poly Poly::from_coefficients(Var v, const std::map<int, Poly>& coeffs) {
  Poly r;
  for (const auto& [d, c] : coeffs) r += c * monomial(unit_exponent(v, d), Rational(1));
  return r;
}

std::string Poly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    const bool has_vars = total(e) > 0;
    Rational mag = c.abs();
    if (first) {
      if (c.sign() < 0) os << "-";
    } else {
      os << (c.sign() < 0 ? " - " : " + ");
    }
    first = false;
    bool need_star = false;
    if (!has_vars || !mag.is_one()) {
      os << mag.str();
      need_star = true;
    }
    for (int i = 0; i < kNumVars; ++i) {
      if (e[i] == 0) continue;
      if (need_star) os << "*";
      os << var_name(static_cast<Var>(i));
      if (e[i] > 1) os << "^" << e[i];
      need_star = true;
    }
  }
  return os.str();
}

Poly exact_divide(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw std::domain_error("zero divisor");
  if (b.is_constant()) return a * b.constant_term().inverse();
  Poly q, r = a;
  const Exponent& eb = b.leading_exponent();
  const Rational& cb = b.leading_coefficient();
  while (!r.is_zero()) {
    const Exponent& er = r.leading_exponent();
    if (!divides(eb, er)) throw std::domain_error("inexact polynomial division");
    Exponent e;
    for (int i = 0; i < kNumVars; ++i) e[i] = static_cast<std::uint16_t>(er[i] - eb[i]);
    const Poly t = Poly::monomial(e, r.leading_coefficient() / cb);
    q += t;
    r -= t * b;
  }
  return q;
}

Poly pseudo_remainder(const Poly& a, const Poly& b, Var v) {
  const int db = b.degree(v);
  const Poly lcb = b.coefficients_in(v).rbegin()->second;
  Poly r = a;
  int e = a.degree(v) - db + 1;
  while (!r.is_zero() && r.degree(v) >= db && e > 0) {
    const int dr = r.degree(v);
    const Poly lr = r.coefficients_in(v).rbegin()->second;
    r = r * lcb - lr * Poly::monomial(unit_exponent(v, dr - db), Rational(1)) * b;
    --e;
  }
  if (e > 0) r *= lcb.pow(static_cast<unsigned>(e));
  return r;
}

namespace {

Poly gcd_impl(const Poly& a, const Poly& b);

Poly content(const Poly& p, Var v) {
  Poly g;
  for (const auto& [d, c] : p.coefficients_in(v)) {
    g = gcd_impl(g, c);
    if (g.is_constant() && !g.is_zero()) return Poly(1);
  }
  return normalized(g);
}

Poly gcd_impl(const Poly& a, const Poly& b) {
  if (a.is_zero()) return normalized(b);
  if (b.is_zero()) return normalized(a);
  if (a.is_constant() || b.is_constant()) return Poly(1);

  Var v = Var::z;
  for (int i = kNumVars - 1; i >= 0; --i) {
    if (a.uses(static_cast<Var>(i)) || b.uses(static_cast<Var>(i))) {
      v = static_cast<Var>(i);
      break;
    }
  }
  if (!a.uses(v)) return gcd_impl(a, content(b, v));
  if (!b.uses(v)) return gcd_impl(content(a, v), b);

  const Poly ca = content(a, v), cb = content(b, v);
  Poly x = exact_divide(a, ca), y = exact_divide(b, cb);
  const Poly g = gcd_impl(ca, cb);
  if (x.degree(v) < y.degree(v)) std::swap(x, y);
  for (;;) {
    Poly r = pseudo_remainder(x, y, v);
    if (r.is_zero()) return normalized(g * y);
    if (!r.uses(v)) return g;
    x = std::move(y);
    y = normalized(exact_divide(r, content(r, v)));
  }
}

}  // namespace

Poly gcd(const Poly& a, const Poly& b) { return gcd_impl(a, b); }

}  // namespace c2orb
