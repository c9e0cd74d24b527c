#include "c2orb/parity_expr.hpp"

#include <stdexcept>

namespace c2orb {

ParityExpr ParityExpr::index(std::string symbol) {
  return uniform(std::move(symbol), RatFunc(Poly::variable(Var::z)));
}

ParityExpr& ParityExpr::operator+=(const ParityExpr& o) {
  even_ += o.even_;
  odd_ += o.odd_;
  return *this;
}

ParityExpr& ParityExpr::operator-=(const ParityExpr& o) {
  even_ -= o.even_;
  odd_ -= o.odd_;
  return *this;
}

ParityExpr& ParityExpr::operator*=(const ParityExpr& o) {
  even_ *= o.even_;
  odd_ *= o.odd_;
  return *this;
}

ParityExpr& ParityExpr::operator/=(const ParityExpr& o) {
  even_ /= o.even_;
  odd_ /= o.odd_;
  return *this;
}

ParityExpr ParityExpr::substitute(Var v, const Poly& q) const {
  if (v == Var::z) throw std::invalid_argument("the index variable cannot be substituted here");
  return {symbol_, even_.substitute(v, q), odd_.substitute(v, q)};
}

RatFunc ParityExpr::evaluate(long n) const { return branch(n).evaluate(Var::z, Rational(n)); }

Rational ParityExpr::evaluate_rational(long n) const {
  const RatFunc r = evaluate(n);
  if (!r.is_constant()) throw std::domain_error("value still depends on k or c_V: " + r.str());
  return r.num().constant_term();
}

std::string ParityExpr::str() const {
  if (even_ == odd_) return even_.str();
  return "{" + symbol_ + " even: " + even_.str() + "; " + symbol_ + " odd: " + odd_.str() + "}";
}

ParityExpr parity_shift(const ParityExpr& e, long s) {
  const Poly shifted = Poly::variable(Var::z) + Poly(s);
  const bool swap = (s % 2) != 0;
  const RatFunc& from_even = swap ? e.odd() : e.even();
  const RatFunc& from_odd = swap ? e.even() : e.odd();
  return {e.symbol(), from_even.substitute(Var::z, shifted), from_odd.substitute(Var::z, shifted)};
}

}  // namespace c2orb
