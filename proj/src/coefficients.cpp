#include "c2orb/coefficients.hpp"

#include <stdexcept>

namespace c2orb {

namespace {

void check_single_symbol(std::initializer_list<const Index*> args) {
  int n = 0;
  for (const Index* a : args) n += a->symbolic ? 1 : 0;
  if (n > 1) throw std::invalid_argument("at most one symbolic index is supported");
}

void check_positive(std::initializer_list<const Index*> args, long lower = 1) {
  for (const Index* a : args)
    if (!a->symbolic && a->offset < lower) throw std::domain_error("index out of domain");
}

CoeffValue k_symbol() { return CoeffValue(RatFunc(Poly::variable(Var::k))); }
CoeffValue cv_symbol() { return CoeffValue(RatFunc(Poly::variable(Var::c))); }

}  // namespace

Index Index::operator+(const Index& o) const {
  if (symbolic && o.symbolic) throw std::invalid_argument("sum of two symbolic indices");
  return {offset + o.offset, symbolic || o.symbolic, symbolic ? symbol : o.symbol};
}

Index Index::operator-(const Index& o) const {
  if (o.symbolic) throw std::invalid_argument("cannot subtract a symbolic index");
  return {offset - o.offset, symbolic, symbol};
}

// ---------------------------------------------------------------------------
// CoeffValue

const RatFunc& CoeffValue::concrete() const {
  if (is_symbolic()) throw std::logic_error("coefficient value is symbolic");
  return std::get<RatFunc>(v_);
}

Rational CoeffValue::rational() const {
  const RatFunc& f = concrete();
  if (!f.is_constant()) throw std::domain_error("value still depends on k or c_V: " + f.str());
  return f.num().constant_term();
}

ParityExpr CoeffValue::parity(const std::string& symbol) const {
  if (is_symbolic()) return std::get<ParityExpr>(v_);
  return ParityExpr::uniform(symbol, std::get<RatFunc>(v_));
}

bool CoeffValue::is_zero() const {
  return is_symbolic() ? std::get<ParityExpr>(v_).is_zero() : std::get<RatFunc>(v_).is_zero();
}

#define C2ORB_COEFF_BINOP(OP)                                                   \
  CoeffValue& CoeffValue::operator OP(const CoeffValue& o) {                    \
    if (!is_symbolic() && !o.is_symbolic()) {                                   \
      std::get<RatFunc>(v_) OP std::get<RatFunc>(o.v_);                         \
      return *this;                                                             \
    }                                                                           \
    const std::string sym = is_symbolic() ? std::get<ParityExpr>(v_).symbol()  \
                                          : std::get<ParityExpr>(o.v_).symbol(); \
    ParityExpr lhs = parity(sym);                                               \
    lhs OP o.parity(sym);                                  \
    v_ = std::move(lhs);                                                        \
    return *this;                                                               \
  }

C2ORB_COEFF_BINOP(+=)
C2ORB_COEFF_BINOP(-=)
C2ORB_COEFF_BINOP(*=)
C2ORB_COEFF_BINOP(/=)
#undef C2ORB_COEFF_BINOP

CoeffValue CoeffValue::operator-() const {
  if (is_symbolic()) return CoeffValue(-std::get<ParityExpr>(v_));
  return CoeffValue(-std::get<RatFunc>(v_));
}

bool operator==(const CoeffValue& a, const CoeffValue& b) {
  if (!a.is_symbolic() && !b.is_symbolic()) return a.concrete() == b.concrete();
  return a.parity() == b.parity();
}

CoeffValue CoeffValue::substitute(Var v, const Poly& q) const {
  if (is_symbolic()) return CoeffValue(std::get<ParityExpr>(v_).substitute(v, q));
  return CoeffValue(std::get<RatFunc>(v_).substitute(v, q));
}

CoeffValue CoeffValue::at(long n) const {
  if (!is_symbolic()) return *this;
  return CoeffValue(std::get<ParityExpr>(v_).evaluate(n));
}

std::string CoeffValue::str() const {
  return is_symbolic() ? std::get<ParityExpr>(v_).str() : std::get<RatFunc>(v_).str();
}

// ---------------------------------------------------------------------------
// Building blocks

CoeffValue linear(const Index& e) {
  if (!e.symbolic) return CoeffValue(Rational(e.offset));
  return CoeffValue(ParityExpr::uniform(e.symbol, RatFunc(Poly::variable(Var::z) + Poly(e.offset))));
}

CoeffValue sign_power(const Index& e) {
  if (!e.symbolic) return CoeffValue(sign_power(e.offset));
  return CoeffValue(ParityExpr(e.symbol, RatFunc(sign_power(e.offset)), RatFunc(sign_power(e.offset + 1))));
}

CoeffValue reciprocal(const Index& e) {
  if (!e.symbolic) {
    if (e.offset == 0) throw std::domain_error("evaluation at pole");
    return CoeffValue(Rational(1, e.offset));
  }
  return CoeffValue(ParityExpr::uniform(e.symbol, RatFunc(Poly(1), Poly::variable(Var::z) + Poly(e.offset))));
}

CoeffValue binomial(const Index& top, const Index& bottom) {
  if (bottom.symbolic) {
    if (!top.symbolic) throw std::invalid_argument("binomial with symbolic lower index needs a symbolic upper index");
    const long d = top.offset - bottom.offset;
    if (d < 0) return CoeffValue(Rational(0));
    return binomial(top, Index::at(d));
  }
  const long i = bottom.offset;
  if (i < 0) return CoeffValue(Rational(0));
  if (!top.symbolic) return CoeffValue(c2orb::binomial(top.offset, i));
  CoeffValue r(Rational(1));
  for (long j = 1; j <= i; ++j) r *= linear(top - i + j);
  return r / CoeffValue(factorial(i));
}

CoeffValue factorial_ratio(const Index& top, std::initializer_list<Index> bottoms) {
  CoeffValue r(Rational(1));
  Rational denom(1);
  bool used_symbolic = false;
  for (const Index& b : bottoms) {
    if (!b.symbolic) {
      if (b.offset < 0) throw std::domain_error("index out of domain");
      denom *= factorial(b.offset);
      continue;
    }
    if (!top.symbolic || used_symbolic) throw std::invalid_argument("unsupported symbolic factorial ratio");
    used_symbolic = true;
    const long d = top.offset - b.offset;
    if (d < 0) throw std::domain_error("index out of domain");
    for (long j = 1; j <= d; ++j) r *= linear(b + j);
  }
  if (top.symbolic && !used_symbolic) throw std::invalid_argument("unsupported symbolic factorial ratio");
  if (!top.symbolic) {
    if (top.offset < 0) throw std::domain_error("index out of domain");
    r = CoeffValue(factorial(top.offset));
  }
  return r / CoeffValue(denom);
}

// ---------------------------------------------------------------------------
// Coefficient families

CoeffValue alpha(const Index& m, const Index& n, const Index& i) {
  check_single_symbol({&m, &n, &i});
  check_positive({&m, &n});
  check_positive({&i}, 0);
  return factorial_ratio(m + n - 1, {m - 1, n - 1}) * binomial(m + n - 1 + i, i) * sign_power(n - 1) *
         reciprocal(n + i);
}

CoeffValue c_coeff(const Index& m, const Index& n, const Index& i) {
  check_single_symbol({&m, &n, &i});
  check_positive({&m, &n});
  check_positive({&i}, 0);
  return factorial_ratio(m + n - 1, {m - 1, n - 1}) * binomial(m + n - 1 + i, i) *
         (sign_power(n - 1) * reciprocal(n + i) + sign_power(m - 1) * reciprocal(m + i));
}

CoeffValue h_weight1(const Index& m, const Index& n, const Index& p) {
  check_single_symbol({&m, &n, &p});
  check_positive({&m, &n, &p});
  return factorial_ratio(m + n + p - 1, {m - 1, n - 1, p - 1}) *
         (sign_power(n - 1) * reciprocal(n + p) + sign_power(m - 1) * reciprocal(m + p) +
          sign_power(n + p) * reciprocal(n + 1) + sign_power(m + p) * reciprocal(m + 1));
}

CoeffValue h_weight1_composite(const Index& m, const Index& n, const Index& p) {
  check_single_symbol({&m, &n, &p});
  check_positive({&m, &n, &p});
  // binom(m+n+p-1, p-1) written with the concrete-friendly lower index m+n.
  const Index mn = m + n;
  const CoeffValue b = mn.symbolic ? binomial(m + n + p - 1, Index::at(p.offset - 1))
                                   : binomial(m + n + p - 1, mn);
  return linear(p) * c_coeff(m, n, p) + sign_power(p - 1) * c_coeff(m, n, Index::at(1)) * b;
}

BetaGamma beta_gamma(const Index& p, const Index& q, const Index& r) {
  check_single_symbol({&p, &q, &r});
  check_positive({&p, &q, &r});
  const CoeffValue quarter(Rational(1, 4)), half(Rational(1, 2));
  CoeffValue beta = quarter * (sign_power(p - 1) * reciprocal(p) + sign_power(q - 1) * reciprocal(q)) *
                    (sign_power(p + q - 1) * reciprocal(p + q) + sign_power(r - 1) * reciprocal(r));
  CoeffValue gamma = -half * (sign_power(p - 1) * reciprocal(p + r) + sign_power(q - 1) * reciprocal(q + r));
  return {std::move(beta), std::move(gamma)};
}

CoeffValue F_const(const Index& m, const Index& n) {
  check_single_symbol({&m, &n});
  check_positive({&m, &n}, 2);
  return -linear(m) + linear(n) + linear(m + n - 2) * c_coeff(m - 1, n - 1, Index::at(0)) -
         k_symbol() * c_coeff(m - 1, n - 1, Index::at(1));
}

CoeffValue F_const_shifted(const Index& m, const Index& n, long k_shift) {
  return F_const(m, n).substitute(Var::k, Poly::variable(Var::k) + Poly(k_shift));
}

CoeffValue g_const(const Index& m, long p, long q) {
  if (q < 3) throw std::domain_error("outside derivation domain");
  const Index P = Index::at(p), Q = Index::at(q);
  const CoeffValue half(Rational(1, 2));
  CoeffValue g = half * F_const_shifted(m, P, q) * F_const(m + p, Q);
  for (long i = 2; i <= q - 2; ++i) {
    g -= half * c_coeff(m - 1, P - 1, Index::at(i)) * CoeffValue(q + i - 1) *
         F_const(m + (p + i - 1), Index::at(q + 1 - i));
  }
  g += linear(m + (p + q - 2)) * c_coeff(m - 1, P - 1, Q) * CoeffValue(2 * q - 1);
  g -= (CoeffValue(2) * k_symbol() + CoeffValue(Rational(q * q - 1, 12)) * cv_symbol()) * CoeffValue(q) *
       c_coeff(m - 1, P - 1, Q + 1);
  return g;
}

CoeffValue h_vir(const Index& m, long p, long q) {
  if (q < 3) throw std::domain_error("outside derivation domain");
  return CoeffValue(-2 * (q - 1)) * c_coeff(m - 1, Index::at(p - 1), Index::at(q - 1));
}

Matrix2<CoeffValue> gamma_matrix(const Index& m) {
  Matrix2<CoeffValue> g;
  g(0, 0) = g_const(m, 6, 3) - g_const(m, 3, 6) + CoeffValue(3) * F_const(m, Index::at(9));
  g(0, 1) = h_vir(m, 6, 3) - h_vir(m, 3, 6);
  g(1, 0) = g_const(m, 5, 4) - g_const(m, 4, 5) + F_const(m, Index::at(9));
  g(1, 1) = h_vir(m, 5, 4) - h_vir(m, 4, 5);
  return g;
}

Rational pair_scalar(long m, long p) {
  const Index M = Index::at(m), P = Index::at(p), two = Index::at(2);
  return (CoeffValue(p) * c_coeff(M, two, P) - CoeffValue(m) * c_coeff(P, two, M)).rational();
}

Rational pair_scalar_closed_form(long m, long p) {
  if (m < 1 || p < 1) throw std::domain_error("index out of domain");
  const Rational pref = factorial(m + p + 1) / (factorial(m - 1) * factorial(p - 1));
  return pref * (Rational(-1, p + 2) + sign_power(m - 1) * Rational(1, m + p) + Rational(1, m + 2) -
                 sign_power(p - 1) * Rational(1, m + p));
}

}  // namespace c2orb
