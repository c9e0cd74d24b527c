#include "c2orb/orbifold.hpp"

#include <atomic>
#include <stdexcept>
#include <thread>

#include "c2orb/coefficients.hpp"
#include "json.hpp"

namespace c2orb {

std::string TensorMonomial::str(const VoaSpec& spec) const {
  return "[" + left.str(spec) + " (x) " + right.str(spec) + "]";
}

void TensorVector::add(const TensorVector& v, const Rational& c) {
  if (c.is_zero()) return;
  for (const auto& [t, x] : v.terms_) add_raw(t, x * c);
}

TensorVector TensorVector::swapped() const {
  TensorVector r;
  for (const auto& [t, x] : terms_) r.add_raw(t.swapped(), x);
  return r;
}

void SymTensorVector::add(const SymTensorVector& v, const Rational& c) {
  if (c.is_zero()) return;
  for (const auto& [t, x] : v.terms_) add_raw(t, x * c);
}

SymTensorVector& SymTensorVector::operator*=(const Rational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [t, x] : terms_) x *= c;
  return *this;
}

SymTensorVector SymTensorVector::from_full(const TensorVector& v) {
  SymTensorVector r;
  for (const auto& [t, x] : v.terms()) {
    if (!t.is_canonical()) {
      if (v.coefficient(t.swapped()) != x) throw std::invalid_argument("tensor vector is not S2-fixed");
      continue;
    }
    r.add_raw(t, x);
  }
  return r;
}

TensorVector SymTensorVector::to_full() const {
  TensorVector r;
  for (const auto& [t, x] : terms_) {
    r.add(t, x);
    if (!(t.left == t.right)) r.add(t.swapped(), x);
  }
  return r;
}

std::string ProbeResult::json() const {
  nlohmann::ordered_json j;
  j["voa"] = voa;
  j["x"] = x;
  j["y"] = y;
  j["cutoff"] = cutoff;
  j["window"] = window;
  auto d = nlohmann::ordered_json::array();
  for (const auto& [n, k] : dims) d.push_back({n, k});
  j["dims"] = d;
  j["stabilized_at"] = stabilized_at ? nlohmann::ordered_json(*stabilized_at) : nlohmann::ordered_json(nullptr);
  j["stabilized_weight"] =
      stabilized_weight ? nlohmann::ordered_json(*stabilized_weight) : nlohmann::ordered_json(nullptr);
  j["witnesses"] = witnesses;
  j["verdict"] = verdict();
  return j.dump();
}

namespace {

VoaSpec checked(VoaSpec spec) {
  if (spec.kind != VoaKind::heisenberg) throw std::invalid_argument("orbifold lab needs a Heisenberg spec");
  return spec;
}

}  // namespace

Orbifold::Orbifold(VoaSpec spec)
    : engine_(checked(spec)), q_engine_(VoaSpec::heisenberg(spec.rank, Rational(2) * spec.norm)) {}

TensorVector Orbifold::tensor(const Vector& a, const Vector& b) {
  TensorVector r;
  for (const auto& [l, x] : a.terms())
    for (const auto& [m, y] : b.terms()) r.add({l, m}, x * y);
  return r;
}

SymTensorVector Orbifold::eta(const Vector& a) const {
  const Vector one = engine_.vacuum();
  return SymTensorVector::from_full(tensor(a, one) + tensor(one, a));
}

SymTensorVector Orbifold::phi2(const Vector& a, const Vector& b) const {
  return SymTensorVector::from_full(tensor(a, b) + tensor(b, a));
}

TensorVector Orbifold::product(const TensorVector& u, const TensorVector& v, long n) {
  TensorVector out;
  for (const auto& [ut, ux] : u.terms()) {
    for (const auto& [vt, vx] : v.terms()) {
      const Rational c = ux * vx;
      // (a1(x)a2)_{(n)}(b1(x)b2) = sum_j a1_{(j)}b1 (x) a2_{(n-1-j)}b2
      long lo = n - ut.right.weight() - vt.right.weight();
      long hi = ut.left.weight() + vt.left.weight() - 1;
      if (ut.right.is_vacuum()) lo = hi = n;
      if (ut.left.is_vacuum()) {
        if (hi < -1 || lo > -1) continue;
        lo = hi = -1;
      }
      for (long j = lo; j <= hi; ++j) {
        const Vector l = engine_.nth_product(ut.left, vt.left, j);
        if (l.is_zero()) continue;
        const Vector r = engine_.nth_product(ut.right, vt.right, n - 1 - j);
        if (r.is_zero()) continue;
        for (const auto& [lm, lx] : l.terms())
          for (const auto& [rm, rx] : r.terms()) out.add({lm, rm}, c * lx * rx);
      }
    }
  }
  return out;
}

SymTensorVector Orbifold::product(const SymTensorVector& u, const SymTensorVector& v, long n) {
  return SymTensorVector::from_full(product(u.to_full(), v.to_full(), n));
}

std::vector<TensorMonomial> Orbifold::sym_basis(int w) const {
  std::vector<TensorMonomial> out;
  for (int i = 0; 2 * i <= w; ++i) {
    const auto a = engine_.basis(i);
    const auto b = engine_.basis(w - i);
    for (const auto& l : a)
      for (const auto& r : b) {
        const TensorMonomial t{l, r};
        if (t.is_canonical()) out.push_back(t);
      }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::unordered_map<TensorMonomial, int, TensorMonomialHash>& Orbifold::sym_index(int w) {
  std::lock_guard lock(mu_);
  auto& slot = sym_index_[w];
  if (!slot) {
    slot = std::make_unique<std::unordered_map<TensorMonomial, int, TensorMonomialHash>>();
    int i = 0;
    for (const auto& t : sym_basis(w)) (*slot)[t] = i++;
  }
  return *slot;
}

SymTensorVector Orbifold::single(const TensorMonomial& t) const {
  SymTensorVector v;
  v.add(t, Rational(1));
  return v;
}

SparseRow Orbifold::sym_row(const SymTensorVector& v, int w) {
  const auto& idx = sym_index(w);
  std::map<int, Rational> e;
  for (const auto& [t, x] : v.terms()) {
    auto it = idx.find(t);
    if (it == idx.end()) throw std::logic_error("monomial outside the weight space");
    e[it->second] += x;
  }
  return make_sparse(e);
}

SubspaceSlice Orbifold::build_c2_slice(int w, SpanMode mode) {
  SubspaceSlice s;
  s.weight = w;
  s.ambient_dim = static_cast<int>(sym_index(w).size());
  s.echelon = Echelon(s.ambient_dim);
  const auto full = [&](const SymTensorVector& v) { return s.echelon.rank() == s.ambient_dim || v.is_zero(); };
  if (mode == SpanMode::generators) {
    for (int j = 1; j <= w - 1; ++j) {
      const auto rest = sym_basis(w - j - 1);
      for (const auto& a : engine_.basis(j)) {
        const SymTensorVector ea = eta(engine_.monomial(a));
        for (const auto& t : rest) {
          const SymTensorVector p = product(ea, single(t), -2);
          if (full(p)) continue;
          s.echelon.insert(sym_row(p, w));
        }
      }
    }
  } else {
    for (int j = 1; j <= w - 1; ++j) {
      const auto rest = sym_basis(w - j - 1);
      for (const auto& u : sym_basis(j)) {
        const SymTensorVector su = single(u);
        for (const auto& t : rest) {
          const SymTensorVector p = product(su, single(t), -2);
          if (full(p)) continue;
          s.echelon.insert(sym_row(p, w));
        }
      }
    }
  }
  return s;
}

const SubspaceSlice& Orbifold::c2_slice(int w, SpanMode mode) {
  if (w < 0) throw std::invalid_argument("weight must be nonnegative");
  std::lock_guard lock(mu_);
  auto& table = mode == SpanMode::generators ? gen_slices_ : all_slices_;
  auto& slot = table[w];
  if (!slot) slot = std::make_unique<SubspaceSlice>(build_c2_slice(w, mode));
  return *slot;
}

bool Orbifold::in_c2_generic(const SymTensorVector& v, SpanMode mode) {
  const int w = v.weight();
  if (w == -2) throw std::invalid_argument("in_c2 needs a homogeneous vector");
  if (w == -1) return true;
  return c2_slice(w, mode).echelon.contains(sym_row(v, w));
}

int Orbifold::quotient_dim_generic(int w, SpanMode mode) { return c2_slice(w, mode).codim(); }

const Orbifold::QData& Orbifold::q_data(int w) {
  std::lock_guard lock(mu_);
  auto& slot = q_data_[w];
  if (!slot) {
    slot = std::make_unique<QData>();
    for (const auto& m : q_engine_.basis(w))
      if (m.size() % 2 == 0) {
        slot->index[m] = static_cast<int>(slot->basis.size());
        slot->basis.push_back(m);
      }
  }
  return *slot;
}

SubspaceSlice Orbifold::build_q_slice(int w) {
  const QData& qd = q_data(w);
  SubspaceSlice s;
  s.weight = w;
  s.ambient_dim = static_cast<int>(qd.basis.size());
  s.echelon = Echelon(s.ambient_dim);
  // M_Q^+ is strongly generated by its quadratic vectors.
  for (int sw = 2; sw <= w - 1 && s.echelon.rank() < s.ambient_dim; ++sw) {
    const QData& rest = q_data(w - sw - 1);
    for (const auto& q : q_engine_.basis(sw)) {
      if (q.size() != 2) continue;
      for (const auto& b : rest.basis) {
        if (s.echelon.rank() == s.ambient_dim) break;
        const Vector p = q_engine_.nth_product(q, b, -2);
        std::map<int, Rational> e;
        for (const auto& [m, x] : p.terms()) e[qd.index.at(m)] += x;
        s.echelon.insert(make_sparse(e));
      }
    }
  }
  return s;
}

const SubspaceSlice& Orbifold::q_slice(int w) {
  if (w < 0) throw std::invalid_argument("weight must be nonnegative");
  {
    std::lock_guard lock(mu_);
    auto it = q_slices_.find(w);
    if (it != q_slices_.end()) return *it->second;
  }
  auto built = std::make_unique<SubspaceSlice>(build_q_slice(w));
  std::lock_guard lock(mu_);
  auto& slot = q_slices_[w];
  if (!slot) slot = std::move(built);
  return *slot;
}

void Orbifold::prepare(int w, int jobs) {
  if (jobs <= 1) {
    for (int d = 0; d <= w; ++d) q_slice(d);
    return;
  }
  std::atomic<int> next{w};
  std::vector<std::thread> pool;
  for (int t = 0; t < jobs; ++t)
    pool.emplace_back([&] {
      for (int d = next--; d >= 0; d = next--) q_slice(d);
    });
  for (auto& th : pool) th.join();
}

Orbifold::Vector Orbifold::to_pq(const SymTensorVector& v) const {
  const int r = spec().rank;
  const Rational half(1, 2), mhalf(-1, 2);
  Vector out;
  const TensorVector full = v.to_full();
  for (const auto& [t, c] : full.terms()) {
    Vector cur(FockMonomial(), c);
    const auto expand = [&](const FockMonomial& side, const Rational& qsign) {
      for (const Factor& f : side.factors()) {
        Vector nxt;
        for (const auto& [m, x] : cur.terms()) {
          nxt.add(m.with({f.gen, f.m}), x * half);
          nxt.add(m.with({static_cast<uint8_t>(f.gen + r), f.m}), x * qsign);
        }
        cur = std::move(nxt);
      }
    };
    expand(t.left, half);
    expand(t.right, mhalf);
    out += cur;
  }
  return out;
}

bool Orbifold::in_c2(const SymTensorVector& v) {
  const int w = v.weight();
  if (w == -2) throw std::invalid_argument("in_c2 needs a homogeneous vector");
  if (w == -1) return true;
  const int r = spec().rank;
  std::map<FockMonomial, Vector> groups;
  const Vector pq = to_pq(v);
  for (const auto& [m, x] : pq.terms()) {
    std::vector<Factor> p, q;
    bool dropped = false;
    for (const Factor& f : m.factors()) {
      if (f.gen < r) {
        if (f.m >= 2) dropped = true;
        p.push_back(f);
      } else {
        q.push_back({static_cast<uint8_t>(f.gen - r), f.m});
      }
    }
    if (dropped) continue;
    groups[FockMonomial(p)].add(FockMonomial(q), x);
  }
  for (const auto& [p, qv] : groups) {
    if (qv.is_zero()) continue;
    const int wq = w - p.weight();
    const QData& qd = q_data(wq);
    std::map<int, Rational> e;
    for (const auto& [m, x] : qv.terms()) {
      auto it = qd.index.find(m);
      if (it == qd.index.end()) throw std::logic_error("odd Q-degree in an S2-fixed vector");
      e[it->second] += x;
    }
    if (!q_slice(wq).echelon.contains(make_sparse(e))) return false;
  }
  return true;
}

int Orbifold::quotient_dim(int w) {
  if (w < 0) return 0;
  // P-parts surviving modulo C2(M_P) are products of P^i_{(-1)}; count them by degree.
  const int r = spec().rank;
  int total = 0;
  for (int k = 0; k <= w; ++k) {
    BigInt monos = binomial(k + r - 1, r - 1).num();
    total += static_cast<int>(monos.get_si()) * q_slice(w - k).codim();
  }
  return total;
}

ProbeResult Orbifold::d_probe(const Vector& x, const Vector& y, int cutoff, int window) {
  if (window < 1) throw std::invalid_argument("window must be positive");
  const int wx = x.weight(), wy = y.weight();
  if (wx == -2 || wy == -2) throw std::invalid_argument("probe inputs must be homogeneous");
  ProbeResult res;
  res.voa = spec().str();
  res.x = x.str(spec());
  res.y = y.str(spec());
  res.cutoff = cutoff;
  res.window = window;
  int dim = 0, last = 0;
  for (int n = 1; n <= cutoff; ++n) {
    const SymTensorVector v = eta(engine_.nth_product(x, y, -n));
    if (!in_c2(v)) {
      ++dim;
      last = n;
      res.witnesses.push_back(n);
    }
    res.dims.emplace_back(n, dim);
  }
  if (cutoff - last >= window) {
    res.stabilized_at = last;
    if (last > 0) res.stabilized_weight = wx + wy + last - 1;
  }
  return res;
}

SymTensorVector Orbifold::rewrite_vector(const Vector& x, const Vector& y, const Vector& z, long n) {
  return phi2(engine_.nth_product(x, y, -n), z) + phi2(y, engine_.nth_product(x, z, -n));
}

SymTensorVector Orbifold::rewrite_vector2(const Vector& x, const Vector& y, long m, long n) {
  const Vector xy = engine_.nth_product(x, engine_.nth_product(y, engine_.vacuum(), -n), -m);
  Rational c = binomial(m + n - 2, n - 1);
  if ((n - 1) % 2 != 0) c = -c;
  return eta(xy) - c * eta(engine_.nth_product(x, y, -m - n + 1));
}

bool Orbifold::rewrite_check(const Vector& x, const Vector& y, const Vector& z, long n) {
  if (n < 2) throw std::invalid_argument("rewrite rule (1) needs n >= 2");
  return in_c2(rewrite_vector(x, y, z, n));
}

bool Orbifold::rewrite_check2(const Vector& x, const Vector& y, long m, long n) {
  if (m < 1 || n < 1) throw std::invalid_argument("rewrite rule (2) needs m, n >= 1");
  return in_c2(rewrite_vector2(x, y, m, n));
}

SymTensorVector Orbifold::cubic_identity_vector(long m, long n, long p, const Rational& h) {
  if (spec().rank != 1) throw std::invalid_argument("cubic identity needs rank 1");
  const Vector x = engine_.generator(0);
  const Vector one = engine_.vacuum();
  const auto prod = [&](const Vector& a, const Vector& b, long k) { return engine_.nth_product(a, b, k); };
  const Vector xmn = prod(x, prod(x, one, -n), -m);
  const Vector xpx = prod(x, x, -p);
  const Vector four = prod(x, prod(x, xpx, -n), -m);
  SymTensorVector v = product(eta(xmn), eta(xpx), -1);
  v -= Rational(2) * eta(four);
  v -= h * eta(prod(x, x, -m - n - p));
  return v;
}

bool Orbifold::cubic_identity_check(long m, long n, long p) {
  if (m < 2 || n < 2 || p < 1) throw std::invalid_argument("cubic identity needs m, n >= 2 and p >= 1");
  const CoeffValue h = h_weight1(Index::at(m), Index::at(n), Index::at(p));
  const Rational hv = CoeffValue(h.concrete().evaluate(Var::k, spec().norm)).rational();
  return in_c2(cubic_identity_vector(m, n, p, hv));
}

SymTensorVector Orbifold::phi_recursion_defect(const Vector& a, const Vector& b) {
  return product(eta(a), eta(b), -1) - eta(engine_.nth_product(a, b, -1)) - phi2(b, a);
}

}  // namespace c2orb
