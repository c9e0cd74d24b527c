#include "c2orb/fock.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <type_traits>

#include "c2orb/coefficients.hpp"

namespace c2orb {

VoaSpec VoaSpec::heisenberg(int rank, Rational norm) {
  if (rank < 1 || rank > 15) throw std::invalid_argument("heisenberg rank must be in 1..15");
  if (norm.is_zero()) throw std::invalid_argument("heisenberg norm must be nonzero");
  return {VoaKind::heisenberg, rank, std::move(norm)};
}

VoaSpec VoaSpec::virasoro() { return {VoaKind::virasoro, 1, Rational(1)}; }

std::string VoaSpec::str() const {
  if (kind == VoaKind::virasoro) return "virasoro(c_V)";
  std::string s = "heisenberg(rank=" + std::to_string(rank);
  if (!norm.is_one()) s += ",norm=" + norm.str();
  return s + ")";
}

// ---------------------------------------------------------------------------
// FockMonomial

namespace {

bool factor_before(const Factor& a, const Factor& b) {
  return a.m > b.m || (a.m == b.m && a.gen < b.gen);
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace

FockMonomial::FockMonomial(std::vector<Factor> f) {
  if (f.size() > kMaxFactors) throw std::out_of_range("monomial has too many factors");
  std::sort(f.begin(), f.end(), factor_before);
  for (const Factor& x : f) {
    if (x.m == 0) throw std::invalid_argument("creation index must be positive");
    f_[size_++] = x;
    weight_ = static_cast<int16_t>(weight_ + x.m);
  }
}

FockMonomial FockMonomial::with(Factor x) const {
  if (size_ == kMaxFactors) throw std::out_of_range("monomial has too many factors");
  FockMonomial r;
  const auto end = f_.begin() + size_;
  auto pos = std::upper_bound(f_.begin(), end, x, factor_before);
  auto out = std::copy(f_.begin(), pos, r.f_.begin());
  *out++ = x;
  std::copy(pos, end, out);
  r.size_ = static_cast<uint8_t>(size_ + 1);
  r.weight_ = static_cast<int16_t>(weight_ + x.m);
  return r;
}

FockMonomial FockMonomial::without_first() const {
  FockMonomial r;
  std::copy(f_.begin() + 1, f_.begin() + size_, r.f_.begin());
  r.size_ = static_cast<uint8_t>(size_ - 1);
  r.weight_ = static_cast<int16_t>(weight_ - f_[0].m);
  return r;
}

FockMonomial FockMonomial::without(Factor x) const {
  const auto end = f_.begin() + size_;
  auto it = std::find(f_.begin(), end, x);
  if (it == end) throw std::logic_error("factor not present");
  FockMonomial r;
  auto out = std::copy(f_.begin(), it, r.f_.begin());
  std::copy(it + 1, end, out);
  r.size_ = static_cast<uint8_t>(size_ - 1);
  r.weight_ = static_cast<int16_t>(weight_ - x.m);
  return r;
}

int FockMonomial::count(Factor x) const {
  return static_cast<int>(std::count(f_.begin(), f_.begin() + size_, x));
}

bool operator<(const FockMonomial& a, const FockMonomial& b) {
  if (a.weight_ != b.weight_) return a.weight_ < b.weight_;
  return std::lexicographical_compare(a.f_.begin(), a.f_.begin() + a.size_, b.f_.begin(), b.f_.begin() + b.size_,
                                      [](const Factor& x, const Factor& y) { return factor_before(x, y); });
}

std::size_t FockMonomial::hash() const {
  std::size_t h = 1469598103934665603ull;
  for (const Factor& x : factors()) {
    h ^= (static_cast<std::size_t>(x.gen) << 8) | x.m;
    h *= 1099511628211ull;
  }
  return h;
}

std::string FockMonomial::str(const VoaSpec& spec) const {
  if (size_ == 0) return "1";
  std::string s;
  for (const Factor& x : factors()) {
    if (spec.kind == VoaKind::virasoro) {
      s += "L(-" + std::to_string(x.m) + ")";
    } else {
      s += (spec.rank == 1 ? std::string("x") : "x" + std::to_string(x.gen)) + "(-" + std::to_string(x.m) + ")";
    }
  }
  return s + "1";
}

std::string FockMonomial::key() const {
  std::string s;
  for (const Factor& x : factors()) {
    if (!s.empty()) s += ',';
    s += std::to_string(x.gen) + ':' + std::to_string(x.m);
  }
  return s;
}

FockMonomial FockMonomial::parse_key(const std::string& s) {
  std::vector<Factor> f;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw std::runtime_error("bad monomial key: " + s);
    const int g = std::stoi(item.substr(0, colon));
    const int m = std::stoi(item.substr(colon + 1));
    if (g < 0 || g > 255 || m < 1 || m > 255) throw std::runtime_error("bad monomial key: " + s);
    f.push_back({static_cast<uint8_t>(g), static_cast<uint8_t>(m)});
  }
  return FockMonomial(std::move(f));
}

// ---------------------------------------------------------------------------
// Engine

namespace {

template <class S>
S central_term(long n) {
  if constexpr (std::is_same_v<S, RatFunc>) {
    return central_charge() * RatFunc(Rational(n * n * n - n, 12));
  } else {
    (void)n;
    throw std::logic_error("Virasoro modes need a central charge scalar");
  }
}

// alpha_{m,n;i} as a Rational, tabulated for the small indices the checks use.
Rational alpha_value(long m, long n, long i) {
  constexpr long kM = 16, kI = 64;
  static const std::vector<Rational> table = [] {
    std::vector<Rational> t;
    for (long a = 1; a <= kM; ++a)
      for (long b = 1; b <= kM; ++b)
        for (long c = 0; c <= kI; ++c) t.push_back(alpha(Index::at(a), Index::at(b), Index::at(c)).rational());
    return t;
  }();
  if (m >= 1 && m <= kM && n >= 1 && n <= kM && i >= 0 && i <= kI)
    return table[((m - 1) * kM + (n - 1)) * (kI + 1) + i];
  return alpha(Index::at(m), Index::at(n), Index::at(i)).rational();
}

// (-1)^i binom(p, i)
Rational assoc_coeff(long p, long i) { return sign_power(i) * binomial(p, i); }

template <class S>
std::string encode_scalar(const S& c) {
  if constexpr (std::is_same_v<S, Rational>) {
    return c.str();
  } else {
    if (!c.is_polynomial() || c.num().uses(Var::z) || c.num().uses(Var::k))
      throw std::logic_error("only polynomials in c_V can be cached");
    std::string s;
    for (const auto& [d, p] : c.num().coefficients_in(Var::c)) {
      if (!s.empty()) s += '|';
      s += std::to_string(d) + '^' + p.constant_term().str();
    }
    return s;
  }
}

template <class S>
S decode_scalar(const std::string& s) {
  if constexpr (std::is_same_v<S, Rational>) {
    return Rational::parse(s);
  } else {
    std::map<int, Poly> coeffs;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, '|')) {
      const auto caret = item.find('^');
      if (caret == std::string::npos) throw std::runtime_error("bad scalar: " + s);
      coeffs[std::stoi(item.substr(0, caret))] = Poly(Rational::parse(item.substr(caret + 1)));
    }
    return RatFunc(Poly::from_coefficients(Var::c, coeffs));
  }
}

const char* kCacheMagic = "c2orb-product-cache 1";

}  // namespace

template <class S>
Engine<S>::Engine(VoaSpec spec) : spec_(std::move(spec)) {
  if constexpr (std::is_same_v<S, Rational>) {
    if (spec_.kind != VoaKind::heisenberg) throw std::invalid_argument("Rational engine is Heisenberg only");
  } else {
    if (spec_.kind != VoaKind::virasoro) throw std::invalid_argument("RatFunc engine is Virasoro only");
  }
}

template <class S>
typename Engine<S>::Vector Engine<S>::generator(int gen) const {
  if (spec_.kind == VoaKind::virasoro) return monomial(FockMonomial({{0, 2}}));
  if (gen < 0 || gen >= spec_.rank) throw std::out_of_range("generator index out of range");
  return monomial(FockMonomial({{static_cast<uint8_t>(gen), 1}}));
}

template <class S>
typename Engine<S>::Vector Engine<S>::omega() const {
  if (spec_.kind == VoaKind::virasoro) return generator(0);
  Vector w;
  const S c(Rational(1) / (Rational(2) * spec_.norm));
  for (int g = 0; g < spec_.rank; ++g) {
    const uint8_t gg = static_cast<uint8_t>(g);
    w.add(FockMonomial({{gg, 1}, {gg, 1}}), c);
  }
  return w;
}

template <class S>
typename Engine<S>::Vector Engine<S>::heisenberg_mode(int gen, long n, const FockMonomial& m) const {
  if (gen < 0 || gen >= spec_.rank) throw std::out_of_range("generator index out of range");
  const uint8_t g = static_cast<uint8_t>(gen);
  if (n < 0) {
    if (-n > 255) throw std::out_of_range("mode too large");
    return Vector(m.with({g, static_cast<uint8_t>(-n)}), one());
  }
  if (n == 0 || n > 255) return {};
  const Factor f{g, static_cast<uint8_t>(n)};
  const int cnt = m.count(f);
  if (cnt == 0) return {};
  return Vector(m.without(f), S(Rational(cnt * n) * spec_.norm));
}

template <class S>
typename Engine<S>::Vector Engine<S>::virasoro_mode(long n, const FockMonomial& m) {
  if (m.is_vacuum()) {
    if (n >= -1) return {};
    if (-n > 255) throw std::out_of_range("mode too large");
    return Vector(FockMonomial({{0, static_cast<uint8_t>(-n)}}), one());
  }
  const long m1 = m.factors().front().m;
  if (-n >= m1) return Vector(m.with({0, static_cast<uint8_t>(-n)}), one());

  const Key key{m, n, FockMonomial()};
  {
    std::lock_guard lock(mu_);
    auto it = vir_modes_.find(key);
    if (it != vir_modes_.end()) return it->second;
  }
  const FockMonomial rest = m.without_first();
  Vector out;
  // L_n L_{-m1} X = L_{-m1} L_n X + (n + m1) L_{n-m1} X + central term.
  const Vector inner = virasoro_mode(n, rest);
  for (const auto& [t, c] : inner.terms()) out.add(virasoro_mode(-m1, t), c);
  if (n + m1 != 0) out.add(virasoro_mode(n - m1, rest), S(Rational(n + m1)));
  if (n == m1) out.add(Vector(rest, one()), central_term<S>(n));
  {
    std::lock_guard lock(mu_);
    vir_modes_.emplace(key, out);
  }
  return out;
}

template <class S>
typename Engine<S>::Vector Engine<S>::mode_apply(ModeOp op, const FockMonomial& m) {
  if (spec_.kind == VoaKind::heisenberg) return heisenberg_mode(op.gen, op.n, m);
  return virasoro_mode(op.n - 1, m);
}

template <class S>
typename Engine<S>::Vector Engine<S>::mode_apply(ModeOp op, const Vector& v) {
  Vector out;
  for (const auto& [m, c] : v.terms()) out.add(mode_apply(op, m), c);
  return out;
}

template <class S>
const typename Engine<S>::Vector& Engine<S>::product_ref(const FockMonomial& u, const FockMonomial& v, long n) {
  static const Vector zero;
  // u_{(n)}v vanishes once n exceeds wt u + wt v - 1.
  if (n > u.weight() + v.weight() - 1) return zero;
  if (u.is_vacuum() && n != -1) return zero;
  const Key key{u, n, v};
  {
    std::lock_guard lock(mu_);
    auto it = products_.find(key);
    if (it != products_.end()) return it->second;
  }
  Vector out = u.is_vacuum() ? Vector(v, one()) : product_uncached(u, v, n);
  std::lock_guard lock(mu_);
  // Map nodes never move, so the reference stays valid until clear_memo().
  return products_.emplace(key, std::move(out)).first->second;
}

template <class S>
typename Engine<S>::Vector Engine<S>::nth_product(const FockMonomial& u, const FockMonomial& v, long n) {
  return product_ref(u, v, n);
}

template <class S>
typename Engine<S>::Vector Engine<S>::product_uncached(const FockMonomial& u, const FockMonomial& v, long q) {
  // u = f_{(p)} w with f a generator; expand (f_{(p)}w)_{(q)}v by associativity.
  const Factor f = u.factors().front();
  const FockMonomial w = u.without_first();
  const bool vir = spec_.kind == VoaKind::virasoro;
  const long p = vir ? 1 - static_cast<long>(f.m) : -static_cast<long>(f.m);
  const long wt_f = spec_.generator_weight();
  const long wt_w = w.weight(), wt_c = v.weight();
  const long i_max = std::max(wt_w + wt_c - 1 - q, wt_f + wt_c - 1);

  Vector out;
  for (long i = 0; i <= i_max; ++i) {
    const Rational a = assoc_coeff(p, i);
    if (a.is_zero()) continue;
    if (q + i <= wt_w + wt_c - 1) {
      const Vector& inner = product_ref(w, v, q + i);
      if (!inner.is_zero()) out.add(mode_apply(ModeOp{f.gen, p - i}, inner), S(a));
    }
    if (i <= wt_f + wt_c - 1) {
      const Vector fc = mode_apply(ModeOp{f.gen, i}, v);
      if (!fc.is_zero()) {
        Vector tail;
        for (const auto& [t, c] : fc.terms()) tail.add(product_ref(w, t, p + q - i), c);
        out.add(tail, S(-(sign_power(p) * a)));
      }
    }
  }
  return out;
}

template <class S>
typename Engine<S>::Vector Engine<S>::nth_product(const Vector& u, const Vector& v, long n) {
  Vector out;
  add_product(out, u, v, n, one());
  return out;
}

template <class S>
void Engine<S>::add_product(Vector& out, const Vector& u, const Vector& v, long n, const S& c) {
  for (const auto& [mu, cu] : u.terms()) {
    const S cuc = cu * c;
    for (const auto& [mv, cv] : v.terms()) out.add(product_ref(mu, mv, n), cuc * cv);
  }
}

template <class S>
typename Engine<S>::Vector Engine<S>::virasoro_normal_order(const std::vector<long>& word, const Vector& tail) {
  if (spec_.kind != VoaKind::virasoro) throw std::logic_error("virasoro_normal_order needs the Virasoro engine");
  Vector v = tail;
  for (auto it = word.rbegin(); it != word.rend(); ++it) v = mode_apply(ModeOp::L(-*it), v);
  return v;
}

template <class S>
std::vector<FockMonomial> Engine<S>::basis(int w) const {
  std::vector<FockMonomial> out;
  if (w < 0) return out;
  const int lo = spec_.min_mode();
  const int rank = spec_.kind == VoaKind::heisenberg ? spec_.rank : 1;
  std::vector<Factor> cur;
  // Factors are emitted in canonical order: m nonincreasing, gen nondecreasing within equal m.
  std::function<void(int, int, int)> rec = [&](int remaining, int max_m, int min_gen) {
    if (remaining == 0) {
      out.emplace_back(cur);
      return;
    }
    for (int m = std::min(remaining, max_m); m >= lo; --m) {
      for (int g = (m == max_m ? min_gen : 0); g < rank; ++g) {
        cur.push_back({static_cast<uint8_t>(g), static_cast<uint8_t>(m)});
        rec(remaining - m, m, g);
        cur.pop_back();
      }
    }
  };
  rec(w, w, 0);
  std::sort(out.begin(), out.end());
  return out;
}

template <class S>
std::vector<FockMonomial> Engine<S>::basis_up_to(int w) const {
  std::vector<FockMonomial> out;
  for (int d = 0; d <= w; ++d) {
    auto b = basis(d);
    out.insert(out.end(), b.begin(), b.end());
  }
  return out;
}

template <class S>
typename Engine<S>::Vector Engine<S>::expansion_defect(const Vector& a, const Vector& b, const Vector& u, long m,
                                                     long n) {
  const Vector vac = vacuum();
  Vector d = nth_product(nth_product(a, nth_product(b, vac, -n), -m), u, -1);
  add_product(d, a, nth_product(b, u, -n), -m, S(Rational(-1)));
  const long i_max = std::max(a.max_weight(), b.max_weight()) + u.max_weight();
  for (long i = 0; i <= i_max; ++i) {
    const Vector bu = nth_product(b, u, i);
    if (!bu.is_zero()) add_product(d, a, bu, -m - n - i, S(-alpha_value(m, n, i)));
    const Vector au = nth_product(a, u, i);
    if (!au.is_zero()) add_product(d, b, au, -m - n - i, S(-alpha_value(n, m, i)));
  }
  return d;
}

template <class S>
typename Engine<S>::Vector Engine<S>::commutator_defect(const Vector& a, const Vector& b, const Vector& c, long m,
                                                        long n) {
  Vector d = nth_product(a, nth_product(b, c, n), m) - nth_product(b, nth_product(a, c, m), n);
  const long i_max = a.max_weight() + b.max_weight() - 1;
  for (long i = 0; i <= i_max; ++i) {
    const Rational bin = binomial(m, i);
    if (bin.is_zero()) continue;
    const Vector ab = nth_product(a, b, i);
    if (!ab.is_zero()) add_product(d, ab, c, m + n - i, S(-bin));
  }
  return d;
}

template <class S>
typename Engine<S>::Vector Engine<S>::associativity_defect(const Vector& a, const Vector& b, const Vector& c, long m,
                                                           long n) {
  Vector d = nth_product(nth_product(a, b, m), c, n);
  const long wa = a.max_weight(), wb = b.max_weight(), wc = c.max_weight();
  const long i_max = std::max(wb + wc - 1 - n, wa + wc - 1);
  for (long i = 0; i <= i_max; ++i) {
    const Rational k = assoc_coeff(m, i);
    if (k.is_zero()) continue;
    add_product(d, a, nth_product(b, c, n + i), m - i, S(-k));
    add_product(d, b, nth_product(a, c, i), m + n - i, S(sign_power(m) * k));
  }
  return d;
}

template <class S>
typename Engine<S>::Vector Engine<S>::skew_defect(const Vector& a, const Vector& b, long m) {
  Vector d = nth_product(a, b, m);
  const Vector vac = vacuum();
  const long i_max = a.max_weight() + b.max_weight() - 1 - m;
  for (long i = 0; i <= i_max; ++i) {
    const Vector ba = nth_product(b, a, m + i);
    if (!ba.is_zero()) d.add(nth_product(ba, vac, -1 - i), S(-(sign_power(m - 1 - i) / factorial(i))));
  }
  return d;
}

template <class S>
typename Engine<S>::Vector Engine<S>::skew_defect_unnormalized(const Vector& a, const Vector& b, long m) {
  Vector d = nth_product(a, b, m);
  const Vector vac = vacuum();
  const long i_max = a.max_weight() + b.max_weight() - 1 - m;
  for (long i = 0; i <= i_max; ++i) {
    const Vector ba = nth_product(b, a, m + i);
    if (!ba.is_zero()) d.add(nth_product(ba, vac, -1 - i), S(-sign_power(m - 1 - i)));
  }
  return d;
}

template <class S>
std::size_t Engine<S>::memo_size() const {
  std::lock_guard lock(mu_);
  return products_.size() + vir_modes_.size();
}

template <class S>
void Engine<S>::clear_memo() {
  std::lock_guard lock(mu_);
  products_.clear();
  vir_modes_.clear();
}

template <class S>
std::size_t Engine<S>::load_cache(const std::string& path) {
  std::ifstream in(path);
  if (!in) return 0;
  std::string line;
  if (!std::getline(in, line) || line != std::string(kCacheMagic) + " " + spec_.str())
    throw std::runtime_error("product cache header mismatch in " + path);
  std::vector<std::pair<Key, Vector>> entries;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) throw std::runtime_error("corrupt product cache line " + std::to_string(lineno));
    const std::string body = line.substr(tab + 1);
    std::ostringstream hex;
    hex << std::hex << fnv1a(body);
    if (hex.str() != line.substr(0, tab))
      throw std::runtime_error("product cache checksum mismatch at line " + std::to_string(lineno));
    std::vector<std::string> fields;
    std::stringstream ss(body);
    std::string field;
    while (std::getline(ss, field, '\t')) fields.push_back(field);
    if (fields.size() != 4) throw std::runtime_error("corrupt product cache line " + std::to_string(lineno));
    auto mono = [](const std::string& s) { return s == "." ? FockMonomial() : FockMonomial::parse_key(s); };
    Key key{mono(fields[0]), std::stol(fields[1]), mono(fields[2])};
    Vector v;
    std::stringstream ts(fields[3]);
    std::string term;
    while (std::getline(ts, term, ';')) {
      if (term.empty() || term == "0") continue;
      const auto eq = term.find('=');
      if (eq == std::string::npos) throw std::runtime_error("corrupt product cache line " + std::to_string(lineno));
      v.add(mono(term.substr(0, eq)), decode_scalar<S>(term.substr(eq + 1)));
    }
    entries.emplace_back(std::move(key), std::move(v));
  }
  std::lock_guard lock(mu_);
  for (auto& [k, v] : entries) products_.insert_or_assign(std::move(k), std::move(v));
  return entries.size();
}

template <class S>
void Engine<S>::save_cache(const std::string& path) const {
  std::vector<std::string> lines;
  {
    std::lock_guard lock(mu_);
    lines.reserve(products_.size());
    auto mono = [](const FockMonomial& m) { return m.is_vacuum() ? std::string(".") : m.key(); };
    for (const auto& [k, v] : products_) {
      std::string body = mono(k.u) + '\t' + std::to_string(k.n) + '\t' + mono(k.v) + '\t';
      bool first = true;
      for (const auto& [m, c] : v.sorted_terms()) {
        if (!first) body += ';';
        first = false;
        body += mono(m) + '=' + encode_scalar<S>(c);
      }
      if (first) body += '0';
      std::ostringstream hex;
      hex << std::hex << fnv1a(body);
      lines.push_back(hex.str() + '\t' + body);
    }
  }
  std::sort(lines.begin(), lines.end());
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write product cache " + tmp);
    out << kCacheMagic << ' ' << spec_.str() << '\n';
    for (const std::string& l : lines) out << l << '\n';
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) throw std::runtime_error("cannot move product cache into place");
}

template class Engine<Rational>;
template class Engine<RatFunc>;

}  // namespace c2orb
