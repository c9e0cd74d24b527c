#include "c2orb/chars.hpp"

#include <chrono>
#include <stdexcept>
#include <vector>

#include "json.hpp"

namespace c2orb {

namespace {

void check_cutoff(long cutoff) {
  if (cutoff < 0) throw std::invalid_argument("cutoff must be nonnegative");
}

// Partitions of n with parts in r colors, split by the parity of the number of parts.
struct ColoredPartitions {
  std::vector<long> even, odd;
};

ColoredPartitions colored_partitions(int rank, long cutoff) {
  // Generating function prod_n (1 - t q^n)^{-rank}, tracked at t = +-1.
  std::vector<long> plus(cutoff + 1, 0), minus(cutoff + 1, 0);
  plus[0] = minus[0] = 1;
  for (int color = 0; color < rank; ++color)
    for (long part = 1; part <= cutoff; ++part)
      for (long n = part; n <= cutoff; ++n) {
        plus[n] += plus[n - part];
        minus[n] -= minus[n - part];
      }
  ColoredPartitions out;
  out.even.resize(cutoff + 1);
  out.odd.resize(cutoff + 1);
  for (long n = 0; n <= cutoff; ++n) {
    out.even[n] = (plus[n] + minus[n]) / 2;
    out.odd[n] = (plus[n] - minus[n]) / 2;
  }
  return out;
}

// Weights <(j+s)g,(j+s)g>/2 up to the cutoff, over all integers j.
std::vector<Rational> lattice_weights(const LatticeSpec& spec, long cutoff) {
  if (spec.k < 1) throw std::invalid_argument("lattice k must be positive");
  if (spec.norm() <= 0) throw std::invalid_argument("lattice norm must be positive");
  std::vector<Rational> out;
  const Rational half_norm(spec.norm(), 2);
  for (long j = 0;; ++j) {
    bool any = false;
    for (long sj : {j, -j - 1}) {
      const Rational x = Rational(sj) + spec.coset_shift;
      const Rational w = half_norm * x * x;
      if (w <= Rational(cutoff)) {
        out.push_back(w);
        any = true;
      }
    }
    if (!any) break;
  }
  return out;
}

void add_shifted(DimSeries& out, const Rational& base, const std::vector<long>& p, long cutoff) {
  for (long n = 0; n <= cutoff; ++n)
    if (base + Rational(n) <= Rational(cutoff)) out.add(base + Rational(n), p[n]);
}

}  // namespace

void DimSeries::add(const Rational& w, long n) {
  if (n == 0 || w > cutoff_) return;
  if (w < Rational(0)) throw std::invalid_argument("negative weight");
  d_[w] += n;
  if (d_[w] < 0) throw std::logic_error("negative dimension");
}

std::string DimSeries::json() const {
  auto j = nlohmann::ordered_json::array();
  for (const auto& [w, n] : d_) {
    nlohmann::ordered_json wj;
    if (w.is_integer()) wj = w.num().get_si();
    else wj = w.str();
    j.push_back({wj, n});
  }
  return j.dump();
}

DimSeries heisenberg_dims(int rank, ThetaPart part, long cutoff) {
  check_cutoff(cutoff);
  if (rank < 1) throw std::invalid_argument("rank must be positive");
  const ColoredPartitions cp = colored_partitions(rank, cutoff);
  DimSeries out{Rational(cutoff)};
  for (long n = 0; n <= cutoff; ++n) {
    long v = part == ThetaPart::plus ? cp.even[n] : part == ThetaPart::minus ? cp.odd[n] : cp.even[n] + cp.odd[n];
    out.add(Rational(n), v);
  }
  return out;
}

DimSeries lattice_dims(const LatticeSpec& spec, long cutoff) {
  check_cutoff(cutoff);
  const ColoredPartitions cp = colored_partitions(1, cutoff);
  std::vector<long> p(cutoff + 1);
  for (long n = 0; n <= cutoff; ++n) p[n] = cp.even[n] + cp.odd[n];
  DimSeries out{Rational(cutoff)};
  for (const Rational& w : lattice_weights(spec, cutoff)) add_shifted(out, w, p, cutoff);
  return out;
}

DimSeries lattice_plus_dims(const LatticeSpec& spec, long cutoff) {
  check_cutoff(cutoff);
  const ColoredPartitions cp = colored_partitions(1, cutoff);
  std::vector<long> p(cutoff + 1);
  for (long n = 0; n <= cutoff; ++n) p[n] = cp.even[n] + cp.odd[n];
  DimSeries out{Rational(cutoff)};
  // gamma and -gamma share a weight; the shift must make the coset closed under negation.
  const Rational twice = spec.coset_shift * Rational(2);
  if (!twice.is_integer()) throw std::invalid_argument("coset is not closed under negation");
  bool zero_seen = false;
  std::map<Rational, long> orbit_count;
  for (const Rational& w : lattice_weights(spec, cutoff)) {
    if (w.is_zero()) zero_seen = true;
    else orbit_count[w] += 1;
  }
  if (zero_seen) add_shifted(out, Rational(0), cp.even, cutoff);
  for (const auto& [w, c] : orbit_count) {
    if (c % 2 != 0) throw std::logic_error("unpaired lattice vector");
    for (long i = 0; i < c / 2; ++i) add_shifted(out, w, p, cutoff);
  }
  return out;
}

DimSeries tensor_dims(const DimSeries& a, const DimSeries& b, long cutoff) {
  check_cutoff(cutoff);
  DimSeries out{Rational(cutoff)};
  for (const auto& [wa, na] : a.entries())
    for (const auto& [wb, nb] : b.entries()) out.add(wa + wb, na * nb);
  return out;
}

namespace {

DimSeries square_part(const DimSeries& s, long cutoff, bool sym) {
  check_cutoff(cutoff);
  DimSeries out{Rational(cutoff)};
  const auto& e = s.entries();
  for (auto ia = e.begin(); ia != e.end(); ++ia) {
    const auto& [wa, na] = *ia;
    out.add(wa + wa, sym ? na * (na + 1) / 2 : na * (na - 1) / 2);
    for (auto ib = std::next(ia); ib != e.end(); ++ib) out.add(wa + ib->first, na * ib->second);
  }
  return out;
}

}  // namespace

DimSeries sym2_dims(const DimSeries& s, long cutoff) { return square_part(s, cutoff, true); }
DimSeries alt2_dims(const DimSeries& s, long cutoff) { return square_part(s, cutoff, false); }

CheckReport decomposition_check(long k, long cutoff) {
  CheckReport r;
  r.name = "decomposition_k" + std::to_string(k);
  const auto t0 = std::chrono::steady_clock::now();
  try {
    const DimSeries lhs = sym2_dims(lattice_dims(LatticeSpec::M(k), cutoff), cutoff);
    const DimSeries untwisted = tensor_dims(lattice_dims(LatticeSpec::doubled(k), cutoff),
                                            lattice_plus_dims(LatticeSpec::doubled(k), cutoff), cutoff);
    const DimSeries shifted = tensor_dims(lattice_dims(LatticeSpec::doubled(k, Rational(1, 2)), cutoff),
                                          lattice_plus_dims(LatticeSpec::doubled(k, Rational(1, 2)), cutoff), cutoff);
    r.pass = true;
    for (long n = 0; n <= cutoff; ++n) {
      const long a = lhs.at(n), b = untwisted.at(n) + shifted.at(n);
      if (a != b) {
        r.pass = false;
        if (!r.witness.empty()) r.witness += "; ";
        r.witness += "n=" + std::to_string(n) + ": " + std::to_string(a) + " vs " + std::to_string(b);
      }
    }
    std::string dims;
    for (long n = 0; n <= cutoff; ++n) dims += (n ? "," : "") + std::to_string(lhs.at(n));
    r.notes.push_back("dims " + dims);
    for (const auto& [w, n] : lhs.entries())
      if (!w.is_integer()) {
        r.pass = false;
        r.witness += "non-integral weight " + w.str();
      }
  } catch (const std::exception& e) {
    r.pass = false;
    r.witness = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace c2orb
