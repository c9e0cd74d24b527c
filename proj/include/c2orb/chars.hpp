#pragma once

#include <map>
#include <string>

#include "c2orb/rational.hpp"
#include "c2orb/verify.hpp"

namespace c2orb {

/// Graded dimensions: weight -> dimension, finitely supported up to a cutoff.
class DimSeries {
 public:
  DimSeries() = default;
  explicit DimSeries(Rational cutoff) : cutoff_(std::move(cutoff)) {}

  const Rational& cutoff() const { return cutoff_; }
  const std::map<Rational, long>& entries() const { return d_; }
  long at(const Rational& w) const {
    auto it = d_.find(w);
    return it == d_.end() ? 0 : it->second;
  }
  long at(long w) const { return at(Rational(w)); }
  /// Adds to the dimension at w; weights above the cutoff are dropped.
  void add(const Rational& w, long n);

  friend bool operator==(const DimSeries& a, const DimSeries& b) { return a.d_ == b.d_; }

  /// JSON array of [weight, dim] pairs, weights as strings when not integral.
  std::string json() const;

 private:
  Rational cutoff_{0};
  std::map<Rational, long> d_;
};

enum class ThetaPart { all, plus, minus };

/// Rank-r Heisenberg Fock space; theta negates every generator.
DimSeries heisenberg_dims(int rank, ThetaPart part, long cutoff);

/// The rank-one lattice Z g (shifted by coset_shift * g) with <g,g> = norm_multiplier * k.
struct LatticeSpec {
  long k = 1;
  Rational coset_shift{0};
  long norm_multiplier = 2;

  static LatticeSpec L(long k) { return {k, Rational(0), 2}; }
  /// M = Z beta with <beta,beta> = 4k.
  static LatticeSpec M(long k, Rational shift = Rational(0)) { return {k, std::move(shift), 4}; }
  /// beta_i = beta(x)1 +- 1(x)beta, with <beta_i,beta_i> = 8k.
  static LatticeSpec doubled(long k, Rational shift = Rational(0)) { return {k, std::move(shift), 8}; }

  long norm() const { return norm_multiplier * k; }
};

DimSeries lattice_dims(const LatticeSpec& spec, long cutoff);
/// theta-fixed part: the gamma = 0 summand gives the even-part count and each
/// orbit {gamma, -gamma} gives one copy of the Fock space.
DimSeries lattice_plus_dims(const LatticeSpec& spec, long cutoff);

DimSeries sym2_dims(const DimSeries& s, long cutoff);
DimSeries alt2_dims(const DimSeries& s, long cutoff);
DimSeries tensor_dims(const DimSeries& a, const DimSeries& b, long cutoff);

/// Compares the symmetric square of V_M with the two-summand decomposition in
/// the doubled lattices, weight by weight up to the cutoff.
CheckReport decomposition_check(long k, long cutoff);

}  // namespace c2orb
