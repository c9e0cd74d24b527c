#pragma once

#include <string>
#include <vector>

#include "c2orb/orbifold.hpp"
#include "c2orb/verify.hpp"

namespace c2orb {

struct OracleRanges {
  int rank = 2;
  int max_ab_weight = 3;
  int max_u_weight = 5;
  int max_mn = 4;
};

/// Expansion, commutator, associativity and both skew forms over every basis
/// triple in range. Reports: oracle_expansion, oracle_commutator,
/// oracle_associativity, oracle_skew (as displayed), oracle_skew_unnormalized.
std::vector<CheckReport> oracle_heisenberg(const OracleRanges& r, int jobs = 1);
/// Same identities in the Virasoro engine with a = b = omega and u over the basis.
std::vector<CheckReport> oracle_virasoro(int max_mn = 4, int max_u_weight = 5);

/// Orbifold C2 memberships eta(x_{(-m)}x) for even m <= max_even and lo <= m <= hi,
/// plus eta(L_{-1}u) for u of weight <= lminus1_weight.
CheckReport vanishing_check(Orbifold& o, int max_even = 12, int lo = 8, int hi = 12, int lminus1_weight = 10);
/// The cubic product identity with symbolic h for 2 <= m,n <= max_mn, 1 <= p <= max_p.
CheckReport cubic_identity_grid(Orbifold& o, int max_mn = 4, int max_p = 3);
/// Wraps a probe: pass iff stabilized by the cutoff.
CheckReport probe_report(const ProbeResult& p, const std::string& name);

/// Loads the orbifold's product caches from dir; a corrupt file is discarded
/// with a warning. Returns a message per file.
std::vector<std::string> load_orbifold_cache(Orbifold& o, const std::string& dir);
void save_orbifold_cache(const Orbifold& o, const std::string& dir);

}  // namespace c2orb
