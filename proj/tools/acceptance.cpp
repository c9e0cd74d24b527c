#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include "c2orb/chars.hpp"
#include "c2orb/suites.hpp"
#include "c2orb/verify.hpp"

using namespace c2orb;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void take(const CheckReport& r) {
    if (r.pass) return;
    pass = false;
    if (!detail.empty()) detail += "; ";
    detail += r.name + ": " + (r.witness.size() > 300 ? r.witness.substr(0, 300) + "..." : r.witness);
    for (const auto& n : r.notes) detail += " [" + n + "]";
  }
};

Outcome budget(Outcome o, double seconds, double limit) {
  if (seconds >= limit) {
    o.pass = false;
    if (!o.detail.empty()) o.detail += "; ";
    o.detail += "runtime " + std::to_string(seconds) + " s over the " + std::to_string(limit) + " s budget";
  }
  return o;
}

std::string cache_dir() {
  const char* env = std::getenv("C2ORB_CACHE_DIR");
  return env ? env : (std::filesystem::temp_directory_path() / "c2orb-acceptance-cache").string();
}

Outcome criterion(int c, double& seconds) {
  const auto t0 = std::chrono::steady_clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(); };
  Outcome o;
  switch (c) {
    case 1:
      o.take(verify_appendix());
      seconds = elapsed();
      return budget(o, seconds, 30);
    case 2:
      o.take(verify_leading_terms());
      break;
    case 3:
      o.take(verify_det_weight1());
      seconds = elapsed();
      return budget(o, seconds, 5);
    case 4:
      o.take(verify_h_closed_forms());
      break;
    case 5: {
      const unsigned hw = std::thread::hardware_concurrency();
      for (const auto& r : oracle_heisenberg(OracleRanges{2, 3, 5, 4}, hw == 0 ? 1 : static_cast<int>(hw))) o.take(r);
      for (const auto& r : oracle_virasoro(4, 5)) o.take(r);
      seconds = elapsed();
      return budget(o, seconds, 120);
    }
    case 6: {
      Orbifold orb(VoaSpec::heisenberg(1));
      const std::string dir = cache_dir();
      load_orbifold_cache(orb, dir);
      o.take(vanishing_check(orb, 12, 8, 12, 10));
      save_orbifold_cache(orb, dir);
      seconds = elapsed();
      return budget(o, seconds, 600);
    }
    case 7: {
      Orbifold orb(VoaSpec::heisenberg(1));
      o.take(cubic_identity_grid(orb, 4, 3));
      break;
    }
    case 8: {
      Orbifold orb(VoaSpec::heisenberg(1));
      const auto& E = orb.engine();
      const ProbeResult p = orb.d_probe(E.omega(), E.omega(), 14, 4);
      o.take(probe_report(p, "probe_omega_omega"));
      if (p.verdict() != "stabilized-by-cutoff") o.pass = false;
      o.detail += (o.detail.empty() ? "" : "; ") + std::string("verdict ") + p.verdict();
      break;
    }
    case 9:
      for (long k : {1L, 2L, 3L}) o.take(decomposition_check(k, 10));
      seconds = elapsed();
      return budget(o, seconds, 10);
    default:
      o.pass = false;
      o.detail = "no such criterion";
  }
  seconds = elapsed();
  return o;
}

const char* kTitles[] = {"",
                         "appendix determinants equal f0 and f1",
                         "leading terms 16/952560 k m^16",
                         "weight-one determinant closed form",
                         "h closed forms at (m,3,2) and (3,2,m)",
                         "oracle equivalence of the mode identities",
                         "vanishing in the rank-one orbifold",
                         "cubic membership identity",
                         "D(omega,omega) probe stabilizes",
                         "lattice decomposition for k = 1, 2, 3"};

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> which;
  for (int i = 1; i < argc; ++i) which.push_back(std::atoi(argv[i]));
  if (which.empty())
    for (int c = 1; c <= 9; ++c) which.push_back(c);
  bool all = true;
  for (int c : which) {
    double seconds = 0;
    Outcome o;
    try {
      o = criterion(c, seconds);
    } catch (const std::exception& ex) {
      o.pass = false;
      o.detail = std::string("exception: ") + ex.what();
    }
    all = all && o.pass;
    const char* title = c >= 1 && c <= 9 ? kTitles[c] : "unknown";
    std::printf("criterion %d: %s: %s (%.2f s)%s%s\n", c, o.pass ? "PASS" : "FAIL", title, seconds,
                o.detail.empty() ? "" : " | ", o.detail.c_str());
  }
  return all ? 0 : 1;
}
