#include "c2orb/suites.hpp"

#include <atomic>
#include <chrono>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <thread>

namespace c2orb {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Tally {
  long checks = 0;
  long bad = 0;
  std::string witness;

  void record(bool ok, const std::function<std::string()>& describe) {
    ++checks;
    if (ok) return;
    if (bad++ == 0) witness = describe();
  }
  void merge(const Tally& o) {
    checks += o.checks;
    if (bad == 0 && o.bad > 0) witness = o.witness;
    bad += o.bad;
  }
  CheckReport report(const std::string& name, double seconds) const {
    CheckReport r;
    r.name = name;
    r.pass = bad == 0 && checks > 0;
    r.witness = bad == 0 ? (checks == 0 ? "no checks ran" : "") : witness + " (" + std::to_string(bad) + " failures)";
    r.notes.push_back(std::to_string(checks) + " checks");
    r.seconds = seconds;
    return r;
  }
};

template <class S>
std::string describe(const Engine<S>& e, const std::string& what, const FockVector<S>& d) {
  return what + ": defect " + d.str(e.spec());
}

}  // namespace

std::vector<CheckReport> oracle_heisenberg(const OracleRanges& r, int jobs) {
  const auto t0 = Clock::now();
  const VoaSpec spec = VoaSpec::heisenberg(r.rank);
  HeisenbergEngine e(spec);
  const auto ab = e.basis_up_to(r.max_ab_weight);
  const auto us = e.basis_up_to(r.max_u_weight);
  enum { expansion, commutator, associativity, skew, skew_plain, kinds };
  std::vector<std::array<Tally, kinds>> per_thread(std::max(1, jobs));
  std::atomic<std::size_t> next{0};
  auto worker = [&](int t) {
    auto& tl = per_thread[t];
    for (std::size_t ia = next++; ia < ab.size(); ia = next++) {
      const auto a = e.monomial(ab[ia]);
      for (const auto& bm : ab) {
        const auto b = e.monomial(bm);
        const auto tag = [&](const char* kind, long m, long n, const std::string& extra) {
          std::ostringstream os;
          os << kind << " a=" << ab[ia].str(spec) << " b=" << bm.str(spec) << extra << " m=" << m;
          if (n != 0) os << " n=" << n;
          return os.str();
        };
        for (long m = -r.max_mn; m <= r.max_mn; ++m) {
          if (m == 0) continue;
          const auto d = e.skew_defect(a, b, m);
          tl[skew].record(d.is_zero(), [&] { return describe(e, tag("skew", m, 0, ""), d); });
          const auto d2 = e.skew_defect_unnormalized(a, b, m);
          tl[skew_plain].record(d2.is_zero(), [&] { return describe(e, tag("skew", m, 0, ""), d2); });
        }
        for (const auto& um : us) {
          const auto u = e.monomial(um);
          const std::string us_str = " u=" + um.str(spec);
          for (long m = 1; m <= r.max_mn; ++m)
            for (long n = 1; n <= r.max_mn; ++n) {
              const auto d = e.expansion_defect(a, b, u, m, n);
              tl[expansion].record(d.is_zero(), [&] { return describe(e, tag("expansion", m, n, us_str), d); });
              const auto c = e.commutator_defect(a, b, u, -m, -n);
              tl[commutator].record(c.is_zero(), [&] { return describe(e, tag("commutator", -m, -n, us_str), c); });
              const auto s = e.associativity_defect(a, b, u, -m, -n);
              tl[associativity].record(s.is_zero(),
                                       [&] { return describe(e, tag("associativity", -m, -n, us_str), s); });
            }
        }
      }
    }
  };
  if (jobs <= 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
  }
  std::array<Tally, kinds> total;
  for (const auto& tl : per_thread)
    for (int k = 0; k < kinds; ++k) total[k].merge(tl[k]);
  const double secs = since(t0);
  return {total[expansion].report("oracle_expansion", secs), total[commutator].report("oracle_commutator", secs),
          total[associativity].report("oracle_associativity", secs), total[skew].report("oracle_skew", secs),
          total[skew_plain].report("oracle_skew_unnormalized", secs)};
}

std::vector<CheckReport> oracle_virasoro(int max_mn, int max_u_weight) {
  const auto t0 = Clock::now();
  VirasoroEngine e(VoaSpec::virasoro());
  const auto w = e.omega();
  Tally ex, com, assoc, sk, skp;
  for (const auto& um : e.basis_up_to(max_u_weight)) {
    const auto u = e.monomial(um);
    for (long m = 1; m <= max_mn; ++m)
      for (long n = 1; n <= max_mn; ++n) {
        const std::string tag = " u=" + um.str(e.spec()) + " m=" + std::to_string(m) + " n=" + std::to_string(n);
        const auto d = e.expansion_defect(w, w, u, m, n);
        ex.record(d.is_zero(), [&] { return describe(e, "expansion" + tag, d); });
        const auto c = e.commutator_defect(w, w, u, -m, -n);
        com.record(c.is_zero(), [&] { return describe(e, "commutator" + tag, c); });
        const auto s = e.associativity_defect(w, w, u, -m, -n);
        assoc.record(s.is_zero(), [&] { return describe(e, "associativity" + tag, s); });
        const auto cp = e.commutator_defect(w, w, u, m, n);
        com.record(cp.is_zero(), [&] { return describe(e, "commutator (positive modes)" + tag, cp); });
      }
  }
  for (long m = -max_mn; m <= max_mn; ++m) {
    if (m == 0) continue;
    const auto d = e.skew_defect(w, w, m);
    sk.record(d.is_zero(), [&] { return describe(e, "skew m=" + std::to_string(m), d); });
    const auto d2 = e.skew_defect_unnormalized(w, w, m);
    skp.record(d2.is_zero(), [&] { return describe(e, "skew m=" + std::to_string(m), d2); });
  }
  const double secs = since(t0);
  return {ex.report("virasoro_expansion", secs), com.report("virasoro_commutator", secs),
          assoc.report("virasoro_associativity", secs), sk.report("virasoro_skew", secs),
          skp.report("virasoro_skew_unnormalized", secs)};
}

CheckReport vanishing_check(Orbifold& o, int max_even, int lo, int hi, int lminus1_weight) {
  const auto t0 = Clock::now();
  auto& E = o.engine();
  const auto x = E.generator(0);
  CheckReport r;
  r.name = "vanishing";
  r.pass = true;
  std::vector<long> ms;
  for (long m = 2; m <= max_even; m += 2) ms.push_back(m);
  for (long m = lo; m <= hi; ++m)
    if (m % 2 != 0) ms.push_back(m);
  for (long m : ms)
    if (!o.in_c2(o.eta(E.nth_product(x, x, -m)))) {
      r.pass = false;
      r.witness += "eta(x_(-" + std::to_string(m) + ")x) outside C2; ";
    }
  const auto om = E.omega();
  long count = 0;
  for (const auto& u : E.basis_up_to(lminus1_weight)) {
    ++count;
    if (!o.in_c2(o.eta(E.nth_product(om, E.monomial(u), 0)))) {
      r.pass = false;
      r.witness += "eta(L_{-1}" + u.str(o.spec()) + ") outside C2; ";
    }
  }
  // Observed boundary for the open tightness question.
  const bool seven = o.in_c2(o.eta(E.nth_product(x, x, -7)));
  r.notes.push_back(std::to_string(ms.size()) + " eta(x_(-m)x) and " + std::to_string(count) + " L_{-1} images checked");
  r.notes.push_back(std::string("observed: eta(x_(-7)x) ") + (seven ? "lies in C2" : "is nonzero modulo C2"));
  r.seconds = since(t0);
  return r;
}

CheckReport cubic_identity_grid(Orbifold& o, int max_mn, int max_p) {
  const auto t0 = Clock::now();
  CheckReport r;
  r.name = "cubic_identity";
  r.pass = true;
  int n_checks = 0, informative = 0;
  auto& E = o.engine();
  const auto x = E.generator(0);
  for (long m = 2; m <= max_mn; ++m)
    for (long n = 2; n <= max_mn; ++n)
      for (long p = 1; p <= max_p; ++p) {
        ++n_checks;
        if (!o.cubic_identity_check(m, n, p)) {
          r.pass = false;
          r.witness += "(" + std::to_string(m) + "," + std::to_string(n) + "," + std::to_string(p) + ") ";
        }
        if (!o.in_c2(o.eta(E.nth_product(x, x, -m - n - p)))) ++informative;
      }
  r.notes.push_back(std::to_string(n_checks) + " triples; " + std::to_string(informative) +
                    " with the h term nonzero modulo C2");
  r.seconds = since(t0);
  return r;
}

CheckReport probe_report(const ProbeResult& p, const std::string& name) {
  CheckReport r;
  r.name = name;
  r.pass = p.stabilized();
  if (!r.pass) r.witness = "still growing at cutoff " + std::to_string(p.cutoff);
  r.notes.push_back("verdict " + p.verdict());
  r.data = p.json();
  return r;
}

namespace {

std::string cache_file(const std::string& dir, const HeisenbergEngine& e, const std::string& role) {
  std::string name = e.spec().str();
  for (char& ch : name)
    if (ch == '(' || ch == ')' || ch == ',' || ch == '=' || ch == '/') ch = '_';
  return (std::filesystem::path(dir) / (role + "-" + name + ".cache")).string();
}

}  // namespace

std::vector<std::string> load_orbifold_cache(Orbifold& o, const std::string& dir) {
  std::vector<std::string> msgs;
  for (auto [eng, role] : {std::pair<HeisenbergEngine*, const char*>{&o.engine(), "base"}, {&o.q_engine(), "q"}}) {
    const std::string path = cache_file(dir, *eng, role);
    try {
      const std::size_t n = eng->load_cache(path);
      msgs.push_back(path + ": " + std::to_string(n) + " entries");
    } catch (const std::exception& ex) {
      eng->clear_memo();
      std::error_code ec;
      std::filesystem::remove(path, ec);
      msgs.push_back("warning: " + path + " discarded (" + ex.what() + "); rebuilding");
    }
  }
  return msgs;
}

void save_orbifold_cache(const Orbifold& o, const std::string& dir) {
  std::filesystem::create_directories(dir);
  o.engine().save_cache(cache_file(dir, o.engine(), "base"));
  o.q_engine().save_cache(cache_file(dir, o.q_engine(), "q"));
}

}  // namespace c2orb
