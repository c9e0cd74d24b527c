#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "c2orb/suites.hpp"

using namespace c2orb;

namespace {

const CheckReport& find(const std::vector<CheckReport>& rs, const std::string& name) {
  for (const auto& r : rs)
    if (r.name == name) return r;
  throw std::runtime_error("missing report " + name);
}

}  // namespace

TEST_CASE("heisenberg oracle on a small grid") {
  const OracleRanges small{2, 2, 2, 2};
  const auto rs = oracle_heisenberg(small, 1);
  REQUIRE(rs.size() == 5);
  CHECK(find(rs, "oracle_expansion").pass);
  CHECK(find(rs, "oracle_commutator").pass);
  CHECK(find(rs, "oracle_associativity").pass);
  CHECK(find(rs, "oracle_skew_unnormalized").pass);
  // The extra 1/i! breaks skew symmetry once terms with i >= 2 appear.
  CHECK_FALSE(find(rs, "oracle_skew").pass);
  CHECK_FALSE(find(rs, "oracle_skew").witness.empty());
}

TEST_CASE("threaded oracle matches the serial one") {
  const OracleRanges small{1, 2, 3, 3};
  const auto a = oracle_heisenberg(small, 1), b = oracle_heisenberg(small, 3);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].name == b[i].name);
    CHECK(a[i].pass == b[i].pass);
    CHECK(a[i].notes == b[i].notes);
  }
}

TEST_CASE("virasoro oracle") {
  const auto rs = oracle_virasoro(3, 4);
  CHECK(find(rs, "virasoro_expansion").pass);
  CHECK(find(rs, "virasoro_commutator").pass);
  CHECK(find(rs, "virasoro_associativity").pass);
  CHECK(find(rs, "virasoro_skew_unnormalized").pass);
  CHECK_FALSE(find(rs, "virasoro_skew").pass);
}

TEST_CASE("orbifold reports") {
  Orbifold o(VoaSpec::heisenberg(1));
  const auto v = vanishing_check(o, 12, 8, 12, 6);
  CHECK(v.pass);
  CHECK(v.notes.back() == "observed: eta(x_(-7)x) is nonzero modulo C2");
  CHECK(cubic_identity_grid(o, 3, 2).pass);
  const auto p = probe_report(o.d_probe(o.engine().generator(), o.engine().generator(), 12), "probe");
  CHECK(p.pass);
  CHECK(p.json(false).find("\"verdict\":\"stabilized-by-cutoff\"") != std::string::npos);
  const auto short_probe = probe_report(o.d_probe(o.engine().generator(), o.engine().generator(), 5), "probe");
  CHECK_FALSE(short_probe.pass);
}

TEST_CASE("orbifold cache round trip and corruption") {
  const auto dir = std::filesystem::temp_directory_path() / "c2orb-test-suites-cache";
  std::filesystem::remove_all(dir);
  Orbifold a(VoaSpec::heisenberg(1));
  const bool in = a.in_c2(a.eta(a.engine().nth_product(a.engine().generator(), a.engine().generator(), -6)));
  save_orbifold_cache(a, dir.string());

  Orbifold b(VoaSpec::heisenberg(1));
  for (const auto& msg : load_orbifold_cache(b, dir.string())) CHECK(msg.find("warning") == std::string::npos);
  CHECK(b.engine().memo_size() == a.engine().memo_size());
  CHECK(b.in_c2(b.eta(b.engine().nth_product(b.engine().generator(), b.engine().generator(), -6))) == in);

  for (const auto& f : std::filesystem::directory_iterator(dir)) std::ofstream(f.path(), std::ios::app) << "junk\n";
  Orbifold c(VoaSpec::heisenberg(1));
  const auto msgs = load_orbifold_cache(c, dir.string());
  REQUIRE(msgs.size() == 2);
  for (const auto& msg : msgs) CHECK(msg.rfind("warning", 0) == 0);
  CHECK(c.engine().memo_size() == 0);
  CHECK(c.in_c2(c.eta(c.engine().nth_product(c.engine().generator(), c.engine().generator(), -6))) == in);
  std::filesystem::remove_all(dir);
}
