#include <algorithm>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "c2orb/chars.hpp"
#include "c2orb/suites.hpp"
#include "c2orb/verify.hpp"

#ifndef C2ORB_VERSION
#define C2ORB_VERSION "0.0.0"
#endif

using namespace c2orb;
using ojson = nlohmann::ordered_json;

namespace {

const std::vector<std::string> kSuites = {"appendix", "weight1", "identities", "virasoro", "probe", "characters"};

struct Config {
  std::vector<std::string> suites;
  int probe_cutoff = 14;
  int character_cutoff = 12;
  int rank = 1;
  int oracle_rank = 2;
  std::vector<long> k = {1, 2, 3};
  int window = 4;
  std::string voa = "heisenberg";
  std::vector<std::string> probe_pairs = {"omega:omega", "gen:gen"};
  std::string format = "text";
  std::string cache_dir;
  int jobs = 1;

  void validate() const {
    if (probe_cutoff < 0 || character_cutoff < 0) throw CLI::ValidationError("cutoffs must be >= 0");
    if (window < 1) throw CLI::ValidationError("window must be >= 1");
    if (rank < 1 || oracle_rank < 1) throw CLI::ValidationError("rank must be >= 1");
    if (jobs < 1) throw CLI::ValidationError("jobs must be >= 1");
    for (const auto& s : suites)
      if (std::find(kSuites.begin(), kSuites.end(), s) == kSuites.end())
        throw CLI::ValidationError("unknown suite '" + s + "'");
    for (long kk : k)
      if (kk < 1) throw CLI::ValidationError("k must be >= 1");
  }

  ojson echo() const {
    ojson j;
    j["suites"] = suites;
    j["probe_cutoff"] = probe_cutoff;
    j["character_cutoff"] = character_cutoff;
    j["rank"] = rank;
    j["oracle_rank"] = oracle_rank;
    j["k"] = k;
    j["window"] = window;
    j["voa"] = voa;
    j["probe_pairs"] = probe_pairs;
    j["format"] = format;
    j["cache_dir"] = cache_dir;
    j["jobs"] = jobs;
    return j;
  }
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

std::string unquote(std::string v) {
  v = trim(v);
  if (v.size() >= 2 && (v.front() == '"' || v.front() == '\'') && v.back() == v.front()) return v.substr(1, v.size() - 2);
  return v;
}

// Accepts a TOML array ["a", "b"] or a bare comma-separated list.
std::vector<std::string> split_list(std::string v) {
  v = trim(v);
  if (!v.empty() && v.front() == '[') {
    if (v.back() != ']') throw CLI::ValidationError("unterminated array: " + v);
    v = v.substr(1, v.size() - 2);
  }
  std::vector<std::string> out;
  std::stringstream ss(v);
  for (std::string item; std::getline(ss, item, ',');)
    if (!trim(item).empty()) out.push_back(unquote(item));
  return out;
}

int to_int(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const int x = std::stoi(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw CLI::ValidationError(key + ": expected an integer, got '" + v + "'");
  }
}

void apply_config_file(const std::string& path, Config& c) {
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("cannot read config file " + path);
  int lineno = 0;
  for (std::string line; std::getline(in, line);) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw CLI::ValidationError(path + ":" + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq)), raw = trim(line.substr(eq + 1)), v = unquote(raw);
    if (key == "suite" || key == "suites") c.suites = split_list(raw);
    else if (key == "probe_cutoff") c.probe_cutoff = to_int(key, v);
    else if (key == "character_cutoff") c.character_cutoff = to_int(key, v);
    else if (key == "rank") c.rank = to_int(key, v);
    else if (key == "oracle_rank") c.oracle_rank = to_int(key, v);
    else if (key == "k") {
      c.k.clear();
      for (const auto& s : split_list(raw)) c.k.push_back(to_int(key, s));
    } else if (key == "window") c.window = to_int(key, v);
    else if (key == "voa") c.voa = v;
    else if (key == "probe_pairs") c.probe_pairs = split_list(raw);
    else if (key == "format") c.format = v;
    else if (key == "cache_dir") c.cache_dir = v;
    else if (key == "jobs") c.jobs = to_int(key, v);
    else throw CLI::ValidationError(path + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
  }
}

using Task = std::function<std::vector<CheckReport>()>;

std::vector<CheckReport> run_tasks(const std::vector<Task>& tasks, int jobs) {
  std::vector<std::vector<CheckReport>> results(tasks.size());
  std::size_t next = 0;
  std::mutex mu;
  auto worker = [&] {
    for (;;) {
      std::size_t i;
      {
        std::lock_guard lock(mu);
        if (next == tasks.size()) return;
        i = next++;
      }
      try {
        results[i] = tasks[i]();
      } catch (const std::exception& ex) {
        CheckReport r;
        r.name = "task_" + std::to_string(i);
        r.witness = std::string("exception: ") + ex.what();
        results[i] = {r};
      }
    }
  };
  const int n = std::max(1, std::min<int>(jobs, static_cast<int>(tasks.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  std::vector<CheckReport> out;
  for (auto& r : results) out.insert(out.end(), r.begin(), r.end());
  return out;
}

Orbifold::Vector probe_vector(Orbifold& o, const std::string& name) {
  if (name == "omega") return o.engine().omega();
  if (name == "gen") return o.engine().generator(0);
  if (name.rfind("gen", 0) == 0) {
    const int g = std::stoi(name.substr(3));
    if (g < 0 || g >= o.spec().rank) throw CLI::ValidationError("probe vector " + name + " exceeds the rank");
    return o.engine().generator(g);
  }
  throw CLI::ValidationError("probe vector must be gen, gen<i> or omega, got '" + name + "'");
}

// Creates an orbifold, runs f on it, and keeps the product caches when a directory is set.
std::vector<CheckReport> with_orbifold(const Config& c, const std::function<std::vector<CheckReport>(Orbifold&)>& f) {
  Orbifold o(VoaSpec::heisenberg(c.rank));
  if (!c.cache_dir.empty())
    for (const auto& msg : load_orbifold_cache(o, c.cache_dir))
      if (msg.rfind("warning", 0) == 0) std::cerr << msg << "\n";
  auto out = f(o);
  if (!c.cache_dir.empty()) save_orbifold_cache(o, c.cache_dir);
  return out;
}

std::vector<Task> suite_tasks(const std::string& suite, const Config& c) {
  auto one = [](CheckReport (*fn)()) -> Task { return [fn] { return std::vector<CheckReport>{fn()}; }; };
  if (suite == "appendix") return {one(verify_appendix), one(verify_leading_terms)};
  if (suite == "weight1")
    return {one(verify_det_weight1), one(verify_h_closed_forms), one(verify_beta_gamma_assembly),
            one(verify_F_g_h_assembly), one(verify_pair_scalar_grid)};
  if (suite == "virasoro") return {[] { return oracle_virasoro(); }};
  if (suite == "identities") {
    OracleRanges r;
    r.rank = c.oracle_rank;
    const int jobs = c.jobs;
    return {[r, jobs] { return oracle_heisenberg(r, jobs); },
            [c] {
              return with_orbifold(c, [](Orbifold& o) {
                std::vector<CheckReport> out{vanishing_check(o)};
                if (o.spec().rank == 1) out.push_back(cubic_identity_grid(o));
                return out;
              });
            }};
  }
  if (suite == "probe") {
    if (c.voa != "heisenberg") throw CLI::ValidationError("probe supports --voa heisenberg only");
    std::vector<Task> out;
    for (const auto& pair : c.probe_pairs) {
      const auto colon = pair.find(':');
      if (colon == std::string::npos) throw CLI::ValidationError("probe pair must read x:y, got '" + pair + "'");
      const std::string x = pair.substr(0, colon), y = pair.substr(colon + 1);
      out.push_back([c, x, y] {
        return with_orbifold(c, [&](Orbifold& o) {
          const auto p = o.d_probe(probe_vector(o, x), probe_vector(o, y), c.probe_cutoff, c.window);
          return std::vector<CheckReport>{probe_report(p, "probe_" + x + "_" + y)};
        });
      });
    }
    return out;
  }
  if (suite == "characters") {
    std::vector<Task> out;
    for (long k : c.k) out.push_back([k, c] { return std::vector<CheckReport>{decomposition_check(k, c.character_cutoff)}; });
    return out;
  }
  throw CLI::ValidationError("unknown suite '" + suite + "'");
}

int emit(const Config& c, const std::vector<CheckReport>& reports) {
  const bool all = std::all_of(reports.begin(), reports.end(), [](const CheckReport& r) { return r.pass; }) &&
                   !reports.empty();
  if (c.format == "json") {
    ojson j;
    j["tool"] = "verify";
    j["version"] = C2ORB_VERSION;
    j["config"] = c.echo();
    j["checks"] = ojson::array();
    for (const auto& r : reports) j["checks"].push_back(ojson::parse(r.json()));
    j["verdict"] = all ? "pass" : "fail";
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "verify " << C2ORB_VERSION << "\n";
    for (const auto& r : reports) {
      std::cout << (r.pass ? "PASS " : "FAIL ") << r.name;
      std::cout << "  (" << std::fixed << std::setprecision(2) << r.seconds << " s)\n";
      if (!r.witness.empty()) std::cout << "    witness: " << r.witness << "\n";
      for (const auto& n : r.notes) std::cout << "    " << n << "\n";
      if (!r.data.empty()) std::cout << "    " << r.data << "\n";
    }
    std::cout << "verdict: " << (all ? "pass" : "fail") << "\n";
  }
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact checks for the C2 computations on Heisenberg orbifolds"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(C2ORB_VERSION));

  Config cfg;
  std::string config_path;
  std::vector<std::string> flag_suites;
  std::vector<std::string> positional_suites;
  int cutoff = -1;
  std::string x = "omega", y = "omega";

  app.add_option("--config", config_path, "key = value config file (TOML subset)");
  app.add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--cache-dir", cfg.cache_dir, "directory for product caches");
  app.add_option("--jobs", cfg.jobs, "worker limit");
  app.add_option("--rank", cfg.rank, "Heisenberg rank of the orbifold");
  app.add_option("--window", cfg.window, "stabilization window");
  app.add_option("--cutoff", cutoff, "weight cutoff for probe or characters");
  app.add_option("--k", cfg.k, "lattice parameters for the decomposition check");
  app.fallthrough();

  auto* run = app.add_subcommand("run", "run the suites selected by --suite or the config (all by default)");
  run->add_option("--suite", flag_suites, "suite names")->delimiter(',');
  auto* verify = app.add_subcommand("verify", "run the named suites");
  verify->add_option("suite", positional_suites, "suite names")->required();
  std::map<std::string, CLI::App*> direct;
  for (const auto& s : {"appendix", "weight1", "identities", "virasoro"})
    direct[s] = app.add_subcommand(s, std::string("run the ") + s + " suite");
  auto* probe = app.add_subcommand("probe", "D(x,y) probe in the S2 orbifold");
  probe->add_option("--voa", cfg.voa, "vertex algebra")->check(CLI::IsMember({"heisenberg"}));
  probe->add_option("--x", x, "gen, gen<i> or omega");
  probe->add_option("--y", y, "gen, gen<i> or omega");
  auto* characters = app.add_subcommand("characters", "graded dimension decomposition check");

  try {
    app.parse(argc, argv);
    Config base;
    if (!config_path.empty()) {
      apply_config_file(config_path, base);
      // Command-line flags win over the file.
      for (const auto* name : {"--format", "--cache-dir", "--jobs", "--rank", "--window", "--k"})
        if (app.count(name) == 0) {
          if (std::string(name) == "--format") cfg.format = base.format;
          if (std::string(name) == "--cache-dir") cfg.cache_dir = base.cache_dir;
          if (std::string(name) == "--jobs") cfg.jobs = base.jobs;
          if (std::string(name) == "--rank") cfg.rank = base.rank;
          if (std::string(name) == "--window") cfg.window = base.window;
          if (std::string(name) == "--k") cfg.k = base.k;
        }
      cfg.suites = base.suites;
      cfg.probe_cutoff = base.probe_cutoff;
      cfg.character_cutoff = base.character_cutoff;
      cfg.oracle_rank = base.oracle_rank;
      cfg.voa = base.voa;
      cfg.probe_pairs = base.probe_pairs;
    }

    if (*run) {
      if (!flag_suites.empty()) cfg.suites = flag_suites;
      if (cfg.suites.empty()) cfg.suites = kSuites;
    } else if (*verify) {
      cfg.suites = positional_suites;
    } else if (*probe) {
      cfg.suites = {"probe"};
      cfg.probe_pairs = {x + ":" + y};
      if (cutoff >= 0) cfg.probe_cutoff = cutoff;
    } else if (*characters) {
      cfg.suites = {"characters"};
      if (cutoff >= 0) cfg.character_cutoff = cutoff;
    } else {
      for (const auto& [name, sub] : direct)
        if (*sub) cfg.suites = {name};
    }
    if (cutoff >= 0 && (*run || *verify)) cfg.probe_cutoff = cfg.character_cutoff = cutoff;
    cfg.validate();

    std::vector<Task> tasks;
    for (const auto& s : cfg.suites)
      for (auto& t : suite_tasks(s, cfg)) tasks.push_back(std::move(t));
    return emit(cfg, run_tasks(tasks, cfg.jobs));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
}
