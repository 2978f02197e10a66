// Acceptance checks.  Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <sys/wait.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "mutations.hpp"
#include "oddcolor/oddcolor.hpp"
#include "oracles.hpp"

namespace {

using namespace oddcolor;
namespace fs = std::filesystem;

/// Collects the first few failure messages of one criterion.
class Outcome {
 public:
  void fail(const std::string& what) {
    if (failures_++ < 5) messages_ << (messages_.tellp() > 0 ? "; " : "") << what;
  }
  bool ok() const { return failures_ == 0; }
  std::string detail() const {
    std::string s = messages_.str();
    if (failures_ > 5) s += "; " + std::to_string(failures_ - 5) + " more";
    return s;
  }

 private:
  std::size_t failures_ = 0;
  std::ostringstream messages_;
};

std::string describe_run(const std::string& name, const RunResult& r) {
  return name + " (" + std::to_string(r.colors_used) + " colors)";
}

// Criterion 1
void ff_adversary(Outcome& out) {
  for (std::size_t m : {1, 3, 50, 200}) {
    InstanceStream s = gen_ff_adversary(m);
    RunResult r = first_fit(s);
    if (!oracle::proper(s, r.coloring)) out.fail("improper on m=" + std::to_string(m));
    if (r.colors_used != m) out.fail(describe_run("m=" + std::to_string(m), r) + " expected " + std::to_string(m));
    auto ref = oracle::first_fit(s);
    for (VertexId v = 0; v < s.n(); ++v) {
      if (r.coloring.color(v) != ref[v]) {
        out.fail("m=" + std::to_string(m) + " differs from the reference greedy at vertex " + std::to_string(v));
        break;
      }
    }
  }
}

// Criterion 2
void kierstead_bound(Outcome& out) {
  auto check = [&](const std::string& name, const InstanceStream& s) {
    RunResult r = kierstead(s);
    if (!r.complete()) out.fail(name + " incomplete");
    if (!oracle::proper(s, r.coloring)) out.fail(name + " improper");
    if (oracle::distinct_colors(r.coloring) != r.colors_used) out.fail(name + " miscounted colors");
    if (r.colors_used > 40 || color_budget(0, s.n()) != 40) out.fail(describe_run(name, r) + " above 40");
  };
  check("adversary m=200", gen_ff_adversary(200));
  for (double p : {0.05, 0.2}) {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      check("bipartite p=" + std::to_string(p) + " seed=" + std::to_string(seed), gen_random_bipartite(400, p, seed));
    }
  }
}

// Criterion 3
void group_coloring_budget(Outcome& out) {
  for (unsigned delta : {0u, 1u, 2u, 3u, 5u}) {
    for (std::uint64_t seed = 1; seed <= 1000; ++seed) {
      auto steps = oracle::group_stream(delta, 3 + seed % 30, 250, seed * 6151 + delta, seed % 2 == 0);
      GroupColoring gc(static_cast<double>(delta));
      std::map<GroupId, std::set<Color>> used;
      for (const auto& step : steps) {
        Color c = gc.color_vertex(step.group, step.adjacent);
        for (GroupId h : step.adjacent) {
          if (used[h].contains(c)) {
            out.fail("delta " + std::to_string(delta) + " seed " + std::to_string(seed) + ": group " +
                     std::to_string(step.group) + " reused color " + std::to_string(c) + " of group " +
                     std::to_string(h));
          }
        }
        used[step.group].insert(c);
        if (c > delta * delta + 2) {
          out.fail("delta " + std::to_string(delta) + " seed " + std::to_string(seed) + ": color " +
                   std::to_string(c));
        }
      }
    }
  }
}

struct LayeredCase {
  std::string name;
  InstanceStream stream;
  unsigned k;
};

std::vector<LayeredCase> layered_cases() {
  std::vector<LayeredCase> cases;
  auto add = [&](std::string name, InstanceStream s, unsigned k) {
    cases.push_back({std::move(name), std::move(s), k});
    for (std::uint64_t seed : {11u, 12u}) {
      cases.push_back({cases.back().name + " order " + std::to_string(seed), reorder(cases.back().stream, seed), k});
    }
  };
  add("C31", gen_odd_cycle(required_odd_girth(1) + 2), 1);
  for (std::size_t m : {5, 6, 9, 12}) add("SC(" + std::to_string(m) + ",11)", gen_subdivided_clique(m, 11), 1);
  add("C141", gen_odd_cycle(required_odd_girth(2) + 2), 2);
  for (std::size_t m : {5, 6, 9}) add("SC(" + std::to_string(m) + ",47)", gen_subdivided_clique(m, 47), 2);
  return cases;
}

// Criterion 4
void layered_budget(Outcome& out, const std::vector<LayeredCase>& cases) {
  for (const auto& c : cases) {
    if (c.stream.n() > 2000) out.fail(c.name + " exceeds 2000 vertices");
    RunResult r = layered_colorer(c.stream, c.k);
    if (!r.complete()) out.fail(c.name + " incomplete");
    if (!oracle::proper(c.stream, r.coloring)) out.fail(c.name + " improper");
    if (r.colors_used > color_budget(c.k, c.stream.n())) {
      out.fail(describe_run(c.name, r) + " over budget " + std::to_string(color_budget(c.k, c.stream.n())));
    }
  }
}

// Criterion 5
void structural_audits(Outcome& out, const std::vector<LayeredCase>& cases) {
  const char* required[] = {"even-diameter", "base-budget", "z-spacing", "frozen-yprime", "merge-size"};
  auto audit = [&](const std::string& name, const InstanceStream& s, const RunResult& r) {
    AuditReport rep = verify_audit(s, r.audit, AuditConfig::of(r), AuditLevel::Full);
    if (!rep.passed()) out.fail(name + ": " + rep.summary());
    for (const char* check : required) {
      if (rep.status(check) != CheckStatus::Pass) out.fail(name + " did not pass " + check);
    }
  };
  std::size_t audited = 0;
  for (const auto& c : cases) {
    if (c.stream.n() > kFullAuditMaxVertices) continue;
    audit(c.name, c.stream, layered_colorer(c.stream, c.k));
    ++audited;
  }
  if (audited < 6) out.fail("only " + std::to_string(audited) + " runs audited");
  if (diameter_cap(1) != 24 || diameter_cap(2) != 134) out.fail("diameter caps differ from 24 and 134");

  // Reduced first-fit width and delta force merges on every reducer layer.
  InstanceStream s = gen_random_bipartite(200, 0.05, 1);
  for (unsigned k : {1u, 2u}) {
    RunResult r = layered_colorer(s, k, PlanOverrides{1, 1});
    std::set<unsigned> merged;
    for (const auto& e : r.audit.events()) {
      if (const auto* m = std::get_if<event::Merge>(&e)) merged.insert(m->layer);
    }
    if (merged.size() != k) out.fail("override run k=" + std::to_string(k) + " merged on " +
                                     std::to_string(merged.size()) + " layers");
    if (!oracle::proper(s, r.coloring)) out.fail("override run k=" + std::to_string(k) + " improper");
    audit("override run k=" + std::to_string(k), s, r);
  }
}

// Criterion 6
void threshold_arithmetic(Outcome& out) {
  const std::uint64_t expected[] = {7, 29, 139, 689};
  for (unsigned k = 0; k < 4; ++k) {
    if (required_odd_girth(k) != expected[k]) {
      out.fail("g_req(" + std::to_string(k) + ") = " + std::to_string(required_odd_girth(k)));
    }
  }
  std::uint64_t pow5 = 1;
  for (unsigned l = 0; l <= 10; ++l, pow5 *= 5) {
    std::uint64_t closed = (11 * pow5 - 7) / 2;
    if (diameter_cap(l) != closed || diameter_cap_closed_form(l) != closed) {
      out.fail("a_" + std::to_string(l) + " = " + std::to_string(diameter_cap(l)) + ", closed form " +
               std::to_string(closed));
    }
  }
}

// Criterion 7
void first_fit_on_girth_nine(Outcome& out) {
  InstanceStream base = gen_subdivided_clique(6, 3);
  if (base.n() != 36) out.fail("SC(6,3) has " + std::to_string(base.n()) + " vertices");
  if (first_fit_girth_bound(4, 36) != 12) out.fail("bound is " + std::to_string(first_fit_girth_bound(4, 36)));
  for (std::uint64_t seed = 0; seed <= 50; ++seed) {
    InstanceStream s = seed == 0 ? base : reorder(base, seed);
    RunResult r = first_fit(s);
    std::string name = seed == 0 ? "given order" : "order " + std::to_string(seed);
    if (!oracle::proper(s, r.coloring)) out.fail(name + " improper");
    if (r.colors_used > 12) out.fail(describe_run(name, r));
  }
}

OnlineGraph petersen() {
  return OnlineGraph::replay(
      InstanceStream::from_back_edges({{}, {0}, {1}, {2}, {0, 3}, {0}, {1}, {2, 5}, {3, 5, 6}, {4, 6, 7}}));
}

// Criterion 8
void oracle_agreement(Outcome& out) {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    std::size_t n = 2 + seed % 11;
    InstanceStream s = gen_random_graph(n, 0.15 + 0.05 * static_cast<double>(seed % 8), seed);
    OnlineGraph g = OnlineGraph::replay(s);
    if (odd_girth(g) != oracle_odd_girth(g)) out.fail("odd girth differs on seed " + std::to_string(seed));
    for (VertexId a = 0; a < n; ++a) {
      for (VertexId b = 0; b < n; ++b) {
        if (even_distance(g, a, b) != oracle_even_distance(g, a, b)) {
          out.fail("even distance differs on seed " + std::to_string(seed));
        }
      }
    }
  }
  if (brute_chromatic(OnlineGraph::replay(gen_odd_cycle(5))) != 3) out.fail("chromatic number of C5");
  if (brute_chromatic(petersen()) != 3) out.fail("chromatic number of the Petersen graph");
}

int run_cli(const std::string& args) {
  std::string cmd = "'" + std::string(ODDCOLOR_CLI_PATH) + "' " + args + " > /dev/null 2>&1";
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path scratch_dir(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / ("oddcolor_acceptance_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

// Criterion 9
void promise_violation_safety(Outcome& out) {
  std::vector<std::pair<std::string, InstanceStream>> inputs = {{"C5", gen_odd_cycle(5)},
                                                                {"triangle", gen_odd_cycle(3)}};
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    inputs.emplace_back("C5 order " + std::to_string(seed), reorder(gen_odd_cycle(5), seed));
    inputs.emplace_back("triangle order " + std::to_string(seed), reorder(gen_odd_cycle(3), seed));
  }
  for (const auto& [name, s] : inputs) {
    for (PlanOverrides ov : {PlanOverrides{}, PlanOverrides{1, 1}, PlanOverrides{1, 2}}) {
      RunResult r = layered_colorer(s, 1, ov);
      Coloring prefix(std::vector<Color>(r.coloring.assignment().begin(),
                                         r.coloring.assignment().begin() +
                                             static_cast<std::ptrdiff_t>(r.coloring.colored_prefix())));
      InstanceStream head = InstanceStream::from_back_edges([&] {
        std::vector<std::vector<VertexId>> back;
        for (std::size_t v = 0; v < prefix.colored_prefix(); ++v) back.push_back(s[v].neighbors);
        return back;
      }());
      if (!oracle::proper(head, prefix)) out.fail(name + " emitted an improper coloring");
      if (r.promise_violation) {
        if (r.promise_violation->reason.empty() || !r.promise_violation->vertex) {
          out.fail(name + " has an empty diagnostic");
        }
      } else if (!r.complete()) {
        out.fail(name + " stopped without a diagnostic");
      }
    }
  }

  fs::path dir = scratch_dir("promise");
  for (std::size_t g : {3, 5}) {
    std::string in = (dir / ("c" + std::to_string(g) + ".txt")).string();
    std::string res = (dir / ("r" + std::to_string(g) + ".json")).string();
    if (run_cli("gen --kind odd-cycle --g " + std::to_string(g) + " -o " + in) != 0) out.fail("gen failed");
    if (run_cli("run -i " + in + " --algo layered --k 1 --check-promise --result " + res) != 5) {
      out.fail("cli did not exit 5 on C" + std::to_string(g));
    }
    int code = run_cli("run -i " + in + " --algo layered --k 1 --result " + res);
    if (code != 0 && code != 5) out.fail("cli exit " + std::to_string(code) + " on C" + std::to_string(g));
    if (code == 0 && run_cli("verify -i " + in + " --result " + res) != 0) {
      out.fail("cli emitted an improper coloring on C" + std::to_string(g));
    }
  }
  fs::remove_all(dir);

  InstanceStream s = gen_random_bipartite(200, 0.05, 1);
  PlanOverrides ov{1, 1};
  RunResult r = layered_colorer(s, 2, ov);
  AuditConfig config = AuditConfig::of(r);
  auto cases = mutation::catalogue(s, 2, ov);
  if (cases.size() < 12) out.fail("mutation catalogue has " + std::to_string(cases.size()) + " entries");
  for (const auto& [check, mutate] : cases) {
    AuditTrace t = r.audit;
    try {
      mutate(t);
    } catch (const std::exception& e) {
      out.fail("mutation for " + check + " could not be applied: " + e.what());
      continue;
    }
    if (verify_audit(s, t, config, AuditLevel::Full).status(check) != CheckStatus::Fail) {
      out.fail("mutation for " + check + " not caught");
    }
  }
}

// Criterion 10
void determinism(Outcome& out) {
  fs::path dir = scratch_dir("determinism");
  auto pipeline = [&](const std::string& tag) {
    std::string p = (dir / tag).string();
    if (run_cli("gen --kind subdivided-clique --m 6 --t 11 --order random --seed 4 -o " + p + ".txt") != 0) {
      out.fail("gen failed");
    }
    if (run_cli("run -i " + p + ".txt --algo layered --k 1 --result " + p + ".json --audit " + p + ".jsonl") != 0) {
      out.fail("run failed");
    }
    if (run_cli("verify -i " + p + ".txt --result " + p + ".json --audit " + p + ".jsonl --level full") != 0) {
      out.fail("verify failed");
    }
    if (run_cli("bench --suite '" + std::string(ODDCOLOR_SUITE_PATH) + "' --csv " + p + ".csv --json " + p +
                ".bench.json") != 0) {
      out.fail("bench failed");
    }
  };
  pipeline("a");
  pipeline("b");
  for (const char* ext : {".txt", ".json", ".jsonl", ".csv", ".bench.json"}) {
    std::string a = read_text_file((dir / (std::string("a") + ext)).string());
    std::string b = read_text_file((dir / (std::string("b") + ext)).string());
    if (a.empty()) out.fail(std::string(ext) + " artifact is empty");
    if (a != b) out.fail(std::string(ext) + " artifacts differ");
  }
  fs::remove_all(dir);
}

struct Criterion {
  int id;
  std::string title;
  double limit_seconds;
  std::function<void(Outcome&)> body;
};

}  // namespace

int main() {
  const auto cases = layered_cases();
  const std::vector<Criterion> criteria = {
      {1, "first-fit uses exactly m colors on the adversary", 1, ff_adversary},
      {2, "Kierstead colorer stays within 40 colors at n = 400", 5, kierstead_bound},
      {3, "group coloring stays within delta^2 + 2 colors", 30, group_coloring_budget},
      {4, "layered colorer stays within its color budget", 60, [&](Outcome& o) { layered_budget(o, cases); }},
      {5, "full structural audit of layered runs", 120, [&](Outcome& o) { structural_audits(o, cases); }},
      {6, "odd-girth thresholds and diameter caps", 1, threshold_arithmetic},
      {7, "first-fit on a girth-9 instance within 12 colors", 5, first_fit_on_girth_nine},
      {8, "parity BFS agrees with the walk oracle", 30, oracle_agreement},
      {9, "short odd cycles never yield improper colorings", 5, promise_violation_safety},
      {10, "pipeline artifacts are byte-identical across runs", 30, determinism},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    Outcome out;
    auto start = std::chrono::steady_clock::now();
    try {
      c.body(out);
    } catch (const std::exception& e) {
      out.fail(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.limit_seconds) out.fail("took " + std::to_string(secs) + " s, limit " + std::to_string(c.limit_seconds));
    std::ostringstream line;
    line.setf(std::ios::fixed);
    line.precision(2);
    line << (out.ok() ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.title << " (" << secs << " s)";
    if (!out.ok()) line << ": " << out.detail();
    std::cout << line.str() << std::endl;
    if (!out.ok()) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
