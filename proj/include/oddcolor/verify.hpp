#ifndef ODDCOLOR_VERIFY_HPP
#define ODDCOLOR_VERIFY_HPP

// Offline checkers.  Every check is a pure function of the instance and the
// run output; the audit checks rebuild bases, Y' memberships and H+ from the
// trace alone, so they do not share code paths with the colorers.

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "oddcolor/audit.hpp"
#include "oddcolor/colorers.hpp"
#include "oddcolor/graph.hpp"
#include "oddcolor/layer_plan.hpp"
#include "oddcolor/parity.hpp"

namespace oddcolor {

enum class CheckStatus { Pass, Fail, Skipped };

inline const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Skipped: return "skipped";
  }
  return "?";
}

struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::Pass;
  std::string detail;
  nlohmann::json witness;  // null unless failed
};

class AuditReport {
 public:
  void pass(std::string name, std::string detail = {}) {
    checks_.push_back({std::move(name), CheckStatus::Pass, std::move(detail), nullptr});
  }
  void fail(std::string name, std::string detail, nlohmann::json witness) {
    checks_.push_back({std::move(name), CheckStatus::Fail, std::move(detail), std::move(witness)});
  }
  void skip(std::string name, std::string detail) {
    checks_.push_back({std::move(name), CheckStatus::Skipped, std::move(detail), nullptr});
  }

  void append(const AuditReport& other) { checks_.insert(checks_.end(), other.checks_.begin(), other.checks_.end()); }

  bool passed() const {
    return std::none_of(checks_.begin(), checks_.end(), [](const auto& c) { return c.status == CheckStatus::Fail; });
  }

  const std::vector<CheckResult>& checks() const noexcept { return checks_; }

  /// Status of the named check; Fail wins if it was recorded several times.
  std::optional<CheckStatus> status(std::string_view name) const {
    std::optional<CheckStatus> out;
    for (const auto& c : checks_) {
      if (c.name != name) continue;
      if (!out || c.status == CheckStatus::Fail || (*out == CheckStatus::Skipped)) out = c.status;
    }
    return out;
  }

  const CheckResult* first_failure(std::string_view name) const {
    for (const auto& c : checks_) {
      if (c.name == name && c.status == CheckStatus::Fail) return &c;
    }
    return nullptr;
  }

  nlohmann::json to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : checks_) {
      arr.push_back({{"check", c.name}, {"status", to_string(c.status)}, {"detail", c.detail}, {"witness", c.witness}});
    }
    return {{"passed", passed()}, {"checks", arr}};
  }

  std::string summary() const {
    std::ostringstream out;
    for (const auto& c : checks_) {
      out << (c.status == CheckStatus::Pass ? "PASS " : c.status == CheckStatus::Fail ? "FAIL " : "SKIP ") << c.name;
      if (!c.detail.empty()) out << ": " << c.detail;
      if (c.status == CheckStatus::Fail && !c.witness.is_null()) out << " witness=" << c.witness.dump();
      out << '\n';
    }
    out << (passed() ? "all checks passed" : "some checks FAILED") << '\n';
    return out.str();
  }

 private:
  std::vector<CheckResult> checks_;
};

// ---------------------------------------------------------------------------

/// Passes iff no edge joins two vertices of equal color.  The coloring must
/// cover every vertex.
inline AuditReport verify_proper(const InstanceStream& stream, const Coloring& coloring) {
  if (coloring.colored_prefix() < stream.n() ) {
    throw std::invalid_argument("coloring incomplete: " + std::to_string(coloring.colored_prefix()) + " of " +
                                std::to_string(stream.n()) + " vertices colored");
  }
  AuditReport report;
  for (const auto& e : stream.events()) {
    for (VertexId u : e.neighbors) {
      if (coloring.color(u) == coloring.color(e.vertex)) {
        report.fail("proper", "edge joins two vertices of color " + std::to_string(coloring.color(u)),
                    {{"edge", {u, e.vertex}}, {"color", coloring.color(u)}});
        return report;
      }
    }
  }
  report.pass("proper", std::to_string(stream.edge_count()) + " edges checked");
  return report;
}

/// Colors-used against the provable bound for the run's algorithm:
///   first-fit  k * ceil(n^(1/k)) for girth >= 2k + 1 (needs `girth_promise`)
///   kierstead  2 * ceil(sqrt n)
///   layered    color_budget(k, n), summed over guesses for unknown n
inline AuditReport verify_bounds(const InstanceStream& stream, const RunResult& run,
                                 std::optional<std::uint64_t> girth_promise = {}) {
  if (run.promise_violation) throw std::invalid_argument("bounds are undefined for a run with a promise violation");
  if (run.n != stream.n()) throw std::invalid_argument("run and instance disagree on n");
  AuditReport report;
  const std::string used = "colors_used=" + std::to_string(run.colors_used);
  if (run.algorithm == Algorithm::FirstFit) {
    if (!girth_promise || *girth_promise < 3) {
      report.skip("bound", used + ", no girth promise");
      return report;
    }
    auto bound = best_first_fit_bound(*girth_promise, stream.n());
    if (run.colors_used <= bound) {
      report.pass("bound", used + " <= " + std::to_string(bound) + " (girth " + std::to_string(*girth_promise) + ")");
    } else {
      report.fail("bound", used + " exceeds first-fit bound " + std::to_string(bound),
                  {{"colors_used", run.colors_used}, {"bound", bound}});
    }
    return report;
  }
  std::uint64_t bound = 0;
  if (run.overrides.any()) {
    bound = LayerPlan(stream.n(), run.k, run.overrides).palette_size();
  } else {
    bound = *run_budget(run);
  }
  if (run.colors_used <= bound && run.max_color <= bound) {
    report.pass("bound", used + " <= " + std::to_string(bound));
  } else {
    report.fail("bound", used + ", max_color=" + std::to_string(run.max_color) + " vs budget " + std::to_string(bound),
                {{"colors_used", run.colors_used}, {"max_color", run.max_color}, {"bound", bound}});
  }
  return report;
}

enum class AuditLevel { Basic, Full };

inline AuditLevel audit_level_from_string(std::string_view s) {
  if (s == "basic") return AuditLevel::Basic;
  if (s == "full") return AuditLevel::Full;
  throw std::invalid_argument("audit level must be 'basic' or 'full'");
}

/// Largest instance on which the full audit computes even-diameters.
inline constexpr std::size_t kFullAuditMaxVertices = 300;

struct AuditConfig {
  Algorithm algorithm = Algorithm::Layered;
  unsigned k = 0;
  PlanOverrides overrides;

  static AuditConfig of(const RunResult& r) { return {r.algorithm, r.k, r.overrides}; }
};

namespace detail {

struct EpochView {
  std::uint64_t n = 0;
  std::vector<const AuditEvent*> events;
};

inline std::vector<EpochView> split_epochs(const AuditTrace& trace, std::size_t n) {
  std::vector<EpochView> epochs;
  for (const auto& ev : trace.events()) {
    if (const auto* r = std::get_if<event::Restart>(&ev)) {
      epochs.push_back({r->n_guess, {}});
      continue;
    }
    if (epochs.empty()) epochs.push_back({n, {}});
    epochs.back().events.push_back(&ev);
  }
  return epochs;
}

inline std::vector<BaseIndex> sorted_vec(const std::set<BaseIndex>& s) { return {s.begin(), s.end()}; }

/// Distances from `root` in an undirected graph given as adjacency sets (1-based ids).
inline std::vector<std::size_t> bfs_hops(const std::vector<std::set<BaseIndex>>& adj, BaseIndex root) {
  std::vector<std::size_t> dist(adj.size() + 1, std::numeric_limits<std::size_t>::max());
  std::deque<BaseIndex> queue{root};
  dist[root] = 0;
  while (!queue.empty()) {
    BaseIndex x = queue.front();
    queue.pop_front();
    for (BaseIndex y : adj[x - 1]) {
      if (dist[y] == std::numeric_limits<std::size_t>::max()) {
        dist[y] = dist[x] + 1;
        queue.push_back(y);
      }
    }
  }
  return dist;
}

/// Check names: each is reported once per audit, failing on the first witness.
class CheckSet {
 public:
  explicit CheckSet(AuditReport& r) : report_(r) {}
  void fail(const std::string& name, std::string detail, nlohmann::json witness) {
    if (failed_.insert(name).second) report_.fail(name, std::move(detail), std::move(witness));
  }
  void finish(const std::string& name, const std::string& pass_detail) {
    if (!failed_.contains(name)) report_.pass(name, pass_detail);
  }
  bool failed(const std::string& name) const { return failed_.contains(name); }

 private:
  AuditReport& report_;
  std::set<std::string> failed_;
};

}  // namespace detail

/// Structural audit of a colorer trace.
///
/// basic: assign coverage, per-layer base budgets, layer-0 bases disjoint and
///        of size >= c (at most n / c of them), <= 6 bases per merge,
///        |Z| * (floor(delta) + 1) <= bases, merge balls match H+, Z entries
///        pairwise >= 3 apart in the final H+, frozen Y' sets stay frozen.
/// full:  additionally every layer-l base has even-diameter <= a_l
///        (skipped above kFullAuditMaxVertices vertices).
inline AuditReport verify_audit(const InstanceStream& stream, const AuditTrace& trace, const AuditConfig& config,
                                AuditLevel level = AuditLevel::Basic) {
  const std::size_t n = stream.n();
  OnlineGraph graph = OnlineGraph::replay(stream);
  const unsigned k = config.algorithm == Algorithm::Kierstead ? 0 : config.k;

  // Trace/stream consistency.
  auto require_vertex = [&](VertexId v) {
    if (v >= n) throw std::invalid_argument("trace/stream mismatch: vertex " + std::to_string(v) + " not in instance");
  };
  for (const auto& ev : trace.events()) {
    std::visit(
        [&](const auto& e) {
          using T = std::decay_t<decltype(e)>;
          if constexpr (std::is_same_v<T, event::BaseAdded>) {
            for (VertexId v : e.members) require_vertex(v);
          } else if constexpr (std::is_same_v<T, event::Restart>) {
            if (e.first_vertex > n) require_vertex(e.first_vertex);
          } else if constexpr (!std::is_same_v<T, event::Merge>) {
            require_vertex(e.vertex);
          }
        },
        ev);
  }

  AuditReport report;
  detail::CheckSet checks(report);

  // Every colored vertex is assigned exactly once, in arrival order.
  {
    std::size_t expected = 0;
    for (const auto& ev : trace.events()) {
      std::optional<VertexId> v;
      if (const auto* a = std::get_if<event::FfAssign>(&ev)) v = a->vertex;
      if (const auto* a = std::get_if<event::GcAssign>(&ev)) v = a->vertex;
      if (const auto* a = std::get_if<event::TerminalAssign>(&ev)) v = a->vertex;
      if (!v) continue;
      if (*v != expected) {
        checks.fail("assign-coverage", "assign events out of arrival order or repeated",
                    {{"vertex", *v}, {"expected", expected}});
        break;
      }
      ++expected;
    }
    checks.finish("assign-coverage", std::to_string(expected) + " vertices assigned once each");
  }

  if (config.algorithm == Algorithm::FirstFit) return report;

  std::size_t bases_seen = 0, merges_seen = 0;
  std::vector<std::vector<std::vector<VertexId>>> all_bases;  // flattened over epochs, by layer

  auto epochs = detail::split_epochs(trace, n);
  for (std::size_t ep = 0; ep < epochs.size(); ++ep) {
    const auto& epoch = epochs[ep];
    LayerPlan plan(epoch.n, k, config.overrides);
    const std::uint64_t delta_floor = plan.delta().floor();

    std::vector<std::vector<std::vector<VertexId>>> bases(k + 1);
    std::vector<std::vector<BaseIndex>> yprime_group(k, std::vector<BaseIndex>(n, 0));
    std::vector<std::vector<std::set<BaseIndex>>> hplus(k);
    std::vector<std::set<BaseIndex>> frozen(k);
    std::vector<std::vector<BaseIndex>> z(k);

    for (const AuditEvent* ev : epoch.events) {
      if (const auto* b = std::get_if<event::BaseAdded>(ev)) {
        if (b->layer > k) {
          checks.fail("base-budget", "base added at layer beyond k", {{"layer", b->layer}, {"index", b->index}});
          continue;
        }
        auto& layer_bases = bases[b->layer];
        if (b->index != layer_bases.size() + 1) {
          checks.fail("base-index", "base indices not consecutive",
                      {{"layer", b->layer}, {"index", b->index}, {"expected", layer_bases.size() + 1}});
        }
        layer_bases.push_back(b->members);
        if (b->layer < k) hplus[b->layer].emplace_back();
        if (layer_bases.size() > plan.base_budget(b->layer)) {
          checks.fail("base-budget",
                      "layer " + std::to_string(b->layer) + " exceeds ceil(r*) = " +
                          std::to_string(plan.base_budget(b->layer)),
                      {{"epoch", ep}, {"layer", b->layer}, {"count", layer_bases.size()},
                       {"budget", plan.base_budget(b->layer)}});
        }
        ++bases_seen;
      } else if (const auto* q = std::get_if<event::GroupQuery>(ev)) {
        if (q->layer >= k || q->step == QueryStep::Delegate) continue;
        unsigned l = q->layer;
        if (q->group == 0 || q->group > hplus[l].size()) {
          checks.fail("merge-ball", "group query for unknown group", {{"layer", l}, {"group", q->group}});
          continue;
        }
        if (frozen[l].contains(q->group)) {
          checks.fail("frozen-yprime", "vertex joined Y' of a group inside an earlier merge ball",
                      {{"epoch", ep}, {"layer", l}, {"vertex", q->vertex}, {"group", q->group}});
        }
        yprime_group[l][q->vertex] = q->group;
        for (VertexId u : graph.neighbors(q->vertex)) {
          BaseIndex j = yprime_group[l][u];
          if (j != 0 && j != q->group && u < q->vertex) {
            hplus[l][q->group - 1].insert(j);
            hplus[l][j - 1].insert(q->group);
          }
        }
      } else if (const auto* m = std::get_if<event::Merge>(ev)) {
        ++merges_seen;
        unsigned l = m->layer;
        if (l >= k || m->z == 0 || m->z > hplus[l].size()) {
          checks.fail("merge-ball", "merge at an invalid layer or group", {{"layer", l}, {"z", m->z}});
          continue;
        }
        if (m->bases_created.size() > 6) {
          checks.fail("merge-size", "merge created more than 6 bases",
                      {{"layer", l}, {"z", m->z}, {"bases_created", m->bases_created}});
        }
        for (BaseIndex b : m->bases_created) {
          if (b == 0 || b > bases[l + 1].size()) {
            checks.fail("merge-size", "merge lists a base that was never added",
                        {{"layer", l}, {"z", m->z}, {"base", b}});
          }
        }
        auto dist = detail::bfs_hops(hplus[l], m->z);
        std::vector<BaseIndex> d0, d1, d2;
        for (BaseIndex j = 1; j < dist.size(); ++j) {
          if (dist[j] == 0) d0.push_back(j);
          if (dist[j] == 1) d1.push_back(j);
          if (dist[j] == 2) d2.push_back(j);
        }
        if (d0 != m->d0 || d1 != m->d1 || d2 != m->d2) {
          checks.fail("merge-ball", "recorded balls differ from H+ rebuilt from the trace",
                      {{"layer", l}, {"z", m->z}, {"expected", {d0, d1, d2}}, {"recorded", {m->d0, m->d1, m->d2}}});
        }
        if (plan.delta().admits(d1.size())) {
          checks.fail("merge-ball", "merge triggered although deg(z) <= delta",
                      {{"layer", l}, {"z", m->z}, {"degree", d1.size()}});
        }
        for (const auto* ball : {&m->d0, &m->d1, &m->d2}) frozen[l].insert(ball->begin(), ball->end());
        z[l].push_back(m->z);
      }
    }

    // Layer-0 bases come from N(w) of vertices First-Fit could not color.
    {
      std::vector<char> seen(n, 0);
      for (std::size_t i = 0; i < bases[0].size(); ++i) {
        const auto& b = bases[0][i];
        if (b.size() < plan.ff_colors()) {
          checks.fail("layer0-size", "layer-0 base smaller than c = " + std::to_string(plan.ff_colors()),
                      {{"epoch", ep}, {"base", i + 1}, {"size", b.size()}});
        }
        for (VertexId v : b) {
          if (seen[v] != 0) {
            checks.fail("layer0-disjoint", "layer-0 bases overlap", {{"epoch", ep}, {"base", i + 1}, {"vertex", v}});
          }
          seen[v] = 1;
        }
      }
      if (bases[0].size() * plan.ff_colors() > epoch.n) {
        checks.fail("layer0-count", "more than n / c layer-0 bases",
                    {{"epoch", ep}, {"count", bases[0].size()}, {"c", plan.ff_colors()}, {"n", epoch.n}});
      }
    }

    for (unsigned l = 0; l < k; ++l) {
      if (z[l].size() * (delta_floor + 1) > bases[l].size()) {
        checks.fail("merge-count", "|Z| * (floor(delta) + 1) exceeds the number of groups",
                    {{"epoch", ep}, {"layer", l}, {"z", z[l].size()}, {"groups", bases[l].size()}});
      }
      if (bases[l + 1].size() > 6 * z[l].size()) {
        checks.fail("merge-count", "more inner bases than 6 |Z|",
                    {{"epoch", ep}, {"layer", l}, {"inner_bases", bases[l + 1].size()}, {"z", z[l].size()}});
      }
      for (std::size_t a = 0; a < z[l].size(); ++a) {
        auto dist = detail::bfs_hops(hplus[l], z[l][a]);
        for (std::size_t b = a + 1; b < z[l].size(); ++b) {
          if (dist[z[l][b]] < 3) {
            checks.fail("z-spacing", "merge roots closer than 3 in the final H+",
                        {{"epoch", ep}, {"layer", l}, {"pair", {z[l][a], z[l][b]}}, {"distance", dist[z[l][b]]}});
          }
        }
      }
    }

    if (all_bases.size() < bases.size()) all_bases.resize(bases.size());
    for (std::size_t l = 0; l < bases.size(); ++l) {
      for (auto& b : bases[l]) all_bases[l].push_back(std::move(b));
    }
  }

  const std::string counts = std::to_string(bases_seen) + " bases, " + std::to_string(merges_seen) + " merges";
  for (const char* name : {"base-index", "base-budget", "layer0-disjoint", "layer0-size", "layer0-count",
                           "merge-size", "merge-count", "merge-ball", "z-spacing", "frozen-yprime"}) {
    checks.finish(name, counts);
  }

  if (level == AuditLevel::Full) {
    if (n > kFullAuditMaxVertices) {
      report.skip("even-diameter", "instance has " + std::to_string(n) + " > " +
                                       std::to_string(kFullAuditMaxVertices) + " vertices");
    } else {
      std::size_t checked = 0;
      for (std::size_t l = 0; l < all_bases.size(); ++l) {
        std::uint64_t cap = diameter_cap(static_cast<unsigned>(l));
        for (std::size_t i = 0; i < all_bases[l].size(); ++i) {
          ++checked;
          if (all_bases[l][i].empty()) {
            checks.fail("even-diameter", "layer " + std::to_string(l) + " base is empty",
                        {{"layer", l}, {"base_position", i + 1}});
            continue;
          }
          auto w = even_diameter_witness(graph, all_bases[l][i]);
          if (!w.value.is_finite() || w.value.value() > cap) {
            checks.fail("even-diameter",
                        "layer " + std::to_string(l) + " base exceeds even-diameter cap " + std::to_string(cap),
                        {{"layer", l}, {"base_position", i + 1}, {"pair", {w.first, w.second}},
                         {"distance", w.value.to_string()}, {"cap", cap}});
          }
        }
      }
      checks.finish("even-diameter", std::to_string(checked) + " bases within their caps");
    }
  }
  return report;
}

// ---------------------------------------------------------------------------

inline constexpr std::size_t kBruteChromaticMaxVertices = 20;

/// Exact chromatic number by backtracking (vertices by decreasing degree,
/// each vertex tries colors up to one more than the largest used so far).
inline std::size_t brute_chromatic(const OnlineGraph& g) {
  const std::size_t n = g.size();
  if (n > kBruteChromaticMaxVertices) {
    throw std::length_error("brute_chromatic limited to " + std::to_string(kBruteChromaticMaxVertices) +
                            " vertices, got " + std::to_string(n));
  }
  if (n == 0) return 0;
  std::vector<VertexId> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<VertexId>(i);
  std::stable_sort(order.begin(), order.end(),
                   [&](VertexId a, VertexId b) { return g.neighbors(a).size() > g.neighbors(b).size(); });

  std::vector<int> color(n, -1);
  auto colorable = [&](int palette) {
    std::fill(color.begin(), color.end(), -1);
    auto dfs = [&](auto&& self, std::size_t pos, int used) -> bool {
      if (pos == n) return true;
      VertexId v = order[pos];
      for (int c = 0; c < std::min(palette, used + 1); ++c) {
        bool ok = true;
        for (VertexId u : g.neighbors(v)) {
          if (color[u] == c) {
            ok = false;
            break;
          }
        }
        if (!ok) continue;
        color[v] = c;
        if (self(self, pos + 1, std::max(used, c + 1))) return true;
        color[v] = -1;
      }
      return false;
    };
    return dfs(dfs, 0, 0);
  };
  for (int k = 1;; ++k) {
    if (colorable(k)) return static_cast<std::size_t>(k);
  }
}

}  // namespace oddcolor

#endif  // ODDCOLOR_VERIFY_HPP
