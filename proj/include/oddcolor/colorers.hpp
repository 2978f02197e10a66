#ifndef ODDCOLOR_COLORERS_HPP
#define ODDCOLOR_COLORERS_HPP

// Top-level online colorers.  Each one sees the graph grow one vertex at a
// time and must return a color for the newest vertex before the next arrives.
//
//   first-fit   smallest color unused by the vertex's neighbors
//   layered(k)  First-Fit restricted to colors 1..c; otherwise the vertex goes
//               to the layer-0 subroutine, through a base it touches or
//               through a new base N(v).  The chain below is k reducers and a
//               terminal solver (see subroutine.hpp).
//   kierstead   layered with k = 0
//
// The unknown-n wrapper guesses n, doubles the guess when it is exceeded and
// starts a fresh colorer on a disjoint palette for the remaining vertices.

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "oddcolor/audit.hpp"
#include "oddcolor/graph.hpp"
#include "oddcolor/layer_plan.hpp"
#include "oddcolor/subroutine.hpp"

namespace oddcolor {

enum class Algorithm { FirstFit, Kierstead, Layered };

inline const char* to_string(Algorithm a) {
  switch (a) {
    case Algorithm::FirstFit: return "first-fit";
    case Algorithm::Kierstead: return "kierstead";
    case Algorithm::Layered: return "layered";
  }
  return "?";
}

inline Algorithm algorithm_from_string(std::string_view s) {
  if (s == "first-fit" || s == "ff") return Algorithm::FirstFit;
  if (s == "kierstead") return Algorithm::Kierstead;
  if (s == "layered") return Algorithm::Layered;
  throw std::invalid_argument("unknown algorithm '" + std::string(s) + "'");
}

struct PromiseDiagnostic {
  std::optional<VertexId> vertex;
  std::optional<VertexId> conflicting_neighbor;
  std::string reason;

  friend bool operator==(const PromiseDiagnostic&, const PromiseDiagnostic&) = default;
};

struct RunResult {
  Algorithm algorithm = Algorithm::FirstFit;
  unsigned k = 0;
  std::size_t n = 0;
  Coloring coloring;
  std::size_t colors_used = 0;
  Color max_color = 0;
  AuditTrace audit;
  std::optional<PromiseDiagnostic> promise_violation;
  // Unknown-n wrapper only.
  bool unknown_n = false;
  std::vector<std::uint64_t> guesses;
  PlanOverrides overrides;

  bool complete() const { return !promise_violation && coloring.colored_prefix() == n; }
};

/// Smallest color in [lo, hi] not used by a neighbor of `v`.
inline std::optional<Color> first_fit_color(const OnlineGraph& g, const Coloring& coloring, VertexId v, Color lo,
                                            Color hi) {
  if (lo > hi) return std::nullopt;
  auto nb = g.neighbors(v);
  // At most deg(v) colors are blocked, so the answer is below lo + deg + 1.
  std::size_t width = std::min<std::size_t>(static_cast<std::size_t>(hi - lo) + 1, nb.size() + 1);
  std::vector<bool> blocked(width, false);
  for (VertexId u : nb) {
    Color c = coloring.color(u);
    if (c >= lo && c - lo < width) blocked[c - lo] = true;
  }
  for (std::size_t i = 0; i < width; ++i) {
    if (!blocked[i]) return static_cast<Color>(lo + i);
  }
  return std::nullopt;
}

/// First colored neighbor of `v` holding `color`, if any.
inline std::optional<VertexId> find_conflict(const OnlineGraph& g, const Coloring& coloring, VertexId v, Color color) {
  for (VertexId u : g.neighbors(v)) {
    if (coloring.color(u) == color) return u;
  }
  return std::nullopt;
}

class FirstFitColorer {
 public:
  explicit FirstFitColorer(SubroutineContext ctx) : ctx_(ctx) {}

  Color color(VertexId v) {
    Color c = *first_fit_color(*ctx_.graph, *ctx_.coloring, v, 1, std::numeric_limits<Color>::max());
    if (ctx_.trace) ctx_.trace->record(event::FfAssign{v, c});
    return c;
  }

 private:
  SubroutineContext ctx_;
};

class LayeredColorer {
 public:
  LayeredColorer(LayerPlan plan, SubroutineContext ctx, Color palette_base = 0)
      : plan_(std::move(plan)), ctx_(ctx), palette_base_(palette_base),
        chain_(make_subroutine_chain(plan_, ctx, palette_base)) {}

  Color color(VertexId v) {
    try {
      if (auto c = first_fit_color(*ctx_.graph, *ctx_.coloring, v, palette_base_ + 1,
                                   palette_base_ + plan_.ff_colors())) {
        if (ctx_.trace) ctx_.trace->record(event::FfAssign{v, *c});
        return *c;
      }
      if (auto b = chain_->lowest_adjacent_base(v)) return chain_->query(v, *b);
      auto nb = ctx_.graph->neighbors(v);
      BaseIndex fresh = chain_->add_base(std::vector<VertexId>(nb.begin(), nb.end()));
      return chain_->query(v, fresh);
    } catch (const PromiseViolation& pv) {
      throw pv.at_vertex(v);
    }
  }

  const LayerPlan& plan() const noexcept { return plan_; }
  const Subroutine& front() const noexcept { return *chain_; }

 private:
  LayerPlan plan_;
  SubroutineContext ctx_;
  Color palette_base_;
  std::unique_ptr<Subroutine> chain_;
};

namespace detail {

inline void finish(RunResult& r) {
  r.colors_used = r.coloring.colors_used();
  r.max_color = r.coloring.max_color();
}

/// Replays `stream`, asking `next_color(graph, coloring, trace, v)` for each vertex.
template <class NextColor>
void drive(const InstanceStream& stream, RunResult& result, NextColor&& next_color) {
  OnlineGraph graph;
  Coloring coloring;
  AuditTrace trace;
  for (const auto& e : stream.events()) {
    graph.reveal(e);
    try {
      Color c = next_color(graph, coloring, trace, e.vertex);
      if (auto u = find_conflict(graph, coloring, e.vertex, c)) {
        throw PromiseViolation(e.vertex, *u, "final check rejected color " + std::to_string(c));
      }
      coloring.assign(e.vertex, c);
    } catch (const PromiseViolation& pv) {
      result.promise_violation = PromiseDiagnostic{pv.vertex() ? pv.vertex() : e.vertex,
                                                   pv.conflicting_neighbor(), pv.reason()};
      break;
    }
  }
  result.coloring = std::move(coloring);
  result.audit = std::move(trace);
  finish(result);
}

}  // namespace detail

inline RunResult first_fit(const InstanceStream& stream) {
  RunResult result;
  result.algorithm = Algorithm::FirstFit;
  result.n = stream.n();
  std::unique_ptr<FirstFitColorer> colorer;
  detail::drive(stream, result, [&](const OnlineGraph& g, const Coloring& c, AuditTrace& t, VertexId v) {
    if (!colorer) colorer = std::make_unique<FirstFitColorer>(SubroutineContext{&g, &c, &t});
    return colorer->color(v);
  });
  return result;
}

/// k-layer colorer with n read from the stream.
inline RunResult layered_colorer(const InstanceStream& stream, unsigned k, PlanOverrides overrides = {}) {
  RunResult result;
  result.algorithm = Algorithm::Layered;
  result.k = k;
  result.n = stream.n();
  result.overrides = overrides;
  LayerPlan plan(stream.n(), k, overrides);
  std::unique_ptr<LayeredColorer> colorer;
  detail::drive(stream, result, [&](const OnlineGraph& g, const Coloring& c, AuditTrace& t, VertexId v) {
    if (!colorer) colorer = std::make_unique<LayeredColorer>(plan, SubroutineContext{&g, &c, &t});
    return colorer->color(v);
  });
  return result;
}

/// First-Fit on ceil(sqrt n) colors, then one color per base N(w).
inline RunResult kierstead(const InstanceStream& stream) {
  RunResult result = layered_colorer(stream, 0);
  result.algorithm = Algorithm::Kierstead;
  return result;
}

/// Runs the k-layer colorer without reading n from the stream: guesses
/// initial_guess, 2 * initial_guess, ...  Each guess gets a fresh colorer on
/// its own palette block after the previous blocks.
inline RunResult unknown_n_wrapper(const InstanceStream& stream, unsigned k, std::uint64_t initial_guess = 4,
                                   Algorithm algorithm = Algorithm::Layered) {
  if (initial_guess == 0) throw std::invalid_argument("initial guess must be positive");
  if (algorithm == Algorithm::FirstFit) throw std::invalid_argument("first-fit does not need n");
  RunResult result;
  result.algorithm = algorithm;
  result.k = algorithm == Algorithm::Kierstead ? 0 : k;
  result.n = stream.n();
  result.unknown_n = true;

  std::unique_ptr<LayeredColorer> colorer;
  std::uint64_t guess = initial_guess;
  Color palette_base = 0;
  detail::drive(stream, result, [&](const OnlineGraph& g, const Coloring& c, AuditTrace& t, VertexId v) {
    if (!colorer || v + std::uint64_t{1} > guess) {
      if (colorer) {
        palette_base += colorer->plan().palette_size();
        guess *= 2;
      }
      result.guesses.push_back(guess);
      t.record(event::Restart{static_cast<std::uint32_t>(result.guesses.size() - 1), guess, v});
      colorer = std::make_unique<LayeredColorer>(LayerPlan(guess, result.k), SubroutineContext{&g, &c, &t},
                                                 palette_base);
    }
    return colorer->color(v);
  });
  return result;
}

/// Worst-case color count for a run: color_budget(k, n), or the sum over all
/// guesses for the unknown-n wrapper.  Not defined for first-fit.
inline std::optional<std::uint64_t> run_budget(const RunResult& r) {
  if (r.algorithm == Algorithm::FirstFit || r.overrides.any()) return std::nullopt;
  if (r.unknown_n) {
    std::uint64_t total = 0;
    for (auto g : r.guesses) total += color_budget(r.k, g);
    return total;
  }
  return color_budget(r.k, r.n);
}

// ---------------------------------------------------------------------------
// JSON form of a run (the audit trace is written separately as JSON lines).

inline nlohmann::json to_json(const RunResult& r) {
  nlohmann::json j;
  j["algorithm"] = to_string(r.algorithm);
  j["k"] = r.k;
  j["n"] = r.n;
  j["colors_used"] = r.colors_used;
  j["max_color"] = r.max_color;
  std::vector<Color> assignment(r.coloring.assignment().begin(),
                                r.coloring.assignment().begin() +
                                    static_cast<std::ptrdiff_t>(r.coloring.colored_prefix()));
  j["assignment"] = assignment;
  if (r.promise_violation) {
    const auto& pv = *r.promise_violation;
    j["promise_violation"] = {
        {"vertex", pv.vertex ? nlohmann::json(*pv.vertex) : nlohmann::json(nullptr)},
        {"conflicting_neighbor",
         pv.conflicting_neighbor ? nlohmann::json(*pv.conflicting_neighbor) : nlohmann::json(nullptr)},
        {"reason", pv.reason}};
  } else {
    j["promise_violation"] = nullptr;
  }
  if (r.unknown_n) {
    j["unknown_n"] = true;
    j["guesses"] = r.guesses;
  }
  if (r.overrides.ff_colors) j["ff_colors"] = *r.overrides.ff_colors;
  if (r.overrides.delta) j["delta"] = *r.overrides.delta;
  return j;
}

inline RunResult run_result_from_json(const nlohmann::json& j) {
  RunResult r;
  r.algorithm = algorithm_from_string(j.at("algorithm").get<std::string>());
  r.k = j.at("k");
  r.n = j.at("n");
  r.coloring = Coloring(j.at("assignment").get<std::vector<Color>>());
  r.colors_used = j.at("colors_used");
  r.max_color = j.at("max_color");
  if (const auto& pv = j.at("promise_violation"); !pv.is_null()) {
    PromiseDiagnostic d;
    if (!pv.at("vertex").is_null()) d.vertex = pv.at("vertex").get<VertexId>();
    if (!pv.at("conflicting_neighbor").is_null()) d.conflicting_neighbor = pv.at("conflicting_neighbor").get<VertexId>();
    d.reason = pv.value("reason", "");
    r.promise_violation = d;
  }
  r.unknown_n = j.value("unknown_n", false);
  if (j.contains("guesses")) r.guesses = j.at("guesses").get<std::vector<std::uint64_t>>();
  if (j.contains("ff_colors")) r.overrides.ff_colors = j.at("ff_colors").get<std::uint64_t>();
  if (j.contains("delta")) r.overrides.delta = j.at("delta").get<std::uint64_t>();
  return r;
}

}  // namespace oddcolor

#endif  // ODDCOLOR_COLORERS_HPP
