#ifndef ODDCOLOR_SUBROUTINE_HPP
#define ODDCOLOR_SUBROUTINE_HPP

// The (r*, d*)-subroutine: a coloring sub-problem that receives
//   - base additions: a frozen vertex set of even-diameter <= d*, at most
//     ceil(r*) of them in total, and
//   - coloring queries: a vertex adjacent to some member of a named base,
//     which joins that base's group and must be colored immediately.
//
// TerminalSubroutine colors group i with color i; this is proper whenever the
// odd girth exceeds d* + 3.
//
// ReducerSubroutine hands vertices to an inner subroutine whenever they touch
// an inner base, otherwise colors them with online group coloring over the
// subsets Y'_i.  When a group's degree in H+ (adjacency between the Y'_i)
// exceeds delta, the radius-0/1/2 balls around it are merged into up to six
// inner bases of even-diameter <= 5 d* + 14.
//
// Every emitted color is checked against the already-colored neighbors; an
// input that breaks the odd-girth promise produces PromiseViolation instead
// of an improper coloring.

#include <algorithm>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "oddcolor/audit.hpp"
#include "oddcolor/graph.hpp"
#include "oddcolor/group_coloring.hpp"
#include "oddcolor/layer_plan.hpp"

namespace oddcolor {

/// The input broke a promise the algorithm relies on (odd girth too small,
/// or a base budget exhausted as a consequence).
class PromiseViolation : public std::runtime_error {
 public:
  PromiseViolation(std::optional<VertexId> vertex, std::optional<VertexId> conflicting_neighbor,
                   const std::string& reason)
      : std::runtime_error(describe(vertex, conflicting_neighbor, reason)),
        vertex_(vertex),
        conflicting_neighbor_(conflicting_neighbor),
        reason_(reason) {}

  std::optional<VertexId> vertex() const noexcept { return vertex_; }
  std::optional<VertexId> conflicting_neighbor() const noexcept { return conflicting_neighbor_; }
  const std::string& reason() const noexcept { return reason_; }

  PromiseViolation at_vertex(VertexId v) const {
    return PromiseViolation(vertex_ ? vertex_ : v, conflicting_neighbor_, reason_);
  }

 private:
  static std::string describe(std::optional<VertexId> v, std::optional<VertexId> u, const std::string& reason) {
    std::string s = "promise violation";
    if (v) s += " at vertex " + std::to_string(*v);
    if (u) s += " (conflicting neighbor " + std::to_string(*u) + ")";
    return s + ": " + reason;
  }

  std::optional<VertexId> vertex_;
  std::optional<VertexId> conflicting_neighbor_;
  std::string reason_;
};

class BudgetViolation : public PromiseViolation {
 public:
  BudgetViolation(unsigned layer, std::uint64_t budget)
      : PromiseViolation(std::nullopt, std::nullopt,
                         "layer " + std::to_string(layer) + " would exceed its budget of " + std::to_string(budget) +
                             " bases") {}
};

/// Shared, non-owning view of the run a subroutine chain belongs to.
struct SubroutineContext {
  const OnlineGraph* graph = nullptr;
  const Coloring* coloring = nullptr;
  AuditTrace* trace = nullptr;  // optional
};

struct SubroutineConfig {
  unsigned layer = 0;
  std::uint64_t base_budget = 0;  // ceil(r*)
  std::uint64_t d_star = 2;
  Color palette_offset = 0;       // terminal colors are offset + base index
};

namespace detail {

inline bool sorted_intersect(std::span<const VertexId> a, std::span<const VertexId> b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      return true;
    }
  }
  return false;
}

}  // namespace detail

class Subroutine {
 public:
  Subroutine(SubroutineConfig config, SubroutineContext ctx) : config_(config), ctx_(ctx) {
    if (config.d_star < 2 || config.d_star % 2 != 0) throw std::invalid_argument("d* must be even and >= 2");
    if (ctx.graph == nullptr || ctx.coloring == nullptr) throw std::invalid_argument("subroutine needs a graph and a coloring");
  }
  virtual ~Subroutine() = default;
  Subroutine(const Subroutine&) = delete;
  Subroutine& operator=(const Subroutine&) = delete;

  /// Stores a frozen copy of `members` as the next base and returns its
  /// 1-based index.  The even-diameter promise is audited offline.
  BaseIndex add_base(std::vector<VertexId> members) {
    if (members.empty()) throw std::invalid_argument("bases must be non-empty");
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    for (VertexId v : members) {
      if (!graph().contains(v)) throw GraphError("base member " + std::to_string(v) + " is not revealed");
    }
    if (bases_.size() + 1 > config_.base_budget) throw BudgetViolation(config_.layer, config_.base_budget);

    auto index = static_cast<BaseIndex>(bases_.size() + 1);
    for (VertexId v : members) {
      if (v >= bases_of_vertex_.size()) bases_of_vertex_.resize(v + 1);
      bases_of_vertex_[v].push_back(index);
    }
    record(event::BaseAdded{config_.layer, index, members});
    bases_.push_back(std::move(members));
    on_base_added(index);
    return index;
  }

  /// Colors `v` as a member of the group of `base`.
  virtual Color query(VertexId v, BaseIndex base) = 0;

  /// Smallest base index with a member adjacent to `v`.
  std::optional<BaseIndex> lowest_adjacent_base(VertexId v) const {
    std::optional<BaseIndex> best;
    for (VertexId u : graph().neighbors(v)) {
      if (u < bases_of_vertex_.size() && !bases_of_vertex_[u].empty()) {
        BaseIndex b = bases_of_vertex_[u].front();
        if (!best || b < *best) best = b;
      }
    }
    return best;
  }

  bool adjacent_to_base(VertexId v, BaseIndex base) const {
    return detail::sorted_intersect(graph().neighbors(v), this->base(base));
  }

  std::size_t base_count() const noexcept { return bases_.size(); }
  const std::vector<VertexId>& base(BaseIndex i) const {
    if (i == 0 || i > bases_.size()) throw std::out_of_range("no base " + std::to_string(i));
    return bases_[i - 1];
  }
  const SubroutineConfig& config() const noexcept { return config_; }
  unsigned layer() const noexcept { return config_.layer; }

  virtual const Subroutine* inner() const noexcept { return nullptr; }

 protected:
  virtual void on_base_added(BaseIndex) {}

  const OnlineGraph& graph() const { return *ctx_.graph; }
  const Coloring& coloring() const { return *ctx_.coloring; }

  void record(AuditEvent e) const {
    if (ctx_.trace != nullptr) ctx_.trace->record(std::move(e));
  }

  void require_query(VertexId v, BaseIndex base) const {
    if (!graph().contains(v)) throw GraphError("query for unrevealed vertex " + std::to_string(v));
    if (!adjacent_to_base(v, base)) {
      throw std::logic_error("vertex " + std::to_string(v) + " is not adjacent to base " + std::to_string(base) +
                             " of layer " + std::to_string(config_.layer));
    }
  }

  /// Inline final check: `color` must differ from every colored neighbor.
  void check_proper(VertexId v, Color color) const {
    for (VertexId u : graph().neighbors(v)) {
      if (coloring().color(u) == color) {
        throw PromiseViolation(v, u,
                               "color " + std::to_string(color) + " already used by a neighbor (layer " +
                                   std::to_string(config_.layer) + ")");
      }
    }
  }

 private:
  SubroutineConfig config_;
  SubroutineContext ctx_;
  std::vector<std::vector<VertexId>> bases_;
  std::vector<std::vector<BaseIndex>> bases_of_vertex_;
};

class TerminalSubroutine final : public Subroutine {
 public:
  using Subroutine::Subroutine;

  Color query(VertexId v, BaseIndex base) override {
    require_query(v, base);
    Color color = config().palette_offset + base;
    check_proper(v, color);
    groups_[base - 1].push_back(v);
    record(event::TerminalAssign{layer(), v, base, color});
    return color;
  }

  /// Y_i: vertices colored through base i.
  const std::vector<VertexId>& group(BaseIndex i) const { return groups_.at(i - 1); }

 protected:
  void on_base_added(BaseIndex) override { groups_.emplace_back(); }

 private:
  std::vector<std::vector<VertexId>> groups_;
};

struct ReducerParams {
  RootPower delta = RootPower::constant(0);
  Color gc_offset = 0;
  Color gc_block = 2;
};

class ReducerSubroutine final : public Subroutine {
 public:
  ReducerSubroutine(SubroutineConfig config, SubroutineContext ctx, ReducerParams params,
                    std::unique_ptr<Subroutine> inner)
      : Subroutine(config, ctx),
        params_(params),
        gc_(params.delta.value()),
        inner_(std::move(inner)) {
    if (!inner_) throw std::invalid_argument("reducer needs an inner subroutine");
    if (inner_->config().d_star < 5 * config.d_star + 14) {
      throw std::invalid_argument("inner subroutine's d* is below 5 d* + 14");
    }
  }

  Color query(VertexId v, BaseIndex group) override {
    require_query(v, group);

    // The inner subroutine takes every vertex touching one of its bases.
    if (auto b = inner_->lowest_adjacent_base(v)) {
      record(event::GroupQuery{layer(), v, group, QueryStep::Delegate});
      return inner_->query(v, *b);
    }

    // Join Y'_group and update H+.
    auto nb = graph().neighbors(v);
    for (VertexId u : nb) {
      if (yprime_group_of(u) == group) {
        throw PromiseViolation(v, u, "edge inside group " + std::to_string(group) + " of layer " +
                                         std::to_string(layer()));
      }
    }
    yprime_[group - 1].push_back(v);
    if (v >= yprime_group_.size()) yprime_group_.resize(v + 1, 0);
    yprime_group_[v] = group;
    for (VertexId u : nb) {
      if (BaseIndex j = yprime_group_of(u); j != 0) {
        hplus_[group - 1].insert(j);
        hplus_[j - 1].insert(group);
      }
    }

    if (params_.delta.admits(hplus_[group - 1].size())) {
      record(event::GroupQuery{layer(), v, group, QueryStep::GroupColor});
      return group_color(v, group);
    }

    // Merge the radius-0/1/2 balls into inner bases.
    record(event::GroupQuery{layer(), v, group, QueryStep::Merge});
    auto [d0, d1, d2] = balls(group);
    z_.push_back(group);
    std::vector<BaseIndex> created;
    for (const auto* ball : {&d0, &d1, &d2}) {
      if (ball->empty()) continue;
      std::vector<VertexId> xs, ys;
      for (BaseIndex j : *ball) {
        const auto& x = base(j);
        xs.insert(xs.end(), x.begin(), x.end());
        ys.insert(ys.end(), yprime_[j - 1].begin(), yprime_[j - 1].end());
      }
      created.push_back(inner_->add_base(std::move(xs)));
      if (!ys.empty()) created.push_back(inner_->add_base(std::move(ys)));
    }
    record(event::Merge{layer(), group, d0, d1, d2, created});

    auto b = inner_->lowest_adjacent_base(v);
    if (!b) throw std::logic_error("merged base does not cover the merging vertex");
    return inner_->query(v, *b);
  }

  const Subroutine* inner() const noexcept override { return inner_.get(); }
  const GroupColoring& group_coloring() const noexcept { return gc_; }
  const std::vector<BaseIndex>& merge_roots() const noexcept { return z_; }
  const std::vector<VertexId>& yprime(BaseIndex group) const { return yprime_.at(group - 1); }
  const std::set<BaseIndex>& hplus_neighbors(BaseIndex group) const { return hplus_.at(group - 1); }

 protected:
  void on_base_added(BaseIndex) override {
    yprime_.emplace_back();
    hplus_.emplace_back();
  }

 private:
  BaseIndex yprime_group_of(VertexId u) const { return u < yprime_group_.size() ? yprime_group_[u] : 0; }

  Color group_color(VertexId v, BaseIndex group) {
    std::vector<GroupId> adjacent;
    for (VertexId u : graph().neighbors(v)) {
      if (u < gc_group_.size() && gc_group_[u] != 0) adjacent.push_back(gc_group_[u]);
    }
    std::sort(adjacent.begin(), adjacent.end());
    adjacent.erase(std::unique(adjacent.begin(), adjacent.end()), adjacent.end());

    Color local = gc_.color_vertex(group, adjacent);
    if (local > params_.gc_block) {
      throw std::logic_error("group coloring exceeded its palette block at layer " + std::to_string(layer()));
    }
    Color color = params_.gc_offset + local;
    check_proper(v, color);
    if (v >= gc_group_.size()) gc_group_.resize(v + 1, 0);
    gc_group_[v] = group;
    record(event::GcAssign{layer(), v, group, local, color});
    return color;
  }

  struct Balls {
    std::vector<BaseIndex> d0, d1, d2;
  };

  Balls balls(BaseIndex root) const {
    Balls out;
    out.d0 = {root};
    out.d1.assign(hplus_[root - 1].begin(), hplus_[root - 1].end());
    std::set<BaseIndex> second;
    for (BaseIndex j : out.d1) {
      for (BaseIndex w : hplus_[j - 1]) {
        if (w != root && !hplus_[root - 1].contains(w)) second.insert(w);
      }
    }
    out.d2.assign(second.begin(), second.end());
    return out;
  }

  ReducerParams params_;
  GroupColoring gc_;
  std::unique_ptr<Subroutine> inner_;
  std::vector<std::vector<VertexId>> yprime_;   // by group
  std::vector<BaseIndex> yprime_group_;         // vertex -> group of Y' membership, 0 if none
  std::vector<BaseIndex> gc_group_;             // vertex -> group, only for group-colored vertices
  std::vector<std::set<BaseIndex>> hplus_;      // by group
  std::vector<BaseIndex> z_;
};

/// Builds the chain layer 0 -> ... -> layer k (k reducers, then a terminal).
inline std::unique_ptr<Subroutine> make_subroutine_chain(const LayerPlan& plan, SubroutineContext ctx,
                                                         Color palette_base = 0) {
  std::unique_ptr<Subroutine> chain = std::make_unique<TerminalSubroutine>(
      SubroutineConfig{plan.k(), plan.base_budget(plan.k()), plan.d_star(plan.k()),
                       palette_base + plan.terminal_offset()},
      ctx);
  for (unsigned l = plan.k(); l-- > 0;) {
    SubroutineConfig cfg{l, plan.base_budget(l), plan.d_star(l), 0};
    ReducerParams params{plan.delta(), palette_base + plan.gc_offset(l), plan.gc_block()};
    chain = std::make_unique<ReducerSubroutine>(cfg, ctx, params, std::move(chain));
  }
  return chain;
}

}  // namespace oddcolor

#endif  // ODDCOLOR_SUBROUTINE_HPP
