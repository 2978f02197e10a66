#ifndef ODDCOLOR_PARITY_HPP
#define ODDCOLOR_PARITY_HPP

// Even-distance, even-diameter and odd girth.
//
// The production path is breadth-first search in the bipartite double cover:
// state (v, p) means "a walk reached v with length parity p".  A shortest even
// walk s -> t is a shortest path (s,0) -> (t,0); a shortest odd closed walk
// through v is a shortest path (v,0) -> (v,1).
//
// The oracle_* functions are an independent check for small graphs: they
// enumerate the set of vertices reachable by walks of every exact length.

#include <bit>
#include <cstdint>
#include <deque>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "oddcolor/graph.hpp"

namespace oddcolor {

/// Non-negative length or +infinity.  `Tag` keeps even distances and odd
/// girths from being mixed up.
template <class Tag>
class ExtendedLength {
 public:
  constexpr ExtendedLength() = default;  // infinity
  static constexpr ExtendedLength infinity() { return {}; }
  static constexpr ExtendedLength of(std::size_t v) {
    ExtendedLength d;
    d.value_ = v;
    return d;
  }

  constexpr bool is_finite() const noexcept { return value_ != kInf; }
  constexpr std::size_t value() const {
    if (!is_finite()) throw std::logic_error("value() of infinite length");
    return value_;
  }
  /// Raw value with infinity as the largest size_t; convenient for min/max.
  constexpr std::size_t raw() const noexcept { return value_; }

  std::string to_string() const { return is_finite() ? std::to_string(value_) : "inf"; }

  friend constexpr auto operator<=>(const ExtendedLength&, const ExtendedLength&) = default;

 private:
  static constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max();
  std::size_t value_ = kInf;
};

struct EvenWalkTag {};
struct OddGirthTag {};
using ParityDistance = ExtendedLength<EvenWalkTag>;
using OddGirth = ExtendedLength<OddGirthTag>;

namespace detail {

inline constexpr std::uint32_t kUnreached = std::numeric_limits<std::uint32_t>::max();

/// BFS over (vertex, parity) states from (source, even).  Index 2v + p.
/// Stops early once `stop_state` is settled, if given.
inline std::vector<std::uint32_t> parity_bfs(const OnlineGraph& g, VertexId source,
                                             std::optional<std::size_t> stop_state = {}) {
  std::vector<std::uint32_t> dist(2 * g.size(), kUnreached);
  std::deque<std::size_t> queue;
  dist[2 * static_cast<std::size_t>(source)] = 0;
  queue.push_back(2 * static_cast<std::size_t>(source));
  while (!queue.empty()) {
    std::size_t state = queue.front();
    queue.pop_front();
    if (stop_state && state == *stop_state) break;
    auto v = static_cast<VertexId>(state / 2);
    std::size_t flipped = (state & 1) ^ 1;
    for (VertexId u : g.neighbors(v)) {
      std::size_t next = 2 * static_cast<std::size_t>(u) + flipped;
      if (dist[next] == kUnreached) {
        dist[next] = dist[state] + 1;
        queue.push_back(next);
      }
    }
  }
  return dist;
}

inline void require_vertex(const OnlineGraph& g, VertexId v) {
  if (!g.contains(v)) throw GraphError("unknown vertex " + std::to_string(v));
}

}  // namespace detail

/// Even-distances from `source` to every vertex.
inline std::vector<ParityDistance> even_distances_from(const OnlineGraph& g, VertexId source) {
  detail::require_vertex(g, source);
  auto dist = detail::parity_bfs(g, source);
  std::vector<ParityDistance> out(g.size());
  for (std::size_t v = 0; v < g.size(); ++v) {
    if (dist[2 * v] != detail::kUnreached) out[v] = ParityDistance::of(dist[2 * v]);
  }
  return out;
}

inline ParityDistance even_distance(const OnlineGraph& g, VertexId s, VertexId t) {
  detail::require_vertex(g, s);
  detail::require_vertex(g, t);
  if (s == t) return ParityDistance::of(0);
  auto dist = detail::parity_bfs(g, s, 2 * static_cast<std::size_t>(t));
  auto d = dist[2 * static_cast<std::size_t>(t)];
  return d == detail::kUnreached ? ParityDistance::infinity() : ParityDistance::of(d);
}

struct EvenDiameter {
  ParityDistance value;
  VertexId first = 0;   // a pair attaining `value`
  VertexId second = 0;
};

/// Maximum even-distance over pairs of `members` (walks may leave the set).
/// A singleton has even-diameter 0.
inline EvenDiameter even_diameter_witness(const OnlineGraph& g, std::span<const VertexId> members) {
  if (members.empty()) throw std::invalid_argument("even-diameter of an empty set");
  EvenDiameter best{ParityDistance::of(0), members.front(), members.front()};
  for (std::size_t i = 0; i < members.size(); ++i) {
    detail::require_vertex(g, members[i]);
    auto dist = detail::parity_bfs(g, members[i]);
    for (std::size_t j = i + 1; j < members.size(); ++j) {
      auto raw = dist[2 * static_cast<std::size_t>(members[j])];
      auto d = raw == detail::kUnreached ? ParityDistance::infinity() : ParityDistance::of(raw);
      if (d > best.value) best = {d, members[i], members[j]};
    }
    if (!best.value.is_finite()) break;
  }
  return best;
}

inline ParityDistance even_diameter(const OnlineGraph& g, std::span<const VertexId> members) {
  return even_diameter_witness(g, members).value;
}

/// Length of the shortest odd cycle; infinity iff the graph is bipartite.
inline OddGirth odd_girth(const OnlineGraph& g) {
  std::size_t best = std::numeric_limits<std::size_t>::max();
  for (std::size_t v = 0; v < g.size(); ++v) {
    auto dist = detail::parity_bfs(g, static_cast<VertexId>(v), 2 * v + 1);
    if (dist[2 * v + 1] != detail::kUnreached) best = std::min<std::size_t>(best, dist[2 * v + 1]);
    if (best == 3) break;
  }
  return best == std::numeric_limits<std::size_t>::max() ? OddGirth::infinity() : OddGirth::of(best);
}

/// Plain BFS 2-coloring test.
inline bool is_bipartite(const OnlineGraph& g) {
  std::vector<int> side(g.size(), -1);
  std::deque<VertexId> queue;
  for (std::size_t s = 0; s < g.size(); ++s) {
    if (side[s] != -1) continue;
    side[s] = 0;
    queue.push_back(static_cast<VertexId>(s));
    while (!queue.empty()) {
      VertexId v = queue.front();
      queue.pop_front();
      for (VertexId u : g.neighbors(v)) {
        if (side[u] == -1) {
          side[u] = 1 - side[v];
          queue.push_back(u);
        } else if (side[u] == side[v]) {
          return false;
        }
      }
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Walk-reachability oracles (n <= 64).

inline constexpr std::size_t kOracleMaxVertices = 64;

namespace detail {

inline std::vector<std::uint64_t> adjacency_masks(const OnlineGraph& g) {
  if (g.size() > kOracleMaxVertices) {
    throw std::length_error("walk oracle limited to " + std::to_string(kOracleMaxVertices) + " vertices, got " +
                            std::to_string(g.size()));
  }
  std::vector<std::uint64_t> masks(g.size(), 0);
  for (std::size_t v = 0; v < g.size(); ++v) {
    for (VertexId u : g.neighbors(static_cast<VertexId>(v))) masks[v] |= std::uint64_t{1} << u;
  }
  return masks;
}

inline std::uint64_t step(const std::vector<std::uint64_t>& masks, std::uint64_t frontier) {
  std::uint64_t next = 0;
  while (frontier != 0) {
    int v = std::countr_zero(frontier);
    frontier &= frontier - 1;
    next |= masks[static_cast<std::size_t>(v)];
  }
  return next;
}

}  // namespace detail

/// Smallest even length L <= 2n such that some walk of exactly L edges joins s and t.
inline ParityDistance oracle_even_distance(const OnlineGraph& g, VertexId s, VertexId t) {
  auto masks = detail::adjacency_masks(g);
  detail::require_vertex(g, s);
  detail::require_vertex(g, t);
  std::uint64_t reach = std::uint64_t{1} << s;  // walks of length 0
  for (std::size_t len = 0; len <= 2 * g.size(); ++len) {
    if (len % 2 == 0 && (reach >> t & 1u)) return ParityDistance::of(len);
    reach = detail::step(masks, reach);
  }
  return ParityDistance::infinity();
}

/// Smallest odd length L <= 2n of a closed walk.
inline OddGirth oracle_odd_girth(const OnlineGraph& g) {
  auto masks = detail::adjacency_masks(g);
  std::size_t best = std::numeric_limits<std::size_t>::max();
  for (std::size_t v = 0; v < g.size(); ++v) {
    std::uint64_t reach = std::uint64_t{1} << v;
    for (std::size_t len = 0; len <= 2 * g.size() && len < best; ++len) {
      if (len % 2 == 1 && (reach >> v & 1u)) {
        best = len;
        break;
      }
      reach = detail::step(masks, reach);
    }
  }
  return best == std::numeric_limits<std::size_t>::max() ? OddGirth::infinity() : OddGirth::of(best);
}

}  // namespace oddcolor

#endif  // ODDCOLOR_PARITY_HPP
