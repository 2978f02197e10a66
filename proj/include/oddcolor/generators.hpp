#ifndef ODDCOLOR_GENERATORS_HPP
#define ODDCOLOR_GENERATORS_HPP

// Deterministic instance generators.
//
// Randomness comes from std::mt19937_64 (its output sequence is fixed by the
// C++ standard), consumed through two fixed mappings so that output does not
// depend on the standard library's distribution implementations:
//   uniform [0,1):   (x >> 11) * 2^-53
//   index in [0,b):  x % b
// Seed 0 passed to `reorder` means "keep the given order".

#include <cstdint>
#include <charconv>
#include <locale>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "oddcolor/graph.hpp"

namespace oddcolor {

class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  std::uint64_t below(std::uint64_t bound) { return next() % bound; }

 private:
  std::mt19937_64 engine_;
};

/// Bipartite adversary a_1, b_1, ..., a_m, b_m: a_i ~ b_j and b_i ~ a_j for
/// j < i.  First-Fit gives a_i and b_i color i.
inline InstanceStream gen_ff_adversary(std::size_t m) {
  if (m < 1) throw std::invalid_argument("ff-adversary needs m >= 1");
  std::vector<std::vector<VertexId>> back(2 * m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      back[2 * i].push_back(static_cast<VertexId>(2 * j + 1));  // a_i -- b_j
      back[2 * i + 1].push_back(static_cast<VertexId>(2 * j));  // b_i -- a_j
    }
  }
  return InstanceStream::from_back_edges(std::move(back));
}

/// Cycle C_g in cycle order; the last vertex closes the cycle.
inline InstanceStream gen_odd_cycle(std::size_t g) {
  if (g < 3 || g % 2 == 0) throw std::invalid_argument("odd-cycle needs odd g >= 3");
  std::vector<std::vector<VertexId>> back(g);
  for (std::size_t v = 1; v < g; ++v) back[v].push_back(static_cast<VertexId>(v - 1));
  back[g - 1].insert(back[g - 1].begin(), 0);
  return InstanceStream::from_back_edges(std::move(back));
}

/// K_m with every edge replaced by a path of t edges (t odd).  Branch
/// vertices arrive first, then the interiors of each path in lexicographic
/// pair order.  Girth and odd girth are both 3t.
inline InstanceStream gen_subdivided_clique(std::size_t m, std::size_t t) {
  if (m < 3) throw std::invalid_argument("subdivided-clique needs m >= 3");
  if (t < 1 || t % 2 == 0) throw std::invalid_argument("subdivided-clique needs odd t >= 1");
  std::size_t n = m + (t - 1) * m * (m - 1) / 2;
  std::vector<std::vector<VertexId>> back(m);
  back.reserve(n);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a + 1; b < m; ++b) {
      if (t == 1) {
        back[b].push_back(static_cast<VertexId>(a));
        continue;
      }
      auto prev = static_cast<VertexId>(a);
      for (std::size_t s = 1; s < t; ++s) {
        std::vector<VertexId> nb{prev};
        if (s == t - 1) nb.push_back(static_cast<VertexId>(b));
        prev = static_cast<VertexId>(back.size());
        back.push_back(std::move(nb));
      }
    }
  }
  return InstanceStream::from_back_edges(std::move(back));
}

/// Vertices alternate between two sides; each cross pair {i, j} (i < j) is an
/// edge with probability p.  Pairs are drawn in order of j, then i.
inline InstanceStream gen_random_bipartite(std::size_t n, double p, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("random-bipartite needs n >= 1");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("random-bipartite needs 0 <= p <= 1");
  SeededRng rng(seed);
  std::vector<std::vector<VertexId>> back(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      if (i % 2 == j % 2) continue;
      if (rng.uniform01() < p) back[j].push_back(static_cast<VertexId>(i));
    }
  }
  return InstanceStream::from_back_edges(std::move(back));
}

/// Erdos-Renyi G(n, p) with the same pair order; used by property tests.
inline InstanceStream gen_random_graph(std::size_t n, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("random graph needs 0 <= p <= 1");
  SeededRng rng(seed);
  std::vector<std::vector<VertexId>> back(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      if (rng.uniform01() < p) back[j].push_back(static_cast<VertexId>(i));
    }
  }
  return InstanceStream::from_back_edges(std::move(back));
}

/// Seeded Fisher-Yates permutation of `n` positions; seed 0 is the identity.
/// order[p] is the old vertex that arrives at position p.
inline std::vector<VertexId> arrival_permutation(std::size_t n, std::uint64_t seed) {
  std::vector<VertexId> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<VertexId>(i);
  if (seed == 0 || n < 2) return order;
  SeededRng rng(seed);
  for (std::size_t i = n - 1; i > 0; --i) std::swap(order[i], order[rng.below(i + 1)]);
  return order;
}

/// Same graph, new arrival order; ids are relabeled to arrival positions.
inline InstanceStream reorder(const InstanceStream& stream, std::uint64_t seed) {
  auto order = arrival_permutation(stream.n(), seed);
  std::vector<VertexId> position(stream.n());
  for (std::size_t p = 0; p < order.size(); ++p) position[order[p]] = static_cast<VertexId>(p);

  OnlineGraph g = OnlineGraph::replay(stream);
  std::vector<std::vector<VertexId>> back(stream.n());
  for (std::size_t p = 0; p < order.size(); ++p) {
    for (VertexId u : g.neighbors(order[p])) {
      if (position[u] < p) back[p].push_back(position[u]);
    }
  }
  return InstanceStream::from_back_edges(std::move(back));
}

// ---------------------------------------------------------------------------
// Generator specs as used by the CLI and bench suites.

enum class GenKind { FfAdversary, OddCycle, SubdividedClique, RandomBipartite };

inline const char* to_string(GenKind k) {
  switch (k) {
    case GenKind::FfAdversary: return "ff-adversary";
    case GenKind::OddCycle: return "odd-cycle";
    case GenKind::SubdividedClique: return "subdivided-clique";
    case GenKind::RandomBipartite: return "random-bipartite";
  }
  return "?";
}

inline GenKind gen_kind_from_string(std::string_view s) {
  if (s == "ff-adversary") return GenKind::FfAdversary;
  if (s == "odd-cycle") return GenKind::OddCycle;
  if (s == "subdivided-clique") return GenKind::SubdividedClique;
  if (s == "random-bipartite") return GenKind::RandomBipartite;
  throw std::invalid_argument("unknown generator kind '" + std::string(s) + "'");
}

struct GenSpec {
  GenKind kind = GenKind::OddCycle;
  std::size_t m = 0;  // ff-adversary, subdivided-clique
  std::size_t t = 0;  // subdivided-clique
  std::size_t g = 0;  // odd-cycle
  std::size_t n = 0;  // random-bipartite
  double p = 0.0;     // random-bipartite
  std::uint64_t seed = 0;
  bool random_order = false;

  friend bool operator==(const GenSpec&, const GenSpec&) = default;
};

/// Structural facts a generator guarantees for its output.
struct GenGuarantees {
  std::size_t n = 0;
  std::optional<std::uint64_t> girth;      // nullopt: unknown or infinite
  std::optional<std::uint64_t> odd_girth;  // nullopt: infinite (bipartite)
  bool bipartite = false;
  std::optional<std::size_t> first_fit_colors;  // on the given order
};

namespace detail {

inline std::uint64_t spec_uint(const std::map<std::string, std::string>& kv, const std::string& key) {
  auto it = kv.find(key);
  if (it == kv.end()) throw std::invalid_argument("generator spec missing '" + key + "'");
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(it->second.data(), it->second.data() + it->second.size(), v);
  if (ec != std::errc() || ptr != it->second.data() + it->second.size()) {
    throw std::invalid_argument("generator spec: '" + key + "' must be a non-negative integer");
  }
  return v;
}

}  // namespace detail

/// Builds a spec from key=value pairs: kind, m, t, g, n, p, seed, order.
inline GenSpec gen_spec_from_map(const std::map<std::string, std::string>& kv) {
  static const std::set<std::string> kKnown{"kind", "m", "t", "g", "n", "p", "seed", "order"};
  for (const auto& [key, value] : kv) {
    if (!kKnown.contains(key)) throw std::invalid_argument("generator spec: unknown key '" + key + "'");
  }
  GenSpec s;
  auto kind = kv.find("kind");
  if (kind == kv.end()) throw std::invalid_argument("generator spec missing 'kind'");
  s.kind = gen_kind_from_string(kind->second);
  switch (s.kind) {
    case GenKind::FfAdversary: s.m = detail::spec_uint(kv, "m"); break;
    case GenKind::OddCycle: s.g = detail::spec_uint(kv, "g"); break;
    case GenKind::SubdividedClique:
      s.m = detail::spec_uint(kv, "m");
      s.t = detail::spec_uint(kv, "t");
      break;
    case GenKind::RandomBipartite: {
      s.n = detail::spec_uint(kv, "n");
      auto p = kv.find("p");
      if (p == kv.end()) throw std::invalid_argument("generator spec missing 'p'");
      try {
        std::size_t used = 0;
        s.p = std::stod(p->second, &used);
        if (used != p->second.size()) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        throw std::invalid_argument("generator spec: 'p' must be a number");
      }
      break;
    }
  }
  if (kv.contains("seed")) s.seed = detail::spec_uint(kv, "seed");
  if (auto o = kv.find("order"); o != kv.end()) {
    if (o->second == "random") {
      s.random_order = true;
    } else if (o->second != "given") {
      throw std::invalid_argument("generator spec: order must be 'given' or 'random'");
    }
  }
  return s;
}

/// Canonical text form, e.g. "kind=subdivided-clique m=5 t=11 order=random seed=7".
inline std::string describe(const GenSpec& s) {
  std::string out = std::string("kind=") + to_string(s.kind);
  switch (s.kind) {
    case GenKind::FfAdversary: out += " m=" + std::to_string(s.m); break;
    case GenKind::OddCycle: out += " g=" + std::to_string(s.g); break;
    case GenKind::SubdividedClique: out += " m=" + std::to_string(s.m) + " t=" + std::to_string(s.t); break;
    case GenKind::RandomBipartite: {
      std::ostringstream p;
      p.imbue(std::locale::classic());
      p << s.p;
      out += " n=" + std::to_string(s.n) + " p=" + p.str();
      break;
    }
  }
  if (s.random_order) out += " order=random";
  if (s.random_order || s.kind == GenKind::RandomBipartite) out += " seed=" + std::to_string(s.seed);
  return out;
}

inline InstanceStream generate(const GenSpec& s) {
  InstanceStream stream;
  switch (s.kind) {
    case GenKind::FfAdversary: stream = gen_ff_adversary(s.m); break;
    case GenKind::OddCycle: stream = gen_odd_cycle(s.g); break;
    case GenKind::SubdividedClique: stream = gen_subdivided_clique(s.m, s.t); break;
    case GenKind::RandomBipartite: stream = gen_random_bipartite(s.n, s.p, s.seed); break;
  }
  if (s.random_order) {
    // A distinct stream from the edge draws; seed 0 would mean identity.
    stream = reorder(stream, s.seed == 0 ? 1 : s.seed);
  }
  return stream;
}

inline GenGuarantees guarantees(const GenSpec& s) {
  GenGuarantees g;
  switch (s.kind) {
    case GenKind::FfAdversary:
      g.n = 2 * s.m;
      g.bipartite = true;
      if (!s.random_order) g.first_fit_colors = s.m;
      break;
    case GenKind::OddCycle:
      g.n = s.g;
      g.girth = s.g;
      g.odd_girth = s.g;
      break;
    case GenKind::SubdividedClique:
      g.n = s.m + (s.t - 1) * s.m * (s.m - 1) / 2;
      g.girth = 3 * s.t;
      g.odd_girth = 3 * s.t;
      break;
    case GenKind::RandomBipartite:
      g.n = s.n;
      g.bipartite = true;
      break;
  }
  return g;
}

}  // namespace oddcolor

#endif  // ODDCOLOR_GENERATORS_HPP
