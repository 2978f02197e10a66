#ifndef ODDCOLOR_GRAPH_HPP
#define ODDCOLOR_GRAPH_HPP

// Online graph under vertex arrival, the instance stream that drives it, and
// the plain-text instance format shared by generators, colorers and checkers.
//
// Vertex ids are arrival positions.  Every arrival lists only back-edges
// (neighbors with a smaller id), so the stream is valid for every prefix.
// Neighbor lists are kept sorted ascending everywhere.

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace oddcolor {

using VertexId = std::uint32_t;
using Color = std::uint32_t;

/// Color value of a vertex that has not been colored yet.
inline constexpr Color kUncolored = 0;

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed instance text.  `line()` is 1-based, 0 when not line-specific.
class FormatError : public GraphError {
 public:
  FormatError(std::size_t line, const std::string& what)
      : GraphError(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

struct ArrivalEvent {
  VertexId vertex = 0;
  std::vector<VertexId> neighbors;  // sorted ascending, all < vertex

  friend bool operator==(const ArrivalEvent&, const ArrivalEvent&) = default;
};

/// Throws GraphError unless `e` is a valid arrival for position `expected`.
/// Accepts unsorted neighbor lists; use `canonicalize` to sort.
inline void validate_arrival(const ArrivalEvent& e, VertexId expected) {
  if (e.vertex != expected) {
    throw GraphError("out-of-order arrival: got vertex " + std::to_string(e.vertex) + ", expected " +
                     std::to_string(expected));
  }
  std::vector<VertexId> sorted = e.neighbors;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] == e.vertex) {
      throw GraphError("self-loop at vertex " + std::to_string(e.vertex));
    }
    if (sorted[i] > e.vertex) {
      throw GraphError("vertex " + std::to_string(e.vertex) + " references unrevealed vertex " +
                       std::to_string(sorted[i]));
    }
    if (i > 0 && sorted[i] == sorted[i - 1]) {
      throw GraphError("vertex " + std::to_string(e.vertex) + " lists neighbor " +
                       std::to_string(sorted[i]) + " twice");
    }
  }
}

class InstanceStream {
 public:
  InstanceStream() = default;

  /// Validates every event; neighbor lists are sorted on the way in.
  explicit InstanceStream(std::vector<ArrivalEvent> events) : events_(std::move(events)) {
    for (std::size_t i = 0; i < events_.size(); ++i) {
      validate_arrival(events_[i], static_cast<VertexId>(i));
      std::sort(events_[i].neighbors.begin(), events_[i].neighbors.end());
    }
  }

  /// Builds a stream from per-vertex back-edge lists (index = vertex id).
  static InstanceStream from_back_edges(std::vector<std::vector<VertexId>> back_edges) {
    std::vector<ArrivalEvent> events;
    events.reserve(back_edges.size());
    for (std::size_t v = 0; v < back_edges.size(); ++v) {
      events.push_back({static_cast<VertexId>(v), std::move(back_edges[v])});
    }
    return InstanceStream(std::move(events));
  }

  std::size_t n() const noexcept { return events_.size(); }
  bool empty() const noexcept { return events_.empty(); }
  const std::vector<ArrivalEvent>& events() const noexcept { return events_; }
  const ArrivalEvent& operator[](std::size_t i) const { return events_.at(i); }

  std::size_t edge_count() const noexcept {
    std::size_t m = 0;
    for (const auto& e : events_) m += e.neighbors.size();
    return m;
  }

  friend bool operator==(const InstanceStream&, const InstanceStream&) = default;

 private:
  std::vector<ArrivalEvent> events_;
};

/// Simple undirected graph grown one vertex at a time.
class OnlineGraph {
 public:
  OnlineGraph() = default;

  static OnlineGraph replay(const InstanceStream& stream) {
    OnlineGraph g;
    g.adjacency_.reserve(stream.n());
    for (const auto& e : stream.events()) g.reveal(e);
    return g;
  }

  /// Adds `e.vertex` with its back-edges.  Requires `e.vertex == size()`.
  void reveal(const ArrivalEvent& e) {
    validate_arrival(e, static_cast<VertexId>(adjacency_.size()));
    std::vector<VertexId> back = e.neighbors;
    std::sort(back.begin(), back.end());
    // e.vertex is the largest id so far; appending keeps the lists sorted.
    for (VertexId u : back) adjacency_[u].push_back(e.vertex);
    edges_ += back.size();
    adjacency_.push_back(std::move(back));
  }

  std::size_t size() const noexcept { return adjacency_.size(); }
  std::size_t edge_count() const noexcept { return edges_; }
  bool contains(VertexId v) const noexcept { return v < adjacency_.size(); }

  /// Current neighbors of `v`, ascending.  The view is invalidated by `reveal`.
  std::span<const VertexId> neighbors(VertexId v) const {
    if (!contains(v)) throw GraphError("unknown vertex " + std::to_string(v));
    return adjacency_[v];
  }

  bool has_edge(VertexId u, VertexId v) const {
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
  }

 private:
  std::vector<std::vector<VertexId>> adjacency_;
  std::size_t edges_ = 0;
};

/// Partial map vertex -> positive color.  Unassigned vertices read as kUncolored.
class Coloring {
 public:
  Coloring() = default;
  explicit Coloring(std::vector<Color> assignment) : colors_(std::move(assignment)) {}

  Color color(VertexId v) const noexcept { return v < colors_.size() ? colors_[v] : kUncolored; }
  bool is_colored(VertexId v) const noexcept { return color(v) != kUncolored; }

  void assign(VertexId v, Color c) {
    if (c == kUncolored) throw std::invalid_argument("color 0 is reserved for uncolored vertices");
    if (v >= colors_.size()) colors_.resize(v + 1, kUncolored);
    if (colors_[v] != kUncolored) throw std::logic_error("vertex " + std::to_string(v) + " already colored");
    colors_[v] = c;
  }

  /// Number of leading vertices that are colored.
  std::size_t colored_prefix() const noexcept {
    std::size_t i = 0;
    while (i < colors_.size() && colors_[i] != kUncolored) ++i;
    return i;
  }

  std::size_t colors_used() const {
    std::vector<Color> seen;
    for (Color c : colors_) {
      if (c != kUncolored) seen.push_back(c);
    }
    std::sort(seen.begin(), seen.end());
    return static_cast<std::size_t>(std::unique(seen.begin(), seen.end()) - seen.begin());
  }

  Color max_color() const noexcept {
    Color best = kUncolored;
    for (Color c : colors_) best = std::max(best, c);
    return best;
  }

  const std::vector<Color>& assignment() const noexcept { return colors_; }

  friend bool operator==(const Coloring&, const Coloring&) = default;

 private:
  std::vector<Color> colors_;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto* ws = " \t\r\n\v\f";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

inline std::uint64_t parse_uint(std::string_view tok, std::size_t line, const char* what) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw FormatError(line, std::string("expected non-negative integer for ") + what + ", got '" +
                                std::string(tok) + "'");
  }
  return value;
}

}  // namespace detail

/// Parses the instance format:
///
///   # comment lines start with '#'
///   n <N>
///   <id> <deg> <neighbor_1> ... <neighbor_deg>     (N lines, id = 0..N-1)
///
/// Blank lines are ignored.  Neighbors may appear in any order but must be
/// smaller than the id and distinct.
inline InstanceStream load_instance(std::string_view text) {
  std::vector<ArrivalEvent> events;
  bool have_header = false;
  std::uint64_t n = 0;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = detail::trim(text.substr(pos, eol - pos));
    pos = eol + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;

    auto toks = detail::split_ws(line);
    if (!have_header) {
      if (toks.size() != 2 || toks[0] != "n") throw FormatError(line_no, "expected header 'n <N>'");
      n = detail::parse_uint(toks[1], line_no, "n");
      have_header = true;
      events.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(n, 1u << 20)));
      continue;
    }
    if (events.size() >= n) throw FormatError(line_no, "more vertex lines than n = " + std::to_string(n));
    if (toks.size() < 2) throw FormatError(line_no, "expected '<id> <deg> <neighbors...>'");
    auto id = detail::parse_uint(toks[0], line_no, "vertex id");
    auto deg = detail::parse_uint(toks[1], line_no, "degree");
    if (id != events.size()) {
      throw FormatError(line_no, "vertex id " + std::to_string(id) + " out of order, expected " +
                                     std::to_string(events.size()));
    }
    if (toks.size() != deg + 2) {
      throw FormatError(line_no, "degree " + std::to_string(deg) + " does not match " +
                                     std::to_string(toks.size() - 2) + " listed neighbors");
    }
    ArrivalEvent e;
    e.vertex = static_cast<VertexId>(id);
    e.neighbors.reserve(deg);
    for (std::size_t i = 2; i < toks.size(); ++i) {
      e.neighbors.push_back(static_cast<VertexId>(detail::parse_uint(toks[i], line_no, "neighbor")));
    }
    try {
      validate_arrival(e, e.vertex);
    } catch (const GraphError& err) {
      throw FormatError(line_no, err.what());
    }
    std::sort(e.neighbors.begin(), e.neighbors.end());
    events.push_back(std::move(e));
  }
  if (!have_header) throw FormatError(0, "missing header 'n <N>'");
  if (events.size() != n) {
    throw FormatError(0, "header declares n = " + std::to_string(n) + " but " +
                             std::to_string(events.size()) + " vertex lines follow");
  }
  return InstanceStream(std::move(events));
}

/// Canonical text: header, then one line per vertex with ascending neighbors.
inline std::string save_instance(const InstanceStream& stream) {
  std::ostringstream out;
  out << "n " << stream.n() << '\n';
  for (const auto& e : stream.events()) {
    out << e.vertex << ' ' << e.neighbors.size();
    for (VertexId u : e.neighbors) out << ' ' << u;
    out << '\n';
  }
  return out.str();
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::ios_base::failure("cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_text_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::ios_base::failure("cannot open '" + path + "' for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw std::ios_base::failure("write to '" + path + "' failed");
}

}  // namespace oddcolor

#endif  // ODDCOLOR_GRAPH_HPP
