#ifndef ODDCOLOR_AUDIT_HPP
#define ODDCOLOR_AUDIT_HPP

// Structured record of every internal decision a colorer makes, serialized as
// JSON lines.  Each line is one object with an "event" name, a "layer" (the
// subroutine depth 0..k, or null for front-end events) and event fields:
//
//   ff-assign        vertex, color
//   base-added       layer, index, members
//   group-query      layer, vertex, group, step ("delegate" | "group-color" | "merge")
//   merge            layer, z, d0, d1, d2, bases_created
//   gc-assign        layer, vertex, group, local_color, color
//   terminal-assign  layer, vertex, base, color
//   restart          epoch, n_guess, first_vertex
//
// Steps "group-color" and "merge" mean the vertex joined the Y' subset of its
// group; "delegate" means it was colored by the next layer.

#include <cstdint>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "oddcolor/graph.hpp"

namespace oddcolor {

using BaseIndex = std::uint32_t;

enum class QueryStep { Delegate, GroupColor, Merge };

inline const char* to_string(QueryStep s) {
  switch (s) {
    case QueryStep::Delegate: return "delegate";
    case QueryStep::GroupColor: return "group-color";
    case QueryStep::Merge: return "merge";
  }
  return "?";
}

inline QueryStep query_step_from_string(std::string_view s) {
  if (s == "delegate") return QueryStep::Delegate;
  if (s == "group-color") return QueryStep::GroupColor;
  if (s == "merge") return QueryStep::Merge;
  throw std::invalid_argument("unknown query step '" + std::string(s) + "'");
}

namespace event {

struct FfAssign {
  VertexId vertex = 0;
  Color color = 0;
  friend bool operator==(const FfAssign&, const FfAssign&) = default;
};

struct BaseAdded {
  unsigned layer = 0;
  BaseIndex index = 0;
  std::vector<VertexId> members;
  friend bool operator==(const BaseAdded&, const BaseAdded&) = default;
};

struct GroupQuery {
  unsigned layer = 0;
  VertexId vertex = 0;
  BaseIndex group = 0;
  QueryStep step = QueryStep::Delegate;
  friend bool operator==(const GroupQuery&, const GroupQuery&) = default;
};

struct Merge {
  unsigned layer = 0;
  BaseIndex z = 0;
  std::vector<BaseIndex> d0, d1, d2;
  std::vector<BaseIndex> bases_created;  // indices in layer + 1
  friend bool operator==(const Merge&, const Merge&) = default;
};

struct GcAssign {
  unsigned layer = 0;
  VertexId vertex = 0;
  BaseIndex group = 0;
  Color local_color = 0;
  Color color = 0;
  friend bool operator==(const GcAssign&, const GcAssign&) = default;
};

struct TerminalAssign {
  unsigned layer = 0;
  VertexId vertex = 0;
  BaseIndex base = 0;
  Color color = 0;
  friend bool operator==(const TerminalAssign&, const TerminalAssign&) = default;
};

struct Restart {
  std::uint32_t epoch = 0;
  std::uint64_t n_guess = 0;
  VertexId first_vertex = 0;
  friend bool operator==(const Restart&, const Restart&) = default;
};

}  // namespace event

using AuditEvent = std::variant<event::FfAssign, event::BaseAdded, event::GroupQuery, event::Merge,
                                event::GcAssign, event::TerminalAssign, event::Restart>;

inline nlohmann::json to_json(const AuditEvent& ev) {
  using nlohmann::json;
  return std::visit(
      [](const auto& e) -> json {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, event::FfAssign>) {
          return {{"event", "ff-assign"}, {"layer", nullptr}, {"vertex", e.vertex}, {"color", e.color}};
        } else if constexpr (std::is_same_v<T, event::BaseAdded>) {
          return {{"event", "base-added"}, {"layer", e.layer}, {"index", e.index}, {"members", e.members}};
        } else if constexpr (std::is_same_v<T, event::GroupQuery>) {
          return {{"event", "group-query"}, {"layer", e.layer}, {"vertex", e.vertex},
                  {"group", e.group},       {"step", to_string(e.step)}};
        } else if constexpr (std::is_same_v<T, event::Merge>) {
          return {{"event", "merge"}, {"layer", e.layer}, {"z", e.z}, {"d0", e.d0},
                  {"d1", e.d1},       {"d2", e.d2},       {"bases_created", e.bases_created}};
        } else if constexpr (std::is_same_v<T, event::GcAssign>) {
          return {{"event", "gc-assign"}, {"layer", e.layer},         {"vertex", e.vertex},
                  {"group", e.group},     {"local_color", e.local_color}, {"color", e.color}};
        } else if constexpr (std::is_same_v<T, event::TerminalAssign>) {
          return {{"event", "terminal-assign"}, {"layer", e.layer}, {"vertex", e.vertex},
                  {"base", e.base},             {"color", e.color}};
        } else {
          return {{"event", "restart"}, {"layer", nullptr}, {"epoch", e.epoch},
                  {"n_guess", e.n_guess}, {"first_vertex", e.first_vertex}};
        }
      },
      ev);
}

inline AuditEvent audit_event_from_json(const nlohmann::json& j) {
  const std::string name = j.at("event").get<std::string>();
  if (name == "ff-assign") return event::FfAssign{j.at("vertex"), j.at("color")};
  if (name == "base-added") {
    return event::BaseAdded{j.at("layer"), j.at("index"), j.at("members").get<std::vector<VertexId>>()};
  }
  if (name == "group-query") {
    return event::GroupQuery{j.at("layer"), j.at("vertex"), j.at("group"),
                             query_step_from_string(j.at("step").get<std::string>())};
  }
  if (name == "merge") {
    return event::Merge{j.at("layer"),
                        j.at("z"),
                        j.at("d0").get<std::vector<BaseIndex>>(),
                        j.at("d1").get<std::vector<BaseIndex>>(),
                        j.at("d2").get<std::vector<BaseIndex>>(),
                        j.at("bases_created").get<std::vector<BaseIndex>>()};
  }
  if (name == "gc-assign") {
    return event::GcAssign{j.at("layer"), j.at("vertex"), j.at("group"), j.at("local_color"), j.at("color")};
  }
  if (name == "terminal-assign") {
    return event::TerminalAssign{j.at("layer"), j.at("vertex"), j.at("base"), j.at("color")};
  }
  if (name == "restart") return event::Restart{j.at("epoch"), j.at("n_guess"), j.at("first_vertex")};
  throw std::invalid_argument("unknown audit event '" + name + "'");
}

class AuditTrace {
 public:
  void record(AuditEvent e) { events_.push_back(std::move(e)); }

  const std::vector<AuditEvent>& events() const noexcept { return events_; }
  std::vector<AuditEvent>& mutable_events() noexcept { return events_; }
  std::size_t size() const noexcept { return events_.size(); }
  bool empty() const noexcept { return events_.empty(); }

  std::string to_jsonl() const {
    std::string out;
    for (const auto& e : events_) {
      out += to_json(e).dump();
      out += '\n';
    }
    return out;
  }

  static AuditTrace from_jsonl(std::string_view text) {
    AuditTrace trace;
    std::size_t pos = 0, line = 0;
    while (pos < text.size()) {
      auto eol = text.find('\n', pos);
      if (eol == std::string_view::npos) eol = text.size();
      auto body = text.substr(pos, eol - pos);
      pos = eol + 1;
      ++line;
      if (body.find_first_not_of(" \t\r") == std::string_view::npos) continue;
      try {
        trace.record(audit_event_from_json(nlohmann::json::parse(body)));
      } catch (const std::exception& e) {
        throw std::invalid_argument("audit line " + std::to_string(line) + ": " + e.what());
      }
    }
    return trace;
  }

  friend bool operator==(const AuditTrace&, const AuditTrace&) = default;

 private:
  std::vector<AuditEvent> events_;
};

}  // namespace oddcolor

#endif  // ODDCOLOR_AUDIT_HPP
