#ifndef ODDCOLOR_GROUP_COLORING_HPP
#define ODDCOLOR_GROUP_COLORING_HPP

// Online group coloring.
//
// Every arriving vertex names its group; vertices of one group are never
// adjacent, and the arriving vertex's group has at most delta neighboring
// groups.  Each group keeps a current color c_i and the set L_i of every color
// it has used.  A vertex gets c_i unless some neighboring group has used it,
// in which case c_i moves to the smallest color outside the union of the
// neighbors' L sets.  With the degree promise honored this never needs more
// than delta^2 + 2 colors.
//
// Colors are 1-based and local; callers map them into their own palette.

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "oddcolor/graph.hpp"

namespace oddcolor {

using GroupId = std::uint32_t;

/// A group was listed as adjacent to itself (intra-group edge).
class GroupPromiseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class GroupColoring {
 public:
  explicit GroupColoring(double delta = 0.0) : delta_(delta) {
    if (!(delta >= 0.0)) throw std::invalid_argument("delta must be non-negative");
  }

  /// Colors one vertex of `group`.  `adjacent_groups` are the groups of its
  /// already-colored neighbors; they are merged into the neighbor graph first.
  Color color_vertex(GroupId group, std::span<const GroupId> adjacent_groups) {
    if (group == 0) throw std::invalid_argument("group ids are positive");
    for (GroupId other : adjacent_groups) {
      if (other == group) {
        throw GroupPromiseError("group " + std::to_string(group) + " listed among its own adjacent groups");
      }
      if (other == 0) throw std::invalid_argument("group ids are positive");
    }
    Group& self = touch(group);
    for (GroupId other : adjacent_groups) {
      self.neighbors.insert(other);
      touch(other).neighbors.insert(group);
    }

    std::vector<Color> blocked;
    for (GroupId other : self.neighbors) {
      const auto& used = groups_.at(other).used;
      blocked.insert(blocked.end(), used.begin(), used.end());
    }
    std::sort(blocked.begin(), blocked.end());
    blocked.erase(std::unique(blocked.begin(), blocked.end()), blocked.end());

    if (std::binary_search(blocked.begin(), blocked.end(), self.current)) {
      Color next = 1;
      for (Color c : blocked) {
        if (c != next) break;
        ++next;
      }
      self.current = next;
      self.used.insert(next);
    }
    max_color_ = std::max(max_color_, self.current);
    return self.current;
  }

  Color color_vertex(GroupId group, std::initializer_list<GroupId> adjacent_groups) {
    return color_vertex(group, std::span<const GroupId>(adjacent_groups.begin(), adjacent_groups.size()));
  }

  /// Largest color returned so far, 0 before the first call.
  Color max_color_used() const noexcept { return max_color_; }

  double delta() const noexcept { return delta_; }
  bool knows(GroupId g) const { return groups_.contains(g); }
  std::size_t group_count() const noexcept { return groups_.size(); }

  Color current_color(GroupId g) const { return find(g).current; }
  const std::set<Color>& used_colors(GroupId g) const { return find(g).used; }
  const std::set<GroupId>& neighbor_groups(GroupId g) const { return find(g).neighbors; }
  std::size_t degree(GroupId g) const { return knows(g) ? find(g).neighbors.size() : 0; }

 private:
  struct Group {
    Color current = 1;
    std::set<Color> used{1};
    std::set<GroupId> neighbors;
  };

  Group& touch(GroupId g) { return groups_.try_emplace(g).first->second; }

  const Group& find(GroupId g) const {
    auto it = groups_.find(g);
    if (it == groups_.end()) throw std::out_of_range("unknown group " + std::to_string(g));
    return it->second;
  }

  double delta_;
  std::map<GroupId, Group> groups_;
  Color max_color_ = 0;
};

}  // namespace oddcolor

#endif  // ODDCOLOR_GROUP_COLORING_HPP
