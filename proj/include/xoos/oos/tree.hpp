#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "xoos/games/types.hpp"

namespace xoos::oos {

// Per-infoset accumulators, indexed by position in the infoset's legal-action list.
struct NodeStats {
  std::vector<double> regrets;
  std::vector<double> avg_num;

  explicit NodeStats(int actions) : regrets(actions, 0.0), avg_num(actions, 0.0) {}
  int action_count() const { return static_cast<int>(regrets.size()); }
};

// σ(a) = max(R(a),0) normalized; uniform when no positive regret.
std::vector<double> regret_matching(std::span<const double> regrets);

// Normalized average-strategy numerators; uniform when all are zero.
std::vector<double> average_strategy(const NodeStats& node);

class SearchTree {
 public:
  using Map = std::unordered_map<games::InfosetKey, NodeStats, games::InfosetKeyHash>;

  NodeStats* find(const games::InfosetKey& key) {
    auto it = nodes_.find(key);
    return it == nodes_.end() ? nullptr : &it->second;
  }
  const NodeStats* find(const games::InfosetKey& key) const {
    auto it = nodes_.find(key);
    return it == nodes_.end() ? nullptr : &it->second;
  }
  NodeStats& add(const games::InfosetKey& key, int actions);

  std::size_t node_count() const { return nodes_.size(); }
  const Map& nodes() const { return nodes_; }

  std::uint64_t episodes = 0;

 private:
  Map nodes_;
};

}  // namespace xoos::oos
