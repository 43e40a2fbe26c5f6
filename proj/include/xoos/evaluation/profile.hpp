#pragma once

#include <memory>
#include <unordered_map>
#include <vector>

#include "xoos/apprentice/net.hpp"
#include "xoos/games/game.hpp"
#include "xoos/oos/tree.hpp"

namespace xoos::evaluation {

// A behaviour strategy: maps decision states to distributions over their
// legal actions (by position in legal_actions()). Implementations must be
// consistent across states of one infoset.
class StrategyProfile {
 public:
  virtual ~StrategyProfile() = default;
  virtual std::vector<double> action_probabilities(const games::State& state,
                                                   games::PlayerRole seat) const = 0;
};

class UniformProfile final : public StrategyProfile {
 public:
  std::vector<double> action_probabilities(const games::State& state,
                                           games::PlayerRole seat) const override;
};

// Average strategy of an OOS tree; uniform at untabled infosets.
class TreeProfile final : public StrategyProfile {
 public:
  explicit TreeProfile(const oos::SearchTree& tree) : tree_(&tree) {}
  std::vector<double> action_probabilities(const games::State& state,
                                           games::PlayerRole seat) const override;

 private:
  const oos::SearchTree* tree_;
};

// Network policy (masked softmax forward pass), reduced to legal positions.
class NetProfile final : public StrategyProfile {
 public:
  NetProfile(std::shared_ptr<const apprentice::NetworkParams> params, const games::Game& game);
  std::vector<double> action_probabilities(const games::State& state,
                                           games::PlayerRole seat) const override;

 private:
  std::shared_ptr<const apprentice::NetworkParams> params_;
  int max_actions_;
};

// Fixed table keyed by infoset, uniform where absent; for test fixtures.
class TableProfile final : public StrategyProfile {
 public:
  using Table = std::unordered_map<games::InfosetKey, std::vector<double>, games::InfosetKeyHash>;

  TableProfile() = default;
  explicit TableProfile(Table table) : table_(std::move(table)) {}
  void set(games::InfosetKey key, std::vector<double> dist);
  std::vector<double> action_probabilities(const games::State& state,
                                           games::PlayerRole seat) const override;

 private:
  Table table_;
};

}  // namespace xoos::evaluation
