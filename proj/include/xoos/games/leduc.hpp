#pragma once

#include "xoos/games/game.hpp"

namespace xoos::games {

// Leduc hold'em: 6-card deck (3 ranks, 2 suits), ante 1, two betting rounds with
// fixed raises of 2 then 4, at most 2 raises per round, one community card between
// rounds. Suits never matter: chance outcomes are card-granular ActionIds
// (rank*2 + copy) but states record ranks only, so equal-rank deals coincide.
// Decision ids: fold=0, check/call=1, raise=2.
class LeducGame final : public Game {
 public:
  std::string id() const override { return "leduc"; }
  StatePtr initial_state() const override;
  int max_actions() const override { return 3; }
  int encoding_dim() const override { return 23; }
  std::vector<TargetingMode> targeting_modes() const override {
    return {TargetingMode::None, TargetingMode::PublicSetTargeting,
            TargetingMode::InfosetTargeting};
  }
  TargetingMode default_targeting() const override { return TargetingMode::PublicSetTargeting; }
  bool target_consistent(TargetingMode mode, const MatchHistory& observed, const State& prefix,
                         ActionId action) const override;
};

}  // namespace xoos::games
