#pragma once

#include "xoos/games/game.hpp"

namespace xoos::games {

// Kuhn poker: 3-card deck {J,Q,K}, one ante, one bet of 1, single round.
// Decision ids: fold=0, check/call=1, bet=2. Chance ids: dealt rank 0..2.
class KuhnGame final : public Game {
 public:
  std::string id() const override { return "kuhn"; }
  StatePtr initial_state() const override;
  int max_actions() const override { return 3; }
  int encoding_dim() const override { return 12; }
  std::vector<TargetingMode> targeting_modes() const override {
    return {TargetingMode::None, TargetingMode::PublicSetTargeting,
            TargetingMode::InfosetTargeting};
  }
  TargetingMode default_targeting() const override { return TargetingMode::PublicSetTargeting; }
  bool target_consistent(TargetingMode mode, const MatchHistory& observed, const State& prefix,
                         ActionId action) const override;
};

}  // namespace xoos::games
