#pragma once

#include "xoos/games/game.hpp"

namespace xoos::games {

// Imperfect-information Goofspiel(N): both players hold bid cards of rank 0..N-1;
// prizes worth 0,1,...,N-1 points are auctioned in that fixed order. Higher bid
// takes the prize, ties award nothing, and only win/draw/loss is revealed, never
// the opposing bid. Simultaneous bids are serialized: P1 bids first, hidden, then
// P2. Utility is the sign of the point margin (+1/0/-1) unless margin_utility.
class GoofspielGame final : public Game {
 public:
  explicit GoofspielGame(int n, bool margin_utility = false);

  std::string id() const override;
  StatePtr initial_state() const override;
  int max_actions() const override { return n_; }
  int encoding_dim() const override { return 5 * n_; }
  std::vector<TargetingMode> targeting_modes() const override {
    return {TargetingMode::None, TargetingMode::PublicSetTargeting,
            TargetingMode::InfosetTargeting};
  }
  TargetingMode default_targeting() const override { return TargetingMode::InfosetTargeting; }
  bool target_consistent(TargetingMode mode, const MatchHistory& observed, const State& prefix,
                         ActionId action) const override;

  int n() const { return n_; }

 private:
  int n_;
  bool margin_;
};

}  // namespace xoos::games
