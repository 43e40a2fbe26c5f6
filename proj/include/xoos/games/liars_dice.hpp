#pragma once

#include "xoos/games/game.hpp"

namespace xoos::games {

// Liar's Dice(N): each player privately rolls N dice (faces 1..6, 6 wild).
// Players alternate raising the bid (quantity, face); bid ids are
// (q-1)*6 + (f-1) for q in 1..2N, f in 1..6, and each bid must have a strictly
// larger id than the last ("greater in quantity or value"). Action 12N calls
// liar, legal once any bid exists: if at least q dice across both hands show
// face f (sixes count for any face), the bid holds and the caller loses 1,
// otherwise the bidder loses 1.
class LiarsDiceGame final : public Game {
 public:
  explicit LiarsDiceGame(int dice_per_player);

  std::string id() const override { return "liars" + std::to_string(n_); }
  StatePtr initial_state() const override;
  int max_actions() const override { return 12 * n_ + 1; }
  int encoding_dim() const override { return 6 + 12 * n_ + 1; }
  std::vector<TargetingMode> targeting_modes() const override {
    return {TargetingMode::None, TargetingMode::PublicSetTargeting,
            TargetingMode::InfosetTargeting};
  }
  TargetingMode default_targeting() const override { return TargetingMode::PublicSetTargeting; }
  bool target_consistent(TargetingMode mode, const MatchHistory& observed, const State& prefix,
                         ActionId action) const override;

  int dice_per_player() const { return n_; }

 private:
  int n_;
};

}  // namespace xoos::games
