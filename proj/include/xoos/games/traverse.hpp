#pragma once

#include <cstddef>
#include <functional>
#include <unordered_map>

#include "xoos/games/game.hpp"

namespace xoos::games {

// Depth-first walk of the full game tree (every chance branch, every action).
// Visits each state once, terminals included, with the chance-and-action reach
// probability product of chance edges only. Stops early if visit returns false.
void for_each_state(const Game& game,
                    const std::function<bool(const State&, double chance_reach)>& visit);

struct InfosetSummary {
  int legal_count = 0;
  int state_count = 0;  // distinct states in the infoset (merged chance branches count once)
};

// Enumerates every reachable decision infoset. With track_states, states reached
// by different chance paths but carrying identical full-information content are
// counted once, so state_count matches the game-theoretic infoset sizes.
std::unordered_map<InfosetKey, InfosetSummary, InfosetKeyHash> enumerate_infosets(
    const Game& game, bool track_states = false);

std::size_t count_histories(const Game& game, std::size_t cap);

}  // namespace xoos::games
