#pragma once

#include <cstddef>

#include "xoos/evaluation/profile.hpp"
#include "xoos/games/game.hpp"

namespace xoos::evaluation {

// Exhaustive-traversal guard: games whose history count exceeds this are
// refused (Liar's Dice(2), Goofspiel(13), ...).
inline constexpr std::size_t kBestResponseHistoryCap = 4'000'000;

// Expected utility of br_seat's exact best response when the opponent plays
// `profile`. States are grouped by br_seat's infosets, weighted by chance x
// opponent reach, and resolved deepest-first so every later own decision is
// already fixed when an infoset's action values are compared.
// Throws std::invalid_argument if the game exceeds the traversal guard.
double best_response_value(const games::Game& game, const StrategyProfile& profile,
                           games::PlayerRole br_seat,
                           std::size_t max_histories = kBestResponseHistoryCap);

// best_response_value(P1) + best_response_value(P2); >= 0, and 0 exactly at
// a Nash equilibrium. Units are the game's own utility units (chips for the
// poker games with ante 1).
double exploitability(const games::Game& game, const StrategyProfile& profile,
                      std::size_t max_histories = kBestResponseHistoryCap);

}  // namespace xoos::evaluation
