#pragma once

#include <cstdint>
#include <string>

#include "xoos/evaluation/agents.hpp"
#include "xoos/games/game.hpp"

namespace xoos::evaluation {

struct MatchResult {
  std::string game_id;
  std::string agent_a;
  std::string agent_b;
  int games = 0;
  int wins = 0;    // agent A's perspective
  int draws = 0;
  int losses = 0;
  int a_games_as_p1 = 0;
  double win_rate_percent = 0.0;  // draws count as half wins
  double stderr_percent = 0.0;    // 100 * sqrt(p(1-p)/n)
};

// Plays n_games with seats alternating every game (A sits Player1 in even
// games). Games are seeded in duplicate pairs: games 2k and 2k+1 share the
// chance stream and the per-seat agent streams, so each deal is played once
// per seating and swapping the agent arguments yields exactly the mirrored
// result under the same seed. Fresh agents are constructed per game.
MatchResult play_match(const games::Game& game, const AgentFactory& factory_a,
                       const AgentFactory& factory_b, int n_games, std::uint64_t seed,
                       int threads = 1);

std::string match_csv_header();
std::string match_csv_row(const MatchResult& r);
std::string match_text(const MatchResult& r);

}  // namespace xoos::evaluation
