#pragma once

#include <string>
#include <vector>

namespace xoos::evaluation {

// Aggregated head-to-head outcome between two agents, by index.
struct PairOutcome {
  int agent_a = 0;
  int agent_b = 0;
  double games = 0.0;
  double score_a = 0.0;  // wins + draws/2 from agent_a's side
};

struct EloTable {
  std::vector<std::string> names;
  std::vector<double> ratings;
  int anchor = 0;
};

// Maximum-likelihood Bradley-Terry fit on the Elo scale: expected score
// E = 1 / (1 + 10^(-(r_i - r_j)/400)), draws already folded into score_a as
// half wins. The anchor's rating is pinned (default 1500); every other agent
// must be connected to the anchor through played pairs, otherwise
// std::invalid_argument names the unreachable agents.
EloTable elo_fit(const std::vector<std::string>& names, const std::vector<PairOutcome>& results,
                 int anchor_index, double anchor_rating = 1500.0);

std::string elo_csv(const EloTable& table);
std::string elo_text(const EloTable& table);

}  // namespace xoos::evaluation
