#include "xoos/evaluation/elo.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace xoos::evaluation {
namespace {

constexpr double kScale = 0.005756462732485115;  // ln(10) / 400

double expected_score(double ra, double rb) {
  return 1.0 / (1.0 + std::pow(10.0, -(ra - rb) / 400.0));
}

}  // namespace

EloTable elo_fit(const std::vector<std::string>& names, const std::vector<PairOutcome>& results,
                 int anchor_index, double anchor_rating) {
  const int n = static_cast<int>(names.size());
  if (n == 0) throw std::invalid_argument("elo_fit: no agents");
  if (anchor_index < 0 || anchor_index >= n)
    throw std::invalid_argument("elo_fit: anchor index out of range");
  for (const PairOutcome& p : results) {
    if (p.agent_a < 0 || p.agent_a >= n || p.agent_b < 0 || p.agent_b >= n ||
        p.agent_a == p.agent_b)
      throw std::invalid_argument("elo_fit: pair references invalid agents");
    if (p.games <= 0.0 || p.score_a < 0.0 || p.score_a > p.games)
      throw std::invalid_argument("elo_fit: pair has invalid game/score counts");
  }

  // Every agent must be reachable from the anchor through played pairs.
  std::vector<std::vector<int>> adj(n);
  for (const PairOutcome& p : results) {
    adj[p.agent_a].push_back(p.agent_b);
    adj[p.agent_b].push_back(p.agent_a);
  }
  std::vector<char> seen(n, 0);
  std::queue<int> frontier;
  frontier.push(anchor_index);
  seen[anchor_index] = 1;
  while (!frontier.empty()) {
    const int i = frontier.front();
    frontier.pop();
    for (int j : adj[i])
      if (!seen[j]) {
        seen[j] = 1;
        frontier.push(j);
      }
  }
  std::string unreachable;
  for (int i = 0; i < n; ++i)
    if (!seen[i]) unreachable += (unreachable.empty() ? "" : ", ") + names[i];
  if (!unreachable.empty())
    throw std::invalid_argument("elo_fit: agents with no path of games to the anchor: " +
                                unreachable);

  EloTable table;
  table.names = names;
  table.anchor = anchor_index;
  table.ratings.assign(n, anchor_rating);

  // Coordinate-wise Newton ascent on the Bradley-Terry log-likelihood.
  for (int sweep = 0; sweep < 20000; ++sweep) {
    double max_step = 0.0;
    for (int i = 0; i < n; ++i) {
      if (i == anchor_index) continue;
      double grad = 0.0, curv = 0.0;
      for (const PairOutcome& p : results) {
        int j;
        double score;
        if (p.agent_a == i) {
          j = p.agent_b;
          score = p.score_a;
        } else if (p.agent_b == i) {
          j = p.agent_a;
          score = p.games - p.score_a;
        } else {
          continue;
        }
        const double e = expected_score(table.ratings[i], table.ratings[j]);
        grad += score - p.games * e;
        curv += p.games * e * (1.0 - e);
      }
      if (curv <= 0.0) continue;
      double step = grad / (kScale * curv);
      step = std::clamp(step, -200.0, 200.0);
      table.ratings[i] += step;
      // Keep perfect-score agents from running off to infinity.
      table.ratings[i] = std::clamp(table.ratings[i], anchor_rating - 4000.0,
                                    anchor_rating + 4000.0);
      max_step = std::max(max_step, std::abs(step));
    }
    if (max_step < 1e-9) break;
  }
  return table;
}

std::string elo_csv(const EloTable& table) {
  std::ostringstream out;
  out << "agent,rating,anchor\n";
  for (std::size_t i = 0; i < table.names.size(); ++i)
    out << table.names[i] << ',' << table.ratings[i] << ','
        << (static_cast<int>(i) == table.anchor ? 1 : 0) << '\n';
  return out.str();
}

std::string elo_text(const EloTable& table) {
  std::vector<std::size_t> order(table.names.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return table.ratings[a] > table.ratings[b];
  });
  std::ostringstream out;
  for (std::size_t i : order) {
    out << table.names[i] << ": " << table.ratings[i];
    if (static_cast<int>(i) == table.anchor) out << " (fixed)";
    out << '\n';
  }
  return out.str();
}

}  // namespace xoos::evaluation
