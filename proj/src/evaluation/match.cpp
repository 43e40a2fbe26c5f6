#include "xoos/evaluation/match.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <vector>

namespace xoos::evaluation {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t pair, std::uint64_t channel) {
  return splitmix64(splitmix64(seed ^ (0x9e3779b97f4a7c15ull * (pair + 1))) ^
                    (0xd1342543de82ef95ull * (channel + 1)));
}

double u01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

games::ActionId sample_chance(const games::State& s, std::mt19937_64& rng) {
  const auto outcomes = s.chance_outcomes();
  double u = u01(rng), acc = 0.0;
  games::ActionId pick = -1;
  for (const auto& [a, p] : outcomes) {
    if (p <= 0.0) continue;
    pick = a;
    acc += p;
    if (u < acc) break;
  }
  if (pick < 0) throw std::logic_error("play_match: no positive-probability chance outcome");
  return pick;
}

// +1 win / 0 draw / -1 loss from agent A's perspective.
int play_one(const games::Game& game, const AgentFactory& factory_a,
             const AgentFactory& factory_b, std::uint64_t seed, int g) {
  const std::uint64_t pair = static_cast<std::uint64_t>(g) / 2;
  const bool a_is_p1 = g % 2 == 0;

  std::unique_ptr<Agent> p1 = a_is_p1 ? factory_a() : factory_b();
  std::unique_ptr<Agent> p2 = a_is_p1 ? factory_b() : factory_a();
  p1->start_game(game, games::PlayerRole::Player1, stream_seed(seed, pair, 0));
  p2->start_game(game, games::PlayerRole::Player2, stream_seed(seed, pair, 1));
  std::mt19937_64 chance_rng(stream_seed(seed, pair, 2));

  games::MatchHistory history(game);
  while (!history.current()->is_terminal()) {
    const games::State& s = *history.current();
    if (s.acting_player() == games::PlayerRole::Chance) {
      history.push(sample_chance(s, chance_rng));
    } else if (s.acting_player() == games::PlayerRole::Player1) {
      history.push(p1->act(history));
    } else {
      history.push(p2->act(history));
    }
  }
  const double u_a = history.current()->utility(a_is_p1 ? games::PlayerRole::Player1
                                                        : games::PlayerRole::Player2);
  if (u_a > 1e-12) return 1;
  if (u_a < -1e-12) return -1;
  return 0;
}

}  // namespace

MatchResult play_match(const games::Game& game, const AgentFactory& factory_a,
                       const AgentFactory& factory_b, int n_games, std::uint64_t seed,
                       int threads) {
  if (n_games < 1) throw std::invalid_argument("play_match: n_games must be >= 1");
  if (threads < 1) threads = 1;

  std::vector<int> outcome(n_games, 0);
  auto run_range = [&](int start, int step) {
    for (int g = start; g < n_games; g += step)
      outcome[g] = play_one(game, factory_a, factory_b, seed, g);
  };
  if (threads == 1) {
    run_range(0, 1);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int w = 0; w < threads; ++w) pool.emplace_back(run_range, w, threads);
    for (std::thread& t : pool) t.join();
  }

  MatchResult r;
  r.game_id = game.id();
  r.agent_a = factory_a()->name();
  r.agent_b = factory_b()->name();
  r.games = n_games;
  r.a_games_as_p1 = (n_games + 1) / 2;
  for (int o : outcome) {
    if (o > 0) ++r.wins;
    else if (o < 0) ++r.losses;
    else ++r.draws;
  }
  const double p = (r.wins + 0.5 * r.draws) / n_games;
  r.win_rate_percent = 100.0 * p;
  r.stderr_percent = 100.0 * std::sqrt(p * (1.0 - p) / n_games);
  return r;
}

std::string match_csv_header() {
  return "game,agent_a,agent_b,games,wins,draws,losses,a_games_as_p1,"
         "win_rate_percent,stderr_percent\n";
}

std::string match_csv_row(const MatchResult& r) {
  std::ostringstream out;
  out << r.game_id << ',' << r.agent_a << ',' << r.agent_b << ',' << r.games << ',' << r.wins
      << ',' << r.draws << ',' << r.losses << ',' << r.a_games_as_p1 << ',' << r.win_rate_percent
      << ',' << r.stderr_percent << '\n';
  return out.str();
}

std::string match_text(const MatchResult& r) {
  std::ostringstream out;
  out << r.agent_a << " vs " << r.agent_b << " on " << r.game_id << " (" << r.games
      << " games, A as P1 in " << r.a_games_as_p1 << ")\n"
      << "  wins " << r.wins << ", draws " << r.draws << ", losses " << r.losses << '\n'
      << "  win rate " << r.win_rate_percent << "% +/- " << r.stderr_percent
      << "% (draws count half)\n";
  return out.str();
}

}  // namespace xoos::evaluation
