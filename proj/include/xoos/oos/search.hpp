#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "xoos/games/game.hpp"
#include "xoos/oos/config.hpp"
#include "xoos/oos/episode.hpp"
#include "xoos/oos/eval_queue.hpp"
#include "xoos/oos/playout.hpp"
#include "xoos/oos/tree.hpp"

namespace xoos::oos {

// Mutable search state for one agent and one match: the incrementally grown tree
// plus the targeting EMA. Reset between matches, retained across decisions.
struct SearchContext {
  SearchTree tree;
  EmaRatio ema;
};

// One root-to-terminal episode: samples, expands at most one node per player,
// applies the importance-weighted regret/average updates, updates the EMA.
// `explorer` picks the epsilon-exploring seat (the searcher's seat by default
// when the observed history ends at the searcher's decision point).
void simulate_once(SearchContext& ctx, const games::Game& game,
                   const games::MatchHistory& observed, const SearchConfig& cfg,
                   const PlayoutPolicy& playout, std::mt19937_64& rng);
void simulate_once(SearchContext& ctx, const games::Game& game,
                   const games::MatchHistory& observed, const SearchConfig& cfg,
                   const PlayoutPolicy& playout, std::mt19937_64& rng,
                   games::PlayerRole explorer);

// Runs cfg.simulations episodes (alternating the exploring seat per episode) and
// returns the average strategy at the searcher's current infoset over its legal
// actions, mixed with uniform by cfg.gamma when targeting is configured. With
// targeting None the observed history may instead end at any non-terminal state
// (solver-style use); the returned distribution is then empty unless the end
// state is a decision point. Throws std::invalid_argument if the observed
// history is inconsistent with the game.
std::vector<double> run_search(SearchContext& ctx, const games::Game& game,
                               const games::MatchHistory& observed, const SearchConfig& cfg,
                               const PlayoutPolicy& playout, std::mt19937_64& rng,
                               int concurrency = 20);

// Same driver with an externally controlled evaluation backend (e.g. batched net
// evaluation). run_search(...) is exactly this with a per-request sync backend.
std::vector<double> run_search_with_backend(SearchContext& ctx, const games::Game& game,
                                            const games::MatchHistory& observed,
                                            const SearchConfig& cfg, EvalBackend& backend,
                                            std::mt19937_64& rng, int concurrency = 20);

// Plain-text/JSON diagnostics: node count, episodes run, r, and the average
// strategy at the observed decision point when one is tabled.
std::string diagnostics_json(const SearchContext& ctx, const games::Game& game,
                             const games::MatchHistory& observed);

}  // namespace xoos::oos
