#include "xoos/oos/search.hpp"

#include <nlohmann/json.hpp>

#include <memory>
#include <stdexcept>

namespace xoos::oos {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

void validate_observed(const games::Game& game, const games::MatchHistory& observed) {
  if (observed.game().id() != game.id())
    throw std::invalid_argument("run_search: observed history belongs to game '" +
                                observed.game().id() + "', not '" + game.id() + "'");
  // Replay; apply() rejects any action that is illegal where it appears.
  games::MatchHistory replay(game);
  for (games::ActionId a : observed.actions()) replay.push(a);
  if (replay.current()->is_terminal())
    throw std::invalid_argument("run_search: observed history ends at a terminal state");
}

bool targeting_active(const SearchConfig& cfg, const games::Game& game,
                      const games::MatchHistory& observed) {
  if (cfg.targeting == games::TargetingMode::None || cfg.delta <= 0.0) return false;
  if (!game.supports(cfg.targeting))
    throw std::invalid_argument("game '" + game.id() + "' does not support targeting mode " +
                                games::targeting_mode_name(cfg.targeting));
  const games::State& end = *observed.current();
  if (end.is_terminal() || end.acting_player() == games::PlayerRole::Chance)
    throw std::invalid_argument("targeted search requires the observed history to end at a "
                                "decision point");
  return true;
}

games::PlayerRole explorer_for_episode(std::uint64_t episode_index) {
  return episode_index % 2 == 0 ? games::PlayerRole::Player1 : games::PlayerRole::Player2;
}

void run_one(SearchContext& ctx, const games::Game& game, const games::MatchHistory& observed,
             const SearchConfig& cfg, EvalBackend& backend, std::uint64_t seed,
             games::PlayerRole explorer, bool targeted) {
  EpisodeEnv env;
  env.game = &game;
  env.observed = &observed;
  env.tree = &ctx.tree;
  env.cfg = &cfg;
  env.explorer = explorer;
  env.targeting_active = targeted;
  env.r_use = targeted ? ctx.ema.r : 1.0;
  EpisodeMachine m(env, seed);
  EvalRequestQueue q;
  while (m.advance() == EpisodeMachine::Status::NeedEval) {
    q.enqueue(&m.request());
    backend.flush(q);
    m.deliver();
  }
  ema_update(ctx.ema, m.s1(), m.s2(), cfg.beta_ema);
  ++ctx.tree.episodes;
}

}  // namespace

void simulate_once(SearchContext& ctx, const games::Game& game,
                   const games::MatchHistory& observed, const SearchConfig& cfg,
                   const PlayoutPolicy& playout, std::mt19937_64& rng,
                   games::PlayerRole explorer) {
  SyncPolicyBackend backend(playout);
  bool targeted = targeting_active(cfg, game, observed);
  run_one(ctx, game, observed, cfg, backend, rng(), explorer, targeted);
}

void simulate_once(SearchContext& ctx, const games::Game& game,
                   const games::MatchHistory& observed, const SearchConfig& cfg,
                   const PlayoutPolicy& playout, std::mt19937_64& rng) {
  const games::State& end = *observed.current();
  games::PlayerRole explorer = games::PlayerRole::Player1;
  if (!end.is_terminal() && end.acting_player() != games::PlayerRole::Chance)
    explorer = end.acting_player();
  simulate_once(ctx, game, observed, cfg, playout, rng, explorer);
}

std::vector<double> run_search_with_backend(SearchContext& ctx, const games::Game& game,
                                            const games::MatchHistory& observed,
                                            const SearchConfig& cfg, EvalBackend& backend,
                                            std::mt19937_64& rng, int concurrency) {
  validate_observed(game, observed);
  const games::State& end = *observed.current();
  bool at_decision = end.acting_player() != games::PlayerRole::Chance;
  if (!at_decision && cfg.targeting != games::TargetingMode::None)
    throw std::invalid_argument("run_search: targeted search requires a decision endpoint");
  bool targeted = targeting_active(cfg, game, observed);
  if (concurrency < 1) throw std::invalid_argument("run_search: concurrency must be >= 1");

  struct Slot {
    std::unique_ptr<EpisodeMachine> m;
  };
  std::vector<Slot> slots(static_cast<std::size_t>(concurrency));
  EvalRequestQueue queue;
  std::uint64_t next = 0, done = 0;
  const auto total = static_cast<std::uint64_t>(cfg.simulations);

  while (done < total) {
    bool progressed = false;
    for (auto& slot : slots) {
      if (!slot.m && next < total) {
        EpisodeEnv env;
        env.game = &game;
        env.observed = &observed;
        env.tree = &ctx.tree;
        env.cfg = &cfg;
        env.explorer = explorer_for_episode(next);
        env.targeting_active = targeted;
        env.r_use = targeted ? ctx.ema.r : 1.0;
        slot.m = std::make_unique<EpisodeMachine>(env, splitmix64(rng()));
        ++next;
      }
      if (!slot.m || slot.m->awaiting()) continue;
      progressed = true;
      if (slot.m->advance() == EpisodeMachine::Status::Finished) {
        ema_update(ctx.ema, slot.m->s1(), slot.m->s2(), cfg.beta_ema);
        ++ctx.tree.episodes;
        ++done;
        slot.m.reset();
      } else {
        queue.enqueue(&slot.m->request());
      }
    }
    if (!progressed) {
      backend.flush(queue);
      for (auto& slot : slots)
        if (slot.m && slot.m->awaiting() && slot.m->request().answered) slot.m->deliver();
    }
  }

  if (!at_decision) return {};
  games::PlayerRole searcher = end.acting_player();
  auto legal = end.legal_actions();
  std::vector<double> dist;
  if (const NodeStats* node = ctx.tree.find(end.infoset_key(searcher)))
    dist = average_strategy(*node);
  else
    dist.assign(legal.size(), 1.0 / static_cast<double>(legal.size()));
  if (cfg.targeting != games::TargetingMode::None && cfg.gamma > 0.0)
    dist = mix_with_uniform(dist, cfg.gamma);
  return dist;
}

std::vector<double> run_search(SearchContext& ctx, const games::Game& game,
                               const games::MatchHistory& observed, const SearchConfig& cfg,
                               const PlayoutPolicy& playout, std::mt19937_64& rng,
                               int concurrency) {
  SyncPolicyBackend backend(playout);
  return run_search_with_backend(ctx, game, observed, cfg, backend, rng, concurrency);
}

std::string diagnostics_json(const SearchContext& ctx, const games::Game& game,
                             const games::MatchHistory& observed) {
  nlohmann::ordered_json j;
  j["game"] = game.id();
  j["node_count"] = ctx.tree.node_count();
  j["episodes"] = ctx.tree.episodes;
  j["r"] = ctx.ema.r;
  const games::State& end = *observed.current();
  if (!end.is_terminal() && end.acting_player() != games::PlayerRole::Chance) {
    games::PlayerRole p = end.acting_player();
    auto legal = end.legal_actions();
    std::vector<double> dist;
    if (const NodeStats* node = ctx.tree.find(end.infoset_key(p)))
      dist = average_strategy(*node);
    else
      dist.assign(legal.size(), 1.0 / static_cast<double>(legal.size()));
    nlohmann::ordered_json strat = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < legal.size(); ++i)
      strat[std::to_string(legal[i])] = dist[i];
    j["root_strategy"] = strat;
  }
  return j.dump(2);
}

}  // namespace xoos::oos
