#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <random>
#include <string>

#include "xoos/apprentice/checkpoint.hpp"
#include "xoos/apprentice/policy.hpp"
#include "xoos/games/game.hpp"
#include "xoos/oos/search.hpp"

namespace xoos::evaluation {

// One seat in one match. start_game resets all per-match state (search trees
// included); act is called only at the agent's own decision points.
class Agent {
 public:
  virtual ~Agent() = default;
  virtual void start_game(const games::Game& game, games::PlayerRole seat,
                          std::uint64_t seed) = 0;
  virtual games::ActionId act(const games::MatchHistory& history) = 0;
  virtual std::string name() const = 0;
};

using AgentFactory = std::function<std::unique_ptr<Agent>()>;

class RandomAgent final : public Agent {
 public:
  void start_game(const games::Game& game, games::PlayerRole seat, std::uint64_t seed) override;
  games::ActionId act(const games::MatchHistory& history) override;
  std::string name() const override { return "random"; }

 private:
  std::mt19937_64 rng_;
};

// Plays the network policy directly: greedy argmax (lowest id on ties) or
// sampled from the masked softmax.
class NetAgent final : public Agent {
 public:
  NetAgent(std::shared_ptr<const apprentice::NetworkParams> params, bool sample);
  void start_game(const games::Game& game, games::PlayerRole seat, std::uint64_t seed) override;
  games::ActionId act(const games::MatchHistory& history) override;
  std::string name() const override { return sample_ ? "net(sample)" : "net(greedy)"; }

 private:
  std::shared_ptr<const apprentice::NetworkParams> params_;
  bool sample_;
  games::PlayerRole seat_ = games::PlayerRole::Player1;
  std::mt19937_64 rng_;
};

// Full online search agent: runs cfg.simulations OOS episodes at every own
// decision, keeping one incrementally grown tree for the whole match, and
// samples its move from the returned average strategy.
class OosAgent final : public Agent {
 public:
  OosAgent(oos::SearchConfig cfg, std::shared_ptr<const oos::PlayoutPolicy> playout,
           std::string label);
  void start_game(const games::Game& game, games::PlayerRole seat, std::uint64_t seed) override;
  games::ActionId act(const games::MatchHistory& history) override;
  std::string name() const override { return label_; }

 private:
  oos::SearchConfig cfg_;
  std::shared_ptr<const oos::PlayoutPolicy> playout_;
  std::string label_;
  oos::SearchContext ctx_;
  std::mt19937_64 rng_;
};

// Agent specification grammar:
//   random                 uniform random
//   net:PATH               checkpoint policy, greedy
//   net:PATH:sample        checkpoint policy, sampled
//   oos:SIMS               online search, uniform playout (e.g. oos:10000)
//   oos:SIMS+net:PATH      online search with network playout
// Throws std::invalid_argument on malformed specs or on checkpoints whose
// dimensions or game id do not match `game`.
AgentFactory make_agent_factory(const std::string& spec, const games::Game& game);

}  // namespace xoos::evaluation
