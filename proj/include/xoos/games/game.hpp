#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "xoos/games/types.hpp"

namespace xoos::games {

class State;
using StatePtr = std::shared_ptr<const State>;

// Immutable game state. apply() returns a fresh state; callers share states freely.
class State {
 public:
  virtual ~State() = default;

  virtual bool is_terminal() const = 0;
  // Role to move; throws on terminal states.
  virtual PlayerRole acting_player() const = 0;
  // Legal decision actions, strictly ascending. Throws at chance/terminal states.
  virtual std::vector<ActionId> legal_actions() const = 0;
  // Chance outcomes with probabilities summing to 1. Throws at decision/terminal states.
  virtual std::vector<std::pair<ActionId, double>> chance_outcomes() const = 0;
  virtual StatePtr apply(ActionId action) const = 0;
  // Zero-sum terminal utility for the given seat; throws off-terminal or for Chance.
  virtual double utility(PlayerRole seat) const = 0;
  // Defined at every state (terminals included) for both seats.
  virtual InfosetKey infoset_key(PlayerRole seat) const = 0;
  // Fixed-length encoding of the seat's infoset; length == Game::encoding_dim().
  virtual FeatureVector encode(PlayerRole seat) const = 0;
  // What the given seat can see, for interactive play and debugging.
  virtual std::string observation_string(PlayerRole viewer) const = 0;
  // Full state, private info included (debugging / terminal reveal).
  virtual std::string to_string() const = 0;
};

class Game;

// A root-anchored action record plus the states it visits; the "observed history"
// handed to searchers and agents.
class MatchHistory {
 public:
  explicit MatchHistory(const Game& game);

  const Game& game() const { return *game_; }
  const StatePtr& current() const { return states_.back(); }
  const std::vector<ActionId>& actions() const { return actions_; }
  const std::vector<StatePtr>& states() const { return states_; }
  std::size_t size() const { return actions_.size(); }

  void push(ActionId action);

 private:
  const Game* game_;
  std::vector<ActionId> actions_;
  std::vector<StatePtr> states_;
};

class Game {
 public:
  virtual ~Game() = default;

  virtual std::string id() const = 0;
  virtual StatePtr initial_state() const = 0;
  // Dense upper bound on decision ActionIds; net output dimension.
  virtual int max_actions() const = 0;
  virtual int encoding_dim() const = 0;
  virtual std::vector<TargetingMode> targeting_modes() const = 0;
  virtual TargetingMode default_targeting() const = 0;

  // Whether taking `action` at `prefix` can still lead into the target set defined
  // by `mode` and the real observed history. Exact for public events and the
  // searcher's own private information; for hidden opponent information games may
  // use any sound feasibility test (documented per game).
  virtual bool target_consistent(TargetingMode mode, const MatchHistory& observed,
                                 const State& prefix, ActionId action) const = 0;

  bool supports(TargetingMode mode) const {
    for (auto m : targeting_modes())
      if (m == mode) return true;
    return false;
  }
};

inline MatchHistory::MatchHistory(const Game& game) : game_(&game) {
  states_.push_back(game.initial_state());
}

inline void MatchHistory::push(ActionId action) {
  actions_.push_back(action);
  states_.push_back(states_.back()->apply(action));
}

// The seat whose turn it is at the end of the observed history; throws unless the
// current state is a decision state.
inline PlayerRole searcher_seat(const MatchHistory& observed) {
  const State& s = *observed.current();
  if (s.is_terminal()) throw std::logic_error("observed history ends at a terminal state");
  PlayerRole p = s.acting_player();
  if (p == PlayerRole::Chance) throw std::logic_error("observed history ends at a chance state");
  return p;
}

}  // namespace xoos::games
