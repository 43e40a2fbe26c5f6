#include "xoos/evaluation/best_response.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "xoos/games/traverse.hpp"

namespace xoos::evaluation {
namespace {

struct WeightedState {
  games::StatePtr state;
  double weight;  // chance x opponent reach
};

struct InfosetGroup {
  int depth = 0;  // own decisions taken before this infoset
  std::vector<WeightedState> states;
};

// Shared profile-distribution cache: one entry per opponent infoset.
class ProfileCache {
 public:
  ProfileCache(const StrategyProfile& profile, games::PlayerRole opp_seat)
      : profile_(&profile), opp_seat_(opp_seat) {}

  const std::vector<double>& dist(const games::State& state) {
    games::InfosetKey key = state.infoset_key(opp_seat_);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    std::vector<double> d = profile_->action_probabilities(state, opp_seat_);
    if (d.size() != state.legal_actions().size())
      throw std::logic_error("best_response: profile arity does not match state");
    return cache_.emplace(std::move(key), std::move(d)).first->second;
  }

 private:
  const StrategyProfile* profile_;
  games::PlayerRole opp_seat_;
  std::unordered_map<games::InfosetKey, std::vector<double>, games::InfosetKeyHash> cache_;
};

class BestResponse {
 public:
  BestResponse(const games::Game& game, const StrategyProfile& profile,
               games::PlayerRole br_seat)
      : game_(&game),
        br_seat_(br_seat),
        opp_seat_(games::other(br_seat)),
        cache_(profile, games::other(br_seat)) {}

  double solve() {
    collect(game_->initial_state(), 1.0, 0);

    std::vector<const games::InfosetKey*> order;
    order.reserve(groups_.size());
    for (const auto& [key, group] : groups_) order.push_back(&key);
    std::sort(order.begin(), order.end(),
              [this](const games::InfosetKey* a, const games::InfosetKey* b) {
                const int da = groups_.at(*a).depth, db = groups_.at(*b).depth;
                if (da != db) return da > db;
                return a->bytes < b->bytes;
              });

    for (const games::InfosetKey* key : order) {
      const InfosetGroup& group = groups_.at(*key);
      const auto legal = group.states.front().state->legal_actions();
      int best = 0;
      double best_q = -1e300;
      for (std::size_t j = 0; j < legal.size(); ++j) {
        double q = 0.0;
        for (const WeightedState& ws : group.states)
          q += ws.weight * value(*ws.state->apply(legal[j]));
        if (q > best_q + 1e-12) {
          best_q = q;
          best = static_cast<int>(j);
        }
      }
      decided_.emplace(*key, best);
    }
    return value(*game_->initial_state());
  }

 private:
  void collect(const games::StatePtr& state, double weight, int depth) {
    if (state->is_terminal()) return;
    const games::PlayerRole actor = state->acting_player();
    if (actor == games::PlayerRole::Chance) {
      for (const auto& [a, p] : state->chance_outcomes()) collect(state->apply(a), weight * p, depth);
      return;
    }
    if (actor == br_seat_) {
      InfosetGroup& group = groups_[state->infoset_key(br_seat_)];
      group.depth = depth;
      group.states.push_back({state, weight});
      for (games::ActionId a : state->legal_actions()) collect(state->apply(a), weight, depth + 1);
      return;
    }
    const std::vector<double>& d = cache_.dist(*state);
    const auto legal = state->legal_actions();
    for (std::size_t i = 0; i < legal.size(); ++i)
      collect(state->apply(legal[i]), weight * d[i], depth);
  }

  // Expected utility for br_seat below `state` with all own decisions fixed.
  double value(const games::State& state) {
    if (state.is_terminal()) return state.utility(br_seat_);
    const games::PlayerRole actor = state.acting_player();
    if (actor == games::PlayerRole::Chance) {
      double v = 0.0;
      for (const auto& [a, p] : state.chance_outcomes()) v += p * value(*state.apply(a));
      return v;
    }
    if (actor == br_seat_) {
      const auto legal = state.legal_actions();
      auto it = decided_.find(state.infoset_key(br_seat_));
      if (it == decided_.end())
        throw std::logic_error("best_response: undecided own infoset reached");
      return value(*state.apply(legal[it->second]));
    }
    const std::vector<double>& d = cache_.dist(state);
    const auto legal = state.legal_actions();
    double v = 0.0;
    for (std::size_t i = 0; i < legal.size(); ++i) {
      if (d[i] == 0.0) continue;
      v += d[i] * value(*state.apply(legal[i]));
    }
    return v;
  }

  const games::Game* game_;
  games::PlayerRole br_seat_;
  games::PlayerRole opp_seat_;
  ProfileCache cache_;
  std::unordered_map<games::InfosetKey, InfosetGroup, games::InfosetKeyHash> groups_;
  std::unordered_map<games::InfosetKey, int, games::InfosetKeyHash> decided_;
};

void check_size(const games::Game& game, std::size_t max_histories) {
  const std::size_t n = games::count_histories(game, max_histories + 1);
  if (n > max_histories)
    throw std::invalid_argument("game too large for exact best response: " + game.id() +
                                " exceeds " + std::to_string(max_histories) + " histories");
}

}  // namespace

double best_response_value(const games::Game& game, const StrategyProfile& profile,
                           games::PlayerRole br_seat, std::size_t max_histories) {
  if (br_seat == games::PlayerRole::Chance)
    throw std::invalid_argument("best_response_value: br_seat must be a player");
  check_size(game, max_histories);
  return BestResponse(game, profile, br_seat).solve();
}

double exploitability(const games::Game& game, const StrategyProfile& profile,
                      std::size_t max_histories) {
  check_size(game, max_histories);
  return BestResponse(game, profile, games::PlayerRole::Player1).solve() +
         BestResponse(game, profile, games::PlayerRole::Player2).solve();
}

}  // namespace xoos::evaluation
