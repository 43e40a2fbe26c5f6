#include "xoos/games/traverse.hpp"

#include <string>
#include <unordered_set>

namespace xoos::games {
namespace {

bool walk(const State& s, double reach,
          const std::function<bool(const State&, double)>& visit) {
  if (!visit(s, reach)) return false;
  if (s.is_terminal()) return true;
  if (s.acting_player() == PlayerRole::Chance) {
    for (const auto& [a, p] : s.chance_outcomes())
      if (!walk(*s.apply(a), reach * p, visit)) return false;
    return true;
  }
  for (ActionId a : s.legal_actions())
    if (!walk(*s.apply(a), reach, visit)) return false;
  return true;
}

}  // namespace

void for_each_state(const Game& game,
                    const std::function<bool(const State&, double)>& visit) {
  walk(*game.initial_state(), 1.0, visit);
}

std::unordered_map<InfosetKey, InfosetSummary, InfosetKeyHash> enumerate_infosets(
    const Game& game, bool track_states) {
  std::unordered_map<InfosetKey, InfosetSummary, InfosetKeyHash> out;
  std::unordered_map<InfosetKey, std::unordered_set<std::string>, InfosetKeyHash> members;
  for_each_state(game, [&](const State& s, double) {
    if (s.is_terminal() || s.acting_player() == PlayerRole::Chance) return true;
    InfosetKey key = s.infoset_key(s.acting_player());
    auto& sum = out[key];
    sum.legal_count = static_cast<int>(s.legal_actions().size());
    if (track_states) {
      // Full-information identity: both players' views together pin the state for
      // every game here (chance copy multiplicity is the only collapsed detail).
      std::string ident = s.infoset_key(PlayerRole::Player1).bytes;
      ident.push_back('\0');
      ident += s.infoset_key(PlayerRole::Player2).bytes;
      auto& set = members[key];
      set.insert(std::move(ident));
      sum.state_count = static_cast<int>(set.size());
    }
    return true;
  });
  return out;
}

std::size_t count_histories(const Game& game, std::size_t cap) {
  std::size_t n = 0;
  for_each_state(game, [&](const State&, double) {
    ++n;
    return n <= cap;
  });
  return n;
}

}  // namespace xoos::games
