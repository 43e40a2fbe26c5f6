#include "xoos/games/liars_dice.hpp"

#include <algorithm>
#include <array>

namespace xoos::games {
namespace {

constexpr std::uint8_t kRecRoll = 1;
constexpr std::uint8_t kRecBid = 2;

struct RollTable {
  // Sorted multisets of `dice` faces, lexicographic; probability of multiset m is
  // (#orderings)/6^dice.
  std::vector<std::array<std::uint8_t, 6>> counts;
  std::vector<double> prob;
};

const RollTable& roll_table(int dice) {
  static const RollTable one = [] {
    RollTable t;
    for (int f = 0; f < 6; ++f) {
      std::array<std::uint8_t, 6> c{};
      c[f] = 1;
      t.counts.push_back(c);
      t.prob.push_back(1.0 / 6);
    }
    return t;
  }();
  static const RollTable two = [] {
    RollTable t;
    for (int a = 0; a < 6; ++a)
      for (int b = a; b < 6; ++b) {
        std::array<std::uint8_t, 6> c{};
        ++c[a];
        ++c[b];
        t.counts.push_back(c);
        t.prob.push_back(a == b ? 1.0 / 36 : 2.0 / 36);
      }
    return t;
  }();
  if (dice == 1) return one;
  if (dice == 2) return two;
  throw std::logic_error("liars dice: unsupported dice count");
}

class LiarsState final : public State {
 public:
  std::int8_t n = 0;
  std::int8_t roll_id[2] = {-1, -1};
  std::array<std::uint8_t, 6> counts[2] = {{}, {}};
  std::uint8_t bids[25];
  std::int8_t nbids = 0;
  bool called = false;

  ActionId liar_action() const { return 12 * n; }

  bool is_terminal() const override { return called; }

  PlayerRole acting_player() const override {
    if (called) throw std::logic_error("liars dice: terminal state has no acting player");
    if (roll_id[0] < 0 || roll_id[1] < 0) return PlayerRole::Chance;
    return nbids % 2 == 0 ? PlayerRole::Player1 : PlayerRole::Player2;
  }

  std::vector<ActionId> legal_actions() const override {
    if (acting_player() == PlayerRole::Chance)
      throw std::logic_error("liars dice: chance state has no decision actions");
    std::vector<ActionId> out;
    ActionId from = nbids == 0 ? 0 : bids[nbids - 1] + 1;
    for (ActionId a = from; a < liar_action(); ++a) out.push_back(a);
    if (nbids > 0) out.push_back(liar_action());
    return out;
  }

  std::vector<std::pair<ActionId, double>> chance_outcomes() const override {
    if (acting_player() != PlayerRole::Chance)
      throw std::logic_error("liars dice: no chance outcomes at a decision state");
    const RollTable& t = roll_table(n);
    std::vector<std::pair<ActionId, double>> out;
    for (std::size_t i = 0; i < t.prob.size(); ++i)
      out.emplace_back(static_cast<ActionId>(i), t.prob[i]);
    return out;
  }

  StatePtr apply(ActionId action) const override {
    auto next = std::make_shared<LiarsState>(*this);
    if (acting_player() == PlayerRole::Chance) {
      const RollTable& t = roll_table(n);
      if (action < 0 || action >= static_cast<ActionId>(t.prob.size()))
        throw std::invalid_argument("liars dice: bad roll outcome");
      int s = roll_id[0] < 0 ? 0 : 1;
      next->roll_id[s] = static_cast<std::int8_t>(action);
      next->counts[s] = t.counts[action];
      return next;
    }
    if (action == liar_action()) {
      if (nbids == 0) throw std::invalid_argument("liars dice: liar before any bid");
      next->called = true;
      return next;
    }
    ActionId from = nbids == 0 ? 0 : bids[nbids - 1] + 1;
    if (action < from || action >= liar_action())
      throw std::invalid_argument("liars dice: illegal bid");
    next->bids[next->nbids++] = static_cast<std::uint8_t>(action);
    return next;
  }

  double utility(PlayerRole seat) const override {
    if (!called) throw std::logic_error("liars dice: utility of non-terminal state");
    int bid = bids[nbids - 1];
    int q = bid / 6 + 1;
    int f = bid % 6;  // 0-based face index; 5 = wild six
    int have = counts[0][f] + counts[1][f];
    if (f != 5) have += counts[0][5] + counts[1][5];
    int caller = nbids % 2;
    int loser = have >= q ? caller : 1 - caller;
    return seat_index(seat) == loser ? -1.0 : 1.0;
  }

  InfosetKey infoset_key(PlayerRole seat) const override {
    int s = seat_index(seat);
    InfosetKeyBuilder b(seat);
    if (roll_id[s] >= 0) b.add_record({kRecRoll, static_cast<std::uint8_t>(roll_id[s])});
    for (int i = 0; i < nbids; ++i) b.add_record({kRecBid, bids[i]});
    if (called) b.add_record({kRecBid, static_cast<std::uint8_t>(liar_action())});
    return b.take();
  }

  FeatureVector encode(PlayerRole seat) const override {
    int s = seat_index(seat);
    FeatureVector v(6 + 12 * static_cast<std::size_t>(n) + 1, 0.0);
    for (int f = 0; f < 6; ++f) v[f] = counts[s][f];
    for (int i = 0; i < nbids; ++i) v[6 + bids[i]] = 1.0;
    if (!called && roll_id[0] >= 0 && roll_id[1] >= 0 && nbids % 2 == s) v[6 + 12 * n] = 1.0;
    return v;
  }

  std::string observation_string(PlayerRole viewer) const override {
    std::string out = "liars" + std::to_string(n);
    if (viewer != PlayerRole::Chance) {
      int s = seat_index(viewer);
      out += " dice=";
      if (roll_id[s] >= 0) {
        for (int f = 0; f < 6; ++f)
          for (int k = 0; k < counts[s][f]; ++k) out += std::to_string(f + 1);
      } else {
        out += "?";
      }
    }
    out += " bids=";
    for (int i = 0; i < nbids; ++i) {
      out += std::to_string(bids[i] / 6 + 1) + "x" + std::to_string(bids[i] % 6 + 1);
      if (i + 1 < nbids) out += ",";
    }
    if (called) out += ",liar";
    return out;
  }

  std::string to_string() const override {
    std::string out = observation_string(PlayerRole::Chance) + " rolls=";
    for (int s = 0; s < 2; ++s) {
      for (int f = 0; f < 6; ++f)
        for (int k = 0; k < counts[s][f]; ++k) out += std::to_string(f + 1);
      if (s == 0) out += "/";
    }
    return out;
  }
};

}  // namespace

LiarsDiceGame::LiarsDiceGame(int dice_per_player) : n_(dice_per_player) {
  if (n_ < 1 || n_ > 2) throw std::invalid_argument("liars dice: dice per player must be 1 or 2");
}

StatePtr LiarsDiceGame::initial_state() const {
  auto s = std::make_shared<LiarsState>();
  s->n = static_cast<std::int8_t>(n_);
  return s;
}

bool LiarsDiceGame::target_consistent(TargetingMode mode, const MatchHistory& observed,
                                      const State& prefix, ActionId action) const {
  if (mode == TargetingMode::None) return true;
  const auto& obs = static_cast<const LiarsState&>(*observed.current());
  const auto& pre = static_cast<const LiarsState&>(prefix);
  int searcher =
      mode == TargetingMode::InfosetTargeting ? seat_index(searcher_seat(observed)) : -1;

  for (int i = 0; i < std::min(pre.nbids, obs.nbids); ++i)
    if (pre.bids[i] != obs.bids[i]) return false;
  if (searcher >= 0 && pre.roll_id[searcher] >= 0 && obs.roll_id[searcher] >= 0 &&
      pre.roll_id[searcher] != obs.roll_id[searcher])
    return false;

  if (pre.roll_id[0] < 0 || pre.roll_id[1] < 0) {
    // Rolls are private: free under PST, own roll pinned under IST.
    if (mode == TargetingMode::InfosetTargeting) {
      int roll_seat = pre.roll_id[0] < 0 ? 0 : 1;
      if (roll_seat == searcher && obs.roll_id[searcher] >= 0)
        return action == obs.roll_id[searcher];
    }
    return true;
  }
  if (pre.nbids >= obs.nbids) return true;
  return action == obs.bids[pre.nbids];
}

}  // namespace xoos::games
