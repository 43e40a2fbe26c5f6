#include "xoos/games/goofspiel.hpp"

#include <algorithm>
#include <stdexcept>

namespace xoos::games {
namespace {

constexpr std::uint8_t kRecBid = 1;
constexpr std::uint8_t kRecOutcome = 2;

// Round outcome from P1's perspective: 0 = P1 took the prize, 1 = tie, 2 = P2.
int outcome_p1(int p1_bid, int p2_bid) {
  if (p1_bid > p2_bid) return 0;
  if (p1_bid == p2_bid) return 1;
  return 2;
}

int flip(int outcome) { return 2 - outcome; }

class GoofState final : public State {
 public:
  std::int8_t n = 0;
  bool margin = false;
  std::uint16_t hands[2] = {0, 0};
  std::int8_t bids[2][13];
  std::uint8_t outcomes[13];
  std::int8_t pending = -1;
  std::uint8_t t = 0;
  std::int16_t points[2] = {0, 0};

  bool is_terminal() const override { return t == n; }

  PlayerRole acting_player() const override {
    if (is_terminal()) throw std::logic_error("goofspiel: terminal state has no acting player");
    return pending < 0 ? PlayerRole::Player1 : PlayerRole::Player2;
  }

  std::vector<ActionId> legal_actions() const override {
    int s = seat_index(acting_player());
    std::vector<ActionId> out;
    for (int r = 0; r < n; ++r)
      if (hands[s] & (1u << r)) out.push_back(r);
    return out;
  }

  std::vector<std::pair<ActionId, double>> chance_outcomes() const override {
    throw std::logic_error("goofspiel: no chance states");
  }

  StatePtr apply(ActionId action) const override {
    int s = seat_index(acting_player());
    if (action < 0 || action >= n || !(hands[s] & (1u << action)))
      throw std::invalid_argument("goofspiel: illegal bid");
    auto next = std::make_shared<GoofState>(*this);
    next->hands[s] &= static_cast<std::uint16_t>(~(1u << action));
    if (s == 0) {
      next->pending = static_cast<std::int8_t>(action);
      return next;
    }
    int oc = outcome_p1(pending, action);
    if (oc == 0) next->points[0] = static_cast<std::int16_t>(points[0] + t);
    if (oc == 2) next->points[1] = static_cast<std::int16_t>(points[1] + t);
    next->bids[0][t] = pending;
    next->bids[1][t] = static_cast<std::int8_t>(action);
    next->outcomes[t] = static_cast<std::uint8_t>(oc);
    next->pending = -1;
    next->t = static_cast<std::uint8_t>(t + 1);
    return next;
  }

  double utility(PlayerRole seat) const override {
    if (!is_terminal()) throw std::logic_error("goofspiel: utility of non-terminal state");
    double diff = points[0] - points[1];
    if (!margin) diff = diff > 0 ? 1.0 : diff < 0 ? -1.0 : 0.0;
    return seat_index(seat) == 0 ? diff : -diff;
  }

  InfosetKey infoset_key(PlayerRole seat) const override {
    int s = seat_index(seat);
    InfosetKeyBuilder b(seat);
    for (int u = 0; u < t; ++u) {
      b.add_record({kRecBid, static_cast<std::uint8_t>(bids[s][u])});
      int oc = s == 0 ? outcomes[u] : flip(outcomes[u]);
      b.add_record({kRecOutcome, static_cast<std::uint8_t>(oc)});
    }
    if (s == 0 && pending >= 0) b.add_record({kRecBid, static_cast<std::uint8_t>(pending)});
    return b.take();
  }

  FeatureVector encode(PlayerRole seat) const override {
    int s = seat_index(seat);
    FeatureVector v(5 * static_cast<std::size_t>(n), 0.0);
    for (int r = 0; r < n; ++r)
      if (hands[s] & (1u << r)) v[r] = 1.0;
    for (int u = 0; u < t; ++u) {
      int oc = s == 0 ? outcomes[u] : flip(outcomes[u]);
      v[n + 3 * u + oc] = 1.0;
    }
    if (t < n) v[4 * n + t] = 1.0;
    return v;
  }

  std::string observation_string(PlayerRole viewer) const override {
    std::string out = "goofspiel round=" + std::to_string(t + 1) + "/" + std::to_string(n);
    if (viewer == PlayerRole::Chance) return out;
    int s = seat_index(viewer);
    out += " hand=";
    for (int r = 0; r < n; ++r)
      if (hands[s] & (1u << r)) out += std::to_string(r) + ",";
    if (out.back() == ',') out.pop_back();
    out += " outcomes=";
    for (int u = 0; u < t; ++u) out += "wdl"[s == 0 ? outcomes[u] : flip(outcomes[u])];
    out += " points=" + std::to_string(points[s]) + ":" + std::to_string(points[1 - s]);
    return out;
  }

  std::string to_string() const override {
    std::string out = "goofspiel t=" + std::to_string(t) + " bids=";
    for (int u = 0; u < t; ++u)
      out += std::to_string(bids[0][u]) + "v" + std::to_string(bids[1][u]) + " ";
    if (pending >= 0) out += "pending=" + std::to_string(pending) + " ";
    out += "points=" + std::to_string(points[0]) + ":" + std::to_string(points[1]);
    return out;
  }
};

// Does hand (bitmask) admit distinct cards for rounds [from, to) such that the
// owner-vs-pinned-opponent relation reproduces each observed outcome? Hall's
// theorem over the <= 2^12 round subsets.
bool hall_feasible(const std::vector<std::uint16_t>& allowed, std::uint16_t hand) {
  int m = static_cast<int>(allowed.size());
  for (int sub = 1; sub < (1 << m); ++sub) {
    std::uint16_t uni = 0;
    int size = 0;
    for (int j = 0; j < m; ++j)
      if (sub & (1 << j)) {
        uni |= allowed[j];
        ++size;
      }
    if (__builtin_popcount(static_cast<unsigned>(uni & hand)) < size) return false;
  }
  return true;
}

}  // namespace

GoofspielGame::GoofspielGame(int n, bool margin_utility) : n_(n), margin_(margin_utility) {
  if (n < 2 || n > 13) throw std::invalid_argument("goofspiel: N must be in [2, 13]");
}

std::string GoofspielGame::id() const {
  if (n_ == 6 && !margin_) return "goof6";
  if (n_ == 13 && !margin_) return "goof13";
  return (margin_ ? "goofN-margin:" : "goofN:") + std::to_string(n_);
}

StatePtr GoofspielGame::initial_state() const {
  auto s = std::make_shared<GoofState>();
  s->n = static_cast<std::int8_t>(n_);
  s->margin = margin_;
  s->hands[0] = s->hands[1] = static_cast<std::uint16_t>((1u << n_) - 1);
  return s;
}

bool GoofspielGame::target_consistent(TargetingMode mode, const MatchHistory& observed,
                                      const State& prefix, ActionId action) const {
  if (mode == TargetingMode::None) return true;
  const auto& obs = static_cast<const GoofState&>(*observed.current());
  const auto& pre = static_cast<const GoofState&>(prefix);
  int u = pre.t;
  int horizon = std::min<int>(u, obs.t);

  if (mode == TargetingMode::PublicSetTargeting) {
    // Only round outcomes are public; one appears when P2's bid resolves a round.
    for (int v = 0; v < horizon; ++v)
      if (pre.outcomes[v] != obs.outcomes[v]) return false;
    if (pre.pending < 0 || u >= obs.t) return true;
    return outcome_p1(pre.pending, action) == obs.outcomes[u];
  }

  int s = seat_index(searcher_seat(observed));
  // Paths inside the searcher's infoset share its own bids and all outcomes.
  for (int v = 0; v < horizon; ++v)
    if (pre.bids[s][v] != obs.bids[s][v] || pre.outcomes[v] != obs.outcomes[v]) return false;
  if (s == 0 && pre.pending >= 0 && u < obs.t && pre.pending != obs.bids[0][u]) return false;

  int actor = seat_index(pre.acting_player());
  if (u >= obs.t) return true;
  if (actor == s) return action == obs.bids[s][u];

  // Opponent bid: must reproduce round u's observed outcome against the searcher's
  // pinned bid, and leave a hand that can still match every later observed round.
  int oc = actor == 0 ? outcome_p1(action, obs.bids[s][u]) : outcome_p1(pre.pending, action);
  if (oc != obs.outcomes[u]) return false;

  std::uint16_t hand = pre.hands[actor] & static_cast<std::uint16_t>(~(1u << action));
  std::vector<std::uint16_t> allowed;
  for (int v = u + 1; v < obs.t; ++v) {
    std::uint16_t mask = 0;
    for (int r = 0; r < n_; ++r) {
      if (!(hand & (1u << r))) continue;
      int o = actor == 0 ? outcome_p1(r, obs.bids[s][v]) : outcome_p1(obs.bids[s][v], r);
      if (o == obs.outcomes[v]) mask |= static_cast<std::uint16_t>(1u << r);
    }
    allowed.push_back(mask);
  }
  return hall_feasible(allowed, hand);
}

}  // namespace xoos::games
