#include "xoos/games/kuhn.hpp"

#include <algorithm>
#include <array>

namespace xoos::games {
namespace {

constexpr ActionId kFold = 0;
constexpr ActionId kCheckCall = 1;
constexpr ActionId kBet = 2;

constexpr std::uint8_t kRecDeal = 1;
constexpr std::uint8_t kRecAction = 2;

class KuhnState final : public State, public std::enable_shared_from_this<KuhnState> {
 public:
  std::int8_t cards[2] = {-1, -1};
  std::array<char, 3> seq{};
  std::uint8_t len = 0;

  bool round_over() const {
    if (len < 2) return false;
    char last = seq[len - 1];
    if (last == 'f' || last == 'c') return true;
    return seq[0] == 'k' && seq[1] == 'k' && len == 2;
  }

  bool is_terminal() const override { return round_over(); }

  PlayerRole acting_player() const override {
    if (is_terminal()) throw std::logic_error("kuhn: terminal state has no acting player");
    if (cards[0] < 0 || cards[1] < 0) return PlayerRole::Chance;
    return len % 2 == 0 ? PlayerRole::Player1 : PlayerRole::Player2;
  }

  bool facing_bet() const { return len > 0 && seq[len - 1] == 'b'; }

  std::vector<ActionId> legal_actions() const override {
    if (acting_player() == PlayerRole::Chance)
      throw std::logic_error("kuhn: chance state has no decision actions");
    if (facing_bet()) return {kFold, kCheckCall};
    return {kCheckCall, kBet};
  }

  std::vector<std::pair<ActionId, double>> chance_outcomes() const override {
    if (cards[0] < 0) {
      return {{0, 1.0 / 3}, {1, 1.0 / 3}, {2, 1.0 / 3}};
    }
    if (cards[1] < 0) {
      std::vector<std::pair<ActionId, double>> out;
      for (ActionId r = 0; r < 3; ++r)
        if (r != cards[0]) out.emplace_back(r, 0.5);
      return out;
    }
    throw std::logic_error("kuhn: decision state has no chance outcomes");
  }

  StatePtr apply(ActionId action) const override {
    auto next = std::make_shared<KuhnState>(*this);
    if (cards[0] < 0) {
      if (action < 0 || action > 2) throw std::invalid_argument("kuhn: bad deal action");
      next->cards[0] = static_cast<std::int8_t>(action);
      return next;
    }
    if (cards[1] < 0) {
      if (action < 0 || action > 2 || action == cards[0])
        throw std::invalid_argument("kuhn: bad deal action");
      next->cards[1] = static_cast<std::int8_t>(action);
      return next;
    }
    char c;
    if (facing_bet()) {
      if (action == kFold) c = 'f';
      else if (action == kCheckCall) c = 'c';
      else throw std::invalid_argument("kuhn: illegal action facing bet");
    } else {
      if (action == kCheckCall) c = 'k';
      else if (action == kBet) c = 'b';
      else throw std::invalid_argument("kuhn: illegal action");
    }
    next->seq[next->len++] = c;
    return next;
  }

  int committed(int seat) const {
    int c = 1;
    for (int i = 0; i < len; ++i) {
      if (i % 2 != seat) continue;
      if (seq[i] == 'b' || seq[i] == 'c') ++c;
    }
    return c;
  }

  double utility(PlayerRole seat) const override {
    if (!is_terminal()) throw std::logic_error("kuhn: utility of non-terminal state");
    int s = seat_index(seat);
    char last = seq[len - 1];
    if (last == 'f') {
      int folder = (len - 1) % 2;
      double loss = committed(folder);
      return s == folder ? -loss : loss;
    }
    int winner = cards[0] > cards[1] ? 0 : 1;
    double stake = committed(1 - winner);
    return s == winner ? stake : -stake;
  }

  InfosetKey infoset_key(PlayerRole seat) const override {
    int s = seat_index(seat);
    InfosetKeyBuilder b(seat);
    if (cards[s] >= 0) b.add_record({kRecDeal, static_cast<std::uint8_t>(cards[s])});
    for (int i = 0; i < len; ++i)
      b.add_record({kRecAction, static_cast<std::uint8_t>(seq[i])});
    return b.take();
  }

  FeatureVector encode(PlayerRole seat) const override {
    static const std::array<std::string, 9> kSeqs = {"",   "k",  "b",  "kb", "kk",
                                                     "bc", "bf", "kbc", "kbf"};
    FeatureVector v(12, 0.0);
    int s = seat_index(seat);
    if (cards[s] >= 0) v[cards[s]] = 1.0;
    std::string cur(seq.data(), len);
    for (std::size_t i = 0; i < kSeqs.size(); ++i) {
      if (cur == kSeqs[i]) {
        v[3 + i] = 1.0;
        break;
      }
    }
    return v;
  }

  std::string observation_string(PlayerRole viewer) const override {
    static const char* names = "JQK";
    std::string out = "kuhn";
    if (viewer != PlayerRole::Chance) {
      int s = seat_index(viewer);
      out += " card=";
      out += cards[s] >= 0 ? names[cards[s]] : '?';
    }
    out += " seq=";
    out.append(seq.data(), len);
    return out;
  }

  std::string to_string() const override {
    static const char* names = "JQK";
    std::string out = "kuhn cards=";
    out += cards[0] >= 0 ? names[cards[0]] : '?';
    out += cards[1] >= 0 ? names[cards[1]] : '?';
    out += " seq=";
    out.append(seq.data(), len);
    return out;
  }
};

}  // namespace

StatePtr KuhnGame::initial_state() const { return std::make_shared<KuhnState>(); }

bool KuhnGame::target_consistent(TargetingMode mode, const MatchHistory& observed,
                                 const State& prefix, ActionId action) const {
  if (mode == TargetingMode::None) return true;
  const auto& obs = static_cast<const KuhnState&>(*observed.current());
  const auto& pre = static_cast<const KuhnState&>(prefix);
  int searcher =
      mode == TargetingMode::InfosetTargeting ? seat_index(searcher_seat(observed)) : -1;
  // Betting is public under both modes: the simulated sequence must track the
  // observed one until it has reached the observed length.
  for (int i = 0; i < std::min<int>(pre.len, obs.len); ++i)
    if (pre.seq[i] != obs.seq[i]) return false;
  if (searcher >= 0 && pre.cards[searcher] >= 0 && obs.cards[searcher] >= 0 &&
      pre.cards[searcher] != obs.cards[searcher])
    return false;
  if (pre.cards[0] < 0 || pre.cards[1] < 0) {
    if (mode == TargetingMode::InfosetTargeting) {
      int deal_seat = pre.cards[0] < 0 ? 0 : 1;
      if (deal_seat == searcher && obs.cards[searcher] >= 0)
        return action == obs.cards[searcher];
    }
    return true;
  }
  if (pre.len >= obs.len) return true;
  char c;
  if (pre.facing_bet()) c = action == kFold ? 'f' : 'c';
  else c = action == kCheckCall ? 'k' : 'b';
  return c == obs.seq[pre.len];
}

}  // namespace xoos::games
