#include "xoos/games/leduc.hpp"

#include <algorithm>
#include <array>
#include <string>

namespace xoos::games {
namespace {

constexpr ActionId kFold = 0;
constexpr ActionId kCheckCall = 1;
constexpr ActionId kRaise = 2;

constexpr std::uint8_t kRecDeal = 1;
constexpr std::uint8_t kRecAction = 2;
constexpr std::uint8_t kRecBoard = 3;

constexpr int kRaiseSize[2] = {2, 4};

int pattern_slot(const char* seq, int len) {
  // Shared slot table for the 5 completed round patterns and their 5 nonempty
  // proper prefixes; a trailing fold is classified by the prefix before it.
  if (len > 0 && seq[len - 1] == 'f') --len;
  std::string s(seq, len);
  if (s == "k" || s == "kk") return 0;
  if (s == "r" || s == "krc") return 1;
  if (s == "kr" || s == "krrc") return 2;
  if (s == "rr" || s == "rc") return 3;
  if (s == "krr" || s == "rrc") return 4;
  return -1;  // empty
}

class LeducState final : public State {
 public:
  std::int8_t ranks[2] = {-1, -1};
  std::int8_t comm = -1;
  char seq[2][5] = {{0}, {0}};
  std::uint8_t slen[2] = {0, 0};
  std::int8_t folded = -1;
  std::int16_t committed[2] = {1, 1};

  static bool round_complete(const char* s, int len) {
    if (len < 2) return false;
    char last = s[len - 1];
    return last == 'c' || (s[0] == 'k' && s[1] == 'k');
  }

  int betting_round() const { return comm >= 0 ? 1 : 0; }

  bool is_terminal() const override {
    if (folded >= 0) return true;
    return comm >= 0 && round_complete(seq[1], slen[1]);
  }

  PlayerRole acting_player() const override {
    if (is_terminal()) throw std::logic_error("leduc: terminal state has no acting player");
    if (ranks[0] < 0 || ranks[1] < 0) return PlayerRole::Chance;
    if (comm < 0 && round_complete(seq[0], slen[0])) return PlayerRole::Chance;
    int r = betting_round();
    return slen[r] % 2 == 0 ? PlayerRole::Player1 : PlayerRole::Player2;
  }

  bool facing_raise() const {
    int r = betting_round();
    return slen[r] > 0 && seq[r][slen[r] - 1] == 'r';
  }

  int raises_this_round() const {
    int r = betting_round(), n = 0;
    for (int i = 0; i < slen[r]; ++i) n += seq[r][i] == 'r';
    return n;
  }

  std::vector<ActionId> legal_actions() const override {
    if (acting_player() == PlayerRole::Chance)
      throw std::logic_error("leduc: chance state has no decision actions");
    std::vector<ActionId> out;
    if (facing_raise()) out.push_back(kFold);
    out.push_back(kCheckCall);
    if (raises_this_round() < 2) out.push_back(kRaise);
    return out;
  }

  std::vector<std::pair<ActionId, double>> chance_outcomes() const override {
    if (acting_player() != PlayerRole::Chance)
      throw std::logic_error("leduc: no chance outcomes at a decision state");
    int used[3] = {0, 0, 0};
    if (ranks[0] >= 0) ++used[ranks[0]];
    if (ranks[1] >= 0) ++used[ranks[1]];
    if (comm >= 0) ++used[comm];
    int remaining = 6 - used[0] - used[1] - used[2];
    std::vector<std::pair<ActionId, double>> out;
    for (int rank = 0; rank < 3; ++rank)
      for (int copy = 0; copy < 2 - used[rank]; ++copy)
        out.emplace_back(rank * 2 + copy, 1.0 / remaining);
    return out;
  }

  StatePtr apply(ActionId action) const override {
    auto next = std::make_shared<LeducState>(*this);
    if (acting_player() == PlayerRole::Chance) {
      if (action < 0 || action > 5) throw std::invalid_argument("leduc: bad deal action");
      auto rank = static_cast<std::int8_t>(action / 2);
      if (ranks[0] < 0) next->ranks[0] = rank;
      else if (ranks[1] < 0) next->ranks[1] = rank;
      else next->comm = rank;
      return next;
    }
    int r = betting_round();
    int s = slen[r] % 2;
    char c;
    if (facing_raise()) {
      if (action == kFold) {
        c = 'f';
        next->folded = static_cast<std::int8_t>(s);
      } else if (action == kCheckCall) {
        c = 'c';
        next->committed[s] = committed[1 - s];
      } else if (action == kRaise && raises_this_round() < 2) {
        c = 'r';
        next->committed[s] = static_cast<std::int16_t>(committed[1 - s] + kRaiseSize[r]);
      } else {
        throw std::invalid_argument("leduc: illegal action");
      }
    } else {
      if (action == kCheckCall) {
        c = 'k';
      } else if (action == kRaise) {
        c = 'r';
        next->committed[s] = static_cast<std::int16_t>(committed[1 - s] + kRaiseSize[r]);
      } else {
        throw std::invalid_argument("leduc: illegal action");
      }
    }
    next->seq[r][next->slen[r]++] = c;
    return next;
  }

  double utility(PlayerRole seat) const override {
    if (!is_terminal()) throw std::logic_error("leduc: utility of non-terminal state");
    int s = seat_index(seat);
    if (folded >= 0) {
      double loss = committed[folded];
      return s == folded ? -loss : loss;
    }
    int winner;
    if (ranks[0] == comm) winner = 0;
    else if (ranks[1] == comm) winner = 1;
    else if (ranks[0] == ranks[1]) return 0.0;
    else winner = ranks[0] > ranks[1] ? 0 : 1;
    double stake = committed[1 - winner];
    return s == winner ? stake : -stake;
  }

  InfosetKey infoset_key(PlayerRole seat) const override {
    int s = seat_index(seat);
    InfosetKeyBuilder b(seat);
    if (ranks[s] >= 0) b.add_record({kRecDeal, static_cast<std::uint8_t>(ranks[s])});
    for (int i = 0; i < slen[0]; ++i)
      b.add_record({kRecAction, static_cast<std::uint8_t>(seq[0][i])});
    if (comm >= 0) b.add_record({kRecBoard, static_cast<std::uint8_t>(comm)});
    for (int i = 0; i < slen[1]; ++i)
      b.add_record({kRecAction, static_cast<std::uint8_t>(seq[1][i])});
    return b.take();
  }

  FeatureVector encode(PlayerRole seat) const override {
    FeatureVector v(23, 0.0);
    int s = seat_index(seat);
    if (ranks[s] >= 0) v[ranks[s]] = 1.0;
    if (comm >= 0) v[6 + comm] = 1.0;
    else v[6 + 6] = 1.0;
    for (int r = 0; r < 2; ++r) {
      int slot = pattern_slot(seq[r], slen[r]);
      if (slot >= 0) v[13 + 5 * r + slot] = 1.0;
    }
    return v;
  }

  std::string observation_string(PlayerRole viewer) const override {
    static const char* names = "JQK";
    std::string out = "leduc";
    if (viewer != PlayerRole::Chance) {
      int s = seat_index(viewer);
      out += " card=";
      out += ranks[s] >= 0 ? names[ranks[s]] : '?';
    }
    out += " board=";
    out += comm >= 0 ? names[comm] : '-';
    out += " pot=" + std::to_string(committed[0] + committed[1]);
    out += " round1=";
    out.append(seq[0], slen[0]);
    out += " round2=";
    out.append(seq[1], slen[1]);
    return out;
  }

  std::string to_string() const override {
    static const char* names = "JQK";
    std::string out = "leduc cards=";
    out += ranks[0] >= 0 ? names[ranks[0]] : '?';
    out += ranks[1] >= 0 ? names[ranks[1]] : '?';
    out += " board=";
    out += comm >= 0 ? names[comm] : '-';
    out += " seq=";
    out.append(seq[0], slen[0]);
    out += '/';
    out.append(seq[1], slen[1]);
    if (folded >= 0) out += " folded=p" + std::to_string(folded + 1);
    return out;
  }
};

// Public timeline tokens: round-1 chars, board rank (offset past chars), round-2 chars.
std::vector<int> public_tokens(const LeducState& s) {
  std::vector<int> t;
  for (int i = 0; i < s.slen[0]; ++i) t.push_back(s.seq[0][i]);
  if (s.comm >= 0) {
    t.push_back(256 + s.comm);
    for (int i = 0; i < s.slen[1]; ++i) t.push_back(s.seq[1][i]);
  }
  return t;
}

}  // namespace

StatePtr LeducGame::initial_state() const { return std::make_shared<LeducState>(); }

bool LeducGame::target_consistent(TargetingMode mode, const MatchHistory& observed,
                                  const State& prefix, ActionId action) const {
  if (mode == TargetingMode::None) return true;
  const auto& obs = static_cast<const LeducState&>(*observed.current());
  const auto& pre = static_cast<const LeducState&>(prefix);
  int searcher =
      mode == TargetingMode::InfosetTargeting ? seat_index(searcher_seat(observed)) : -1;

  std::vector<int> obs_tok = public_tokens(obs);
  std::vector<int> pre_tok = public_tokens(pre);
  for (std::size_t i = 0; i < std::min(pre_tok.size(), obs_tok.size()); ++i)
    if (pre_tok[i] != obs_tok[i]) return false;
  if (searcher >= 0 && pre.ranks[searcher] >= 0 && obs.ranks[searcher] >= 0 &&
      pre.ranks[searcher] != obs.ranks[searcher])
    return false;

  if (pre.ranks[0] < 0 || pre.ranks[1] < 0) {
    // Hole deals are private: unconstrained under PST, own card pinned under IST.
    if (mode == TargetingMode::InfosetTargeting) {
      int deal_seat = pre.ranks[0] < 0 ? 0 : 1;
      if (deal_seat == searcher && obs.ranks[searcher] >= 0)
        return action / 2 == obs.ranks[searcher];
    }
    return true;
  }

  std::size_t idx = pre_tok.size();
  if (idx >= obs_tok.size()) return true;

  int tok;
  if (pre.acting_player() == PlayerRole::Chance) {
    tok = 256 + action / 2;  // board deal
  } else if (pre.facing_raise()) {
    tok = action == kFold ? 'f' : action == kCheckCall ? 'c' : 'r';
  } else {
    tok = action == kCheckCall ? 'k' : 'r';
  }
  return tok == obs_tok[idx];
}

}  // namespace xoos::games
