#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace xoos::games {

enum class PlayerRole : std::uint8_t { Player1 = 0, Player2 = 1, Chance = 2 };

constexpr PlayerRole other(PlayerRole p) {
  if (p == PlayerRole::Player1) return PlayerRole::Player2;
  if (p == PlayerRole::Player2) return PlayerRole::Player1;
  return PlayerRole::Chance;
}

inline int seat_index(PlayerRole p) {
  if (p == PlayerRole::Chance) throw std::logic_error("chance has no seat index");
  return static_cast<int>(p);
}

inline std::string role_name(PlayerRole p) {
  switch (p) {
    case PlayerRole::Player1: return "player1";
    case PlayerRole::Player2: return "player2";
    default: return "chance";
  }
}

// Action identifiers index net output slots directly, so every game keeps its
// decision ids in a small dense range [0, max_actions).
using ActionId = std::int32_t;

using FeatureVector = std::vector<double>;
using ActionMask = std::vector<std::uint8_t>;

enum class TargetingMode : std::uint8_t { None = 0, PublicSetTargeting = 1, InfosetTargeting = 2 };

std::string targeting_mode_name(TargetingMode m);
TargetingMode parse_targeting_mode(std::string_view name);

// Infoset identity: one owner byte, then one length-prefixed record appended per
// observation event. Appending (never rewriting) records makes every key a byte
// prefix of each later key of the same player along a playthrough, which is what
// the perfect-recall tests check.
struct InfosetKey {
  std::string bytes;

  bool operator==(const InfosetKey&) const = default;
  PlayerRole owner() const {
    if (bytes.empty()) throw std::logic_error("empty infoset key");
    return static_cast<PlayerRole>(static_cast<std::uint8_t>(bytes[0]));
  }
  bool extends(const InfosetKey& earlier) const {
    return bytes.size() >= earlier.bytes.size() &&
           bytes.compare(0, earlier.bytes.size(), earlier.bytes) == 0;
  }
  std::string hex() const;
};

struct InfosetKeyHash {
  std::size_t operator()(const InfosetKey& k) const noexcept {
    // FNV-1a.
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : k.bytes) {
      h ^= c;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

class InfosetKeyBuilder {
 public:
  explicit InfosetKeyBuilder(PlayerRole owner) { key_.bytes.push_back(static_cast<char>(owner)); }
  explicit InfosetKeyBuilder(InfosetKey base) : key_(std::move(base)) {}

  InfosetKeyBuilder& add_record(std::string_view payload) {
    if (payload.size() > 255) throw std::logic_error("observation record too long");
    key_.bytes.push_back(static_cast<char>(payload.size()));
    key_.bytes.append(payload);
    return *this;
  }
  InfosetKeyBuilder& add_record(std::initializer_list<std::uint8_t> payload) {
    std::string s;
    for (auto b : payload) s.push_back(static_cast<char>(b));
    return add_record(std::string_view(s));
  }
  const InfosetKey& key() const { return key_; }
  InfosetKey take() { return std::move(key_); }

 private:
  InfosetKey key_;
};

}  // namespace xoos::games
