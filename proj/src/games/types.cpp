#include "xoos/games/types.hpp"

namespace xoos::games {

std::string targeting_mode_name(TargetingMode m) {
  switch (m) {
    case TargetingMode::None: return "none";
    case TargetingMode::PublicSetTargeting: return "pst";
    case TargetingMode::InfosetTargeting: return "ist";
  }
  throw std::logic_error("bad targeting mode");
}

TargetingMode parse_targeting_mode(std::string_view name) {
  if (name == "none") return TargetingMode::None;
  if (name == "pst") return TargetingMode::PublicSetTargeting;
  if (name == "ist") return TargetingMode::InfosetTargeting;
  throw std::invalid_argument("unknown targeting mode: " + std::string(name) +
                              " (expected none|pst|ist)");
}

std::string InfosetKey::hex() const {
  static const char* digits = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (unsigned char c : bytes) {
    out.push_back(digits[c >> 4]);
    out.push_back(digits[c & 0xF]);
  }
  return out;
}

}  // namespace xoos::games
