#include "xoos/games/registry.hpp"

#include <nlohmann/json.hpp>

#include "xoos/games/goofspiel.hpp"
#include "xoos/games/kuhn.hpp"
#include "xoos/games/leduc.hpp"
#include "xoos/games/liars_dice.hpp"

namespace xoos::games {

std::shared_ptr<const Game> make_game(const std::string& id) {
  if (id == "kuhn") return std::make_shared<KuhnGame>();
  if (id == "leduc") return std::make_shared<LeducGame>();
  if (id == "goof6") return std::make_shared<GoofspielGame>(6);
  if (id == "goof13") return std::make_shared<GoofspielGame>(13);
  if (id == "liars1") return std::make_shared<LiarsDiceGame>(1);
  if (id == "liars2") return std::make_shared<LiarsDiceGame>(2);
  if (id.rfind("goofN:", 0) == 0) {
    int n;
    try {
      n = std::stoi(id.substr(6));
    } catch (const std::exception&) {
      throw std::invalid_argument("unknown game id: " + id);
    }
    return std::make_shared<GoofspielGame>(n);
  }
  std::string known;
  for (const auto& g : list_games()) known += (known.empty() ? "" : ", ") + g;
  throw std::invalid_argument("unknown game id: " + id + " (known: " + known + ")");
}

std::vector<std::string> list_games() {
  return {"kuhn", "leduc", "goof6", "goof13", "goofN:<N>", "liars1", "liars2"};
}

GameDescription describe(const Game& game) {
  GameDescription d;
  d.id = game.id();
  d.encoding_dim = game.encoding_dim();
  d.max_actions = game.max_actions();
  for (auto m : game.targeting_modes()) d.targeting_modes.push_back(targeting_mode_name(m));
  d.default_targeting = targeting_mode_name(game.default_targeting());
  return d;
}

std::string describe_text(const GameDescription& d) {
  std::string out;
  out += "game:              " + d.id + "\n";
  out += "encoding_dim:      " + std::to_string(d.encoding_dim) + "\n";
  out += "max_actions:       " + std::to_string(d.max_actions) + "\n";
  out += "targeting_modes:   ";
  for (std::size_t i = 0; i < d.targeting_modes.size(); ++i)
    out += (i ? ", " : "") + d.targeting_modes[i];
  out += "\ndefault_targeting: " + d.default_targeting + "\n";
  return out;
}

std::string describe_json(const GameDescription& d) {
  nlohmann::ordered_json j;
  j["game"] = d.id;
  j["encoding_dim"] = d.encoding_dim;
  j["max_actions"] = d.max_actions;
  j["targeting_modes"] = d.targeting_modes;
  j["default_targeting"] = d.default_targeting;
  return j.dump(2);
}

}  // namespace xoos::games
