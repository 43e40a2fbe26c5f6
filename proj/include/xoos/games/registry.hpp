#pragma once

#include <memory>
#include <string>
#include <vector>

#include "xoos/games/game.hpp"

namespace xoos::games {

// Registry ids: kuhn, leduc, goof6, goof13, goofN:<N>, liars1, liars2.
std::shared_ptr<const Game> make_game(const std::string& id);
std::vector<std::string> list_games();

struct GameDescription {
  std::string id;
  int encoding_dim;
  int max_actions;
  std::vector<std::string> targeting_modes;
  std::string default_targeting;
};

GameDescription describe(const Game& game);
std::string describe_text(const GameDescription& d);
std::string describe_json(const GameDescription& d);

}  // namespace xoos::games
