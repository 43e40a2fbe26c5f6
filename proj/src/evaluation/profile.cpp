#include "xoos/evaluation/profile.hpp"

#include <stdexcept>

namespace xoos::evaluation {
namespace {

std::vector<double> uniform_over(std::size_t n) {
  return std::vector<double>(n, 1.0 / static_cast<double>(n));
}

}  // namespace

std::vector<double> UniformProfile::action_probabilities(const games::State& state,
                                                         games::PlayerRole) const {
  return uniform_over(state.legal_actions().size());
}

std::vector<double> TreeProfile::action_probabilities(const games::State& state,
                                                      games::PlayerRole seat) const {
  const std::size_t n = state.legal_actions().size();
  const oos::NodeStats* node = tree_->find(state.infoset_key(seat));
  if (!node) return uniform_over(n);
  if (static_cast<std::size_t>(node->action_count()) != n)
    throw std::logic_error("TreeProfile: node arity does not match state");
  return oos::average_strategy(*node);
}

NetProfile::NetProfile(std::shared_ptr<const apprentice::NetworkParams> params,
                       const games::Game& game)
    : params_(std::move(params)), max_actions_(game.max_actions()) {
  if (!params_) throw std::invalid_argument("NetProfile: null parameters");
  if (params_->config.input_dim != game.encoding_dim() ||
      params_->config.output_dim != game.max_actions())
    throw std::invalid_argument("NetProfile: network dimensions do not match game");
}

std::vector<double> NetProfile::action_probabilities(const games::State& state,
                                                     games::PlayerRole seat) const {
  const auto legal = state.legal_actions();
  games::ActionMask mask(max_actions_, 0);
  for (games::ActionId a : legal) mask[a] = 1;
  const std::vector<double> slots = apprentice::forward(*params_, state.encode(seat), mask);
  std::vector<double> out(legal.size());
  for (std::size_t i = 0; i < legal.size(); ++i) out[i] = slots[legal[i]];
  return out;
}

void TableProfile::set(games::InfosetKey key, std::vector<double> dist) {
  table_[std::move(key)] = std::move(dist);
}

std::vector<double> TableProfile::action_probabilities(const games::State& state,
                                                       games::PlayerRole seat) const {
  const std::size_t n = state.legal_actions().size();
  auto it = table_.find(state.infoset_key(seat));
  if (it == table_.end()) return uniform_over(n);
  if (it->second.size() != n)
    throw std::logic_error("TableProfile: entry arity does not match state");
  return it->second;
}

}  // namespace xoos::evaluation
