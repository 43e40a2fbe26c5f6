#include "xoos/evaluation/agents.hpp"

#include <stdexcept>

namespace xoos::evaluation {
namespace {

double u01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::size_t sample_position(const std::vector<double>& dist, std::mt19937_64& rng) {
  double u = u01(rng), acc = 0.0;
  std::size_t pick = dist.size();
  for (std::size_t i = 0; i < dist.size(); ++i) {
    if (dist[i] <= 0.0) continue;
    pick = i;
    acc += dist[i];
    if (u < acc) break;
  }
  if (pick == dist.size()) throw std::logic_error("agent: degenerate action distribution");
  return pick;
}

std::shared_ptr<const apprentice::NetworkParams> load_net_for_game(const std::string& path,
                                                                   const games::Game& game) {
  apprentice::Checkpoint ckpt = apprentice::load_checkpoint(path);
  if (ckpt.game_id != game.id())
    throw std::invalid_argument("checkpoint game mismatch: trained for '" + ckpt.game_id +
                                "', requested game '" + game.id() + "'");
  if (ckpt.params.config.input_dim != game.encoding_dim() ||
      ckpt.params.config.output_dim != game.max_actions())
    throw std::invalid_argument(
        "checkpoint dimensions do not match game: net input " +
        std::to_string(ckpt.params.config.input_dim) + " / output " +
        std::to_string(ckpt.params.config.output_dim) + " vs game encoding " +
        std::to_string(game.encoding_dim()) + " / actions " +
        std::to_string(game.max_actions()));
  return std::make_shared<const apprentice::NetworkParams>(std::move(ckpt.params));
}

}  // namespace

void RandomAgent::start_game(const games::Game&, games::PlayerRole, std::uint64_t seed) {
  rng_.seed(seed);
}

games::ActionId RandomAgent::act(const games::MatchHistory& history) {
  const auto legal = history.current()->legal_actions();
  auto idx = static_cast<std::size_t>(u01(rng_) * static_cast<double>(legal.size()));
  if (idx >= legal.size()) idx = legal.size() - 1;
  return legal[idx];
}

NetAgent::NetAgent(std::shared_ptr<const apprentice::NetworkParams> params, bool sample)
    : params_(std::move(params)), sample_(sample) {
  if (!params_) throw std::invalid_argument("NetAgent: null parameters");
}

void NetAgent::start_game(const games::Game&, games::PlayerRole seat, std::uint64_t seed) {
  seat_ = seat;
  rng_.seed(seed);
}

games::ActionId NetAgent::act(const games::MatchHistory& history) {
  const games::State& s = *history.current();
  const auto legal = s.legal_actions();
  games::ActionMask mask(history.game().max_actions(), 0);
  for (games::ActionId a : legal) mask[a] = 1;
  const std::vector<double> slots = apprentice::forward(*params_, s.encode(seat_), mask);
  if (sample_) {
    std::vector<double> dist(legal.size());
    for (std::size_t i = 0; i < legal.size(); ++i) dist[i] = slots[legal[i]];
    return legal[sample_position(dist, rng_)];
  }
  games::ActionId best = legal.front();
  double best_p = slots[best];
  for (games::ActionId a : legal) {
    if (slots[a] > best_p) {
      best_p = slots[a];
      best = a;
    }
  }
  return best;
}

OosAgent::OosAgent(oos::SearchConfig cfg, std::shared_ptr<const oos::PlayoutPolicy> playout,
                   std::string label)
    : cfg_(cfg), playout_(std::move(playout)), label_(std::move(label)) {
  if (!playout_) throw std::invalid_argument("OosAgent: null playout policy");
}

void OosAgent::start_game(const games::Game&, games::PlayerRole, std::uint64_t seed) {
  ctx_ = oos::SearchContext{};
  rng_.seed(seed);
}

games::ActionId OosAgent::act(const games::MatchHistory& history) {
  const std::vector<double> dist =
      oos::run_search(ctx_, history.game(), history, cfg_, *playout_, rng_);
  const auto legal = history.current()->legal_actions();
  if (dist.size() != legal.size())
    throw std::logic_error("OosAgent: search distribution length mismatch");
  return legal[sample_position(dist, rng_)];
}

AgentFactory make_agent_factory(const std::string& spec, const games::Game& game) {
  if (spec == "random")
    return [] { return std::make_unique<RandomAgent>(); };

  if (spec.rfind("net:", 0) == 0) {
    std::string rest = spec.substr(4);
    bool sample = false;
    if (const auto pos = rest.rfind(":sample"); pos != std::string::npos &&
                                                pos + 7 == rest.size()) {
      sample = true;
      rest = rest.substr(0, pos);
    } else if (const auto gpos = rest.rfind(":greedy");
               gpos != std::string::npos && gpos + 7 == rest.size()) {
      rest = rest.substr(0, gpos);
    }
    if (rest.empty()) throw std::invalid_argument("agent spec 'net:' needs a checkpoint path");
    auto params = load_net_for_game(rest, game);
    return [params, sample] { return std::make_unique<NetAgent>(params, sample); };
  }

  if (spec.rfind("oos:", 0) == 0) {
    const std::string rest = spec.substr(4);
    const auto plus = rest.find('+');
    const std::string sims_text = plus == std::string::npos ? rest : rest.substr(0, plus);
    long long sims = 0;
    try {
      std::size_t used = 0;
      sims = std::stoll(sims_text, &used);
      if (used != sims_text.size()) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      throw std::invalid_argument("agent spec 'oos:' needs an episode count, got '" +
                                  sims_text + "'");
    }
    if (sims <= 0) throw std::invalid_argument("agent spec 'oos:' episode count must be positive");

    oos::SearchConfig cfg;
    cfg.simulations = static_cast<int>(sims);
    cfg.targeting = game.default_targeting();

    std::shared_ptr<const oos::PlayoutPolicy> playout;
    std::string label = "oos:" + std::to_string(sims);
    if (plus == std::string::npos) {
      playout = std::make_shared<const oos::UniformPlayout>();
    } else {
      const std::string extra = rest.substr(plus + 1);
      if (extra.rfind("net:", 0) != 0)
        throw std::invalid_argument("agent spec 'oos:SIMS+...' only supports '+net:PATH'");
      const std::string path = extra.substr(4);
      if (path.empty()) throw std::invalid_argument("agent spec 'net:' needs a checkpoint path");
      playout = std::make_shared<const apprentice::NetPlayout>(load_net_for_game(path, game));
      label += "+net";
    }
    return [cfg, playout, label] { return std::make_unique<OosAgent>(cfg, playout, label); };
  }

  throw std::invalid_argument(
      "unknown agent spec '" + spec +
      "' (expected: random | net:PATH[:sample|:greedy] | oos:SIMS[+net:PATH])");
}

}  // namespace xoos::evaluation
