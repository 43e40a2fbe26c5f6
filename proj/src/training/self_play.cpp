#include "xoos/training/self_play.hpp"

#include <stdexcept>

namespace xoos::training {
namespace {

double u01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

// CDF inversion with last-positive fallback, matching the search's sampling.
template <typename Pairs>
games::ActionId sample_outcome(const Pairs& outcomes, std::mt19937_64& rng) {
  double u = u01(rng), acc = 0.0;
  games::ActionId pick = -1;
  for (const auto& [a, p] : outcomes) {
    if (p <= 0.0) continue;
    pick = a;
    acc += p;
    if (u < acc) break;
  }
  if (pick < 0) throw std::logic_error("self_play: no positive-probability outcome");
  return pick;
}

std::size_t sample_position(const std::vector<double>& dist, std::mt19937_64& rng) {
  double u = u01(rng), acc = 0.0;
  std::size_t pick = dist.size();
  for (std::size_t i = 0; i < dist.size(); ++i) {
    if (dist[i] <= 0.0) continue;
    pick = i;
    acc += dist[i];
    if (u < acc) break;
  }
  if (pick == dist.size()) throw std::logic_error("self_play: degenerate search distribution");
  return pick;
}

}  // namespace

BatchedNetBackend::BatchedNetBackend(std::shared_ptr<const apprentice::NetworkParams> params)
    : params_(std::move(params)) {
  if (!params_) throw std::invalid_argument("BatchedNetBackend: null parameters");
}

void BatchedNetBackend::set_params(std::shared_ptr<const apprentice::NetworkParams> params) {
  if (!params) throw std::invalid_argument("BatchedNetBackend: null parameters");
  params_ = std::move(params);
}

void BatchedNetBackend::flush(oos::EvalRequestQueue& queue) {
  if (queue.empty()) return;
  batch_sizes_.push_back(queue.size());
  // Hold one snapshot across the whole batch even if set_params races later.
  const std::shared_ptr<const apprentice::NetworkParams> snapshot = params_;
  flush_eval_batch(queue, *snapshot);
}

void flush_eval_batch(oos::EvalRequestQueue& queue, const apprentice::NetworkParams& params) {
  for (oos::EvalRequest* r : queue.pending()) {
    r->result = apprentice::forward(params, r->features, r->mask);
    r->answered = true;
  }
  queue.clear();
}

SelfPlayResult self_play_game(const games::Game& game, const oos::SearchConfig& cfg,
                              int concurrency, oos::EvalBackend& backend,
                              oos::SearchContext& ctx, std::mt19937_64& rng) {
  SelfPlayResult result;
  games::MatchHistory history(game);
  while (true) {
    const games::State& s = *history.current();
    if (s.is_terminal()) {
      result.utility_p1 = s.utility(games::PlayerRole::Player1);
      break;
    }
    if (s.acting_player() == games::PlayerRole::Chance) {
      history.push(sample_outcome(s.chance_outcomes(), rng));
      continue;
    }
    const games::PlayerRole mover = s.acting_player();
    const auto legal = s.legal_actions();
    const std::vector<double> dist =
        oos::run_search_with_backend(ctx, game, history, cfg, backend, rng, concurrency);
    if (dist.size() != legal.size())
      throw std::logic_error("self_play: search distribution length mismatch");

    ExperienceTuple tuple;
    tuple.features = s.encode(mover);
    tuple.mask.assign(game.max_actions(), 0);
    tuple.target.assign(game.max_actions(), 0.0);
    for (std::size_t i = 0; i < legal.size(); ++i) {
      tuple.mask[legal[i]] = 1;
      tuple.target[legal[i]] = dist[i];
    }
    result.tuples.push_back(std::move(tuple));

    history.push(legal[sample_position(dist, rng)]);
  }
  return result;
}

}  // namespace xoos::training
