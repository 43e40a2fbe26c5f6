#pragma once

#include <memory>
#include <random>
#include <vector>

#include "xoos/apprentice/net.hpp"
#include "xoos/oos/eval_queue.hpp"
#include "xoos/oos/search.hpp"
#include "xoos/training/experience.hpp"

namespace xoos::training {

// Evaluates a whole waiting list of playout requests against one network
// snapshot per flush (snapshot pulled when flush begins — no torn reads
// within a batch). Batch sizes are recorded for instrumentation.
class BatchedNetBackend final : public oos::EvalBackend {
 public:
  explicit BatchedNetBackend(std::shared_ptr<const apprentice::NetworkParams> params);

  void flush(oos::EvalRequestQueue& queue) override;

  void set_params(std::shared_ptr<const apprentice::NetworkParams> params);
  const std::shared_ptr<const apprentice::NetworkParams>& params() const { return params_; }
  const std::vector<std::size_t>& batch_sizes() const { return batch_sizes_; }

 private:
  std::shared_ptr<const apprentice::NetworkParams> params_;
  std::vector<std::size_t> batch_sizes_;
};

// Answers every pending request with a forward pass against `params` and
// clears the queue. Equivalent to per-request evaluation on the same
// snapshot; batching only reorders work.
void flush_eval_batch(oos::EvalRequestQueue& queue, const apprentice::NetworkParams& params);

struct SelfPlayResult {
  std::vector<ExperienceTuple> tuples;  // one per real decision, mover's view
  double utility_p1 = 0.0;              // terminal utility for Player1
};

// Plays one full match with both seats driven by OOS sharing one search
// context and one evaluation backend. At each real decision the search runs
// cfg.simulations episodes from the mover's infoset, the returned average
// strategy becomes the tuple target, and the actual move is sampled from it.
SelfPlayResult self_play_game(const games::Game& game, const oos::SearchConfig& cfg,
                              int concurrency, oos::EvalBackend& backend,
                              oos::SearchContext& ctx, std::mt19937_64& rng);

}  // namespace xoos::training
