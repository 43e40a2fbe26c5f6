#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "xoos/apprentice/net.hpp"
#include "xoos/games/game.hpp"
#include "xoos/training/reservoir.hpp"

namespace xoos::training {

struct TrainLoopConfig {
  int total_iterations = 200;
  int games_per_iteration = 32;
  int steps_per_iteration = 128;  // 512 for the largest Goofspiel
  int concurrent_searches = 20;
  int minibatch = 128;
  int checkpoint_every = 50;      // 0 = only the initial and final checkpoints
  int workers = 1;                // >1 runs self-play games on threads
  int exploit_probe_every = 10;   // 0 = no exploitability probes
  int search_simulations = 1000;  // OOS episodes per real decision
  std::uint64_t seed = 1;
  std::string out_dir;            // empty = no file output
};

// Per-game defaults: step cadence and probe cadence.
TrainLoopConfig default_loop_config(const games::Game& game);

struct IterationStats {
  int iter = 0;
  std::int64_t games_total = 0;  // cumulative self-play games
  std::int64_t steps_total = 0;  // cumulative optimizer steps
  double mean_loss = 0.0;        // mean KL loss over this iteration's steps
  std::size_t reservoir_size = 0;
  std::optional<double> exploitability;
};

// The Expert Iteration loop: every iteration plays games_per_iteration
// self-play games with OOS experts using the latest published snapshot as
// playout policy, ingests the tuples, takes steps_per_iteration Adam steps
// on reservoir minibatches, publishes a fresh snapshot, and optionally
// probes exploitability. Deterministic for a fixed seed regardless of the
// worker count (tuples are ingested in game order).
class Trainer {
 public:
  Trainer(std::shared_ptr<const games::Game> game, TrainLoopConfig cfg);

  IterationStats iterate();
  // Full run with file output when cfg.out_dir is set: config echo,
  // metrics.jsonl, periodic + final checkpoints.
  void run();

  const games::Game& game() const { return *game_; }
  const TrainLoopConfig& config() const { return cfg_; }
  const apprentice::NetworkParams& params() const { return params_; }
  std::shared_ptr<const apprentice::NetworkParams> snapshot() const;
  std::int64_t snapshots_published() const { return snapshots_; }
  const Reservoir& reservoir() const { return reservoir_; }
  int iterations_done() const { return iter_; }
  const std::vector<IterationStats>& history() const { return history_; }

  std::string config_echo() const;  // sorted key=value lines

 private:
  void publish();
  void write_checkpoint(const std::string& path) const;

  std::shared_ptr<const games::Game> game_;
  TrainLoopConfig cfg_;
  apprentice::NetworkParams params_;
  apprentice::AdamState adam_;
  Reservoir reservoir_;
  std::mt19937_64 reservoir_rng_;
  std::mt19937_64 minibatch_rng_;
  mutable std::mutex snapshot_mu_;
  std::shared_ptr<const apprentice::NetworkParams> published_;
  std::int64_t snapshots_ = 0;
  int iter_ = 0;
  std::vector<IterationStats> history_;
};

// Registry lookup plus Trainer::run(); honours XOOS_OUT (output directory if
// cfg.out_dir is empty) and XOOS_WORKERS environment overrides.
void run_training(const std::string& game_id, TrainLoopConfig cfg);

}  // namespace xoos::training
