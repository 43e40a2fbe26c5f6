#include "xoos/training/trainer.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

#include "xoos/apprentice/checkpoint.hpp"
#include "xoos/evaluation/best_response.hpp"
#include "xoos/evaluation/profile.hpp"
#include "xoos/games/registry.hpp"
#include "xoos/oos/search.hpp"
#include "xoos/training/self_play.hpp"

namespace xoos::training {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

std::uint64_t game_stream_seed(std::uint64_t seed, int iter, int game_index) {
  return splitmix64(splitmix64(seed ^ (0x9e3779b97f4a7c15ull * (iter + 1))) ^
                    (0xd1342543de82ef95ull * (game_index + 1)));
}

std::string checkpoint_name(int iter) {
  std::ostringstream out;
  out << "checkpoint-" << std::setw(6) << std::setfill('0') << iter << ".xoosnet";
  return out.str();
}

}  // namespace

TrainLoopConfig default_loop_config(const games::Game& game) {
  TrainLoopConfig cfg;
  const std::string id = game.id();
  cfg.steps_per_iteration = id == "goof13" ? 512 : 128;
  cfg.exploit_probe_every = (id == "kuhn" || id == "leduc") ? 10 : 0;
  return cfg;
}

Trainer::Trainer(std::shared_ptr<const games::Game> game, TrainLoopConfig cfg)
    : game_(std::move(game)),
      cfg_(cfg),
      params_(apprentice::init_params(apprentice::default_net_config(*game_),
                                      splitmix64(cfg.seed ^ 0x1157))),
      adam_(apprentice::make_adam(params_)),
      reservoir_(reservoir_capacity_for(*game_)),
      reservoir_rng_(splitmix64(cfg.seed ^ 0x2e5e)),
      minibatch_rng_(splitmix64(cfg.seed ^ 0x3b4a)) {
  if (cfg_.games_per_iteration < 1 || cfg_.minibatch < 1 || cfg_.concurrent_searches < 1 ||
      cfg_.search_simulations < 1 || cfg_.total_iterations < 0 || cfg_.steps_per_iteration < 0)
    throw std::invalid_argument("Trainer: invalid loop configuration");
  if (cfg_.workers < 1) cfg_.workers = 1;
  publish();
  snapshots_ = 0;  // the initial publication is not an iteration's snapshot
}

std::shared_ptr<const apprentice::NetworkParams> Trainer::snapshot() const {
  std::lock_guard<std::mutex> lock(snapshot_mu_);
  return published_;
}

void Trainer::publish() {
  auto copy = std::make_shared<const apprentice::NetworkParams>(params_);
  {
    std::lock_guard<std::mutex> lock(snapshot_mu_);
    published_ = std::move(copy);
  }
  ++snapshots_;
}

IterationStats Trainer::iterate() {
  ++iter_;

  // Self-play: one rng stream, one shared tree, one backend per game. All
  // games of the iteration use the snapshot published by the last iteration;
  // tuples are ingested in game order so worker count cannot change results.
  const auto snap = snapshot();
  std::vector<std::vector<ExperienceTuple>> per_game(cfg_.games_per_iteration);
  auto play_range = [&](int start, int step) {
    for (int g = start; g < cfg_.games_per_iteration; g += step) {
      std::mt19937_64 rng(game_stream_seed(cfg_.seed, iter_, g));
      oos::SearchContext ctx;
      BatchedNetBackend backend(snap);
      oos::SearchConfig scfg;
      scfg.simulations = cfg_.search_simulations;
      scfg.targeting = game_->default_targeting();
      per_game[g] = self_play_game(*game_, scfg, cfg_.concurrent_searches, backend, ctx, rng)
                        .tuples;
    }
  };
  if (cfg_.workers == 1) {
    play_range(0, 1);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(cfg_.workers);
    for (int w = 0; w < cfg_.workers; ++w) pool.emplace_back(play_range, w, cfg_.workers);
    for (std::thread& t : pool) t.join();
  }
  for (const auto& tuples : per_game) {
    for (const ExperienceTuple& t : tuples) {
      if (!tuple_valid(t)) throw std::logic_error("Trainer: self-play tuple violates its mask");
      reservoir_.insert(t, reservoir_rng_);
    }
  }
  if (reservoir_.size() == 0)
    throw std::logic_error("Trainer: reservoir empty after ingesting an iteration's games");

  double loss_sum = 0.0;
  for (int s = 0; s < cfg_.steps_per_iteration; ++s) {
    const auto batch = reservoir_.sample_minibatch(cfg_.minibatch, minibatch_rng_);
    const auto lg = apprentice::loss_and_gradients(params_, batch);
    apprentice::adam_step(params_, adam_, lg.grads);
    loss_sum += lg.loss;
  }
  publish();

  IterationStats stats;
  stats.iter = iter_;
  stats.games_total = static_cast<std::int64_t>(iter_) * cfg_.games_per_iteration;
  stats.steps_total = static_cast<std::int64_t>(iter_) * cfg_.steps_per_iteration;
  stats.mean_loss = cfg_.steps_per_iteration > 0 ? loss_sum / cfg_.steps_per_iteration : 0.0;
  stats.reservoir_size = reservoir_.size();
  if (cfg_.exploit_probe_every > 0 && iter_ % cfg_.exploit_probe_every == 0) {
    evaluation::NetProfile profile(snapshot(), *game_);
    stats.exploitability = evaluation::exploitability(*game_, profile);
  }
  history_.push_back(stats);
  return stats;
}

std::string Trainer::config_echo() const {
  std::map<std::string, std::string> kv;
  kv["checkpoint_every"] = std::to_string(cfg_.checkpoint_every);
  kv["concurrent_searches"] = std::to_string(cfg_.concurrent_searches);
  kv["exploit_probe_every"] = std::to_string(cfg_.exploit_probe_every);
  kv["game"] = game_->id();
  kv["games_per_iteration"] = std::to_string(cfg_.games_per_iteration);
  kv["minibatch"] = std::to_string(cfg_.minibatch);
  kv["reservoir_capacity"] = std::to_string(reservoir_.capacity());
  kv["search_simulations"] = std::to_string(cfg_.search_simulations);
  kv["seed"] = std::to_string(cfg_.seed);
  kv["steps_per_iteration"] = std::to_string(cfg_.steps_per_iteration);
  kv["total_iterations"] = std::to_string(cfg_.total_iterations);
  kv["workers"] = std::to_string(cfg_.workers);
  std::string out;
  for (const auto& [k, v] : kv) out += k + "=" + v + "\n";
  return out;
}

void Trainer::write_checkpoint(const std::string& path) const {
  apprentice::Checkpoint ckpt;
  ckpt.params = params_;
  ckpt.game_id = game_->id();
  ckpt.adam = adam_;
  apprentice::save_checkpoint(ckpt, path);
}

void Trainer::run() {
  namespace fs = std::filesystem;
  const bool to_files = !cfg_.out_dir.empty();
  fs::path dir(cfg_.out_dir);
  std::ofstream metrics;
  if (to_files) {
    fs::create_directories(dir);
    std::ofstream echo(dir / "config.txt", std::ios::trunc);
    if (!echo) throw std::runtime_error("Trainer: cannot write config echo in " + cfg_.out_dir);
    echo << config_echo();
    metrics.open(dir / "metrics.jsonl", std::ios::trunc);
    if (!metrics) throw std::runtime_error("Trainer: cannot write metrics in " + cfg_.out_dir);
    write_checkpoint((dir / checkpoint_name(0)).string());
  }

  for (int i = 1; i <= cfg_.total_iterations; ++i) {
    const IterationStats stats = iterate();
    if (to_files) {
      nlohmann::ordered_json rec;
      rec["iter"] = stats.iter;
      rec["games"] = stats.games_total;
      rec["steps"] = stats.steps_total;
      rec["mean_loss"] = stats.mean_loss;
      rec["reservoir_size"] = stats.reservoir_size;
      if (stats.exploitability.has_value()) rec["exploitability"] = *stats.exploitability;
      metrics << rec.dump() << '\n';
      metrics.flush();
      if (cfg_.checkpoint_every > 0 && i % cfg_.checkpoint_every == 0)
        write_checkpoint((dir / checkpoint_name(i)).string());
    }
  }
  if (to_files) {
    if (cfg_.total_iterations > 0 &&
        !(cfg_.checkpoint_every > 0 && cfg_.total_iterations % cfg_.checkpoint_every == 0))
      write_checkpoint((dir / checkpoint_name(cfg_.total_iterations)).string());
    write_checkpoint((dir / "checkpoint-final.xoosnet").string());
  }
}

void run_training(const std::string& game_id, TrainLoopConfig cfg) {
  if (cfg.out_dir.empty()) {
    if (const char* env = std::getenv("XOOS_OUT"); env && *env) cfg.out_dir = env;
  }
  if (const char* env = std::getenv("XOOS_WORKERS"); env && *env) {
    try {
      cfg.workers = std::max(1, std::stoi(env));
    } catch (const std::exception&) {
      throw std::invalid_argument("XOOS_WORKERS must be an integer, got '" + std::string(env) +
                                  "'");
    }
  }
  Trainer trainer(games::make_game(game_id), cfg);
  trainer.run();
}

}  // namespace xoos::training
