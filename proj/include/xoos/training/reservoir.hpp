#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "xoos/games/game.hpp"
#include "xoos/training/experience.hpp"

namespace xoos::training {

// Exponentially weighted experience reservoir. While below capacity every
// insert is appended; once full, each incoming tuple replaces a uniformly
// random resident with fixed probability p_replace (default 1/2) and is
// dropped otherwise, which gives residents a geometric age tail.
class Reservoir {
 public:
  explicit Reservoir(std::size_t capacity, double p_replace = 0.5);

  void insert(ExperienceTuple tuple, std::mt19937_64& rng);
  void insert_batch(std::span<const ExperienceTuple> batch, std::mt19937_64& rng);

  std::size_t size() const { return items_.size(); }
  std::size_t capacity() const { return capacity_; }
  double p_replace() const { return p_replace_; }
  std::int64_t inserted_count() const { return inserted_; }

  const ExperienceTuple& operator[](std::size_t slot) const { return items_[slot]; }
  // Sequence number (0-based insertion order) of the tuple currently in a
  // slot; exposed so age-distribution behaviour is testable.
  std::int64_t insert_id_at(std::size_t slot) const { return ids_[slot]; }

  // Uniform sample with replacement; n may exceed size.
  std::vector<ExperienceTuple> sample_minibatch(std::size_t n, std::mt19937_64& rng) const;

 private:
  std::size_t capacity_;
  double p_replace_;
  std::vector<ExperienceTuple> items_;
  std::vector<std::int64_t> ids_;
  std::int64_t inserted_ = 0;
};

// Mean real decisions per match under uniform-random play, measured by
// simulation; used to convert a game-count budget into a tuple capacity.
double mean_decisions_per_game(const games::Game& game, int num_games, std::uint64_t seed);

// Tuple capacity equivalent to holding `budget_games` full games.
std::size_t reservoir_capacity_for(const games::Game& game, int budget_games = 32000,
                                   int sample_games = 256, std::uint64_t seed = 0x5ee5);

}  // namespace xoos::training
