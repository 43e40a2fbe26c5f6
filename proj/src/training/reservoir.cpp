#include "xoos/training/reservoir.hpp"

#include <cmath>
#include <stdexcept>

namespace xoos::training {
namespace {

double u01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::size_t uniform_index(std::mt19937_64& rng, std::size_t n) {
  auto idx = static_cast<std::size_t>(u01(rng) * static_cast<double>(n));
  return idx >= n ? n - 1 : idx;
}

}  // namespace

Reservoir::Reservoir(std::size_t capacity, double p_replace)
    : capacity_(capacity), p_replace_(p_replace) {
  if (capacity == 0) throw std::invalid_argument("Reservoir: capacity must be positive");
  if (p_replace < 0.0 || p_replace > 1.0)
    throw std::invalid_argument("Reservoir: p_replace must be in [0, 1]");
  items_.reserve(capacity);
  ids_.reserve(capacity);
}

void Reservoir::insert(ExperienceTuple tuple, std::mt19937_64& rng) {
  const std::int64_t id = inserted_++;
  if (items_.size() < capacity_) {
    items_.push_back(std::move(tuple));
    ids_.push_back(id);
    return;
  }
  if (u01(rng) < p_replace_) {
    const std::size_t victim = uniform_index(rng, items_.size());
    items_[victim] = std::move(tuple);
    ids_[victim] = id;
  }
}

void Reservoir::insert_batch(std::span<const ExperienceTuple> batch, std::mt19937_64& rng) {
  for (const ExperienceTuple& t : batch) insert(t, rng);
}

std::vector<ExperienceTuple> Reservoir::sample_minibatch(std::size_t n,
                                                         std::mt19937_64& rng) const {
  if (items_.empty()) throw std::logic_error("Reservoir: cannot sample from empty reservoir");
  std::vector<ExperienceTuple> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(items_[uniform_index(rng, items_.size())]);
  return out;
}

double mean_decisions_per_game(const games::Game& game, int num_games, std::uint64_t seed) {
  if (num_games <= 0) throw std::invalid_argument("mean_decisions_per_game: num_games > 0");
  std::mt19937_64 rng(seed);
  std::int64_t decisions = 0;
  for (int g = 0; g < num_games; ++g) {
    games::StatePtr s = game.initial_state();
    while (!s->is_terminal()) {
      if (s->acting_player() == games::PlayerRole::Chance) {
        const auto outcomes = s->chance_outcomes();
        double u = u01(rng), acc = 0.0;
        games::ActionId pick = outcomes.back().first;
        for (const auto& [a, p] : outcomes) {
          acc += p;
          if (u < acc) {
            pick = a;
            break;
          }
        }
        s = s->apply(pick);
      } else {
        ++decisions;
        const auto legal = s->legal_actions();
        s = s->apply(legal[uniform_index(rng, legal.size())]);
      }
    }
  }
  return static_cast<double>(decisions) / static_cast<double>(num_games);
}

std::size_t reservoir_capacity_for(const games::Game& game, int budget_games, int sample_games,
                                   std::uint64_t seed) {
  const double mean = mean_decisions_per_game(game, sample_games, seed);
  const auto cap = static_cast<std::size_t>(std::llround(mean * budget_games));
  return cap > 0 ? cap : 1;
}

}  // namespace xoos::training
