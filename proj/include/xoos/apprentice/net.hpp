#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "xoos/games/game.hpp"

namespace xoos::apprentice {

struct NetConfig {
  int input_dim = 0;
  std::vector<int> hidden;
  int output_dim = 0;

  bool operator==(const NetConfig&) const = default;
};

// Per-game architectures; hidden sizes follow the per-game defaults, output is
// the game's dense ActionId range, masked at evaluation time.
NetConfig default_net_config(const games::Game& game);

struct LayerParams {
  int in = 0, out = 0;
  std::vector<double> w;  // row-major [out][in]
  std::vector<double> b;
};

struct NetworkParams {
  NetConfig config;
  std::vector<LayerParams> layers;  // hidden layers (ReLU) then linear output
  std::int64_t version = 0;         // optimizer steps applied
};

// He-style uniform init: w ~ U(-sqrt(6/fan_in), +sqrt(6/fan_in)), biases zero.
// Same seed => identical params; draw order is layer-by-layer, row-major.
NetworkParams init_params(const NetConfig& config, std::uint64_t seed);

// ReLU MLP + masked softmax: illegal logits are excluded from the max shift and
// the normalization, so the result is zero off-mask and sums to 1 on it.
std::vector<double> forward(const NetworkParams& params, const games::FeatureVector& x,
                            const games::ActionMask& mask);

struct TrainExample {
  games::FeatureVector features;
  games::ActionMask mask;
  std::vector<double> target;  // distribution over slots, zero off-mask
};

// KL(target || predicted) = sum_a t(a) (ln t(a) - ln p(a)); +inf if the model
// puts zero mass where the target has some.
double kl_loss(std::span<const double> target, std::span<const double> predicted);

double mean_loss(const NetworkParams& params, std::span<const TrainExample> batch);

struct Gradients {
  std::vector<LayerParams> layers;  // same shapes as the params
};

// Mean KL gradient over the batch, by manual backpropagation
// (dlogit = predicted - target on legal slots, zero elsewhere).
Gradients gradients(const NetworkParams& params, std::span<const TrainExample> batch);

// Same backward pass, also returning the mean loss from the shared forward
// traces (one pass instead of mean_loss + gradients).
struct LossAndGrads {
  double loss = 0.0;
  Gradients grads;
};
LossAndGrads loss_and_gradients(const NetworkParams& params, std::span<const TrainExample> batch);

struct AdamConfig {
  double lr = 1e-3, beta1 = 0.9, beta2 = 0.999, eps = 1e-8;
};

struct AdamState {
  AdamConfig cfg;
  std::int64_t t = 0;
  std::vector<LayerParams> m, v;
};

AdamState make_adam(const NetworkParams& params, AdamConfig cfg = {});

// Bias-corrected Adam; increments params.version by one per call.
void adam_step(NetworkParams& params, AdamState& adam, const Gradients& g);

}  // namespace xoos::apprentice
