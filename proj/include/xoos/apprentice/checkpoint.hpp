#pragma once

#include <optional>
#include <string>

#include "xoos/apprentice/net.hpp"

namespace xoos::apprentice {

// A checkpoint bundles network parameters with the id of the game they were
// trained for and, optionally, the optimizer state needed to resume training.
struct Checkpoint {
  NetworkParams params;
  std::string game_id;
  std::optional<AdamState> adam;
};

// Binary format: 8-byte magic "XOOSNET1", a little-endian uint32 header
// length, a JSON header describing shapes and optimizer hyperparameters,
// then flat float32 little-endian arrays (per layer: weights then biases;
// if optimizer state is present, first moments then second moments in the
// same per-layer order). Weights round-trip bit-exactly through float32.
void save_checkpoint(const Checkpoint& ckpt, const std::string& path);
Checkpoint load_checkpoint(const std::string& path);

}  // namespace xoos::apprentice
