#pragma once

#include <vector>

#include "xoos/games/types.hpp"

namespace xoos::oos {

// Tail policy below the tree frontier. evaluate returns a distribution over
// ActionId slots (length == mask length): zero on illegal slots, sums to 1.
class PlayoutPolicy {
 public:
  virtual ~PlayoutPolicy() = default;
  virtual std::vector<double> evaluate(const games::FeatureVector& features,
                                       const games::ActionMask& mask) const = 0;
};

class UniformPlayout final : public PlayoutPolicy {
 public:
  std::vector<double> evaluate(const games::FeatureVector&,
                               const games::ActionMask& mask) const override {
    int legal = 0;
    for (auto m : mask) legal += m != 0;
    std::vector<double> out(mask.size(), 0.0);
    for (std::size_t i = 0; i < mask.size(); ++i)
      if (mask[i]) out[i] = 1.0 / legal;
    return out;
  }
};

}  // namespace xoos::oos
