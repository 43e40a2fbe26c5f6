#pragma once

#include <memory>
#include <stdexcept>

#include "xoos/apprentice/net.hpp"
#include "xoos/oos/playout.hpp"

namespace xoos::apprentice {

// Playout policy backed by a network snapshot. The snapshot is shared and
// immutable, so a search can keep evaluating consistently even while a
// trainer publishes newer parameters elsewhere.
class NetPlayout final : public oos::PlayoutPolicy {
 public:
  explicit NetPlayout(std::shared_ptr<const NetworkParams> params)
      : params_(std::move(params)) {
    if (!params_) throw std::invalid_argument("NetPlayout: null parameters");
  }

  std::vector<double> evaluate(const games::FeatureVector& features,
                               const games::ActionMask& mask) const override {
    return forward(*params_, features, mask);
  }

  const std::shared_ptr<const NetworkParams>& params() const { return params_; }

 private:
  std::shared_ptr<const NetworkParams> params_;
};

}  // namespace xoos::apprentice
