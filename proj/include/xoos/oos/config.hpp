#pragma once

#include <cstdint>

#include "xoos/games/types.hpp"

namespace xoos::oos {

struct SearchConfig {
  double epsilon = 0.4;   // exploration at the exploring seat's own in-tree nodes
  double delta = 0.9;     // per-node probability of restricting to target-consistent actions
  double gamma = 0.01;    // opponent-mistake floor during targeted episodes
  double beta_ema = 0.99; // decay for the s1/s2 EMA ratio
  int simulations = 10000;
  games::TargetingMode targeting = games::TargetingMode::None;
};

// EMA estimate of r = E[s1/s2]; replaces exact per-sample targeting reweighting.
struct EmaRatio {
  double r = 1.0;
};

void ema_update(EmaRatio& ema, double s1, double s2, double beta_ema);

// (1-coef)*dist + coef*uniform, the single mixing rule used for both the
// exploration term and the opponent-mistake floor.
std::vector<double> mix_with_uniform(const std::vector<double>& dist, double coef);

}  // namespace xoos::oos
