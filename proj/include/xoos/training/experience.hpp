#pragma once

#include <cmath>
#include <span>

#include "xoos/apprentice/net.hpp"

namespace xoos::training {

// One unit of self-play experience: the mover's infoset encoding, its legal
// mask over ActionId slots, and the search's action distribution as target.
using ExperienceTuple = apprentice::TrainExample;

// Target supported only on the mask and summing to 1 within tol.
inline bool tuple_valid(const ExperienceTuple& t, double tol = 1e-9) {
  if (t.mask.size() != t.target.size()) return false;
  double sum = 0.0;
  for (std::size_t a = 0; a < t.target.size(); ++a) {
    if (t.target[a] < 0.0) return false;
    if (!t.mask[a] && t.target[a] != 0.0) return false;
    sum += t.target[a];
  }
  return std::abs(sum - 1.0) <= tol;
}

}  // namespace xoos::training
