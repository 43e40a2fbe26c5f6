#include "xoos/oos/tree.hpp"

#include <stdexcept>

namespace xoos::oos {

std::vector<double> regret_matching(std::span<const double> regrets) {
  if (regrets.empty()) throw std::invalid_argument("regret_matching: empty regret vector");
  std::vector<double> out(regrets.size());
  double pos = 0.0;
  for (std::size_t i = 0; i < regrets.size(); ++i) {
    out[i] = regrets[i] > 0.0 ? regrets[i] : 0.0;
    pos += out[i];
  }
  if (pos > 0.0) {
    for (double& v : out) v /= pos;
  } else {
    double u = 1.0 / static_cast<double>(out.size());
    for (double& v : out) v = u;
  }
  return out;
}

std::vector<double> average_strategy(const NodeStats& node) {
  std::vector<double> out(node.avg_num.begin(), node.avg_num.end());
  double total = 0.0;
  for (double v : out) total += v;
  if (total > 0.0) {
    for (double& v : out) v /= total;
  } else {
    double u = 1.0 / static_cast<double>(out.size());
    for (double& v : out) v = u;
  }
  return out;
}

NodeStats& SearchTree::add(const games::InfosetKey& key, int actions) {
  auto [it, inserted] = nodes_.emplace(key, NodeStats(actions));
  if (!inserted) throw std::logic_error("SearchTree::add: infoset already tabled");
  return it->second;
}

}  // namespace xoos::oos
