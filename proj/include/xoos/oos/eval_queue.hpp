#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "xoos/games/types.hpp"
#include "xoos/oos/playout.hpp"

namespace xoos::oos {

// One pending playout-policy evaluation. The requester owns the storage; result
// is a distribution over ActionId slots.
struct EvalRequest {
  games::FeatureVector features;
  games::ActionMask mask;
  std::vector<double> result;
  bool answered = false;
};

class EvalRequestQueue {
 public:
  void enqueue(EvalRequest* r) { pending_.push_back(r); }
  std::size_t size() const { return pending_.size(); }
  bool empty() const { return pending_.empty(); }
  std::span<EvalRequest* const> pending() const { return pending_; }
  void clear() { pending_.clear(); }

 private:
  std::vector<EvalRequest*> pending_;
};

// Answers whole queues of requests; implementations may batch. flush must answer
// every pending request exactly once and clear the queue; empty flush is a no-op.
class EvalBackend {
 public:
  virtual ~EvalBackend() = default;
  virtual void flush(EvalRequestQueue& queue) = 0;
};

// Per-request synchronous adapter over any PlayoutPolicy.
class SyncPolicyBackend final : public EvalBackend {
 public:
  explicit SyncPolicyBackend(const PlayoutPolicy& policy) : policy_(&policy) {}
  void flush(EvalRequestQueue& queue) override {
    for (EvalRequest* r : queue.pending()) {
      r->result = policy_->evaluate(r->features, r->mask);
      r->answered = true;
    }
    queue.clear();
  }

 private:
  const PlayoutPolicy* policy_;
};

}  // namespace xoos::oos
