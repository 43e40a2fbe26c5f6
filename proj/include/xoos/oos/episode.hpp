#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "xoos/games/game.hpp"
#include "xoos/oos/config.hpp"
#include "xoos/oos/eval_queue.hpp"
#include "xoos/oos/tree.hpp"

namespace xoos::oos {

// Everything one episode needs, owned by the driver.
struct EpisodeEnv {
  const games::Game* game = nullptr;
  const games::MatchHistory* observed = nullptr;
  SearchTree* tree = nullptr;
  const SearchConfig* cfg = nullptr;
  games::PlayerRole explorer = games::PlayerRole::Player1;
  bool targeting_active = false;
  double r_use = 1.0;  // EMA importance divisor frozen at episode start
};

// One root-to-terminal OOS episode as a resumable state machine: it suspends
// whenever a playout-region decision needs a policy evaluation, so a driver can
// batch evaluations across many concurrent episodes. All randomness comes from
// the machine's own generator; every chance or decision step consumes exactly one
// uniform draw, plus one per-node targeting coin when targeting is active.
class EpisodeMachine {
 public:
  enum class Status { NeedEval, Finished };

  EpisodeMachine(const EpisodeEnv& env, std::uint64_t seed);

  // Runs until the episode finishes or blocks on an evaluation request.
  Status advance();
  // Valid while blocked; backend fills .result and sets .answered.
  EvalRequest& request() { return request_; }
  bool awaiting() const { return awaiting_; }
  // Consumes the answered request; the next advance() resumes the walk.
  void deliver();

  bool finished() const { return finished_; }
  double s1() const { return s1_; }
  double s2() const { return s2_; }

 private:
  struct StepRec {
    NodeStats* node;  // null at chance and playout steps
    games::PlayerRole actor;
    std::vector<double> sigma;  // profile over legal positions; chance: {p(sampled)}
    int sampled;
    double pi_own, pi_opp, q_own;  // reaches above the node (pi_opp includes chance)
  };

  double u01();
  int sample(const std::vector<double>& dist);
  std::vector<double> consistency_restrict(const std::vector<double>& b_floor,
                                           const std::vector<games::ActionId>& actions,
                                           bool* any) const;
  void take_step(const std::vector<games::ActionId>& actions, const std::vector<double>& sigma,
                 NodeStats* node, games::PlayerRole actor);
  void backward();

  EpisodeEnv env_;
  std::mt19937_64 rng_;
  games::StatePtr cur_;
  std::vector<StepRec> path_;
  double pi_[2] = {1.0, 1.0};
  double pic_ = 1.0;
  double qown_[2] = {1.0, 1.0};
  double s1_ = 1.0, s2_ = 1.0;
  bool expanded_[2] = {false, false};

  EvalRequest request_;
  std::vector<games::ActionId> pend_legal_;
  std::vector<double> playout_sigma_;
  bool awaiting_ = false;
  bool have_playout_sigma_ = false;
  bool finished_ = false;
};

}  // namespace xoos::oos
