#include "xoos/oos/episode.hpp"

#include <stdexcept>

namespace xoos::oos {

void ema_update(EmaRatio& ema, double s1, double s2, double beta_ema) {
  if (s2 <= 0.0) throw std::invalid_argument("ema_update: s2 must be positive");
  ema.r = beta_ema * ema.r + (1.0 - beta_ema) * (s1 / s2);
}

std::vector<double> mix_with_uniform(const std::vector<double>& dist, double coef) {
  std::vector<double> out(dist.size());
  double u = coef / static_cast<double>(dist.size());
  for (std::size_t i = 0; i < dist.size(); ++i) out[i] = (1.0 - coef) * dist[i] + u;
  return out;
}

EpisodeMachine::EpisodeMachine(const EpisodeEnv& env, std::uint64_t seed)
    : env_(env), rng_(seed), cur_(env.game->initial_state()) {
  path_.reserve(32);
}

double EpisodeMachine::u01() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }

int EpisodeMachine::sample(const std::vector<double>& dist) {
  double u = u01();
  double acc = 0.0;
  int last_positive = -1;
  for (std::size_t i = 0; i < dist.size(); ++i) {
    if (dist[i] <= 0.0) continue;
    last_positive = static_cast<int>(i);
    acc += dist[i];
    if (u < acc) return last_positive;
  }
  if (last_positive < 0) throw std::logic_error("sample: distribution has no support");
  return last_positive;
}

std::vector<double> EpisodeMachine::consistency_restrict(
    const std::vector<double>& b_floor, const std::vector<games::ActionId>& actions,
    bool* any) const {
  std::vector<double> out(b_floor.size(), 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < actions.size(); ++i) {
    if (env_.game->target_consistent(env_.cfg->targeting, *env_.observed, *cur_, actions[i])) {
      out[i] = b_floor[i];
      total += b_floor[i];
    }
  }
  *any = total > 0.0;
  if (*any)
    for (double& v : out) v /= total;
  return out;
}

void EpisodeMachine::take_step(const std::vector<games::ActionId>& actions,
                               const std::vector<double>& sigma, NodeStats* node,
                               games::PlayerRole actor) {
  bool is_chance = actor == games::PlayerRole::Chance;
  // Actual (unrestricted) sampling distribution: exploration at the exploring
  // seat's in-tree nodes; the mistake floor elsewhere during targeted episodes.
  std::vector<double> b_floor;
  const std::vector<double>* bf = &sigma;
  if (!is_chance) {
    if (node && actor == env_.explorer && env_.cfg->epsilon > 0.0) {
      b_floor = mix_with_uniform(sigma, env_.cfg->epsilon);
      bf = &b_floor;
    } else if (env_.targeting_active && env_.cfg->gamma > 0.0) {
      b_floor = mix_with_uniform(sigma, env_.cfg->gamma);
      bf = &b_floor;
    }
  }

  int chosen;
  double eff;
  if (env_.targeting_active) {
    bool any = false;
    std::vector<double> restricted = consistency_restrict(*bf, actions, &any);
    const std::vector<double>& draw =
        any && u01() < env_.cfg->delta ? restricted : *bf;
    chosen = sample(draw);
    double pr = any ? restricted[chosen] : (*bf)[chosen];
    eff = env_.cfg->delta * pr + (1.0 - env_.cfg->delta) * (*bf)[chosen];
  } else {
    chosen = sample(*bf);
    eff = (*bf)[chosen];
  }

  s1_ *= eff;
  s2_ *= (*bf)[chosen];

  if (is_chance) {
    path_.push_back({nullptr, actor, {sigma[chosen]}, 0, 0.0, 0.0, 0.0});
    pic_ *= sigma[chosen];
  } else {
    int si = games::seat_index(actor);
    path_.push_back({node, actor, sigma, chosen, pi_[si], pi_[1 - si] * pic_, qown_[si]});
    pi_[si] *= sigma[chosen];
    qown_[si] *= (*bf)[chosen];
  }
  cur_ = cur_->apply(actions[chosen]);
}

EpisodeMachine::Status EpisodeMachine::advance() {
  if (awaiting_) throw std::logic_error("EpisodeMachine::advance while awaiting eval");
  while (true) {
    if (cur_->is_terminal()) {
      backward();
      finished_ = true;
      return Status::Finished;
    }
    games::PlayerRole role = cur_->acting_player();

    if (role == games::PlayerRole::Chance) {
      auto outcomes = cur_->chance_outcomes();
      std::vector<games::ActionId> actions(outcomes.size());
      std::vector<double> probs(outcomes.size());
      for (std::size_t i = 0; i < outcomes.size(); ++i) {
        actions[i] = outcomes[i].first;
        probs[i] = outcomes[i].second;
      }
      take_step(actions, probs, nullptr, role);
      continue;
    }

    std::vector<games::ActionId> legal =
        have_playout_sigma_ ? pend_legal_ : cur_->legal_actions();

    if (have_playout_sigma_) {
      have_playout_sigma_ = false;
      take_step(legal, playout_sigma_, nullptr, role);
      continue;
    }

    games::InfosetKey key = cur_->infoset_key(role);
    NodeStats* node = env_.tree->find(key);
    int si = games::seat_index(role);
    if (!node && !expanded_[si]) {
      node = &env_.tree->add(key, static_cast<int>(legal.size()));
      expanded_[si] = true;
    }
    if (node) {
      if (node->action_count() != static_cast<int>(legal.size()))
        throw std::logic_error("SearchTree: legal-action count changed for an infoset");
      take_step(legal, regret_matching(node->regrets), node, role);
      continue;
    }

    // Below this seat's frontier: ask the playout policy.
    request_.features = cur_->encode(role);
    request_.mask.assign(env_.game->max_actions(), 0);
    for (games::ActionId a : legal) request_.mask[a] = 1;
    request_.result.clear();
    request_.answered = false;
    pend_legal_ = std::move(legal);
    awaiting_ = true;
    return Status::NeedEval;
  }
}

void EpisodeMachine::deliver() {
  if (!awaiting_ || !request_.answered)
    throw std::logic_error("EpisodeMachine::deliver without an answered request");
  playout_sigma_.resize(pend_legal_.size());
  for (std::size_t i = 0; i < pend_legal_.size(); ++i)
    playout_sigma_[i] = request_.result[pend_legal_[i]];
  awaiting_ = false;
  have_playout_sigma_ = true;
}

void EpisodeMachine::backward() {
  double u1 = cur_->utility(games::PlayerRole::Player1);
  double x = 1.0;
  for (auto it = path_.rbegin(); it != path_.rend(); ++it) {
    const StepRec& rec = *it;
    double sig_s = rec.sigma[rec.sampled];
    if (rec.node) {
      // Regrets update only at the exploring seat's nodes: that seat's in-tree
      // sampling carries the epsilon floor this episode, so every action of the
      // updated player stays sampleable and the importance-sampled estimator
      // keeps full support. Updating the other seat here would starve its
      // zero-probability actions of value estimates and lock in pure strategies.
      if (rec.actor == env_.explorer) {
        double u_p = rec.actor == games::PlayerRole::Player1 ? u1 : -u1;
        double wx = u_p * rec.pi_opp / (s2_ * env_.r_use) * x;
        auto& reg = rec.node->regrets;
        // w = wx*sig_s with w*(1/sig_s - 1) = wx*(1 - sig_s): stays finite when
        // the sampled action had zero profile probability.
        for (std::size_t a = 0; a < reg.size(); ++a) {
          if (static_cast<int>(a) == rec.sampled) reg[a] += wx * (1.0 - sig_s);
          else reg[a] -= wx * sig_s;
        }
      }
      double aw = rec.pi_own / (rec.q_own * env_.r_use);
      for (std::size_t a = 0; a < rec.sigma.size(); ++a)
        rec.node->avg_num[a] += aw * rec.sigma[a];
    }
    x *= sig_s;
  }
}

}  // namespace xoos::oos
