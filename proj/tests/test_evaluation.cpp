// Tests for the evaluation module: exact best response against the
// independent belief-bundle oracle (and a third pure-enumeration Kuhn
// implementation), strategy-profile adapters, agents and the agent-spec
// grammar, duplicate match play, and Elo fitting.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <map>
#include <memory>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "xoos/apprentice/checkpoint.hpp"
#include "xoos/apprentice/net.hpp"
#include "xoos/apprentice/policy.hpp"
#include "xoos/evaluation/agents.hpp"
#include "xoos/evaluation/best_response.hpp"
#include "xoos/evaluation/elo.hpp"
#include "xoos/evaluation/match.hpp"
#include "xoos/evaluation/profile.hpp"
#include "xoos/games/game.hpp"
#include "xoos/games/registry.hpp"
#include "xoos/oos/config.hpp"
#include "xoos/oos/playout.hpp"
#include "xoos/oos/search.hpp"
#include "xoos/oos/tree.hpp"

namespace {

using namespace xoos;
namespace fs = std::filesystem;

// Walks chance with the first positive-probability outcome until a decision
// state is reached, pushing onto the given history.
void push_to_first_decision(games::MatchHistory& h) {
  while (!h.current()->is_terminal() &&
         h.current()->acting_player() == games::PlayerRole::Chance) {
    h.push(h.current()->chance_outcomes().front().first);
  }
}

// Opponent that folds whenever folding is legal and otherwise plays the first
// legal action. Used for the "always fold" exploitation fixture.
struct FoldBot : evaluation::StrategyProfile {
  std::vector<double> action_probabilities(const games::State& state,
                                           games::PlayerRole) const override {
    const auto legal = state.legal_actions();
    std::vector<double> out(legal.size(), 0.0);
    std::size_t pick = 0;
    for (std::size_t i = 0; i < legal.size(); ++i)
      if (legal[i] == 0) pick = i;
    out[pick] = 1.0;
    return out;
  }
};

// All-zero single-layer network: every logit is zero, so the policy is
// uniform over the mask and greedy action choice falls back to lowest id.
apprentice::NetworkParams zero_net(const games::Game& game) {
  apprentice::NetworkParams p;
  p.config.input_dim = game.encoding_dim();
  p.config.output_dim = game.max_actions();
  apprentice::LayerParams layer;
  layer.in = p.config.input_dim;
  layer.out = p.config.output_dim;
  layer.w.assign(static_cast<std::size_t>(layer.in) * layer.out, 0.0);
  layer.b.assign(layer.out, 0.0);
  p.layers.push_back(std::move(layer));
  return p;
}

std::string temp_path(const std::string& name) {
  return (fs::temp_directory_path() / name).string();
}

void check_distribution(const std::vector<double>& d) {
  double sum = 0.0;
  for (double x : d) {
    CHECK(x >= 0.0);
    sum += x;
  }
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
}

}  // namespace

TEST_CASE("best response matches the belief-bundle oracle on random profiles") {
  const struct {
    const char* id;
    int profiles;
  } plans[] = {{"kuhn", 8}, {"leduc", 4}, {"liars1", 3}, {"goofN:4", 4}, {"goofN:5", 2}};

  for (const auto& plan : plans) {
    CAPTURE(plan.id);
    auto game = games::make_game(plan.id);
    for (int k = 0; k < plan.profiles; ++k) {
      CAPTURE(k);
      evaluation::TableProfile profile =
          oracle::random_profile(*game, 0xabc0 + static_cast<std::uint64_t>(k));
      double sum = 0.0;
      for (games::PlayerRole seat : {games::PlayerRole::Player1, games::PlayerRole::Player2}) {
        const double prod = evaluation::best_response_value(*game, profile, seat);
        const double ref = oracle::best_response_oracle(*game, profile, seat);
        CHECK(std::abs(prod - ref) < 1e-9);
        if (game->id() == "kuhn") {
          const double pure = oracle::kuhn_pure_enumeration_br(*game, profile, seat);
          CHECK(std::abs(prod - pure) < 1e-9);
        }
        sum += prod;
      }
      // Exploitability of any profile is non-negative and equals the sum of
      // the one-sided best responses in a zero-sum game.
      CHECK(sum >= -1e-9);
      CHECK(std::abs(evaluation::exploitability(*game, profile) - sum) < 1e-12);
    }
  }
}

TEST_CASE("kuhn equilibrium profile is unexploitable and has the known value") {
  auto game = games::make_game("kuhn");
  evaluation::TableProfile eq = oracle::kuhn_equilibrium(*game);

  const double br1 = evaluation::best_response_value(*game, eq, games::PlayerRole::Player1);
  const double br2 = evaluation::best_response_value(*game, eq, games::PlayerRole::Player2);
  CHECK(std::abs(br1 - oracle::kKuhnGameValue) < 1e-9);     // -1/18 for the first player
  CHECK(std::abs(br2 + oracle::kKuhnGameValue) < 1e-9);     // +1/18 for the second
  CHECK(std::abs(evaluation::exploitability(*game, eq)) < 1e-9);

  const double ev = oracle::expected_value(*game, eq, games::PlayerRole::Player1);
  CHECK(std::abs(ev - oracle::kKuhnGameValue) < 1e-12);
}

TEST_CASE("an opponent who always folds is exploited for exactly the ante") {
  auto game = games::make_game("leduc");
  FoldBot folder;
  const double v = evaluation::best_response_value(*game, folder, games::PlayerRole::Player1);
  CHECK(std::abs(v - 1.0) < 1e-9);
}

TEST_CASE("uniform-vs-uniform values match the oracle") {
  for (const char* id : {"kuhn", "leduc"}) {
    CAPTURE(id);
    auto game = games::make_game(id);
    evaluation::UniformProfile uniform;
    double sum = 0.0;
    for (games::PlayerRole seat : {games::PlayerRole::Player1, games::PlayerRole::Player2}) {
      const double prod = evaluation::best_response_value(*game, uniform, seat);
      const double ref = oracle::best_response_oracle(*game, uniform, seat);
      CHECK(std::abs(prod - ref) < 1e-9);
      sum += prod;
    }
    CHECK(std::abs(evaluation::exploitability(*game, uniform) - sum) < 1e-12);
    CHECK(sum > 0.0);  // uniform play is exploitable in both games
  }
}

TEST_CASE("best response refuses games over the history cap") {
  evaluation::UniformProfile uniform;

  // Explicit small cap: Kuhn has more than ten histories.
  auto kuhn = games::make_game("kuhn");
  CHECK_THROWS_AS((void)evaluation::best_response_value(*kuhn, uniform,
                                                        games::PlayerRole::Player1, 10),
                  std::invalid_argument);

  // Default cap: Goofspiel(13) is astronomically over it.
  auto goof13 = games::make_game("goof13");
  CHECK_THROWS_AS((void)evaluation::best_response_value(*goof13, uniform,
                                                        games::PlayerRole::Player1),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)evaluation::exploitability(*goof13, uniform), std::invalid_argument);

  // Seat validation.
  CHECK_THROWS_AS((void)evaluation::best_response_value(*kuhn, uniform,
                                                        games::PlayerRole::Chance),
                  std::invalid_argument);
}

TEST_CASE("strategy profile adapters") {
  auto game = games::make_game("kuhn");
  games::MatchHistory h(*game);
  push_to_first_decision(h);
  const games::State& s = *h.current();
  const games::PlayerRole seat = s.acting_player();
  const games::InfosetKey key = s.infoset_key(seat);

  SUBCASE("uniform profile") {
    evaluation::UniformProfile p;
    const auto d = p.action_probabilities(s, seat);
    REQUIRE(d.size() == 2);
    CHECK(d[0] == 0.5);
    CHECK(d[1] == 0.5);
  }

  SUBCASE("table profile returns stored entries and uniform elsewhere") {
    evaluation::TableProfile p;
    p.set(key, {0.25, 0.75});
    const auto stored = p.action_probabilities(s, seat);
    CHECK(stored == std::vector<double>{0.25, 0.75});

    // Untabled state: uniform fallback.
    evaluation::TableProfile empty;
    const auto d = empty.action_probabilities(s, seat);
    CHECK(d == std::vector<double>{0.5, 0.5});

    // Arity mismatch between table entry and state is an error.
    evaluation::TableProfile bad;
    bad.set(key, {0.2, 0.3, 0.5});
    CHECK_THROWS_AS((void)bad.action_probabilities(s, seat), std::logic_error);
  }

  SUBCASE("tree profile averages accumulated strategy sums") {
    oos::SearchTree tree;
    oos::NodeStats& node = tree.add(key, 2);
    node.avg_num[0] = 3.0;
    node.avg_num[1] = 1.0;
    evaluation::TreeProfile p(tree);
    const auto d = p.action_probabilities(s, seat);
    CHECK(d[0] == doctest::Approx(0.75));
    CHECK(d[1] == doctest::Approx(0.25));

    oos::SearchTree empty;
    evaluation::TreeProfile q(empty);
    CHECK(q.action_probabilities(s, seat) == std::vector<double>{0.5, 0.5});
  }

  SUBCASE("net profile equals the masked forward pass restricted to legal actions") {
    auto params = std::make_shared<const apprentice::NetworkParams>(
        apprentice::init_params(apprentice::default_net_config(*game), 77));
    evaluation::NetProfile p(params, *game);
    const auto d = p.action_probabilities(s, seat);

    const auto legal = s.legal_actions();
    games::ActionMask mask(static_cast<std::size_t>(game->max_actions()), 0);
    for (games::ActionId a : legal) mask[a] = 1;
    const auto slots = apprentice::forward(*params, s.encode(seat), mask);
    REQUIRE(d.size() == legal.size());
    for (std::size_t i = 0; i < legal.size(); ++i) CHECK(d[i] == slots[legal[i]]);
  }

  SUBCASE("net profile validates parameters") {
    CHECK_THROWS_AS(evaluation::NetProfile(nullptr, *game), std::invalid_argument);
    auto leduc = games::make_game("leduc");
    auto params = std::make_shared<const apprentice::NetworkParams>(
        apprentice::init_params(apprentice::default_net_config(*game), 1));
    CHECK_THROWS_AS(evaluation::NetProfile(params, *leduc), std::invalid_argument);
  }
}

TEST_CASE("random agent samples legal actions uniformly") {
  auto game = games::make_game("goof6");
  games::MatchHistory h(*game);
  push_to_first_decision(h);
  REQUIRE(h.current()->legal_actions().size() == 6);

  evaluation::RandomAgent agent;
  agent.start_game(*game, games::PlayerRole::Player1, 123);
  CHECK(agent.name() == std::string("random"));

  const int n = 10000;
  std::vector<int> counts(6, 0);
  for (int i = 0; i < n; ++i) ++counts[agent.act(h)];
  // Four-sigma band around n/6.
  const double sigma = std::sqrt(n * (1.0 / 6.0) * (5.0 / 6.0));
  for (int c : counts) CHECK(std::abs(c - n / 6.0) < 4.0 * sigma);
}

TEST_CASE("net agent: greedy argmax, lowest-id ties, and sampling") {
  auto game = games::make_game("kuhn");
  games::MatchHistory h(*game);
  push_to_first_decision(h);

  SUBCASE("all-equal logits break ties toward the lowest action id") {
    auto params = std::make_shared<const apprentice::NetworkParams>(zero_net(*game));
    evaluation::NetAgent agent(params, /*sample=*/false);
    agent.start_game(*game, h.current()->acting_player(), 9);
    CHECK(agent.name() == std::string("net(greedy)"));
    CHECK(agent.act(h) == h.current()->legal_actions().front());
    CHECK(agent.act(h) == h.current()->legal_actions().front());
  }

  SUBCASE("greedy picks the action with the largest probability") {
    auto biased = zero_net(*game);
    biased.layers.back().b[1] = 5.0;  // favour action id 1
    auto params = std::make_shared<const apprentice::NetworkParams>(std::move(biased));
    evaluation::NetAgent agent(params, false);
    agent.start_game(*game, h.current()->acting_player(), 9);
    CHECK(agent.act(h) == 1);
  }

  SUBCASE("sampling follows the policy distribution") {
    auto params = std::make_shared<const apprentice::NetworkParams>(zero_net(*game));
    evaluation::NetAgent agent(params, /*sample=*/true);
    agent.start_game(*game, h.current()->acting_player(), 4);
    CHECK(agent.name() == std::string("net(sample)"));
    int ones = 0;
    const int n = 2000;
    for (int i = 0; i < n; ++i) ones += agent.act(h) == 1 ? 1 : 0;
    CHECK(ones > 900);   // ~4.5 sigma around 1000
    CHECK(ones < 1100);

    // An overwhelming logit makes sampling effectively deterministic.
    auto extreme = zero_net(*game);
    extreme.layers.back().b[0] = 30.0;
    evaluation::NetAgent hot(std::make_shared<const apprentice::NetworkParams>(std::move(extreme)),
                             true);
    hot.start_game(*game, h.current()->acting_player(), 4);
    for (int i = 0; i < 100; ++i) CHECK(hot.act(h) == 0);
  }

  SUBCASE("null parameters are rejected") {
    CHECK_THROWS_AS(evaluation::NetAgent(nullptr, false), std::invalid_argument);
  }
}

TEST_CASE("oos agent is deterministic and start_game resets its search state") {
  auto game = games::make_game("kuhn");
  oos::SearchConfig cfg;
  cfg.simulations = 200;
  cfg.targeting = game->default_targeting();
  auto playout = std::make_shared<const oos::UniformPlayout>();

  evaluation::OosAgent agent(cfg, playout, "oos:200");
  CHECK(agent.name() == std::string("oos:200"));

  games::MatchHistory h(*game);
  push_to_first_decision(h);

  agent.start_game(*game, games::PlayerRole::Player1, 4242);
  const games::ActionId first = agent.act(h);
  games::MatchHistory h2 = h;
  h2.push(first);
  if (h2.current()->is_terminal() || h2.current()->acting_player() == games::PlayerRole::Chance)
    push_to_first_decision(h2);
  const games::ActionId second = h2.current()->is_terminal() ? -1 : agent.act(h2);

  // Re-seeding from start_game reproduces the whole acting sequence; the
  // internal tree from the previous game must not leak into the next one.
  agent.start_game(*game, games::PlayerRole::Player1, 4242);
  CHECK(agent.act(h) == first);
  if (second >= 0) CHECK(agent.act(h2) == second);

  CHECK_THROWS_AS(evaluation::OosAgent(cfg, nullptr, "oos"), std::invalid_argument);
}

TEST_CASE("agent factory grammar and validation") {
  auto kuhn = games::make_game("kuhn");
  auto leduc = games::make_game("leduc");

  const std::string path = temp_path("xoos_eval_factory.xoosnet");
  apprentice::Checkpoint ckpt;
  ckpt.params = apprentice::init_params(apprentice::default_net_config(*kuhn), 31);
  ckpt.game_id = "kuhn";
  apprentice::save_checkpoint(ckpt, path);

  SUBCASE("accepted specs") {
    CHECK(evaluation::make_agent_factory("random", *kuhn)()->name() == std::string("random"));
    CHECK(evaluation::make_agent_factory("net:" + path, *kuhn)()->name() ==
          std::string("net(greedy)"));
    CHECK(evaluation::make_agent_factory("net:" + path + ":greedy", *kuhn)()->name() ==
          std::string("net(greedy)"));
    CHECK(evaluation::make_agent_factory("net:" + path + ":sample", *kuhn)()->name() ==
          std::string("net(sample)"));
    CHECK(evaluation::make_agent_factory("oos:500", *kuhn)()->name() == std::string("oos:500"));
    CHECK(evaluation::make_agent_factory("oos:250+net:" + path, *kuhn)()->name() ==
          std::string("oos:250+net"));
  }

  SUBCASE("factories produce independent agents") {
    auto factory = evaluation::make_agent_factory("random", *kuhn);
    auto a = factory();
    auto b = factory();
    CHECK(a.get() != b.get());
  }

  SUBCASE("malformed specs") {
    CHECK_THROWS_AS((void)evaluation::make_agent_factory("bogus", *kuhn), std::invalid_argument);
    CHECK_THROWS_AS((void)evaluation::make_agent_factory("net:", *kuhn), std::invalid_argument);
    CHECK_THROWS_AS((void)evaluation::make_agent_factory("oos:", *kuhn), std::invalid_argument);
    CHECK_THROWS_AS((void)evaluation::make_agent_factory("oos:abc", *kuhn),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)evaluation::make_agent_factory("oos:-5", *kuhn), std::invalid_argument);
    CHECK_THROWS_AS((void)evaluation::make_agent_factory("oos:0", *kuhn), std::invalid_argument);
    CHECK_THROWS_AS((void)evaluation::make_agent_factory("oos:10+foo:bar", *kuhn),
                    std::invalid_argument);
  }

  SUBCASE("checkpoint and game must agree") {
    CHECK_THROWS_AS((void)evaluation::make_agent_factory("net:" + path, *leduc),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)evaluation::make_agent_factory("oos:10+net:" + path, *leduc),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)evaluation::make_agent_factory("net:/nonexistent/net.bin", *kuhn),
                    std::runtime_error);
  }

  std::remove(path.c_str());
}

TEST_CASE("duplicate match play: accounting, determinism, swap symmetry, threads") {
  auto game = games::make_game("kuhn");
  auto random_factory = evaluation::make_agent_factory("random", *game);
  auto net_params = std::make_shared<const apprentice::NetworkParams>(
      apprentice::init_params(apprentice::default_net_config(*game), 5));
  evaluation::AgentFactory net_factory = [net_params] {
    return std::make_unique<evaluation::NetAgent>(net_params, /*sample=*/true);
  };

  const int n = 400;
  const std::uint64_t seed = 77;
  const evaluation::MatchResult r1 = evaluation::play_match(*game, random_factory, net_factory,
                                                            n, seed);
  CHECK(r1.game_id == std::string("kuhn"));
  CHECK(r1.agent_a == std::string("random"));
  CHECK(r1.agent_b == std::string("net(sample)"));
  CHECK(r1.games == n);
  CHECK(r1.wins + r1.draws + r1.losses == n);
  CHECK(r1.a_games_as_p1 == n / 2);
  CHECK(r1.win_rate_percent == doctest::Approx(100.0 * (r1.wins + 0.5 * r1.draws) / n));
  CHECK(r1.stderr_percent > 0.0);
  CHECK(r1.stderr_percent < 50.0);

  SUBCASE("same seed reproduces the same counts") {
    const auto r1b = evaluation::play_match(*game, random_factory, net_factory, n, seed);
    CHECK(r1b.wins == r1.wins);
    CHECK(r1b.draws == r1.draws);
    CHECK(r1b.losses == r1.losses);
  }

  SUBCASE("swapping the seats mirrors the result exactly") {
    const auto r2 = evaluation::play_match(*game, net_factory, random_factory, n, seed);
    CHECK(r2.wins == r1.losses);
    CHECK(r2.losses == r1.wins);
    CHECK(r2.draws == r1.draws);
    CHECK(r2.win_rate_percent + r1.win_rate_percent == doctest::Approx(100.0).epsilon(1e-12));
  }

  SUBCASE("thread count does not change outcomes") {
    const auto r3 = evaluation::play_match(*game, random_factory, net_factory, n, seed, 3);
    CHECK(r3.wins == r1.wins);
    CHECK(r3.draws == r1.draws);
    CHECK(r3.losses == r1.losses);
  }

  SUBCASE("n_games must be positive") {
    CHECK_THROWS_AS((void)evaluation::play_match(*game, random_factory, net_factory, 0, seed),
                    std::invalid_argument);
  }
}

TEST_CASE("identical deterministic agents draw every game of goofspiel") {
  auto game = games::make_game("goof6");
  auto params = std::make_shared<const apprentice::NetworkParams>(zero_net(*game));
  evaluation::AgentFactory greedy = [params] {
    return std::make_unique<evaluation::NetAgent>(params, /*sample=*/false);
  };

  const int n = 5000;
  const auto r = evaluation::play_match(*game, greedy, greedy, n, 2025);
  CHECK(r.draws == n);
  CHECK(r.wins == 0);
  CHECK(r.losses == 0);
  CHECK(r.win_rate_percent == doctest::Approx(50.0));
  CHECK(r.stderr_percent == doctest::Approx(100.0 * std::sqrt(0.25 / n)).epsilon(1e-12));

  // Serialization helpers.
  CHECK(evaluation::match_csv_header().rfind("game,agent_a,agent_b", 0) == 0);
  const std::string row = evaluation::match_csv_row(r);
  CHECK(row.find("goof6") != std::string::npos);
  CHECK(row.find("5000") != std::string::npos);
  const std::string text = evaluation::match_text(r);
  CHECK(text.find("win rate") != std::string::npos);
}

TEST_CASE("elo fitting") {
  SUBCASE("an even pair sits at the anchor rating") {
    const auto table = evaluation::elo_fit({"a", "b"}, {{0, 1, 1000.0, 500.0}}, 0);
    CHECK(table.ratings[0] == doctest::Approx(1500.0));
    CHECK(table.ratings[1] == doctest::Approx(1500.0).epsilon(1e-9));
  }

  SUBCASE("a 64% score maps to the logistic rating gap") {
    const auto table = evaluation::elo_fit({"a", "b"}, {{0, 1, 10000.0, 6400.0}}, 0);
    const double expected_gap = 400.0 * std::log10(0.64 / 0.36);
    CHECK(table.ratings[0] - table.ratings[1] == doctest::Approx(expected_gap).epsilon(1e-6));
    CHECK(table.ratings[0] == 1500.0);  // anchor is pinned exactly
  }

  SUBCASE("synthetic round robin recovers the generating ratings") {
    const std::vector<double> truth = {1500.0, 1550.0, 1600.0};
    std::mt19937_64 rng(424242);
    std::vector<evaluation::PairOutcome> results;
    const long long n = 100000;
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j) {
        const double e = 1.0 / (1.0 + std::pow(10.0, -(truth[i] - truth[j]) / 400.0));
        std::binomial_distribution<long long> wins(n, e);
        results.push_back({i, j, static_cast<double>(n), static_cast<double>(wins(rng))});
      }
    const auto table = evaluation::elo_fit({"low", "mid", "high"}, results, 0);
    CHECK(table.ratings[0] == 1500.0);
    CHECK(std::abs(table.ratings[1] - 1550.0) < 10.0);
    CHECK(std::abs(table.ratings[2] - 1600.0) < 10.0);

    // Changing the anchor rating translates every rating by the same amount.
    const auto shifted = evaluation::elo_fit({"low", "mid", "high"}, results, 0, 1700.0);
    for (int i = 0; i < 3; ++i)
      CHECK(shifted.ratings[i] - table.ratings[i] == doctest::Approx(200.0).epsilon(1e-6));

    // Re-anchoring on another agent preserves all rating differences.
    const auto re = evaluation::elo_fit({"low", "mid", "high"}, results, 2, table.ratings[2]);
    for (int i = 0; i < 3; ++i)
      CHECK(re.ratings[i] == doctest::Approx(table.ratings[i]).epsilon(1e-6));

    // Serialization helpers.
    const std::string csv = evaluation::elo_csv(table);
    CHECK(csv.rfind("agent,rating,anchor", 0) == 0);
    CHECK(csv.find("mid") != std::string::npos);
    const std::string text = evaluation::elo_text(table);
    CHECK(text.find("high") < text.find("mid"));  // sorted best first
    CHECK(text.find("(fixed)") != std::string::npos);
  }

  SUBCASE("validation") {
    CHECK_THROWS_AS((void)evaluation::elo_fit({}, {}, 0), std::invalid_argument);
    CHECK_THROWS_AS((void)evaluation::elo_fit({"a", "b"}, {{0, 1, 10.0, 5.0}}, 2),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)evaluation::elo_fit({"a", "b"}, {{0, 0, 10.0, 5.0}}, 0),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)evaluation::elo_fit({"a", "b"}, {{0, 1, 10.0, 11.0}}, 0),
                    std::invalid_argument);
    // Agent with no path of games to the anchor.
    CHECK_THROWS_AS((void)evaluation::elo_fit({"a", "b", "c"}, {{0, 1, 10.0, 5.0}}, 0),
                    std::invalid_argument);
  }
}

TEST_CASE("oos search with a net playout runs on goofspiel(13)" *
          doctest::timeout(600)) {
  auto game = games::make_game("goof13");
  auto params = std::make_shared<const apprentice::NetworkParams>(
      apprentice::init_params(apprentice::default_net_config(*game), 3));
  apprentice::NetPlayout playout(params);

  games::MatchHistory h(*game);
  push_to_first_decision(h);
  REQUIRE(h.current()->legal_actions().size() == 13);

  oos::SearchConfig cfg;
  cfg.simulations = 10000;
  cfg.targeting = game->default_targeting();
  oos::SearchContext ctx;
  std::mt19937_64 rng(6);
  const std::vector<double> dist = oos::run_search(ctx, *game, h, cfg, playout, rng);
  REQUIRE(dist.size() == 13);
  check_distribution(dist);
  CHECK(ctx.tree.episodes == 10000);
  CHECK(ctx.tree.node_count() > 100);
}
