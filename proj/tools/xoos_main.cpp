#include <algorithm>
#include <cctype>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "xoos/apprentice/checkpoint.hpp"
#include "xoos/evaluation/agents.hpp"
#include "xoos/evaluation/best_response.hpp"
#include "xoos/evaluation/elo.hpp"
#include "xoos/evaluation/match.hpp"
#include "xoos/evaluation/profile.hpp"
#include "xoos/games/registry.hpp"
#include "xoos/training/trainer.hpp"

namespace {

using xoos::games::Game;

std::shared_ptr<const Game> resolve_game(const std::string& id) {
  return xoos::games::make_game(id);  // throws std::invalid_argument listing known games
}

// ---------------------------------------------------------------- train ----

struct TrainFlags {
  std::string game;
  std::string config_path;
  std::string out;
  int iters = -1;
  int sims = -1;
  int games_per_iter = -1;
  int steps = -1;
  int minibatch = -1;
  int checkpoint_every = -1;
  int workers = -1;
  int probe_every = -1;
  int concurrent = -1;
  std::optional<std::uint64_t> seed;
};

std::map<std::string, std::string> read_kv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line is not key=value: '" + line + "'");
    kv[line.substr(0, eq)] = line.substr(eq + 1);
  }
  return kv;
}

int cmd_train(const TrainFlags& f) {
  std::string game_id = f.game;
  std::map<std::string, std::string> file_kv;
  if (!f.config_path.empty()) {
    file_kv = read_kv_file(f.config_path);
    if (game_id.empty() && file_kv.count("game")) game_id = file_kv.at("game");
  }
  if (game_id.empty()) {
    std::cerr << "train: --game (or a config file with game=...) is required\n";
    return 2;
  }
  auto game = resolve_game(game_id);

  xoos::training::TrainLoopConfig cfg = xoos::training::default_loop_config(*game);
  auto apply_int = [&](const char* key, int& field) {
    if (auto it = file_kv.find(key); it != file_kv.end()) field = std::stoi(it->second);
  };
  try {
    apply_int("total_iterations", cfg.total_iterations);
    apply_int("games_per_iteration", cfg.games_per_iteration);
    apply_int("steps_per_iteration", cfg.steps_per_iteration);
    apply_int("concurrent_searches", cfg.concurrent_searches);
    apply_int("minibatch", cfg.minibatch);
    apply_int("checkpoint_every", cfg.checkpoint_every);
    apply_int("workers", cfg.workers);
    apply_int("exploit_probe_every", cfg.exploit_probe_every);
    apply_int("search_simulations", cfg.search_simulations);
    if (auto it = file_kv.find("seed"); it != file_kv.end())
      cfg.seed = std::stoull(it->second);
  } catch (const std::exception&) {
    std::cerr << "train: config file has a non-numeric value\n";
    return 2;
  }
  for (const auto& [key, value] : file_kv) {
    static const std::vector<std::string> known = {
        "checkpoint_every", "concurrent_searches", "exploit_probe_every", "game",
        "games_per_iteration", "minibatch", "reservoir_capacity", "search_simulations",
        "seed", "steps_per_iteration", "total_iterations", "workers"};
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      std::cerr << "train: unknown config key '" << key << "'\n";
      return 2;
    }
    (void)value;
  }

  if (f.iters >= 0) cfg.total_iterations = f.iters;
  if (f.sims > 0) cfg.search_simulations = f.sims;
  if (f.games_per_iter > 0) cfg.games_per_iteration = f.games_per_iter;
  if (f.steps >= 0) cfg.steps_per_iteration = f.steps;
  if (f.minibatch > 0) cfg.minibatch = f.minibatch;
  if (f.checkpoint_every >= 0) cfg.checkpoint_every = f.checkpoint_every;
  if (f.workers > 0) cfg.workers = f.workers;
  if (f.probe_every >= 0) cfg.exploit_probe_every = f.probe_every;
  if (f.concurrent > 0) cfg.concurrent_searches = f.concurrent;
  if (f.seed.has_value()) cfg.seed = *f.seed;
  cfg.out_dir = f.out;

  xoos::training::run_training(game_id, cfg);
  return 0;
}

// -------------------------------------------------------------- exploit ----

int cmd_exploit(const std::string& game_id, bool uniform, const std::string& checkpoint,
                const std::string& csv) {
  if (uniform == !checkpoint.empty()) {
    std::cerr << "exploit: pass exactly one of --uniform or --checkpoint\n";
    return 2;
  }
  auto game = resolve_game(game_id);

  std::unique_ptr<xoos::evaluation::StrategyProfile> profile;
  std::string source;
  if (uniform) {
    profile = std::make_unique<xoos::evaluation::UniformProfile>();
    source = "uniform";
  } else {
    auto ckpt = xoos::apprentice::load_checkpoint(checkpoint);
    if (ckpt.game_id != game->id())
      throw std::invalid_argument("checkpoint game mismatch: trained for '" + ckpt.game_id +
                                  "', requested game '" + game->id() + "'");
    auto params =
        std::make_shared<const xoos::apprentice::NetworkParams>(std::move(ckpt.params));
    profile = std::make_unique<xoos::evaluation::NetProfile>(params, *game);
    source = checkpoint;
  }

  double value = 0.0;
  try {
    value = xoos::evaluation::exploitability(*game, *profile);
  } catch (const std::invalid_argument& e) {
    std::cerr << "exploit: " << e.what() << "\n";
    return 1;
  }
  std::cout << "game " << game->id() << " profile " << source << " exploitability " << value
            << "\n";
  if (!csv.empty()) {
    const bool fresh = [&] {
      std::ifstream probe(csv);
      return !probe.good() || probe.peek() == std::ifstream::traits_type::eof();
    }();
    std::ofstream out(csv, std::ios::app);
    if (!out) throw std::runtime_error("cannot write CSV: " + csv);
    if (fresh) out << "game,profile,exploitability\n";
    out << game->id() << ',' << source << ',' << value << '\n';
  }
  return 0;
}

// ---------------------------------------------------------------- match ----

int cmd_match(const std::string& game_id, const std::string& spec_a, const std::string& spec_b,
              int n_games, std::uint64_t seed, int threads, const std::string& csv) {
  auto game = resolve_game(game_id);
  const auto factory_a = xoos::evaluation::make_agent_factory(spec_a, *game);
  const auto factory_b = xoos::evaluation::make_agent_factory(spec_b, *game);
  const auto result = xoos::evaluation::play_match(*game, factory_a, factory_b, n_games, seed,
                                                   threads);
  std::cout << xoos::evaluation::match_text(result);
  if (!csv.empty()) {
    std::ofstream out(csv, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write CSV: " + csv);
    out << xoos::evaluation::match_csv_header() << xoos::evaluation::match_csv_row(result);
  }
  return 0;
}

// ------------------------------------------------------------------ elo ----

int cmd_elo(const std::string& game_id, const std::vector<std::string>& specs, int games_per_pair,
            std::uint64_t seed, int anchor, const std::string& csv) {
  if (specs.size() < 2) {
    std::cerr << "elo: need at least two --agent specs\n";
    return 2;
  }
  if (anchor < 0 || anchor >= static_cast<int>(specs.size())) {
    std::cerr << "elo: --anchor index out of range\n";
    return 2;
  }
  auto game = resolve_game(game_id);
  std::vector<xoos::evaluation::AgentFactory> factories;
  std::vector<std::string> names;
  for (const auto& spec : specs) {
    factories.push_back(xoos::evaluation::make_agent_factory(spec, *game));
    names.push_back(spec);
  }

  std::vector<xoos::evaluation::PairOutcome> outcomes;
  std::uint64_t pair_index = 0;
  for (std::size_t i = 0; i < factories.size(); ++i) {
    for (std::size_t j = i + 1; j < factories.size(); ++j) {
      const auto r = xoos::evaluation::play_match(*game, factories[i], factories[j],
                                                  games_per_pair, seed + pair_index, 1);
      std::cout << xoos::evaluation::match_text(r);
      xoos::evaluation::PairOutcome po;
      po.agent_a = static_cast<int>(i);
      po.agent_b = static_cast<int>(j);
      po.games = r.games;
      po.score_a = r.wins + 0.5 * r.draws;
      outcomes.push_back(po);
      ++pair_index;
    }
  }
  const auto table = xoos::evaluation::elo_fit(names, outcomes, anchor);
  std::cout << "\n" << xoos::evaluation::elo_text(table);
  if (!csv.empty()) {
    std::ofstream out(csv, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write CSV: " + csv);
    out << xoos::evaluation::elo_csv(table);
  }
  return 0;
}

// ----------------------------------------------------------------- play ----

int cmd_play(const std::string& game_id, const std::string& opponent_spec, int human_seat,
             std::uint64_t seed) {
  auto game = resolve_game(game_id);
  const auto opponent_factory = xoos::evaluation::make_agent_factory(opponent_spec, *game);

  using xoos::games::PlayerRole;
  const PlayerRole human = human_seat == 2 ? PlayerRole::Player2 : PlayerRole::Player1;
  const PlayerRole bot_seat = xoos::games::other(human);

  auto bot = opponent_factory();
  bot->start_game(*game, bot_seat, seed ^ 0xb07b07ull);
  std::mt19937_64 chance_rng(seed ^ 0xc4a2ce);

  xoos::games::MatchHistory history(*game);
  std::cout << "Playing " << game->id() << " as Player" << (human == PlayerRole::Player1 ? 1 : 2)
            << " vs " << bot->name() << ". Enter the index of your action.\n";

  while (!history.current()->is_terminal()) {
    const xoos::games::State& s = *history.current();
    if (s.acting_player() == PlayerRole::Chance) {
      const auto outcomes = s.chance_outcomes();
      double u = static_cast<double>(chance_rng() >> 11) * 0x1.0p-53, acc = 0.0;
      xoos::games::ActionId pick = outcomes.back().first;
      for (const auto& [a, p] : outcomes) {
        acc += p;
        if (u < acc) {
          pick = a;
          break;
        }
      }
      history.push(pick);
      continue;
    }
    if (s.acting_player() == bot_seat) {
      history.push(bot->act(history));
      std::cout << "[opponent moved]\n";
      continue;
    }
    std::cout << "\n" << s.observation_string(human) << "\n";
    const auto legal = s.legal_actions();
    std::cout << "legal actions:";
    for (std::size_t i = 0; i < legal.size(); ++i) std::cout << " [" << i << "]=" << legal[i];
    std::cout << "\nyour choice> " << std::flush;

    std::string line;
    if (!std::getline(std::cin, line)) {
      std::cout << "\n(input closed)\n";
      return 0;
    }
    int choice = -1;
    try {
      std::size_t used = 0;
      choice = std::stoi(line, &used);
      while (used < line.size() && std::isspace(static_cast<unsigned char>(line[used]))) ++used;
      if (used != line.size()) choice = -1;
    } catch (const std::exception&) {
      choice = -1;
    }
    if (choice < 0 || choice >= static_cast<int>(legal.size())) {
      std::cout << "invalid choice, try again\n";
      continue;
    }
    history.push(legal[choice]);
  }

  const xoos::games::State& terminal = *history.current();
  std::cout << "\n=== terminal ===\n"
            << terminal.to_string() << "\nyour utility: " << terminal.utility(human)
            << "\nopponent utility: " << terminal.utility(bot_seat) << "\n";
  return 0;
}

// -------------------------------------------------------------- describe ----

int cmd_describe(const std::string& game_id, bool as_json) {
  if (game_id.empty()) {
    for (const auto& id : xoos::games::list_games()) std::cout << id << "\n";
    return 0;
  }
  auto game = resolve_game(game_id);
  const auto d = xoos::games::describe(*game);
  if (as_json)
    std::cout << xoos::games::describe_json(d) << "\n";
  else
    std::cout << xoos::games::describe_text(d);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ExIt-OOS: online outcome sampling experts with neural apprentices"};
  app.require_subcommand(1);

  TrainFlags tf;
  auto* train = app.add_subcommand("train", "Run the Expert Iteration training loop");
  train->add_option("--game", tf.game, "game id (see 'describe')");
  train->add_option("--config", tf.config_path, "key=value file (a previous run's config echo)");
  train->add_option("--iters", tf.iters, "training iterations");
  train->add_option("--sims", tf.sims, "OOS episodes per decision");
  train->add_option("--games-per-iter", tf.games_per_iter, "self-play games per iteration");
  train->add_option("--steps", tf.steps, "optimizer steps per iteration");
  train->add_option("--minibatch", tf.minibatch, "minibatch size");
  train->add_option("--checkpoint-every", tf.checkpoint_every, "checkpoint cadence (iterations)");
  train->add_option("--workers", tf.workers, "self-play worker threads");
  train->add_option("--probe-every", tf.probe_every, "exploitability probe cadence (0 = off)");
  train->add_option("--concurrent", tf.concurrent, "concurrent episodes per search");
  std::uint64_t train_seed = 0;
  train->add_option("--seed", train_seed, "master seed");
  train->add_option("--out", tf.out, "output directory (XOOS_OUT as fallback)");

  std::string ex_game, ex_ckpt, ex_csv;
  bool ex_uniform = false;
  auto* exploit = app.add_subcommand("exploit", "Exact exploitability of a profile");
  exploit->add_option("--game", ex_game, "game id")->required();
  exploit->add_flag("--uniform", ex_uniform, "evaluate the uniform profile");
  exploit->add_option("--checkpoint", ex_ckpt, "evaluate a network checkpoint");
  exploit->add_option("--csv", ex_csv, "append result to this CSV");

  std::string m_game, m_a, m_b, m_csv;
  int m_games = 5000, m_threads = 1;
  std::uint64_t m_seed = 1;
  auto* match = app.add_subcommand("match", "Head-to-head match between two agents");
  match->add_option("--game", m_game, "game id")->required();
  match->add_option("--a", m_a, "agent A spec")->required();
  match->add_option("--b", m_b, "agent B spec")->required();
  match->add_option("--games", m_games, "number of games")->check(CLI::PositiveNumber);
  match->add_option("--seed", m_seed, "match seed");
  match->add_option("--threads", m_threads, "worker threads");
  match->add_option("--csv", m_csv, "write result row to this CSV");

  std::string e_game, e_csv;
  std::vector<std::string> e_agents;
  int e_games = 1000, e_anchor = 0;
  std::uint64_t e_seed = 1;
  auto* elo = app.add_subcommand("elo", "Round-robin tournament with an Elo fit");
  elo->add_option("--game", e_game, "game id")->required();
  elo->add_option("--agent", e_agents, "agent spec (repeat; at least two)");
  elo->add_option("--games", e_games, "games per pairing")->check(CLI::PositiveNumber);
  elo->add_option("--seed", e_seed, "tournament seed");
  elo->add_option("--anchor", e_anchor, "index of the 1500-rated anchor agent");
  elo->add_option("--csv", e_csv, "write ratings to this CSV");

  std::string p_game, p_opp = "oos:10000";
  int p_seat = 1;
  std::uint64_t p_seed = 1;
  auto* play = app.add_subcommand("play", "Play a game against an agent in the terminal");
  play->add_option("--game", p_game, "game id")->required();
  play->add_option("--opponent", p_opp, "opponent agent spec");
  play->add_option("--seat", p_seat, "your seat (1 or 2)")->check(CLI::Range(1, 2));
  play->add_option("--seed", p_seed, "game seed");

  std::string d_game;
  bool d_json = false;
  auto* describe = app.add_subcommand("describe", "Describe a game (or list all games)");
  describe->add_option("--game", d_game, "game id");
  describe->add_flag("--json", d_json, "JSON output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  if (train->count("--seed")) tf.seed = train_seed;

  try {
    if (app.got_subcommand(train)) return cmd_train(tf);
    if (app.got_subcommand(exploit)) return cmd_exploit(ex_game, ex_uniform, ex_ckpt, ex_csv);
    if (app.got_subcommand(match))
      return cmd_match(m_game, m_a, m_b, m_games, m_seed, m_threads, m_csv);
    if (app.got_subcommand(elo)) return cmd_elo(e_game, e_agents, e_games, e_seed, e_anchor, e_csv);
    if (app.got_subcommand(play)) return cmd_play(p_game, p_opp, p_seat, p_seed);
    if (app.got_subcommand(describe)) return cmd_describe(d_game, d_json);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
