// End-to-end tests of the command-line binary: subcommand behaviour, exit
// codes, file outputs, config echo round-trips, and the interactive play loop
// (driven through a pipe). The binary path is injected by the build as
// XOOS_BIN_PATH.

#include <sys/wait.h>

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "doctest.h"
#include "xoos/evaluation/best_response.hpp"
#include "xoos/evaluation/profile.hpp"
#include "xoos/games/registry.hpp"

namespace {

namespace fs = std::filesystem;

const fs::path& scratch_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "xoos_cli_scratch";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string bin() { return std::string(XOOS_BIN_PATH); }

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<std::string> read_lines(const fs::path& p) {
  std::ifstream in(p);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

struct CliResult {
  int code = -1;
  std::string out;
  std::string err;
};

// Runs a full shell command (caller includes the binary), capturing exit
// code, stdout, and stderr; stdin_text is piped in through a file.
CliResult run_cmd(const std::string& command, const std::string& stdin_text = "") {
  static int counter = 0;
  const fs::path in = scratch_dir() / ("stdin_" + std::to_string(counter));
  const fs::path out = scratch_dir() / ("stdout_" + std::to_string(counter));
  const fs::path err = scratch_dir() / ("stderr_" + std::to_string(counter));
  ++counter;
  {
    std::ofstream f(in, std::ios::binary);
    f << stdin_text;
  }
  const std::string full = command + " < " + in.string() + " > " + out.string() + " 2> " +
                           err.string();
  const int raw = std::system(full.c_str());
  CliResult r;
  if (raw != -1 && WIFEXITED(raw)) r.code = WEXITSTATUS(raw);
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

CliResult run_cli(const std::string& args, const std::string& stdin_text = "") {
  return run_cmd(bin() + " " + args, stdin_text);
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("describe lists games and reports metadata") {
  const auto list = run_cli("describe");
  CHECK(list.code == 0);
  for (const char* id : {"kuhn", "leduc", "goof6", "goof13", "liars1", "liars2"})
    CHECK(contains(list.out, id));

  const auto leduc = run_cli("describe --game leduc");
  CHECK(leduc.code == 0);
  CHECK(contains(leduc.out, "leduc"));
  CHECK(contains(leduc.out, "encoding_dim"));
  CHECK(contains(leduc.out, "23"));
  CHECK(contains(leduc.out, "default_targeting"));

  const auto json = run_cli("describe --game goof6 --json");
  CHECK(json.code == 0);
  const auto j = nlohmann::json::parse(json.out);
  CHECK(j.at("game") == "goof6");
  CHECK(j.at("encoding_dim") == 30);
  CHECK(j.at("max_actions") == 6);
  CHECK(j.at("targeting_modes").size() == 3);
  CHECK(j.at("targeting_modes").is_array());
  CHECK(j.at("default_targeting").is_string());

  const auto bad = run_cli("describe --game not-a-game");
  CHECK(bad.code == 2);
  CHECK(contains(bad.err, "not-a-game"));
}

TEST_CASE("top-level parsing errors exit with code 2") {
  CHECK(run_cli("").code == 2);                    // a subcommand is required
  CHECK(run_cli("frobnicate").code == 2);          // unknown subcommand
  CHECK(run_cli("match --game kuhn").code == 2);   // missing required options
  CHECK(run_cli("play --game kuhn --seat 3").code == 2);  // out-of-range option
}

TEST_CASE("exploit reports exact exploitability and appends CSV rows") {
  const fs::path csv = scratch_dir() / "exploit.csv";

  const auto r = run_cli("exploit --game kuhn --uniform --csv " + csv.string());
  CHECK(r.code == 0);
  CHECK(contains(r.out, "game kuhn"));
  CHECK(contains(r.out, "profile uniform"));
  CHECK(contains(r.out, "exploitability"));

  // The printed value matches an in-process computation.
  auto game = xoos::games::make_game("kuhn");
  xoos::evaluation::UniformProfile uniform;
  const double expected = xoos::evaluation::exploitability(*game, uniform);
  std::istringstream tokens(r.out);
  std::string tok, last;
  while (tokens >> tok) last = tok;
  CHECK(std::stod(last) == doctest::Approx(expected).epsilon(1e-5));

  // Appending keeps one header and accumulates rows.
  const auto r2 = run_cli("exploit --game kuhn --uniform --csv " + csv.string());
  CHECK(r2.code == 0);
  const auto lines = read_lines(csv);
  REQUIRE(lines.size() == 3);
  CHECK(lines[0] == "game,profile,exploitability");
  CHECK(contains(lines[1], "kuhn,uniform,"));
  CHECK(lines[1] == lines[2]);
}

TEST_CASE("exploit validates its flags and refuses oversized games") {
  CHECK(run_cli("exploit --game kuhn").code == 2);  // neither --uniform nor --checkpoint
  CHECK(run_cli("exploit --game kuhn --uniform --checkpoint x.bin").code == 2);
  CHECK(run_cli("exploit --game not-a-game --uniform").code == 2);

  const auto big = run_cli("exploit --game goof13 --uniform");
  CHECK(big.code == 1);
  CHECK(contains(big.err, "exploit:"));
}

TEST_CASE("train writes artifacts and the config echo round-trips") {
  const fs::path run1 = scratch_dir() / "run1";
  const auto r = run_cli(
      "train --game kuhn --iters 2 --sims 16 --games-per-iter 2 --steps 2 --minibatch 4 "
      "--checkpoint-every 1 --probe-every 1 --concurrent 4 --seed 9 --out " +
      run1.string());
  CHECK(r.code == 0);

  for (const char* name : {"config.txt", "metrics.jsonl", "checkpoint-000000.xoosnet",
                           "checkpoint-000001.xoosnet", "checkpoint-000002.xoosnet",
                           "checkpoint-final.xoosnet"})
    CHECK(fs::exists(run1 / name));

  const std::string config = slurp(run1 / "config.txt");
  CHECK(contains(config, "game=kuhn"));
  CHECK(contains(config, "seed=9"));
  CHECK(contains(config, "total_iterations=2"));
  CHECK(contains(config, "search_simulations=16"));
  CHECK(contains(config, "reservoir_capacity="));

  const auto metrics = read_lines(run1 / "metrics.jsonl");
  REQUIRE(metrics.size() == 2);
  for (const auto& line : metrics) {
    const auto j = nlohmann::json::parse(line);
    CHECK(j.contains("iter"));
    CHECK(j.contains("games"));
    CHECK(j.contains("steps"));
    CHECK(j.contains("mean_loss"));
    CHECK(j.contains("reservoir_size"));
    CHECK(j.contains("exploitability"));  // probe cadence 1
  }

  // Re-running from the echoed config reproduces configuration and metrics.
  const fs::path run2 = scratch_dir() / "run2";
  const auto rt = run_cli("train --config " + (run1 / "config.txt").string() + " --out " +
                          run2.string());
  CHECK(rt.code == 0);
  CHECK(slurp(run2 / "config.txt") == config);
  CHECK(slurp(run2 / "metrics.jsonl") == slurp(run1 / "metrics.jsonl"));
}

TEST_CASE("train validates configuration") {
  CHECK(run_cli("train --iters 1").code == 2);  // no game anywhere

  const fs::path bad_cfg = scratch_dir() / "bad.cfg";
  {
    std::ofstream f(bad_cfg);
    f << "game=kuhn\nnot_a_key=5\n";
  }
  CHECK(run_cli("train --config " + bad_cfg.string() + " --out " +
                (scratch_dir() / "never").string())
            .code == 2);

  const fs::path nan_cfg = scratch_dir() / "nan.cfg";
  {
    std::ofstream f(nan_cfg);
    f << "game=kuhn\nminibatch=banana\n";
  }
  CHECK(run_cli("train --config " + nan_cfg.string()).code == 2);

  CHECK(run_cli("train --config " + (scratch_dir() / "missing.cfg").string()).code == 2);

  // XOOS_OUT is honoured when --out is omitted.
  const fs::path env_out = scratch_dir() / "env_out";
  const auto r = run_cmd("XOOS_OUT=" + env_out.string() + " " + bin() +
                         " train --game kuhn --iters 0 --steps 0");
  CHECK(r.code == 0);
  CHECK(fs::exists(env_out / "checkpoint-final.xoosnet"));
}

TEST_CASE("match plays head-to-head and writes a CSV row") {
  const fs::path csv = scratch_dir() / "match.csv";
  const auto r = run_cli("match --game kuhn --a random --b random --games 50 --seed 3 --csv " +
                         csv.string());
  CHECK(r.code == 0);
  CHECK(contains(r.out, "random vs random"));
  CHECK(contains(r.out, "win rate"));
  const auto lines = read_lines(csv);
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] == "game,agent_a,agent_b,games,wins,draws,losses,a_games_as_p1,"
                    "win_rate_percent,stderr_percent");
  CHECK(contains(lines[1], "kuhn,random,random,50,"));

  // Net and search agents through the full spec grammar.
  const fs::path net_run = scratch_dir() / "netrun";
  CHECK(run_cli("train --game kuhn --iters 0 --steps 0 --out " + net_run.string()).code == 0);
  const std::string ckpt = (net_run / "checkpoint-final.xoosnet").string();
  const auto rn = run_cli("match --game kuhn --a net:" + ckpt +
                          " --b oos:50 --games 6 --seed 4");
  CHECK(rn.code == 0);
  CHECK(contains(rn.out, "net(greedy) vs oos:50"));
}

TEST_CASE("match surfaces agent errors with distinct exit codes") {
  CHECK(run_cli("match --game kuhn --a bogus --b random --games 2").code == 2);
  CHECK(run_cli("match --game kuhn --a random --b random --games 0").code == 2);
  CHECK(run_cli("match --game not-a-game --a random --b random").code == 2);

  // Checkpoint for the wrong game: invalid_argument -> 2.
  const fs::path net_run = scratch_dir() / "netrun2";
  CHECK(run_cli("train --game kuhn --iters 0 --steps 0 --out " + net_run.string()).code == 0);
  const std::string ckpt = (net_run / "checkpoint-final.xoosnet").string();
  const auto mismatch = run_cli("match --game leduc --a net:" + ckpt + " --b random --games 2");
  CHECK(mismatch.code == 2);
  CHECK(contains(mismatch.err, "mismatch"));

  // Unreadable checkpoint file: runtime error -> 1.
  CHECK(run_cli("match --game kuhn --a net:/does/not/exist.xoosnet --b random --games 2").code ==
        1);
}

TEST_CASE("elo runs a round robin and fits ratings") {
  const fs::path csv = scratch_dir() / "elo.csv";
  const auto r = run_cli(
      "elo --game kuhn --agent random --agent random --agent random --games 10 --seed 5 "
      "--anchor 0 --csv " +
      csv.string());
  CHECK(r.code == 0);
  CHECK(contains(r.out, "random: "));
  CHECK(contains(r.out, "(fixed)"));
  const auto lines = read_lines(csv);
  REQUIRE(lines.size() == 4);
  CHECK(lines[0] == "agent,rating,anchor");

  CHECK(run_cli("elo --game kuhn --agent random --games 4").code == 2);
  CHECK(run_cli("elo --game kuhn --agent random --agent random --anchor 7 --games 4").code == 2);
}

TEST_CASE("play drives an interactive game from stdin") {
  // Enough "0" answers for any Kuhn line; the game ends and utilities print.
  const auto r = run_cli("play --game kuhn --opponent random --seat 1 --seed 7",
                         "0\n0\n0\n0\n");
  CHECK(r.code == 0);
  CHECK(contains(r.out, "legal actions:"));
  CHECK(contains(r.out, "your utility:"));
  CHECK(contains(r.out, "opponent utility:"));

  // Garbage and out-of-range answers re-prompt instead of crashing; EOF ends
  // the session cleanly.
  const auto bad = run_cli("play --game kuhn --opponent random --seat 2 --seed 7",
                           "banana\n42\n");
  CHECK(bad.code == 0);
  CHECK(contains(bad.out, "invalid choice, try again"));
  CHECK(contains(bad.out, "(input closed)"));

  // Immediate EOF.
  const auto eof = run_cli("play --game kuhn --opponent random --seat 1 --seed 9", "");
  CHECK(eof.code == 0);
  CHECK(contains(eof.out, "(input closed)"));
}
