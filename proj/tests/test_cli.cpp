#include <doctest.h>

#include <filesystem>
#include <sstream>
#include <stdexcept>

#include "miucb/cli.hpp"

using namespace miucb;
using namespace miucb::cli;

namespace {

Command parse(std::vector<std::string> args) {
    args.insert(args.begin(), "miucb");
    return parse_cli(args);
}

int run_cli(std::vector<std::string> args, std::string* out_text = nullptr, std::string* err_text = nullptr) {
    args.insert(args.begin(), "miucb");
    std::ostringstream out;
    std::ostringstream err;
    const int code = run(args, out, err);
    if (out_text) {
        *out_text = out.str();
    }
    if (err_text) {
        *err_text = err.str();
    }
    return code;
}

}  // namespace

TEST_CASE("bandit defaults") {
    const auto cmd = std::get<BanditCommand>(parse({"bandit"}));
    CHECK(cmd.config.num_arms == 60);
    CHECK(cmd.config.num_tasks == 2000);
    CHECK(cmd.config.horizon == 5000);
    CHECK(cmd.config.policies.size() == 7);
    CHECK(cmd.output.empty());
}

TEST_CASE("bandit with explicit policies") {
    const auto cmd = std::get<BanditCommand>(parse({"bandit", "--policy", "ucb1", "--policy", "miucb-ep", "--arms",
                                                    "10", "--tasks", "5", "--horizon", "100", "--seed", "3",
                                                    "--out", "c.csv", "--parallel", "2"}));
    REQUIRE(cmd.config.policies.size() == 2);
    CHECK(cmd.config.policies[0].name() == "ucb1");
    CHECK(cmd.config.policies[1].name() == "miucb-ep");
    CHECK(cmd.config.num_arms == 10);
    CHECK(cmd.config.num_tasks == 5);
    CHECK(cmd.config.horizon == 100);
    CHECK(cmd.config.seed == 3);
    CHECK(cmd.config.parallelism == 2);
    CHECK(cmd.output == "c.csv");
}

TEST_CASE("match command mirrors the NoGo table protocol") {
    const auto cmd = std::get<MatchCommand>(parse({"match", "--game", "nogo9", "--engine-a", "miuct", "--engine-b",
                                                   "uct:C=0.7", "--playouts", "1000", "--games", "1000", "--seed",
                                                   "1", "--out", "m.csv"}));
    const auto& c = cmd.config;
    CHECK(c.game == match::GameKind::NoGo9);
    CHECK(c.engine_a.kind == mcts::EngineKind::MiUct);
    CHECK(c.engine_b.kind == mcts::EngineKind::Uct);
    CHECK(c.engine_b.exploration_c == 0.7);
    CHECK(c.engine_a.playouts_per_move == 1000);
    CHECK(c.engine_b.playouts_per_move == 1000);
    CHECK(c.num_games == 1000);
    CHECK(c.base_seed == 1);
    CHECK(c.output == "m.csv");
}

TEST_CASE("usage errors") {
    CHECK_THROWS_AS(parse({"match", "--engine-a", "miuct", "--engine-b", "uct:C=0.7"}), UsageError);
    CHECK_THROWS_AS(parse({"match", "--game", "chess", "--engine-a", "miuct", "--engine-b", "miuct"}), UsageError);
    CHECK_THROWS_AS(parse({"match", "--game", "go9", "--engine-a", "rave", "--engine-b", "miuct"}), UsageError);
    CHECK_THROWS_AS(parse({"bandit", "--policy", "thompson"}), UsageError);
    CHECK_THROWS_AS(parse({"bandit", "--arms", "1"}), UsageError);
    CHECK_THROWS_AS(parse({"bandit", "--frobnicate"}), UsageError);
    CHECK_THROWS_AS(parse({}), UsageError);
}

TEST_CASE("exit codes") {
    std::string err;
    CHECK(run_cli({"match", "--engine-a", "miuct", "--engine-b", "uct:C=0.7"}, nullptr, &err) == kUsageError);
    CHECK(err.find("--game") != std::string::npos);
    CHECK(run_cli({"bandit", "--bogus"}) == kUsageError);

    std::string out;
    CHECK(run_cli({"bandit", "--policy", "ucb1", "--arms", "3", "--tasks", "2", "--horizon", "20"}, &out) ==
          kSuccess);
    CHECK(out.find("ucb1") != std::string::npos);

    CHECK(run_cli({"bandit", "--policy", "ucb1", "--arms", "3", "--tasks", "2", "--horizon", "20", "--out",
                   "/nonexistent-dir/c.csv"}) == kRuntimeFailure);

    CHECK(run_cli({"match", "--game", "nogo9", "--engine-a", "miuct", "--engine-b", "uct:C=0.7", "--playouts", "5",
                   "--games", "2"},
                  &out) == kSuccess);
    CHECK(out.find("A won") != std::string::npos);

    CHECK(run_cli({"--help"}, &out) == kSuccess);
    CHECK(out.find("bandit") != std::string::npos);
}
