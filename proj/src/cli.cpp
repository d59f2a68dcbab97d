#include "miucb/cli.hpp"

#include <CLI11.hpp>
#include <cstdio>

namespace miucb::cli {

namespace {

struct Options {
    // bandit
    std::vector<std::string> policies;
    std::size_t arms = 60;
    std::size_t tasks = 2000;
    std::uint64_t horizon = 5000;
    double ucb_c = bandit::PolicyConfig{}.exploration_c;
    bool received_regret = false;
    // match
    std::string game;
    std::string engine_a;
    std::string engine_b;
    std::uint64_t playouts = 1000;
    std::size_t games = 1000;
    // shared
    std::uint64_t seed = 0;
    std::string out;
    unsigned parallel = 1;
};

void build(CLI::App& app, Options& o, CLI::App*& bandit_cmd, CLI::App*& match_cmd) {
    app.require_subcommand(1);

    bandit_cmd = app.add_subcommand("bandit", "Gaussian multi-armed bandit testbed");
    bandit_cmd->add_option("--policy", o.policies,
                           "Policy to run (repeatable): ucb1 iucb iucb-ep miucb-nor miucb-nor-ep miucb miucb-ep. "
                           "Default: all seven");
    bandit_cmd->add_option("--arms", o.arms, "Arms per task")->capture_default_str();
    bandit_cmd->add_option("--tasks", o.tasks, "Number of random tasks")->capture_default_str();
    bandit_cmd->add_option("--horizon", o.horizon, "Plays per task")->capture_default_str();
    bandit_cmd->add_option("--seed", o.seed, "Base seed")->capture_default_str();
    bandit_cmd->add_option("--out", o.out, "Curve CSV output path");
    bandit_cmd->add_option("--parallel", o.parallel, "Worker threads")->capture_default_str();
    bandit_cmd->add_option("--ucb-c", o.ucb_c, "UCB1 exploration constant")->capture_default_str();
    bandit_cmd->add_flag("--received-regret", o.received_regret,
                         "Regret from received rewards instead of true means");

    match_cmd = app.add_subcommand("match", "Engine-vs-engine match");
    match_cmd->add_option("--game", o.game, "go9 or nogo9")->required();
    match_cmd->add_option("--engine-a", o.engine_a, "uct:C=<real> or miuct")->required();
    match_cmd->add_option("--engine-b", o.engine_b, "uct:C=<real> or miuct")->required();
    match_cmd->add_option("--playouts", o.playouts, "Playouts per move for both engines")->capture_default_str();
    match_cmd->add_option("--games", o.games, "Number of games")->capture_default_str();
    match_cmd->add_option("--seed", o.seed, "Base seed")->capture_default_str();
    match_cmd->add_option("--out", o.out, "Match CSV output path");
    match_cmd->add_option("--parallel", o.parallel, "Worker threads")->capture_default_str();
}

}  // namespace

Command parse_cli(const std::vector<std::string>& args) {
    CLI::App app{"Modified Improved UCB bandits and Mi-UCT game search", "miucb"};
    Options o;
    CLI::App* bandit_cmd = nullptr;
    CLI::App* match_cmd = nullptr;
    build(app, o, bandit_cmd, match_cmd);

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        auto* sub = bandit_cmd->parsed() ? bandit_cmd : match_cmd->parsed() ? match_cmd : nullptr;
        return HelpRequest{sub ? sub->help() : app.help()};
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what(), app.help());
    }

    try {
        if (bandit_cmd->parsed()) {
            BanditCommand cmd;
            auto& c = cmd.config;
            c.num_arms = o.arms;
            c.num_tasks = o.tasks;
            c.horizon = o.horizon;
            c.seed = o.seed;
            c.parallelism = o.parallel;
            c.regret_mode = o.received_regret ? testbed::RegretMode::Received : testbed::RegretMode::Pseudo;
            if (o.policies.empty()) {
                c.policies = bandit::testbed_variants(o.horizon);
            }
            for (const auto& token : o.policies) {
                auto p = bandit::PolicyConfig::from_name(token);
                p.horizon = o.horizon;
                c.policies.push_back(p);
            }
            for (auto& p : c.policies) {
                p.exploration_c = o.ucb_c;
            }
            c.validate();
            cmd.output = o.out;
            return cmd;
        }
        MatchCommand cmd;
        auto& c = cmd.config;
        c.game = match::parse_game(o.game);
        c.engine_a = mcts::EngineConfig::parse(o.engine_a);
        c.engine_b = mcts::EngineConfig::parse(o.engine_b);
        c.engine_a.playouts_per_move = o.playouts;
        c.engine_b.playouts_per_move = o.playouts;
        c.num_games = o.games;
        c.base_seed = o.seed;
        c.parallelism = o.parallel;
        c.output = o.out;
        c.validate();
        return cmd;
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what(), app.help());
    }
}

namespace {

int run_bandit(const BanditCommand& cmd, std::ostream& out) {
    const auto curves = testbed::run_testbed(cmd.config);
    if (!cmd.output.empty()) {
        testbed::emit_curves(curves, cmd.output);
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "%-14s %16s %14s\n", "policy", "cum_regret", "optimal_pct");
    out << buf;
    for (const auto& c : curves) {
        std::snprintf(buf, sizeof buf, "%-14s %16.3f %14.2f\n", c.policy.c_str(), c.cum_regret.back(),
                      c.optimal_pct.back());
        out << buf;
    }
    return kSuccess;
}

int run_match(const MatchCommand& cmd, std::ostream& out, std::ostream& err) {
    const auto& c = cmd.config;
    std::size_t done = 0;
    std::size_t wins_a = 0;
    const auto result = match::run_match(c, [&](const match::MatchRecord& r) {
        ++done;
        wins_a += r.winner == match::Side::A;
        err << "game " << r.game_index << " black=" << match::side_char(r.black)
            << " winner=" << match::side_char(r.winner) << " moves=" << r.move_count << "  [A " << wins_a << "/"
            << done << "]\n";
    });
    if (!c.output.empty()) {
        match::emit_match(result.records, result.summary, c.output);
    }
    const auto& s = result.summary;
    char buf[256];
    std::snprintf(buf, sizeof buf, "%s %s vs %s, %llu playouts: A won %zu/%zu = %.4f, wilson95=[%.4f,%.4f]\n",
                  match::to_string(c.game).c_str(), c.engine_a.name().c_str(), c.engine_b.name().c_str(),
                  static_cast<unsigned long long>(c.engine_a.playouts_per_move), s.wins_a, s.games, s.win_rate_a,
                  s.wilson_low, s.wilson_high);
    out << buf;
    return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Command cmd;
    try {
        cmd = parse_cli(args);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n\n" << e.usage();
        return kUsageError;
    }
    try {
        if (auto* h = std::get_if<HelpRequest>(&cmd)) {
            out << h->text;
            return kSuccess;
        }
        if (auto* b = std::get_if<BanditCommand>(&cmd)) {
            return run_bandit(*b, out);
        }
        return run_match(std::get<MatchCommand>(cmd), out, err);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kRuntimeFailure;
    }
}

}  // namespace miucb::cli
