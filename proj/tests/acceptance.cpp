// Acceptance run: one PASS/FAIL line per criterion. Criteria 1-5 are the
// experiment-level claims; 6 replays the property suites compiled into this
// binary and adds the self-play null test.

#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "miucb/match.hpp"
#include "miucb/testbed.hpp"

using namespace miucb;

namespace {

struct Verdict {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* format, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, format, args...);
    return buf;
}

const testbed::RegretCurve& curve(const std::vector<testbed::RegretCurve>& curves, const std::string& name) {
    for (const auto& c : curves) {
        if (c.policy == name) {
            return c;
        }
    }
    throw std::logic_error("missing curve " + name);
}

std::vector<testbed::RegretCurve> bandit_run(unsigned parallelism) {
    testbed::TestbedConfig config;
    config.num_tasks = 500;
    config.num_arms = 60;
    config.horizon = 5000;
    config.seed = 7;
    config.parallelism = parallelism;
    for (const char* name : {"ucb1", "miucb-nor", "iucb-ep", "miucb-ep"}) {
        config.policies.push_back(bandit::PolicyConfig::from_name(name));
        config.policies.back().horizon = config.horizon;
    }
    return testbed::run_testbed(config);
}

Verdict bandit_ordering(const std::vector<testbed::RegretCurve>& curves) {
    const double ucb1 = curve(curves, "ucb1").cum_regret.back();
    const double miucb_ep = curve(curves, "miucb-ep").cum_regret.back();
    const double iucb_ep = curve(curves, "iucb-ep").cum_regret.back();
    return {ucb1 < miucb_ep && miucb_ep < iucb_ep,
            fmt("final regret ucb1=%.1f miucb-ep=%.1f iucb-ep=%.1f (need ucb1 < miucb-ep < iucb-ep)", ucb1, miucb_ep,
                iucb_ep)};
}

Verdict plateau(const std::vector<testbed::RegretCurve>& curves) {
    const auto& nor = curve(curves, "miucb-nor").optimal_pct;
    const double at_2500 = nor[2499];
    const double at_5000 = nor[4999];
    const double ucb1 = curve(curves, "ucb1").optimal_pct.back();
    const bool pass = std::abs(at_5000 - at_2500) < 2.0 && at_5000 < ucb1;
    return {pass, fmt("miucb-nor optimal%% %.2f at 2500, %.2f at 5000; ucb1 %.2f at 5000", at_2500, at_5000, ucb1)};
}

Verdict episodic_restart(const std::vector<testbed::RegretCurve>& curves) {
    const auto& r = curve(curves, "iucb-ep").cum_regret;
    // cum_regret[t] is the total after play t+1; a window [a, b] of plays
    // gains r[b-1] - r[a-2].
    const double before = r[270] - r[248];
    const double after = r[299] - r[277];
    return {after > before, fmt("iucb-ep regret gain plays [250,271]=%.3f, [279,300]=%.3f", before, after)};
}

match::MatchSummary play(match::GameKind game, const std::string& a, const std::string& b, std::uint64_t playouts,
                         std::size_t games, std::uint64_t seed, unsigned parallelism) {
    match::MatchConfig config;
    config.game = game;
    config.engine_a = mcts::EngineConfig::parse(a);
    config.engine_b = mcts::EngineConfig::parse(b);
    config.engine_a.playouts_per_move = playouts;
    config.engine_b.playouts_per_move = playouts;
    config.num_games = games;
    config.base_seed = seed;
    config.parallelism = parallelism;
    return match::run_match(config).summary;
}

std::string describe(const match::MatchSummary& s) {
    return fmt("A won %zu/%zu = %.1f%%, Wilson95 [%.1f%%, %.1f%%]", s.wins_a, s.games, 100.0 * s.win_rate_a,
               100.0 * s.wilson_low, 100.0 * s.wilson_high);
}

Verdict nogo_match(unsigned parallelism) {
    const auto s = play(match::GameKind::NoGo9, "miuct", "uct:C=0.7", 1000, 300, 1, parallelism);
    return {s.win_rate_a >= 0.52, "NoGo miuct vs uct:C=0.7, 1000 playouts: " + describe(s) + " (need >= 52%)"};
}

Verdict go_match(unsigned parallelism) {
    const auto s = play(match::GameKind::Go9, "miuct", "uct:C=0.5", 1000, 200, 1, parallelism);
    return {s.win_rate_a >= 0.48 && s.win_rate_a <= 0.68,
            "Go miuct vs uct:C=0.5, 1000 playouts: " + describe(s) + " (need 48%..68%)"};
}

bool run_suite(const char* name, const char* test_cases, const char* source_file, std::string& failed) {
    doctest::Context context;
    context.setOption("quiet", true);
    if (test_cases) {
        context.setOption("test-case", test_cases);
    }
    if (source_file) {
        context.setOption("source-file", source_file);
    }
    const int rc = context.run();
    if (rc != 0 || context.shouldExit()) {
        failed += failed.empty() ? name : std::string(", ") + name;
        return false;
    }
    return true;
}

Verdict property_suites(unsigned parallelism) {
    std::string failed;
    bool ok = true;
    ok &= run_suite("bound identity", "bound identity*", nullptr, failed);
    ok &= run_suite("n_arm_samples table", "n_arm_samples table", nullptr, failed);
    ok &= run_suite("episode schedule",
                    "episode budgets,episodic Improved UCB consumes budgets*,episode horizons at the root*,"
                    "per-node episode and deadline*",
                    nullptr, failed);
    ok &= run_suite("visit conservation", "visit conservation*", nullptr, failed);
    ok &= run_suite("Go rules", nullptr, "*test_go.cpp", failed);
    ok &= run_suite("NoGo legality", nullptr, "*test_nogo.cpp", failed);
    ok &= run_suite("oracle equivalence", "policies match straight-line*,fixed-horizon Improved UCB matches*", nullptr,
                    failed);

    // Identical cheap engines: A and B differ only in their seeds.
    const auto null = play(match::GameKind::NoGo9, "uct:C=0.7", "uct:C=0.7", 20, 400, 99, parallelism);
    const bool null_ok = null.wilson_low <= 0.5 && 0.5 <= null.wilson_high;
    if (!null_ok) {
        failed += failed.empty() ? "self-play null" : ", self-play null";
    }
    ok &= null_ok;
    return {ok, "suites: " + (failed.empty() ? std::string("all passed") : "failed " + failed) +
                    "; self-play null " + describe(null)};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Acceptance criteria; prints one PASS/FAIL line each"};
    std::vector<int> only;
    unsigned parallelism = std::max(1u, std::thread::hardware_concurrency());
    app.add_option("criteria", only, "Criterion numbers to run (default: all)")->check(CLI::Range(1, 6));
    app.add_option("--parallel", parallelism, "Worker threads")->check(CLI::PositiveNumber);
    CLI11_PARSE(app, argc, argv);
    const std::set<int> selected = only.empty() ? std::set<int>{1, 2, 3, 4, 5, 6} : std::set<int>(only.begin(), only.end());

    std::vector<testbed::RegretCurve> curves;
    if (selected.count(1) || selected.count(2) || selected.count(3)) {
        curves = bandit_run(parallelism);
    }

    bool all = true;
    auto report = [&](int id, const char* title, auto&& check) {
        if (!selected.count(id)) {
            return;
        }
        const auto start = std::chrono::steady_clock::now();
        const Verdict v = check();
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        all &= v.pass;
        std::cout << "criterion " << id << " " << (v.pass ? "PASS" : "FAIL") << " " << title << ": " << v.detail
                  << fmt(" [%.0fs]", secs) << std::endl;
    };
    report(1, "bandit ordering", [&] { return bandit_ordering(curves); });
    report(2, "plateau", [&] { return plateau(curves); });
    report(3, "episodic restart", [&] { return episodic_restart(curves); });
    report(4, "NoGo match", [&] { return nogo_match(parallelism); });
    report(5, "Go match", [&] { return go_match(parallelism); });
    report(6, "property suites", [&] { return property_suites(parallelism); });
    return all ? 0 : 1;
}
