#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>

#include "miucb/go.hpp"
#include "miucb/match.hpp"
#include "miucb/nogo.hpp"

using namespace miucb;
using namespace miucb::match;

namespace {

mcts::EngineConfig cheap(mcts::EngineKind kind, std::uint64_t playouts = 10) {
    mcts::EngineConfig c;
    c.kind = kind;
    c.playouts_per_move = playouts;
    return c;
}

MatchConfig small_match(GameKind game, std::size_t games) {
    MatchConfig c;
    c.game = game;
    c.engine_a = cheap(mcts::EngineKind::MiUct);
    c.engine_b = cheap(mcts::EngineKind::Uct);
    c.num_games = games;
    c.base_seed = 5;
    return c;
}

struct IllegalEngine {
    game::Move best_move(const game::NoGo9State&) { return game::Move::pass(); }
    mcts::SearchStats last_stats() const { return {}; }
    std::string name() const { return "broken"; }
};

}  // namespace

TEST_CASE("Wilson interval values") {
    struct Case {
        std::size_t k;
        std::size_t n;
        double lo;
        double hi;
    };
    for (const auto& c : {Case{550, 1000, 0.5190327082257413, 0.5805846159257033},
                          Case{179, 300, 0.5402711956434059, 0.6506178299198486},
                          Case{0, 10, 0.0, 0.27753279986288926}, Case{10, 10, 0.7224672001371106, 1.0},
                          Case{200, 400, 0.451234504169709, 0.548765495830291}}) {
        const auto ci = wilson_interval(c.k, c.n);
        CHECK(ci.low == doctest::Approx(c.lo).epsilon(1e-12));
        CHECK(ci.high == doctest::Approx(c.hi).epsilon(1e-12));
    }
    CHECK_THROWS_AS(wilson_interval(0, 0), std::invalid_argument);
    CHECK_THROWS_AS(wilson_interval(3, 2), std::invalid_argument);
}

TEST_CASE("a cheap NoGo game ends within 81 moves with a winner") {
    const auto r = run_game(GameKind::NoGo9, cheap(mcts::EngineKind::MiUct), cheap(mcts::EngineKind::Uct), 11);
    CHECK(r.move_count <= 81);
    CHECK(r.moves.size() == static_cast<std::size_t>(r.move_count));
    CHECK((r.winner == game::Player::Black || r.winner == game::Player::White));
    game::NoGo9State replay;
    for (auto m : r.moves) {
        REQUIRE(replay.is_legal(m));
        replay.play(m);
    }
    CHECK(replay.is_terminal());
    CHECK(replay.winner() == r.winner);
}

TEST_CASE("games are reproducible from their seed") {
    const auto a = run_game(GameKind::Go9, cheap(mcts::EngineKind::MiUct), cheap(mcts::EngineKind::Uct), 3);
    const auto b = run_game(GameKind::Go9, cheap(mcts::EngineKind::MiUct), cheap(mcts::EngineKind::Uct), 3);
    CHECK(a.moves == b.moves);
    CHECK(a.winner == b.winner);
    CHECK(a.move_count <= game::Go9State::kMoveCap);
}

TEST_CASE("each colour spends exactly its budget per move") {
    const auto r = run_game(GameKind::NoGo9, cheap(mcts::EngineKind::MiUct, 37), cheap(mcts::EngineKind::Uct, 53), 9);
    CHECK(r.simulations[0] == 37 * r.searches[0]);
    CHECK(r.simulations[1] == 53 * r.searches[1]);
    CHECK(r.searches[0] + r.searches[1] == static_cast<std::uint64_t>(r.move_count));
}

TEST_CASE("an engine returning an illegal move aborts the game") {
    IllegalEngine bad;
    mcts::Engine<game::NoGo9State> good(cheap(mcts::EngineKind::Uct));
    try {
        play_game(game::NoGo9State{}, good, bad);
        FAIL("expected an exception");
    } catch (const std::runtime_error& e) {
        const std::string what = e.what();
        CHECK(what.find("broken") != std::string::npos);
        CHECK(what.find("white") != std::string::npos);
        CHECK(what.find("move 1") != std::string::npos);
    }
}

TEST_CASE("colours alternate and the tally matches") {
    const auto result = run_match(small_match(GameKind::NoGo9, 6));
    REQUIRE(result.records.size() == 6);
    std::size_t wins = 0;
    for (std::size_t g = 0; g < 6; ++g) {
        const auto& r = result.records[g];
        CHECK(r.game_index == g);
        CHECK(r.black == (g % 2 == 0 ? Side::A : Side::B));
        CHECK(r.game_seed == game_seed(5, g));
        wins += r.winner == Side::A;
    }
    CHECK(result.summary.wins_a == wins);
    CHECK(result.summary.games == 6);
}

TEST_CASE("match records do not depend on parallelism") {
    auto c = small_match(GameKind::NoGo9, 8);
    const auto serial = run_match(c);
    c.parallelism = 3;
    const auto parallel = run_match(c);
    for (std::size_t g = 0; g < 8; ++g) {
        CHECK(serial.records[g].moves == parallel.records[g].moves);
        CHECK(serial.records[g].winner == parallel.records[g].winner);
    }
}

TEST_CASE("a game's transcript depends only on its seed and colour assignment") {
    const auto a = cheap(mcts::EngineKind::MiUct);
    const auto b = cheap(mcts::EngineKind::Uct);
    const auto r1 = run_game(GameKind::NoGo9, a, b, game_seed(5, 0));
    auto c = small_match(GameKind::NoGo9, 1);
    const auto m = run_match(c);
    CHECK(m.records[0].moves == r1.moves);
}

TEST_CASE("identical engines split colours evenly") {
    auto c = small_match(GameKind::NoGo9, 40);
    c.engine_b = c.engine_a;
    const auto r = run_match(c);
    std::size_t black_a = 0;
    for (const auto& rec : r.records) {
        black_a += rec.black == Side::A;
    }
    CHECK(black_a == 20);
}

TEST_CASE("match CSV layout and round trip") {
    const auto result = run_match(small_match(GameKind::NoGo9, 3));
    const auto path = std::filesystem::temp_directory_path() / "miucb_match.csv";
    emit_match(result.records, result.summary, path);
    std::ifstream in(path);
    std::vector<std::string> lines;
    for (std::string line; std::getline(in, line);) {
        lines.push_back(line);
    }
    REQUIRE(lines.size() == 5);
    CHECK(lines[0] == "game,black,winner,moves,seed");
    CHECK(lines[4].rfind("# win_rate_a=", 0) == 0);

    const auto [records, summary] = read_match(path);
    REQUIRE(records.size() == 3);
    for (std::size_t g = 0; g < 3; ++g) {
        CHECK(records[g].game_index == result.records[g].game_index);
        CHECK(records[g].black == result.records[g].black);
        CHECK(records[g].winner == result.records[g].winner);
        CHECK(records[g].move_count == result.records[g].move_count);
        CHECK(records[g].game_seed == result.records[g].game_seed);
    }
    CHECK(std::abs(summary.win_rate_a - result.summary.win_rate_a) < 1e-4);
    CHECK(summary.games == 3);
    std::filesystem::remove(path);
}

TEST_CASE("an empty record set is rejected") {
    CHECK_THROWS_AS(emit_match({}, MatchSummary{}, std::filesystem::temp_directory_path() / "miucb_empty.csv"),
                    std::invalid_argument);
    CHECK_THROWS_AS(summarize({}), std::invalid_argument);
}

TEST_CASE("match config validation") {
    auto c = small_match(GameKind::NoGo9, 0);
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = small_match(GameKind::NoGo9, 1);
    c.engine_a.playouts_per_move = 0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    CHECK(parse_game("go9") == GameKind::Go9);
    CHECK(parse_game("nogo9") == GameKind::NoGo9);
    CHECK_THROWS_AS(parse_game("chess"), std::invalid_argument);
}
