#pragma once

#include <array>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "miucb/board.hpp"
#include "miucb/mcts.hpp"

namespace miucb::match {

enum class GameKind { Go9, NoGo9 };

std::string to_string(GameKind g);
GameKind parse_game(std::string_view token);

/// The two engines of a match are labelled A and B.
enum class Side : std::uint8_t { A, B };

constexpr char side_char(Side s) {
    return s == Side::A ? 'A' : 'B';
}

struct MatchConfig {
    GameKind game = GameKind::NoGo9;
    mcts::EngineConfig engine_a;
    mcts::EngineConfig engine_b;
    std::size_t num_games = 1000;
    std::uint64_t base_seed = 0;
    unsigned parallelism = 1;
    std::filesystem::path output;  // empty: no file

    void validate() const;
};

struct MatchRecord {
    std::size_t game_index = 0;
    Side black = Side::A;
    Side winner = Side::A;
    int move_count = 0;
    std::uint64_t game_seed = 0;
    std::vector<game::Move> moves;
};

struct MatchSummary {
    std::size_t wins_a = 0;
    std::size_t games = 0;
    double win_rate_a = 0.0;
    double wilson_low = 0.0;
    double wilson_high = 0.0;
};

struct Interval {
    double low;
    double high;
};

inline constexpr double kZ95 = 1.959963984540054;

/// Wilson score interval for a binomial proportion.
Interval wilson_interval(std::size_t successes, std::size_t trials, double z = kZ95);

/// Per-game seed: mix_seed(base_seed, game_index) (SplitMix64 based, see
/// seeding.hpp). Engine streams are derived from it by colour, so a game's
/// transcript depends only on the seed and on which configuration plays
/// which colour.
std::uint64_t game_seed(std::uint64_t base_seed, std::size_t game_index);
std::uint64_t engine_seed(std::uint64_t game_seed, game::Player colour);

struct GameResult {
    game::Player winner = game::Player::Black;
    int move_count = 0;
    std::vector<game::Move> moves;
    /// Searches run and simulations spent, indexed by colour.
    std::array<std::uint64_t, 2> searches{};
    std::array<std::uint64_t, 2> simulations{};
};

template <class E, class G>
concept MoveSource = requires(E& e, const E& ce, const G& g) {
    { e.best_move(g) } -> std::same_as<game::Move>;
    { ce.last_stats() } -> std::same_as<mcts::SearchStats>;
    { ce.name() } -> std::convertible_to<std::string>;
};

/// Plays state out to the end. Throws std::runtime_error naming the engine
/// if it returns an illegal move.
template <game::GameState G, MoveSource<G> BlackEngine, MoveSource<G> WhiteEngine>
GameResult play_game(G state, BlackEngine& black, WhiteEngine& white) {
    GameResult result;
    while (!state.is_terminal()) {
        const int c = static_cast<int>(state.to_move());
        const game::Move m = c == 0 ? black.best_move(state) : white.best_move(state);
        const auto stats = c == 0 ? black.last_stats() : white.last_stats();
        ++result.searches[c];
        result.simulations[c] += stats.random_playouts + stats.terminal_evaluations;
        if (!state.is_legal(m)) {
            throw std::runtime_error("engine " + std::string(c == 0 ? black.name() : white.name()) + " playing " +
                                     (c == 0 ? "black" : "white") + " returned illegal move " +
                                     game::to_string(m) + " at move " + std::to_string(state.move_count()));
        }
        state.play_unchecked(m);
        result.moves.push_back(m);
    }
    result.winner = state.winner();
    result.move_count = state.move_count();
    return result;
}

/// Plays one game from the initial position. Throws std::runtime_error if an
/// engine returns an illegal move.
GameResult run_game(GameKind game, const mcts::EngineConfig& black, const mcts::EngineConfig& white,
                    std::uint64_t seed);

struct MatchResult {
    std::vector<MatchRecord> records;  // sorted by game_index
    MatchSummary summary;
};

/// Game g has A as Black when g is even. Games are spread over
/// config.parallelism worker threads; the records do not depend on it.
/// on_game, if set, is called once per finished game (serialised).
MatchResult run_match(const MatchConfig& config,
                      const std::function<void(const MatchRecord&)>& on_game = {});

MatchSummary summarize(const std::vector<MatchRecord>& records);

/// CSV `game,black,winner,moves,seed` plus a trailing
/// `# win_rate_a=<r> n=<games> wilson95=[<lo>,<hi>]` line.
void emit_match(const std::vector<MatchRecord>& records, const MatchSummary& summary,
                const std::filesystem::path& path);

/// Reads back the rows and the summary line written by emit_match.
std::pair<std::vector<MatchRecord>, MatchSummary> read_match(const std::filesystem::path& path);

}  // namespace miucb::match
