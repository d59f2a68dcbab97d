#pragma once

#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

#include "miucb/board.hpp"
#include "miucb/game.hpp"

namespace miucb::game {

/// 9x9 Go: area scoring, suicide illegal, simple ko, komi 7.5 by default.
/// The game ends after two consecutive passes or kMoveCap moves.
class Go9State {
public:
    static constexpr int kMoveCap = 300;
    static constexpr double kDefaultKomi = 7.5;

    explicit Go9State(double komi = kDefaultKomi) : komi_(komi) {}

    /// Position from a diagram; no ko point, no passes, move count 0.
    static Go9State from_diagram(std::string_view diagram, Player to_move, double komi = kDefaultKomi);

    Player to_move() const { return to_move_; }
    const Board& board() const { return board_; }
    int move_count() const { return moves_; }
    int consecutive_passes() const { return passes_; }
    std::optional<int> ko_point() const { return ko_ < 0 ? std::nullopt : std::optional<int>(ko_); }
    double komi() const { return komi_; }
    std::uint64_t hash() const { return board_.hash(); }

    bool is_legal(Move m) const;
    /// Legal points in index order, then pass.
    void legal_moves(std::vector<Move>& out) const;
    std::vector<Move> legal_moves() const;

    /// Throws std::invalid_argument on an illegal move or a finished game.
    void play(Move m);
    void play_unchecked(Move m);

    bool is_terminal() const { return passes_ >= 2 || moves_ >= kMoveCap; }
    /// black area - white area - komi.
    double score_margin() const;
    /// Throws std::logic_error if the game is not over.
    Player winner() const;

    /// Colours swapped and the other side to move.
    Go9State mirrored() const;

private:
    Board board_;
    Player to_move_ = Player::Black;
    int ko_ = -1;
    int passes_ = 0;
    int moves_ = 0;
    double komi_;
};

/// Uniformly random legal moves to the end of the game, never filling a
/// single-point eye of the mover's colour; pass only when nothing else is
/// left. Stops at the move cap and scores the board as it stands.
/// If final is set, it receives the terminal position.
Player random_playout(Go9State state, Rng& rng, Go9State* final = nullptr);

std::ostream& operator<<(std::ostream& os, const Go9State& s);

}  // namespace miucb::game
