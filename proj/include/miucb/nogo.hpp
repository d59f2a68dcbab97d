#pragma once

#include <iosfwd>
#include <string_view>
#include <vector>

#include "miucb/board.hpp"
#include "miucb/game.hpp"

namespace miucb::game {

/// 9x9 NoGo. A move may neither capture nor leave its own string without
/// liberties; there is no pass. The side to move with no legal point loses.
class NoGo9State {
public:
    NoGo9State() = default;

    static NoGo9State from_diagram(std::string_view diagram, Player to_move);

    Player to_move() const { return to_move_; }
    const Board& board() const { return board_; }
    int move_count() const { return moves_; }
    std::uint64_t hash() const { return board_.hash(); }

    bool is_legal(Move m) const;
    void legal_moves(std::vector<Move>& out) const;
    std::vector<Move> legal_moves() const;
    bool is_legal_for(int point, Player p) const;

    void play(Move m);
    void play_unchecked(Move m);

    bool is_terminal() const;
    /// The player not to move. Throws std::logic_error if not terminal.
    Player winner() const;

    NoGo9State mirrored() const;

private:
    Board board_;
    Player to_move_ = Player::Black;
    int moves_ = 0;
};

/// Uniformly random legal placements until the side to move is stuck.
Player random_playout(NoGo9State state, Rng& rng);

std::ostream& operator<<(std::ostream& os, const NoGo9State& s);

}  // namespace miucb::game
