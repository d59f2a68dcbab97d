#pragma once

#include <array>
#include <random>
#include <vector>

#include "miucb/game.hpp"

namespace toy {

using miucb::game::Move;
using miucb::game::Player;

// Black picks one of three moves, White one of three replies, then the game
// ends. leaves[b][w] names the winner.
struct TwoPly {
    std::array<std::array<Player, 3>, 3> leaves{};
};

class ToyState {
public:
    ToyState() = default;
    explicit ToyState(const TwoPly* game) : game_(game) {}

    Player to_move() const { return depth_ == 1 ? Player::White : Player::Black; }
    bool is_terminal() const { return depth_ == 2; }
    Player winner() const { return game_->leaves[first_][second_]; }
    bool is_legal(Move m) const { return !is_terminal() && !m.is_pass() && m.index < 3; }
    int move_count() const { return depth_; }
    void legal_moves(std::vector<Move>& out) const {
        out.clear();
        if (!is_terminal()) {
            for (std::uint8_t i = 0; i < 3; ++i) {
                out.push_back(Move{i});
            }
        }
    }
    void play(Move m) { play_unchecked(m); }
    void play_unchecked(Move m) {
        (depth_ == 0 ? first_ : second_) = m.index;
        ++depth_;
    }

private:
    const TwoPly* game_ = nullptr;
    int depth_ = 0;
    int first_ = 0;
    int second_ = 0;
};

inline Player random_playout(ToyState s, miucb::game::Rng& rng) {
    while (!s.is_terminal()) {
        s.play_unchecked(Move{static_cast<std::uint8_t>(std::uniform_int_distribution<int>(0, 2)(rng))});
    }
    return s.winner();
}

static_assert(miucb::game::GameState<ToyState>);

}  // namespace toy
