#include "miucb/nogo.hpp"

#include <ostream>
#include <stdexcept>

namespace miucb::game {

NoGo9State NoGo9State::from_diagram(std::string_view diagram, Player to_move) {
    NoGo9State s;
    s.board_.set_stones(parse_diagram(diagram));
    s.to_move_ = to_move;
    s.moves_ = kPoints - s.board_.empty_count();
    return s;
}

bool NoGo9State::is_legal_for(int point, Player p) const {
    const Stone s = stone_of(p);
    return board_.at(point) == Stone::Empty && !board_.captures(point, s) && board_.has_liberty_after(point, s);
}

bool NoGo9State::is_legal(Move m) const {
    return !m.is_pass() && m.index < kPoints && is_legal_for(m.index, to_move_);
}

void NoGo9State::legal_moves(std::vector<Move>& out) const {
    out.clear();
    for (int p = 0; p < kPoints; ++p) {
        if (is_legal_for(p, to_move_)) {
            out.push_back(Move{static_cast<std::uint8_t>(p)});
        }
    }
}

std::vector<Move> NoGo9State::legal_moves() const {
    std::vector<Move> out;
    legal_moves(out);
    return out;
}

void NoGo9State::play(Move m) {
    if (!is_legal(m)) {
        throw std::invalid_argument("illegal NoGo move " + to_string(m));
    }
    play_unchecked(m);
}

void NoGo9State::play_unchecked(Move m) {
    board_.place(m.index, stone_of(to_move_));
    ++moves_;
    to_move_ = opponent(to_move_);
}

bool NoGo9State::is_terminal() const {
    for (int i = 0; i < board_.empty_count(); ++i) {
        if (is_legal_for(board_.empty_point(i), to_move_)) {
            return false;
        }
    }
    return true;
}

Player NoGo9State::winner() const {
    if (!is_terminal()) {
        throw std::logic_error("NoGo9State::winner on a game that is not over");
    }
    return opponent(to_move_);
}

NoGo9State NoGo9State::mirrored() const {
    NoGo9State m = *this;
    std::array<Stone, kPoints> stones{};
    for (int p = 0; p < kPoints; ++p) {
        stones[p] = flip(board_.at(p));
    }
    m.board_.set_stones(stones);
    m.to_move_ = opponent(to_move_);
    return m;
}

Player random_playout(NoGo9State state, Rng& rng) {
    std::array<std::uint8_t, kPoints> candidates{};
    for (;;) {
        const Board& b = state.board();
        const Stone s = stone_of(state.to_move());
        int n = b.empty_count();
        for (int i = 0; i < n; ++i) {
            candidates[i] = static_cast<std::uint8_t>(b.empty_point(i));
        }
        int chosen = -1;
        while (n > 0) {
            const int j = std::uniform_int_distribution<int>(0, n - 1)(rng);
            const int p = candidates[j];
            if (!b.captures(p, s) && b.has_liberty_after(p, s)) {
                chosen = p;
                break;
            }
            candidates[j] = candidates[--n];
        }
        if (chosen < 0) {
            return opponent(state.to_move());
        }
        state.play_unchecked(Move{static_cast<std::uint8_t>(chosen)});
    }
}

std::ostream& operator<<(std::ostream& os, const NoGo9State& s) {
    s.board().print(os);
    return os;
}

}  // namespace miucb::game
