#include "miucb/go.hpp"

#include <ostream>
#include <stdexcept>

namespace miucb::game {

Go9State Go9State::from_diagram(std::string_view diagram, Player to_move, double komi) {
    Go9State s(komi);
    s.board_.set_stones(parse_diagram(diagram));
    s.to_move_ = to_move;
    return s;
}

bool Go9State::is_legal(Move m) const {
    if (is_terminal()) {
        return false;
    }
    if (m.is_pass()) {
        return true;
    }
    if (m.index >= kPoints) {
        return false;
    }
    const int p = m.index;
    return board_.at(p) == Stone::Empty && p != ko_ && board_.has_liberty_after(p, stone_of(to_move_));
}

void Go9State::legal_moves(std::vector<Move>& out) const {
    out.clear();
    if (is_terminal()) {
        return;
    }
    const Stone s = stone_of(to_move_);
    for (int p = 0; p < kPoints; ++p) {
        if (board_.at(p) == Stone::Empty && p != ko_ && board_.has_liberty_after(p, s)) {
            out.push_back(Move{static_cast<std::uint8_t>(p)});
        }
    }
    out.push_back(Move::pass());
}

std::vector<Move> Go9State::legal_moves() const {
    std::vector<Move> out;
    legal_moves(out);
    return out;
}

void Go9State::play(Move m) {
    if (!is_legal(m)) {
        throw std::invalid_argument("illegal Go move " + to_string(m));
    }
    play_unchecked(m);
}

void Go9State::play_unchecked(Move m) {
    ++moves_;
    if (m.is_pass()) {
        ++passes_;
        ko_ = -1;
    } else {
        passes_ = 0;
        const auto result = board_.place(m.index, stone_of(to_move_));
        ko_ = -1;
        if (result.captured == 1 && board_.string_size(m.index) == 1 && board_.liberty_count(m.index) == 1) {
            ko_ = result.captured_point;
        }
    }
    to_move_ = opponent(to_move_);
}

double Go9State::score_margin() const {
    const auto a = board_.area();
    return static_cast<double>(a.black - a.white) - komi_;
}

Player Go9State::winner() const {
    if (!is_terminal()) {
        throw std::logic_error("Go9State::winner on a game that is not over");
    }
    return score_margin() > 0.0 ? Player::Black : Player::White;
}

Go9State Go9State::mirrored() const {
    Go9State m = *this;
    std::array<Stone, kPoints> stones{};
    for (int p = 0; p < kPoints; ++p) {
        stones[p] = flip(board_.at(p));
    }
    m.board_.set_stones(stones);
    m.to_move_ = opponent(to_move_);
    return m;
}

Player random_playout(Go9State state, Rng& rng, Go9State* final) {
    std::array<std::uint8_t, kPoints> candidates{};
    while (!state.is_terminal()) {
        const Board& b = state.board();
        const Stone s = stone_of(state.to_move());
        const int ko = state.ko_point().value_or(-1);
        int n = b.empty_count();
        for (int i = 0; i < n; ++i) {
            candidates[i] = static_cast<std::uint8_t>(b.empty_point(i));
        }
        Move chosen = Move::pass();
        while (n > 0) {
            const int j = std::uniform_int_distribution<int>(0, n - 1)(rng);
            const int p = candidates[j];
            if (p != ko && !b.is_eye(p, s) && b.has_liberty_after(p, s)) {
                chosen = Move{static_cast<std::uint8_t>(p)};
                break;
            }
            candidates[j] = candidates[--n];
        }
        state.play_unchecked(chosen);
    }
    if (final) {
        *final = state;
    }
    return state.winner();
}

std::ostream& operator<<(std::ostream& os, const Go9State& s) {
    s.board().print(os);
    return os;
}

}  // namespace miucb::game
