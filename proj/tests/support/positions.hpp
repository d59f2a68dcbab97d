#pragma once

#include <cstdint>
#include <optional>

#include "miucb/board.hpp"
#include "miucb/nogo.hpp"

namespace fixtures {

// Exhaustive negamax: does the side to move win with best play?
bool nogo_mover_wins(const miucb::game::NoGo9State& s);

struct Decisive {
    miucb::game::NoGo9State state;
    miucb::game::Move winning;
};

// A NoGo position, reached by seeded random play, where exactly one move
// leaves the opponent without a legal move and every other move loses
// against best play.
std::optional<Decisive> find_decisive_nogo(std::uint64_t seed);

// The first position of a seeded random NoGo game in which the side to move
// has exactly one legal move.
std::optional<miucb::game::NoGo9State> find_single_move_nogo(std::uint64_t seed);

// Position after `plies` uniformly random legal NoGo moves.
miucb::game::NoGo9State random_nogo(std::uint64_t seed, int plies);

}  // namespace fixtures
