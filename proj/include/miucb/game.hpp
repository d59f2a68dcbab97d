#pragma once

#include <concepts>
#include <random>
#include <vector>

#include "miucb/board.hpp"

namespace miucb::game {

using Rng = std::mt19937_64;

/// What the search engines and the match runner need from a game: value
/// semantics, legal-move generation, terminal detection and scoring, and a
/// uniformly random playout to the end.
template <class G>
concept GameState = std::copyable<G> &&
    requires(const G& cg, G& g, Move m, std::vector<Move>& out, Rng& rng) {
        { cg.to_move() } -> std::same_as<Player>;
        { cg.is_terminal() } -> std::same_as<bool>;
        { cg.winner() } -> std::same_as<Player>;
        { cg.is_legal(m) } -> std::same_as<bool>;
        { cg.move_count() } -> std::convertible_to<int>;
        cg.legal_moves(out);
        g.play(m);
        g.play_unchecked(m);
        { random_playout(cg, rng) } -> std::same_as<Player>;
    };

/// Parses 9 rows of 'X' (black), 'O' (white) and '.'; whitespace between
/// characters is ignored. Throws std::invalid_argument on malformed input.
std::array<Stone, kPoints> parse_diagram(std::string_view diagram);

}  // namespace miucb::game
