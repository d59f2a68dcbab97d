#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <iosfwd>
#include <string>

namespace miucb::game {

inline constexpr int kSize = 9;
inline constexpr int kPoints = kSize * kSize;

enum class Player : std::uint8_t { Black = 0, White = 1 };

constexpr Player opponent(Player p) {
    return p == Player::Black ? Player::White : Player::Black;
}

enum class Stone : std::uint8_t { Empty = 0, Black = 1, White = 2 };

constexpr Stone stone_of(Player p) {
    return p == Player::Black ? Stone::Black : Stone::White;
}

constexpr Stone flip(Stone s) {
    return s == Stone::Black ? Stone::White : s == Stone::White ? Stone::Black : Stone::Empty;
}

/// Move encoding shared by logs and engines: 0..80 row-major points, 81 = pass.
struct Move {
    std::uint8_t index = kPassIndex;

    static constexpr std::uint8_t kPassIndex = kPoints;

    static constexpr Move pass() { return Move{kPassIndex}; }
    static constexpr Move at(int row, int col) { return Move{static_cast<std::uint8_t>(row * kSize + col)}; }

    constexpr bool is_pass() const { return index == kPassIndex; }
    constexpr int row() const { return index / kSize; }
    constexpr int col() const { return index % kSize; }

    friend constexpr bool operator==(Move, Move) = default;
    friend constexpr auto operator<=>(Move, Move) = default;
};

/// "pass" or column letter (A..J, no I) plus row number, row 0 printed as 9.
std::string to_string(Move m);

/// 81-bit set of intersections.
struct PointSet {
    std::uint64_t lo = 0;
    std::uint64_t hi = 0;

    void set(int p) { (p < 64 ? lo : hi) |= std::uint64_t{1} << (p & 63); }
    void reset(int p) { (p < 64 ? lo : hi) &= ~(std::uint64_t{1} << (p & 63)); }
    bool test(int p) const { return ((p < 64 ? lo : hi) >> (p & 63)) & 1U; }
    int count() const { return std::popcount(lo) + std::popcount(hi); }
    bool empty() const { return (lo | hi) == 0; }
    PointSet& operator|=(const PointSet& o) {
        lo |= o.lo;
        hi |= o.hi;
        return *this;
    }
    friend bool operator==(const PointSet&, const PointSet&) = default;
};

struct Neighbors {
    std::array<std::uint8_t, 4> points{};
    std::uint8_t count = 0;
};

const Neighbors& neighbors(int p);
const Neighbors& diagonals(int p);

/// Zobrist key of a stone at a point.
std::uint64_t zobrist(int p, Stone s);

/// Stone arrangement with incrementally maintained strings (linked stones,
/// liberty sets), an empty-point list and a Zobrist hash of the stones.
/// Knows nothing about whose turn it is or about ko; Go9State and
/// NoGo9State layer their rules on top.
class Board {
public:
    Board();

    Stone at(int p) const { return color_[p]; }
    std::uint64_t hash() const { return hash_; }
    int empty_count() const { return n_empty_; }
    int empty_point(int i) const { return empty_[i]; }
    int stone_count(Stone s) const;

    /// Head (representative point) of the string through p. p must hold a stone.
    int string_head(int p) const { return head_[p]; }
    int string_size(int p) const { return size_[head_[p]]; }
    int liberty_count(int p) const { return libs_[head_[p]].count(); }
    const PointSet& liberties(int p) const { return libs_[head_[p]]; }

    /// Placing s at empty point p would remove at least one opposing string.
    bool captures(int p, Stone s) const;
    /// After placing s at p (and any captures) the new string keeps a liberty.
    bool has_liberty_after(int p, Stone s) const;

    struct PlaceResult {
        int captured = 0;
        int captured_point = -1;  // valid when captured == 1
    };
    /// Places s at empty point p, merges strings and removes opposing strings
    /// left without liberties. No legality checks.
    PlaceResult place(int p, Stone s);

    /// Direct write used for setting up positions; strings are rebuilt from
    /// scratch. Does not capture.
    void set_stones(const std::array<Stone, kPoints>& stones);

    /// Single-point eye of colour s: every neighbour is s, and at most one
    /// diagonal (none on the edge) is held by the opponent.
    bool is_eye(int p, Stone s) const;

    /// Hash recomputed from the stones alone.
    std::uint64_t recompute_hash() const;

    /// Flood-fill audit of every string's liberties and membership against
    /// the incremental data. Returns false on any mismatch.
    bool audit() const;

    struct Area {
        int black = 0;
        int white = 0;
        int neutral = 0;
    };
    /// Stones plus empty regions bordered by one colour only.
    Area area() const;

    void print(std::ostream& os) const;

private:
    void add_empty(int p);
    void remove_empty(int p);
    void remove_string(int head);
    void rebuild_strings();

    std::array<Stone, kPoints> color_{};
    std::array<std::uint8_t, kPoints> head_{};
    std::array<std::uint8_t, kPoints> next_{};
    std::array<std::uint8_t, kPoints> size_{};
    std::array<PointSet, kPoints> libs_{};
    std::array<std::uint8_t, kPoints> empty_{};
    std::array<std::uint8_t, kPoints> empty_pos_{};
    int n_empty_ = 0;
    std::uint64_t hash_ = 0;
};

}  // namespace miucb::game
