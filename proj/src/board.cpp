#include "miucb/board.hpp"

#include <ostream>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "miucb/game.hpp"
#include "miucb/seeding.hpp"

namespace miucb::game {

namespace {

struct Tables {
    std::array<Neighbors, kPoints> orth{};
    std::array<Neighbors, kPoints> diag{};
    std::array<std::array<std::uint64_t, 3>, kPoints> keys{};
};

constexpr Tables make_tables() {
    Tables t;
    for (int r = 0; r < kSize; ++r) {
        for (int c = 0; c < kSize; ++c) {
            const int p = r * kSize + c;
            auto add = [](Neighbors& n, int rr, int cc) {
                if (rr >= 0 && rr < kSize && cc >= 0 && cc < kSize) {
                    n.points[n.count++] = static_cast<std::uint8_t>(rr * kSize + cc);
                }
            };
            add(t.orth[p], r - 1, c);
            add(t.orth[p], r, c - 1);
            add(t.orth[p], r, c + 1);
            add(t.orth[p], r + 1, c);
            add(t.diag[p], r - 1, c - 1);
            add(t.diag[p], r - 1, c + 1);
            add(t.diag[p], r + 1, c - 1);
            add(t.diag[p], r + 1, c + 1);
            t.keys[p][1] = splitmix64(0x5EED0000ULL + 2 * static_cast<std::uint64_t>(p));
            t.keys[p][2] = splitmix64(0x5EED0000ULL + 2 * static_cast<std::uint64_t>(p) + 1);
        }
    }
    return t;
}

constexpr Tables kTables = make_tables();

}  // namespace

const Neighbors& neighbors(int p) {
    return kTables.orth[p];
}

const Neighbors& diagonals(int p) {
    return kTables.diag[p];
}

std::uint64_t zobrist(int p, Stone s) {
    return kTables.keys[p][static_cast<int>(s)];
}

std::string to_string(Move m) {
    if (m.is_pass()) {
        return "pass";
    }
    static constexpr char kCols[] = "ABCDEFGHJ";
    return std::string(1, kCols[m.col()]) + std::to_string(kSize - m.row());
}

Board::Board() {
    for (int p = 0; p < kPoints; ++p) {
        empty_[p] = static_cast<std::uint8_t>(p);
        empty_pos_[p] = static_cast<std::uint8_t>(p);
    }
    n_empty_ = kPoints;
}

int Board::stone_count(Stone s) const {
    int n = 0;
    for (auto c : color_) {
        n += c == s;
    }
    return n;
}

void Board::add_empty(int p) {
    empty_pos_[p] = static_cast<std::uint8_t>(n_empty_);
    empty_[n_empty_++] = static_cast<std::uint8_t>(p);
}

void Board::remove_empty(int p) {
    const int i = empty_pos_[p];
    const int last = empty_[--n_empty_];
    empty_[i] = static_cast<std::uint8_t>(last);
    empty_pos_[last] = static_cast<std::uint8_t>(i);
}

bool Board::captures(int p, Stone s) const {
    const Stone opp = flip(s);
    const auto& nb = neighbors(p);
    for (int i = 0; i < nb.count; ++i) {
        const int n = nb.points[i];
        if (color_[n] == opp && libs_[head_[n]].count() == 1) {
            return true;
        }
    }
    return false;
}

bool Board::has_liberty_after(int p, Stone s) const {
    const Stone opp = flip(s);
    const auto& nb = neighbors(p);
    for (int i = 0; i < nb.count; ++i) {
        const int n = nb.points[i];
        const Stone c = color_[n];
        if (c == Stone::Empty) {
            return true;
        }
        const int libs = libs_[head_[n]].count();
        if ((c == s && libs > 1) || (c == opp && libs == 1)) {
            return true;
        }
    }
    return false;
}

Board::PlaceResult Board::place(int p, Stone s) {
    remove_empty(p);
    color_[p] = s;
    hash_ ^= zobrist(p, s);
    head_[p] = static_cast<std::uint8_t>(p);
    next_[p] = static_cast<std::uint8_t>(p);
    size_[p] = 1;
    libs_[p] = PointSet{};

    const auto& nb = neighbors(p);
    for (int i = 0; i < nb.count; ++i) {
        const int n = nb.points[i];
        if (color_[n] == Stone::Empty) {
            libs_[p].set(n);
        }
    }
    for (int i = 0; i < nb.count; ++i) {
        const int n = nb.points[i];
        if (color_[n] != s) {
            continue;
        }
        int big = head_[p];
        int small = head_[n];
        if (big == small) {
            continue;
        }
        if (size_[big] < size_[small]) {
            std::swap(big, small);
        }
        int q = small;
        do {
            head_[q] = static_cast<std::uint8_t>(big);
            q = next_[q];
        } while (q != small);
        std::swap(next_[big], next_[small]);
        size_[big] = static_cast<std::uint8_t>(size_[big] + size_[small]);
        libs_[big] |= libs_[small];
    }
    libs_[head_[p]].reset(p);

    PlaceResult result;
    const Stone opp = flip(s);
    for (int i = 0; i < nb.count; ++i) {
        const int n = nb.points[i];
        if (color_[n] != opp) {
            continue;
        }
        const int h = head_[n];
        libs_[h].reset(p);
        if (libs_[h].empty()) {
            result.captured += size_[h];
            result.captured_point = h;
            remove_string(h);
        }
    }
    if (result.captured != 1) {
        result.captured_point = -1;
    }
    return result;
}

void Board::remove_string(int head) {
    const Stone s = color_[head];
    int q = head;
    do {
        color_[q] = Stone::Empty;
        hash_ ^= zobrist(q, s);
        add_empty(q);
        q = next_[q];
    } while (q != head);
    q = head;
    do {
        const auto& nb = neighbors(q);
        for (int i = 0; i < nb.count; ++i) {
            const int n = nb.points[i];
            if (color_[n] != Stone::Empty) {
                libs_[head_[n]].set(q);
            }
        }
        q = next_[q];
    } while (q != head);
}

void Board::set_stones(const std::array<Stone, kPoints>& stones) {
    color_ = stones;
    n_empty_ = 0;
    for (int p = 0; p < kPoints; ++p) {
        if (color_[p] == Stone::Empty) {
            add_empty(p);
        }
    }
    hash_ = recompute_hash();
    rebuild_strings();
}

void Board::rebuild_strings() {
    std::array<bool, kPoints> seen{};
    std::vector<int> stack;
    for (int p = 0; p < kPoints; ++p) {
        if (color_[p] == Stone::Empty || seen[p]) {
            continue;
        }
        const Stone s = color_[p];
        // p becomes the head; stones are chained in discovery order.
        head_[p] = static_cast<std::uint8_t>(p);
        next_[p] = static_cast<std::uint8_t>(p);
        size_[p] = 0;
        libs_[p] = PointSet{};
        stack.assign(1, p);
        seen[p] = true;
        while (!stack.empty()) {
            const int q = stack.back();
            stack.pop_back();
            if (q != p) {
                head_[q] = static_cast<std::uint8_t>(p);
                next_[q] = next_[p];
                next_[p] = static_cast<std::uint8_t>(q);
            }
            ++size_[p];
            const auto& nb = neighbors(q);
            for (int i = 0; i < nb.count; ++i) {
                const int n = nb.points[i];
                if (color_[n] == Stone::Empty) {
                    libs_[p].set(n);
                } else if (color_[n] == s && !seen[n]) {
                    seen[n] = true;
                    stack.push_back(n);
                }
            }
        }
    }
}

bool Board::is_eye(int p, Stone s) const {
    if (color_[p] != Stone::Empty) {
        return false;
    }
    const auto& nb = neighbors(p);
    for (int i = 0; i < nb.count; ++i) {
        if (color_[nb.points[i]] != s) {
            return false;
        }
    }
    const auto& dg = diagonals(p);
    const Stone opp = flip(s);
    int bad = 0;
    for (int i = 0; i < dg.count; ++i) {
        bad += color_[dg.points[i]] == opp;
    }
    return dg.count < 4 ? bad == 0 : bad <= 1;
}

std::uint64_t Board::recompute_hash() const {
    std::uint64_t h = 0;
    for (int p = 0; p < kPoints; ++p) {
        if (color_[p] != Stone::Empty) {
            h ^= zobrist(p, color_[p]);
        }
    }
    return h;
}

bool Board::audit() const {
    if (hash_ != recompute_hash()) {
        return false;
    }
    int empties = 0;
    for (int p = 0; p < kPoints; ++p) {
        if (color_[p] == Stone::Empty) {
            ++empties;
            if (empty_pos_[p] >= n_empty_ || empty_[empty_pos_[p]] != p) {
                return false;
            }
        }
    }
    if (empties != n_empty_) {
        return false;
    }
    std::array<bool, kPoints> seen{};
    std::vector<int> stack;
    for (int p = 0; p < kPoints; ++p) {
        if (color_[p] == Stone::Empty || seen[p]) {
            continue;
        }
        const Stone s = color_[p];
        const int h = head_[p];
        PointSet libs;
        int size = 0;
        stack.assign(1, p);
        seen[p] = true;
        while (!stack.empty()) {
            const int q = stack.back();
            stack.pop_back();
            ++size;
            if (head_[q] != h) {
                return false;
            }
            const auto& nb = neighbors(q);
            for (int i = 0; i < nb.count; ++i) {
                const int n = nb.points[i];
                if (color_[n] == Stone::Empty) {
                    libs.set(n);
                } else if (color_[n] == s && !seen[n]) {
                    seen[n] = true;
                    stack.push_back(n);
                }
            }
        }
        if (color_[h] != s || size != size_[h] || !(libs == libs_[h]) || libs.empty()) {
            return false;
        }
        // The linked list through the head visits exactly the string.
        int walked = 0;
        int q = h;
        do {
            if (head_[q] != h || color_[q] != s) {
                return false;
            }
            ++walked;
            q = next_[q];
        } while (q != h && walked <= kPoints);
        if (walked != size) {
            return false;
        }
    }
    return true;
}

Board::Area Board::area() const {
    Area a;
    std::array<bool, kPoints> seen{};
    std::vector<int> stack;
    for (int p = 0; p < kPoints; ++p) {
        if (color_[p] == Stone::Black) {
            ++a.black;
        } else if (color_[p] == Stone::White) {
            ++a.white;
        } else if (!seen[p]) {
            bool touches_black = false;
            bool touches_white = false;
            int region = 0;
            stack.assign(1, p);
            seen[p] = true;
            while (!stack.empty()) {
                const int q = stack.back();
                stack.pop_back();
                ++region;
                const auto& nb = neighbors(q);
                for (int i = 0; i < nb.count; ++i) {
                    const int n = nb.points[i];
                    if (color_[n] == Stone::Black) {
                        touches_black = true;
                    } else if (color_[n] == Stone::White) {
                        touches_white = true;
                    } else if (!seen[n]) {
                        seen[n] = true;
                        stack.push_back(n);
                    }
                }
            }
            if (touches_black && !touches_white) {
                a.black += region;
            } else if (touches_white && !touches_black) {
                a.white += region;
            } else {
                a.neutral += region;
            }
        }
    }
    return a;
}

void Board::print(std::ostream& os) const {
    for (int r = 0; r < kSize; ++r) {
        for (int c = 0; c < kSize; ++c) {
            const Stone s = color_[r * kSize + c];
            os << (s == Stone::Black ? 'X' : s == Stone::White ? 'O' : '.');
        }
        os << '\n';
    }
}

std::array<Stone, kPoints> parse_diagram(std::string_view diagram) {
    std::array<Stone, kPoints> stones{};
    int p = 0;
    for (char ch : diagram) {
        if (ch == ' ' || ch == '\n' || ch == '\t' || ch == '\r') {
            continue;
        }
        if (p >= kPoints) {
            throw std::invalid_argument("diagram has more than 81 points");
        }
        switch (ch) {
        case 'X':
            stones[p++] = Stone::Black;
            break;
        case 'O':
            stones[p++] = Stone::White;
            break;
        case '.':
            stones[p++] = Stone::Empty;
            break;
        default:
            throw std::invalid_argument(std::string("diagram: unexpected character '") + ch + "'");
        }
    }
    if (p != kPoints) {
        throw std::invalid_argument("diagram has " + std::to_string(p) + " points, expected 81");
    }
    return stones;
}

}  // namespace miucb::game
