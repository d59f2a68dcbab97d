#include "miucb/match.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "miucb/go.hpp"
#include "miucb/nogo.hpp"
#include "miucb/seeding.hpp"

namespace miucb::match {

std::string to_string(GameKind g) {
    return g == GameKind::Go9 ? "go9" : "nogo9";
}

GameKind parse_game(std::string_view token) {
    if (token == "go9") {
        return GameKind::Go9;
    }
    if (token == "nogo9") {
        return GameKind::NoGo9;
    }
    throw std::invalid_argument("unknown game '" + std::string(token) + "' (expected go9 or nogo9)");
}

void MatchConfig::validate() const {
    if (num_games < 1) {
        throw std::invalid_argument("match: need at least one game");
    }
    engine_a.validate();
    engine_b.validate();
}

Interval wilson_interval(std::size_t successes, std::size_t trials, double z) {
    if (trials == 0 || successes > trials) {
        throw std::invalid_argument("wilson_interval: need 0 <= successes <= trials, trials > 0");
    }
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half = z / denom * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

std::uint64_t game_seed(std::uint64_t base_seed, std::size_t game_index) {
    return mix_seed(base_seed, game_index);
}

std::uint64_t engine_seed(std::uint64_t seed, game::Player colour) {
    return mix_seed(seed, colour == game::Player::Black ? 1 : 2);
}

GameResult run_game(GameKind game, const mcts::EngineConfig& black, const mcts::EngineConfig& white,
                    std::uint64_t seed) {
    if (game == GameKind::Go9) {
        mcts::Engine<game::Go9State> b(black, engine_seed(seed, game::Player::Black));
        mcts::Engine<game::Go9State> w(white, engine_seed(seed, game::Player::White));
        return play_game(game::Go9State{}, b, w);
    }
    mcts::Engine<game::NoGo9State> b(black, engine_seed(seed, game::Player::Black));
    mcts::Engine<game::NoGo9State> w(white, engine_seed(seed, game::Player::White));
    return play_game(game::NoGo9State{}, b, w);
}

MatchSummary summarize(const std::vector<MatchRecord>& records) {
    if (records.empty()) {
        throw std::invalid_argument("summarize: no games");
    }
    MatchSummary s;
    s.games = records.size();
    for (const auto& r : records) {
        s.wins_a += r.winner == Side::A;
    }
    s.win_rate_a = static_cast<double>(s.wins_a) / static_cast<double>(s.games);
    const auto ci = wilson_interval(s.wins_a, s.games);
    s.wilson_low = ci.low;
    s.wilson_high = ci.high;
    return s;
}

MatchResult run_match(const MatchConfig& config, const std::function<void(const MatchRecord&)>& on_game) {
    config.validate();
    std::vector<MatchRecord> records(config.num_games);
    std::vector<std::exception_ptr> errors(config.num_games);
    std::atomic<std::size_t> next{0};
    std::mutex report;

    auto worker = [&] {
        for (std::size_t g = next++; g < config.num_games; g = next++) {
            MatchRecord rec;
            rec.game_index = g;
            rec.black = g % 2 == 0 ? Side::A : Side::B;
            rec.game_seed = game_seed(config.base_seed, g);
            const auto& black = rec.black == Side::A ? config.engine_a : config.engine_b;
            const auto& white = rec.black == Side::A ? config.engine_b : config.engine_a;
            try {
                auto result = run_game(config.game, black, white, rec.game_seed);
                const bool black_won = result.winner == game::Player::Black;
                rec.winner = black_won == (rec.black == Side::A) ? Side::A : Side::B;
                rec.move_count = result.move_count;
                rec.moves = std::move(result.moves);
            } catch (...) {
                errors[g] = std::current_exception();
                continue;
            }
            records[g] = std::move(rec);
            if (on_game) {
                std::lock_guard lock(report);
                on_game(records[g]);
            }
        }
    };

    const unsigned workers = std::max(1U, config.parallelism);
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned i = 0; i < workers; ++i) {
            pool.emplace_back(worker);
        }
    }

    for (std::size_t g = 0; g < errors.size(); ++g) {
        if (errors[g]) {
            try {
                std::rethrow_exception(errors[g]);
            } catch (const std::exception& e) {
                throw std::runtime_error("game " + std::to_string(g) + ": " + e.what());
            }
        }
    }

    MatchResult out;
    out.records = std::move(records);
    out.summary = summarize(out.records);
    return out;
}

void emit_match(const std::vector<MatchRecord>& records, const MatchSummary& summary,
                const std::filesystem::path& path) {
    if (records.empty()) {
        throw std::invalid_argument("emit_match: no games to write");
    }
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    }
    out << "game,black,winner,moves,seed\n";
    for (const auto& r : records) {
        out << r.game_index << ',' << side_char(r.black) << ',' << side_char(r.winner) << ',' << r.move_count << ','
            << r.game_seed << '\n';
    }
    char buf[128];
    std::snprintf(buf, sizeof buf, "# win_rate_a=%.4f n=%zu wilson95=[%.4f,%.4f]\n", summary.win_rate_a,
                  summary.games, summary.wilson_low, summary.wilson_high);
    out << buf;
    if (!out) {
        throw std::runtime_error("write failed for '" + path.string() + "'");
    }
}

std::pair<std::vector<MatchRecord>, MatchSummary> read_match(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open '" + path.string() + "'");
    }
    std::string line;
    std::getline(in, line);
    if (line != "game,black,winner,moves,seed") {
        throw std::runtime_error("'" + path.string() + "': unexpected header");
    }
    std::vector<MatchRecord> records;
    MatchSummary summary;
    bool have_summary = false;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        if (line.starts_with("#")) {
            double lo = 0.0;
            double hi = 0.0;
            if (std::sscanf(line.c_str(), "# win_rate_a=%lf n=%zu wilson95=[%lf,%lf]", &summary.win_rate_a,
                            &summary.games, &lo, &hi) != 4) {
                throw std::runtime_error("'" + path.string() + "': malformed summary line");
            }
            summary.wilson_low = lo;
            summary.wilson_high = hi;
            have_summary = true;
            continue;
        }
        MatchRecord r;
        char black = 0;
        char winner = 0;
        unsigned long long seed = 0;
        if (std::sscanf(line.c_str(), "%zu,%c,%c,%d,%llu", &r.game_index, &black, &winner, &r.move_count, &seed) !=
            5) {
            throw std::runtime_error("'" + path.string() + "': malformed row '" + line + "'");
        }
        r.black = black == 'A' ? Side::A : Side::B;
        r.winner = winner == 'A' ? Side::A : Side::B;
        r.game_seed = seed;
        summary.wins_a += r.winner == Side::A;
        records.push_back(r);
    }
    if (!have_summary) {
        throw std::runtime_error("'" + path.string() + "': missing summary line");
    }
    return {std::move(records), summary};
}

}  // namespace miucb::match
