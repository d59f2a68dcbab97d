#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "miucb/bandit.hpp"
#include "miucb/game.hpp"

namespace miucb::mcts {

enum class EngineKind { Uct, MiUct };

/// Reference value of the Mi-UCT elimination test: the node's own mean (as
/// written in the tree algorithm) or the best edge mean (as in the bandit
/// version).
enum class EliminationReference { NodeMean, BestEdge };

struct EngineConfig {
    EngineKind kind = EngineKind::MiUct;
    double exploration_c = 0.7;  // UCT only
    std::uint64_t playouts_per_move = 1000;
    std::uint64_t seed = 0;
    EliminationReference reference = EliminationReference::NodeMean;

    void validate() const;
    /// "uct:C=<c>" or "miuct" (with ":ref=max" for the best-edge reference).
    std::string name() const;
    /// Parses the form produced by name(); playouts and seed are untouched.
    static EngineConfig parse(std::string_view spec);
};

struct Edge {
    game::Move move;
    bandit::ArmStats stats;   // from the point of view of the player to move at the owning node
    std::int32_t child = -1;  // index into the node pool, -1 until expanded
};

/// Own visit count and mean (N.t, N.w) are from the point of view of the
/// player to move at this node, like its edge statistics.
struct SearchNode {
    std::uint64_t visits = 0;
    double mean = 0.0;
    std::vector<Edge> edges;
    bool expanded = false;
    bandit::ModIucbState bandit;  // Mi-UCT bookkeeping; unused by UCT

    void record(double reward) {
        mean = (mean * static_cast<double>(visits) + reward) / static_cast<double>(visits + 1);
        ++visits;
    }
};

/// One simulation result per iteration: either a random playout or the exact
/// value of a terminal position reached inside the tree.
struct SearchStats {
    std::uint64_t iterations = 0;
    std::uint64_t random_playouts = 0;
    std::uint64_t terminal_evaluations = 0;
    std::uint64_t nodes = 0;
};

/// edge_mean + c * sqrt(ln(parent_visits) / edge_pulls); +inf when unvisited.
inline double uct_value(const Edge& e, std::uint64_t parent_visits, double c) {
    if (e.stats.pulls == 0) {
        return std::numeric_limits<double>::infinity();
    }
    return e.stats.mean_reward +
           c * std::sqrt(std::log(static_cast<double>(parent_visits)) / static_cast<double>(e.stats.pulls));
}

/// edge_mean + sqrt(ln(T delta^2) * r / (2 k)) with r = T / edge_pulls;
/// +inf when unvisited.
inline double miuct_value(const Edge& e, const bandit::ModIucbState& b) {
    if (e.stats.pulls == 0) {
        return std::numeric_limits<double>::infinity();
    }
    const double T = static_cast<double>(b.horizon_T);
    const double r = T / static_cast<double>(e.stats.pulls);
    return e.stats.mean_reward + bandit::confidence_radius(T, b.delta, b.n_k, r);
}

/// Index of the highest value, lowest index on ties.
template <class ValueFn>
std::size_t argmax_edge(const std::vector<Edge>& edges, ValueFn&& value) {
    std::size_t best = 0;
    double best_value = value(edges[0]);
    for (std::size_t i = 1; i < edges.size(); ++i) {
        const double v = value(edges[i]);
        if (v > best_value) {
            best_value = v;
            best = i;
        }
    }
    return best;
}

struct UctPolicy {
    double c = 0.7;

    void on_expand(SearchNode&) const {}
    std::size_t select(const SearchNode& n) const {
        return argmax_edge(n.edges, [&](const Edge& e) { return uct_value(e, n.visits, c); });
    }
    void after_update(SearchNode&) const {}
};

struct MiUctPolicy {
    EliminationReference reference = EliminationReference::NodeMean;

    /// NodeExpansion: delta = 1, T = 2, armCount = children, k = n(T, 1),
    /// deadline = k * armCount.
    void on_expand(SearchNode& n) const {
        n.bandit = bandit::ModIucbState{};
        n.bandit.reset(bandit::kFirstEpisodeBudget, n.edges.size(), 0);
    }

    std::size_t select(const SearchNode& n) const {
        return argmax_edge(n.edges, [&](const Edge& e) { return miuct_value(e, n.bandit); });
    }

    /// Episode rollover at N.t >= N.T, then the delta deadline at
    /// N.t >= N.deltaUpdate. Edge statistics are never reset.
    void after_update(SearchNode& n) const {
        auto& b = n.bandit;
        const std::uint64_t t = n.visits;
        const std::size_t k = n.edges.size();
        if (t >= b.horizon_T) {
            const std::uint64_t sq = bandit::next_episode_budget(b.horizon_T);
            const std::uint64_t next = sq > std::numeric_limits<std::uint64_t>::max() - t
                                           ? std::numeric_limits<std::uint64_t>::max()
                                           : t + sq;
            const std::uint64_t episode = b.episode + 1;
            b.reset(next, k, t);
            b.episode = episode;
        }
        if (t >= b.delta_deadline) {
            double ref = n.mean;
            if (reference == EliminationReference::BestEdge) {
                ref = -std::numeric_limits<double>::infinity();
                for (const auto& e : n.edges) {
                    ref = std::max(ref, e.stats.mean_reward);
                }
            }
            const double radius = b.elimination_radius();
            std::size_t eliminated = 0;
            for (const auto& e : n.edges) {
                eliminated += e.stats.mean_reward + radius < ref - radius;
            }
            b.halve_delta(eliminated, k, t);
        }
    }
};

/// Creates the edges of an unexpanded node for every legal move of a
/// non-terminal state and lets the tree policy initialise its bookkeeping.
template <game::GameState G, class TreePolicy>
void node_expansion(SearchNode& node, const G& state, const TreePolicy& policy) {
    if (node.expanded) {
        throw std::logic_error("node_expansion: node is already expanded");
    }
    if (state.is_terminal()) {
        throw std::logic_error("node_expansion: terminal positions are never expanded");
    }
    std::vector<game::Move> moves;
    state.legal_moves(moves);
    node.edges.clear();
    node.edges.reserve(moves.size());
    for (auto m : moves) {
        node.edges.push_back(Edge{m, {}, -1});
    }
    node.expanded = true;
    policy.on_expand(node);
}

/// Reward of a terminal position for the player to move in it.
template <game::GameState G>
double terminal_reward(const G& state) {
    return state.winner() == state.to_move() ? 1.0 : 0.0;
}

/// Shared selection / expansion / simulation / backpropagation loop. Each
/// search builds a fresh tree from the root position.
template <game::GameState G, class TreePolicy>
class Searcher {
public:
    Searcher(TreePolicy policy, std::uint64_t seed) : policy_(policy), rng_(seed) {}

    /// Starts a new tree at root. Throws std::logic_error for a finished game.
    void reset(const G& root) {
        if (root.is_terminal()) {
            throw std::logic_error("search: root position is terminal");
        }
        nodes_.clear();
        stats_ = SearchStats{};
        root_ = root;
        nodes_.emplace_back();
        node_expansion(nodes_[0], root_, policy_);
        stats_.nodes = 1;
    }

    /// One iteration from the root; returns the reward for the player to
    /// move at the root.
    double iterate() {
        G state = root_;
        ++stats_.iterations;
        return descend(0, state);
    }

    game::Move search(const G& root, std::uint64_t iterations) {
        reset(root);
        nodes_.reserve(iterations + 1);
        for (std::uint64_t i = 0; i < iterations; ++i) {
            iterate();
        }
        return best_move();
    }

    /// Root edge with the most pulls; ties go to the higher mean, then to
    /// the lower move index.
    game::Move best_move() const {
        const auto& edges = nodes_.at(0).edges;
        std::size_t best = 0;
        for (std::size_t i = 1; i < edges.size(); ++i) {
            const auto& a = edges[i].stats;
            const auto& b = edges[best].stats;
            if (a.pulls > b.pulls || (a.pulls == b.pulls && a.mean_reward > b.mean_reward)) {
                best = i;
            }
        }
        return edges[best].move;
    }

    const SearchNode& root() const { return nodes_.at(0); }
    const std::vector<SearchNode>& nodes() const { return nodes_; }
    const SearchStats& stats() const { return stats_; }
    const TreePolicy& policy() const { return policy_; }

private:
    // Returns the reward for the player to move at node `index`.
    double descend(std::int32_t index, G& state) {
        const std::size_t i = policy_.select(nodes_[index]);
        const game::Move move = nodes_[index].edges[i].move;
        state.play_unchecked(move);

        double child_reward;
        if (state.is_terminal()) {
            child_reward = terminal_reward(state);
            ++stats_.terminal_evaluations;
        } else if (nodes_[index].edges[i].stats.pulls == 0) {
            child_reward = random_playout(state, rng_) == state.to_move() ? 1.0 : 0.0;
            ++stats_.random_playouts;
        } else {
            std::int32_t child = nodes_[index].edges[i].child;
            if (child < 0) {
                child = static_cast<std::int32_t>(nodes_.size());
                nodes_.emplace_back();
                node_expansion(nodes_.back(), state, policy_);
                nodes_[index].edges[i].child = child;
                ++stats_.nodes;
            }
            child_reward = descend(child, state);
        }

        const double reward = 1.0 - child_reward;
        SearchNode& node = nodes_[index];
        node.edges[i].stats.update(reward);
        node.record(reward);
        policy_.after_update(node);
        return reward;
    }

    TreePolicy policy_;
    game::Rng rng_;
    G root_{};
    std::vector<SearchNode> nodes_;
    SearchStats stats_;
};

/// Engine facade used by the match runner: picks the tree policy from the
/// configuration and keeps its own random stream across moves.
template <game::GameState G>
class Engine {
public:
    explicit Engine(const EngineConfig& config) : Engine(config, config.seed) {}

    Engine(const EngineConfig& config, std::uint64_t seed) : config_(config), searcher_(make(config, seed)) {
        config_.validate();
    }

    game::Move best_move(const G& state) {
        return std::visit([&](auto& s) { return s.search(state, config_.playouts_per_move); }, searcher_);
    }

    SearchStats last_stats() const {
        return std::visit([](const auto& s) { return s.stats(); }, searcher_);
    }

    const EngineConfig& config() const { return config_; }
    std::string name() const { return config_.name(); }

private:
    using Variant = std::variant<Searcher<G, UctPolicy>, Searcher<G, MiUctPolicy>>;

    static Variant make(const EngineConfig& c, std::uint64_t seed) {
        if (c.kind == EngineKind::Uct) {
            return Searcher<G, UctPolicy>(UctPolicy{c.exploration_c}, seed);
        }
        return Searcher<G, MiUctPolicy>(MiUctPolicy{c.reference}, seed);
    }

    EngineConfig config_;
    Variant searcher_;
};

/// For every expanded node: visits equal the sum of edge pulls, and an
/// expanded child has exactly one visit fewer than its edge (the first pull
/// of an edge is the simulation that precedes expansion).
bool visits_conserved(const std::vector<SearchNode>& nodes);

}  // namespace miucb::mcts
