#include "miucb/mcts.hpp"

#include <cstdio>
#include <cstdlib>

namespace miucb::mcts {

void EngineConfig::validate() const {
    if (playouts_per_move < 1) {
        throw std::invalid_argument("engine: playouts per move must be >= 1");
    }
    if (kind == EngineKind::Uct && !(exploration_c >= 0.0)) {
        throw std::invalid_argument("engine: UCT exploration constant must be non-negative");
    }
}

std::string EngineConfig::name() const {
    if (kind == EngineKind::MiUct) {
        return reference == EliminationReference::BestEdge ? "miuct:ref=max" : "miuct";
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "uct:C=%g", exploration_c);
    return buf;
}

EngineConfig EngineConfig::parse(std::string_view spec) {
    EngineConfig c;
    if (spec == "miuct") {
        c.kind = EngineKind::MiUct;
        return c;
    }
    if (spec == "miuct:ref=max") {
        c.kind = EngineKind::MiUct;
        c.reference = EliminationReference::BestEdge;
        return c;
    }
    constexpr std::string_view kUct = "uct:C=";
    if (spec.starts_with(kUct)) {
        const std::string value(spec.substr(kUct.size()));
        char* end = nullptr;
        const double v = std::strtod(value.c_str(), &end);
        if (!value.empty() && end == value.c_str() + value.size() && v >= 0.0 && std::isfinite(v)) {
            c.kind = EngineKind::Uct;
            c.exploration_c = v;
            return c;
        }
    }
    throw std::invalid_argument("unknown engine '" + std::string(spec) + "' (expected uct:C=<real> or miuct)");
}

bool visits_conserved(const std::vector<SearchNode>& nodes) {
    for (const auto& n : nodes) {
        if (!n.expanded) {
            continue;
        }
        std::uint64_t pulls = 0;
        for (const auto& e : n.edges) {
            pulls += e.stats.pulls;
            if (e.child >= 0 && nodes.at(static_cast<std::size_t>(e.child)).visits + 1 != e.stats.pulls) {
                return false;
            }
        }
        if (pulls != n.visits) {
            return false;
        }
    }
    return true;
}

}  // namespace miucb::mcts
