#include "miucb/bandit.hpp"

#include <algorithm>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace miucb::bandit {

double clamped_log(double x) {
    return x > 1.0 ? std::log(x) : 0.0;
}

std::uint64_t n_arm_samples(double horizon_T, double delta) {
    if (!(delta > 0.0) || delta > 1.0) {
        throw std::invalid_argument("n_arm_samples: delta must lie in (0, 1]");
    }
    if (!(horizon_T >= 1.0)) {
        throw std::invalid_argument("n_arm_samples: horizon must be >= 1");
    }
    const double d2 = delta * delta;
    const double n = std::ceil(2.0 * std::log(horizon_T * d2) / d2);
    if (!(n >= 1.0)) {
        return 1;
    }
    if (n >= static_cast<double>(std::numeric_limits<std::uint64_t>::max())) {
        return std::numeric_limits<std::uint64_t>::max();
    }
    return static_cast<std::uint64_t>(n);
}

std::uint64_t num_rounds(std::uint64_t horizon_T) {
    if (horizon_T < 1) {
        throw std::invalid_argument("num_rounds: horizon must be >= 1");
    }
    const double last = std::floor(0.5 * std::log2(static_cast<double>(horizon_T) / std::numbers::e));
    return last < 0.0 ? 1 : static_cast<std::uint64_t>(last) + 1;
}

double confidence_radius(double horizon_T, double delta, std::uint64_t n_k, double r_factor) {
    return std::sqrt(clamped_log(horizon_T * delta * delta) * r_factor / (2.0 * static_cast<double>(n_k)));
}

std::size_t count_eliminated(std::span<const ArmStats> arms, double reference, double radius) {
    return static_cast<std::size_t>(std::count_if(arms.begin(), arms.end(), [&](const ArmStats& a) {
        return a.mean_reward + radius < reference - radius;
    }));
}

double max_mean(std::span<const ArmStats> arms) {
    if (arms.empty()) {
        return 0.0;
    }
    double best = arms.front().mean_reward;
    for (const auto& a : arms) {
        best = std::max(best, a.mean_reward);
    }
    return best;
}

std::uint64_t next_episode_budget(std::uint64_t budget) {
    constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
    if (budget != 0 && budget > kMax / budget) {
        return kMax;
    }
    return budget * budget;
}

namespace {

std::uint64_t saturating_add_mul(std::uint64_t base, std::uint64_t a, std::uint64_t b) {
    constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
    if (a != 0 && b > kMax / a) {
        return kMax;
    }
    const std::uint64_t prod = a * b;
    return prod > kMax - base ? kMax : base + prod;
}

}  // namespace

void ModIucbState::reset(std::uint64_t horizon, std::uint64_t num_arms, std::uint64_t now) {
    delta = 1.0;
    horizon_T = horizon;
    n_k = n_arm_samples(static_cast<double>(horizon), delta);
    arm_count = num_arms;
    delta_deadline = saturating_add_mul(now, n_k, arm_count);
}

void ModIucbState::halve_delta(std::size_t eliminated, std::size_t num_arms, std::uint64_t now) {
    const std::uint64_t survivors = eliminated >= num_arms ? 0 : num_arms - eliminated;
    arm_count = std::max<std::uint64_t>(1, std::min(arm_count, survivors));
    // Floor at the smallest normal power of two; past T*delta^2 < 1 nothing depends on delta.
    delta = std::max(delta * 0.5, std::numeric_limits<double>::min());
    n_k = n_arm_samples(static_cast<double>(horizon_T), delta);
    delta_deadline = saturating_add_mul(now, n_k, arm_count);
}

double ModIucbState::elimination_radius() const {
    return confidence_radius(static_cast<double>(horizon_T), delta, n_k);
}

// ---------------------------------------------------------------------------
// PolicyConfig

void PolicyConfig::validate() const {
    if (use_r_factor && kind != PolicyKind::ModifiedImprovedUcb) {
        throw std::invalid_argument("use_r_factor applies to Modified Improved UCB only");
    }
    if (kind == PolicyKind::Ucb1) {
        if (episodic) {
            throw std::invalid_argument("UCB1 is anytime; it has no episodic mode");
        }
        if (!(exploration_c > 0.0)) {
            throw std::invalid_argument("UCB1 exploration constant must be positive");
        }
        return;
    }
    if (!episodic && horizon < 1) {
        throw std::invalid_argument("fixed-horizon policies need horizon >= 1");
    }
}

std::string PolicyConfig::name() const {
    switch (kind) {
    case PolicyKind::Ucb1:
        return "ucb1";
    case PolicyKind::ImprovedUcb:
        return episodic ? "iucb-ep" : "iucb";
    case PolicyKind::ModifiedImprovedUcb: {
        std::string n = use_r_factor ? "miucb" : "miucb-nor";
        return episodic ? n + "-ep" : n;
    }
    }
    return "unknown";
}

PolicyConfig PolicyConfig::from_name(std::string_view token) {
    PolicyConfig c;
    if (token == "ucb1") {
        c.kind = PolicyKind::Ucb1;
    } else if (token == "iucb" || token == "iucb-ep") {
        c.kind = PolicyKind::ImprovedUcb;
        c.episodic = token == "iucb-ep";
    } else if (token == "miucb" || token == "miucb-ep" || token == "miucb-nor" || token == "miucb-nor-ep") {
        c.kind = PolicyKind::ModifiedImprovedUcb;
        c.use_r_factor = !token.starts_with("miucb-nor");
        c.episodic = token.ends_with("-ep");
    } else {
        throw std::invalid_argument("unknown policy '" + std::string(token) + "'");
    }
    return c;
}

std::vector<PolicyConfig> testbed_variants(std::uint64_t horizon) {
    std::vector<PolicyConfig> out;
    for (const char* token : {"ucb1", "iucb", "iucb-ep", "miucb-nor", "miucb-nor-ep", "miucb", "miucb-ep"}) {
        auto c = PolicyConfig::from_name(token);
        c.horizon = horizon;
        out.push_back(c);
    }
    return out;
}

// ---------------------------------------------------------------------------
// UCB1

Ucb1::Ucb1(std::size_t num_arms, double exploration_c) : stats_(num_arms), c_(exploration_c) {
    if (num_arms == 0) {
        throw std::invalid_argument("Ucb1: need at least one arm");
    }
}

std::size_t Ucb1::select() {
    const double log_t = std::log(static_cast<double>(std::max<std::uint64_t>(total_, 1)));
    std::size_t best = 0;
    double best_value = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < stats_.size(); ++i) {
        if (stats_[i].pulls == 0) {
            return i;
        }
        const double v = stats_[i].mean_reward + c_ * std::sqrt(log_t / static_cast<double>(stats_[i].pulls));
        if (v > best_value) {
            best_value = v;
            best = i;
        }
    }
    return best;
}

void Ucb1::update(std::size_t arm, double reward) {
    stats_.at(arm).update(reward);
    ++total_;
}

// ---------------------------------------------------------------------------
// Improved UCB

ImprovedUcb::ImprovedUcb(std::size_t num_arms, std::uint64_t horizon)
    : k_(num_arms), episodic_(false), total_(num_arms) {
    if (num_arms == 0 || horizon < 1) {
        throw std::invalid_argument("ImprovedUcb: need arms and a horizon >= 1");
    }
    begin_episode(horizon);
}

ImprovedUcb::ImprovedUcb(std::size_t num_arms) : k_(num_arms), episodic_(true), total_(num_arms) {
    if (num_arms == 0) {
        throw std::invalid_argument("ImprovedUcb: need at least one arm");
    }
    begin_episode(kFirstEpisodeBudget);
}

void ImprovedUcb::begin_episode(std::uint64_t budget) {
    budget_ = budget;
    episode_plays_ = 0;
    local_.assign(k_, ArmStats{});
    alive_.assign(k_, 1);
    rounds_ = num_rounds(budget);
    round_ = 0;
    delta_ = 1.0;
    n_m_ = n_arm_samples(static_cast<double>(budget), delta_);
    cursor_ = 0;
    complete_ = false;
    advance();
}

void ImprovedUcb::advance() {
    while (!complete_) {
        while (cursor_ < k_ && (!alive_[cursor_] || local_[cursor_].pulls >= n_m_)) {
            ++cursor_;
        }
        if (cursor_ < k_) {
            return;
        }
        eliminate();
        delta_ *= 0.5;
        if (++round_ >= rounds_) {
            complete_ = true;
            return;
        }
        n_m_ = n_arm_samples(static_cast<double>(budget_), delta_);
        cursor_ = 0;
    }
}

void ImprovedUcb::eliminate() {
    double w_max = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < k_; ++i) {
        if (alive_[i]) {
            w_max = std::max(w_max, local_[i].mean_reward);
        }
    }
    const double radius = confidence_radius(static_cast<double>(budget_), delta_, n_m_);
    for (std::size_t i = 0; i < k_; ++i) {
        if (alive_[i] && local_[i].mean_reward + radius < w_max - radius) {
            alive_[i] = 0;
        }
    }
}

std::size_t ImprovedUcb::select() {
    if (!complete_) {
        return cursor_;
    }
    std::size_t best = k_;
    for (std::size_t i = 0; i < k_; ++i) {
        if (alive_[i] && (best == k_ || local_[i].mean_reward > local_[best].mean_reward)) {
            best = i;
        }
    }
    return best;
}

void ImprovedUcb::update(std::size_t arm, double reward) {
    local_.at(arm).update(reward);
    total_[arm].update(reward);
    ++episode_plays_;
    if (episodic_ && episode_plays_ >= budget_) {
        ++episode_;
        begin_episode(next_episode_budget(budget_));
    } else {
        advance();
    }
}

std::size_t ImprovedUcb::alive_count() const {
    return static_cast<std::size_t>(std::count(alive_.begin(), alive_.end(), 1));
}

// ---------------------------------------------------------------------------
// Modified Improved UCB

ModifiedImprovedUcb::ModifiedImprovedUcb(std::size_t num_arms, bool use_r_factor, std::uint64_t horizon)
    : stats_(num_arms), use_r_(use_r_factor), episodic_(false) {
    if (num_arms == 0 || horizon < 1) {
        throw std::invalid_argument("ModifiedImprovedUcb: need arms and a horizon >= 1");
    }
    begin_episode(horizon);
}

ModifiedImprovedUcb::ModifiedImprovedUcb(std::size_t num_arms, bool use_r_factor)
    : stats_(num_arms), use_r_(use_r_factor), episodic_(true) {
    if (num_arms == 0) {
        throw std::invalid_argument("ModifiedImprovedUcb: need at least one arm");
    }
    begin_episode(kFirstEpisodeBudget);
}

void ModifiedImprovedUcb::begin_episode(std::uint64_t budget) {
    state_.reset(budget, stats_.size(), 0);
    episode_plays_ = 0;
}

double ModifiedImprovedUcb::upper_bound(std::size_t arm) const {
    const auto& a = stats_.at(arm);
    if (a.pulls == 0) {
        return std::numeric_limits<double>::infinity();
    }
    const double T = static_cast<double>(state_.horizon_T);
    const double r = use_r_ ? T / static_cast<double>(a.pulls) : 1.0;
    return a.mean_reward + confidence_radius(T, state_.delta, state_.n_k, r);
}

std::size_t ModifiedImprovedUcb::select() {
    std::size_t best = 0;
    double best_value = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < stats_.size(); ++i) {
        const double v = upper_bound(i);
        if (v > best_value) {
            best_value = v;
            best = i;
        }
    }
    return best;
}

void ModifiedImprovedUcb::update(std::size_t arm, double reward) {
    stats_.at(arm).update(reward);
    const std::uint64_t m = episode_plays_++;
    if (m >= state_.delta_deadline) {
        const auto eliminated = count_eliminated(stats_, max_mean(stats_), state_.elimination_radius());
        state_.halve_delta(eliminated, stats_.size(), m);
    }
    if (episodic_ && episode_plays_ >= state_.horizon_T) {
        const auto next = next_episode_budget(state_.horizon_T);
        const auto episode = state_.episode + 1;
        begin_episode(next);
        state_.episode = episode;
    }
}

// ---------------------------------------------------------------------------

std::unique_ptr<Policy> make_policy(const PolicyConfig& config, std::size_t num_arms) {
    config.validate();
    switch (config.kind) {
    case PolicyKind::Ucb1:
        return std::make_unique<Ucb1>(num_arms, config.exploration_c);
    case PolicyKind::ImprovedUcb:
        if (config.episodic) {
            return std::make_unique<ImprovedUcb>(num_arms);
        }
        return std::make_unique<ImprovedUcb>(num_arms, config.horizon);
    case PolicyKind::ModifiedImprovedUcb:
        if (config.episodic) {
            return std::make_unique<ModifiedImprovedUcb>(num_arms, config.use_r_factor);
        }
        return std::make_unique<ModifiedImprovedUcb>(num_arms, config.use_r_factor, config.horizon);
    }
    throw std::invalid_argument("make_policy: unknown kind");
}

PullLog run_policy(Policy& policy, const RewardOracle& bandit, std::uint64_t plays) {
    PullLog log;
    log.reserve(plays);
    for (std::uint64_t t = 0; t < plays; ++t) {
        const std::size_t arm = policy.select();
        const double reward = bandit(arm);
        policy.update(arm, reward);
        log.push_back({arm, reward});
    }
    return log;
}

PullLog run_improved_ucb(const RewardOracle& bandit, std::size_t num_arms, std::uint64_t horizon) {
    if (num_arms < 2) {
        throw std::invalid_argument("run_improved_ucb: need at least two arms");
    }
    ImprovedUcb policy(num_arms, horizon);
    PullLog log;
    while (log.size() < horizon && !policy.rounds_complete()) {
        const std::size_t arm = policy.select();
        const double reward = bandit(arm);
        policy.update(arm, reward);
        log.push_back({arm, reward});
    }
    return log;
}

PullLog run_episodic(const PolicyConfig& config, const RewardOracle& bandit, std::size_t num_arms,
                     std::uint64_t total_plays) {
    if (!config.episodic) {
        throw std::invalid_argument("run_episodic: policy is not episodic");
    }
    auto policy = make_policy(config, num_arms);
    return run_policy(*policy, bandit, total_plays);
}

}  // namespace miucb::bandit
