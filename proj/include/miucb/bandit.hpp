#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace miucb::bandit {

/// Pull count and running mean of one arm (t_i and w_i).
struct ArmStats {
    std::uint64_t pulls = 0;
    double mean_reward = 0.0;

    void update(double reward) {
        ++pulls;
        mean_reward += (reward - mean_reward) / static_cast<double>(pulls);
    }
};

/// ln(max(x, 1)). Every confidence radius goes through this so that a
/// horizon/delta pair with T*delta^2 <= 1 yields a zero radius instead of NaN.
double clamped_log(double x);

/// Per-arm sample target max(1, ceil(2 ln(T delta^2) / delta^2)).
/// Throws std::invalid_argument for delta outside (0, 1] or T < 1.
std::uint64_t n_arm_samples(double horizon_T, double delta);

/// Number of elimination rounds run by Improved UCB for horizon T:
/// max(0, floor(log2(T / e) / 2)) + 1.
std::uint64_t num_rounds(std::uint64_t horizon_T);

/// sqrt(ln(T delta^2) * r / (2 n_k)) with the log clamped at zero.
double confidence_radius(double horizon_T, double delta, std::uint64_t n_k, double r_factor = 1.0);

/// Counts arms whose upper bound mean + radius lies strictly below
/// reference - radius.
std::size_t count_eliminated(std::span<const ArmStats> arms, double reference, double radius);

/// Highest mean among the given arms (0 for an empty span).
double max_mean(std::span<const ArmStats> arms);

/// Episode budgets run 2, 4, 16, 256, ... Saturates at UINT64_MAX.
inline constexpr std::uint64_t kFirstEpisodeBudget = 2;
std::uint64_t next_episode_budget(std::uint64_t budget);

/// Bookkeeping block shared by the bandit and the tree variant of Modified
/// Improved UCB.
struct ModIucbState {
    double delta = 1.0;
    std::uint64_t horizon_T = kFirstEpisodeBudget;
    std::uint64_t n_k = 1;
    std::uint64_t arm_count = 0;
    std::uint64_t delta_deadline = 0;
    std::uint64_t episode = 0;

    /// Resets delta to 1 for a new episode with horizon T over num_arms arms;
    /// the first deadline is now + n_0 * num_arms. The episode counter is
    /// left alone; callers bump it.
    void reset(std::uint64_t horizon, std::uint64_t num_arms, std::uint64_t now);

    /// Deadline step: arm_count <- max(1, min(arm_count, num_arms - eliminated)),
    /// delta halves, n_k is recomputed, deadline <- now + n_k * arm_count.
    void halve_delta(std::size_t eliminated, std::size_t num_arms, std::uint64_t now);

    /// Radius used by the elimination test (no r factor).
    double elimination_radius() const;
};

enum class PolicyKind { Ucb1, ImprovedUcb, ModifiedImprovedUcb };

struct PolicyConfig {
    PolicyKind kind = PolicyKind::Ucb1;
    bool episodic = false;
    bool use_r_factor = false;
    double exploration_c = 1.4142135623730951;  // UCB1: sqrt(2 ln t / t_i)
    std::uint64_t horizon = 0;                  // required when !episodic for IUCB/MODIUCB

    /// Throws std::invalid_argument when the combination is not meaningful.
    void validate() const;

    /// CLI token: ucb1, iucb, iucb-ep, miucb-nor, miucb-nor-ep, miucb, miucb-ep.
    std::string name() const;

    /// Inverse of name(); horizon is left at 0 for the caller to fill in.
    static PolicyConfig from_name(std::string_view token);
};

/// The seven testbed variants in the order they are usually plotted.
std::vector<PolicyConfig> testbed_variants(std::uint64_t horizon);

/// An online bandit policy: select() names the next arm, update() feeds back
/// the reward of the arm that was pulled.
class Policy {
public:
    virtual ~Policy() = default;
    virtual std::size_t select() = 0;
    virtual void update(std::size_t arm, double reward) = 0;
    /// Cumulative statistics across all plays (and all episodes).
    virtual std::span<const ArmStats> arms() const = 0;
};

class Ucb1 final : public Policy {
public:
    Ucb1(std::size_t num_arms, double exploration_c);
    std::size_t select() override;
    void update(std::size_t arm, double reward) override;
    std::span<const ArmStats> arms() const override { return stats_; }

private:
    std::vector<ArmStats> stats_;
    std::uint64_t total_ = 0;
    double c_;
};

/// Improved UCB with a candidate set. Each round tops every alive arm up to
/// n_m pulls (arm by arm, lowest index first), eliminates, then halves delta.
/// Once the rounds are exhausted the remaining plays of the horizon go to the
/// best alive arm. In episodic mode every episode is a fresh run.
class ImprovedUcb final : public Policy {
public:
    ImprovedUcb(std::size_t num_arms, std::uint64_t horizon);  // fixed horizon
    explicit ImprovedUcb(std::size_t num_arms);                // episodic

    std::size_t select() override;
    void update(std::size_t arm, double reward) override;
    std::span<const ArmStats> arms() const override { return total_; }

    bool rounds_complete() const { return complete_; }
    std::span<const char> alive() const { return alive_; }
    std::size_t alive_count() const;
    double delta() const { return delta_; }
    std::uint64_t round() const { return round_; }
    std::uint64_t episode() const { return episode_; }
    std::uint64_t episode_budget() const { return budget_; }

private:
    void begin_episode(std::uint64_t budget);
    void advance();
    void eliminate();

    std::size_t k_;
    bool episodic_;
    std::vector<ArmStats> total_;
    std::vector<ArmStats> local_;
    std::vector<char> alive_;
    std::uint64_t budget_ = 0;
    std::uint64_t episode_plays_ = 0;
    std::uint64_t episode_ = 0;
    std::uint64_t rounds_ = 0;
    std::uint64_t round_ = 0;
    double delta_ = 1.0;
    std::uint64_t n_m_ = 0;
    std::size_t cursor_ = 0;
    bool complete_ = false;
};

/// Modified Improved UCB: greedy optimistic sampling over all arms with an
/// arm count instead of a candidate set. Arm statistics survive episode
/// restarts so r_i = T / t_i keeps its history.
class ModifiedImprovedUcb final : public Policy {
public:
    ModifiedImprovedUcb(std::size_t num_arms, bool use_r_factor, std::uint64_t horizon);  // fixed horizon
    ModifiedImprovedUcb(std::size_t num_arms, bool use_r_factor);                         // episodic

    std::size_t select() override;
    void update(std::size_t arm, double reward) override;
    std::span<const ArmStats> arms() const override { return stats_; }

    const ModIucbState& state() const { return state_; }
    /// Selection value of one arm under the current state (+inf if unpulled).
    double upper_bound(std::size_t arm) const;

private:
    void begin_episode(std::uint64_t budget);

    std::vector<ArmStats> stats_;
    bool use_r_;
    bool episodic_;
    ModIucbState state_;
    std::uint64_t episode_plays_ = 0;
};

std::unique_ptr<Policy> make_policy(const PolicyConfig& config, std::size_t num_arms);

struct Pull {
    std::size_t arm;
    double reward;
};
using PullLog = std::vector<Pull>;
using RewardOracle = std::function<double(std::size_t arm)>;

/// Runs a fixed-horizon Improved UCB until the rounds finish or T pulls are
/// made, whichever comes first.
PullLog run_improved_ucb(const RewardOracle& bandit, std::size_t num_arms, std::uint64_t horizon);

/// Runs an episodic policy for exactly total_plays pulls.
PullLog run_episodic(const PolicyConfig& config, const RewardOracle& bandit, std::size_t num_arms,
                     std::uint64_t total_plays);

/// Runs any policy for exactly plays pulls.
PullLog run_policy(Policy& policy, const RewardOracle& bandit, std::uint64_t plays);

}  // namespace miucb::bandit
