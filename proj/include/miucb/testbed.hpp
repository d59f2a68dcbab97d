#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "miucb/bandit.hpp"

namespace miucb::testbed {

/// K-armed bandit with standard-normal arm means. A pull of arm i returns
/// means[i] plus noise; the noise for the j-th pull of arm i is a pure
/// function of (noise_seed, i, j), so two policies that pull the same arm the
/// same number of times observe the same rewards.
struct GaussianBanditTask {
    std::vector<double> means;
    std::size_t optimal_arm = 0;
    std::uint64_t noise_seed = 0;
    double noise_sd = 1.0;

    double reward(std::size_t arm, std::uint64_t pull_index) const;
    std::size_t num_arms() const { return means.size(); }
};

GaussianBanditTask generate_task(std::size_t num_arms, std::mt19937_64& rng);

/// Standard normal variate for a (seed, arm, pull) counter.
double counter_normal(std::uint64_t seed, std::uint64_t arm, std::uint64_t pull_index);

enum class RegretMode {
    Pseudo,    // mu* - mu_{I_t}
    Received,  // mu* - r_t
};

/// Per-play outcome of a single task.
struct TaskTrace {
    std::vector<double> regret;         // increment at each play
    std::vector<std::uint8_t> optimal;  // 1 iff the optimal arm was pulled
};

TaskTrace run_task(const GaussianBanditTask& task, bandit::Policy& policy, std::uint64_t horizon,
                   RegretMode mode = RegretMode::Pseudo);
TaskTrace run_task(const GaussianBanditTask& task, const bandit::PolicyConfig& policy, std::uint64_t horizon,
                   RegretMode mode = RegretMode::Pseudo);

struct TestbedConfig {
    std::size_t num_tasks = 2000;
    std::size_t num_arms = 60;
    std::uint64_t horizon = 5000;
    std::uint64_t seed = 0;
    std::uint64_t task_offset = 0;  // task i is seeded from (seed, task_offset + i)
    std::vector<bandit::PolicyConfig> policies;
    RegretMode regret_mode = RegretMode::Pseudo;
    unsigned parallelism = 1;

    void validate() const;
};

struct RegretCurve {
    std::string policy;
    std::vector<double> cum_regret;   // mean cumulative regret after play t+1
    std::vector<double> optimal_pct;  // % of tasks pulling the optimal arm at play t+1
};

/// Every policy runs on the same task instances. The reduction is performed
/// in fixed task blocks so the result does not depend on parallelism.
std::vector<RegretCurve> run_testbed(const TestbedConfig& config);

/// CSV with header `play,policy,cum_regret,optimal_pct`, grouped by policy in
/// the given order, plays 1-indexed.
void emit_curves(const std::vector<RegretCurve>& curves, const std::filesystem::path& path);
std::vector<RegretCurve> read_curves(const std::filesystem::path& path);

}  // namespace miucb::testbed
