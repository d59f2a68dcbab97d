#include "miucb/testbed.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "miucb/seeding.hpp"

namespace miucb::testbed {

double counter_normal(std::uint64_t seed, std::uint64_t arm, std::uint64_t pull_index) {
    const std::uint64_t key = mix_seed(seed, arm, pull_index);
    // Box-Muller on two independent words; u1 in (0, 1].
    const double u1 = 1.0 - to_unit(splitmix64(key));
    const double u2 = to_unit(splitmix64(key ^ 0xD1B54A32D192ED03ULL));
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double GaussianBanditTask::reward(std::size_t arm, std::uint64_t pull_index) const {
    const double mu = means.at(arm);
    return noise_sd == 0.0 ? mu : mu + noise_sd * counter_normal(noise_seed, arm, pull_index);
}

GaussianBanditTask generate_task(std::size_t num_arms, std::mt19937_64& rng) {
    if (num_arms < 2) {
        throw std::invalid_argument("generate_task: need at least two arms");
    }
    GaussianBanditTask task;
    std::normal_distribution<double> normal(0.0, 1.0);
    task.means.resize(num_arms);
    for (auto& m : task.means) {
        m = normal(rng);
    }
    task.optimal_arm = static_cast<std::size_t>(
        std::distance(task.means.begin(), std::max_element(task.means.begin(), task.means.end())));
    task.noise_seed = rng();
    return task;
}

TaskTrace run_task(const GaussianBanditTask& task, bandit::Policy& policy, std::uint64_t horizon,
                   RegretMode mode) {
    TaskTrace trace;
    trace.regret.resize(horizon);
    trace.optimal.resize(horizon);
    std::vector<std::uint64_t> pulls(task.num_arms(), 0);
    const double best = task.means[task.optimal_arm];
    for (std::uint64_t t = 0; t < horizon; ++t) {
        const std::size_t arm = policy.select();
        const double r = task.reward(arm, pulls.at(arm)++);
        policy.update(arm, r);
        trace.regret[t] = best - (mode == RegretMode::Pseudo ? task.means[arm] : r);
        trace.optimal[t] = arm == task.optimal_arm ? 1 : 0;
    }
    return trace;
}

TaskTrace run_task(const GaussianBanditTask& task, const bandit::PolicyConfig& policy, std::uint64_t horizon,
                   RegretMode mode) {
    auto p = bandit::make_policy(policy, task.num_arms());
    return run_task(task, *p, horizon, mode);
}

void TestbedConfig::validate() const {
    if (num_tasks < 1 || num_arms < 2 || horizon < 1) {
        throw std::invalid_argument("testbed: need tasks >= 1, arms >= 2, horizon >= 1");
    }
    if (policies.empty()) {
        throw std::invalid_argument("testbed: no policies given");
    }
    for (const auto& p : policies) {
        p.validate();
    }
}

namespace {

constexpr std::size_t kBlockTasks = 16;

struct BlockSums {
    std::vector<std::vector<double>> regret;          // [policy][play]
    std::vector<std::vector<std::uint32_t>> optimal;  // [policy][play]
};

BlockSums run_block(const TestbedConfig& config, std::size_t first, std::size_t last) {
    BlockSums sums;
    sums.regret.assign(config.policies.size(), std::vector<double>(config.horizon, 0.0));
    sums.optimal.assign(config.policies.size(), std::vector<std::uint32_t>(config.horizon, 0));
    for (std::size_t i = first; i < last; ++i) {
        std::mt19937_64 rng(mix_seed(config.seed, config.task_offset + i));
        const auto task = generate_task(config.num_arms, rng);
        for (std::size_t p = 0; p < config.policies.size(); ++p) {
            const auto trace = run_task(task, config.policies[p], config.horizon, config.regret_mode);
            for (std::uint64_t t = 0; t < config.horizon; ++t) {
                sums.regret[p][t] += trace.regret[t];
                sums.optimal[p][t] += trace.optimal[t];
            }
        }
    }
    return sums;
}

}  // namespace

std::vector<RegretCurve> run_testbed(const TestbedConfig& config) {
    config.validate();
    const std::size_t np = config.policies.size();
    const std::size_t blocks = (config.num_tasks + kBlockTasks - 1) / kBlockTasks;
    const std::size_t workers = std::max<std::size_t>(1, config.parallelism);

    std::vector<std::vector<double>> regret(np, std::vector<double>(config.horizon, 0.0));
    std::vector<std::vector<std::uint64_t>> optimal(np, std::vector<std::uint64_t>(config.horizon, 0));

    for (std::size_t wave = 0; wave < blocks; wave += workers) {
        const std::size_t wave_end = std::min(blocks, wave + workers);
        std::vector<BlockSums> results(wave_end - wave);
        auto work = [&](std::size_t b) {
            const std::size_t first = b * kBlockTasks;
            const std::size_t last = std::min(config.num_tasks, first + kBlockTasks);
            results[b - wave] = run_block(config, first, last);
        };
        if (workers == 1) {
            work(wave);
        } else {
            std::vector<std::jthread> pool;
            for (std::size_t b = wave; b < wave_end; ++b) {
                pool.emplace_back(work, b);
            }
        }
        // Reduce in block order.
        for (const auto& r : results) {
            for (std::size_t p = 0; p < np; ++p) {
                for (std::uint64_t t = 0; t < config.horizon; ++t) {
                    regret[p][t] += r.regret[p][t];
                    optimal[p][t] += r.optimal[p][t];
                }
            }
        }
    }

    std::vector<RegretCurve> curves;
    const double n = static_cast<double>(config.num_tasks);
    for (std::size_t p = 0; p < np; ++p) {
        RegretCurve c;
        c.policy = config.policies[p].name();
        c.cum_regret.resize(config.horizon);
        c.optimal_pct.resize(config.horizon);
        double cum = 0.0;
        for (std::uint64_t t = 0; t < config.horizon; ++t) {
            cum += regret[p][t] / n;
            c.cum_regret[t] = cum;
            c.optimal_pct[t] = 100.0 * static_cast<double>(optimal[p][t]) / n;
        }
        curves.push_back(std::move(c));
    }
    return curves;
}

void emit_curves(const std::vector<RegretCurve>& curves, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    }
    out << "play,policy,cum_regret,optimal_pct\n";
    char buf[128];
    for (const auto& c : curves) {
        for (std::size_t t = 0; t < c.cum_regret.size(); ++t) {
            std::snprintf(buf, sizeof buf, "%zu,%s,%.17g,%.17g\n", t + 1, c.policy.c_str(), c.cum_regret[t],
                          c.optimal_pct[t]);
            out << buf;
        }
    }
    if (!out) {
        throw std::runtime_error("write failed for '" + path.string() + "'");
    }
}

std::vector<RegretCurve> read_curves(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open '" + path.string() + "'");
    }
    std::string line;
    std::getline(in, line);
    if (line != "play,policy,cum_regret,optimal_pct") {
        throw std::runtime_error("'" + path.string() + "': unexpected header");
    }
    std::vector<RegretCurve> curves;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        std::stringstream ss(line);
        std::string play, policy, regret, pct;
        if (!std::getline(ss, play, ',') || !std::getline(ss, policy, ',') || !std::getline(ss, regret, ',') ||
            !std::getline(ss, pct)) {
            throw std::runtime_error("'" + path.string() + "': malformed row '" + line + "'");
        }
        if (curves.empty() || curves.back().policy != policy) {
            curves.push_back(RegretCurve{policy, {}, {}});
        }
        curves.back().cum_regret.push_back(std::stod(regret));
        curves.back().optimal_pct.push_back(std::stod(pct));
    }
    return curves;
}

}  // namespace miucb::testbed
