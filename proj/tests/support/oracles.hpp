#pragma once

#include <cstddef>
#include <vector>

// Straight-line reference transcriptions of the bandit policies, written
// without the library's classes. Rewards are deterministic per arm.
namespace oracle {

std::vector<std::size_t> ucb1(const std::vector<double>& rewards, int plays, double c);

// horizon is ignored when episodic.
std::vector<std::size_t> improved_ucb(const std::vector<double>& rewards, int plays, bool episodic, int horizon);

std::vector<std::size_t> modified_iucb(const std::vector<double>& rewards, int plays, bool use_r, bool episodic,
                                       int horizon);

}  // namespace oracle
