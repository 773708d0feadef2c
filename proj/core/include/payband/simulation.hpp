#pragma once

// The round loop of a single run:
//   context -> payments -> agent choice -> reward -> policy update -> record.

#include <cstdint>
#include <functional>
#include <memory>

#include "payband/config.hpp"
#include "payband/environment.hpp"
#include "payband/metrics.hpp"
#include "payband/policies.hpp"

namespace payband {

/// Seeds for one (policy, run) pair. The environment seed depends only on the
/// run index so every policy faces the same contexts and noise in run r; the
/// policy seed is the child seed of (master, policy index, run index).
struct RunSeeds {
  std::uint64_t environment = 0;
  std::uint64_t policy = 0;
};

RunSeeds seeds_for(std::uint64_t master_seed, std::size_t policy_index, std::size_t run_index);

/// Child seed of (master, policy index, run index).
std::uint64_t child_seed(std::uint64_t master_seed, std::size_t policy_index,
                         std::size_t run_index);

std::unique_ptr<Environment> make_environment(const InstanceSpec& instance,
                                              std::uint64_t environment_seed);

/// Warm-start length a policy runs with.
std::size_t effective_init_explore(const InstanceSpec& instance, const PolicyConfig& policy);

/// Called after each round with the finished record and the policy state.
using RoundObserver = std::function<void(const RoundRecord&, const Policy&)>;

/// Forced round-robin rounds 1..m. Payments are zero; each pulled arm absorbs
/// (context, observed reward). Returns the m records.
std::vector<RoundRecord> initial_exploration(const Environment& env, const InstanceSpec& instance,
                                             Policy& policy, Rng& noise,
                                             const RoundObserver& observer = {});

/// One payment-driven round t > m.
RoundRecord play_round(const Environment& env, Policy& policy, std::size_t t, Rng& noise);

RunTrace run_single(const InstanceSpec& instance, const PolicyConfig& policy, RunSeeds seeds,
                    const RoundObserver& observer = {});

}  // namespace payband
