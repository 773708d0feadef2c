#include "payband/simulation.hpp"

namespace payband {

std::uint64_t child_seed(std::uint64_t master_seed, std::size_t policy_index,
                         std::size_t run_index) {
  return derive_seed(master_seed, policy_index, run_index);
}

RunSeeds seeds_for(std::uint64_t master_seed, std::size_t policy_index, std::size_t run_index) {
  return RunSeeds{derive_seed(master_seed, kEnvironmentStream, run_index),
                  child_seed(master_seed, policy_index, run_index)};
}

std::unique_ptr<Environment> make_environment(const InstanceSpec& instance,
                                              std::uint64_t environment_seed) {
  if (const auto* replay = std::get_if<DatasetReplay>(&instance.context_source)) {
    return dataset_to_instance(replay->dataset, instance.horizon, environment_seed,
                               instance.noise_std, replay->with_replacement);
  }
  return std::make_unique<LinearEnvironment>(instance.true_attrs, instance.noise_std,
                                             ContextSource(instance.context_source,
                                                           environment_seed));
}

std::size_t effective_init_explore(const InstanceSpec& instance, const PolicyConfig& policy) {
  return policy.init_explore_m.value_or(instance.init_explore_m);
}

namespace {

RoundRecord start_record(std::size_t t, const ContextDraw& draw, const Policy& policy) {
  RoundRecord rec;
  rec.t = t;
  rec.context = draw.context;
  rec.displayed_estimates = policy.displayed_estimates();
  return rec;
}

void finish_record(RoundRecord& rec, const Environment& env, const ContextDraw& draw,
                   const RewardDraw& reward, const Policy& policy) {
  rec.true_mean_reward = reward.true_mean;
  rec.inst_regret = env.regret(draw, rec.chosen_arm);
  rec.payment_paid = rec.payments[rec.chosen_arm];
  rec.budget_remaining = policy.budget_remaining();
}

}  // namespace

std::vector<RoundRecord> initial_exploration(const Environment& env, const InstanceSpec& instance,
                                             Policy& policy, Rng& noise,
                                             const RoundObserver& observer) {
  const std::size_t m = std::min(policy.init_explore_m(), instance.horizon);
  std::vector<RoundRecord> records;
  records.reserve(m);
  for (std::size_t t = 1; t <= m; ++t) {
    const ContextDraw draw = env.context(t - 1);
    RoundRecord rec = start_record(t, draw, policy);
    rec.forced = true;
    rec.chosen_arm = round_robin_arm(t, env.n_arms());
    rec.payments = PaymentVector(env.n_arms());
    const RewardDraw reward = env.reward(draw, rec.chosen_arm, noise);
    rec.observed_reward =
        instance.warmup_responses.empty() ? reward.observed : instance.warmup_responses[t - 1];
    policy.observe_forced(rec.context, rec.chosen_arm, rec.observed_reward);
    finish_record(rec, env, draw, reward, policy);
    if (observer) observer(rec, policy);
    records.push_back(std::move(rec));
  }
  return records;
}

RoundRecord play_round(const Environment& env, Policy& policy, std::size_t t, Rng& noise) {
  const ContextDraw draw = env.context(t - 1);
  RoundRecord rec = start_record(t, draw, policy);
  rec.payments = policy.calc_payment(t, rec.context);
  rec.chosen_arm = agent_choose(rec.displayed_estimates, rec.context, rec.payments);
  const RewardDraw reward = env.reward(draw, rec.chosen_arm, noise);
  rec.observed_reward = reward.observed;
  policy.update(rec.context, rec.chosen_arm, rec.observed_reward, rec.payments);
  finish_record(rec, env, draw, reward, policy);
  return rec;
}

RunTrace run_single(const InstanceSpec& instance, const PolicyConfig& policy_config, RunSeeds seeds,
                    const RoundObserver& observer) {
  const auto env = make_environment(instance, seeds.environment);
  auto policy = make_policy(env->n_arms(), env->dim(), policy_config,
                            effective_init_explore(instance, policy_config), seeds.policy);
  Rng noise(derive_seed(seeds.environment, kNoiseStream, 0));

  RunTrace trace;
  trace.policy = policy_config;
  trace.seed = seeds.policy;
  trace.records = initial_exploration(*env, instance, *policy, noise, observer);
  trace.records.reserve(instance.horizon);
  for (std::size_t t = trace.records.size() + 1; t <= instance.horizon; ++t) {
    trace.records.push_back(play_round(*env, *policy, t, noise));
    if (observer) observer(trace.records.back(), *policy);
  }
  return trace;
}

}  // namespace payband
