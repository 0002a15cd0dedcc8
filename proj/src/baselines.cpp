#include "irsim/baselines.hpp"

#include <cmath>

namespace irsim {

AllocationScore evaluate_allocation(const NetworkConfig& config, const ChannelSet& channels,
                                    const Allocation& allocation) {
  if (allocation.num_irs() != config.num_irs ||
      allocation.num_operators != config.num_operators)
    throw std::invalid_argument("evaluate_allocation: allocation dimensions mismatch");

  AllocationScore score;
  score.allocation = allocation;
  score.per_operator_gain.resize(config.num_operators, 0.0);
  for (int s = 0; s < config.num_operators; ++s) {
    score.per_operator_gain[s] = sum_rate_gain(config, channels, allocation.tunable_for(s), s);
    score.total_gain += score.per_operator_gain[s];
  }
  return score;
}

ExhaustiveResult exhaustive_search(const NetworkConfig& config, const ChannelSet& channels,
                                   std::int64_t budget) {
  config.validate();
  const int L = config.num_irs;
  const int S = config.num_operators;

  const double required = std::pow(static_cast<double>(S), L);
  if (required > static_cast<double>(budget))
    throw EnumerationBudgetExceeded(required, budget);

  ExhaustiveResult result;
  Allocation candidate{std::vector<int>(L, 0), S};
  bool have_best = false;

  // Odometer over owner vectors with owner[L-1] fastest yields lexicographic
  // order on (owner[0], ..., owner[L-1]); keeping strict improvements only
  // leaves the lexicographically smallest maximizer.
  while (true) {
    AllocationScore score = evaluate_allocation(config, channels, candidate);
    ++result.evaluations;
    if (!have_best || score.total_gain > result.best.total_gain) {
      result.best = std::move(score);
      have_best = true;
    }

    int pos = L - 1;
    while (pos >= 0 && candidate.owner[pos] == S - 1) candidate.owner[pos--] = 0;
    if (pos < 0) break;
    ++candidate.owner[pos];
  }
  return result;
}

Allocation random_allocation(const NetworkConfig& config, RngStream& rng) {
  config.validate();
  Allocation alloc{std::vector<int>(config.num_irs, -1), config.num_operators};
  for (int l = 0; l < config.num_irs; ++l) alloc.owner[l] = rng.uniform_int(config.num_operators);
  return alloc;
}

}  // namespace irsim
