#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "irsim/link_layer.hpp"

namespace irsim {

struct AllocationScore {
  Allocation allocation;
  double total_gain = 0.0;
  std::vector<double> per_operator_gain;
};

class EnumerationBudgetExceeded : public std::runtime_error {
 public:
  EnumerationBudgetExceeded(double required, std::int64_t budget)
      : std::runtime_error("exhaustive_search: S^L = " + std::to_string(required) +
                           " allocations exceed the enumeration budget of " +
                           std::to_string(budget)),
        required_evaluations(required) {}
  double required_evaluations;
};

/// Objective value of an allocation: per-operator sum-rate gains evaluated
/// with the same pipeline the auctions value IRSs with, summed over operators.
AllocationScore evaluate_allocation(const NetworkConfig& config, const ChannelSet& channels,
                                    const Allocation& allocation);

struct ExhaustiveResult {
  AllocationScore best;
  std::int64_t evaluations = 0;  // full-pipeline evaluations performed (S^L)
};

/// Enumerates all S^L full allocations (every IRS assigned to exactly one
/// operator) and returns the maximizer; ties keep the lexicographically
/// smallest owner vector. Throws EnumerationBudgetExceeded instead of
/// starting an enumeration larger than `budget`.
ExhaustiveResult exhaustive_search(const NetworkConfig& config, const ChannelSet& channels,
                                   std::int64_t budget = 100000);

/// Assigns every IRS independently and uniformly to one of the S operators.
Allocation random_allocation(const NetworkConfig& config, RngStream& rng);

}  // namespace irsim
