#pragma once

#include <Eigen/Core>
#include <vector>

#include "irsim/config.hpp"
#include "irsim/rng.hpp"

namespace irsim {

using Point = Eigen::Vector2d;

struct Topology {
  std::vector<Point> bs_positions;                 // indexed by global BS
  std::vector<std::vector<Point>> user_positions;  // [global BS][k]
  std::vector<Point> irs_positions;                // [l]
  std::vector<Point> cluster_centers;              // user-cluster center per global BS
};

/// Operators are interleaved around the BS ring: global slot b serves operator b % S.
inline int bs_index(const NetworkConfig& c, int op, int local_bs) {
  return local_bs * c.num_operators + op;
}
inline int operator_of_bs(const NetworkConfig& c, int global_bs) {
  return global_bs % c.num_operators;
}

/// Draws one scenario layout: BSs equally spaced on a ring (operators
/// interleaved), users uniform in a disk around each BS's cluster center,
/// IRSs uniform in an annulus around a uniformly chosen cluster center.
/// Pure function of (config, stream state).
Topology generate_topology(const NetworkConfig& config, RngStream& rng);

/// Throws std::invalid_argument if counts mismatch the config or any
/// BS-user / BS-IRS pair coincides.
void validate_topology(const NetworkConfig& config, const Topology& topology);

}  // namespace irsim
