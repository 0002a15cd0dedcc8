#include "irsim/topology.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace irsim {

Topology generate_topology(const NetworkConfig& config, RngStream& rng) {
  config.validate();
  const GeometryParams& geo = config.geometry;
  const int total = config.total_bs();

  Topology topo;
  topo.bs_positions.reserve(total);
  topo.cluster_centers.reserve(total);
  for (int b = 0; b < total; ++b) {
    const double angle = 2.0 * std::numbers::pi * b / total;
    const Point dir(std::cos(angle), std::sin(angle));
    topo.bs_positions.push_back(geo.bs_ring_radius_m * dir);
    topo.cluster_centers.push_back((geo.bs_ring_radius_m + geo.user_center_offset_m) * dir);
  }

  topo.user_positions.resize(total);
  for (int b = 0; b < total; ++b) {
    topo.user_positions[b].reserve(config.users_per_bs);
    for (int k = 0; k < config.users_per_bs; ++k) {
      const double r = geo.user_disk_radius_m * std::sqrt(rng.uniform());
      const double phi = 2.0 * std::numbers::pi * rng.uniform();
      topo.user_positions[b].push_back(topo.cluster_centers[b] +
                                       r * Point(std::cos(phi), std::sin(phi)));
    }
  }

  const double inner2 = geo.irs_ring_inner_m * geo.irs_ring_inner_m;
  const double outer2 = geo.irs_ring_outer_m * geo.irs_ring_outer_m;
  topo.irs_positions.reserve(config.num_irs);
  for (int l = 0; l < config.num_irs; ++l) {
    const int cluster = rng.uniform_int(total);
    // sqrt of a uniform squared-radius makes the draw area-uniform in the annulus
    const double r = std::sqrt(inner2 + rng.uniform() * (outer2 - inner2));
    const double phi = 2.0 * std::numbers::pi * rng.uniform();
    topo.irs_positions.push_back(topo.cluster_centers[cluster] +
                                 r * Point(std::cos(phi), std::sin(phi)));
  }

  validate_topology(config, topo);
  return topo;
}

void validate_topology(const NetworkConfig& config, const Topology& topo) {
  const int total = config.total_bs();
  if (static_cast<int>(topo.bs_positions.size()) != total)
    throw std::invalid_argument("Topology: BS count mismatch");
  if (static_cast<int>(topo.user_positions.size()) != total)
    throw std::invalid_argument("Topology: user list count mismatch");
  for (const auto& users : topo.user_positions)
    if (static_cast<int>(users.size()) != config.users_per_bs)
      throw std::invalid_argument("Topology: users-per-BS count mismatch");
  if (static_cast<int>(topo.irs_positions.size()) != config.num_irs)
    throw std::invalid_argument("Topology: IRS count mismatch");

  for (int b = 0; b < total; ++b) {
    for (const Point& u : topo.user_positions[b])
      if ((u - topo.bs_positions[b]).norm() <= 0.0)
        throw std::invalid_argument("Topology: BS-user distance must be positive");
    for (const Point& irs : topo.irs_positions)
      if ((irs - topo.bs_positions[b]).norm() <= 0.0)
        throw std::invalid_argument("Topology: BS-IRS distance must be positive");
  }
}

}  // namespace irsim
