#pragma once

#include <cmath>
#include <cstdint>

namespace irsim {

/// Placement parameters for the synthetic scenario geometry. All lengths in meters.
struct GeometryParams {
  double bs_ring_radius_m = 100.0;     // BSs sit on this circle around the origin
  double user_center_offset_m = 50.0;  // user-cluster center, radially outward from its BS
  double user_disk_radius_m = 20.0;    // users uniform in a disk around the cluster center
  double irs_ring_inner_m = 5.0;       // IRSs uniform in an annulus around a cluster center
  double irs_ring_outer_m = 30.0;
};

/// Full scenario description. Counts are per-entity and identical across
/// entities of the same kind (every operator has the same number of BSs, etc).
struct NetworkConfig {
  int num_operators = 2;      // S
  int bs_per_operator = 2;    // N_s
  int users_per_bs = 2;       // K
  int num_irs = 4;            // L
  int elements_per_irs = 16;  // M
  int tx_antennas = 4;        // N_t

  double noise_power_dbm = -70.0;
  double tx_power_dbw = -5.0;      // per-BS transmit budget
  double pathloss_ref_db = -30.0;  // attenuation at the reference distance
  double pathloss_ref_dist_m = 1.0;
  double alpha_bs_irs = 2.5;
  double alpha_irs_user = 2.8;
  double alpha_bs_user = 3.5;

  GeometryParams geometry{};
  std::uint64_t seed = 1;

  static double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
  static double dbw_to_watt(double dbw) { return std::pow(10.0, dbw / 10.0); }

  int total_bs() const { return num_operators * bs_per_operator; }
  double noise_power_w() const { return dbm_to_watt(noise_power_dbm); }
  double tx_power_w() const { return dbw_to_watt(tx_power_dbw); }

  /// Throws std::invalid_argument naming the offending field.
  /// Zero-forcing requires users_per_bs <= tx_antennas.
  void validate() const;
};

/// Small scenario; exhaustive search enumerates 2^4 = 16 allocations per trial.
NetworkConfig desk_config();

/// Full-scale scenario; exhaustive search enumerates 3^6 = 729 allocations per trial.
NetworkConfig paper_config();

}  // namespace irsim
