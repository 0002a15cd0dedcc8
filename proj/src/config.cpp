#include "irsim/config.hpp"

#include <stdexcept>
#include <string>

namespace irsim {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(std::string("NetworkConfig: ") + what);
}

}  // namespace

void NetworkConfig::validate() const {
  require(num_operators >= 1, "num_operators must be >= 1");
  require(bs_per_operator >= 1, "bs_per_operator must be >= 1");
  require(users_per_bs >= 1, "users_per_bs must be >= 1");
  require(num_irs >= 1, "num_irs must be >= 1");
  require(elements_per_irs >= 1, "elements_per_irs must be >= 1");
  require(tx_antennas >= 1, "tx_antennas must be >= 1");
  require(users_per_bs <= tx_antennas, "users_per_bs must be <= tx_antennas");
  require(std::isfinite(noise_power_dbm), "noise_power_dbm must be finite");
  require(std::isfinite(tx_power_dbw), "tx_power_dbw must be finite");
  require(std::isfinite(pathloss_ref_db), "pathloss_ref_db must be finite");
  require(pathloss_ref_dist_m > 0.0, "pathloss_ref_dist_m must be > 0");
  require(alpha_bs_irs > 0.0, "alpha_bs_irs must be > 0");
  require(alpha_irs_user > 0.0, "alpha_irs_user must be > 0");
  require(alpha_bs_user > 0.0, "alpha_bs_user must be > 0");
  require(geometry.bs_ring_radius_m > 0.0, "geometry.bs_ring_radius_m must be > 0");
  require(geometry.user_center_offset_m > 0.0, "geometry.user_center_offset_m must be > 0");
  require(geometry.user_disk_radius_m > 0.0, "geometry.user_disk_radius_m must be > 0");
  require(geometry.irs_ring_inner_m > 0.0, "geometry.irs_ring_inner_m must be > 0");
  require(geometry.irs_ring_outer_m > geometry.irs_ring_inner_m,
          "geometry.irs_ring_outer_m must be > irs_ring_inner_m");
}

NetworkConfig desk_config() {
  NetworkConfig c;
  c.num_operators = 2;
  c.bs_per_operator = 2;
  c.users_per_bs = 2;
  c.num_irs = 4;
  c.elements_per_irs = 16;
  c.tx_antennas = 4;
  return c;
}

NetworkConfig paper_config() {
  NetworkConfig c;
  c.num_operators = 3;
  c.bs_per_operator = 2;
  c.users_per_bs = 3;
  c.num_irs = 6;
  c.elements_per_irs = 64;
  c.tx_antennas = 8;
  return c;
}

}  // namespace irsim
