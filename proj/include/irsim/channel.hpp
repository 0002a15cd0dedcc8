#pragma once

#include <Eigen/Core>
#include <complex>
#include <vector>

#include "irsim/config.hpp"
#include "irsim/rng.hpp"
#include "irsim/topology.hpp"

namespace irsim {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

/// One quasi-static flat-fading realization of every link in the scenario.
/// Entries are i.i.d. circularly-symmetric complex Gaussian with per-entry
/// variance equal to the link's distance-dependent path-loss gain.
struct ChannelSet {
  int num_operators = 0;
  int bs_per_operator = 0;
  int users_per_bs = 0;
  int num_irs = 0;
  int elements_per_irs = 0;
  int tx_antennas = 0;

  std::vector<CVector> irs_user_ch;  // [(l * B + b) * K + k], length M
  std::vector<CMatrix> bs_irs_ch;    // [l * B + b], M x N_t
  std::vector<CVector> bs_user_ch;   // [b * K + k], length N_t

  int total_bs() const { return num_operators * bs_per_operator; }

  const CVector& irs_user(int l, int b, int k) const {
    return irs_user_ch[static_cast<std::size_t>(l * total_bs() + b) * users_per_bs + k];
  }
  const CMatrix& bs_irs(int l, int b) const {
    return bs_irs_ch[static_cast<std::size_t>(l) * total_bs() + b];
  }
  const CVector& bs_user(int b, int k) const {
    return bs_user_ch[static_cast<std::size_t>(b) * users_per_bs + k];
  }
};

/// Linear power gain 10^(C0_dB/10) * (d/d0)^(-alpha).
/// Throws std::domain_error for non-positive distance.
double path_loss_linear(double distance_m, double alpha, const NetworkConfig& config);

/// Draws every link of the scenario. Pure function of (config, topology,
/// stream state); draw order is fixed (BS-IRS, then IRS-user, then BS-user).
ChannelSet generate_channels(const NetworkConfig& config, const Topology& topology,
                             RngStream& rng);

}  // namespace irsim
