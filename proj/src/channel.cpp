#include "irsim/channel.hpp"

#include <stdexcept>

namespace irsim {

double path_loss_linear(double distance_m, double alpha, const NetworkConfig& config) {
  if (!(distance_m > 0.0))
    throw std::domain_error("path_loss_linear: distance must be positive");
  const double ref_gain = std::pow(10.0, config.pathloss_ref_db / 10.0);
  return ref_gain * std::pow(distance_m / config.pathloss_ref_dist_m, -alpha);
}

namespace {

CVector draw_vector(int n, double entry_variance, RngStream& rng) {
  CVector v(n);
  for (int i = 0; i < n; ++i) v(i) = rng.complex_gaussian(entry_variance);
  return v;
}

CMatrix draw_matrix(int rows, int cols, double entry_variance, RngStream& rng) {
  CMatrix m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) m(r, c) = rng.complex_gaussian(entry_variance);
  return m;
}

}  // namespace

ChannelSet generate_channels(const NetworkConfig& config, const Topology& topo, RngStream& rng) {
  config.validate();
  validate_topology(config, topo);

  const int B = config.total_bs();
  const int K = config.users_per_bs;
  const int L = config.num_irs;
  const int M = config.elements_per_irs;
  const int Nt = config.tx_antennas;

  ChannelSet ch;
  ch.num_operators = config.num_operators;
  ch.bs_per_operator = config.bs_per_operator;
  ch.users_per_bs = K;
  ch.num_irs = L;
  ch.elements_per_irs = M;
  ch.tx_antennas = Nt;
  ch.bs_irs_ch.reserve(static_cast<std::size_t>(L) * B);
  ch.irs_user_ch.reserve(static_cast<std::size_t>(L) * B * K);
  ch.bs_user_ch.reserve(static_cast<std::size_t>(B) * K);

  for (int l = 0; l < L; ++l)
    for (int b = 0; b < B; ++b) {
      const double d = (topo.irs_positions[l] - topo.bs_positions[b]).norm();
      ch.bs_irs_ch.push_back(draw_matrix(M, Nt, path_loss_linear(d, config.alpha_bs_irs, config), rng));
    }

  for (int l = 0; l < L; ++l)
    for (int b = 0; b < B; ++b)
      for (int k = 0; k < K; ++k) {
        const double d = (topo.user_positions[b][k] - topo.irs_positions[l]).norm();
        ch.irs_user_ch.push_back(draw_vector(M, path_loss_linear(d, config.alpha_irs_user, config), rng));
      }

  for (int b = 0; b < B; ++b)
    for (int k = 0; k < K; ++k) {
      const double d = (topo.user_positions[b][k] - topo.bs_positions[b]).norm();
      ch.bs_user_ch.push_back(draw_vector(Nt, path_loss_linear(d, config.alpha_bs_user, config), rng));
    }

  return ch;
}

}  // namespace irsim
