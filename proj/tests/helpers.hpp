#pragma once

// Shared builders for the unit tests: hand-rolled scenarios small enough to
// check against scalar arithmetic.

#include <vector>

#include "irsim/channel.hpp"
#include "irsim/link_layer.hpp"

namespace irsim::test {

/// Config with one operator, one BS, one user: the scalar-oracle scenario.
inline NetworkConfig scalar_config(int num_irs, int elements_per_irs) {
  NetworkConfig cfg;
  cfg.num_operators = 1;
  cfg.bs_per_operator = 1;
  cfg.users_per_bs = 1;
  cfg.num_irs = num_irs;
  cfg.elements_per_irs = elements_per_irs;
  cfg.tx_antennas = 1;
  return cfg;
}

/// Channel container with the right shapes, all entries zero.
inline ChannelSet empty_channels(const NetworkConfig& cfg) {
  ChannelSet ch;
  ch.num_operators = cfg.num_operators;
  ch.bs_per_operator = cfg.bs_per_operator;
  ch.users_per_bs = cfg.users_per_bs;
  ch.num_irs = cfg.num_irs;
  ch.elements_per_irs = cfg.elements_per_irs;
  ch.tx_antennas = cfg.tx_antennas;
  const int B = cfg.total_bs();
  for (int l = 0; l < cfg.num_irs; ++l)
    for (int b = 0; b < B; ++b) ch.bs_irs_ch.push_back(CMatrix::Zero(cfg.elements_per_irs, cfg.tx_antennas));
  for (int l = 0; l < cfg.num_irs; ++l)
    for (int b = 0; b < B; ++b)
      for (int k = 0; k < cfg.users_per_bs; ++k)
        ch.irs_user_ch.push_back(CVector::Zero(cfg.elements_per_irs));
  for (int b = 0; b < B; ++b)
    for (int k = 0; k < cfg.users_per_bs; ++k) ch.bs_user_ch.push_back(CVector::Zero(cfg.tx_antennas));
  return ch;
}

inline CVector& irs_user_ref(ChannelSet& ch, int l, int b, int k) {
  return ch.irs_user_ch[static_cast<std::size_t>(l * ch.total_bs() + b) * ch.users_per_bs + k];
}
inline CMatrix& bs_irs_ref(ChannelSet& ch, int l, int b) {
  return ch.bs_irs_ch[static_cast<std::size_t>(l) * ch.total_bs() + b];
}
inline CVector& bs_user_ref(ChannelSet& ch, int b, int k) {
  return ch.bs_user_ch[static_cast<std::size_t>(b) * ch.users_per_bs + k];
}

/// Random channels with unit-variance entries (no path loss), for algebraic checks.
inline ChannelSet random_channels(const NetworkConfig& cfg, RngStream& rng) {
  ChannelSet ch = empty_channels(cfg);
  for (auto& g : ch.bs_irs_ch)
    for (int r = 0; r < g.rows(); ++r)
      for (int c = 0; c < g.cols(); ++c) g(r, c) = rng.complex_gaussian(1.0);
  for (auto& v : ch.irs_user_ch)
    for (int i = 0; i < v.size(); ++i) v(i) = rng.complex_gaussian(1.0);
  for (auto& v : ch.bs_user_ch)
    for (int i = 0; i < v.size(); ++i) v(i) = rng.complex_gaussian(1.0);
  return ch;
}

inline double rel_diff(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

}  // namespace irsim::test
