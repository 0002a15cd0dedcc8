#include "irsim/link_layer.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace irsim {

namespace {

constexpr double kRankTolerance = 1e-12;

void check_index(int value, int bound, const char* what) {
  if (value < 0 || value >= bound)
    throw std::invalid_argument(std::string("link_layer: index out of range: ") + what);
}

void check_phases(const NetworkConfig& config, const ChannelSet& channels,
                  const std::vector<PhaseShiftVector>& phases, const TunableSet& tunable) {
  if (static_cast<int>(phases.size()) != channels.num_irs)
    throw std::invalid_argument("link_layer: one phase vector per IRS required");
  for (int l = 0; l < channels.num_irs; ++l) {
    const PhaseShiftVector& p = phases[l];
    if (p.theta.size() != config.elements_per_irs)
      throw std::invalid_argument("link_layer: phase vector length must equal elements_per_irs");
    for (int m = 0; m < p.theta.size(); ++m)
      if (std::abs(std::abs(p.theta(m)) - 1.0) > 1e-9)
        throw std::invalid_argument("link_layer: phase elements must have unit modulus");
    const bool in_set = std::find(tunable.begin(), tunable.end(), l) != tunable.end();
    if (p.tunable != in_set)
      throw std::invalid_argument("link_layer: tunable flags must match the tunable set");
    if (!in_set && p.theta != CVector::Ones(p.theta.size()))
      throw std::invalid_argument("link_layer: non-tunable IRSs must carry all-ones theta");
  }
}

void check_channel_dims(const NetworkConfig& config, const ChannelSet& channels) {
  if (channels.num_operators != config.num_operators ||
      channels.bs_per_operator != config.bs_per_operator ||
      channels.users_per_bs != config.users_per_bs || channels.num_irs != config.num_irs ||
      channels.elements_per_irs != config.elements_per_irs ||
      channels.tx_antennas != config.tx_antennas)
    throw std::invalid_argument("link_layer: channel set dimensions do not match the config");
}

std::vector<CVector> extract_thetas(const std::vector<PhaseShiftVector>& phases) {
  std::vector<CVector> thetas;
  thetas.reserve(phases.size());
  for (const PhaseShiftVector& p : phases) thetas.push_back(p.theta);
  return thetas;
}

}  // namespace

std::vector<CVector> identity_phases(const NetworkConfig& config) {
  return std::vector<CVector>(config.num_irs, CVector::Ones(config.elements_per_irs));
}

CVector combined_channel_raw(const ChannelSet& channels, const std::vector<CVector>& thetas,
                             int global_bs, int user) {
  // Column form: h = sum_l G^H diag(theta*) h_r + h_d, so that h^H recovers
  // the row expression sum_l (h_r)^H diag(theta) G + (h_d)^H.
  CVector h = channels.bs_user(global_bs, user);
  for (int l = 0; l < channels.num_irs; ++l)
    h += channels.bs_irs(l, global_bs).adjoint() *
         thetas[l].conjugate().cwiseProduct(channels.irs_user(l, global_bs, user));
  return h;
}

CVector combined_channel(const NetworkConfig& config, const ChannelSet& channels,
                         const std::vector<PhaseShiftVector>& phases, const TunableSet& tunable,
                         int op, int local_bs, int user) {
  check_channel_dims(config, channels);
  check_index(op, config.num_operators, "operator");
  check_index(local_bs, config.bs_per_operator, "bs");
  check_index(user, config.users_per_bs, "user");
  check_phases(config, channels, phases, tunable);
  return combined_channel_raw(channels, extract_thetas(phases), bs_index(config, op, local_bs),
                              user);
}

Beamformer design_beamformer_zf(const CMatrix& user_channels, double power_budget_w) {
  const int nt = static_cast<int>(user_channels.rows());
  const int k = static_cast<int>(user_channels.cols());
  if (k < 1 || nt < k)
    throw std::invalid_argument("design_beamformer_zf: need 1 <= K <= N_t");
  if (!(power_budget_w > 0.0))
    throw std::invalid_argument("design_beamformer_zf: power budget must be positive");

  // Rows of H are h_k^H; directions come from the right pseudo-inverse
  // H^+ = H^H (H H^H)^-1 so that H * W_raw = I.
  const CMatrix h_rows = user_channels.adjoint();     // K x N_t
  CMatrix gram = h_rows * h_rows.adjoint();           // K x K, Hermitian PSD

  Beamformer bf;
  const double trace = gram.real().trace();
  Eigen::SelfAdjointEigenSolver<CMatrix> eigs(gram);
  const double lambda_max = eigs.eigenvalues().maxCoeff();
  const double lambda_min = eigs.eigenvalues().minCoeff();
  if (!(lambda_min > kRankTolerance * lambda_max)) {
    bf.regularized = true;
    gram += (kRankTolerance * std::max(trace, 1e-300)) * CMatrix::Identity(k, k);
  }

  const CMatrix w_raw = user_channels * gram.ldlt().solve(CMatrix::Identity(k, k));
  bf.w = CMatrix::Zero(nt, k);
  const double per_user = std::sqrt(power_budget_w / k);
  for (int j = 0; j < k; ++j) {
    const double n = w_raw.col(j).norm();
    if (n > 0.0) bf.w.col(j) = (per_user / n) * w_raw.col(j);
  }
  return bf;
}

PhaseShiftVector design_phases_local(const NetworkConfig& config, const ChannelSet& channels,
                                     int op, int irs) {
  check_channel_dims(config, channels);
  check_index(op, config.num_operators, "operator");
  check_index(irs, config.num_irs, "irs");

  const int m_count = config.elements_per_irs;

  // Anchor BS: largest aggregate cascaded energy sum_k ||diag(h_r^*) G||_F^2.
  int anchor_bs = 0;
  double best_energy = -1.0;
  for (int n = 0; n < config.bs_per_operator; ++n) {
    const int b = bs_index(config, op, n);
    const Eigen::VectorXd row_power = channels.bs_irs(irs, b).rowwise().squaredNorm();
    double energy = 0.0;
    for (int k = 0; k < config.users_per_bs; ++k)
      energy += channels.irs_user(irs, b, k).cwiseAbs2().dot(row_power);
    if (energy > best_energy) {
      best_energy = energy;
      anchor_bs = b;
    }
  }

  // Anchor user: largest direct-channel norm at the anchor BS.
  int anchor_user = 0;
  double best_norm = -1.0;
  for (int k = 0; k < config.users_per_bs; ++k) {
    const double n = channels.bs_user(anchor_bs, k).norm();
    if (n > best_norm) {
      best_norm = n;
      anchor_user = k;
    }
  }

  const CMatrix& g = channels.bs_irs(irs, anchor_bs);
  const CVector& h_r = channels.irs_user(irs, anchor_bs, anchor_user);
  const CVector& h_d = channels.bs_user(anchor_bs, anchor_user);

  PhaseShiftVector result{CVector::Ones(m_count), true};

  // Reference direction: the anchor's direct channel, or its strongest
  // cascade row when the direct path vanishes.
  CVector u;
  if (h_d.norm() > 0.0) {
    u = h_d / h_d.norm();
  } else {
    int best_m = -1;
    double best = 0.0;
    for (int m = 0; m < m_count; ++m) {
      const double mag = std::abs(h_r(m)) * g.row(m).norm();
      if (mag > best) {
        best = mag;
        best_m = m;
      }
    }
    if (best_m < 0) return result;  // no usable reference, keep identity
    u = (std::conj(h_r(best_m)) * g.row(best_m)).adjoint();
    u /= u.norm();
  }

  for (int m = 0; m < m_count; ++m) {
    // Projection of this element's cascade row conj(h_r_m) * G[m,:] onto u.
    const Complex p = std::conj(h_r(m)) * (g.row(m) * u)(0);
    const double mag = std::abs(p);
    if (mag > 0.0) result.theta(m) = std::conj(p) / mag;
  }
  return result;
}

RatePoint operator_rates(const NetworkConfig& config, const ChannelSet& channels,
                         const std::vector<CVector>& thetas, int op) {
  check_channel_dims(config, channels);
  check_index(op, config.num_operators, "operator");
  if (static_cast<int>(thetas.size()) != config.num_irs)
    throw std::invalid_argument("operator_rates: one theta vector per IRS required");

  const int k_count = config.users_per_bs;
  const double power = config.tx_power_w();
  const double sigma2 = config.noise_power_w();

  RatePoint rp;
  rp.sinr.resize(config.bs_per_operator * k_count);
  rp.rate.resize(config.bs_per_operator * k_count);

  for (int n = 0; n < config.bs_per_operator; ++n) {
    const int b = bs_index(config, op, n);
    CMatrix h_cols(config.tx_antennas, k_count);
    for (int k = 0; k < k_count; ++k)
      h_cols.col(k) = combined_channel_raw(channels, thetas, b, k);
    const Beamformer bf = design_beamformer_zf(h_cols, power);
    for (int k = 0; k < k_count; ++k) {
      const CVector& h = h_cols.col(k);
      double signal = 0.0, interference = 0.0;
      for (int j = 0; j < k_count; ++j) {
        const double p = std::norm((h.adjoint() * bf.w.col(j))(0));
        if (j == k)
          signal = p;
        else
          interference += p;
      }
      const double gamma = signal / (interference + sigma2);
      rp.sinr(n * k_count + k) = gamma;
      rp.rate(n * k_count + k) = std::log1p(gamma);
      rp.sum_rate += rp.rate(n * k_count + k);
    }
  }
  return rp;
}

double sinr(const NetworkConfig& config, const ChannelSet& channels,
            const std::vector<PhaseShiftVector>& phases, const TunableSet& tunable,
            std::span<const Beamformer> beamformers, int op, int local_bs, int user) {
  check_channel_dims(config, channels);
  check_index(op, config.num_operators, "operator");
  check_index(local_bs, config.bs_per_operator, "bs");
  check_index(user, config.users_per_bs, "user");
  check_phases(config, channels, phases, tunable);
  if (static_cast<int>(beamformers.size()) != config.bs_per_operator)
    throw std::invalid_argument("sinr: one beamformer per BS of the operator required");

  const CVector h = combined_channel_raw(channels, extract_thetas(phases),
                                         bs_index(config, op, local_bs), user);
  const CMatrix& w = beamformers[local_bs].w;
  if (w.rows() != config.tx_antennas || w.cols() != config.users_per_bs)
    throw std::invalid_argument("sinr: beamformer dimensions do not match the config");

  double signal = 0.0, interference = 0.0;
  for (int j = 0; j < config.users_per_bs; ++j) {
    const double p = std::norm((h.adjoint() * w.col(j))(0));
    if (j == user)
      signal = p;
    else
      interference += p;
  }
  return signal / (interference + config.noise_power_w());
}

namespace {

void check_tunable(const NetworkConfig& config, const TunableSet& tunable) {
  int prev = -1;
  for (int l : tunable) {
    if (l < 0 || l >= config.num_irs)
      throw std::invalid_argument("link_layer: tunable IRS index out of range");
    if (l <= prev) throw std::invalid_argument("link_layer: tunable set must be sorted and unique");
    prev = l;
  }
}

// The reflection vector actually deployed at one IRS: alignment is kept only
// when it strictly improves the operator's rate with that IRS alone, so an
// IRS whose single-IRS value is zero stays at the identity in every set it
// appears in (owning it is then a no-op, bit for bit).
CVector effective_theta(const NetworkConfig& config, const ChannelSet& channels, int op, int irs,
                        const std::vector<CVector>& identity, double baseline_rate) {
  std::vector<CVector> thetas = identity;
  thetas[irs] = design_phases_local(config, channels, op, irs).theta;
  if (operator_rates(config, channels, thetas, op).sum_rate > baseline_rate)
    return std::move(thetas[irs]);
  return identity[irs];
}

}  // namespace

std::vector<CVector> design_operator_phases(const NetworkConfig& config,
                                            const ChannelSet& channels,
                                            const TunableSet& tunable, int op) {
  check_channel_dims(config, channels);
  check_index(op, config.num_operators, "operator");
  check_tunable(config, tunable);
  std::vector<CVector> identity = identity_phases(config);
  if (tunable.empty()) return identity;

  const double baseline = operator_rates(config, channels, identity, op).sum_rate;
  std::vector<CVector> thetas = identity;
  for (int l : tunable)
    thetas[l] = effective_theta(config, channels, op, l, identity, baseline);
  if (operator_rates(config, channels, thetas, op).sum_rate < baseline) return identity;
  return thetas;
}

double sum_rate_gain(const NetworkConfig& config, const ChannelSet& channels,
                     const TunableSet& tunable, int op) {
  check_channel_dims(config, channels);
  check_index(op, config.num_operators, "operator");
  check_tunable(config, tunable);
  if (tunable.empty()) return 0.0;

  const std::vector<CVector> identity = identity_phases(config);
  const double baseline = operator_rates(config, channels, identity, op).sum_rate;
  std::vector<CVector> thetas = identity;
  for (int l : tunable)
    thetas[l] = effective_theta(config, channels, op, l, identity, baseline);
  const double with_irs = operator_rates(config, channels, thetas, op).sum_rate;
  // Set-level identity fallback: the deployed design never lowers the
  // operator's own rate, so the gain is never negative.
  return std::max(with_irs - baseline, 0.0);
}

double valuation(const NetworkConfig& config, const ChannelSet& channels, int irs, int op) {
  check_index(irs, config.num_irs, "irs");
  return sum_rate_gain(config, channels, TunableSet{irs}, op);
}

ValuationTable compute_valuation_table(const NetworkConfig& config, const ChannelSet& channels) {
  ValuationTable table;
  table.nu.resize(config.num_irs, config.num_operators);
  for (int l = 0; l < config.num_irs; ++l)
    for (int s = 0; s < config.num_operators; ++s) {
      table.nu(l, s) = valuation(config, channels, l, s);
      ++table.oracle_calls;
    }
  return table;
}

}  // namespace irsim
