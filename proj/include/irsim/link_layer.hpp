#pragma once

#include <Eigen/Core>
#include <span>
#include <vector>

#include "irsim/auction.hpp"
#include "irsim/channel.hpp"

namespace irsim {

/// Unit-modulus reflection coefficients of one IRS toward one operator.
/// A non-tunable IRS reflects with the all-ones (uncontrolled) vector.
struct PhaseShiftVector {
  CVector theta;
  bool tunable = false;
};

/// Precoder of one BS; columns are per-user beamforming vectors. The sum of
/// squared column norms meets the power budget with equality, except for
/// degenerate all-zero channels. `regularized` flags the rank-deficient
/// fallback path.
struct Beamformer {
  CMatrix w;  // N_t x K
  bool regularized = false;
};

using TunableSet = std::vector<int>;  // sorted IRS indices one operator may control

/// Per-user SINR and rate (natural log) plus their sum for one operator,
/// flattened as [local_bs * K + k].
struct RatePoint {
  Eigen::VectorXd sinr;
  Eigen::VectorXd rate;
  double sum_rate = 0.0;
};

/// All-ones reflection vector for every IRS.
std::vector<CVector> identity_phases(const NetworkConfig& config);

/// Effective BS->user channel including the direct path and every IRS
/// reflection (tunable ones through their phase vectors, the rest through the
/// identity). Returned as a column vector h of length N_t with the row
/// convention h^H w for beamforming products.
/// Validates that non-tunable entries carry all-ones theta.
CVector combined_channel(const NetworkConfig& config, const ChannelSet& channels,
                         const std::vector<PhaseShiftVector>& phases, const TunableSet& tunable,
                         int op, int local_bs, int user);

/// Same computation without the consistency checks; thetas[l] is the
/// reflection vector actually applied at IRS l (identity when uncontrolled).
CVector combined_channel_raw(const ChannelSet& channels, const std::vector<CVector>& thetas,
                             int global_bs, int user);

/// Zero-forcing directions (pseudo-inverse of the stacked user channels) with
/// an equal per-user split of the full power budget. Rank-deficient stacks
/// fall back to a regularized inverse with lambda = 1e-12 * trace(H H^H) and
/// set `regularized`.
Beamformer design_beamformer_zf(const CMatrix& user_channels /* N_t x K, columns h_k */,
                                double power_budget_w);

/// Coherent alignment for the anchor user: the user with the largest
/// direct-channel norm at the operator's BS with the largest aggregate
/// cascaded energy through this IRS. Each element's phase rotates its cascade
/// contribution onto the anchor's direct-channel direction; zero-magnitude
/// cascade elements keep theta = 1.
PhaseShiftVector design_phases_local(const NetworkConfig& config, const ChannelSet& channels,
                                     int op, int irs);

/// Reflection vectors for one operator: aligned phases for each tunable IRS,
/// identity elsewhere. Falls back to identity everywhere when alignment would
/// lower the operator's own sum rate.
std::vector<CVector> design_operator_phases(const NetworkConfig& config,
                                            const ChannelSet& channels,
                                            const TunableSet& tunable, int op);

/// |h^H w_k|^2 / (sum_{j != k} |h^H w_j|^2 + sigma^2) with h the combined
/// channel of (op, local_bs, user). `beamformers` is indexed by local BS.
double sinr(const NetworkConfig& config, const ChannelSet& channels,
            const std::vector<PhaseShiftVector>& phases, const TunableSet& tunable,
            std::span<const Beamformer> beamformers, int op, int local_bs, int user);

/// Sum rate of one operator under the given per-IRS reflection vectors, with
/// zero-forcing beamformers designed per BS for these channels.
RatePoint operator_rates(const NetworkConfig& config, const ChannelSet& channels,
                         const std::vector<CVector>& thetas, int op);

/// Sum-rate gain of controlling `tunable` versus controlling nothing, both
/// sides with beamformers (and phases) designed for their own scenario.
/// Exactly zero for an empty set and never negative (identity fallback).
double sum_rate_gain(const NetworkConfig& config, const ChannelSet& channels,
                     const TunableSet& tunable, int op);

/// Value of a single IRS to an operator: sum_rate_gain with just that IRS.
double valuation(const NetworkConfig& config, const ChannelSet& channels, int irs, int op);

/// Valuations for every (IRS, operator) pair; oracle_calls counts the
/// valuation evaluations spent (exactly L * S).
ValuationTable compute_valuation_table(const NetworkConfig& config, const ChannelSet& channels);

}  // namespace irsim
