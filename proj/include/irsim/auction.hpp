#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <vector>

namespace irsim {

/// Per-(IRS, operator) valuations. Row l, column s holds the sum-rate gain
/// operator s attributes to owning IRS l alone.
struct ValuationTable {
  Eigen::MatrixXd nu;             // L x S
  std::int64_t oracle_calls = 0;  // valuation evaluations spent building the table

  int num_irs() const { return static_cast<int>(nu.rows()); }
  int num_operators() const { return static_cast<int>(nu.cols()); }
};

/// owner[l] is the operator index winning IRS l, or -1 while unallocated.
/// Equivalent to the L x S binary matrix with one-hot (or all-zero) rows.
struct Allocation {
  std::vector<int> owner;
  int num_operators = 0;

  bool operator==(const Allocation&) const = default;

  int num_irs() const { return static_cast<int>(owner.size()); }

  /// Sorted IRS indices owned by operator s.
  std::vector<int> tunable_for(int s) const {
    std::vector<int> set;
    for (int l = 0; l < num_irs(); ++l)
      if (owner[l] == s) set.push_back(l);
    return set;
  }

  Eigen::MatrixXi matrix() const {
    Eigen::MatrixXi a = Eigen::MatrixXi::Zero(num_irs(), num_operators);
    for (int l = 0; l < num_irs(); ++l)
      if (owner[l] >= 0) a(l, owner[l]) = 1;
    return a;
  }

  static Allocation unallocated(int num_irs, int num_operators) {
    return Allocation{std::vector<int>(num_irs, -1), num_operators};
  }
};

struct AuctionState {
  Eigen::VectorXd prices;  // current price per IRS (highest bid so far)
  Eigen::MatrixXd bids;    // L x S, each operator's standing bid per IRS
  Allocation allocation;
  int round = 0;
  double kappa = 0.0;  // bidding coefficient (successive auction only)
};

struct RoundRecord {
  AuctionState state;       // snapshot after the round's synchronized update
  int bids_submitted = 0;
};

enum class StopReason { no_bids, fixed_point, allocation_converged, round_cap };

struct AuctionTrace {
  std::vector<RoundRecord> rounds;
  std::int64_t valuation_oracle_calls = 0;  // copied from the table that fed the auction
  std::int64_t profit_evaluations = 0;
  bool converged = false;
  StopReason stop_reason = StopReason::round_cap;

  /// One JSON object per line: round, prices, bids, allocation, bids_submitted.
  std::string to_jsonl() const;
};

struct AuctionResult {
  Allocation allocation;
  AuctionTrace trace;
};

struct SuccessiveOptions {
  double kappa = 0.5;           // must lie in (0, 1)
  int max_rounds = 0;           // 0 selects the default cap of 10 * L * S
  bool monotone_prices = true;  // floor prices/bids at their historical maxima
  bool bid_on_valuation_gap = false;  // variant bid eps + kappa * (nu - eps)
};

struct SimultaneousOptions {
  int max_rounds = 100;
  bool monotone_prices = true;
};

/// max{nu_{l,s} - eps_l, 0}.
double profit(const ValuationTable& table, const Eigen::VectorXd& prices, int l, int s);

/// eps + kappa * (rho - eps). Callers bid only when rho > 0.
double successive_bid(double profit_value, double price, double kappa);

/// Mean of profit over all IRSs for operator s.
double average_profit(const ValuationTable& table, const Eigen::VectorXd& prices, int s);

/// Winner of IRS l is the lowest-index operator whose standing bid attains the
/// price; rows with no positive bid stay unallocated.
Allocation allocate_from_bids(const Eigen::MatrixXd& bids, const Eigen::VectorXd& prices);

/// Ascending auction: each round every operator targets its single
/// maximum-profit IRS among those it does not currently hold and bids
/// eps + kappa * (rho - eps). Stops when a round leaves the state unchanged
/// (which covers the all-profits-zero case) or at the round cap.
AuctionResult run_successive_advance(const ValuationTable& table, const SuccessiveOptions& options);

/// Multi-round auction: each round every operator bids rho - rho_bar on every
/// IRS whose profit exceeds its average profit. Stops when the allocation is
/// identical on two consecutive rounds or at the round cap.
AuctionResult run_simultaneous_multiround(const ValuationTable& table,
                                          const SimultaneousOptions& options = {});

}  // namespace irsim
