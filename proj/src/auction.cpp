#include "irsim/auction.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace irsim {

namespace {

void validate_table(const ValuationTable& table) {
  if (table.num_irs() < 1 || table.num_operators() < 1)
    throw std::invalid_argument("auction: valuation table must be at least 1x1");
  if (!table.nu.allFinite())
    throw std::invalid_argument("auction: valuations must be finite");
}

struct Proposal {
  int irs;
  int op;
  double bid;
};

/// Applies a round's proposals and recomputes prices and the provisional
/// allocation. With monotone prices, bids keep their historical maximum and
/// prices never decrease; otherwise bids are overwritten and prices recomputed.
void apply_round(AuctionState& st, const std::vector<Proposal>& proposals, bool monotone) {
  for (const Proposal& p : proposals) {
    if (monotone)
      st.bids(p.irs, p.op) = std::max(st.bids(p.irs, p.op), p.bid);
    else
      st.bids(p.irs, p.op) = p.bid;
  }
  for (int l = 0; l < st.bids.rows(); ++l) {
    const double row_max = st.bids.row(l).maxCoeff();
    st.prices(l) = monotone ? std::max(st.prices(l), row_max) : row_max;
  }
  st.allocation = allocate_from_bids(st.bids, st.prices);
}

bool state_equal(const AuctionState& a, const AuctionState& b) {
  return a.allocation == b.allocation && a.prices == b.prices && a.bids == b.bids;
}

}  // namespace

double profit(const ValuationTable& table, const Eigen::VectorXd& prices, int l, int s) {
  return std::max(table.nu(l, s) - prices(l), 0.0);
}

double successive_bid(double profit_value, double price, double kappa) {
  if (!(kappa > 0.0 && kappa < 1.0))
    throw std::invalid_argument("successive_bid: kappa must lie in (0, 1)");
  return price + kappa * (profit_value - price);
}

double average_profit(const ValuationTable& table, const Eigen::VectorXd& prices, int s) {
  double sum = 0.0;
  for (int l = 0; l < table.num_irs(); ++l) sum += profit(table, prices, l, s);
  return sum / table.num_irs();
}

Allocation allocate_from_bids(const Eigen::MatrixXd& bids, const Eigen::VectorXd& prices) {
  const int L = static_cast<int>(bids.rows());
  const int S = static_cast<int>(bids.cols());
  Allocation alloc = Allocation::unallocated(L, S);
  for (int l = 0; l < L; ++l) {
    if (!(prices(l) > 0.0)) continue;
    for (int s = 0; s < S; ++s) {
      if (bids(l, s) == prices(l)) {  // lowest operator index wins ties
        alloc.owner[l] = s;
        break;
      }
    }
  }
  return alloc;
}

AuctionResult run_successive_advance(const ValuationTable& table,
                                     const SuccessiveOptions& options) {
  validate_table(table);
  if (!(options.kappa > 0.0 && options.kappa < 1.0))
    throw std::invalid_argument("run_successive_advance: kappa must lie in (0, 1)");

  const int L = table.num_irs();
  const int S = table.num_operators();
  const int cap = options.max_rounds > 0 ? options.max_rounds : 10 * L * S;

  AuctionState st;
  st.prices = Eigen::VectorXd::Zero(L);
  st.bids = Eigen::MatrixXd::Zero(L, S);
  st.allocation = Allocation::unallocated(L, S);
  st.kappa = options.kappa;

  AuctionTrace trace;
  trace.valuation_oracle_calls = table.oracle_calls;

  for (int round = 1; round <= cap; ++round) {
    // All operators decide against the same start-of-round state.
    std::vector<Proposal> proposals;
    for (int s = 0; s < S; ++s) {
      int best_l = -1;
      double best_rho = 0.0;
      for (int l = 0; l < L; ++l) {
        if (st.allocation.owner[l] == s) continue;  // no re-bidding on held IRSs
        const double rho = profit(table, st.prices, l, s);
        ++trace.profit_evaluations;
        if (rho > best_rho) {  // strict: ties resolve to the lowest IRS index
          best_rho = rho;
          best_l = l;
        }
      }
      if (best_l >= 0 && best_rho > 0.0) {
        const double basis = options.bid_on_valuation_gap ? table.nu(best_l, s) : best_rho;
        proposals.push_back({best_l, s, successive_bid(basis, st.prices(best_l), options.kappa)});
      }
    }

    const AuctionState before = st;
    apply_round(st, proposals, options.monotone_prices);
    st.round = round;
    trace.rounds.push_back({st, static_cast<int>(proposals.size())});

    if (proposals.empty()) {
      trace.converged = true;
      trace.stop_reason = StopReason::no_bids;
      break;
    }
    // A round that changes nothing is a fixed point of the (deterministic)
    // round map: every later round would repeat it, so stop here.
    if (state_equal(st, before)) {
      trace.converged = true;
      trace.stop_reason = StopReason::fixed_point;
      break;
    }
  }

  return {st.allocation, std::move(trace)};
}

AuctionResult run_simultaneous_multiround(const ValuationTable& table,
                                          const SimultaneousOptions& options) {
  validate_table(table);
  if (options.max_rounds < 1)
    throw std::invalid_argument("run_simultaneous_multiround: max_rounds must be >= 1");

  const int L = table.num_irs();
  const int S = table.num_operators();

  AuctionState st;
  st.prices = Eigen::VectorXd::Zero(L);
  st.bids = Eigen::MatrixXd::Zero(L, S);
  st.allocation = Allocation::unallocated(L, S);

  AuctionTrace trace;
  trace.valuation_oracle_calls = table.oracle_calls;

  Allocation previous = st.allocation;
  for (int round = 1; round <= options.max_rounds; ++round) {
    std::vector<Proposal> proposals;
    for (int s = 0; s < S; ++s) {
      Eigen::VectorXd rho(L);
      for (int l = 0; l < L; ++l) {
        rho(l) = profit(table, st.prices, l, s);
        ++trace.profit_evaluations;
      }
      const double rho_bar = rho.mean();
      for (int l = 0; l < L; ++l)
        if (rho(l) > rho_bar) proposals.push_back({l, s, rho(l) - rho_bar});
    }

    apply_round(st, proposals, options.monotone_prices);
    st.round = round;
    trace.rounds.push_back({st, static_cast<int>(proposals.size())});

    if (st.allocation == previous) {
      trace.converged = true;
      trace.stop_reason = StopReason::allocation_converged;
      break;
    }
    previous = st.allocation;
  }

  return {st.allocation, std::move(trace)};
}

std::string AuctionTrace::to_jsonl() const {
  std::ostringstream out;
  for (const RoundRecord& rec : rounds) {
    nlohmann::json j;
    j["round"] = rec.state.round;
    j["prices"] = std::vector<double>(rec.state.prices.data(),
                                      rec.state.prices.data() + rec.state.prices.size());
    auto& bids = j["bids"] = nlohmann::json::array();
    for (int l = 0; l < rec.state.bids.rows(); ++l) {
      std::vector<double> row(rec.state.bids.cols());
      for (int s = 0; s < rec.state.bids.cols(); ++s) row[s] = rec.state.bids(l, s);
      bids.push_back(row);
    }
    j["allocation"] = rec.state.allocation.owner;
    j["bids_submitted"] = rec.bids_submitted;
    out << j.dump() << '\n';
  }
  return out.str();
}

}  // namespace irsim
