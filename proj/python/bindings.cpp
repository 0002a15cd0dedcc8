#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "irsim/experiment.hpp"

namespace py = pybind11;
using namespace irsim;

namespace {

Topology py_generate_topology(const NetworkConfig& cfg, std::optional<std::uint64_t> seed) {
  RngStream rng = RngStream::derive(seed.value_or(cfg.seed), Stream::topology);
  return generate_topology(cfg, rng);
}

ChannelSet py_generate_channels(const NetworkConfig& cfg, const Topology& topo,
                                std::optional<std::uint64_t> seed) {
  RngStream rng = RngStream::derive(seed.value_or(cfg.seed), Stream::channels);
  return generate_channels(cfg, topo, rng);
}

Allocation py_random_allocation(const NetworkConfig& cfg, std::optional<std::uint64_t> seed) {
  RngStream rng = RngStream::derive(seed.value_or(cfg.seed), Stream::random_allocation);
  return random_allocation(cfg, rng);
}

ValuationTable table_from_matrix(const Eigen::MatrixXd& nu) {
  return ValuationTable{nu, static_cast<std::int64_t>(nu.size())};
}

std::string rows_csv(const std::vector<ResultRow>& rows) {
  std::ostringstream out;
  write_rows_csv(out, rows);
  return out.str();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Auction-based allocation of reflecting surfaces across non-cooperative "
            "cellular operators: channel simulation, valuation, auctions, baselines.";

  py::class_<GeometryParams>(m, "GeometryParams")
      .def(py::init<>())
      .def_readwrite("bs_ring_radius_m", &GeometryParams::bs_ring_radius_m)
      .def_readwrite("user_center_offset_m", &GeometryParams::user_center_offset_m)
      .def_readwrite("user_disk_radius_m", &GeometryParams::user_disk_radius_m)
      .def_readwrite("irs_ring_inner_m", &GeometryParams::irs_ring_inner_m)
      .def_readwrite("irs_ring_outer_m", &GeometryParams::irs_ring_outer_m);

  py::class_<NetworkConfig>(m, "NetworkConfig")
      .def(py::init<>())
      .def_readwrite("num_operators", &NetworkConfig::num_operators)
      .def_readwrite("bs_per_operator", &NetworkConfig::bs_per_operator)
      .def_readwrite("users_per_bs", &NetworkConfig::users_per_bs)
      .def_readwrite("num_irs", &NetworkConfig::num_irs)
      .def_readwrite("elements_per_irs", &NetworkConfig::elements_per_irs)
      .def_readwrite("tx_antennas", &NetworkConfig::tx_antennas)
      .def_readwrite("noise_power_dbm", &NetworkConfig::noise_power_dbm)
      .def_readwrite("tx_power_dbw", &NetworkConfig::tx_power_dbw)
      .def_readwrite("pathloss_ref_db", &NetworkConfig::pathloss_ref_db)
      .def_readwrite("pathloss_ref_dist_m", &NetworkConfig::pathloss_ref_dist_m)
      .def_readwrite("alpha_bs_irs", &NetworkConfig::alpha_bs_irs)
      .def_readwrite("alpha_irs_user", &NetworkConfig::alpha_irs_user)
      .def_readwrite("alpha_bs_user", &NetworkConfig::alpha_bs_user)
      .def_readwrite("geometry", &NetworkConfig::geometry)
      .def_readwrite("seed", &NetworkConfig::seed)
      .def("total_bs", &NetworkConfig::total_bs)
      .def("noise_power_w", &NetworkConfig::noise_power_w)
      .def("tx_power_w", &NetworkConfig::tx_power_w)
      .def("validate", &NetworkConfig::validate);

  m.def("desk_config", &desk_config);
  m.def("paper_config", &paper_config);

  py::class_<Topology>(m, "Topology")
      .def_readonly("bs_positions", &Topology::bs_positions)
      .def_readonly("user_positions", &Topology::user_positions)
      .def_readonly("irs_positions", &Topology::irs_positions)
      .def_readonly("cluster_centers", &Topology::cluster_centers);

  py::class_<ChannelSet>(m, "ChannelSet")
      .def_readonly("num_irs", &ChannelSet::num_irs)
      .def_readonly("elements_per_irs", &ChannelSet::elements_per_irs)
      .def_readonly("tx_antennas", &ChannelSet::tx_antennas)
      .def("total_bs", &ChannelSet::total_bs)
      .def("irs_user", &ChannelSet::irs_user, py::arg("irs"), py::arg("global_bs"),
           py::arg("user"))
      .def("bs_irs", &ChannelSet::bs_irs, py::arg("irs"), py::arg("global_bs"))
      .def("bs_user", &ChannelSet::bs_user, py::arg("global_bs"), py::arg("user"));

  py::class_<PhaseShiftVector>(m, "PhaseShiftVector")
      .def_readonly("theta", &PhaseShiftVector::theta)
      .def_readonly("tunable", &PhaseShiftVector::tunable);

  py::class_<Beamformer>(m, "Beamformer")
      .def_readonly("w", &Beamformer::w)
      .def_readonly("regularized", &Beamformer::regularized);

  py::class_<RatePoint>(m, "RatePoint")
      .def_readonly("sinr", &RatePoint::sinr)
      .def_readonly("rate", &RatePoint::rate)
      .def_readonly("sum_rate", &RatePoint::sum_rate);

  py::class_<ValuationTable>(m, "ValuationTable")
      .def(py::init(&table_from_matrix), py::arg("nu"))
      .def_readonly("nu", &ValuationTable::nu)
      .def_readonly("oracle_calls", &ValuationTable::oracle_calls)
      .def("num_irs", &ValuationTable::num_irs)
      .def("num_operators", &ValuationTable::num_operators);

  py::class_<Allocation>(m, "Allocation")
      .def_readonly("owner", &Allocation::owner)
      .def_readonly("num_operators", &Allocation::num_operators)
      .def("num_irs", &Allocation::num_irs)
      .def("tunable_for", &Allocation::tunable_for, py::arg("op"))
      .def("matrix", &Allocation::matrix)
      .def("__eq__", [](const Allocation& a, const Allocation& b) { return a == b; });

  py::class_<AuctionTrace>(m, "AuctionTrace")
      .def_property_readonly("rounds", [](const AuctionTrace& t) { return t.rounds.size(); })
      .def_readonly("valuation_oracle_calls", &AuctionTrace::valuation_oracle_calls)
      .def_readonly("profit_evaluations", &AuctionTrace::profit_evaluations)
      .def_readonly("converged", &AuctionTrace::converged)
      .def("to_jsonl", &AuctionTrace::to_jsonl);

  py::class_<AuctionResult>(m, "AuctionResult")
      .def_readonly("allocation", &AuctionResult::allocation)
      .def_readonly("trace", &AuctionResult::trace);

  py::class_<AllocationScore>(m, "AllocationScore")
      .def_readonly("allocation", &AllocationScore::allocation)
      .def_readonly("total_gain", &AllocationScore::total_gain)
      .def_readonly("per_operator_gain", &AllocationScore::per_operator_gain);

  py::class_<ExhaustiveResult>(m, "ExhaustiveResult")
      .def_readonly("best", &ExhaustiveResult::best)
      .def_readonly("evaluations", &ExhaustiveResult::evaluations);

  m.def("path_loss_linear", &path_loss_linear, py::arg("distance_m"), py::arg("alpha"),
        py::arg("config"));
  m.def("generate_topology", &py_generate_topology, py::arg("config"),
        py::arg("seed") = py::none());
  m.def("generate_channels", &py_generate_channels, py::arg("config"), py::arg("topology"),
        py::arg("seed") = py::none());

  m.def("design_beamformer_zf", &design_beamformer_zf, py::arg("user_channels"),
        py::arg("power_budget_w"));
  m.def("design_phases_local", &design_phases_local, py::arg("config"), py::arg("channels"),
        py::arg("op"), py::arg("irs"));
  m.def("operator_rates", &operator_rates, py::arg("config"), py::arg("channels"),
        py::arg("thetas"), py::arg("op"));
  m.def("sum_rate_gain", &sum_rate_gain, py::arg("config"), py::arg("channels"),
        py::arg("tunable"), py::arg("op"));
  m.def("valuation", &valuation, py::arg("config"), py::arg("channels"), py::arg("irs"),
        py::arg("op"));
  m.def("compute_valuation_table", &compute_valuation_table, py::arg("config"),
        py::arg("channels"));

  m.def(
      "run_successive_advance",
      [](const ValuationTable& table, double kappa, int max_rounds, bool monotone_prices) {
        SuccessiveOptions opts;
        opts.kappa = kappa;
        opts.max_rounds = max_rounds;
        opts.monotone_prices = monotone_prices;
        return run_successive_advance(table, opts);
      },
      py::arg("table"), py::arg("kappa") = 0.5, py::arg("max_rounds") = 0,
      py::arg("monotone_prices") = true);
  m.def(
      "run_simultaneous_multiround",
      [](const ValuationTable& table, int max_rounds) {
        SimultaneousOptions opts;
        opts.max_rounds = max_rounds;
        return run_simultaneous_multiround(table, opts);
      },
      py::arg("table"), py::arg("max_rounds") = 100);

  m.def("evaluate_allocation", &evaluate_allocation, py::arg("config"), py::arg("channels"),
        py::arg("allocation"));
  m.def("exhaustive_search", &exhaustive_search, py::arg("config"), py::arg("channels"),
        py::arg("budget") = 100000);
  m.def("random_allocation", &py_random_allocation, py::arg("config"),
        py::arg("seed") = py::none());

  py::enum_<Method>(m, "Method")
      .value("successive", Method::successive)
      .value("simultaneous", Method::simultaneous)
      .value("exhaustive", Method::exhaustive)
      .value("random", Method::random);

  py::enum_<SweepVariable>(m, "SweepVariable")
      .value("elements_per_irs", SweepVariable::elements_per_irs)
      .value("num_irs", SweepVariable::num_irs)
      .value("kappa", SweepVariable::kappa);

  py::class_<ExperimentSpec>(m, "ExperimentSpec")
      .def(py::init<>())
      .def_readwrite("base", &ExperimentSpec::base)
      .def_readwrite("sweep", &ExperimentSpec::sweep)
      .def_readwrite("sweep_values", &ExperimentSpec::sweep_values)
      .def_readwrite("methods", &ExperimentSpec::methods)
      .def_readwrite("trials", &ExperimentSpec::trials)
      .def_readwrite("root_seed", &ExperimentSpec::root_seed)
      .def_readwrite("kappa", &ExperimentSpec::kappa)
      .def_readwrite("exhaustive_budget", &ExperimentSpec::exhaustive_budget)
      .def("validate", &ExperimentSpec::validate);

  m.def("desk_experiment", &desk_experiment);
  m.def("paper_experiment", &paper_experiment);

  py::class_<ResultRow>(m, "ResultRow")
      .def_readonly("method", &ResultRow::method)
      .def_readonly("sweep", &ResultRow::sweep)
      .def_readonly("sweep_value", &ResultRow::sweep_value)
      .def_readonly("trial", &ResultRow::trial)
      .def_readonly("seed", &ResultRow::seed)
      .def_readonly("total_gain", &ResultRow::total_gain)
      .def_readonly("per_operator_gain", &ResultRow::per_operator_gain)
      .def_readonly("rounds", &ResultRow::rounds)
      .def_readonly("oracle_calls", &ResultRow::oracle_calls)
      .def_readonly("wall_ms", &ResultRow::wall_ms)
      .def("is_warning", &ResultRow::is_warning);

  py::class_<ExperimentResult>(m, "ExperimentResult")
      .def_readonly("rows", &ExperimentResult::rows)
      .def_readonly("warnings", &ExperimentResult::warnings);

  py::class_<SummaryRow>(m, "SummaryRow")
      .def_readonly("method", &SummaryRow::method)
      .def_readonly("sweep", &SummaryRow::sweep)
      .def_readonly("sweep_value", &SummaryRow::sweep_value)
      .def_readonly("trials", &SummaryRow::trials)
      .def_readonly("mean_gain", &SummaryRow::mean_gain)
      .def_readonly("stderr_gain", &SummaryRow::stderr_gain);

  m.def("run_experiment", &run_experiment, py::arg("spec"), py::arg("jobs") = 1);
  m.def("summarize", &summarize, py::arg("rows"));
  m.def("rows_csv", &rows_csv, py::arg("rows"));
  m.def("spec_to_json", &spec_to_json, py::arg("spec"));
  m.def("spec_from_json", &spec_from_json, py::arg("text"));
  m.def("load_spec_file", &load_spec_file, py::arg("path"));
}
