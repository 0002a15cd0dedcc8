// Command-line front end: run experiment sweeps to CSV, summarize row CSVs,
// and dump single-trial auction round logs.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "irsim/experiment.hpp"

namespace {

using namespace irsim;

ExperimentSpec resolve_spec(const std::string& spec_path, const std::string& preset) {
  if (!spec_path.empty()) return load_spec_file(spec_path);
  if (preset == "paper") return paper_experiment();
  return desk_experiment();
}

std::vector<Method> parse_methods(const std::string& csv) {
  std::vector<Method> methods;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) methods.push_back(method_from_string(item));
  }
  return methods;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << text;
}

int cmd_run(const std::string& spec_path, const std::string& preset, const std::string& out_path,
            std::uint64_t seed, bool seed_set, int trials, const std::string& methods_csv,
            const std::string& sweep_var, const std::string& values_csv, double kappa, int jobs) {
  ExperimentSpec spec = resolve_spec(spec_path, preset);
  if (seed_set) spec.root_seed = seed;
  if (trials > 0) spec.trials = trials;
  if (!methods_csv.empty()) spec.methods = parse_methods(methods_csv);
  if (!sweep_var.empty()) spec.sweep = sweep_variable_from_string(sweep_var);
  if (!values_csv.empty()) {
    spec.sweep_values.clear();
    std::stringstream ss(values_csv);
    std::string item;
    while (std::getline(ss, item, ','))
      if (!item.empty()) spec.sweep_values.push_back(std::stod(item));
  }
  if (kappa > 0.0) spec.kappa = kappa;
  spec.validate();

  const ExperimentResult result = run_experiment(spec, jobs);
  for (const std::string& w : result.warnings) std::cerr << "warning: " << w << '\n';

  std::ostringstream csv;
  write_rows_csv(csv, result.rows);
  write_text(out_path, csv.str());

  if (!out_path.empty() && out_path != "-") {
    std::filesystem::path manifest(out_path);
    manifest.replace_extension(".manifest.json");
    write_text(manifest.string(), manifest_json(spec) + "\n");
    std::cerr << "wrote " << result.rows.size() << " rows to " << out_path << " (manifest: "
              << manifest.string() << ")\n";
  }
  return 0;
}

int cmd_summarize(const std::string& in_path, const std::string& out_path) {
  std::ifstream in(in_path);
  if (!in) throw std::runtime_error("cannot open input file: " + in_path);
  const std::vector<ResultRow> rows = read_rows_csv(in);
  const std::vector<SummaryRow> summary = summarize(rows);
  std::ostringstream csv;
  write_summary_csv(csv, summary);
  write_text(out_path, csv.str());
  return 0;
}

int cmd_trace(const std::string& spec_path, const std::string& preset, const std::string& method,
              int trial, double value, std::uint64_t seed, bool seed_set, double kappa,
              const std::string& out_path) {
  ExperimentSpec spec = resolve_spec(spec_path, preset);
  if (seed_set) spec.root_seed = seed;
  if (kappa > 0.0) spec.kappa = kappa;
  spec.validate();

  int sweep_index = 0;
  if (value > 0.0) {
    const auto it = std::find(spec.sweep_values.begin(), spec.sweep_values.end(), value);
    if (it == spec.sweep_values.end())
      throw std::invalid_argument("trace: value is not one of the spec's sweep values");
    sweep_index = static_cast<int>(it - spec.sweep_values.begin());
  }
  const double sweep_value = spec.sweep_values[sweep_index];
  const NetworkConfig cfg = config_for_sweep_value(spec, sweep_value);

  const std::uint64_t ts = trial_seed(spec, sweep_index, trial);
  RngStream topo_rng = RngStream::derive(ts, Stream::topology);
  const Topology topo = generate_topology(cfg, topo_rng);
  RngStream chan_rng = RngStream::derive(ts, Stream::channels);
  const ChannelSet channels = generate_channels(cfg, topo, chan_rng);
  const ValuationTable table = compute_valuation_table(cfg, channels);

  const Method m = method_from_string(method);
  AuctionResult res;
  if (m == Method::successive) {
    SuccessiveOptions opts;
    opts.kappa = spec.sweep == SweepVariable::kappa ? sweep_value
                                                    : spec.resolved_kappa(cfg.num_operators);
    res = run_successive_advance(table, opts);
  } else if (m == Method::simultaneous) {
    res = run_simultaneous_multiround(table);
  } else {
    throw std::invalid_argument("trace: method must be successive or simultaneous");
  }

  write_text(out_path, res.trace.to_jsonl());
  const AllocationScore score = evaluate_allocation(cfg, channels, res.allocation);
  std::cerr << "trial " << trial << " " << method << ": rounds=" << res.trace.rounds.size()
            << " converged=" << (res.trace.converged ? "yes" : "no")
            << " total_gain=" << format_double(score.total_gain) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multi-operator reflecting-surface allocation simulator"};
  app.require_subcommand(1);

  std::string spec_path, preset = "desk", out_path = "-", methods_csv, sweep_var, values_csv;
  std::string in_path, method = "successive";
  std::uint64_t seed = 0;
  int trials = 0, trial = 0, jobs = 1;
  double kappa = 0.0, value = 0.0;

  auto* run = app.add_subcommand("run", "run an experiment and write per-trial rows as CSV");
  run->add_option("--spec", spec_path, "experiment spec JSON file");
  run->add_option("--preset", preset, "built-in spec: desk or paper")
      ->check(CLI::IsMember({"desk", "paper"}));
  run->add_option("--out", out_path, "output CSV path ('-' for stdout)");
  auto* seed_opt = run->add_option("--seed", seed, "root seed override");
  run->add_option("--trials", trials, "trial count override");
  run->add_option("--methods", methods_csv, "comma-separated method list");
  run->add_option("--sweep", sweep_var, "sweep variable: elements_per_irs, num_irs, kappa");
  run->add_option("--values", values_csv, "comma-separated sweep values");
  run->add_option("--kappa", kappa, "bidding coefficient override");
  run->add_option("--jobs", jobs, "worker threads (results identical for any value)");

  auto* summarize_cmd = app.add_subcommand("summarize", "aggregate a rows CSV into mean/stderr");
  summarize_cmd->add_option("--in", in_path, "rows CSV produced by run")->required();
  summarize_cmd->add_option("--out", out_path, "output CSV path ('-' for stdout)");

  auto* trace_cmd =
      app.add_subcommand("trace", "run one trial and dump the auction round log as JSON lines");
  trace_cmd->add_option("--spec", spec_path, "experiment spec JSON file");
  trace_cmd->add_option("--preset", preset, "built-in spec: desk or paper")
      ->check(CLI::IsMember({"desk", "paper"}));
  trace_cmd->add_option("--method", method, "successive or simultaneous");
  trace_cmd->add_option("--trial", trial, "trial index");
  trace_cmd->add_option("--value", value, "sweep value to trace (default: first)");
  auto* trace_seed_opt = trace_cmd->add_option("--seed", seed, "root seed override");
  trace_cmd->add_option("--kappa", kappa, "bidding coefficient override");
  trace_cmd->add_option("--out", out_path, "output path ('-' for stdout)");

  try {
    app.parse(argc, argv);
    if (run->parsed())
      return cmd_run(spec_path, preset, out_path, seed, seed_opt->count() > 0, trials, methods_csv,
                     sweep_var, values_csv, kappa, jobs);
    if (summarize_cmd->parsed()) return cmd_summarize(in_path, out_path);
    if (trace_cmd->parsed())
      return cmd_trace(spec_path, preset, method, trial, value, seed,
                       trace_seed_opt->count() > 0, kappa, out_path);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    std::cerr << "{\"error\": \"" << e.what() << "\"}\n";
    return e.get_exit_code();
  } catch (const std::exception& e) {
    std::cerr << "{\"error\": \"" << e.what() << "\"}\n";
    return 1;
  }
  return 0;
}
