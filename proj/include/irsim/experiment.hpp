#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "irsim/baselines.hpp"

namespace irsim {

enum class Method { successive, simultaneous, exhaustive, random };
enum class SweepVariable { elements_per_irs, num_irs, kappa };

std::string to_string(Method m);
Method method_from_string(const std::string& name);
std::string to_string(SweepVariable v);
SweepVariable sweep_variable_from_string(const std::string& name);

struct ExperimentSpec {
  NetworkConfig base{};
  SweepVariable sweep = SweepVariable::elements_per_irs;
  std::vector<double> sweep_values{8, 16, 32};
  std::vector<Method> methods{Method::successive, Method::simultaneous, Method::exhaustive,
                              Method::random};
  int trials = 200;
  std::uint64_t root_seed = 1;
  double kappa = 0.0;  // 0 selects the default (1/S, or 0.5 when S == 1)
  std::int64_t exhaustive_budget = 100000;

  void validate() const;  // throws std::invalid_argument
  double resolved_kappa(int num_operators) const;
};

/// Ready-made specs matching the two config presets.
ExperimentSpec desk_experiment();
ExperimentSpec paper_experiment();

/// One CSV row. Warning rows (a method skipped for a sweep value) carry
/// trial = -1 and NaN gain and are ignored by summaries.
struct ResultRow {
  Method method = Method::random;
  SweepVariable sweep = SweepVariable::elements_per_irs;
  double sweep_value = 0.0;
  int trial = 0;
  std::uint64_t seed = 0;
  double total_gain = 0.0;
  std::vector<double> per_operator_gain;
  int rounds = 0;
  std::int64_t oracle_calls = 0;
  double wall_ms = 0.0;

  bool is_warning() const { return trial < 0; }
};

struct ExperimentResult {
  std::vector<ResultRow> rows;
  std::vector<std::string> warnings;
};

/// Trial seed for one sweep point; the kappa sweep shares channel draws
/// across its values (the network config is identical there).
std::uint64_t trial_seed(const ExperimentSpec& spec, int sweep_index, int trial);

/// Network config for one sweep point.
NetworkConfig config_for_sweep_value(const ExperimentSpec& spec, double value);

/// Runs every (sweep value, trial, method) cell. Deterministic per
/// (spec, trial) for all gain fields regardless of `jobs`; only wall_ms
/// varies between runs.
ExperimentResult run_experiment(const ExperimentSpec& spec, int jobs = 1);

struct SummaryRow {
  Method method = Method::random;
  SweepVariable sweep = SweepVariable::elements_per_irs;
  double sweep_value = 0.0;
  int trials = 0;
  double mean_gain = 0.0;
  double stderr_gain = 0.0;  // sample stddev / sqrt(trials); 0 for a single row
};

/// Per-(method, sweep value) mean and standard error of total gain.
/// Throws std::invalid_argument when no usable rows are present.
std::vector<SummaryRow> summarize(const std::vector<ResultRow>& rows);

// --- persistence -----------------------------------------------------------

inline constexpr const char* kRowsCsvHeader =
    "method,sweep_var,sweep_value,trial,seed,total_gain,rounds,oracle_calls,wall_ms";
inline constexpr const char* kSummaryCsvHeader =
    "method,sweep_var,sweep_value,trials,mean_gain,stderr_gain";

/// Shortest round-trip decimal form (std::to_chars general format).
std::string format_double(double value);

void write_rows_csv(std::ostream& out, const std::vector<ResultRow>& rows);
std::vector<ResultRow> read_rows_csv(std::istream& in);
void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows);

std::string spec_to_json(const ExperimentSpec& spec);
ExperimentSpec spec_from_json(const std::string& text);
ExperimentSpec load_spec_file(const std::string& path);

/// Resolved spec plus provenance, written next to every run CSV.
std::string manifest_json(const ExperimentSpec& spec);

}  // namespace irsim
