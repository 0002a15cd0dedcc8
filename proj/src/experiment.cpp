#include "irsim/experiment.hpp"

#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

namespace irsim {

using nlohmann::json;

std::string to_string(Method m) {
  switch (m) {
    case Method::successive: return "successive";
    case Method::simultaneous: return "simultaneous";
    case Method::exhaustive: return "exhaustive";
    case Method::random: return "random";
  }
  throw std::logic_error("unknown method");
}

Method method_from_string(const std::string& name) {
  if (name == "successive") return Method::successive;
  if (name == "simultaneous") return Method::simultaneous;
  if (name == "exhaustive") return Method::exhaustive;
  if (name == "random") return Method::random;
  throw std::invalid_argument("unknown method: " + name);
}

std::string to_string(SweepVariable v) {
  switch (v) {
    case SweepVariable::elements_per_irs: return "elements_per_irs";
    case SweepVariable::num_irs: return "num_irs";
    case SweepVariable::kappa: return "kappa";
  }
  throw std::logic_error("unknown sweep variable");
}

SweepVariable sweep_variable_from_string(const std::string& name) {
  if (name == "elements_per_irs") return SweepVariable::elements_per_irs;
  if (name == "num_irs") return SweepVariable::num_irs;
  if (name == "kappa") return SweepVariable::kappa;
  throw std::invalid_argument("unknown sweep variable: " + name);
}

void ExperimentSpec::validate() const {
  base.validate();
  if (sweep_values.empty())
    throw std::invalid_argument("ExperimentSpec: sweep_values must be non-empty");
  double prev = 0.0;
  for (double v : sweep_values) {
    if (!(v > 0.0)) throw std::invalid_argument("ExperimentSpec: sweep values must be positive");
    if (!(v > prev))
      throw std::invalid_argument("ExperimentSpec: sweep values must be strictly increasing");
    prev = v;
  }
  if (sweep == SweepVariable::kappa)
    for (double v : sweep_values)
      if (!(v < 1.0))
        throw std::invalid_argument("ExperimentSpec: kappa sweep values must lie in (0, 1)");
  if (methods.empty()) throw std::invalid_argument("ExperimentSpec: methods must be non-empty");
  if (trials < 1) throw std::invalid_argument("ExperimentSpec: trials must be >= 1");
  if (kappa != 0.0 && !(kappa > 0.0 && kappa < 1.0))
    throw std::invalid_argument("ExperimentSpec: kappa must lie in (0, 1) or be 0 for the default");
  if (exhaustive_budget < 1)
    throw std::invalid_argument("ExperimentSpec: exhaustive_budget must be >= 1");
}

double ExperimentSpec::resolved_kappa(int num_operators) const {
  if (kappa > 0.0) return kappa;
  return num_operators > 1 ? 1.0 / num_operators : 0.5;
}

ExperimentSpec desk_experiment() {
  ExperimentSpec spec;
  spec.base = desk_config();
  return spec;
}

ExperimentSpec paper_experiment() {
  ExperimentSpec spec;
  spec.base = paper_config();
  spec.sweep_values = {16, 32, 64};
  return spec;
}

NetworkConfig config_for_sweep_value(const ExperimentSpec& spec, double value) {
  NetworkConfig cfg = spec.base;
  switch (spec.sweep) {
    case SweepVariable::elements_per_irs:
      cfg.elements_per_irs = static_cast<int>(value);
      break;
    case SweepVariable::num_irs:
      cfg.num_irs = static_cast<int>(value);
      break;
    case SweepVariable::kappa:
      break;  // config unchanged, value feeds the auction
  }
  return cfg;
}

std::uint64_t trial_seed(const ExperimentSpec& spec, int sweep_index, int trial) {
  // Kappa values run against identical channels (paired comparison); other
  // sweeps get an independent stream per sweep point.
  const std::uint64_t point_tag =
      spec.sweep == SweepVariable::kappa ? 0 : static_cast<std::uint64_t>(sweep_index + 1);
  return derive_seed(spec.root_seed, 0x5eedULL, point_tag, static_cast<std::uint64_t>(trial));
}

namespace {

ResultRow warning_row(const ExperimentSpec& spec, Method method, double value) {
  ResultRow row;
  row.method = method;
  row.sweep = spec.sweep;
  row.sweep_value = value;
  row.trial = -1;
  row.total_gain = std::numeric_limits<double>::quiet_NaN();
  return row;
}

ResultRow run_cell(const ExperimentSpec& spec, const NetworkConfig& cfg, Method method,
                   double value, int trial, std::uint64_t seed, const ChannelSet& channels,
                   const ValuationTable& table) {
  ResultRow row;
  row.method = method;
  row.sweep = spec.sweep;
  row.sweep_value = value;
  row.trial = trial;
  row.seed = seed;

  const auto t0 = std::chrono::steady_clock::now();
  switch (method) {
    case Method::successive: {
      SuccessiveOptions opts;
      opts.kappa = spec.sweep == SweepVariable::kappa ? value
                                                      : spec.resolved_kappa(cfg.num_operators);
      const AuctionResult res = run_successive_advance(table, opts);
      const AllocationScore score = evaluate_allocation(cfg, channels, res.allocation);
      row.total_gain = score.total_gain;
      row.per_operator_gain = score.per_operator_gain;
      row.rounds = static_cast<int>(res.trace.rounds.size());
      row.oracle_calls = table.oracle_calls;
      break;
    }
    case Method::simultaneous: {
      const AuctionResult res = run_simultaneous_multiround(table);
      const AllocationScore score = evaluate_allocation(cfg, channels, res.allocation);
      row.total_gain = score.total_gain;
      row.per_operator_gain = score.per_operator_gain;
      row.rounds = static_cast<int>(res.trace.rounds.size());
      row.oracle_calls = table.oracle_calls;
      break;
    }
    case Method::exhaustive: {
      const ExhaustiveResult res = exhaustive_search(cfg, channels, spec.exhaustive_budget);
      row.total_gain = res.best.total_gain;
      row.per_operator_gain = res.best.per_operator_gain;
      row.oracle_calls = res.evaluations;
      break;
    }
    case Method::random: {
      RngStream rng = RngStream::derive(seed, Stream::random_allocation);
      const Allocation alloc = random_allocation(cfg, rng);
      const AllocationScore score = evaluate_allocation(cfg, channels, alloc);
      row.total_gain = score.total_gain;
      row.per_operator_gain = score.per_operator_gain;
      break;
    }
  }
  row.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return row;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentSpec& spec, int jobs) {
  spec.validate();
  ExperimentResult result;

  struct Point {
    NetworkConfig cfg;
    double value;
    int index;
    std::vector<Method> methods;  // feasible methods at this point
    std::size_t row_base;         // first trial row index in the output
  };

  std::vector<Point> points;
  std::size_t row_count = 0;
  std::vector<ResultRow> warning_rows;
  for (int vi = 0; vi < static_cast<int>(spec.sweep_values.size()); ++vi) {
    Point p;
    p.value = spec.sweep_values[vi];
    p.index = vi;
    p.cfg = config_for_sweep_value(spec, p.value);
    p.cfg.validate();
    for (Method m : spec.methods) {
      if (m == Method::exhaustive) {
        const double required =
            std::pow(static_cast<double>(p.cfg.num_operators), p.cfg.num_irs);
        if (required > static_cast<double>(spec.exhaustive_budget)) {
          warning_rows.push_back(warning_row(spec, m, p.value));
          result.warnings.push_back(
              "exhaustive skipped at " + to_string(spec.sweep) + "=" + format_double(p.value) +
              ": S^L = " + format_double(required) + " exceeds budget " +
              std::to_string(spec.exhaustive_budget));
          continue;
        }
      }
      p.methods.push_back(m);
    }
    p.row_base = row_count;
    row_count += static_cast<std::size_t>(spec.trials) * p.methods.size();
    points.push_back(std::move(p));
  }

  std::vector<ResultRow> rows(row_count);
  const bool needs_valuations = [&] {
    for (const Point& p : points)
      for (Method m : p.methods)
        if (m == Method::successive || m == Method::simultaneous) return true;
    return false;
  }();

  auto run_trial = [&](const Point& p, int trial) {
    const std::uint64_t seed = trial_seed(spec, p.index, trial);
    RngStream topo_rng = RngStream::derive(seed, Stream::topology);
    const Topology topo = generate_topology(p.cfg, topo_rng);
    RngStream chan_rng = RngStream::derive(seed, Stream::channels);
    const ChannelSet channels = generate_channels(p.cfg, topo, chan_rng);
    ValuationTable table;
    if (needs_valuations) table = compute_valuation_table(p.cfg, channels);
    for (std::size_t mi = 0; mi < p.methods.size(); ++mi) {
      const std::size_t slot = p.row_base + static_cast<std::size_t>(trial) * p.methods.size() + mi;
      rows[slot] = run_cell(spec, p.cfg, p.methods[mi], p.value, trial, seed, channels, table);
    }
  };

  // Flat (point, trial) task list; each task writes disjoint row slots, so
  // results are identical for any job count.
  std::vector<std::pair<int, int>> tasks;
  for (const Point& p : points)
    for (int t = 0; t < spec.trials; ++t) tasks.emplace_back(p.index, t);

  const int workers = std::max(1, jobs);
  if (workers == 1) {
    for (const auto& [pi, t] : tasks) run_trial(points[pi], t);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < tasks.size(); i = next.fetch_add(1))
          run_trial(points[tasks[i].first], tasks[i].second);
      });
    for (std::thread& th : pool) th.join();
  }

  // Warning rows first, then trial rows, grouped by sweep point.
  result.rows.reserve(warning_rows.size() + rows.size());
  for (const Point& p : points) {
    for (const ResultRow& w : warning_rows)
      if (w.sweep_value == p.value) result.rows.push_back(w);
    const std::size_t count = static_cast<std::size_t>(spec.trials) * p.methods.size();
    for (std::size_t i = 0; i < count; ++i) result.rows.push_back(std::move(rows[p.row_base + i]));
  }
  return result;
}

std::vector<SummaryRow> summarize(const std::vector<ResultRow>& rows) {
  std::map<std::pair<std::string, double>, std::vector<double>> groups;
  SweepVariable sweep = SweepVariable::elements_per_irs;
  for (const ResultRow& row : rows) {
    if (row.is_warning() || !std::isfinite(row.total_gain)) continue;
    sweep = row.sweep;
    groups[{to_string(row.method), row.sweep_value}].push_back(row.total_gain);
  }
  if (groups.empty()) throw std::invalid_argument("summarize: no usable rows");

  std::vector<SummaryRow> out;
  for (const auto& [key, gains] : groups) {
    SummaryRow s;
    s.method = method_from_string(key.first);
    s.sweep = sweep;
    s.sweep_value = key.second;
    s.trials = static_cast<int>(gains.size());
    double sum = 0.0;
    for (double g : gains) sum += g;
    s.mean_gain = sum / s.trials;
    if (s.trials > 1) {
      double ss = 0.0;
      for (double g : gains) ss += (g - s.mean_gain) * (g - s.mean_gain);
      s.stderr_gain = std::sqrt(ss / (s.trials - 1)) / std::sqrt(static_cast<double>(s.trials));
    }
    out.push_back(s);
  }
  return out;
}

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

void write_rows_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
  out << kRowsCsvHeader << '\n';
  for (const ResultRow& r : rows) {
    out << to_string(r.method) << ',' << to_string(r.sweep) << ',' << format_double(r.sweep_value)
        << ',' << r.trial << ',' << r.seed << ',' << format_double(r.total_gain) << ',' << r.rounds
        << ',' << r.oracle_calls << ',' << format_double(r.wall_ms) << '\n';
  }
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return fields;
}

double parse_double(const std::string& s) { return std::strtod(s.c_str(), nullptr); }

}  // namespace

std::vector<ResultRow> read_rows_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kRowsCsvHeader)
    throw std::invalid_argument("read_rows_csv: unexpected header");
  std::vector<ResultRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 9) throw std::invalid_argument("read_rows_csv: malformed line: " + line);
    ResultRow r;
    r.method = method_from_string(f[0]);
    r.sweep = sweep_variable_from_string(f[1]);
    r.sweep_value = parse_double(f[2]);
    r.trial = static_cast<int>(std::stol(f[3]));
    r.seed = std::stoull(f[4]);
    r.total_gain = parse_double(f[5]);
    r.rounds = static_cast<int>(std::stol(f[6]));
    r.oracle_calls = std::stoll(f[7]);
    r.wall_ms = parse_double(f[8]);
    rows.push_back(r);
  }
  return rows;
}

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows) {
  out << kSummaryCsvHeader << '\n';
  for (const SummaryRow& r : rows) {
    out << to_string(r.method) << ',' << to_string(r.sweep) << ',' << format_double(r.sweep_value)
        << ',' << r.trials << ',' << format_double(r.mean_gain) << ','
        << format_double(r.stderr_gain) << '\n';
  }
}

namespace {

json geometry_to_json(const GeometryParams& g) {
  return json{{"bs_ring_radius_m", g.bs_ring_radius_m},
              {"user_center_offset_m", g.user_center_offset_m},
              {"user_disk_radius_m", g.user_disk_radius_m},
              {"irs_ring_inner_m", g.irs_ring_inner_m},
              {"irs_ring_outer_m", g.irs_ring_outer_m}};
}

json network_to_json(const NetworkConfig& c) {
  return json{{"num_operators", c.num_operators},
              {"bs_per_operator", c.bs_per_operator},
              {"users_per_bs", c.users_per_bs},
              {"num_irs", c.num_irs},
              {"elements_per_irs", c.elements_per_irs},
              {"tx_antennas", c.tx_antennas},
              {"noise_power_dbm", c.noise_power_dbm},
              {"tx_power_dbw", c.tx_power_dbw},
              {"pathloss_ref_db", c.pathloss_ref_db},
              {"pathloss_ref_dist_m", c.pathloss_ref_dist_m},
              {"alpha_bs_irs", c.alpha_bs_irs},
              {"alpha_irs_user", c.alpha_irs_user},
              {"alpha_bs_user", c.alpha_bs_user},
              {"geometry", geometry_to_json(c.geometry)},
              {"seed", c.seed}};
}

template <typename T>
void maybe_get(const json& j, const char* key, T& into) {
  if (j.contains(key)) into = j.at(key).get<T>();
}

NetworkConfig network_from_json(const json& j, NetworkConfig base) {
  maybe_get(j, "num_operators", base.num_operators);
  maybe_get(j, "bs_per_operator", base.bs_per_operator);
  maybe_get(j, "users_per_bs", base.users_per_bs);
  maybe_get(j, "num_irs", base.num_irs);
  maybe_get(j, "elements_per_irs", base.elements_per_irs);
  maybe_get(j, "tx_antennas", base.tx_antennas);
  maybe_get(j, "noise_power_dbm", base.noise_power_dbm);
  maybe_get(j, "tx_power_dbw", base.tx_power_dbw);
  maybe_get(j, "pathloss_ref_db", base.pathloss_ref_db);
  maybe_get(j, "pathloss_ref_dist_m", base.pathloss_ref_dist_m);
  maybe_get(j, "alpha_bs_irs", base.alpha_bs_irs);
  maybe_get(j, "alpha_irs_user", base.alpha_irs_user);
  maybe_get(j, "alpha_bs_user", base.alpha_bs_user);
  maybe_get(j, "seed", base.seed);
  if (j.contains("geometry")) {
    const json& g = j.at("geometry");
    maybe_get(g, "bs_ring_radius_m", base.geometry.bs_ring_radius_m);
    maybe_get(g, "user_center_offset_m", base.geometry.user_center_offset_m);
    maybe_get(g, "user_disk_radius_m", base.geometry.user_disk_radius_m);
    maybe_get(g, "irs_ring_inner_m", base.geometry.irs_ring_inner_m);
    maybe_get(g, "irs_ring_outer_m", base.geometry.irs_ring_outer_m);
  }
  return base;
}

}  // namespace

std::string spec_to_json(const ExperimentSpec& spec) {
  json j;
  j["network"] = network_to_json(spec.base);
  j["sweep"] = json{{"variable", to_string(spec.sweep)}, {"values", spec.sweep_values}};
  std::vector<std::string> methods;
  for (Method m : spec.methods) methods.push_back(to_string(m));
  j["methods"] = methods;
  j["trials"] = spec.trials;
  j["seed"] = spec.root_seed;
  j["kappa"] = spec.kappa;
  j["exhaustive_budget"] = spec.exhaustive_budget;
  return j.dump(2);
}

ExperimentSpec spec_from_json(const std::string& text) {
  const json j = json::parse(text);
  ExperimentSpec spec;
  if (j.contains("network")) spec.base = network_from_json(j.at("network"), spec.base);
  if (j.contains("sweep")) {
    const json& sw = j.at("sweep");
    if (sw.contains("variable"))
      spec.sweep = sweep_variable_from_string(sw.at("variable").get<std::string>());
    if (sw.contains("values")) spec.sweep_values = sw.at("values").get<std::vector<double>>();
  }
  if (j.contains("methods")) {
    spec.methods.clear();
    for (const auto& name : j.at("methods")) spec.methods.push_back(method_from_string(name));
  }
  maybe_get(j, "trials", spec.trials);
  maybe_get(j, "seed", spec.root_seed);
  maybe_get(j, "kappa", spec.kappa);
  maybe_get(j, "exhaustive_budget", spec.exhaustive_budget);
  spec.validate();
  return spec;
}

ExperimentSpec load_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open spec file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return spec_from_json(buf.str());
}

std::string manifest_json(const ExperimentSpec& spec) {
  json j = json::parse(spec_to_json(spec));
  std::vector<std::string> columns;
  for (const std::string& col : split_csv_line(kRowsCsvHeader)) columns.push_back(col);
  j["csv_columns"] = columns;
  return j.dump(2);
}

}  // namespace irsim
