#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sdr/algorithms.hpp"
#include "sdr/generators.hpp"

namespace sdr {

// Dispatches by name: greedy | few-lines | two-sweep | pipeline | oracle |
// rainbow. Oracle and rainbow may return fewer than n representatives; the
// constructive algorithms throw on hypothesis violations.
SdrAssignment run_named_algorithm(const Instance& inst, const std::string& name,
                                  long long node_budget, const TraceSink& trace = nullptr);

struct ExperimentSpec {
  std::string name;
  std::string algorithm;
  GenFamily family = GenFamily::random_segments;
  std::vector<std::map<std::string, long long>> points;  // parameter grid
  bool run_oracle = true;
};

// Parses {"name", "algorithm", "family", "points":[{param:value,...},...],
// "oracle"?: bool}; throws ParseError on schema violations.
ExperimentSpec parse_experiment_spec(const std::string& document);

struct ExperimentRecord {
  GenSpec spec;
  std::string algorithm;
  int n = 0;
  int sdr_size = -1;
  int oracle_size = -1;
  bool agreement = false;
  long long wall_time_ms = 0;
  long long node_count = 0;
  std::string status = "ok";  // ok | budget | error:<what>
};

struct ExperimentOptions {
  int trials = 1;
  std::uint64_t seed = 0;
  long long node_budget = 100000000;
  bool record_timing = true;  // off -> wall_time_ms fixed at 0 for byte-stable output
};

// One record per (grid point, trial), in grid-then-trial order; deterministic
// given the master seed (trial seeds are derived, so order never depends on
// execution interleaving). Oracle budget exhaustion is recorded per row.
std::vector<ExperimentRecord> run_experiment(const ExperimentSpec& spec,
                                             const ExperimentOptions& opts);

std::string experiment_csv(const std::vector<ExperimentRecord>& records);

// Writes results/<name>/<timestamp>.csv plus <timestamp>.manifest.json under
// `out_dir` and returns the CSV path.
std::string write_experiment_results(const ExperimentSpec& spec, const ExperimentOptions& opts,
                                     const std::vector<ExperimentRecord>& records,
                                     const std::string& out_dir);

}  // namespace sdr
