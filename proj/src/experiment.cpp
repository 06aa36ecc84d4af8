#include "sdr/experiment.hpp"

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "sdr/errors.hpp"
#include "sdr/io.hpp"

namespace sdr {

using nlohmann::json;

SdrAssignment run_named_algorithm(const Instance& inst, const std::string& name,
                                  long long node_budget, const TraceSink& trace) {
  if (name == "greedy") return greedy_disjoint_curves(inst, trace);
  if (name == "few-lines") {
    int m = inst.effective_block_size();
    return potential_ascent_few_lines(inst, m, trace);
  }
  if (name == "two-sweep") return two_sweep_hv(inst, trace);
  if (name == "pipeline") return solve_bounded_directions(inst, trace);
  if (name == "oracle") {
    SearchOptions opts;
    opts.node_budget = node_budget;
    return max_sdr_bruteforce(inst, opts).witness;
  }
  if (name == "rainbow") {
    auto g = build_intersection_graph(inst);
    SearchOptions opts;
    opts.node_budget = node_budget;
    auto got = rainbow_independent_set(g, inst.blocks, inst.n, opts);
    return got ? *got : SdrAssignment{};
  }
  throw PreconditionError("unknown algorithm '" + name + "'");
}

ExperimentSpec parse_experiment_spec(const std::string& document) {
  json j;
  try {
    j = json::parse(document);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("$: expected an object");
  ExperimentSpec spec;
  auto str = [&](const char* key) {
    if (!j.contains(key) || !j[key].is_string())
      throw ParseError(std::string("$.") + key + ": expected a string");
    return j[key].get<std::string>();
  };
  spec.name = str("name");
  spec.algorithm = str("algorithm");
  spec.family = gen_family_from_name(str("family"));
  if (!j.contains("points") || !j["points"].is_array() || j["points"].empty())
    throw ParseError("$.points: expected a nonempty array");
  for (size_t i = 0; i < j["points"].size(); ++i) {
    const json& pt = j["points"][i];
    if (!pt.is_object()) throw ParseError("$.points[" + std::to_string(i) + "]: expected an object");
    std::map<std::string, long long> params;
    for (auto it = pt.begin(); it != pt.end(); ++it) {
      if (!it.value().is_number_integer())
        throw ParseError("$.points[" + std::to_string(i) + "]." + it.key() +
                         ": expected an integer");
      params[it.key()] = it.value().get<long long>();
    }
    spec.points.push_back(std::move(params));
  }
  if (j.contains("oracle")) {
    if (!j["oracle"].is_boolean()) throw ParseError("$.oracle: expected a boolean");
    spec.run_oracle = j["oracle"].get<bool>();
  }
  return spec;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

std::vector<ExperimentRecord> run_experiment(const ExperimentSpec& spec,
                                             const ExperimentOptions& opts) {
  if (opts.trials < 1) throw PreconditionError("trials must be >= 1");
  std::vector<ExperimentRecord> out;
  for (size_t pi = 0; pi < spec.points.size(); ++pi) {
    for (int trial = 0; trial < opts.trials; ++trial) {
      ExperimentRecord rec;
      rec.algorithm = spec.algorithm;
      rec.spec.family = spec.family;
      rec.spec.params = spec.points[pi];
      rec.spec.seed =
          splitmix64(opts.seed ^ splitmix64(pi * 7919ULL + static_cast<std::uint64_t>(trial)));
      auto t0 = std::chrono::steady_clock::now();
      try {
        Instance inst = gen_random_instance(rec.spec);
        rec.n = inst.n;
        SdrAssignment a = run_named_algorithm(inst, spec.algorithm, opts.node_budget);
        rec.sdr_size = a.size();
        bool verified = is_sdr(inst, a);
        if (spec.run_oracle || spec.algorithm == "oracle") {
          try {
            SearchOptions so;
            so.node_budget = opts.node_budget;
            SearchResult sr = max_sdr_bruteforce(inst, so);
            rec.oracle_size = sr.size;
            rec.node_count = sr.nodes;
          } catch (const BudgetExceededError&) {
            rec.status = "budget";
          }
        }
        bool guarantee = spec.algorithm == "oracle" || spec.algorithm == "rainbow"
                             ? (rec.oracle_size < 0 || rec.sdr_size == rec.oracle_size ||
                                (spec.algorithm == "rainbow" && rec.oracle_size < inst.n))
                             : rec.sdr_size >= inst.n;
        rec.agreement = verified && guarantee && rec.status == "ok";
      } catch (const BudgetExceededError&) {
        rec.status = "budget";
      } catch (const std::exception& e) {
        rec.status = std::string("error:") + e.what();
      }
      auto t1 = std::chrono::steady_clock::now();
      if (opts.record_timing)
        rec.wall_time_ms =
            std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
      out.push_back(std::move(rec));
    }
  }
  return out;
}

std::string experiment_csv(const std::vector<ExperimentRecord>& records) {
  std::ostringstream csv;
  csv << "family,params,seed,algorithm,n,sdr_size,oracle_size,agreement,wall_time_ms,"
         "node_count,status\n";
  for (const auto& r : records) {
    std::string params;
    for (const auto& [k, v] : r.spec.params) {
      if (!params.empty()) params += ";";
      params += k + "=" + std::to_string(v);
    }
    std::string status = r.status;
    for (auto& c : status)
      if (c == ',' || c == '\n') c = ' ';
    csv << gen_family_name(r.spec.family) << "," << params << "," << r.spec.seed << ","
        << r.algorithm << "," << r.n << "," << r.sdr_size << "," << r.oracle_size << ","
        << (r.agreement ? "true" : "false") << "," << r.wall_time_ms << "," << r.node_count
        << "," << status << "\n";
  }
  return csv.str();
}

std::string write_experiment_results(const ExperimentSpec& spec, const ExperimentOptions& opts,
                                     const std::vector<ExperimentRecord>& records,
                                     const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::path dir = fs::path(out_dir) / spec.name;
  fs::create_directories(dir);

  auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y%m%d-%H%M%S", &tm);

  fs::path csv_path = dir / (std::string(stamp) + ".csv");
  write_file(csv_path.string(), experiment_csv(records));

  json points = json::array();
  for (const auto& pt : spec.points) points.push_back(pt);
  json manifest{{"name", spec.name},
                {"algorithm", spec.algorithm},
                {"family", gen_family_name(spec.family)},
                {"points", std::move(points)},
                {"oracle", spec.run_oracle},
                {"trials", opts.trials},
                {"seed", opts.seed},
                {"node_budget", opts.node_budget},
                {"csv", csv_path.filename().string()}};
  write_file((dir / (std::string(stamp) + ".manifest.json")).string(),
             manifest.dump(2) + "\n");
  return csv_path.string();
}

}  // namespace sdr
