#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>
#include <json.hpp>

#include "sdr/bounds.hpp"
#include "sdr/experiment.hpp"
#include "sdr/io.hpp"

using nlohmann::json;

namespace {

[[noreturn]] void die(const char* kind, const std::string& message) {
  std::cerr << json{{"error", kind}, {"message", message}}.dump() << "\n";
  std::exit(1);
}

long long node_budget_from_env() {
  const char* v = std::getenv("SDR_NODE_BUDGET");
  if (!v || !*v) return sdr::SearchOptions{}.node_budget;
  char* end = nullptr;
  long long b = std::strtoll(v, &end, 10);
  if (!end || *end || b < 1) die("bad-env", "SDR_NODE_BUDGET must be a positive integer");
  return b;
}

void emit_output(const std::string& out, const std::string& content) {
  if (out.empty())
    std::cout << content;
  else
    sdr::write_file(out, content);
}

std::map<std::string, long long> parse_params(const std::vector<std::string>& raw) {
  std::map<std::string, long long> params;
  for (const auto& kv : raw) {
    auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) die("bad-param", "expected key=value, got '" + kv + "'");
    try {
      params[kv.substr(0, eq)] = std::stoll(kv.substr(eq + 1));
    } catch (const std::exception&) {
      die("bad-param", "non-integer value in '" + kv + "'");
    }
  }
  return params;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"systems of disjoint representatives: generators, solvers, bounds"};
  app.require_subcommand(1);

  // gen
  std::string gen_family, gen_out;
  std::vector<std::string> gen_params;
  std::uint64_t gen_seed = 0;
  auto* gen = app.add_subcommand("gen", "generate an instance as JSON");
  gen->add_option("family", gen_family, "instance family")->required();
  gen->add_option("-p,--param", gen_params, "generator parameter key=value (repeatable)");
  gen->add_option("--seed", gen_seed, "random seed");
  gen->add_option("-o,--out", gen_out, "output file (default stdout)");

  // solve
  std::string solve_file, solve_algo, solve_out;
  bool solve_trace = false, solve_verify = false;
  auto* solve = app.add_subcommand("solve", "run an SDR algorithm on an instance file");
  solve->add_option("file", solve_file, "instance JSON file")->required();
  solve->add_option("-a,--algorithm", solve_algo,
                    "greedy | few-lines | two-sweep | pipeline | oracle | rainbow")
      ->required();
  solve->add_flag("--trace", solve_trace, "include a step-by-step trace in the result");
  solve->add_flag("--verify", solve_verify, "fail unless the result passes is_sdr");
  solve->add_option("-o,--out", solve_out, "output file (default stdout)");

  // bound
  std::string bound_kind;
  long long b_n = 0, b_k = 0, b_t = 1, b_m = 0;
  auto* bound = app.add_subcommand("bound", "evaluate the paper-scale bound formulas");
  bound->add_option("formula", bound_kind, "N | M | few-lines")->required();
  bound->add_option("--n", b_n, "target SDR size")->required();
  bound->add_option("--k", b_k, "number of direction groups");
  bound->add_option("--t", b_t, "pairwise crossing budget");
  bound->add_option("--m", b_m, "block size (few-lines)");

  // render
  std::string render_file, render_svg_path;
  auto* render = app.add_subcommand("render", "render an instance to SVG");
  render->add_option("file", render_file, "instance JSON file")->required();
  render->add_option("--svg", render_svg_path, "output SVG file")->required();

  // graph
  std::string graph_file, graph_dot;
  auto* graph = app.add_subcommand("graph", "export the intersection graph as DOT");
  graph->add_option("file", graph_file, "instance JSON file")->required();
  graph->add_option("--dot", graph_dot, "output DOT file")->required();

  // experiment
  std::string exp_spec_file, exp_out = "results";
  int exp_trials = 1;
  std::uint64_t exp_seed = 0;
  bool exp_no_timing = false;
  auto* experiment = app.add_subcommand("experiment", "run a seeded batch experiment");
  experiment->add_option("--spec", exp_spec_file, "experiment spec JSON file")->required();
  experiment->add_option("--trials", exp_trials, "trials per grid point");
  experiment->add_option("--seed", exp_seed, "master seed");
  experiment->add_option("--out", exp_out, "results directory");
  experiment->add_flag("--no-timing", exp_no_timing, "zero wall_time_ms for byte-stable CSVs");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      sdr::GenSpec spec;
      spec.family = sdr::gen_family_from_name(gen_family);
      spec.params = parse_params(gen_params);
      spec.seed = gen_seed;
      emit_output(gen_out, sdr::serialize_instance(sdr::gen_random_instance(spec)));
      return 0;
    }

    if (*solve) {
      sdr::Instance inst = sdr::parse_instance(sdr::read_file(solve_file));
      json trace = json::array();
      sdr::TraceSink sink = nullptr;
      if (solve_trace) sink = [&trace](const json& step) { trace.push_back(step); };
      sdr::SdrAssignment a =
          sdr::run_named_algorithm(inst, solve_algo, node_budget_from_env(), sink);
      json result = sdr::assignment_to_json(inst, a);
      if (solve_trace) result["trace"] = std::move(trace);
      emit_output(solve_out, result.dump(2) + "\n");
      bool verified = result["verified"].get<bool>();
      if (solve_verify && !verified) die("verify-failed", "result does not pass is_sdr");
      return a.size() >= inst.n && verified ? 0 : 2;
    }

    if (*bound) {
      json out;
      if (bound_kind == "N" || bound_kind == "M") {
        if (b_k < 1) die("bad-arg", "--k is required for N and M");
        sdr::BoundReport rep =
            bound_kind == "N" ? sdr::bound_N(b_n, b_k) : sdr::bound_M(b_n, b_k, b_t);
        out = json{{"formula", rep.formula_name},
                   {"exact_exponent", sdr::format_rational(rep.exact_exponent)},
                   {"integer_upper_bound", rep.integer_upper_bound.str()}};
      } else if (bound_kind == "few-lines") {
        if (b_m < 1) die("bad-arg", "--m is required for few-lines");
        out = json{{"formula", "m(n-m)+1"},
                   {"threshold", sdr::few_lines_threshold(b_n, b_m)}};
      } else {
        die("bad-arg", "unknown formula '" + bound_kind + "'");
      }
      std::cout << out.dump(2) << "\n";
      return 0;
    }

    if (*render) {
      sdr::Instance inst = sdr::parse_instance(sdr::read_file(render_file));
      sdr::write_file(render_svg_path, sdr::render_svg(inst));
      return 0;
    }

    if (*graph) {
      sdr::Instance inst = sdr::parse_instance(sdr::read_file(graph_file));
      sdr::write_file(graph_dot, sdr::to_dot(sdr::build_intersection_graph(inst)));
      return 0;
    }

    if (*experiment) {
      sdr::ExperimentSpec spec = sdr::parse_experiment_spec(sdr::read_file(exp_spec_file));
      sdr::ExperimentOptions opts;
      opts.trials = exp_trials;
      opts.seed = exp_seed;
      opts.node_budget = node_budget_from_env();
      opts.record_timing = !exp_no_timing;
      auto records = sdr::run_experiment(spec, opts);
      std::string csv_path = sdr::write_experiment_results(spec, opts, records, exp_out);
      std::cout << csv_path << "\n";
      return 0;
    }
  } catch (const sdr::ParseError& e) {
    die("parse", e.what());
  } catch (const sdr::PreconditionError& e) {
    die("precondition", e.what());
  } catch (const sdr::BudgetExceededError& e) {
    die("budget", e.what());
  } catch (const sdr::InternalInvariantError& e) {
    die("internal", e.what());
  } catch (const std::exception& e) {
    die("unexpected", e.what());
  }
  return 1;
}
