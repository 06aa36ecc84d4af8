#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include "sdr/experiment.hpp"
#include "sdr/io.hpp"

using namespace sdr;
using nlohmann::json;

namespace {

Instance gen(GenFamily family, std::map<std::string, long long> params, std::uint64_t seed = 1) {
  GenSpec spec;
  spec.family = family;
  spec.params = std::move(params);
  spec.seed = seed;
  return gen_random_instance(spec);
}

}  // namespace

TEST_CASE("instance JSON round trips for every context") {
  std::vector<Instance> samples = {
      gen(GenFamily::random_segments, {{"n", 3}}, 2),
      gen(GenFamily::random_hv, {{"n", 3}}, 2),
      gen(GenFamily::random_few_lines, {{"n", 4}, {"m", 2}}, 2),
      gen(GenFamily::random_curves, {{"n", 2}, {"blocks", 12}}, 2),
      gen(GenFamily::cycle_power, {{"n", 3}, {"q", 2}}, 2),
  };
  for (size_t i = 0; i < samples.size(); ++i) {
    CAPTURE(i);
    std::string once = serialize_instance(samples[i]);
    std::string twice = serialize_instance(parse_instance(once));
    REQUIRE(once == twice);
  }
}

TEST_CASE("parsing normalizes rationals") {
  std::string doc = R"({
    "version": 1, "n": 1,
    "context": {"kind": "directions", "directions": [[1, 0]]},
    "members": [{"id": "a", "kind": "segment", "anchor": ["0", "0.5"],
                 "dir": [2, 0], "t_lo": "3/6", "t_hi": "2"}],
    "blocks": [{"label": "A", "member_ids": ["a"]}]
  })";
  Instance inst = parse_instance(doc);
  const auto& s = std::get<Segment>(inst.member("a").payload);
  CHECK(s.t_lo == Rat(1, 2));
  CHECK(s.anchor.y == Rat(1, 2));
  CHECK(s.dir == Direction{1, 0});  // direction reduced to primitive form
}

TEST_CASE("minimal abstract instance with a string context") {
  Instance inst = parse_instance(
      R"({"version":1,"n":1,"context":"graph",
          "members":[{"id":"v0","kind":"vertex"}],
          "blocks":[{"label":"A","member_ids":["v0"]}]})");
  CHECK(inst.kind == ContextKind::Graph);
  CHECK(inst.blocks.size() == 1);
}

TEST_CASE("parse errors are path-addressed and validation is enforced") {
  CHECK_THROWS_WITH_AS(parse_instance("{"), doctest::Contains("invalid JSON"), ParseError);
  CHECK_THROWS_WITH_AS(parse_instance(R"({"version":2,"n":1,"context":"graph","members":[],"blocks":[]})"),
                       doctest::Contains("$.version"), ParseError);
  CHECK_THROWS_WITH_AS(
      parse_instance(R"({"version":1,"n":1,"context":"graph",
                         "members":[{"id":"v0","kind":"nope"}],"blocks":[]})"),
      doctest::Contains("$.members[0].kind"), ParseError);
  // structurally fine, but the block is short one member: the validation
  // diagnostic names the offending block
  CHECK_THROWS_WITH_AS(
      parse_instance(R"({"version":1,"n":2,"context":"graph",
                         "members":[{"id":"v0","kind":"vertex"}],
                         "blocks":[{"label":"Ashort","member_ids":["v0"]}]})"),
      doctest::Contains("Ashort"), ParseError);
}

TEST_CASE("svg rendering is deterministic with one element per member") {
  for (Instance inst : {gen(GenFamily::random_hv, {{"n", 3}}, 4),
                        gen(GenFamily::random_curves, {{"n", 2}, {"blocks", 12}}, 4)}) {
    std::string svg = render_svg(inst);
    CHECK(svg == render_svg(inst));
    size_t elements = 0;
    for (size_t pos = 0; (pos = svg.find(" id=\"", pos)) != std::string::npos; ++pos) ++elements;
    CHECK(elements == inst.members.size());
  }
  CHECK_THROWS_AS(render_svg(gen(GenFamily::cycle_power, {{"n", 3}, {"q", 2}})),
                  PreconditionError);
}

TEST_CASE("named algorithm dispatch") {
  Instance inst = gen(GenFamily::random_segments, {{"n", 3}}, 9);
  CHECK(run_named_algorithm(inst, "greedy", 1000000).size() == 3);
  CHECK(run_named_algorithm(inst, "oracle", 1000000).size() == 3);
  CHECK(run_named_algorithm(inst, "rainbow", 1000000).size() == 3);
  CHECK_THROWS_AS(run_named_algorithm(inst, "nope", 1000000), PreconditionError);

  Instance tight = gen(GenFamily::hv_tight, {{"n", 3}});
  CHECK(run_named_algorithm(tight, "oracle", 1000000).size() == 2);
  CHECK(run_named_algorithm(tight, "rainbow", 1000000).size() == 0);  // no size-3 set
}

TEST_CASE("experiment runner") {
  ExperimentSpec spec;
  spec.name = "smoke";
  spec.algorithm = "two-sweep";
  spec.family = GenFamily::random_hv;
  spec.points = {{{"n", 2}}, {{"n", 3}}};

  ExperimentOptions opts;
  opts.trials = 10;
  opts.seed = 7;
  opts.record_timing = false;

  auto records = run_experiment(spec, opts);
  REQUIRE(records.size() == 20);
  for (const auto& r : records) {
    CHECK(r.agreement);
    CHECK(r.sdr_size == r.n);
    CHECK(r.status == "ok");
  }

  SUBCASE("reruns are byte-identical") {
    CHECK(experiment_csv(records) == experiment_csv(run_experiment(spec, opts)));
  }
  SUBCASE("different master seed changes the derived seeds") {
    ExperimentOptions other = opts;
    other.seed = 8;
    CHECK(experiment_csv(records) != experiment_csv(run_experiment(spec, other)));
  }
  SUBCASE("csv layout") {
    std::string csv = experiment_csv(records);
    CHECK(csv.substr(0, csv.find('\n')) ==
          "family,params,seed,algorithm,n,sdr_size,oracle_size,agreement,wall_time_ms,"
          "node_count,status");
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 21);
  }
  SUBCASE("oracle budget exhaustion is recorded, not thrown") {
    ExperimentOptions tiny = opts;
    tiny.node_budget = 2;
    auto rows = run_experiment(spec, tiny);
    for (const auto& r : rows) CHECK(r.status == "budget");
  }
}

TEST_CASE("experiment spec parsing") {
  auto spec = parse_experiment_spec(
      R"({"name":"x","algorithm":"greedy","family":"random-segments",
          "points":[{"n":2},{"n":3}],"oracle":false})");
  CHECK(spec.name == "x");
  CHECK(spec.family == GenFamily::random_segments);
  CHECK(spec.points.size() == 2);
  CHECK_FALSE(spec.run_oracle);
  CHECK_THROWS_WITH_AS(parse_experiment_spec(R"({"name":"x"})"), doctest::Contains("$.algorithm"),
                       ParseError);
  CHECK_THROWS_WITH_AS(
      parse_experiment_spec(R"({"name":"x","algorithm":"greedy","family":"random-segments",
                                "points":[]})"),
      doctest::Contains("$.points"), ParseError);
}
