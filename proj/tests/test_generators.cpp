#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "sdr/bounds.hpp"
#include "sdr/generators.hpp"
#include "sdr/io.hpp"

using namespace sdr;

namespace {

Instance gen(GenFamily family, std::map<std::string, long long> params, std::uint64_t seed = 1) {
  GenSpec spec;
  spec.family = family;
  spec.params = std::move(params);
  spec.seed = seed;
  return gen_random_instance(spec);
}

}  // namespace

TEST_CASE("family name round trip") {
  for (GenFamily f : {GenFamily::few_lines_tight, GenFamily::hv_tight, GenFamily::quadratic_lower,
                      GenFamily::cycle_power, GenFamily::box_cycle_power,
                      GenFamily::random_segments, GenFamily::random_curves,
                      GenFamily::random_few_lines, GenFamily::random_hv})
    CHECK(gen_family_from_name(gen_family_name(f)) == f);
  CHECK_THROWS_AS(gen_family_from_name("nope"), PreconditionError);
}

TEST_CASE("every family validates cleanly") {
  // gen_random_instance revalidates internally and throws on any diagnostic,
  // so constructing these at all is the check.
  CHECK(gen(GenFamily::few_lines_tight, {{"n", 4}, {"m", 2}, {"count", 10}}).blocks.size() == 10);
  CHECK(gen(GenFamily::hv_tight, {{"n", 3}}).blocks.size() == 4);
  CHECK(gen(GenFamily::quadratic_lower, {{"n", 6}, {"m", 3}}).blocks.size() == 4);
  CHECK(gen(GenFamily::cycle_power, {{"n", 3}, {"q", 2}}).blocks.size() == 4);
  CHECK(gen(GenFamily::box_cycle_power, {{"k", 2}, {"n", 6}}).blocks.size() == 9);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    gen(GenFamily::random_segments, {{"n", 4}}, seed);
    gen(GenFamily::random_curves, {{"n", 2}, {"blocks", 12}}, seed);
    gen(GenFamily::random_few_lines, {{"n", 4}, {"m", 2}}, seed);
    gen(GenFamily::random_hv, {{"n", 3}}, seed);
  }
}

TEST_CASE("samplers are deterministic under (family, params, seed)") {
  for (GenFamily f : {GenFamily::random_segments, GenFamily::random_few_lines,
                      GenFamily::random_hv}) {
    std::map<std::string, long long> params{{"n", 4}};
    if (f == GenFamily::random_few_lines) params["m"] = 2;
    CHECK(serialize_instance(gen(f, params, 99)) == serialize_instance(gen(f, params, 99)));
    CHECK(serialize_instance(gen(f, params, 99)) != serialize_instance(gen(f, params, 100)));
  }
  CHECK(serialize_instance(gen(GenFamily::random_curves, {{"n", 2}, {"blocks", 12}}, 5)) ==
        serialize_instance(gen(GenFamily::random_curves, {{"n", 2}, {"blocks", 12}}, 5)));
}

TEST_CASE("few-lines tight family structure and ceiling") {
  Instance inst = gen(GenFamily::few_lines_tight, {{"n", 3}, {"m", 2}, {"count", 8}});
  CHECK(inst.n == 3);
  CHECK(inst.effective_block_size() == 2);
  // spans exactly m(n-m) lines: one short of the theorem's threshold
  std::set<Rat> lines;
  for (const auto& m : inst.members) lines.insert(std::get<Segment>(m.payload).anchor.y);
  CHECK(static_cast<long long>(lines.size()) == 2 * (3 - 2));
  CHECK(max_sdr_bruteforce(inst).size == 2);  // n-1, tightness
}

TEST_CASE("hv-tight family structure") {
  Instance inst = gen(GenFamily::hv_tight, {{"n", 4}});
  CHECK(inst.blocks.size() == 6);  // 2n-2
  for (const auto& blk : inst.blocks) {
    int horizontals = 0, verticals = 0;
    for (const auto& id : blk.member_ids) {
      const auto& s = std::get<Segment>(inst.member(id).payload);
      (s.dir == horizontal_dir() ? horizontals : verticals)++;
    }
    CHECK(horizontals == 3);
    CHECK(verticals == 1);
  }
}

TEST_CASE("quadratic lower-bound family structure") {
  Instance inst = gen(GenFamily::quadratic_lower, {{"n", 6}, {"m", 3}});
  CHECK(inst.n == 6);
  CHECK(inst.blocks.size() == (3 - 1) * (6 - 3 - 1));
  for (const auto& blk : inst.blocks) CHECK(blk.member_ids.size() == 6);
}

TEST_CASE("cycle power family: size-n independent sets are exactly the blocks") {
  for (auto [n, q] : std::vector<std::pair<int, int>>{{2, 3}, {3, 2}, {3, 3}, {4, 2}, {4, 4}}) {
    if (n * q > 16) continue;
    Instance inst = gen(GenFamily::cycle_power, {{"n", n}, {"q", q}});
    CHECK(static_cast<int>(inst.blocks.size()) == (n - 1) * q);
    int nv = n * q;
    // adjacency of C_{nq}^{q-1}: circular distance <= q-1
    auto adjacent = [&](int a, int b) {
      int d = std::abs(a - b);
      d = std::min(d, nv - d);
      return d != 0 && d <= q - 1;
    };
    // the q canonical blocks as vertex-index sets
    std::set<std::set<int>> blocks;
    for (const auto& blk : inst.blocks) {
      std::set<int> vs;
      for (const auto& id : blk.member_ids) vs.insert(std::stoi(id.substr(1)));
      blocks.insert(vs);
    }
    CHECK(static_cast<int>(blocks.size()) == q);
    // enumerate all size-n independent sets
    std::set<std::set<int>> independent;
    for (unsigned mask = 0; mask < (1u << nv); ++mask) {
      if (__builtin_popcount(mask) != n) continue;
      std::set<int> vs;
      for (int v = 0; v < nv; ++v)
        if (mask & (1u << v)) vs.insert(v);
      bool ok = true;
      for (int a : vs)
        for (int b : vs)
          if (a < b && adjacent(a, b)) ok = false;
      if (ok) independent.insert(vs);
    }
    CAPTURE(n);
    CAPTURE(q);
    CHECK(independent == blocks);
  }
}

TEST_CASE("random few-lines sampler meets the theorem hypothesis") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    Instance inst = gen(GenFamily::random_few_lines, {{"n", 5}, {"m", 2}}, seed);
    CHECK(static_cast<int>(inst.blocks.size()) >= 5 + 2 - 1);
    CHECK(inst.effective_block_size() == 2);
    std::set<Rat> lines;
    for (const auto& m : inst.members) lines.insert(std::get<Segment>(m.payload).anchor.y);
    CHECK(static_cast<long long>(lines.size()) >= few_lines_threshold(5, 2));
  }
}

TEST_CASE("random hv sampler meets the two-sweep hypothesis") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    Instance inst = gen(GenFamily::random_hv, {{"n", 4}}, seed);
    CHECK(inst.blocks.size() == 7);  // 2n-1
    for (const auto& blk : inst.blocks) {
      int horizontals = 0, verticals = 0;
      for (const auto& id : blk.member_ids) {
        const auto& s = std::get<Segment>(inst.member(id).payload);
        (s.dir == horizontal_dir() ? horizontals : verticals)++;
      }
      CHECK(horizontals == 3);
      CHECK(verticals == 1);
    }
  }
}

TEST_CASE("random curves sampler fits the pipeline hypothesis") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    Instance inst = gen(GenFamily::random_curves, {{"n", 2}, {"blocks", 12}}, seed);
    CHECK(inst.kind == ContextKind::Curves);
    CHECK(inst.blocks.size() == 12);
    std::set<int> groups;
    for (const auto& c : inst.curves) groups.insert(c.group);
    CHECK(groups.size() == 2);
    CHECK(inst.crossing_budget >= 1);
  }
}

TEST_CASE("missing parameters are reported") {
  GenSpec spec;
  spec.family = GenFamily::quadratic_lower;
  spec.params = {{"n", 6}};
  CHECK_THROWS_AS(gen_random_instance(spec), PreconditionError);
}
