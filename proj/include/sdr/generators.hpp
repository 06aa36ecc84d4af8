#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "sdr/model.hpp"

namespace sdr {

enum class GenFamily {
  few_lines_tight,
  hv_tight,
  quadratic_lower,
  cycle_power,
  box_cycle_power,
  random_segments,
  random_curves,
  random_few_lines,
  random_hv,
};

GenFamily gen_family_from_name(const std::string& name);
std::string gen_family_name(GenFamily f);

struct GenSpec {
  GenFamily family = GenFamily::random_segments;
  std::map<std::string, long long> params;
  std::uint64_t seed = 0;
};

// m(n-m) unit horizontal segments on distinct lines, partitioned into n-m
// parts of m; the last part is repeated to fill `count` blocks. Max SDR is
// n-1 once count >= n-1.
Instance gen_few_lines_tight(int n, int m, int count);

// Two interlocking sets of n-1 horizontals plus a vertical, repeated n-1
// times each (2n-2 blocks).
Instance gen_hv_tight(int n);

// The quadratic lower-bound family: (m-1)(n-m-1) blocks of m verticals and
// n-m horizontals on an integer grid.
Instance gen_quadratic_lower(int n, int m);

// Abstract power-of-cycle family: C_{nq}^{q-1} with n-1 copies of each of the
// q canonical independent sets.
Instance gen_cycle_power_blocks(int n, int q);

// Abstract C_{4(k+1)}^k with its k+1 maximum independent sets, 3 copies each,
// padded to size n with shared isolated vertices.
Instance gen_box_cycle_power(int k, int n);

// Seeded hypothesis-satisfying samplers; deterministic under
// (family, parameters, seed). Throws PreconditionError when 1,000 rejection
// rounds fail to produce a valid instance.
Instance gen_random_instance(const GenSpec& spec);

}  // namespace sdr
