#include "sdr/generators.hpp"

#include <algorithm>
#include <random>

#include "sdr/bounds.hpp"

namespace sdr {

GenFamily gen_family_from_name(const std::string& name) {
  if (name == "few-lines-tight") return GenFamily::few_lines_tight;
  if (name == "hv-tight") return GenFamily::hv_tight;
  if (name == "quadratic-lower") return GenFamily::quadratic_lower;
  if (name == "cycle-power") return GenFamily::cycle_power;
  if (name == "box-cycle-power") return GenFamily::box_cycle_power;
  if (name == "random-segments") return GenFamily::random_segments;
  if (name == "random-curves") return GenFamily::random_curves;
  if (name == "random-few-lines") return GenFamily::random_few_lines;
  if (name == "random-hv") return GenFamily::random_hv;
  throw PreconditionError("unknown generator family '" + name + "'");
}

std::string gen_family_name(GenFamily f) {
  switch (f) {
    case GenFamily::few_lines_tight: return "few-lines-tight";
    case GenFamily::hv_tight: return "hv-tight";
    case GenFamily::quadratic_lower: return "quadratic-lower";
    case GenFamily::cycle_power: return "cycle-power";
    case GenFamily::box_cycle_power: return "box-cycle-power";
    case GenFamily::random_segments: return "random-segments";
    case GenFamily::random_curves: return "random-curves";
    case GenFamily::random_few_lines: return "random-few-lines";
    case GenFamily::random_hv: return "random-hv";
  }
  return "?";
}

namespace {

// mt19937_64 with modulo draw: bias is irrelevant at these ranges and the
// stream is identical across platforms, which the determinism contract needs.
struct Rng {
  std::mt19937_64 eng;
  explicit Rng(std::uint64_t seed) : eng(seed) {}
  long long uniform(long long lo, long long hi) {
    return lo + static_cast<long long>(eng() % static_cast<std::uint64_t>(hi - lo + 1));
  }
};

std::vector<long long> distinct_values(Rng& rng, int count, long long lo, long long hi) {
  std::vector<long long> vals;
  while (static_cast<int>(vals.size()) < count) {
    long long v = rng.uniform(lo, hi);
    if (std::find(vals.begin(), vals.end(), v) == vals.end()) vals.push_back(v);
  }
  return vals;
}

long long get_param(const GenSpec& spec, const std::string& name, long long fallback) {
  auto it = spec.params.find(name);
  return it == spec.params.end() ? fallback : it->second;
}

long long require_param(const GenSpec& spec, const std::string& name) {
  auto it = spec.params.find(name);
  if (it == spec.params.end())
    throw PreconditionError("generator parameter '" + name + "' is required");
  return it->second;
}

Instance random_segments(const GenSpec& spec) {
  int n = static_cast<int>(require_param(spec, "n"));
  int count = static_cast<int>(get_param(spec, "blocks", n));
  if (n < 1 || count < n) throw PreconditionError("random-segments needs n >= 1, blocks >= n");
  Rng rng(spec.seed);
  Instance inst;
  inst.n = n;
  inst.kind = ContextKind::Directions;
  inst.directions = {horizontal_dir()};
  for (int b = 0; b < count; ++b) {
    auto cuts = distinct_values(rng, 2 * n, 0, 10 * n);
    std::sort(cuts.begin(), cuts.end());
    Block blk{"A" + std::to_string(b + 1), {}};
    for (int j = 0; j < n; ++j) {
      std::string id = "b" + std::to_string(b + 1) + "_m" + std::to_string(j + 1);
      inst.members.push_back(
          {id, horizontal_segment(Rat(cuts[2 * static_cast<size_t>(j)]),
                                  Rat(cuts[2 * static_cast<size_t>(j) + 1]), Rat(0))});
      blk.member_ids.push_back(id);
    }
    inst.blocks.push_back(std::move(blk));
  }
  return inst;
}

Instance random_few_lines(const GenSpec& spec) {
  int n = static_cast<int>(require_param(spec, "n"));
  int m = static_cast<int>(require_param(spec, "m"));
  if (m < 1 || m >= n) throw PreconditionError("random-few-lines needs 1 <= m < n");
  long long threshold = few_lines_threshold(n, m);
  Rng rng(spec.seed);
  Instance inst;
  inst.n = n;
  inst.block_size = m;
  inst.kind = ContextKind::Directions;
  inst.directions = {horizontal_dir()};
  // Round-robin over a random permutation of the line pool covers every line,
  // so |L| equals the threshold exactly.
  std::vector<long long> perm(static_cast<size_t>(threshold));
  for (long long i = 0; i < threshold; ++i) perm[static_cast<size_t>(i)] = i + 1;
  for (size_t i = perm.size(); i > 1; --i)
    std::swap(perm[i - 1], perm[static_cast<size_t>(rng.uniform(0, static_cast<long long>(i) - 1))]);
  int block_count = n + m - 1;
  for (int b = 0; b < block_count; ++b) {
    Block blk{"A" + std::to_string(b + 1), {}};
    for (int j = 0; j < m; ++j) {
      long long line = perm[static_cast<size_t>((static_cast<long long>(b) * m + j) % threshold)];
      long long x0 = rng.uniform(0, 40);
      long long x1 = x0 + rng.uniform(0, 10);
      std::string id = "b" + std::to_string(b + 1) + "_m" + std::to_string(j + 1);
      inst.members.push_back({id, horizontal_segment(Rat(x0), Rat(x1), Rat(line))});
      blk.member_ids.push_back(id);
    }
    inst.blocks.push_back(std::move(blk));
  }
  return inst;
}

Instance random_hv(const GenSpec& spec) {
  int n = static_cast<int>(require_param(spec, "n"));
  if (n < 2) throw PreconditionError("random-hv needs n >= 2");
  Rng rng(spec.seed);
  Instance inst;
  inst.n = n;
  inst.kind = ContextKind::Directions;
  inst.directions = {horizontal_dir(), vertical_dir()};
  for (int b = 0; b < 2 * n - 1; ++b) {
    Block blk{"A" + std::to_string(b + 1), {}};
    std::vector<Segment> horiz;
    // tight coordinate ranges keep the instances crowded, so both sweep
    // fall-through branches of the combination step actually get exercised
    auto heights = distinct_values(rng, n - 1, 0, n);
    for (int j = 0; j < n - 1; ++j) {
      long long x0 = rng.uniform(0, 6);
      long long x1 = x0 + rng.uniform(1, 6);
      horiz.push_back(horizontal_segment(Rat(x0), Rat(x1), Rat(heights[static_cast<size_t>(j)])));
    }
    Segment vert;
    int tries = 0;
    for (;; ++tries) {
      if (tries > 1000) throw PreconditionError("random-hv rejection budget exceeded");
      long long x = rng.uniform(0, 14);
      long long y0 = rng.uniform(0, n + 1);
      long long y1 = y0 + rng.uniform(1, n);
      vert = vertical_segment(Rat(x), Rat(y0), Rat(y1));
      bool ok = true;
      for (const auto& h : horiz)
        if (segments_intersect(h, vert)) ok = false;
      if (ok) break;
    }
    for (int j = 0; j < n - 1; ++j) {
      std::string id = "b" + std::to_string(b + 1) + "_h" + std::to_string(j + 1);
      inst.members.push_back({id, horiz[static_cast<size_t>(j)]});
      blk.member_ids.push_back(id);
    }
    std::string vid = "b" + std::to_string(b + 1) + "_v";
    inst.members.push_back({vid, vert});
    blk.member_ids.push_back(vid);
    inst.blocks.push_back(std::move(blk));
  }
  return inst;
}

Instance random_curves(const GenSpec& spec) {
  int n = static_cast<int>(get_param(spec, "n", 2));
  long long t = get_param(spec, "t", 1);
  if (n < 2 || t < 1) throw PreconditionError("random-curves needs n >= 2, t >= 1");
  long long fallback = bound_M(n, 2, t).integer_upper_bound.convert_to<long long>();
  int count = static_cast<int>(get_param(spec, "blocks", fallback));
  Rng rng(spec.seed);
  Instance inst;
  inst.n = n;
  inst.kind = ContextKind::Curves;
  inst.crossing_budget = t;
  inst.curves.push_back({"c1", 1, {Point{-100, 0}, Point{100, 0}}});
  inst.curves.push_back({"c2", 2, {Point{0, -100}, Point{0, 100}}});
  CurveTable table(inst.curves);
  const long long grid = 1000;
  for (int b = 0; b < count; ++b) {
    std::vector<CurveSegment> picked;
    int tries = 0;
    while (static_cast<int>(picked.size()) < n) {
      if (++tries > 1000)
        throw PreconditionError("random-curves rejection budget exceeded for block " +
                                std::to_string(b + 1));
      long long a = rng.uniform(1, grid - 2);
      long long len = rng.uniform(0, grid / 10);
      long long c = std::min(a + len, grid - 1);
      CurveSegment cs{rng.uniform(0, 1) == 0 ? "c1" : "c2", Rat(a, grid), Rat(c, grid)};
      bool ok = true;
      for (const auto& other : picked)
        if (curve_segments_intersect(cs, other, table)) ok = false;
      if (ok) picked.push_back(cs);
    }
    Block blk{"A" + std::to_string(b + 1), {}};
    for (int j = 0; j < n; ++j) {
      std::string id = "b" + std::to_string(b + 1) + "_m" + std::to_string(j + 1);
      inst.members.push_back({id, picked[static_cast<size_t>(j)]});
      blk.member_ids.push_back(id);
    }
    inst.blocks.push_back(std::move(blk));
  }
  return inst;
}

}  // namespace

Instance gen_few_lines_tight(int n, int m, int count) {
  if (m < 1 || m >= n || count < 1)
    throw PreconditionError("gen_few_lines_tight needs 1 <= m < n, count >= 1");
  Instance inst;
  inst.n = n;
  inst.block_size = m;
  inst.kind = ContextKind::Directions;
  inst.directions = {horizontal_dir()};
  int total = m * (n - m);
  for (int i = 1; i <= total; ++i)
    inst.members.push_back({"s" + std::to_string(i), horizontal_segment(Rat(0), Rat(1), Rat(i))});
  int parts = n - m;
  for (int b = 1; b <= count; ++b) {
    int part = std::min(b, parts);
    Block blk{"A" + std::to_string(b), {}};
    for (int j = 1; j <= m; ++j)
      blk.member_ids.push_back("s" + std::to_string((part - 1) * m + j));
    inst.blocks.push_back(std::move(blk));
  }
  return inst;
}

Instance gen_hv_tight(int n) {
  if (n < 2) throw PreconditionError("gen_hv_tight needs n >= 2");
  Instance inst;
  inst.n = n;
  inst.kind = ContextKind::Directions;
  inst.directions = {horizontal_dir(), vertical_dir()};
  // Black horizontals and gray horizontals share a line pairwise and overlap
  // on [1, 4]; each vertical crosses exactly the other color's horizontals.
  for (int i = 1; i <= n - 1; ++i) {
    inst.members.push_back({"bh" + std::to_string(i),
                            horizontal_segment(Rat(1), Rat(6), Rat(2 * i))});
    inst.members.push_back({"gh" + std::to_string(i),
                            horizontal_segment(Rat(-1), Rat(4), Rat(2 * i))});
  }
  inst.members.push_back({"bv", vertical_segment(Rat(0), Rat(0), Rat(2 * n))});
  inst.members.push_back({"gv", vertical_segment(Rat(5), Rat(0), Rat(2 * n))});
  for (int c = 1; c <= n - 1; ++c) {
    Block x{"X#" + std::to_string(c), {}};
    for (int i = 1; i <= n - 1; ++i) x.member_ids.push_back("bh" + std::to_string(i));
    x.member_ids.push_back("bv");
    inst.blocks.push_back(std::move(x));
  }
  for (int c = 1; c <= n - 1; ++c) {
    Block y{"Y#" + std::to_string(c), {}};
    for (int i = 1; i <= n - 1; ++i) y.member_ids.push_back("gh" + std::to_string(i));
    y.member_ids.push_back("gv");
    inst.blocks.push_back(std::move(y));
  }
  return inst;
}

Instance gen_quadratic_lower(int n, int m) {
  if (m < 2 || 2 * m - 2 >= n)
    throw PreconditionError("gen_quadratic_lower needs m >= 2 and 2m-2 < n");
  Instance inst;
  inst.n = n;
  inst.kind = ContextKind::Directions;
  inst.directions = {horizontal_dir(), vertical_dir()};
  for (int j = -(m - 1); j <= m - 1; ++j) {
    if (j == 0) continue;
    inst.members.push_back({"I_" + std::to_string(j),
                            vertical_segment(Rat(j), Rat(1), Rat(n - m))});
  }
  for (int i = 1; i <= m - 1; ++i)
    for (int k = 1; k <= n - m; ++k)
      inst.members.push_back({"J_" + std::to_string(i) + "_" + std::to_string(k),
                              horizontal_segment(Rat(-m + i + 1), Rat(i - 1), Rat(k))});
  int copies = n - m - 1;
  for (int q = 1; q <= m - 1; ++q) {
    Block proto{"X" + std::to_string(q), {}};
    for (int j = -m + 1; j <= -m + q; ++j) proto.member_ids.push_back("I_" + std::to_string(j));
    for (int j = q; j <= m - 1; ++j) proto.member_ids.push_back("I_" + std::to_string(j));
    for (int k = 1; k <= n - m; ++k)
      proto.member_ids.push_back("J_" + std::to_string(q) + "_" + std::to_string(k));
    for (int c = 1; c <= copies; ++c) {
      Block blk = proto;
      blk.label = "X" + std::to_string(q) + "#" + std::to_string(c);
      inst.blocks.push_back(std::move(blk));
    }
  }
  return inst;
}

Instance gen_cycle_power_blocks(int n, int q) {
  if (n < 2 || q < 2) throw PreconditionError("gen_cycle_power_blocks needs n >= 2, q >= 2");
  Instance inst;
  inst.n = n;
  inst.kind = ContextKind::Graph;
  int nv = n * q;
  auto vid = [](int v) { return "v" + std::to_string(v); };
  for (int v = 0; v < nv; ++v) inst.members.push_back({vid(v), VertexPayload{}});
  for (int u = 0; u < nv; ++u) {
    for (int d = 1; d <= q - 1; ++d) {
      int v = (u + d) % nv;
      inst.edges.emplace_back(vid(std::min(u, v)), vid(std::max(u, v)));
    }
  }
  std::sort(inst.edges.begin(), inst.edges.end());
  inst.edges.erase(std::unique(inst.edges.begin(), inst.edges.end()), inst.edges.end());
  for (int i = 0; i < q; ++i) {
    Block proto{"B" + std::to_string(i), {}};
    for (int j = 0; j < n; ++j) proto.member_ids.push_back(vid(i + j * q));
    for (int c = 1; c <= n - 1; ++c) {
      Block blk = proto;
      blk.label = "B" + std::to_string(i) + "#" + std::to_string(c);
      inst.blocks.push_back(std::move(blk));
    }
  }
  return inst;
}

Instance gen_box_cycle_power(int k, int n) {
  if (k < 1 || n < 4) throw PreconditionError("gen_box_cycle_power needs k >= 1, n >= 4");
  Instance inst;
  inst.n = n;
  inst.kind = ContextKind::Graph;
  int nv = 4 * (k + 1);
  auto vid = [](int v) { return "v" + std::to_string(v); };
  for (int v = 0; v < nv; ++v) inst.members.push_back({vid(v), VertexPayload{}});
  // Padding vertices are shared by every block; per-block fresh padding would
  // open up large rainbow sets and destroy the obstruction.
  for (int p = 0; p < n - 4; ++p) inst.members.push_back({"p" + std::to_string(p), VertexPayload{}});
  for (int u = 0; u < nv; ++u) {
    for (int d = 1; d <= k; ++d) {
      int v = (u + d) % nv;
      if (u < v) inst.edges.emplace_back(vid(u), vid(v));
      else inst.edges.emplace_back(vid(v), vid(u));
    }
  }
  std::sort(inst.edges.begin(), inst.edges.end());
  inst.edges.erase(std::unique(inst.edges.begin(), inst.edges.end()), inst.edges.end());
  for (int r = 0; r <= k; ++r) {
    Block proto{"S" + std::to_string(r), {}};
    for (int s = 0; s < 4; ++s) proto.member_ids.push_back(vid(r + s * (k + 1)));
    for (int p = 0; p < n - 4; ++p) proto.member_ids.push_back("p" + std::to_string(p));
    for (int c = 1; c <= 3; ++c) {
      Block blk = proto;
      blk.label = "S" + std::to_string(r) + "#" + std::to_string(c);
      inst.blocks.push_back(std::move(blk));
    }
  }
  return inst;
}

Instance gen_random_instance(const GenSpec& spec) {
  Instance inst;
  switch (spec.family) {
    case GenFamily::few_lines_tight:
      inst = gen_few_lines_tight(static_cast<int>(require_param(spec, "n")),
                                 static_cast<int>(require_param(spec, "m")),
                                 static_cast<int>(get_param(spec, "count", 10)));
      break;
    case GenFamily::hv_tight:
      inst = gen_hv_tight(static_cast<int>(require_param(spec, "n")));
      break;
    case GenFamily::quadratic_lower:
      inst = gen_quadratic_lower(static_cast<int>(require_param(spec, "n")),
                                 static_cast<int>(require_param(spec, "m")));
      break;
    case GenFamily::cycle_power:
      inst = gen_cycle_power_blocks(static_cast<int>(require_param(spec, "n")),
                                    static_cast<int>(require_param(spec, "q")));
      break;
    case GenFamily::box_cycle_power:
      inst = gen_box_cycle_power(static_cast<int>(require_param(spec, "k")),
                                 static_cast<int>(require_param(spec, "n")));
      break;
    case GenFamily::random_segments:
      inst = random_segments(spec);
      break;
    case GenFamily::random_curves:
      inst = random_curves(spec);
      break;
    case GenFamily::random_few_lines:
      inst = random_few_lines(spec);
      break;
    case GenFamily::random_hv:
      inst = random_hv(spec);
      break;
  }
  auto diags = validate_instance(inst);
  if (!diags.empty())
    throw InternalInvariantError("generator '" + gen_family_name(spec.family) +
                                 "' produced an invalid instance: " + diags.front());
  return inst;
}

}  // namespace sdr
