#include "sdr/algorithms.hpp"

#include <algorithm>
#include <map>
#include <json.hpp>
#include <set>

#include "sdr/bounds.hpp"

namespace sdr {

namespace {

using nlohmann::json;

void emit(const TraceSink& trace, json j) {
  if (trace) trace(std::move(j));
}

// Horizontal segment [x0, x1] x {y} with its owning block.
struct HSeg {
  Rat y, x0, x1;
  int block = -1;
  std::string id;
};

bool hsegs_intersect(const HSeg& a, const HSeg& b) {
  return a.y == b.y && a.x0 <= b.x1 && b.x0 <= a.x1;
}

bool hseg_key_less(const HSeg& a, const HSeg& b) {
  if (a.y != b.y) return a.y < b.y;
  if (a.block != b.block) return a.block < b.block;
  return a.id < b.id;
}

// Members of a horizontal-line instance as HSegs grouped by block. Curve
// instances are flattened first (curves must be mutually disjoint).
std::vector<std::vector<HSeg>> blocks_as_hsegs(const Instance& inst) {
  std::map<std::string, HSeg> by_id;
  if (inst.kind == ContextKind::Directions) {
    for (const auto& m : inst.members) {
      const auto* s = std::get_if<Segment>(&m.payload);
      if (!s || s->dir != horizontal_dir())
        throw PreconditionError("member '" + m.id + "' is not a horizontal segment");
      auto [p, q] = segment_endpoints(*s);
      by_id[m.id] = HSeg{p.y, p.x, q.x, -1, m.id};
    }
  } else if (inst.kind == ContextKind::Curves) {
    CurveTable table(inst.curves);
    std::vector<CurveSegment> css;
    std::vector<std::string> ids;
    for (const auto& m : inst.members) {
      const auto* cs = std::get_if<CurveSegment>(&m.payload);
      if (!cs) throw PreconditionError("member '" + m.id + "' is not a curve segment");
      css.push_back(*cs);
      ids.push_back(m.id);
    }
    auto flat = flatten_disjoint_curves(css, table);
    for (size_t i = 0; i < flat.size(); ++i) {
      auto [p, q] = segment_endpoints(flat[i]);
      by_id[ids[i]] = HSeg{p.y, p.x, q.x, -1, ids[i]};
    }
  } else {
    throw PreconditionError("expected a geometric instance, got an abstract graph");
  }
  std::vector<std::vector<HSeg>> out(inst.blocks.size());
  for (size_t b = 0; b < inst.blocks.size(); ++b) {
    for (const auto& id : inst.blocks[b].member_ids) {
      HSeg h = by_id.at(id);
      h.block = static_cast<int>(b);
      out[b].push_back(h);
    }
  }
  return out;
}

// The sweep at the heart of the one-direction argument: pick the member of an
// unrepresented block with the smallest right endpoint, delete everything it
// meets, repeat. `check_supply` asserts the per-step member-count invariant.
std::vector<HSeg> greedy_core(std::vector<std::vector<HSeg>> blocks, int target,
                              bool check_supply, const TraceSink& trace) {
  std::vector<char> represented(blocks.size(), 0);
  std::vector<HSeg> picks;
  for (int step = 1; step <= target; ++step) {
    const HSeg* best = nullptr;
    for (size_t b = 0; b < blocks.size(); ++b) {
      if (represented[b]) continue;
      for (const auto& h : blocks[b]) {
        if (!best || h.x1 < best->x1 || (h.x1 == best->x1 && hseg_key_less(h, *best)))
          best = &h;
      }
    }
    if (!best)
      throw PreconditionError("greedy sweep ran out of members at step " + std::to_string(step));
    HSeg pick = *best;
    represented[static_cast<size_t>(pick.block)] = 1;
    picks.push_back(pick);
    emit(trace, json{{"algorithm", "greedy"},
                     {"step", step},
                     {"block", pick.block},
                     {"member", pick.id}});
    for (size_t b = 0; b < blocks.size(); ++b) {
      if (represented[b]) continue;
      auto& v = blocks[b];
      v.erase(std::remove_if(v.begin(), v.end(),
                             [&](const HSeg& h) { return hsegs_intersect(h, pick); }),
              v.end());
      if (check_supply && static_cast<int>(v.size()) < target - step)
        throw InternalInvariantError("block " + std::to_string(b) + " dropped below " +
                                     std::to_string(target - step) + " members after step " +
                                     std::to_string(step));
    }
  }
  return picks;
}

SdrAssignment picks_to_assignment(const std::vector<HSeg>& picks) {
  SdrAssignment a;
  for (const auto& p : picks) a.pairs[p.block] = p.id;
  return a;
}

}  // namespace

SdrAssignment greedy_disjoint_curves(const Instance& inst, const TraceSink& trace) {
  if (static_cast<int>(inst.blocks.size()) < inst.n)
    throw PreconditionError("greedy needs at least n blocks");
  auto blocks = blocks_as_hsegs(inst);
  auto picks = greedy_core(std::move(blocks), inst.n, true, trace);
  return picks_to_assignment(picks);
}

// ---------------------------------------------------------------------------
// Potential ascent over the three-way line partition.

namespace {

struct AscentState {
  const std::vector<std::vector<HSeg>>& blocks;
  std::vector<Rat> all_lines;         // sorted distinct y values
  std::map<int, int> rep;             // block -> member index within block
  int phase_count = 0;

  const HSeg& seg(int b, int mi) const {
    return blocks[static_cast<size_t>(b)][static_cast<size_t>(mi)];
  }

  std::set<Rat> lines_met() const {
    std::set<Rat> s;
    for (const auto& [b, mi] : rep) s.insert(seg(b, mi).y);
    return s;
  }

  BigInt potential() const {
    return BigInt(rep.size()) * (static_cast<long long>(all_lines.size()) + 1) +
           static_cast<long long>(lines_met().size());
  }

  bool line_is_l0(const Rat& l, const std::set<Rat>& met) const { return !met.count(l); }

  // Does the block of representative (b, mi) reach a line outside `met`?
  int l0_alternative(int b, const std::set<Rat>& met) const {
    for (size_t mi = 0; mi < blocks[static_cast<size_t>(b)].size(); ++mi)
      if (!met.count(seg(b, static_cast<int>(mi)).y)) return static_cast<int>(mi);
    return -1;
  }

  // Classify a non-L0 line: true when every representative on it belongs to a
  // block fully contained in non-L0 lines (the L1 condition).
  bool line_is_l1(const Rat& l, const std::set<Rat>& met) const {
    for (const auto& [b, mi] : rep) {
      if (seg(b, mi).y != l) continue;
      if (l0_alternative(b, met) >= 0) return false;
    }
    return true;
  }
};

}  // namespace

SdrAssignment potential_ascent_few_lines(const Instance& inst, int m, const TraceSink& trace) {
  int n = inst.n;
  if (m < 1 || m >= n) throw PreconditionError("potential ascent needs 1 <= m < n");
  if (static_cast<int>(inst.blocks.size()) < n + m - 1)
    throw PreconditionError("potential ascent needs at least n+m-1 blocks");
  auto blocks = blocks_as_hsegs(inst);
  for (const auto& blk : blocks)
    if (static_cast<int>(blk.size()) != m)
      throw PreconditionError("every block must hold exactly m segments");

  AscentState st{blocks};
  {
    std::set<Rat> ys;
    for (const auto& blk : blocks)
      for (const auto& h : blk) ys.insert(h.y);
    st.all_lines.assign(ys.begin(), ys.end());
  }
  long long threshold = few_lines_threshold(n, m);
  if (static_cast<long long>(st.all_lines.size()) < threshold)
    throw PreconditionError("needs at least " + std::to_string(threshold) +
                            " distinct lines, got " + std::to_string(st.all_lines.size()));

  auto disjoint_from_rep = [&](const HSeg& h, int skip_block) {
    for (const auto& [b, mi] : st.rep) {
      if (b == skip_block) continue;
      if (hsegs_intersect(h, st.seg(b, mi))) return false;
    }
    return true;
  };

  // Greedy maximal start.
  for (size_t b = 0; b < blocks.size() && static_cast<int>(st.rep.size()) < n; ++b) {
    for (size_t mi = 0; mi < blocks[b].size(); ++mi) {
      if (disjoint_from_rep(blocks[b][mi], static_cast<int>(b))) {
        st.rep[static_cast<int>(b)] = static_cast<int>(mi);
        break;
      }
    }
  }

  long long max_steps =
      static_cast<long long>(n) * (static_cast<long long>(st.all_lines.size()) + 1) +
      static_cast<long long>(st.all_lines.size()) + 2;
  BigInt phi = st.potential();
  for (long long iter = 0; static_cast<int>(st.rep.size()) < n; ++iter) {
    if (iter > max_steps)
      throw InternalInvariantError("potential ascent exceeded its step bound");
    auto met = st.lines_met();
    std::set<Rat> l0, l1, l2;
    for (const auto& l : st.all_lines) {
      if (st.line_is_l0(l, met)) l0.insert(l);
      else if (st.line_is_l1(l, met)) l1.insert(l);
      else l2.insert(l);
    }

    bool moved = false;
    std::string move;

    // (a) represent a new block on a free line.
    for (size_t b = 0; b < blocks.size() && !moved; ++b) {
      if (st.rep.count(static_cast<int>(b))) continue;
      for (size_t mi = 0; mi < blocks[b].size(); ++mi) {
        if (l0.count(blocks[b][mi].y)) {
          st.rep[static_cast<int>(b)] = static_cast<int>(mi);
          moved = true;
          move = "add";
          break;
        }
      }
    }

    // (b) an L2 line holding two representatives: swap one out to a free line.
    if (!moved) {
      for (const auto& l : l2) {
        std::vector<int> on_line;
        for (const auto& [b, mi] : st.rep)
          if (st.seg(b, mi).y == l) on_line.push_back(b);
        if (on_line.size() < 2) continue;
        for (int b : on_line) {
          int alt = st.l0_alternative(b, met);
          if (alt >= 0) {
            st.rep[b] = alt;
            moved = true;
            move = "swap";
            break;
          }
        }
        if (moved) break;
      }
    }

    // (c) an unrepresented block reaching an L2 line: double swap.
    if (!moved) {
      for (size_t b = 0; b < blocks.size() && !moved; ++b) {
        if (st.rep.count(static_cast<int>(b))) continue;
        for (size_t mi = 0; mi < blocks[b].size() && !moved; ++mi) {
          const Rat& l = blocks[b][mi].y;
          if (!l2.count(l)) continue;
          std::vector<int> on_line;
          for (const auto& [rb, rmi] : st.rep)
            if (st.seg(rb, rmi).y == l) on_line.push_back(rb);
          if (on_line.size() != 1)
            throw InternalInvariantError("L2 line with multiple representatives survived (b)");
          int j = on_line.front();
          int alt = st.l0_alternative(j, met);
          if (alt < 0)
            throw InternalInvariantError("L2 line without a free-line alternative");
          st.rep[j] = alt;
          st.rep[static_cast<int>(b)] = static_cast<int>(mi);
          moved = true;
          move = "double-swap";
        }
      }
    }

    // (d) rebuild the L1 side from scratch when it is too small.
    if (!moved) {
      int r1 = 0;
      for (const auto& [b, mi] : st.rep)
        if (l1.count(st.seg(b, mi).y)) ++r1;
      if (r1 < m) {
        std::vector<int> free_blocks;
        for (size_t b = 0; b < blocks.size(); ++b)
          if (!st.rep.count(static_cast<int>(b))) free_blocks.push_back(static_cast<int>(b));
        if (static_cast<int>(free_blocks.size()) < m)
          throw InternalInvariantError("fewer than m unrepresented blocks");
        std::vector<std::vector<HSeg>> sub;
        for (int i = 0; i < m; ++i) {
          const auto& blk = blocks[static_cast<size_t>(free_blocks[static_cast<size_t>(i)])];
          for (const auto& h : blk)
            if (!l1.count(h.y))
              throw InternalInvariantError("unrepresented block leaves the L1 lines");
          sub.push_back(blk);
        }
        auto picks = greedy_core(std::move(sub), m, true, nullptr);
        std::map<int, int> next;
        for (const auto& [b, mi] : st.rep)
          if (l2.count(st.seg(b, mi).y)) next[b] = mi;
        for (const auto& p : picks) {
          const auto& blk = blocks[static_cast<size_t>(p.block)];
          for (size_t mi = 0; mi < blk.size(); ++mi)
            if (blk[mi].id == p.id && blk[mi].y == p.y) next[p.block] = static_cast<int>(mi);
        }
        st.rep = std::move(next);
        moved = true;
        move = "rebuild";
      }
    }

    if (!moved)
      throw InternalInvariantError("no exchange applies with |R| = " +
                                   std::to_string(st.rep.size()));
    BigInt phi2 = st.potential();
    if (phi2 <= phi)
      throw InternalInvariantError("potential failed to increase on move '" + move + "'");
    emit(trace, json{{"algorithm", "few-lines"},
                     {"move", move},
                     {"size", st.rep.size()},
                     {"potential", phi2.str()}});
    phi = phi2;
  }

  SdrAssignment a;
  for (const auto& [b, mi] : st.rep) a.pairs[b] = st.seg(b, mi).id;
  return a;
}

// ---------------------------------------------------------------------------
// Two-sweep algorithm for blocks of n-1 horizontals plus one vertical.

namespace {

struct VSeg {
  Rat x, y0, y1;
  int block = -1;
  std::string id;
};

struct SweepPick {
  HSeg seg;
  Point endpoint;  // rightmost point (sweep 1) or leftmost point (sweep 2)
};

// mode 1: rightmost point leftmost; mode 2: leftmost point rightmost.
std::vector<SweepPick> endpoint_sweep(std::map<int, std::vector<HSeg>> active, int mode) {
  std::vector<SweepPick> picks;
  for (;;) {
    const HSeg* best = nullptr;
    for (const auto& [b, segs] : active) {
      for (const auto& h : segs) {
        if (!best) {
          best = &h;
          continue;
        }
        const Rat& hv = mode == 1 ? h.x1 : h.x0;
        const Rat& bv = mode == 1 ? best->x1 : best->x0;
        if (hv != bv) {
          if (mode == 1 ? hv < bv : hv > bv) best = &h;
        } else if (hseg_key_less(h, *best)) {
          best = &h;
        }
      }
    }
    bool any_left = false;
    for (const auto& [b, segs] : active)
      if (!segs.empty()) any_left = true;
    if (!best || !any_left) break;
    HSeg pick = *best;
    picks.push_back(SweepPick{pick, mode == 1 ? Point{pick.x1, pick.y} : Point{pick.x0, pick.y}});
    active.erase(pick.block);
    for (auto& [b, segs] : active)
      segs.erase(std::remove_if(segs.begin(), segs.end(),
                                [&](const HSeg& h) { return hsegs_intersect(h, pick); }),
                 segs.end());
    bool all_empty = true;
    for (const auto& [b, segs] : active)
      if (!segs.empty()) all_empty = false;
    if (all_empty) break;
  }
  return picks;
}

// The injection g: since all picks of either sweep are pairwise disjoint and
// every deleted segment contains the deleting pick's sweep endpoint, exactly
// one second-sweep pick contains each r_j. That pick is J_{g(j)}.
std::vector<int> crossing_injection(const std::vector<SweepPick>& r1,
                                    const std::vector<SweepPick>& r2) {
  size_t k = r1.size();
  std::vector<int> g(k, -1);
  std::vector<char> used(r2.size(), 0);
  for (size_t j = 0; j < k; ++j) {
    const HSeg& a = r1[j].seg;
    for (size_t i = 0; i < r2.size(); ++i) {
      const HSeg& b = r2[i].seg;
      if (b.y == a.y && b.x0 <= a.x1 && a.x1 <= b.x1) {
        if (g[j] >= 0)
          throw InternalInvariantError("two second-sweep picks contain the same r_j");
        g[j] = static_cast<int>(i);
      }
    }
    if (g[j] < 0)
      throw InternalInvariantError("no second-sweep pick contains r_" + std::to_string(j));
    if (used[static_cast<size_t>(g[j])])
      throw InternalInvariantError("crossing injection g is not injective");
    used[static_cast<size_t>(g[j])] = 1;
  }
  return g;
}

}  // namespace

SdrAssignment two_sweep_hv(const Instance& inst, const TraceSink& trace) {
  int n = inst.n;
  if (static_cast<int>(inst.blocks.size()) != 2 * n - 1)
    throw PreconditionError("two-sweep needs exactly 2n-1 blocks");
  if (inst.kind != ContextKind::Directions)
    throw PreconditionError("two-sweep needs a segment instance");

  std::map<int, std::vector<HSeg>> horiz;
  std::map<int, VSeg> vert;
  for (size_t b = 0; b < inst.blocks.size(); ++b) {
    for (const auto& id : inst.blocks[b].member_ids) {
      const auto* s = std::get_if<Segment>(&inst.member(id).payload);
      if (!s) throw PreconditionError("member '" + id + "' is not a segment");
      auto [p, q] = segment_endpoints(*s);
      if (s->dir == horizontal_dir()) {
        horiz[static_cast<int>(b)].push_back(HSeg{p.y, p.x, q.x, static_cast<int>(b), id});
      } else if (s->dir == vertical_dir()) {
        if (vert.count(static_cast<int>(b)))
          throw PreconditionError("block '" + inst.blocks[b].label + "' has two verticals");
        vert[static_cast<int>(b)] = VSeg{p.x, p.y, q.y, static_cast<int>(b), id};
      } else {
        throw PreconditionError("member '" + id + "' is neither horizontal nor vertical");
      }
    }
    if (static_cast<int>(horiz[static_cast<int>(b)].size()) != n - 1 ||
        !vert.count(static_cast<int>(b)))
      throw PreconditionError("block '" + inst.blocks[b].label +
                              "' must hold n-1 horizontals and one vertical");
  }

  auto finish = [&](SdrAssignment a, const char* route) {
    if (a.size() != n || !is_sdr(inst, a))
      throw InternalInvariantError(std::string("two-sweep produced a non-SDR via ") + route);
    emit(trace, json{{"algorithm", "two-sweep"}, {"route", route}, {"size", a.size()}});
    return a;
  };

  auto r1 = endpoint_sweep(horiz, 1);
  emit(trace, json{{"algorithm", "two-sweep"}, {"sweep", 1}, {"picks", r1.size()}});
  if (static_cast<int>(r1.size()) >= n) {
    SdrAssignment a;
    for (int j = 0; j < n; ++j) a.pairs[r1[static_cast<size_t>(j)].seg.block] = r1[static_cast<size_t>(j)].seg.id;
    return finish(std::move(a), "sweep1");
  }
  if (static_cast<int>(r1.size()) != n - 1)
    throw InternalInvariantError("first sweep returned " + std::to_string(r1.size()) +
                                 " picks; expected n-1 or more");

  std::set<int> touched;
  for (const auto& p : r1) touched.insert(p.seg.block);
  std::map<int, std::vector<HSeg>> rest;
  for (const auto& [b, segs] : horiz)
    if (!touched.count(b)) rest[b] = segs;
  auto r2 = endpoint_sweep(rest, 2);
  emit(trace, json{{"algorithm", "two-sweep"}, {"sweep", 2}, {"picks", r2.size()}});
  if (static_cast<int>(r2.size()) >= n) {
    SdrAssignment a;
    for (int j = 0; j < n; ++j) a.pairs[r2[static_cast<size_t>(j)].seg.block] = r2[static_cast<size_t>(j)].seg.id;
    return finish(std::move(a), "sweep2");
  }
  if (static_cast<int>(r2.size()) != n - 1)
    throw InternalInvariantError("second sweep returned " + std::to_string(r2.size()) +
                                 " picks; expected n-1 or more");

  int final_block = -1;
  {
    std::set<int> touched2;
    for (const auto& p : r2) touched2.insert(p.seg.block);
    for (const auto& [b, segs] : rest)
      if (!touched2.count(b)) final_block = b;
  }
  if (final_block < 0) throw InternalInvariantError("no block left for the vertical member");

  auto g = crossing_injection(r1, r2);
  const VSeg& vertical = vert.at(final_block);

  SdrAssignment a;
  for (size_t j = 0; j < r1.size(); ++j) {
    const HSeg& ij = r1[j].seg;
    const HSeg& jg = r2[static_cast<size_t>(g[j])].seg;
    // crossing piece X_j = I_j ∩ J_{g(j)}, which ends at r_j on the right
    Rat xl = std::max(ij.x0, jg.x0), xr = ij.x1;
    if (xl > xr) throw InternalInvariantError("empty crossing piece");
    bool in_band = ij.y >= vertical.y0 && ij.y <= vertical.y1;
    if (in_band && vertical.x >= xl && vertical.x <= xr)
      throw InternalInvariantError("vertical member meets a crossing piece");
    // Outside the band any choice avoids the vertical; inside it, take a
    // segment lying wholly on one side of the vertical's x-coordinate.
    bool choose_first;
    if (!in_band || xr < vertical.x)
      choose_first = true;  // I_j ends at xr, left of the vertical
    else
      choose_first = jg.x0 <= vertical.x;  // prefer J when it starts right of it
    const HSeg& chosen = choose_first ? ij : jg;
    if (in_band && xl > vertical.x && choose_first && ij.x0 <= vertical.x)
      throw InternalInvariantError("no pick of pair " + std::to_string(j) +
                                   " clears the vertical member");
    a.pairs[chosen.block] = chosen.id;
    emit(trace, json{{"algorithm", "two-sweep"},
                     {"pair", j},
                     {"choice", choose_first ? "first-sweep" : "second-sweep"},
                     {"member", chosen.id}});
  }
  a.pairs[vertical.block] = vertical.id;
  return finish(std::move(a), "band-combination");
}

// ---------------------------------------------------------------------------
// Pigeonhole reduction over crossing-point vectors.

CurveReduction pigeonhole_curve_reduction(const Instance& inst) {
  if (inst.kind != ContextKind::Curves)
    throw PreconditionError("curve reduction needs a curve instance");
  std::vector<PolyCurve> curves = inst.curves;
  std::sort(curves.begin(), curves.end(),
            [](const PolyCurve& a, const PolyCurve& b) { return a.id < b.id; });

  // All pairwise crossings, then for each the full set of curves through it.
  std::vector<Point> points;
  for (size_t i = 0; i < curves.size(); ++i)
    for (size_t j = i + 1; j < curves.size(); ++j)
      for (const auto& p : curve_pairwise_crossings(curves[i], curves[j])) points.push_back(p);
  std::sort(points.begin(), points.end(), point_less);
  points.erase(std::unique(points.begin(), points.end()), points.end());

  std::vector<std::vector<std::string>> through(points.size());
  BigInt required = inst.n;
  for (size_t v = 0; v < points.size(); ++v) {
    for (const auto& c : curves) {
      auto t = param_of_point(c, points[v]);
      if (!t) continue;
      if (*t == 0 || *t == c.param_max())
        throw PreconditionError("crossing point lies at an endpoint of curve '" + c.id + "'");
      through[v].push_back(c.id);
    }
    required *= static_cast<long long>(through[v].size());
  }
  if (BigInt(static_cast<long long>(inst.blocks.size())) < required)
    throw PreconditionError("curve reduction needs at least " + required.str() +
                            " blocks, got " + std::to_string(inst.blocks.size()));

  // The crossing vector of each block.
  auto member_curve = [&](const std::string& id) -> const CurveSegment& {
    return std::get<CurveSegment>(inst.member(id).payload);
  };
  CurveTable table(inst.curves);
  std::vector<std::vector<std::string>> vec(inst.blocks.size());
  for (size_t b = 0; b < inst.blocks.size(); ++b) {
    for (size_t v = 0; v < points.size(); ++v) {
      std::string entry;
      for (const auto& id : inst.blocks[b].member_ids) {
        const CurveSegment& cs = member_curve(id);
        auto t = param_of_point(table.get(cs.curve), points[v]);
        if (t && *t >= cs.t_lo && *t <= cs.t_hi) {
          entry = cs.curve;
          break;
        }
      }
      if (entry.empty()) entry = through[v].front();  // smallest covering curve id
      vec[b].push_back(std::move(entry));
    }
  }

  std::map<std::vector<std::string>, std::vector<int>> groups;
  for (size_t b = 0; b < inst.blocks.size(); ++b)
    groups[vec[b]].push_back(static_cast<int>(b));
  std::vector<int> selected;
  for (const auto& [key, idxs] : groups)
    if (idxs.size() > selected.size()) selected = idxs;
  if (static_cast<int>(selected.size()) < inst.n)
    throw InternalInvariantError("pigeonhole produced fewer than n agreeing blocks");
  const auto& shared = vec[static_cast<size_t>(selected.front())];

  // Split each curve at the crossings assigned to other curves; the surviving
  // open pieces are mutually disjoint and carry every selected member.
  CurveReduction out;
  out.selected_blocks = selected;
  Instance& flat = out.flat;
  flat.n = inst.n;
  flat.block_size = inst.effective_block_size();
  flat.kind = ContextKind::Directions;
  flat.directions = {horizontal_dir()};

  struct Piece {
    Rat lo, hi;
    long long rank;
  };
  std::map<std::string, std::vector<Piece>> pieces;
  long long rank = 0;
  for (const auto& c : curves) {
    std::vector<Rat> cuts;
    for (size_t v = 0; v < points.size(); ++v) {
      auto t = param_of_point(c, points[v]);
      if (t && shared[v] != c.id) cuts.push_back(*t);
    }
    std::sort(cuts.begin(), cuts.end());
    Rat prev = 0;
    for (const auto& cut : cuts) {
      pieces[c.id].push_back(Piece{prev, cut, ++rank});
      prev = cut;
    }
    pieces[c.id].push_back(Piece{prev, c.param_max(), ++rank});
  }

  std::set<std::string> emitted;
  for (int b : selected) {
    const Block& blk = inst.blocks[static_cast<size_t>(b)];
    flat.blocks.push_back(blk);
    for (const auto& id : blk.member_ids) {
      if (!emitted.insert(id).second) continue;
      const CurveSegment& cs = member_curve(id);
      const Piece* home = nullptr;
      for (const auto& p : pieces[cs.curve])
        if (cs.t_lo >= p.lo && cs.t_hi <= p.hi) home = &p;
      if (!home)
        throw InternalInvariantError("member '" + id + "' straddles a removed crossing");
      flat.members.push_back({id, horizontal_segment(cs.t_lo, cs.t_hi, Rat(home->rank))});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// The end-to-end pipeline.

SdrAssignment solve_bounded_directions(const Instance& inst, const TraceSink& trace) {
  if (inst.kind != ContextKind::Curves)
    throw PreconditionError("pipeline needs a curve instance");
  auto diags = validate_instance(inst);
  if (!diags.empty()) throw PreconditionError("invalid instance: " + diags.front());

  int n = inst.n;
  std::map<int, std::vector<std::string>> group_curves;  // group -> curve ids, sorted
  std::map<std::string, int> curve_group;
  for (const auto& c : inst.curves) {
    group_curves[c.group].push_back(c.id);
    curve_group[c.id] = c.group;
  }
  for (auto& [g, ids] : group_curves) std::sort(ids.begin(), ids.end());
  long long k = static_cast<long long>(group_curves.size());
  long long t = inst.crossing_budget;

  BigInt m_bound = bound_M(n, k, std::max<long long>(t, 1)).integer_upper_bound;
  if (BigInt(static_cast<long long>(inst.blocks.size())) < m_bound)
    throw PreconditionError("pipeline needs at least M = " + m_bound.str() + " blocks, got " +
                            std::to_string(inst.blocks.size()));

  auto member_curve = [&](const std::string& id) -> const CurveSegment& {
    return std::get<CurveSegment>(inst.member(id).payload);
  };

  // Bucket blocks by per-group composition; take a largest bucket.
  std::map<std::vector<long long>, std::vector<int>> buckets;
  for (size_t b = 0; b < inst.blocks.size(); ++b) {
    std::vector<long long> comp;
    for (const auto& [g, ids] : group_curves) {
      long long c = 0;
      for (const auto& id : inst.blocks[b].member_ids)
        if (curve_group.at(member_curve(id).curve) == g) ++c;
      comp.push_back(c);
    }
    buckets[comp].push_back(static_cast<int>(b));
  }
  std::vector<long long> comp;
  std::vector<int> bucket;
  for (const auto& [key, idxs] : buckets) {
    if (idxs.size() > bucket.size()) {
      comp = key;
      bucket = idxs;
    }
  }
  emit(trace, json{{"algorithm", "pipeline"},
                   {"bucket_size", bucket.size()},
                   {"composition", comp}});

  auto verify = [&](SdrAssignment a, const char* route) {
    if (a.size() != n || !is_sdr(inst, a))
      throw InternalInvariantError(std::string("pipeline produced a non-SDR via ") + route);
    emit(trace, json{{"algorithm", "pipeline"}, {"route", route}});
    return a;
  };

  // Few-lines route: a group whose bucket segments spread over many curves.
  size_t gi = 0;
  for (const auto& [g, ids] : group_curves) {
    long long ni = comp[gi++];
    if (ni < 1) continue;
    std::set<std::string> carrying;
    for (int b : bucket)
      for (const auto& id : inst.blocks[static_cast<size_t>(b)].member_ids)
        if (curve_group.at(member_curve(id).curve) == g) carrying.insert(member_curve(id).curve);
    if (static_cast<long long>(carrying.size()) < ni * (n - ni) + 1) continue;
    if (ni < n && static_cast<long long>(bucket.size()) < n + ni - 1) continue;
    if (ni == n && static_cast<long long>(bucket.size()) < n) continue;

    // Project the bucket onto this group's mutually disjoint curves.
    std::vector<std::string> order(carrying.begin(), carrying.end());
    std::map<std::string, long long> rank;
    for (size_t i = 0; i < order.size(); ++i) rank[order[i]] = static_cast<long long>(i) + 1;
    Instance sub;
    sub.n = n;
    sub.block_size = static_cast<int>(ni);
    sub.kind = ContextKind::Directions;
    sub.directions = {horizontal_dir()};
    std::set<std::string> emitted;
    std::vector<int> sub_to_orig;
    for (int b : bucket) {
      Block nb{inst.blocks[static_cast<size_t>(b)].label, {}};
      for (const auto& id : inst.blocks[static_cast<size_t>(b)].member_ids) {
        const CurveSegment& cs = member_curve(id);
        if (curve_group.at(cs.curve) != g) continue;
        nb.member_ids.push_back(id);
        if (emitted.insert(id).second)
          sub.members.push_back({id, horizontal_segment(cs.t_lo, cs.t_hi, Rat(rank[cs.curve]))});
      }
      sub.blocks.push_back(std::move(nb));
      sub_to_orig.push_back(b);
    }
    SdrAssignment got = ni == n ? greedy_disjoint_curves(sub, trace)
                                : potential_ascent_few_lines(sub, static_cast<int>(ni), trace);
    SdrAssignment mapped;
    for (const auto& [sb, id] : got.pairs)
      mapped.pairs[sub_to_orig[static_cast<size_t>(sb)]] = id;
    return verify(std::move(mapped), "few-lines");
  }

  // Bounded-curves route: crossing-vector reduction, then the greedy sweep.
  std::set<std::string> carrying_all;
  for (int b : bucket)
    for (const auto& id : inst.blocks[static_cast<size_t>(b)].member_ids)
      carrying_all.insert(member_curve(id).curve);
  Instance sub;
  sub.n = n;
  sub.block_size = inst.effective_block_size();
  sub.kind = ContextKind::Curves;
  sub.crossing_budget = inst.crossing_budget;
  for (const auto& c : inst.curves)
    if (carrying_all.count(c.id)) sub.curves.push_back(c);
  std::set<std::string> emitted;
  std::vector<int> sub_to_orig;
  for (int b : bucket) {
    sub.blocks.push_back(inst.blocks[static_cast<size_t>(b)]);
    sub_to_orig.push_back(b);
    for (const auto& id : inst.blocks[static_cast<size_t>(b)].member_ids)
      if (emitted.insert(id).second) sub.members.push_back(inst.member(id));
  }
  CurveReduction red = pigeonhole_curve_reduction(sub);
  emit(trace, json{{"algorithm", "pipeline"},
                   {"reduction_blocks", red.selected_blocks.size()}});
  SdrAssignment got = greedy_disjoint_curves(red.flat, trace);
  SdrAssignment mapped;
  for (const auto& [fb, id] : got.pairs)
    mapped.pairs[sub_to_orig[static_cast<size_t>(red.selected_blocks[static_cast<size_t>(fb)])]] = id;
  return verify(std::move(mapped), "reduction");
}

}  // namespace sdr
