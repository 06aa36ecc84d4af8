#include "sdr/model.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace sdr {

const Member& Instance::member(const std::string& id) const {
  for (const auto& m : members)
    if (m.id == id) return m;
  throw PreconditionError("unknown member id '" + id + "'");
}

int Instance::member_index(const std::string& id) const {
  for (size_t i = 0; i < members.size(); ++i)
    if (members[i].id == id) return static_cast<int>(i);
  return -1;
}

int IntersectionGraph::index_of(const std::string& id) const {
  auto it = std::lower_bound(vertices.begin(), vertices.end(), id);
  if (it == vertices.end() || *it != id) return -1;
  return static_cast<int>(it - vertices.begin());
}

bool members_intersect(const Instance& inst, const Member& a, const Member& b) {
  if (a.payload.index() != b.payload.index())
    throw PreconditionError("mixed member payload kinds in one instance");
  if (const auto* sa = std::get_if<Segment>(&a.payload))
    return segments_intersect(*sa, std::get<Segment>(b.payload));
  if (const auto* ca = std::get_if<CurveSegment>(&a.payload)) {
    CurveTable table(inst.curves);
    return curve_segments_intersect(*ca, std::get<CurveSegment>(b.payload), table);
  }
  // Abstract vertices: adjacency comes from the edge list.
  for (const auto& [u, v] : inst.edges)
    if ((u == a.id && v == b.id) || (u == b.id && v == a.id)) return true;
  return false;
}

std::vector<std::string> validate_instance(const Instance& inst) {
  std::vector<std::string> diags;
  auto report = [&](const std::string& msg) { diags.push_back(msg); };

  if (inst.n < 1) report("n must be positive");
  std::set<std::string> ids;
  for (const auto& m : inst.members) {
    if (!ids.insert(m.id).second) report("duplicate member id '" + m.id + "'");
    size_t want = inst.kind == ContextKind::Directions ? 0
                  : inst.kind == ContextKind::Curves   ? 1
                                                       : 2;
    if (m.payload.index() != want)
      report("member '" + m.id + "' payload kind does not match instance context");
  }

  if (inst.kind == ContextKind::Directions) {
    for (const auto& m : inst.members) {
      const auto* s = std::get_if<Segment>(&m.payload);
      if (!s) continue;
      if (std::find(inst.directions.begin(), inst.directions.end(), s->dir) ==
          inst.directions.end())
        report("member '" + m.id + "' uses a direction not in the direction table");
      if (s->t_lo > s->t_hi) report("member '" + m.id + "' has t_lo > t_hi");
    }
  } else if (inst.kind == ContextKind::Curves) {
    std::set<std::string> curve_ids;
    for (const auto& c : inst.curves) {
      if (!curve_ids.insert(c.id).second) report("duplicate curve id '" + c.id + "'");
      auto msg = check_polycurve_simple(c);
      if (!msg.empty()) report(msg);
    }
    for (const auto& m : inst.members) {
      const auto* cs = std::get_if<CurveSegment>(&m.payload);
      if (!cs) continue;
      if (!curve_ids.count(cs->curve)) {
        report("member '" + m.id + "' references unknown curve '" + cs->curve + "'");
        continue;
      }
      const PolyCurve* c = nullptr;
      for (const auto& cc : inst.curves)
        if (cc.id == cs->curve) c = &cc;
      if (cs->t_lo > cs->t_hi) report("member '" + m.id + "' has t_lo > t_hi");
      else if (cs->t_lo < 0 || cs->t_hi > c->param_max())
        report("member '" + m.id + "' parameter range leaves curve '" + cs->curve + "'");
    }
    for (size_t i = 0; i < inst.curves.size(); ++i) {
      for (size_t j = i + 1; j < inst.curves.size(); ++j) {
        const auto& a = inst.curves[i];
        const auto& b = inst.curves[j];
        try {
          auto crossings = curve_pairwise_crossings(a, b);
          if (a.group == b.group && !crossings.empty())
            report("same-group curves '" + a.id + "' and '" + b.id + "' intersect");
          if (a.group != b.group &&
              static_cast<long long>(crossings.size()) > inst.crossing_budget)
            report("crossing budget exceeded: curves '" + a.id + "' and '" + b.id + "' cross " +
                   std::to_string(crossings.size()) + " times, budget " +
                   std::to_string(inst.crossing_budget));
        } catch (const PreconditionError& e) {
          report(e.what());
        }
      }
    }
  } else {
    for (const auto& [u, v] : inst.edges) {
      if (u == v) report("self-loop on vertex '" + u + "'");
      if (!ids.count(u)) report("edge endpoint '" + u + "' is not a member");
      if (!ids.count(v)) report("edge endpoint '" + v + "' is not a member");
    }
  }

  for (const auto& b : inst.blocks) {
    std::set<std::string> seen;
    bool members_ok = true;
    for (const auto& id : b.member_ids) {
      if (!seen.insert(id).second)
        report("block '" + b.label + "' repeats member '" + id + "'");
      if (!ids.count(id)) {
        report("block '" + b.label + "' references unknown member '" + id + "'");
        members_ok = false;
      }
    }
    if (static_cast<int>(b.member_ids.size()) != inst.effective_block_size())
      report("block '" + b.label + "' has " + std::to_string(b.member_ids.size()) +
             " members, expected " + std::to_string(inst.effective_block_size()));
    if (!members_ok) continue;
    for (size_t i = 0; i < b.member_ids.size(); ++i) {
      for (size_t j = i + 1; j < b.member_ids.size(); ++j) {
        if (members_intersect(inst, inst.member(b.member_ids[i]), inst.member(b.member_ids[j])))
          report("block '" + b.label + "' not independent: members '" + b.member_ids[i] +
                 "' and '" + b.member_ids[j] + "' intersect");
      }
    }
  }
  return diags;
}

IntersectionGraph build_intersection_graph(const Instance& inst) {
  auto diags = validate_instance(inst);
  if (!diags.empty())
    throw PreconditionError("invalid instance: " + diags.front() +
                            (diags.size() > 1 ? " (+" + std::to_string(diags.size() - 1) +
                                                    " more)"
                                              : ""));
  IntersectionGraph g;
  for (const auto& m : inst.members) g.vertices.push_back(m.id);
  std::sort(g.vertices.begin(), g.vertices.end());
  size_t nv = g.vertices.size();
  g.adj.assign(nv, std::vector<bool>(nv, false));
  if (inst.kind == ContextKind::Graph) {
    for (const auto& [u, v] : inst.edges) {
      int i = g.index_of(u), j = g.index_of(v);
      g.adj[static_cast<size_t>(i)][static_cast<size_t>(j)] = true;
      g.adj[static_cast<size_t>(j)][static_cast<size_t>(i)] = true;
    }
  } else {
    for (size_t i = 0; i < nv; ++i) {
      for (size_t j = i + 1; j < nv; ++j) {
        if (members_intersect(inst, inst.member(g.vertices[i]), inst.member(g.vertices[j]))) {
          g.adj[i][j] = true;
          g.adj[j][i] = true;
        }
      }
    }
  }
  for (size_t i = 0; i < nv; ++i)
    for (size_t j = i + 1; j < nv; ++j)
      if (g.adj[i][j]) g.edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
  return g;
}

bool is_sdr(const Instance& inst, const SdrAssignment& a) {
  std::set<std::string> used;
  for (const auto& [bi, mid] : a.pairs) {
    if (bi < 0 || bi >= static_cast<int>(inst.blocks.size())) return false;
    const auto& ids = inst.blocks[static_cast<size_t>(bi)].member_ids;
    if (std::find(ids.begin(), ids.end(), mid) == ids.end()) return false;
    if (!used.insert(mid).second) return false;
  }
  std::vector<std::string> chosen(used.begin(), used.end());
  for (size_t i = 0; i < chosen.size(); ++i)
    for (size_t j = i + 1; j < chosen.size(); ++j)
      if (members_intersect(inst, inst.member(chosen[i]), inst.member(chosen[j]))) return false;
  return true;
}

namespace {

struct Searcher {
  const std::vector<std::vector<int>>& blocks;  // member vertex indices
  const IntersectionGraph& g;
  SearchOptions opts;

  std::vector<char> used;      // member vertex -> already chosen
  std::vector<char> blocked;   // member vertex -> conflicts with a choice (count)
  std::vector<int> conflicts;  // member vertex -> number of chosen neighbors
  std::vector<char> done;      // block -> processed
  std::vector<std::pair<int, int>> current;  // (block, member vertex)
  std::vector<std::pair<int, int>> best;
  long long nodes = 0;

  Searcher(const std::vector<std::vector<int>>& b, const IntersectionGraph& gr,
           const SearchOptions& o)
      : blocks(b), g(gr), opts(o) {
    used.assign(g.vertices.size(), 0);
    conflicts.assign(g.vertices.size(), 0);
    done.assign(blocks.size(), 0);
  }

  bool available(int v) const { return !used[static_cast<size_t>(v)] && conflicts[static_cast<size_t>(v)] == 0; }

  bool reached_target() const {
    return opts.target && static_cast<int>(best.size()) >= *opts.target;
  }

  void choose(int v) {
    used[static_cast<size_t>(v)] = 1;
    for (size_t u = 0; u < g.vertices.size(); ++u)
      if (g.adj[static_cast<size_t>(v)][u]) ++conflicts[u];
  }

  void unchoose(int v) {
    used[static_cast<size_t>(v)] = 0;
    for (size_t u = 0; u < g.vertices.size(); ++u)
      if (g.adj[static_cast<size_t>(v)][u]) --conflicts[u];
  }

  void search(int remaining) {
    if (++nodes > opts.node_budget)
      throw BudgetExceededError(
          "search node budget exceeded (" + std::to_string(opts.node_budget) + " nodes)",
          opts.node_budget);
    if (current.size() > best.size()) best = current;
    if (reached_target()) return;
    if (static_cast<int>(current.size()) + remaining <= static_cast<int>(best.size())) return;

    // Fail-first: branch on the unprocessed block with fewest available members.
    int pick = -1, pick_avail = -1;
    for (size_t b = 0; b < blocks.size(); ++b) {
      if (done[b]) continue;
      int avail = 0;
      for (int v : blocks[b])
        if (available(v)) ++avail;
      if (pick == -1 || avail < pick_avail) {
        pick = static_cast<int>(b);
        pick_avail = avail;
      }
    }
    if (pick == -1) return;

    done[static_cast<size_t>(pick)] = 1;
    for (int v : blocks[static_cast<size_t>(pick)]) {
      if (!available(v)) continue;
      choose(v);
      current.emplace_back(pick, v);
      search(remaining - 1);
      current.pop_back();
      unchoose(v);
      if (reached_target()) break;
    }
    if (!reached_target()) search(remaining - 1);  // skip this block
    done[static_cast<size_t>(pick)] = 0;
  }
};

std::pair<std::vector<std::vector<int>>, IntersectionGraph> index_blocks(
    const Instance& inst) {
  IntersectionGraph g = build_intersection_graph(inst);
  std::vector<std::vector<int>> idx;
  for (const auto& b : inst.blocks) {
    std::vector<int> v;
    for (const auto& id : b.member_ids) v.push_back(g.index_of(id));
    std::sort(v.begin(), v.end());
    idx.push_back(std::move(v));
  }
  return {std::move(idx), std::move(g)};
}

SdrAssignment to_assignment(const IntersectionGraph& g,
                            const std::vector<std::pair<int, int>>& picks) {
  SdrAssignment a;
  for (const auto& [b, v] : picks) a.pairs[b] = g.vertices[static_cast<size_t>(v)];
  return a;
}

}  // namespace

SearchResult max_sdr_bruteforce(const Instance& inst, const SearchOptions& opts) {
  auto [blocks, g] = index_blocks(inst);
  Searcher s(blocks, g, opts);
  s.search(static_cast<int>(blocks.size()));
  SearchResult r;
  r.size = static_cast<int>(s.best.size());
  r.witness = to_assignment(g, s.best);
  r.nodes = s.nodes;
  return r;
}

std::optional<SdrAssignment> rainbow_independent_set(const IntersectionGraph& g,
                                                     const std::vector<Block>& blocks, int n,
                                                     const SearchOptions& opts) {
  std::vector<std::vector<int>> idx;
  for (const auto& b : blocks) {
    std::vector<int> v;
    for (const auto& id : b.member_ids) {
      int vi = g.index_of(id);
      if (vi < 0) throw PreconditionError("block '" + b.label + "' references unknown vertex '" + id + "'");
      v.push_back(vi);
    }
    std::sort(v.begin(), v.end());
    for (size_t i = 0; i < v.size(); ++i)
      for (size_t j = i + 1; j < v.size(); ++j)
        if (g.adjacent(v[i], v[j]))
          throw PreconditionError("block '" + b.label + "' is not an independent set");
    idx.push_back(std::move(v));
  }
  SearchOptions o = opts;
  o.target = n;
  Searcher s(idx, g, o);
  s.search(static_cast<int>(idx.size()));
  if (static_cast<int>(s.best.size()) < n) return std::nullopt;
  return to_assignment(g, s.best);
}

std::string to_dot(const IntersectionGraph& g) {
  std::ostringstream os;
  os << "graph intersection {\n";
  for (const auto& v : g.vertices) os << "  \"" << v << "\";\n";
  std::vector<std::pair<std::string, std::string>> lines;
  for (const auto& [i, j] : g.edges)
    lines.emplace_back(g.vertices[static_cast<size_t>(i)], g.vertices[static_cast<size_t>(j)]);
  std::sort(lines.begin(), lines.end());
  for (const auto& [a, b] : lines) os << "  \"" << a << "\" -- \"" << b << "\";\n";
  os << "}\n";
  return os.str();
}

}  // namespace sdr
