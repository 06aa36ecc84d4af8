#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "sdr/geometry.hpp"

namespace sdr {

struct VertexPayload {
  bool operator==(const VertexPayload&) const = default;
};

struct Member {
  std::string id;
  std::variant<Segment, CurveSegment, VertexPayload> payload;
};

struct Block {
  std::string label;
  std::vector<std::string> member_ids;
};

enum class ContextKind { Directions, Curves, Graph };

struct Instance {
  int n = 1;               // target SDR size
  int block_size = 0;      // members per block; defaults to n when 0
  ContextKind kind = ContextKind::Directions;

  std::vector<Direction> directions;                       // Directions context
  std::vector<PolyCurve> curves;                           // Curves context
  long long crossing_budget = 0;                           // Curves context: t
  std::vector<std::pair<std::string, std::string>> edges;  // Graph context

  std::vector<Member> members;
  std::vector<Block> blocks;

  int effective_block_size() const { return block_size > 0 ? block_size : n; }
  const Member& member(const std::string& id) const;  // throws PreconditionError
  int member_index(const std::string& id) const;      // -1 when absent
};

// Injective map block index -> member id with pairwise-disjoint images.
struct SdrAssignment {
  std::map<int, std::string> pairs;
  int size() const { return static_cast<int>(pairs.size()); }
};

struct IntersectionGraph {
  std::vector<std::string> vertices;                 // member ids, sorted
  std::vector<std::pair<int, int>> edges;            // i < j, sorted
  std::vector<std::vector<bool>> adj;

  int index_of(const std::string& id) const;  // -1 when absent
  bool adjacent(int u, int v) const { return adj[static_cast<size_t>(u)][static_cast<size_t>(v)]; }
};

bool members_intersect(const Instance& inst, const Member& a, const Member& b);

// Empty when all instance invariants hold; one human-readable entry per violation.
std::vector<std::string> validate_instance(const Instance& inst);

IntersectionGraph build_intersection_graph(const Instance& inst);

bool is_sdr(const Instance& inst, const SdrAssignment& a);

struct SearchOptions {
  std::optional<int> target;          // stop once an SDR of this size is found
  long long node_budget = 100000000;  // backtracking nodes before giving up
};

struct SearchResult {
  int size = 0;
  SdrAssignment witness;
  long long nodes = 0;
};

// Exhaustive maximum-SDR search over (block, member) choices with
// disjointness pruning; deterministic given the instance order.
SearchResult max_sdr_bruteforce(const Instance& inst, const SearchOptions& opts = {});

// Size-n rainbow independent set over an explicit graph and block list, or
// nullopt if none exists. Blocks must be independent sets of g.
std::optional<SdrAssignment> rainbow_independent_set(const IntersectionGraph& g,
                                                     const std::vector<Block>& blocks, int n,
                                                     const SearchOptions& opts = {});

std::string to_dot(const IntersectionGraph& g);

}  // namespace sdr
