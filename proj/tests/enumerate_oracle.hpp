#pragma once

// Independent exhaustive SDR enumerator used to cross-check the pruned
// backtracking oracle. Deliberately naive: an odometer over one choice per
// block (each member, or "skip"), no ordering heuristics, no pruning.

#include "sdr/model.hpp"

namespace sdr_test {

// Number of candidate assignments, or -1 when it exceeds `cap`.
inline long long candidate_count(const sdr::Instance& inst, long long cap = 1000000) {
  long long total = 1;
  for (const auto& b : inst.blocks) {
    total *= static_cast<long long>(b.member_ids.size()) + 1;
    if (total > cap) return -1;
  }
  return total;
}

inline int enumerate_max_sdr(const sdr::Instance& inst) {
  size_t nb = inst.blocks.size();
  std::vector<std::vector<int>> midx(nb);  // member indices per block
  for (size_t b = 0; b < nb; ++b)
    for (const auto& id : inst.blocks[b].member_ids) midx[b].push_back(inst.member_index(id));

  // pairwise member intersections, precomputed once
  size_t nm = inst.members.size();
  std::vector<std::vector<char>> meet(nm, std::vector<char>(nm, 0));
  for (size_t i = 0; i < nm; ++i)
    for (size_t j = 0; j < nm; ++j)
      meet[i][j] = sdr::members_intersect(inst, inst.members[i], inst.members[j]) ? 1 : 0;

  std::vector<size_t> odo(nb, 0);  // 0 = skip, v >= 1 = member v-1
  int best = 0;
  for (;;) {
    int size = 0;
    bool ok = true;
    std::vector<int> chosen;
    for (size_t b = 0; b < nb && ok; ++b) {
      if (odo[b] == 0) continue;
      int mi = midx[b][odo[b] - 1];
      for (int prev : chosen)
        if (prev == mi || meet[static_cast<size_t>(prev)][static_cast<size_t>(mi)]) {
          ok = false;
          break;
        }
      if (ok) {
        chosen.push_back(mi);
        ++size;
      }
    }
    if (ok && size > best) best = size;

    size_t pos = 0;
    while (pos < nb) {
      if (++odo[pos] <= midx[pos].size()) break;
      odo[pos] = 0;
      ++pos;
    }
    if (pos == nb) break;
  }
  return best;
}

}  // namespace sdr_test
