#pragma once

#include <functional>
#include <json.hpp>
#include <optional>

#include "sdr/model.hpp"

namespace sdr {

// Optional step-by-step trace consumer; receives one JSON object per step.
using TraceSink = std::function<void(const nlohmann::json&)>;

// Complete SDR of size inst.n for members living on mutually disjoint curves
// (or horizontal segments on lines). Repeatedly picks the member of an
// unrepresented block whose right endpoint is leftmost.
SdrAssignment greedy_disjoint_curves(const Instance& inst, const TraceSink& trace = nullptr);

// SDR of size inst.n for >= n+m-1 blocks of m disjoint horizontal segments
// spanning at least m(n-m)+1 lines. Local search whose moves strictly
// increase the potential |R|*(|L|+1) + #lines met.
SdrAssignment potential_ascent_few_lines(const Instance& inst, int m,
                                         const TraceSink& trace = nullptr);

// SDR of size inst.n for 2n-1 blocks of n-1 horizontal plus one vertical
// segment: two endpoint sweeps plus a band-based combination step.
SdrAssignment two_sweep_hv(const Instance& inst, const TraceSink& trace = nullptr);

struct CurveReduction {
  std::vector<int> selected_blocks;  // original block indices sharing a vector
  Instance flat;                     // horizontal-segment instance, same n
  // flat block i corresponds to selected_blocks[i]; flat member ids equal the
  // original member ids.
};

// Pigeonhole reduction over crossing-point vectors: returns >= n blocks whose
// members avoid or cover each crossing identically, flattened onto the
// resulting disjoint open sub-curves.
CurveReduction pigeonhole_curve_reduction(const Instance& inst);

// End-to-end pipeline for curve instances with k groups and crossing budget
// t: composition bucketing, then either the few-lines route or the
// crossing-vector reduction plus the greedy sweep.
SdrAssignment solve_bounded_directions(const Instance& inst, const TraceSink& trace = nullptr);

}  // namespace sdr
