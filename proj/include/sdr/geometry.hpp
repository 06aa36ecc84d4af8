#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sdr/errors.hpp"
#include "sdr/rational.hpp"

namespace sdr {

struct Point {
  Rat x, y;
  bool operator==(const Point&) const = default;
};

// Lexicographic (x, y) order.
bool point_less(const Point& a, const Point& b);

// Primitive integer vector with canonical sign: dy > 0, or dy == 0 and dx > 0.
// Parallel directions compare equal.
struct Direction {
  long long dx = 1, dy = 0;
  bool operator==(const Direction&) const = default;
};

Direction canonical_direction(long long dx, long long dy);

inline Direction horizontal_dir() { return Direction{1, 0}; }
inline Direction vertical_dir() { return Direction{0, 1}; }

// Closed line segment { anchor + t * direction : t in [t_lo, t_hi] }.
// t_lo == t_hi gives a degenerate point segment.
struct Segment {
  Point anchor;
  Direction dir;
  Rat t_lo, t_hi;

  Point lo_point() const;
  Point hi_point() const;
};

Segment make_segment(Point anchor, Direction dir, Rat t_lo, Rat t_hi);

// Horizontal segment [x0, x1] x {y}.
Segment horizontal_segment(const Rat& x0, const Rat& x1, const Rat& y);
// Vertical segment {x} x [y0, y1].
Segment vertical_segment(const Rat& x, const Rat& y0, const Rat& y1);

bool segments_intersect(const Segment& a, const Segment& b);

// Simple polyline curve, parameterized by arc index: edge j covers t in
// [j, j+1], affine on each edge. Vertices must make the polyline injective.
struct PolyCurve {
  std::string id;
  int group = 1;
  std::vector<Point> vertices;

  Rat param_max() const { return Rat(static_cast<long long>(vertices.size()) - 1); }
  Point point_at(const Rat& t) const;
};

// Empty string when simple; otherwise a description of the violation.
std::string check_polycurve_simple(const PolyCurve& c);

struct CurveSegment {
  std::string curve;
  Rat t_lo, t_hi;
};

class CurveTable {
 public:
  explicit CurveTable(const std::vector<PolyCurve>& curves);
  const PolyCurve& get(const std::string& id) const;  // throws PreconditionError
  const std::vector<PolyCurve>& all() const { return curves_; }

 private:
  std::vector<PolyCurve> curves_;
};

bool curve_segments_intersect(const CurveSegment& a, const CurveSegment& b,
                              const CurveTable& curves);

// All intersection points of two distinct curves, exact coordinates, sorted
// lexicographically. Throws PreconditionError on a positive-length overlap.
std::vector<Point> curve_pairwise_crossings(const PolyCurve& c1, const PolyCurve& c2);

// Observation-style flattening: members on mutually disjoint curves map to
// horizontal segments [t_lo, t_hi] x {rank}, ranks assigned by sorted curve id
// starting at 1. Disjointness of realized point sets is preserved exactly.
std::vector<Segment> flatten_disjoint_curves(const std::vector<CurveSegment>& members,
                                             const CurveTable& curves);

// Parameter of a point on a polyline, if it lies on it (smallest parameter).
std::optional<Rat> param_of_point(const PolyCurve& c, const Point& p);

// Endpoint-pair form of a closed segment; used by predicates and tests.
std::pair<Point, Point> segment_endpoints(const Segment& s);

// Intersection of two closed segments given by endpoints.
// Returns: {false, _} when disjoint; {true, point} when they meet in a single
// point; throws PreconditionError when they share a positive-length overlap
// and `reject_overlap` is set, otherwise reports some shared point.
struct SegmentMeet {
  bool hit = false;
  bool overlap = false;  // positive-length shared piece
  Point point;           // valid when hit && !overlap
};
SegmentMeet closed_segments_meet(const Point& a1, const Point& a2,
                                 const Point& b1, const Point& b2);

}  // namespace sdr
