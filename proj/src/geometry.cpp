#include "sdr/geometry.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace sdr {

bool point_less(const Point& a, const Point& b) {
  if (a.x != b.x) return a.x < b.x;
  return a.y < b.y;
}

Direction canonical_direction(long long dx, long long dy) {
  if (dx == 0 && dy == 0) throw PreconditionError("direction vector must be nonzero");
  long long g = std::gcd(dx < 0 ? -dx : dx, dy < 0 ? -dy : dy);
  dx /= g;
  dy /= g;
  if (dy < 0 || (dy == 0 && dx < 0)) {
    dx = -dx;
    dy = -dy;
  }
  return Direction{dx, dy};
}

Point Segment::lo_point() const {
  return Point{anchor.x + t_lo * dir.dx, anchor.y + t_lo * dir.dy};
}

Point Segment::hi_point() const {
  return Point{anchor.x + t_hi * dir.dx, anchor.y + t_hi * dir.dy};
}

Segment make_segment(Point anchor, Direction dir, Rat t_lo, Rat t_hi) {
  if (t_lo > t_hi) throw PreconditionError("segment with t_lo > t_hi");
  return Segment{std::move(anchor), dir, std::move(t_lo), std::move(t_hi)};
}

Segment horizontal_segment(const Rat& x0, const Rat& x1, const Rat& y) {
  return make_segment(Point{0, y}, horizontal_dir(), x0, x1);
}

Segment vertical_segment(const Rat& x, const Rat& y0, const Rat& y1) {
  return make_segment(Point{x, 0}, vertical_dir(), y0, y1);
}

std::pair<Point, Point> segment_endpoints(const Segment& s) {
  return {s.lo_point(), s.hi_point()};
}

namespace {

// Sign of the cross product (b - a) x (c - a).
int orient(const Point& a, const Point& b, const Point& c) {
  Rat v = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
  if (v > 0) return 1;
  if (v < 0) return -1;
  return 0;
}

// p collinear with [a, b] assumed; is p within the closed bounding box?
bool in_box(const Point& a, const Point& b, const Point& p) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
         std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

}  // namespace

SegmentMeet closed_segments_meet(const Point& a1, const Point& a2,
                                 const Point& b1, const Point& b2) {
  int d1 = orient(b1, b2, a1);
  int d2 = orient(b1, b2, a2);
  int d3 = orient(a1, a2, b1);
  int d4 = orient(a1, a2, b2);

  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
      ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) {
    // Proper crossing: solve a1 + s*(a2-a1) = b1 + u*(b2-b1).
    Rat rx = a2.x - a1.x, ry = a2.y - a1.y;
    Rat sx = b2.x - b1.x, sy = b2.y - b1.y;
    Rat denom = rx * sy - ry * sx;
    Rat s = ((b1.x - a1.x) * sy - (b1.y - a1.y) * sx) / denom;
    return SegmentMeet{true, false, Point{a1.x + s * rx, a1.y + s * ry}};
  }

  // Collinear / endpoint cases. Collect shared collinear points.
  std::vector<Point> touches;
  if (d1 == 0 && in_box(b1, b2, a1)) touches.push_back(a1);
  if (d2 == 0 && in_box(b1, b2, a2)) touches.push_back(a2);
  if (d3 == 0 && in_box(a1, a2, b1)) touches.push_back(b1);
  if (d4 == 0 && in_box(a1, a2, b2)) touches.push_back(b2);
  if (touches.empty()) return SegmentMeet{};

  std::sort(touches.begin(), touches.end(), point_less);
  touches.erase(std::unique(touches.begin(), touches.end()), touches.end());
  if (touches.size() > 1) return SegmentMeet{true, true, touches.front()};
  return SegmentMeet{true, false, touches.front()};
}

bool segments_intersect(const Segment& a, const Segment& b) {
  auto [a1, a2] = segment_endpoints(a);
  auto [b1, b2] = segment_endpoints(b);
  return closed_segments_meet(a1, a2, b1, b2).hit;
}

Point PolyCurve::point_at(const Rat& t) const {
  if (t < 0 || t > param_max()) throw PreconditionError("curve parameter out of range on " + id);
  BigInt fl = numerator(t) / denominator(t);  // t >= 0, floor
  long long j = fl.convert_to<long long>();
  if (j == static_cast<long long>(vertices.size()) - 1) --j;  // t == param_max
  Rat f = t - Rat(j);
  const Point& p = vertices[static_cast<size_t>(j)];
  const Point& q = vertices[static_cast<size_t>(j) + 1];
  return Point{p.x + f * (q.x - p.x), p.y + f * (q.y - p.y)};
}

std::string check_polycurve_simple(const PolyCurve& c) {
  size_t m = c.vertices.size();
  if (m < 2) return "curve '" + c.id + "' needs at least 2 vertices";
  for (size_t i = 0; i + 1 < m; ++i)
    if (c.vertices[i] == c.vertices[i + 1])
      return "curve '" + c.id + "' has repeated consecutive vertices";
  for (size_t i = 0; i + 1 < m; ++i) {
    for (size_t j = i + 1; j + 1 < m; ++j) {
      auto meet = closed_segments_meet(c.vertices[i], c.vertices[i + 1],
                                       c.vertices[j], c.vertices[j + 1]);
      if (!meet.hit) continue;
      if (j == i + 1) {
        if (meet.overlap || !(meet.point == c.vertices[j]))
          return "curve '" + c.id + "' adjacent edges overlap beyond shared vertex";
      } else {
        return "curve '" + c.id + "' has self-intersecting edges";
      }
    }
  }
  return {};
}

CurveTable::CurveTable(const std::vector<PolyCurve>& curves) : curves_(curves) {}

const PolyCurve& CurveTable::get(const std::string& id) const {
  for (const auto& c : curves_)
    if (c.id == id) return c;
  throw PreconditionError("unknown curve id '" + id + "'");
}

namespace {

// Vertex chain of the sub-segment [t_lo, t_hi]; a single point when degenerate.
std::vector<Point> sub_polyline(const PolyCurve& c, const Rat& t_lo, const Rat& t_hi) {
  std::vector<Point> pts;
  pts.push_back(c.point_at(t_lo));
  for (long long j = 1; j < static_cast<long long>(c.vertices.size()) - 1; ++j) {
    Rat tj(j);
    if (tj > t_lo && tj < t_hi) pts.push_back(c.vertices[static_cast<size_t>(j)]);
  }
  if (t_hi > t_lo) pts.push_back(c.point_at(t_hi));
  return pts;
}

bool chains_intersect(const std::vector<Point>& a, const std::vector<Point>& b) {
  auto edges = [](const std::vector<Point>& v) {
    std::vector<std::pair<Point, Point>> e;
    if (v.size() == 1) e.emplace_back(v[0], v[0]);
    for (size_t i = 0; i + 1 < v.size(); ++i) e.emplace_back(v[i], v[i + 1]);
    return e;
  };
  for (const auto& [p1, p2] : edges(a))
    for (const auto& [q1, q2] : edges(b))
      if (closed_segments_meet(p1, p2, q1, q2).hit) return true;
  return false;
}

}  // namespace

bool curve_segments_intersect(const CurveSegment& a, const CurveSegment& b,
                              const CurveTable& curves) {
  if (a.curve == b.curve) {
    // The curve is simple, so images intersect iff parameter intervals do.
    return a.t_lo <= b.t_hi && b.t_lo <= a.t_hi;
  }
  const PolyCurve& ca = curves.get(a.curve);
  const PolyCurve& cb = curves.get(b.curve);
  return chains_intersect(sub_polyline(ca, a.t_lo, a.t_hi), sub_polyline(cb, b.t_lo, b.t_hi));
}

std::vector<Point> curve_pairwise_crossings(const PolyCurve& c1, const PolyCurve& c2) {
  if (c1.id == c2.id) throw PreconditionError("crossings of a curve with itself");
  std::vector<Point> pts;
  for (size_t i = 0; i + 1 < c1.vertices.size(); ++i) {
    for (size_t j = 0; j + 1 < c2.vertices.size(); ++j) {
      auto meet = closed_segments_meet(c1.vertices[i], c1.vertices[i + 1],
                                       c2.vertices[j], c2.vertices[j + 1]);
      if (!meet.hit) continue;
      if (meet.overlap)
        throw PreconditionError("curves '" + c1.id + "' and '" + c2.id +
                                "' overlap on a positive-length piece");
      pts.push_back(meet.point);
    }
  }
  std::sort(pts.begin(), pts.end(), point_less);
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

std::vector<Segment> flatten_disjoint_curves(const std::vector<CurveSegment>& members,
                                             const CurveTable& curves) {
  std::set<std::string> used;
  for (const auto& m : members) used.insert(m.curve);
  std::vector<std::string> ids(used.begin(), used.end());
  for (size_t i = 0; i < ids.size(); ++i) {
    for (size_t j = i + 1; j < ids.size(); ++j) {
      if (!curve_pairwise_crossings(curves.get(ids[i]), curves.get(ids[j])).empty())
        throw PreconditionError("curves '" + ids[i] + "' and '" + ids[j] +
                                "' intersect; flattening requires disjoint curves");
    }
  }
  std::map<std::string, long long> rank;
  for (size_t i = 0; i < ids.size(); ++i) rank[ids[i]] = static_cast<long long>(i) + 1;
  std::vector<Segment> out;
  out.reserve(members.size());
  for (const auto& m : members)
    out.push_back(horizontal_segment(m.t_lo, m.t_hi, Rat(rank[m.curve])));
  return out;
}

std::optional<Rat> param_of_point(const PolyCurve& c, const Point& p) {
  for (size_t j = 0; j + 1 < c.vertices.size(); ++j) {
    const Point& a = c.vertices[j];
    const Point& b = c.vertices[j + 1];
    if (orient(a, b, p) != 0 || !in_box(a, b, p)) continue;
    Rat f = (b.x != a.x) ? (p.x - a.x) / (b.x - a.x) : (p.y - a.y) / (b.y - a.y);
    return Rat(static_cast<long long>(j)) + f;
  }
  return std::nullopt;
}

}  // namespace sdr
