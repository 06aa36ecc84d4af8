#include "sdr/io.hpp"

#include <cmath>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "sdr/errors.hpp"

namespace sdr {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ParseError(path + ": " + what);
}

const json& field(const json& j, const std::string& path, const char* key) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(path + "." + key, "missing");
  return *it;
}

long long as_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<long long>();
}

std::string as_str(const json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

Rat as_rat(const json& j, const std::string& path) {
  try {
    if (j.is_number_integer()) return Rat(j.get<long long>());
    return parse_rational(as_str(j, path));
  } catch (const ParseError& e) {
    fail(path, e.what());
  }
}

Point as_point(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) fail(path, "expected [\"x\", \"y\"]");
  return Point{as_rat(j[0], path + "[0]"), as_rat(j[1], path + "[1]")};
}

json point_json(const Point& p) {
  return json::array({format_rational(p.x), format_rational(p.y)});
}

}  // namespace

Instance parse_instance(const std::string& document) {
  json j;
  try {
    j = json::parse(document);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  Instance inst;
  if (as_int(field(j, "$", "version"), "$.version") != 1)
    fail("$.version", "unsupported version");
  inst.n = static_cast<int>(as_int(field(j, "$", "n"), "$.n"));
  if (j.contains("block_size"))
    inst.block_size = static_cast<int>(as_int(j["block_size"], "$.block_size"));

  const json& ctx = field(j, "$", "context");
  std::string kind;
  const json* body = nullptr;
  if (ctx.is_string()) {
    kind = ctx.get<std::string>();
  } else {
    kind = as_str(field(ctx, "$.context", "kind"), "$.context.kind");
    body = &ctx;
  }
  if (kind == "directions") {
    inst.kind = ContextKind::Directions;
    if (body && body->contains("directions")) {
      const json& dirs = (*body)["directions"];
      if (!dirs.is_array()) fail("$.context.directions", "expected an array");
      for (size_t i = 0; i < dirs.size(); ++i) {
        std::string p = "$.context.directions[" + std::to_string(i) + "]";
        if (!dirs[i].is_array() || dirs[i].size() != 2) fail(p, "expected [dx, dy]");
        inst.directions.push_back(
            canonical_direction(as_int(dirs[i][0], p + "[0]"), as_int(dirs[i][1], p + "[1]")));
      }
    }
  } else if (kind == "curves") {
    inst.kind = ContextKind::Curves;
    if (!body || !body->contains("curves")) fail("$.context.curves", "missing");
    const json& cs = (*body)["curves"];
    if (!cs.is_array()) fail("$.context.curves", "expected an array");
    for (size_t i = 0; i < cs.size(); ++i) {
      std::string p = "$.context.curves[" + std::to_string(i) + "]";
      PolyCurve c;
      c.id = as_str(field(cs[i], p, "id"), p + ".id");
      c.group = static_cast<int>(as_int(field(cs[i], p, "group"), p + ".group"));
      const json& vs = field(cs[i], p, "vertices");
      if (!vs.is_array() || vs.size() < 2) fail(p + ".vertices", "expected >= 2 points");
      for (size_t v = 0; v < vs.size(); ++v)
        c.vertices.push_back(as_point(vs[v], p + ".vertices[" + std::to_string(v) + "]"));
      inst.curves.push_back(std::move(c));
    }
    if (body->contains("t")) inst.crossing_budget = as_int((*body)["t"], "$.context.t");
  } else if (kind == "graph") {
    inst.kind = ContextKind::Graph;
    if (body && body->contains("edges")) {
      const json& es = (*body)["edges"];
      if (!es.is_array()) fail("$.context.edges", "expected an array");
      for (size_t i = 0; i < es.size(); ++i) {
        std::string p = "$.context.edges[" + std::to_string(i) + "]";
        if (!es[i].is_array() || es[i].size() != 2) fail(p, "expected [id, id]");
        inst.edges.emplace_back(as_str(es[i][0], p + "[0]"), as_str(es[i][1], p + "[1]"));
      }
    }
  } else {
    fail("$.context.kind", "unknown kind '" + kind + "'");
  }

  const json& ms = field(j, "$", "members");
  if (!ms.is_array()) fail("$.members", "expected an array");
  for (size_t i = 0; i < ms.size(); ++i) {
    std::string p = "$.members[" + std::to_string(i) + "]";
    Member m;
    m.id = as_str(field(ms[i], p, "id"), p + ".id");
    std::string mk = as_str(field(ms[i], p, "kind"), p + ".kind");
    if (mk == "segment") {
      const json& d = field(ms[i], p, "dir");
      if (!d.is_array() || d.size() != 2) fail(p + ".dir", "expected [dx, dy]");
      Direction dir =
          canonical_direction(as_int(d[0], p + ".dir[0]"), as_int(d[1], p + ".dir[1]"));
      Rat lo = as_rat(field(ms[i], p, "t_lo"), p + ".t_lo");
      Rat hi = as_rat(field(ms[i], p, "t_hi"), p + ".t_hi");
      if (lo > hi) fail(p, "t_lo exceeds t_hi");
      m.payload = make_segment(as_point(field(ms[i], p, "anchor"), p + ".anchor"), dir, lo, hi);
    } else if (mk == "curve_segment") {
      CurveSegment cs;
      cs.curve = as_str(field(ms[i], p, "curve"), p + ".curve");
      cs.t_lo = as_rat(field(ms[i], p, "t_lo"), p + ".t_lo");
      cs.t_hi = as_rat(field(ms[i], p, "t_hi"), p + ".t_hi");
      if (cs.t_lo > cs.t_hi) fail(p, "t_lo exceeds t_hi");
      m.payload = cs;
    } else if (mk == "vertex") {
      m.payload = VertexPayload{};
    } else {
      fail(p + ".kind", "unknown member kind '" + mk + "'");
    }
    inst.members.push_back(std::move(m));
  }

  const json& bs = field(j, "$", "blocks");
  if (!bs.is_array()) fail("$.blocks", "expected an array");
  for (size_t i = 0; i < bs.size(); ++i) {
    std::string p = "$.blocks[" + std::to_string(i) + "]";
    Block b;
    b.label = as_str(field(bs[i], p, "label"), p + ".label");
    const json& ids = field(bs[i], p, "member_ids");
    if (!ids.is_array()) fail(p + ".member_ids", "expected an array");
    for (size_t v = 0; v < ids.size(); ++v)
      b.member_ids.push_back(as_str(ids[v], p + ".member_ids[" + std::to_string(v) + "]"));
    inst.blocks.push_back(std::move(b));
  }

  auto diags = validate_instance(inst);
  if (!diags.empty()) {
    std::string msg = "instance validation failed:";
    for (const auto& d : diags) msg += "\n  - " + d;
    throw ParseError(msg);
  }
  return inst;
}

json instance_to_json(const Instance& inst) {
  json j;
  j["version"] = 1;
  j["n"] = inst.n;
  if (inst.block_size > 0) j["block_size"] = inst.block_size;
  json ctx;
  switch (inst.kind) {
    case ContextKind::Directions: {
      ctx["kind"] = "directions";
      json dirs = json::array();
      for (const auto& d : inst.directions) dirs.push_back(json::array({d.dx, d.dy}));
      ctx["directions"] = std::move(dirs);
      break;
    }
    case ContextKind::Curves: {
      ctx["kind"] = "curves";
      json cs = json::array();
      for (const auto& c : inst.curves) {
        json vs = json::array();
        for (const auto& v : c.vertices) vs.push_back(point_json(v));
        cs.push_back(json{{"id", c.id}, {"group", c.group}, {"vertices", std::move(vs)}});
      }
      ctx["curves"] = std::move(cs);
      ctx["t"] = inst.crossing_budget;
      break;
    }
    case ContextKind::Graph: {
      ctx["kind"] = "graph";
      json es = json::array();
      for (const auto& [a, b] : inst.edges) es.push_back(json::array({a, b}));
      ctx["edges"] = std::move(es);
      break;
    }
  }
  j["context"] = std::move(ctx);

  json ms = json::array();
  for (const auto& m : inst.members) {
    json e{{"id", m.id}};
    if (const auto* s = std::get_if<Segment>(&m.payload)) {
      e["kind"] = "segment";
      e["anchor"] = point_json(s->anchor);
      e["dir"] = json::array({s->dir.dx, s->dir.dy});
      e["t_lo"] = format_rational(s->t_lo);
      e["t_hi"] = format_rational(s->t_hi);
    } else if (const auto* cs = std::get_if<CurveSegment>(&m.payload)) {
      e["kind"] = "curve_segment";
      e["curve"] = cs->curve;
      e["t_lo"] = format_rational(cs->t_lo);
      e["t_hi"] = format_rational(cs->t_hi);
    } else {
      e["kind"] = "vertex";
    }
    ms.push_back(std::move(e));
  }
  j["members"] = std::move(ms);

  json bs = json::array();
  for (const auto& b : inst.blocks)
    bs.push_back(json{{"label", b.label}, {"member_ids", b.member_ids}});
  j["blocks"] = std::move(bs);
  return j;
}

std::string serialize_instance(const Instance& inst) {
  return instance_to_json(inst).dump(2) + "\n";
}

json assignment_to_json(const Instance& inst, const SdrAssignment& a) {
  json pairs = json::array();
  for (const auto& [b, id] : a.pairs)
    pairs.push_back(json{{"block", b},
                         {"label", inst.blocks[static_cast<size_t>(b)].label},
                         {"member", id}});
  return json{{"assignment", std::move(pairs)},
              {"size", a.size()},
              {"verified", is_sdr(inst, a)}};
}

// ---------------------------------------------------------------------------
// SVG rendering.

namespace {

double to_d(const Rat& r) { return r.convert_to<double>(); }

struct Bounds {
  double x0 = 0, y0 = 0, x1 = 1, y1 = 1;
  bool any = false;
  void add(const Point& p) {
    double x = to_d(p.x), y = to_d(p.y);
    if (!any) {
      x0 = x1 = x;
      y0 = y1 = y;
      any = true;
    } else {
      x0 = std::min(x0, x);
      x1 = std::max(x1, x);
      y0 = std::min(y0, y);
      y1 = std::max(y1, y);
    }
  }
};

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

// Polyline vertices of a curve segment: fractional ends plus interior knots.
std::vector<Point> curve_piece_points(const PolyCurve& c, const Rat& lo, const Rat& hi) {
  std::vector<Point> pts{c.point_at(lo)};
  for (long long k = 0; Rat(k) <= hi; ++k)
    if (Rat(k) > lo && Rat(k) < hi) pts.push_back(c.vertices[static_cast<size_t>(k)]);
  pts.push_back(c.point_at(hi));
  return pts;
}

}  // namespace

std::string render_svg(const Instance& inst) {
  if (inst.kind == ContextKind::Graph)
    throw PreconditionError("abstract graph instances have no geometric rendering");
  CurveTable table(inst.curves);

  Bounds bb;
  for (const auto& c : inst.curves)
    for (const auto& v : c.vertices) bb.add(v);
  for (const auto& m : inst.members) {
    if (const auto* s = std::get_if<Segment>(&m.payload)) {
      bb.add(s->lo_point());
      bb.add(s->hi_point());
    }
  }
  double pad = std::max({(bb.x1 - bb.x0) * 0.05, (bb.y1 - bb.y0) * 0.05, 1.0});
  double w = bb.x1 - bb.x0 + 2 * pad, h = bb.y1 - bb.y0 + 2 * pad;

  // Map member id -> owning block index for coloring (first block wins).
  std::map<std::string, int> owner;
  for (size_t b = 0; b < inst.blocks.size(); ++b)
    for (const auto& id : inst.blocks[b].member_ids)
      owner.emplace(id, static_cast<int>(b));

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << fmt(bb.x0 - pad) << " "
      << fmt(-bb.y1 - pad) << " " << fmt(w) << " " << fmt(h) << "\">\n";
  // Faint context curves behind the members.
  for (const auto& c : inst.curves) {
    svg << "  <polyline fill=\"none\" stroke=\"#cccccc\" stroke-width=\"" << fmt(h / 300)
        << "\" points=\"";
    for (size_t i = 0; i < c.vertices.size(); ++i) {
      if (i) svg << " ";
      svg << fmt(to_d(c.vertices[i].x)) << "," << fmt(-to_d(c.vertices[i].y));
    }
    svg << "\"/>\n";
  }
  for (const auto& m : inst.members) {
    int b = owner.count(m.id) ? owner[m.id] : 0;
    const char* color = kPalette[static_cast<size_t>(b) % 8];
    double sw = h / 120;
    if (const auto* s = std::get_if<Segment>(&m.payload)) {
      Point p = s->lo_point(), q = s->hi_point();
      if (p == q) {
        svg << "  <circle id=\"" << m.id << "\" cx=\"" << fmt(to_d(p.x)) << "\" cy=\""
            << fmt(-to_d(p.y)) << "\" r=\"" << fmt(sw) << "\" fill=\"" << color << "\"/>\n";
      } else {
        svg << "  <line id=\"" << m.id << "\" x1=\"" << fmt(to_d(p.x)) << "\" y1=\""
            << fmt(-to_d(p.y)) << "\" x2=\"" << fmt(to_d(q.x)) << "\" y2=\"" << fmt(-to_d(q.y))
            << "\" stroke=\"" << color << "\" stroke-width=\"" << fmt(sw)
            << "\" stroke-linecap=\"round\"/>\n";
      }
    } else if (const auto* cs = std::get_if<CurveSegment>(&m.payload)) {
      auto pts = curve_piece_points(table.get(cs->curve), cs->t_lo, cs->t_hi);
      svg << "  <polyline id=\"" << m.id << "\" fill=\"none\" stroke=\"" << color
          << "\" stroke-width=\"" << fmt(sw) << "\" stroke-linecap=\"round\" points=\"";
      for (size_t i = 0; i < pts.size(); ++i) {
        if (i) svg << " ";
        svg << fmt(to_d(pts[i].x)) << "," << fmt(-to_d(pts[i].y));
      }
      svg << "\"/>\n";
    }
  }
  svg << "</svg>\n";
  return svg.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write '" + path + "'");
  out << content;
}

}  // namespace sdr
