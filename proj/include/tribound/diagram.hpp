#pragma once

// Oriented link diagrams stored as half-edge records.
//
// Every crossing lists its four half-edge slots in counterclockwise order.
// A slot names the edge that ends there, whether the edge enters or leaves
// the crossing, and whether it belongs to the over- or the under-strand.
// Arcs, faces, signs and components are derived once, at construction, and
// the resulting Diagram is immutable.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "tribound/errors.hpp"
#include "tribound/util.hpp"

namespace tribound {

enum class Direction { in, out };
enum class Level { over, under };
enum class Side { left, right };

inline Side opposite(Side s) { return s == Side::left ? Side::right : Side::left; }

inline std::string to_string(Direction d) { return d == Direction::in ? "in" : "out"; }
inline std::string to_string(Level l) { return l == Level::over ? "over" : "under"; }
inline std::string to_string(Side s) { return s == Side::left ? "left" : "right"; }

struct HalfEdgeSlot {
  int edge = 0;
  Direction dir = Direction::in;
  Level level = Level::under;

  friend bool operator==(const HalfEdgeSlot&, const HalfEdgeSlot&) = default;
};

/// (crossing index, slot position); crossing index is the position in Diagram::crossings().
struct SlotRef {
  std::size_t crossing = 0;
  int slot = 0;

  friend bool operator==(const SlotRef&, const SlotRef&) = default;
};

/// One side of one edge, relative to the edge's orientation.
struct EdgeSide {
  int edge = 0;
  Side side = Side::left;

  friend bool operator==(const EdgeSide&, const EdgeSide&) = default;
  friend bool operator<(const EdgeSide& a, const EdgeSide& b) {
    if (a.edge != b.edge) return a.edge < b.edge;
    return a.side == Side::left && b.side == Side::right;
  }
};

using Slots = std::array<HalfEdgeSlot, 4>;

struct Crossing {
  int id = 0;
  Slots slots{};
  int sign = 0;
};

struct Edge {
  int id = 0;
  SlotRef tail;  // slot where the edge leaves a crossing
  SlotRef head;  // slot where it enters one
};

/// Maximal over-passing strand; edges listed along the orientation.
struct Arc {
  int id = 0;
  std::vector<int> edges;
};

struct Face {
  int id = 0;
  std::vector<EdgeSide> boundary;  // cyclic, starting at the smallest pair
};

/// Outer-face designators accepted in diagram files.
struct EdgeCycle {
  std::vector<int> edges;
};
using FaceDesignator = std::variant<int, EdgeSide, EdgeCycle>;

struct RawCrossing {
  int id = 0;
  std::vector<HalfEdgeSlot> slots;
};

/// Diagram file content before any structural checking.
struct RawDiagram {
  std::string name;
  std::vector<RawCrossing> crossings;
  FaceDesignator outer_face = 0;
};

enum class ViolationKind {
  no_crossings,
  duplicate_crossing,
  slot_count,
  slot_layout,
  orientation,
  edge_usage,
  connectivity,
  planarity,
  outer_face,
};

inline std::string to_string(ViolationKind k) {
  switch (k) {
    case ViolationKind::no_crossings: return "no_crossings";
    case ViolationKind::duplicate_crossing: return "duplicate_crossing";
    case ViolationKind::slot_count: return "slot_count";
    case ViolationKind::slot_layout: return "slot_layout";
    case ViolationKind::orientation: return "orientation";
    case ViolationKind::edge_usage: return "edge_usage";
    case ViolationKind::connectivity: return "connectivity";
    case ViolationKind::planarity: return "planarity";
    case ViolationKind::outer_face: return "outer_face";
  }
  return "unknown";
}

struct Violation {
  ViolationKind kind;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  bool has(ViolationKind k) const {
    return std::any_of(violations.begin(), violations.end(),
                       [k](const Violation& v) { return v.kind == k; });
  }
};

/// Sign of a crossing from its slot list: +1 iff the outgoing over slot is the
/// counterclockwise successor of the incoming under slot (right-hand rule).
inline int crossing_sign(const Slots& slots) {
  int under_in = -1;
  int over_out = -1;
  for (int p = 0; p < 4; ++p) {
    if (slots[p].level == Level::under && slots[p].dir == Direction::in) under_in = p;
    if (slots[p].level == Level::over && slots[p].dir == Direction::out) over_out = p;
  }
  if (under_in < 0 || over_out < 0) throw StructuralError("crossing lacks an under-in or over-out slot");
  return over_out == (under_in + 1) % 4 ? +1 : -1;
}

inline int find_slot(const Slots& slots, Level level, Direction dir) {
  for (int p = 0; p < 4; ++p)
    if (slots[p].level == level && slots[p].dir == dir) return p;
  throw StructuralError("crossing slot not found");
}

namespace detail {

struct DisjointSets {
  std::vector<std::size_t> parent;

  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

// Crossings plus edge endpoint tables; only built once slot and edge checks pass.
struct Topology {
  std::vector<Crossing> crossings;  // sorted by id
  std::vector<Edge> edges;          // sorted by id

  std::size_t edge_index(int id) const {
    auto it = std::lower_bound(edges.begin(), edges.end(), id,
                               [](const Edge& e, int v) { return e.id < v; });
    if (it == edges.end() || it->id != id) throw StructuralError("unknown edge " + std::to_string(id));
    return static_cast<std::size_t>(it - edges.begin());
  }
  const HalfEdgeSlot& slot(const SlotRef& r) const { return crossings[r.crossing].slots[r.slot]; }
  SlotRef other_end(int edge_id, const SlotRef& here) const {
    const Edge& e = edges[edge_index(edge_id)];
    return e.tail == here ? e.head : e.tail;
  }
};

struct FaceTrace {
  std::vector<Face> faces;
  std::vector<std::array<int, 4>> corner_face;  // corner k sits between slots k and k+1
  std::map<EdgeSide, int> side_face;
};

inline void check_slots(const RawDiagram& raw, ValidationReport& report) {
  if (raw.crossings.empty())
    report.violations.push_back({ViolationKind::no_crossings, "diagram has no crossings"});
  std::vector<int> ids;
  for (const auto& c : raw.crossings) ids.push_back(c.id);
  std::sort(ids.begin(), ids.end());
  for (std::size_t i = 1; i < ids.size(); ++i)
    if (ids[i] == ids[i - 1])
      report.violations.push_back(
          {ViolationKind::duplicate_crossing, "crossing id " + std::to_string(ids[i]) + " used twice"});

  for (const auto& c : raw.crossings) {
    const std::string where = "crossing " + std::to_string(c.id);
    if (c.slots.size() != 4) {
      report.violations.push_back({ViolationKind::slot_count,
                                   where + " has " + std::to_string(c.slots.size()) + " slots, expected 4"});
      continue;
    }
    bool layout_ok = true;
    for (int p = 0; p < 2; ++p)
      if (c.slots[p].level != c.slots[p + 2].level) layout_ok = false;
    if (layout_ok && c.slots[0].level == c.slots[1].level) layout_ok = false;
    if (!layout_ok) {
      report.violations.push_back(
          {ViolationKind::slot_layout, where + ": under slots and over slots must each be cyclically opposite"});
      continue;
    }
    for (Level level : {Level::under, Level::over}) {
      int ins = 0;
      int outs = 0;
      for (const auto& s : c.slots)
        if (s.level == level) (s.dir == Direction::in ? ins : outs)++;
      if (ins != 1 || outs != 1)
        report.violations.push_back({ViolationKind::orientation,
                                     where + ": " + to_string(level) + " slots need one 'in' and one 'out'"});
    }
  }
}

inline void check_edges(const RawDiagram& raw, ValidationReport& report) {
  std::map<int, std::pair<int, int>> uses;  // edge -> (#out, #in)
  for (const auto& c : raw.crossings)
    for (const auto& s : c.slots) {
      auto& u = uses[s.edge];
      (s.dir == Direction::out ? u.first : u.second)++;
    }
  for (const auto& [edge, u] : uses) {
    if (u.first + u.second != 2)
      report.violations.push_back({ViolationKind::edge_usage, "edge " + std::to_string(edge) + " appears " +
                                                                  std::to_string(u.first + u.second) +
                                                                  " times, expected 2"});
    else if (u.first != 1)
      report.violations.push_back({ViolationKind::edge_usage,
                                   "edge " + std::to_string(edge) + " needs one 'out' and one 'in' endpoint"});
  }
}

inline Topology make_topology(const RawDiagram& raw) {
  Topology t;
  for (const auto& rc : raw.crossings) {
    Crossing c;
    c.id = rc.id;
    std::copy(rc.slots.begin(), rc.slots.end(), c.slots.begin());
    c.sign = crossing_sign(c.slots);
    t.crossings.push_back(c);
  }
  std::sort(t.crossings.begin(), t.crossings.end(),
            [](const Crossing& a, const Crossing& b) { return a.id < b.id; });
  std::map<int, Edge> edges;
  for (std::size_t ci = 0; ci < t.crossings.size(); ++ci)
    for (int p = 0; p < 4; ++p) {
      const auto& s = t.crossings[ci].slots[p];
      Edge& e = edges[s.edge];
      e.id = s.edge;
      (s.dir == Direction::out ? e.tail : e.head) = SlotRef{ci, p};
    }
  for (auto& [id, e] : edges) t.edges.push_back(e);
  return t;
}

inline bool connected(const Topology& t) {
  DisjointSets ds(t.crossings.size());
  for (const auto& e : t.edges) ds.unite(e.tail.crossing, e.head.crossing);
  for (std::size_t i = 0; i < t.crossings.size(); ++i)
    if (ds.find(i) != ds.find(0)) return false;
  return true;
}

// Faces are the orbits of the corner permutation: leave corner (c, k) along
// slot k+1; the face continues at the corner just counterclockwise of the
// arrival slot. The face lies on the traveller's right.
inline FaceTrace trace(const Topology& t) {
  const std::size_t nc = t.crossings.size();
  FaceTrace out;
  out.corner_face.assign(nc, {-1, -1, -1, -1});
  std::vector<std::vector<EdgeSide>> orbits;
  std::vector<std::vector<std::pair<std::size_t, int>>> orbit_corners;
  for (std::size_t c = 0; c < nc; ++c)
    for (int k = 0; k < 4; ++k) {
      if (out.corner_face[c][k] != -1) continue;
      const int orbit = static_cast<int>(orbits.size());
      orbits.emplace_back();
      orbit_corners.emplace_back();
      std::size_t cc = c;
      int kk = k;
      while (out.corner_face[cc][kk] == -1) {
        out.corner_face[cc][kk] = orbit;
        orbit_corners.back().emplace_back(cc, kk);
        const SlotRef leave{cc, (kk + 1) % 4};
        const HalfEdgeSlot& s = t.slot(leave);
        orbits.back().push_back({s.edge, s.dir == Direction::out ? Side::right : Side::left});
        const SlotRef arrive = t.other_end(s.edge, leave);
        cc = arrive.crossing;
        kk = arrive.slot;
      }
    }

  // Deterministic ids: order faces by their smallest (edge, side) pair.
  std::vector<int> order(orbits.size());
  std::iota(order.begin(), order.end(), 0);
  auto min_pair = [&](int o) { return *std::min_element(orbits[o].begin(), orbits[o].end()); };
  std::sort(order.begin(), order.end(), [&](int a, int b) { return min_pair(a) < min_pair(b); });
  std::vector<int> renumber(orbits.size());
  for (std::size_t i = 0; i < order.size(); ++i) renumber[order[i]] = static_cast<int>(i);

  out.faces.resize(orbits.size());
  for (std::size_t o = 0; o < orbits.size(); ++o) {
    Face& f = out.faces[renumber[o]];
    f.id = renumber[o];
    auto& b = orbits[o];
    std::rotate(b.begin(), std::min_element(b.begin(), b.end()), b.end());
    f.boundary = b;
    for (const auto& es : b) out.side_face[es] = f.id;
  }
  for (auto& row : out.corner_face)
    for (int& f : row) f = renumber[f];
  return out;
}

inline std::vector<Arc> arcs_of(const Topology& t) {
  DisjointSets ds(t.edges.size());
  for (const auto& c : t.crossings) {
    const int in = find_slot(c.slots, Level::over, Direction::in);
    const int out = find_slot(c.slots, Level::over, Direction::out);
    ds.unite(t.edge_index(c.slots[in].edge), t.edge_index(c.slots[out].edge));
  }
  // Group by representative; edges are visited in id order so the first edge
  // seen of each group is its smallest.
  std::map<std::size_t, std::vector<std::size_t>> groups;
  std::vector<std::size_t> group_order;
  for (std::size_t i = 0; i < t.edges.size(); ++i) {
    const std::size_t r = ds.find(i);
    if (!groups.count(r)) group_order.push_back(r);
    groups[r].push_back(i);
  }

  std::vector<Arc> arcs;
  for (std::size_t r : group_order) {
    const auto& members = groups[r];
    // Start at the edge leaving an under slot; a closed over-loop starts at its smallest edge.
    std::size_t start = members.front();
    for (std::size_t m : members)
      if (t.slot(t.edges[m].tail).level == Level::under) {
        start = m;
        break;
      }
    Arc arc;
    arc.id = static_cast<int>(arcs.size());
    std::size_t cur = start;
    for (std::size_t step = 0; step < members.size(); ++step) {
      arc.edges.push_back(t.edges[cur].id);
      const SlotRef head = t.edges[cur].head;
      if (t.slot(head).level == Level::under) break;
      const SlotRef next{head.crossing, (head.slot + 2) % 4};
      cur = t.edge_index(t.slot(next).edge);
      if (cur == start) break;
    }
    arcs.push_back(std::move(arc));
  }
  return arcs;
}

inline std::vector<std::vector<int>> components_of(const Topology& t) {
  std::vector<bool> seen(t.edges.size(), false);
  std::vector<std::vector<int>> comps;
  for (std::size_t i = 0; i < t.edges.size(); ++i) {
    if (seen[i]) continue;
    std::vector<int> comp;
    std::size_t cur = i;
    while (!seen[cur]) {
      seen[cur] = true;
      comp.push_back(t.edges[cur].id);
      const SlotRef head = t.edges[cur].head;
      cur = t.edge_index(t.slot(SlotRef{head.crossing, (head.slot + 2) % 4}).edge);
    }
    comps.push_back(std::move(comp));
  }
  return comps;
}

inline std::optional<int> resolve_face(const FaceDesignator& designator, const FaceTrace& faces,
                                       std::string& problem) {
  if (const int* id = std::get_if<int>(&designator)) {
    if (*id < 0 || *id >= static_cast<int>(faces.faces.size())) {
      problem = "outer face id " + std::to_string(*id) + " does not exist";
      return std::nullopt;
    }
    return *id;
  }
  if (const EdgeSide* es = std::get_if<EdgeSide>(&designator)) {
    auto it = faces.side_face.find(*es);
    if (it == faces.side_face.end()) {
      problem = "outer face designator names unknown edge " + std::to_string(es->edge);
      return std::nullopt;
    }
    return it->second;
  }
  // Edge cycle: the face whose boundary edges read as this cyclic sequence.
  const auto& want = std::get<EdgeCycle>(designator).edges;
  std::vector<int> matches;
  for (const auto& f : faces.faces) {
    if (f.boundary.size() != want.size() || want.empty()) continue;
    for (std::size_t shift = 0; shift < want.size(); ++shift) {
      bool eq = true;
      for (std::size_t i = 0; i < want.size() && eq; ++i)
        eq = f.boundary[(i + shift) % want.size()].edge == want[i];
      if (eq) {
        matches.push_back(f.id);
        break;
      }
    }
  }
  if (matches.size() != 1) {
    problem = matches.empty() ? "no face has the given boundary edge cycle"
                              : "boundary edge cycle matches more than one face";
    return std::nullopt;
  }
  return matches.front();
}

}  // namespace detail

class Diagram;
Diagram build_diagram(const RawDiagram& raw);

/// A validated oriented diagram with all derived data.
class Diagram {
 public:
  const std::string& name() const { return name_; }
  const std::vector<Crossing>& crossings() const { return topo_.crossings; }
  const std::vector<Edge>& edges() const { return topo_.edges; }
  const std::vector<Arc>& arcs() const { return arcs_; }
  const std::vector<Face>& faces() const { return faces_.faces; }
  const std::vector<std::vector<int>>& components() const { return components_; }
  int outer_face() const { return outer_face_; }

  const Crossing& crossing(int id) const { return topo_.crossings[crossing_index(id)]; }
  std::size_t crossing_index(int id) const {
    const auto& cs = topo_.crossings;
    auto it = std::lower_bound(cs.begin(), cs.end(), id, [](const Crossing& c, int v) { return c.id < v; });
    if (it == cs.end() || it->id != id) throw DomainError("unknown crossing " + std::to_string(id));
    return static_cast<std::size_t>(it - cs.begin());
  }
  const Edge& edge(int id) const { return topo_.edges[topo_.edge_index(id)]; }
  int arc_of_edge(int edge_id) const { return edge_arc_[topo_.edge_index(edge_id)]; }
  int face_on(int edge_id, Side side) const { return faces_.side_face.at(EdgeSide{edge_id, side}); }
  /// Face of the corner between slots k and k+1 of the crossing at index ci.
  int corner_face(std::size_t ci, int k) const { return faces_.corner_face.at(ci)[k]; }
  int arc_at(std::size_t ci, int slot) const { return arc_of_edge(topo_.crossings[ci].slots[slot].edge); }

  /// Same sphere code with the outer region at another face.
  Diagram with_outer_face(int face_id) const {
    if (face_id < 0 || face_id >= static_cast<int>(faces().size()))
      throw DomainError("unknown face " + std::to_string(face_id));
    Diagram d = *this;
    d.outer_face_ = face_id;
    return d;
  }

  RawDiagram to_raw() const {
    RawDiagram raw;
    raw.name = name_;
    for (const auto& c : topo_.crossings) raw.crossings.push_back({c.id, {c.slots.begin(), c.slots.end()}});
    raw.outer_face = faces().at(outer_face_).boundary.front();
    return raw;
  }

 private:
  friend Diagram build_diagram(const RawDiagram& raw);
  Diagram() = default;

  std::string name_;
  detail::Topology topo_;
  std::vector<Arc> arcs_;
  std::vector<int> edge_arc_;
  detail::FaceTrace faces_;
  std::vector<std::vector<int>> components_;
  int outer_face_ = 0;
};

/// Checks every structural invariant; the report is empty iff the diagram is valid.
inline ValidationReport validate(const RawDiagram& raw) {
  ValidationReport report;
  detail::check_slots(raw, report);
  if (!report.ok()) return report;
  detail::check_edges(raw, report);
  if (!report.ok()) return report;

  const detail::Topology topo = detail::make_topology(raw);
  if (!detail::connected(topo)) {
    report.violations.push_back({ViolationKind::connectivity, "underlying 4-valent graph is not connected"});
    return report;
  }
  const detail::FaceTrace faces = detail::trace(topo);
  const long long v = static_cast<long long>(topo.crossings.size());
  const long long e = static_cast<long long>(topo.edges.size());
  const long long f = static_cast<long long>(faces.faces.size());
  if (v - e + f != 2) {
    report.violations.push_back({ViolationKind::planarity, "Euler check failed: V - E + F = " +
                                                               std::to_string(v - e + f) + ", expected 2"});
    return report;
  }
  std::string problem;
  if (!detail::resolve_face(raw.outer_face, faces, problem))
    report.violations.push_back({ViolationKind::outer_face, problem});
  return report;
}

inline void throw_if_invalid(const ValidationReport& report) {
  if (report.ok()) return;
  std::string msg;
  for (const auto& v : report.violations) msg += (msg.empty() ? "" : "; ") + v.message;
  switch (report.violations.front().kind) {
    case ViolationKind::connectivity: throw ConnectivityError(msg);
    case ViolationKind::planarity: throw PlanarityError(msg);
    default: throw StructuralError(msg);
  }
}

/// Faces of a diagram that has passed the slot and edge checks.
inline std::vector<Face> trace_faces(const RawDiagram& raw) {
  ValidationReport report;
  detail::check_slots(raw, report);
  if (report.ok()) detail::check_edges(raw, report);
  throw_if_invalid(report);
  const auto topo = detail::make_topology(raw);
  auto faces = detail::trace(topo);
  const auto euler = static_cast<long long>(topo.crossings.size()) - static_cast<long long>(topo.edges.size()) +
                     static_cast<long long>(faces.faces.size());
  if (euler != 2) throw PlanarityError("Euler check failed: V - E + F = " + std::to_string(euler));
  return faces.faces;
}

inline std::vector<Arc> merge_arcs(const RawDiagram& raw) {
  ValidationReport report;
  detail::check_slots(raw, report);
  if (report.ok()) detail::check_edges(raw, report);
  throw_if_invalid(report);
  return detail::arcs_of(detail::make_topology(raw));
}

inline Diagram build_diagram(const RawDiagram& raw) {
  throw_if_invalid(validate(raw));
  Diagram d;
  d.name_ = raw.name;
  d.topo_ = detail::make_topology(raw);
  d.arcs_ = detail::arcs_of(d.topo_);
  d.edge_arc_.assign(d.topo_.edges.size(), -1);
  for (const auto& a : d.arcs_)
    for (int e : a.edges) d.edge_arc_[d.topo_.edge_index(e)] = a.id;
  d.faces_ = detail::trace(d.topo_);
  d.components_ = detail::components_of(d.topo_);
  std::string problem;
  d.outer_face_ = *detail::resolve_face(raw.outer_face, d.faces_, problem);
  return d;
}

inline int crossing_sign(const Diagram& d, int crossing_id) { return d.crossing(crossing_id).sign; }

inline Diagram set_outer_face(const Diagram& d, int face_id) { return d.with_outer_face(face_id); }

// ---------------------------------------------------------------------------
// JSON

namespace detail {

inline Direction parse_direction(const nlohmann::json& j) {
  const auto s = j.get<std::string>();
  if (s == "in") return Direction::in;
  if (s == "out") return Direction::out;
  throw SyntaxError("slot dir must be \"in\" or \"out\", got \"" + s + "\"");
}

inline Level parse_level(const nlohmann::json& j) {
  const auto s = j.get<std::string>();
  if (s == "over") return Level::over;
  if (s == "under") return Level::under;
  throw SyntaxError("slot level must be \"over\" or \"under\", got \"" + s + "\"");
}

inline Side parse_side(const nlohmann::json& j) {
  const auto s = j.get<std::string>();
  if (s == "left") return Side::left;
  if (s == "right") return Side::right;
  throw SyntaxError("face side must be \"left\" or \"right\", got \"" + s + "\"");
}

}  // namespace detail

inline RawDiagram raw_diagram_from_json(const nlohmann::json& j) {
  try {
    RawDiagram raw;
    raw.name = j.value("name", std::string{});
    for (const auto& jc : j.at("crossings")) {
      RawCrossing c;
      c.id = jc.at("id").get<int>();
      for (const auto& js : jc.at("slots"))
        c.slots.push_back({js.at("edge").get<int>(), detail::parse_direction(js.at("dir")),
                           detail::parse_level(js.at("level"))});
      raw.crossings.push_back(std::move(c));
    }
    const auto& of = j.at("outer_face");
    if (of.is_number_integer()) {
      raw.outer_face = of.get<int>();
    } else if (of.is_object()) {
      raw.outer_face = EdgeSide{of.at("edge").get<int>(), detail::parse_side(of.at("side"))};
    } else if (of.is_array()) {
      raw.outer_face = EdgeCycle{of.get<std::vector<int>>()};
    } else {
      throw SyntaxError("outer_face must be a face id, an {edge, side} object or an edge list");
    }
    return raw;
  } catch (const nlohmann::json::exception& e) {
    throw SyntaxError(std::string("diagram schema: ") + e.what());
  }
}

inline RawDiagram parse_raw_diagram(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SyntaxError(std::string("diagram JSON: ") + e.what(), e.byte);
  }
  return raw_diagram_from_json(j);
}

inline Diagram parse_diagram(std::string_view text) { return build_diagram(parse_raw_diagram(text)); }

inline nlohmann::json to_json(const RawDiagram& raw) {
  nlohmann::json j;
  j["name"] = raw.name;
  j["crossings"] = nlohmann::json::array();
  for (const auto& c : raw.crossings) {
    nlohmann::json slots = nlohmann::json::array();
    for (const auto& s : c.slots)
      slots.push_back({{"edge", s.edge}, {"dir", to_string(s.dir)}, {"level", to_string(s.level)}});
    j["crossings"].push_back({{"id", c.id}, {"slots", slots}});
  }
  std::visit(
      [&](const auto& d) {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, int>)
          j["outer_face"] = d;
        else if constexpr (std::is_same_v<T, EdgeSide>)
          j["outer_face"] = {{"edge", d.edge}, {"side", to_string(d.side)}};
        else
          j["outer_face"] = d.edges;
      },
      raw.outer_face);
  return j;
}

/// Diagram file content; with `derived`, also arcs, faces, signs and components.
inline nlohmann::json to_json(const Diagram& d, bool derived = false) {
  nlohmann::json j = to_json(d.to_raw());
  if (!derived) return j;
  nlohmann::json arcs = nlohmann::json::array();
  for (const auto& a : d.arcs()) arcs.push_back({{"id", a.id}, {"edges", a.edges}});
  nlohmann::json faces = nlohmann::json::array();
  for (const auto& f : d.faces()) {
    nlohmann::json b = nlohmann::json::array();
    for (const auto& es : f.boundary) b.push_back({{"edge", es.edge}, {"side", to_string(es.side)}});
    faces.push_back({{"id", f.id}, {"boundary", b}});
  }
  nlohmann::json signs = nlohmann::json::object();
  for (const auto& c : d.crossings()) signs[std::to_string(c.id)] = c.sign;
  j["derived"] = {{"arcs", arcs},
                  {"faces", faces},
                  {"signs", signs},
                  {"components", d.components()},
                  {"outer_face_id", d.outer_face()},
                  {"counts",
                   {{"crossings", d.crossings().size()},
                    {"edges", d.edges().size()},
                    {"arcs", d.arcs().size()},
                    {"faces", d.faces().size()}}}};
  return j;
}

inline std::string serialize(const Diagram& d) { return to_json(d).dump(2); }

/// Stable content hash of the sphere code plus outer-face choice.
inline std::uint64_t diagram_hash(const Diagram& d) { return fnv1a64(to_json(d).dump()); }

}  // namespace tribound
