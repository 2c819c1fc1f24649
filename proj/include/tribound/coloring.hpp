#pragma once

// Fox n-colorings of arcs and their extension to regions.

#include <deque>
#include <string>
#include <vector>

#include <json.hpp>

#include "tribound/diagram.hpp"
#include "tribound/errors.hpp"
#include "tribound/util.hpp"

namespace tribound {

/// The modulus n; colors live in Z(n) = {0, ..., n-1}.
class Modulus {
 public:
  explicit Modulus(int n) : n_(n) {
    if (n < 1) throw DomainError("modulus must be at least 1, got " + std::to_string(n));
  }
  int value() const { return n_; }
  bool contains(int color) const { return color >= 0 && color < n_; }

  friend bool operator==(const Modulus&, const Modulus&) = default;

 private:
  int n_;
};

/// x * y = 2y - x (mod n), the dihedral quandle operation.
inline int quandle_star(int x, int y, Modulus n) { return mod(2LL * y - x, n.value()); }

struct Coloring {
  int n = 1;
  std::vector<int> arc_colors;  // indexed by arc id

  int of_edge(const Diagram& d, int edge) const { return arc_colors.at(d.arc_of_edge(edge)); }
  friend bool operator==(const Coloring&, const Coloring&) = default;
};

struct ExtendedColoring {
  Coloring base;
  std::vector<int> region_colors;  // indexed by face id
  int outer_color = 0;

  int n() const { return base.n; }
};

inline bool is_trivial(const Coloring& c) {
  for (int v : c.arc_colors)
    if (v != c.arc_colors.front()) return false;
  return true;
}

/// a + c == 2b (mod n) at every crossing, for under colors a, c and over color b.
inline bool is_coloring(const Diagram& d, const Coloring& c) {
  if (c.arc_colors.size() != d.arcs().size()) return false;
  for (int v : c.arc_colors)
    if (v < 0 || v >= c.n) return false;
  for (std::size_t ci = 0; ci < d.crossings().size(); ++ci) {
    const auto& slots = d.crossings()[ci].slots;
    const int ui = find_slot(slots, Level::under, Direction::in);
    const int oi = find_slot(slots, Level::over, Direction::in);
    const int a = c.arc_colors[d.arc_at(ci, ui)];
    const int u = c.arc_colors[d.arc_at(ci, (ui + 2) % 4)];
    const int b = c.arc_colors[d.arc_at(ci, oi)];
    if (mod(a + u - 2LL * b, c.n) != 0) return false;
  }
  return true;
}

namespace detail {

// One Fox relation: under-in arc, under-out arc, over arc.
struct Relation {
  int under_in;
  int under_out;
  int over;
};

inline std::vector<Relation> relations(const Diagram& d) {
  std::vector<Relation> rs;
  for (std::size_t ci = 0; ci < d.crossings().size(); ++ci) {
    const auto& slots = d.crossings()[ci].slots;
    const int ui = find_slot(slots, Level::under, Direction::in);
    const int oi = find_slot(slots, Level::over, Direction::in);
    rs.push_back({d.arc_at(ci, ui), d.arc_at(ci, (ui + 2) % 4), d.arc_at(ci, oi)});
  }
  return rs;
}

}  // namespace detail

/// All Fox n-colorings, in lexicographic order of the arc-color vector.
///
/// Depth-first over arcs in id order. A relation is checked as soon as its
/// last arc is assigned; when that arc is an under arc whose partners are
/// already colored, its value is forced and only that value is tried.
inline std::vector<Coloring> enumerate_colorings(const Diagram& d, Modulus modulus) {
  const int n = modulus.value();
  const int arcs = static_cast<int>(d.arcs().size());
  const auto rels = detail::relations(d);

  // Relations grouped by the largest arc id they mention.
  std::vector<std::vector<detail::Relation>> closing(arcs);
  for (const auto& r : rels) closing[std::max({r.under_in, r.under_out, r.over})].push_back(r);

  std::vector<Coloring> out;
  std::vector<int> colors(arcs, 0);

  auto holds = [&](const detail::Relation& r) {
    return mod(colors[r.under_in] + colors[r.under_out] - 2LL * colors[r.over], n) == 0;
  };
  auto forced = [&](int k, int& value) {
    for (const auto& r : closing[k]) {
      if (r.over == k) continue;
      if (r.under_in == k && r.under_out == k) continue;
      const int partner = r.under_in == k ? r.under_out : r.under_in;
      value = mod(2LL * colors[r.over] - colors[partner], n);
      return true;
    }
    return false;
  };

  auto recurse = [&](auto&& self, int k) -> void {
    if (k == arcs) {
      out.push_back({n, colors});
      return;
    }
    int value = 0;
    const bool single = forced(k, value);
    const int lo = single ? value : 0;
    const int hi = single ? value + 1 : n;
    for (int v = lo; v < hi; ++v) {
      colors[k] = v;
      bool ok = true;
      for (const auto& r : closing[k])
        if (!holds(r)) {
          ok = false;
          break;
        }
      if (ok) self(self, k + 1);
    }
  };
  recurse(recurse, 0);
  return out;
}

/// The unique extended coloring whose outer region has color s.
///
/// Breadth-first from the outer face: crossing an edge of color a turns a
/// region color r into r * a.
inline ExtendedColoring extend_coloring(const Diagram& d, const Coloring& c, int s) {
  const Modulus n(c.n);
  if (!n.contains(s)) throw DomainError("outer color " + std::to_string(s) + " is not in Z(" + std::to_string(c.n) + ")");
  if (!is_coloring(d, c)) throw DomainError("input is not a Fox coloring of diagram " + d.name());

  // Face adjacency through edges.
  std::vector<std::vector<std::pair<int, int>>> adjacent(d.faces().size());  // (face, edge color)
  for (const auto& e : d.edges()) {
    const int l = d.face_on(e.id, Side::left);
    const int r = d.face_on(e.id, Side::right);
    const int a = c.of_edge(d, e.id);
    adjacent[l].push_back({r, a});
    adjacent[r].push_back({l, a});
  }

  ExtendedColoring ec{c, std::vector<int>(d.faces().size(), -1), s};
  ec.region_colors[d.outer_face()] = s;
  std::deque<int> queue{d.outer_face()};
  while (!queue.empty()) {
    const int f = queue.front();
    queue.pop_front();
    for (const auto& [g, a] : adjacent[f]) {
      const int t = quandle_star(ec.region_colors[f], a, n);
      if (ec.region_colors[g] == -1) {
        ec.region_colors[g] = t;
        queue.push_back(g);
      } else if (ec.region_colors[g] != t) {
        throw ConsistencyError("region propagation conflict at face " + std::to_string(g) + " of diagram " +
                               d.name());
      }
    }
  }
  return ec;
}

/// Edges where s + t != 2a (mod n); empty for every valid extended coloring.
inline std::vector<int> region_relation_failures(const Diagram& d, const ExtendedColoring& ec) {
  std::vector<int> bad;
  for (const auto& e : d.edges()) {
    const int s = ec.region_colors.at(d.face_on(e.id, Side::left));
    const int t = ec.region_colors.at(d.face_on(e.id, Side::right));
    if (mod(s + t - 2LL * ec.base.of_edge(d, e.id), ec.n()) != 0) bad.push_back(e.id);
  }
  return bad;
}

inline nlohmann::json to_json(const Coloring& c) {
  nlohmann::json arcs = nlohmann::json::array();
  for (std::size_t i = 0; i < c.arc_colors.size(); ++i) arcs.push_back({static_cast<int>(i), c.arc_colors[i]});
  return {{"n", c.n}, {"arcs", arcs}, {"trivial", is_trivial(c)}};
}

inline nlohmann::json to_json(const ExtendedColoring& ec) {
  nlohmann::json j = to_json(ec.base);
  nlohmann::json regions = nlohmann::json::array();
  for (std::size_t i = 0; i < ec.region_colors.size(); ++i)
    regions.push_back({static_cast<int>(i), ec.region_colors[i]});
  j["outer_color"] = ec.outer_color;
  j["regions"] = regions;
  return j;
}

}  // namespace tribound
