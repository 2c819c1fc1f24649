#pragma once

// Test-side helpers: braid-closure diagram generator and brute-force oracles
// that share no code with the library's enumeration or propagation logic.

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "tribound/tribound.hpp"

namespace tb_test {

using namespace tribound;

inline std::string fixture_path(const std::string& key) { return std::string(TRIBOUND_FIXTURE_DIR) + "/" + key + ".json"; }

inline std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline Diagram load_fixture(const std::string& key) { return parse_diagram(slurp(fixture_path(key))); }

/// Generator sigma_{i}^{+-1}: `strand` is 1-based, `exponent` is +1 or -1.
struct Letter {
  int strand = 1;
  int exponent = 1;
};
using Word = std::vector<Letter>;

/// Closure of a braid on `strands` strands, drawn bottom to top with the
/// closing arcs passing to the right. Crossing slots are listed
/// counterclockwise starting at the north-east leg: NE, NW, SW, SE. A positive
/// letter puts the SW-to-NE strand over. Edge ids 1..strands are the closing
/// arcs (bottom of each strand position); the outer face lies left of strand 1.
inline RawDiagram braid_closure(int strands, const Word& word, const std::string& name = "braid") {
  std::vector<int> bottom(strands), current(strands);
  for (int p = 0; p < strands; ++p) bottom[p] = current[p] = p + 1;
  std::vector<int> last_touch(strands, -1);
  for (std::size_t k = 0; k < word.size(); ++k) {
    last_touch[word[k].strand - 1] = static_cast<int>(k);
    last_touch[word[k].strand] = static_cast<int>(k);
  }
  int next_edge = strands + 1;
  RawDiagram raw;
  raw.name = name;
  for (std::size_t k = 0; k < word.size(); ++k) {
    const int i = word[k].strand - 1;
    const int sw = current[i], se = current[i + 1];
    const int nw = last_touch[i] == static_cast<int>(k) ? bottom[i] : next_edge++;
    const int ne = last_touch[i + 1] == static_cast<int>(k) ? bottom[i + 1] : next_edge++;
    const bool sw_over = word[k].exponent > 0;
    const Level a = sw_over ? Level::over : Level::under;
    const Level b = sw_over ? Level::under : Level::over;
    RawCrossing c;
    c.id = static_cast<int>(k) + 1;
    c.slots = {HalfEdgeSlot{ne, Direction::out, a}, HalfEdgeSlot{nw, Direction::out, b},
               HalfEdgeSlot{sw, Direction::in, a}, HalfEdgeSlot{se, Direction::in, b}};
    raw.crossings.push_back(c);
    current[i] = nw;
    current[i + 1] = ne;
  }
  raw.outer_face = EdgeSide{1, Side::left};
  return raw;
}

/// Random word in which every generator occurs, so the closure is connected.
inline Word random_word(std::mt19937& rng, int strands, int length) {
  Word w;
  for (int i = 1; i < strands; ++i) w.push_back({i, rng() % 2 ? 1 : -1});
  std::uniform_int_distribution<int> gen(1, strands - 1);
  while (static_cast<int>(w.size()) < length) w.push_back({gen(rng), rng() % 2 ? 1 : -1});
  std::shuffle(w.begin(), w.end(), rng);
  return w;
}

/// All colorings by brute force over n^#arcs assignments, checking the Fox
/// relation edge by edge: over-strand edges share a color and the two under
/// edges u, v at each crossing satisfy u + v = 2 * over (mod n).
inline std::vector<std::vector<int>> brute_force_arc_colorings(const Diagram& d, int n) {
  const std::size_t arcs = d.arcs().size();
  std::vector<std::vector<int>> out;
  std::vector<int> colors(arcs, 0);
  auto edge_color = [&](int e) { return colors[d.arc_of_edge(e)]; };
  while (true) {
    bool ok = true;
    for (const auto& c : d.crossings()) {
      int over = -1, under_sum = 0;
      std::set<int> over_colors;
      for (const auto& s : c.slots) {
        if (s.level == Level::over) {
          over_colors.insert(edge_color(s.edge));
          over = edge_color(s.edge);
        } else {
          under_sum += edge_color(s.edge);
        }
      }
      if (over_colors.size() != 1 || ((under_sum - 2 * over) % n + n) % n != 0) ok = false;
    }
    if (ok) out.push_back(colors);
    std::size_t k = 0;
    while (k < arcs && ++colors[k] == n) colors[k++] = 0;
    if (k == arcs) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Straightforward sumset over std::set.
inline std::vector<Int> naive_sumset(const std::vector<Int>& a, const std::vector<Int>& b) {
  std::set<Int> s;
  for (Int x : a)
    for (Int y : b) s.insert(x + y);
  return {s.begin(), s.end()};
}

/// Six-term coboundary written out independently of the library, using a
/// caller-supplied f over plain integers.
inline Int six_term(const std::function<Int(Int, Int, Int)>& f, int n, int x, int y, int z, int w) {
  auto star = [n](int a, int b) { return ((2 * b - a) % n + n) % n; };
  return f(x, z, w) - f(x, y, w) + f(x, y, z) - f(star(x, y), z, w) + f(star(x, z), star(y, z), w) -
         f(star(x, w), star(y, w), star(z, w));
}

inline Int ipow(Int b, int e) {
  Int r = 1;
  while (e-- > 0) r *= b;
  return r;
}

inline Int trefoil_f(Int x, Int y, Int z) { return (x - y) * (y - z) * z; }
inline Int figure_eight_f(Int x, Int y, Int z) { return ipow(x + y, 3) * (y + z) * ipow(y - z, 3) * ipow(z, 5); }
inline Int torus_link_f(Int x, Int y, Int z) { return ipow(x + y, 2) * ipow(y - z, 3) * ipow(z, 5); }

/// Maps each coloring's bottom colors (closing-arc edges 1..strands) to W.
inline std::map<std::vector<int>, Int> weights_by_bottom(const Diagram& d, int strands, const CochainFn& f, int s) {
  std::map<std::vector<int>, Int> out;
  for (const auto& c : enumerate_colorings(d, f.modulus())) {
    std::vector<int> key;
    for (int e = 1; e <= strands; ++e) key.push_back(c.of_edge(d, e));
    out[key] = weight(d, extend_coloring(d, c, s), f).value;
  }
  return out;
}

}  // namespace tb_test
