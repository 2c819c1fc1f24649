#pragma once

// Bundled diagrams D1-D6 and the reference values the reproduction harness
// checks them against.
//
// D1/D2, D3/D4 and D5/D6 are the trefoil, figure-eight and (2,4)-torus-link
// sphere codes; each pair differs only in the outer face. Identical copies of
// the diagram files live in fixtures/.

#include <array>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "tribound/diagram.hpp"
#include "tribound/util.hpp"

namespace tribound::fixtures {

inline constexpr std::string_view kD1 = R"json({
  "name": "D1",
  "crossings": [
    {"id": 1, "slots": [{"edge": 1, "dir": "in", "level": "under"}, {"edge": 5, "dir": "out", "level": "over"}, {"edge": 2, "dir": "out", "level": "under"}, {"edge": 4, "dir": "in", "level": "over"}]},
    {"id": 2, "slots": [{"edge": 3, "dir": "in", "level": "under"}, {"edge": 1, "dir": "out", "level": "over"}, {"edge": 4, "dir": "out", "level": "under"}, {"edge": 6, "dir": "in", "level": "over"}]},
    {"id": 3, "slots": [{"edge": 5, "dir": "in", "level": "under"}, {"edge": 3, "dir": "out", "level": "over"}, {"edge": 6, "dir": "out", "level": "under"}, {"edge": 2, "dir": "in", "level": "over"}]}
  ],
  "outer_face": {"edge": 2, "side": "left"}
}
)json";

inline constexpr std::string_view kD2 = R"json({
  "name": "D2",
  "crossings": [
    {"id": 1, "slots": [{"edge": 1, "dir": "in", "level": "under"}, {"edge": 5, "dir": "out", "level": "over"}, {"edge": 2, "dir": "out", "level": "under"}, {"edge": 4, "dir": "in", "level": "over"}]},
    {"id": 2, "slots": [{"edge": 3, "dir": "in", "level": "under"}, {"edge": 1, "dir": "out", "level": "over"}, {"edge": 4, "dir": "out", "level": "under"}, {"edge": 6, "dir": "in", "level": "over"}]},
    {"id": 3, "slots": [{"edge": 5, "dir": "in", "level": "under"}, {"edge": 3, "dir": "out", "level": "over"}, {"edge": 6, "dir": "out", "level": "under"}, {"edge": 2, "dir": "in", "level": "over"}]}
  ],
  "outer_face": {"edge": 1, "side": "right"}
}
)json";

inline constexpr std::string_view kD3 = R"json({
  "name": "D3",
  "crossings": [
    {"id": 1, "slots": [{"edge": 4, "dir": "out", "level": "under"}, {"edge": 2, "dir": "in", "level": "over"}, {"edge": 5, "dir": "in", "level": "under"}, {"edge": 1, "dir": "out", "level": "over"}]},
    {"id": 2, "slots": [{"edge": 8, "dir": "out", "level": "under"}, {"edge": 6, "dir": "in", "level": "over"}, {"edge": 1, "dir": "in", "level": "under"}, {"edge": 5, "dir": "out", "level": "over"}]},
    {"id": 3, "slots": [{"edge": 6, "dir": "out", "level": "under"}, {"edge": 3, "dir": "out", "level": "over"}, {"edge": 7, "dir": "in", "level": "under"}, {"edge": 4, "dir": "in", "level": "over"}]},
    {"id": 4, "slots": [{"edge": 2, "dir": "out", "level": "under"}, {"edge": 7, "dir": "out", "level": "over"}, {"edge": 3, "dir": "in", "level": "under"}, {"edge": 8, "dir": "in", "level": "over"}]}
  ],
  "outer_face": {"edge": 2, "side": "left"}
}
)json";

inline constexpr std::string_view kD4 = R"json({
  "name": "D4",
  "crossings": [
    {"id": 1, "slots": [{"edge": 4, "dir": "out", "level": "under"}, {"edge": 2, "dir": "in", "level": "over"}, {"edge": 5, "dir": "in", "level": "under"}, {"edge": 1, "dir": "out", "level": "over"}]},
    {"id": 2, "slots": [{"edge": 8, "dir": "out", "level": "under"}, {"edge": 6, "dir": "in", "level": "over"}, {"edge": 1, "dir": "in", "level": "under"}, {"edge": 5, "dir": "out", "level": "over"}]},
    {"id": 3, "slots": [{"edge": 6, "dir": "out", "level": "under"}, {"edge": 3, "dir": "out", "level": "over"}, {"edge": 7, "dir": "in", "level": "under"}, {"edge": 4, "dir": "in", "level": "over"}]},
    {"id": 4, "slots": [{"edge": 2, "dir": "out", "level": "under"}, {"edge": 7, "dir": "out", "level": "over"}, {"edge": 3, "dir": "in", "level": "under"}, {"edge": 8, "dir": "in", "level": "over"}]}
  ],
  "outer_face": {"edge": 2, "side": "right"}
}
)json";

inline constexpr std::string_view kD5 = R"json({
  "name": "D5",
  "crossings": [
    {"id": 1, "slots": [{"edge": 6, "dir": "in", "level": "under"}, {"edge": 1, "dir": "out", "level": "over"}, {"edge": 7, "dir": "out", "level": "under"}, {"edge": 2, "dir": "in", "level": "over"}]},
    {"id": 2, "slots": [{"edge": 8, "dir": "in", "level": "under"}, {"edge": 3, "dir": "out", "level": "over"}, {"edge": 5, "dir": "out", "level": "under"}, {"edge": 4, "dir": "in", "level": "over"}]},
    {"id": 3, "slots": [{"edge": 2, "dir": "out", "level": "under"}, {"edge": 5, "dir": "in", "level": "over"}, {"edge": 3, "dir": "in", "level": "under"}, {"edge": 6, "dir": "out", "level": "over"}]},
    {"id": 4, "slots": [{"edge": 4, "dir": "out", "level": "under"}, {"edge": 7, "dir": "in", "level": "over"}, {"edge": 1, "dir": "in", "level": "under"}, {"edge": 8, "dir": "out", "level": "over"}]}
  ],
  "outer_face": {"edge": 2, "side": "left"}
}
)json";

inline constexpr std::string_view kD6 = R"json({
  "name": "D6",
  "crossings": [
    {"id": 1, "slots": [{"edge": 6, "dir": "in", "level": "under"}, {"edge": 1, "dir": "out", "level": "over"}, {"edge": 7, "dir": "out", "level": "under"}, {"edge": 2, "dir": "in", "level": "over"}]},
    {"id": 2, "slots": [{"edge": 8, "dir": "in", "level": "under"}, {"edge": 3, "dir": "out", "level": "over"}, {"edge": 5, "dir": "out", "level": "under"}, {"edge": 4, "dir": "in", "level": "over"}]},
    {"id": 3, "slots": [{"edge": 2, "dir": "out", "level": "under"}, {"edge": 5, "dir": "in", "level": "over"}, {"edge": 3, "dir": "in", "level": "under"}, {"edge": 6, "dir": "out", "level": "over"}]},
    {"id": 4, "slots": [{"edge": 4, "dir": "out", "level": "under"}, {"edge": 7, "dir": "in", "level": "over"}, {"edge": 1, "dir": "in", "level": "under"}, {"edge": 8, "dir": "out", "level": "over"}]}
  ],
  "outer_face": {"edge": 1, "side": "right"}
}
)json";

inline const std::map<std::string, std::string_view>& embedded() {
  static const std::map<std::string, std::string_view> files{{"d1", kD1}, {"d2", kD2}, {"d3", kD3},
                                                             {"d4", kD4}, {"d5", kD5}, {"d6", kD6}};
  return files;
}

/// Named diagrams, from the embedded copies or from a directory of dN.json files.
class FixtureLibrary {
 public:
  static FixtureLibrary bundled() {
    FixtureLibrary lib;
    for (const auto& [key, text] : embedded()) lib.diagrams_.emplace(key, parse_diagram(text));
    return lib;
  }

  static FixtureLibrary from_directory(const std::filesystem::path& dir) {
    FixtureLibrary lib;
    for (const auto& [key, text] : embedded()) {
      const auto path = dir / (key + ".json");
      std::ifstream in(path);
      if (!in) throw Error("missing fixture file " + path.string());
      std::stringstream buf;
      buf << in.rdbuf();
      lib.diagrams_.emplace(key, parse_diagram(buf.str()));
    }
    return lib;
  }

  const Diagram& get(const std::string& key) const {
    auto it = diagrams_.find(key);
    if (it == diagrams_.end()) throw DomainError("unknown fixture " + key);
    return it->second;
  }

 private:
  std::map<std::string, Diagram> diagrams_;
};

struct Triple {
  int s, a, b, epsilon;
  friend auto operator<=>(const Triple&, const Triple&) = default;
};

/// One (D, D') pair with its cochain and expected results.
struct FixtureCase {
  std::string label;
  std::string d;
  std::string d2;
  int n;
  std::string f;
  int s;
  int max_m;
  int expected_m;
  Int expected_w;                  // W(D) for the coloring with `coloring_triples`
  std::vector<Triple> coloring_triples;
  std::vector<Int> expected_phi;   // Phi_f(D', s)
};

inline const std::string kTrefoilF = "(x-y)*(y-z)*z";
inline const std::string kFigureEightF = "(x+y)^3*(y+z)*(y-z)^3*z^5";
inline const std::string kTorusLinkF = "(x+y)^2*(y-z)^3*z^5";

/// (a, b) -> W(D4) for the non-trivial 5-colorings of D4 with outer color 2.
inline const std::map<std::pair<int, int>, Int>& figure_eight_table() {
  static const std::map<std::pair<int, int>, Int> t{
      {{0, 1}, 142336},   {{0, 2}, 2244931},  {{0, 3}, -1269944}, {{0, 4}, -173800},   {{1, 0}, 3765221},
      {{1, 2}, 207552},   {{1, 3}, 587264},   {{1, 4}, -1299078}, {{2, 0}, 326080},    {{2, 1}, 971928},
      {{2, 3}, 2937304},  {{2, 4}, -1135296}, {{3, 0}, -551414},  {{3, 1}, 889088},    {{3, 2}, 10555072},
      {{3, 4}, -344431},  {{4, 0}, -7107048}, {{4, 1}, -490872},  {{4, 2}, -2814033},  {{4, 3}, -1919488}};
  return t;
}

inline std::vector<Int> figure_eight_values() {
  std::vector<Int> v;
  for (const auto& [ab, w] : figure_eight_table()) v.push_back(w);
  sort_unique(v);
  return v;
}

/// delta f for f = (x-y)(y-z)z over Z(3) on every tuple with x!=y, y!=z, z!=w.
struct DeltaEntry {
  int x, y, z, w;
  Int value;
};
inline const std::vector<DeltaEntry>& trefoil_delta_table() {
  static const std::vector<DeltaEntry> t{
      {0, 1, 0, 1, 2},  {0, 1, 0, 2, 7},  {0, 1, 2, 0, 4},   {0, 1, 2, 1, -1}, {0, 2, 0, 1, 11}, {0, 2, 0, 2, 7},
      {0, 2, 1, 0, -4}, {0, 2, 1, 2, -8}, {1, 0, 1, 0, 7},   {1, 0, 1, 2, 5},  {1, 0, 2, 0, -2}, {1, 0, 2, 1, -4},
      {1, 2, 0, 1, 4},  {1, 2, 0, 2, -4}, {1, 2, 1, 0, 1},   {1, 2, 1, 2, -7}, {2, 0, 1, 0, 2},  {2, 0, 1, 2, 4},
      {2, 0, 2, 0, -7}, {2, 0, 2, 1, -5}, {2, 1, 0, 1, -5},  {2, 1, 0, 2, -4}, {2, 1, 2, 0, -1}, {2, 1, 2, 1, -2}};
  return t;
}

inline const std::vector<Int>& trefoil_delta1() {
  static const std::vector<Int> v{-11, -8, -7, -5, -4, -2, -1, 0, 1, 2, 4, 5, 7, 8, 11};
  return v;
}

inline constexpr std::size_t kFigureEightImageSize = 393;
inline constexpr std::size_t kTorusLinkImageSize = 105;

inline const std::vector<FixtureCase>& cases() {
  static const std::vector<FixtureCase> c{
      {"trefoil", "d1", "d2", 3, kTrefoilF, 0, 2, 2, -8,
       {{2, 2, 1, 1}, {2, 0, 2, 1}, {2, 1, 0, 1}},
       {-2, 2}},
      {"figure-eight", "d3", "d4", 5, kFigureEightF, 2, 3, 3, -3576,
       {{3, 2, 0, -1}, {0, 1, 3, -1}, {4, 1, 2, 1}, {4, 2, 1, 1}},
       figure_eight_values()},
      {"torus-link", "d5", "d6", 4, kTorusLinkF, 0, 3, 3, -25428,
       {{2, 1, 0, 1}, {2, 0, 3, 1}, {2, 3, 2, 1}, {2, 2, 1, 1}},
       {-3744, -1004, 0, 292}},
  };
  return c;
}

}  // namespace tribound::fixtures
