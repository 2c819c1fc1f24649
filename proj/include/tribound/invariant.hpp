#pragma once

// The weight W_f(D, phi-bar) = sum over crossings of eps * f(s, a, b), the
// value sets Phi_f(D, s), and lower-bound certificates for the number of
// type-III moves between two diagrams.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tribound/cochain.hpp"
#include "tribound/coloring.hpp"
#include "tribound/diagram.hpp"
#include "tribound/util.hpp"

namespace tribound {

struct CrossingTriple {
  int crossing = 0;
  int s = 0;  // region right of both strands
  int a = 0;  // under-arc right of the over-arc
  int b = 0;  // over-arc
  int epsilon = 0;

  friend bool operator==(const CrossingTriple&, const CrossingTriple&) = default;
};

/// Reads (s, a, b, eps) at one crossing.
///
/// With the over-strand entering at slot p, the half-plane right of the
/// over-strand holds slot p+1 and the corners p, p+1. The quadrant right of
/// both strands is the corner shared with the under-strand's right half.
inline CrossingTriple crossing_triple(const Diagram& d, const ExtendedColoring& ec, int crossing_id) {
  const std::size_t ci = d.crossing_index(crossing_id);
  const Crossing& c = d.crossings()[ci];
  const int under_in = find_slot(c.slots, Level::under, Direction::in);
  const int over_in = find_slot(c.slots, Level::over, Direction::in);
  const int corner = over_in == (under_in + 1) % 4 ? over_in : under_in;
  CrossingTriple t;
  t.crossing = c.id;
  t.b = ec.base.arc_colors.at(d.arc_at(ci, over_in));
  t.a = ec.base.arc_colors.at(d.arc_at(ci, (over_in + 1) % 4));
  t.s = ec.region_colors.at(d.corner_face(ci, corner));
  t.epsilon = c.sign;
  return t;
}

struct WeightTerm {
  CrossingTriple triple;
  Int contribution = 0;  // eps * f(s, a, b)
};

struct WeightValue {
  Int value = 0;
  std::vector<WeightTerm> per_crossing;
};

inline WeightValue weight(const Diagram& d, const ExtendedColoring& ec, const CochainFn& f) {
  if (ec.n() != f.n())
    throw ModulusMismatch("coloring is mod " + std::to_string(ec.n()) + " but f is over Z(" + std::to_string(f.n()) +
                          ")");
  WeightValue w;
  for (const auto& c : d.crossings()) {
    const CrossingTriple t = crossing_triple(d, ec, c.id);
    const Int term = detail::mul(t.epsilon, f(t.s, t.a, t.b));
    w.per_crossing.push_back({t, term});
    w.value = detail::add(w.value, term);
  }
  return w;
}

inline WeightValue weight(const Diagram& d, const Coloring& c, int s, const CochainFn& f) {
  return weight(d, extend_coloring(d, c, s), f);
}

struct PhiSet {
  std::string diagram;
  int s = 0;
  int n = 0;
  std::vector<Int> values;                     // sorted
  std::map<Int, std::vector<int>> witnesses;   // value -> coloring ids
};

/// W over all non-trivial colorings with outer color s. Coloring ids are
/// positions in enumerate_colorings order.
inline PhiSet phi_set(const Diagram& d, int s, const CochainFn& f) {
  PhiSet phi{d.name(), s, f.n(), {}, {}};
  const auto colorings = enumerate_colorings(d, f.modulus());
  for (std::size_t id = 0; id < colorings.size(); ++id) {
    if (is_trivial(colorings[id])) continue;
    const Int w = weight(d, colorings[id], s, f).value;
    phi.witnesses[w].push_back(static_cast<int>(id));
  }
  for (const auto& [v, ids] : phi.witnesses) phi.values.push_back(v);
  return phi;
}

/// Closed form for the figure-eight diagram D4 with outer color 2 and the
/// non-trivial coloring parametrised by a != b in Z(5):
///   f(2*b, a, b) + f(2*b, b, a) - f((2*b)*a, b, b*a) - f(2, a, a*b)
inline Int w4_formula(int a, int b, const CochainFn& f) {
  if (f.n() != 5) throw DomainError("the D4 closed form is defined over Z(5)");
  const Modulus n = f.modulus();
  if (!n.contains(a) || !n.contains(b)) throw DomainError("a and b must lie in Z(5)");
  if (a == b) throw DomainError("the D4 closed form needs a != b");
  auto st = [n](int x, int y) { return quandle_star(x, y, n); };
  const int tb = st(2, b);
  Wide v = 0;
  v += f(tb, a, b);
  v += f(tb, b, a);
  v -= f(st(tb, a), b, st(b, a));
  v -= f(2, a, st(a, b));
  return detail::narrow(v);
}

struct LevelVerdict {
  int level = 0;
  std::size_t level_size = 0;
  std::vector<Int> hits;  // elements of (W - Phi) that lie in Delta_level

  bool empty() const { return hits.empty(); }
};

struct BoundCertificate {
  std::string d_name;
  std::string d_hash;
  std::string d2_name;
  std::string d2_hash;
  std::string f_source;
  std::string f_canonical;
  int n = 0;
  int s = 0;
  int max_m = 0;

  int m = 0;
  bool degenerate = false;  // no non-trivial coloring on D
  std::optional<int> coloring_id;
  std::vector<int> coloring;  // arc colors of the chosen coloring on D
  Int w = 0;
  std::vector<Int> phi;          // Phi_f(D', s)
  std::vector<Int> differences;  // W - Phi, sorted
  std::vector<LevelVerdict> verdicts;
  std::optional<int> first_failed_level;
  int colorings_examined = 0;
};

namespace detail {

inline std::vector<Int> differences(Int w, const std::vector<Int>& phi) {
  std::vector<Int> out;
  for (Int p : phi) out.push_back(sub(w, p));
  sort_unique(out);
  return out;
}

}  // namespace detail

/// Best lower bound on the number of type-III moves from D to D'.
///
/// Every non-trivial coloring of D is tried; a coloring certifies m when
/// (W - Phi_f(D', s)) misses Delta_0, ..., Delta_{m-1}. The largest m wins,
/// ties going to the smallest coloring id. Delta levels come from `cache`
/// and are only computed when some coloring survives to that level.
inline BoundCertificate certify_lower_bound(const Diagram& d, const Diagram& d2, int s, const CochainFn& f,
                                            int max_m, DeltaCache& cache) {
  if (max_m < 1) throw DomainError("max_m must be at least 1");
  if (!f.modulus().contains(s)) throw DomainError("outer color outside Z(n)");

  BoundCertificate cert;
  cert.d_name = d.name();
  cert.d_hash = hex64(diagram_hash(d));
  cert.d2_name = d2.name();
  cert.d2_hash = hex64(diagram_hash(d2));
  cert.f_source = f.source();
  cert.f_canonical = f.canonical();
  cert.n = f.n();
  cert.s = s;
  cert.max_m = max_m;
  cert.phi = phi_set(d2, s, f).values;

  const auto colorings = enumerate_colorings(d, f.modulus());
  int best = -1;
  for (std::size_t id = 0; id < colorings.size() && best < max_m; ++id) {
    if (is_trivial(colorings[id])) continue;
    ++cert.colorings_examined;
    const Int w = weight(d, colorings[id], s, f).value;
    const auto diffs = detail::differences(w, cert.phi);
    std::vector<LevelVerdict> verdicts;
    int m = 0;
    while (m < max_m) {
      const auto& level = cache.get(f, m).level(m);
      LevelVerdict v{m, level.size(), sorted_intersection(diffs, level)};
      const bool clear = v.empty();
      verdicts.push_back(std::move(v));
      if (!clear) break;
      ++m;
    }
    if (m > best) {
      best = m;
      cert.m = m;
      cert.coloring_id = static_cast<int>(id);
      cert.coloring = colorings[id].arc_colors;
      cert.w = w;
      cert.differences = diffs;
      cert.verdicts = std::move(verdicts);
      cert.first_failed_level = m < max_m ? std::optional<int>(m) : std::nullopt;
    }
  }
  if (best < 0) {
    cert.degenerate = true;
    cert.m = 0;
  }
  return cert;
}

inline BoundCertificate certify_lower_bound(const Diagram& d, const Diagram& d2, int s, const CochainFn& f,
                                            int max_m) {
  DeltaCache cache;
  return certify_lower_bound(d, d2, s, f, max_m, cache);
}

// ---------------------------------------------------------------------------
// Independent re-verification

struct VerificationResult {
  std::vector<std::string> problems;
  bool ok() const { return problems.empty(); }
};

namespace detail {

// x in Delta_level, decided by x in Delta_i <=> x - k in Delta_{i-1} for some
// k in +-Im(delta f); the levels themselves are never materialised.
inline bool reachable(Int x, int level, const std::vector<Int>& signed_image) {
  if (level == 0) return x == 0;
  if (level == 1) return sorted_contains(signed_image, x);
  for (Int k : signed_image)
    if (reachable(sub(x, k), level - 1, signed_image)) return true;
  return false;
}

// All n^arcs assignments, filtered by the Fox relation.
inline std::vector<Coloring> brute_force_colorings(const Diagram& d, int n) {
  const std::size_t arcs = d.arcs().size();
  std::vector<Coloring> out;
  std::vector<int> colors(arcs, 0);
  for (;;) {
    Coloring c{n, colors};
    if (is_coloring(d, c)) out.push_back(c);
    std::size_t i = arcs;
    while (i > 0) {
      --i;
      if (++colors[i] < n) break;
      colors[i] = 0;
      if (i == 0) return out;
    }
    if (arcs == 0) return out;
  }
}

}  // namespace detail

/// Re-derives W, Phi and the level verdicts from the certificate's own
/// fields. Colorings of D' are enumerated by brute force and Delta
/// membership is decided recursively from +-Im(delta f).
inline VerificationResult verify_certificate(const BoundCertificate& cert, const Diagram& d, const Diagram& d2,
                                             const CochainFn& f) {
  VerificationResult r;
  auto fail = [&](std::string msg) { r.problems.push_back(std::move(msg)); };
  if (cert.d_hash != hex64(diagram_hash(d))) fail("hash of D does not match");
  if (cert.d2_hash != hex64(diagram_hash(d2))) fail("hash of D' does not match");
  if (cert.n != f.n() || cert.f_canonical != f.canonical()) fail("cochain does not match");
  if (cert.m < 0 || cert.m > cert.max_m) fail("certified m outside [0, max_m]");
  if (!r.ok()) return r;

  if (cert.degenerate) {
    for (const auto& c : detail::brute_force_colorings(d, f.n()))
      if (!is_trivial(c)) fail("certificate claims D has no non-trivial coloring");
    if (cert.m != 0) fail("degenerate certificate must have m = 0");
    return r;
  }

  const Coloring c{f.n(), cert.coloring};
  if (!is_coloring(d, c) || is_trivial(c)) {
    fail("stored coloring is not a non-trivial Fox coloring of D");
    return r;
  }
  const Int w = weight(d, c, cert.s, f).value;
  if (w != cert.w) fail("W mismatch: stored " + std::to_string(cert.w) + ", recomputed " + std::to_string(w));

  std::vector<Int> phi;
  for (const auto& c2 : detail::brute_force_colorings(d2, f.n()))
    if (!is_trivial(c2)) phi.push_back(weight(d2, c2, cert.s, f).value);
  sort_unique(phi);
  if (phi != cert.phi) fail("Phi(D', s) mismatch");

  const auto diffs = detail::differences(w, phi);
  const auto signed_image = symmetric_closure(image_delta(f));
  for (int i = 0; i < cert.m; ++i)
    for (Int x : diffs)
      if (detail::reachable(x, i, signed_image))
        fail("difference " + std::to_string(x) + " lies in Delta_" + std::to_string(i));
  if (cert.m < cert.max_m) {
    bool hit = false;
    for (Int x : diffs) hit = hit || detail::reachable(x, cert.m, signed_image);
    if (!hit) fail("claimed failing level " + std::to_string(cert.m) + " has no hit");
  }
  return r;
}

// ---------------------------------------------------------------------------
// JSON

inline nlohmann::json to_json(const CrossingTriple& t) {
  return {{"crossing", t.crossing}, {"s", t.s}, {"a", t.a}, {"b", t.b}, {"epsilon", t.epsilon}};
}

inline nlohmann::json to_json(const WeightValue& w) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : w.per_crossing) {
    nlohmann::json j = to_json(t.triple);
    j["contribution"] = t.contribution;
    terms.push_back(j);
  }
  return {{"value", w.value}, {"per_crossing", terms}};
}

inline nlohmann::json to_json(const PhiSet& p) {
  nlohmann::json wit = nlohmann::json::object();
  for (const auto& [v, ids] : p.witnesses) wit[std::to_string(v)] = ids;
  return {{"diagram", p.diagram}, {"s", p.s}, {"n", p.n}, {"values", p.values}, {"witnesses", wit}};
}

inline nlohmann::json to_json(const BoundCertificate& c) {
  nlohmann::json verdicts = nlohmann::json::array();
  for (const auto& v : c.verdicts)
    verdicts.push_back({{"level", v.level}, {"level_size", v.level_size}, {"empty", v.empty()}, {"hits", v.hits}});
  nlohmann::json j = {{"D", {{"name", c.d_name}, {"hash", c.d_hash}}},
                      {"D_prime", {{"name", c.d2_name}, {"hash", c.d2_hash}}},
                      {"f", c.f_source},
                      {"f_canonical", c.f_canonical},
                      {"n", c.n},
                      {"s", c.s},
                      {"max_m", c.max_m},
                      {"m", c.m},
                      {"degenerate", c.degenerate},
                      {"coloring", c.coloring},
                      {"W", c.w},
                      {"phi", c.phi},
                      {"differences", c.differences},
                      {"verdicts", verdicts},
                      {"colorings_examined", c.colorings_examined}};
  j["coloring_id"] = c.coloring_id ? nlohmann::json(*c.coloring_id) : nlohmann::json(nullptr);
  j["first_failed_level"] = c.first_failed_level ? nlohmann::json(*c.first_failed_level) : nlohmann::json(nullptr);
  return j;
}

inline BoundCertificate certificate_from_json(const nlohmann::json& j) {
  try {
    BoundCertificate c;
    c.d_name = j.at("D").at("name").get<std::string>();
    c.d_hash = j.at("D").at("hash").get<std::string>();
    c.d2_name = j.at("D_prime").at("name").get<std::string>();
    c.d2_hash = j.at("D_prime").at("hash").get<std::string>();
    c.f_source = j.at("f").get<std::string>();
    c.f_canonical = j.at("f_canonical").get<std::string>();
    c.n = j.at("n").get<int>();
    c.s = j.at("s").get<int>();
    c.max_m = j.at("max_m").get<int>();
    c.m = j.at("m").get<int>();
    c.degenerate = j.at("degenerate").get<bool>();
    c.coloring = j.at("coloring").get<std::vector<int>>();
    c.w = j.at("W").get<Int>();
    c.phi = j.at("phi").get<std::vector<Int>>();
    c.differences = j.at("differences").get<std::vector<Int>>();
    for (const auto& v : j.at("verdicts"))
      c.verdicts.push_back({v.at("level").get<int>(), v.at("level_size").get<std::size_t>(),
                            v.at("hits").get<std::vector<Int>>()});
    c.colorings_examined = j.at("colorings_examined").get<int>();
    if (!j.at("coloring_id").is_null()) c.coloring_id = j.at("coloring_id").get<int>();
    if (!j.at("first_failed_level").is_null()) c.first_failed_level = j.at("first_failed_level").get<int>();
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw SyntaxError(std::string("certificate schema: ") + e.what());
  }
}

}  // namespace tribound
