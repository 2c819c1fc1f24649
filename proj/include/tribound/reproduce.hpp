#pragma once

// One-shot reproduction run over the bundled fixtures: coboundary tables,
// image sizes, the D4 closed form, fixture weights, value sets and the three
// certified bounds.

#include <algorithm>
#include <chrono>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "tribound/cochain.hpp"
#include "tribound/coloring.hpp"
#include "tribound/fixtures.hpp"
#include "tribound/invariant.hpp"

namespace tribound {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string expected;
  std::string actual;
  double millis = 0;
};

namespace detail {

template <typename Range>
std::string join(const Range& values) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (const auto& v : values) {
    os << (first ? "" : ",") << v;
    first = false;
  }
  os << '}';
  return os.str();
}

inline std::vector<fixtures::Triple> sorted_triples(const Diagram& d, const ExtendedColoring& ec) {
  std::vector<fixtures::Triple> out;
  for (const auto& c : d.crossings()) {
    const auto t = crossing_triple(d, ec, c.id);
    out.push_back({t.s, t.a, t.b, t.epsilon});
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

/// W of the coloring of d (outer color s) whose crossing triples are exactly
/// `triples`; nullopt if no coloring has them.
inline std::optional<Int> weight_for_triples(const Diagram& d, const CochainFn& f, int s,
                                             std::vector<fixtures::Triple> triples) {
  std::sort(triples.begin(), triples.end());
  for (const auto& c : enumerate_colorings(d, f.modulus())) {
    const auto ec = extend_coloring(d, c, s);
    if (detail::sorted_triples(d, ec) == triples) return weight(d, ec, f).value;
  }
  return std::nullopt;
}

inline std::vector<CheckResult> run_reproduction(const fixtures::FixtureLibrary& lib, DeltaCache& cache) {
  std::vector<CheckResult> results;
  auto check = [&](std::string name, const std::function<void(CheckResult&)>& body) {
    CheckResult r;
    r.name = std::move(name);
    const auto t0 = std::chrono::steady_clock::now();
    try {
      body(r);
    } catch (const std::exception& e) {
      r.pass = false;
      r.actual = std::string("error: ") + e.what();
    }
    r.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    results.push_back(std::move(r));
  };

  const auto trefoil_f = CochainFn::parse(fixtures::kTrefoilF, Modulus(3));
  const auto eight_f = CochainFn::parse(fixtures::kFigureEightF, Modulus(5));
  const auto torus_f = CochainFn::parse(fixtures::kTorusLinkF, Modulus(4));

  check("delta table n=3", [&](CheckResult& r) {
    r.expected = "24 tabulated values, 0 on degenerate tuples";
    int mismatches = 0;
    std::string first;
    for (const auto& e : fixtures::trefoil_delta_table()) {
      const Int v = delta_f(trefoil_f, e.x, e.y, e.z, e.w);
      if (v != e.value && mismatches++ == 0)
        first = "delta(" + std::to_string(e.x) + "," + std::to_string(e.y) + "," + std::to_string(e.z) + "," +
                std::to_string(e.w) + ") = " + std::to_string(v) + ", expected " + std::to_string(e.value);
    }
    for (int x = 0; x < 3; ++x)
      for (int y = 0; y < 3; ++y)
        for (int z = 0; z < 3; ++z)
          for (int w = 0; w < 3; ++w)
            if ((x == y || y == z || z == w) && delta_f(trefoil_f, x, y, z, w) != 0 && mismatches++ == 0)
              first = "non-zero value on a degenerate tuple";
    r.pass = mismatches == 0;
    r.actual = r.pass ? r.expected : std::to_string(mismatches) + " mismatches; first: " + first;
  });

  check("Delta_1 n=3", [&](CheckResult& r) {
    const auto& got = cache.get(trefoil_f, 1).level(1);
    r.expected = detail::join(fixtures::trefoil_delta1());
    r.actual = detail::join(got);
    r.pass = got == fixtures::trefoil_delta1();
  });

  check("|Im(delta f)| n=5", [&](CheckResult& r) {
    const auto size = cache.get(eight_f, 0).im_delta().size();
    r.expected = std::to_string(fixtures::kFigureEightImageSize);
    r.actual = std::to_string(size);
    r.pass = size == fixtures::kFigureEightImageSize;
  });

  check("|Im(delta f)| n=4", [&](CheckResult& r) {
    const auto size = cache.get(torus_f, 0).im_delta().size();
    r.expected = std::to_string(fixtures::kTorusLinkImageSize);
    r.actual = std::to_string(size);
    r.pass = size == fixtures::kTorusLinkImageSize;
  });

  check("D4 closed form table", [&](CheckResult& r) {
    r.expected = "20 tabulated values";
    std::string first;
    int mismatches = 0;
    for (const auto& [ab, w] : fixtures::figure_eight_table()) {
      const Int v = w4_formula(ab.first, ab.second, eight_f);
      if (v != w && mismatches++ == 0)
        first = "(a,b)=(" + std::to_string(ab.first) + "," + std::to_string(ab.second) + "): " + std::to_string(v) +
                ", expected " + std::to_string(w);
    }
    r.pass = mismatches == 0;
    r.actual = r.pass ? r.expected : std::to_string(mismatches) + " mismatches; first: " + first;
  });

  const CochainFn* fs[] = {&trefoil_f, &eight_f, &torus_f};
  const auto& cases = fixtures::cases();
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const auto& fc = cases[i];
    const CochainFn& f = *fs[i];
    check("W(" + lib.get(fc.d).name() + ")", [&](CheckResult& r) {
      const auto w = weight_for_triples(lib.get(fc.d), f, fc.s, fc.coloring_triples);
      r.expected = std::to_string(fc.expected_w);
      r.actual = w ? std::to_string(*w) : "no coloring with the expected crossing triples";
      r.pass = w && *w == fc.expected_w;
    });
    check("Phi(" + lib.get(fc.d2).name() + ")", [&](CheckResult& r) {
      const auto phi = phi_set(lib.get(fc.d2), fc.s, f).values;
      r.expected = detail::join(fc.expected_phi);
      r.actual = detail::join(phi);
      r.pass = phi == fc.expected_phi;
    });
  }

  check("Phi(D4) equals closed-form set", [&](CheckResult& r) {
    std::vector<Int> closed;
    for (int a = 0; a < 5; ++a)
      for (int b = 0; b < 5; ++b)
        if (a != b) closed.push_back(w4_formula(a, b, eight_f));
    sort_unique(closed);
    const auto phi = phi_set(lib.get("d4"), 2, eight_f).values;
    r.expected = detail::join(closed);
    r.actual = detail::join(phi);
    r.pass = phi == closed;
  });

  for (std::size_t i = 0; i < cases.size(); ++i) {
    const auto& fc = cases[i];
    const auto& d = lib.get(fc.d);
    const auto& d2 = lib.get(fc.d2);
    check("bound(" + d.name() + "," + d2.name() + ")", [&](CheckResult& r) {
      const auto cert = certify_lower_bound(d, d2, fc.s, *fs[i], fc.max_m, cache);
      r.expected = "m = " + std::to_string(fc.expected_m);
      r.actual = "m = " + std::to_string(cert.m);
      r.pass = cert.m == fc.expected_m;
    });
  }
  return results;
}

inline nlohmann::json to_json(const CheckResult& r) {
  return {{"name", r.name}, {"pass", r.pass}, {"expected", r.expected}, {"actual", r.actual}, {"millis", r.millis}};
}

}  // namespace tribound
