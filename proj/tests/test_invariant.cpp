#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

using namespace tribound;
using namespace tb_test;

namespace {

const CochainFn& trefoil_cochain() {
  static const auto f = CochainFn::parse(fixtures::kTrefoilF, Modulus(3));
  return f;
}
const CochainFn& figure_eight_cochain() {
  static const auto f = CochainFn::parse(fixtures::kFigureEightF, Modulus(5));
  return f;
}
const CochainFn& torus_link_cochain() {
  static const auto f = CochainFn::parse(fixtures::kTorusLinkF, Modulus(4));
  return f;
}

std::vector<fixtures::Triple> triples_of(const Diagram& d, const ExtendedColoring& ec) {
  std::vector<fixtures::Triple> out;
  for (const auto& c : d.crossings()) {
    const auto t = crossing_triple(d, ec, c.id);
    out.push_back({t.s, t.a, t.b, t.epsilon});
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Random cochain of the form (y - z) * g, which always satisfies f(x,y,y) = 0.
CochainFn random_cochain(std::mt19937& rng, int n) {
  auto coef = [&] { return std::to_string(static_cast<int>(rng() % 7) - 3); };
  const std::string g = coef() + "*x^2*z + " + coef() + "*y^2 + " + coef() + "*x*y*z + " + coef() + "*z^3";
  return CochainFn::parse("(y-z)*(" + g + ")", Modulus(n));
}

Word concat(Word a, const Word& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

}  // namespace

TEST(Triples, TrefoilCrossings) {
  const Diagram d = load_fixture("d1");
  const auto f = trefoil_cochain();
  const std::vector<fixtures::Triple> want{{2, 2, 1, 1}, {2, 0, 2, 1}, {2, 1, 0, 1}};
  auto sorted_want = want;
  std::sort(sorted_want.begin(), sorted_want.end());
  bool found = false;
  for (const auto& c : enumerate_colorings(d, f.modulus())) {
    const auto ec = extend_coloring(d, c, 0);
    if (triples_of(d, ec) == sorted_want) {
      found = true;
      EXPECT_EQ(weight(d, ec, f).value, -8);
    }
  }
  EXPECT_TRUE(found);
}

TEST(Triples, FixtureCasesReproduceWeights) {
  const auto lib = fixtures::FixtureLibrary::bundled();
  const CochainFn* fs[] = {&trefoil_cochain(), &figure_eight_cochain(), &torus_link_cochain()};
  const auto& cases = fixtures::cases();
  ASSERT_EQ(cases.size(), 3u);
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const auto w = weight_for_triples(lib.get(cases[i].d), *fs[i], cases[i].s, cases[i].coloring_triples);
    ASSERT_TRUE(w.has_value()) << cases[i].label;
    EXPECT_EQ(*w, cases[i].expected_w) << cases[i].label;
  }
}

TEST(Triples, TrivialColoringHasEqualAB) {
  const Diagram d = load_fixture("d3");
  for (const auto& c : enumerate_colorings(d, Modulus(5))) {
    if (!is_trivial(c)) continue;
    for (const auto& t : triples_of(d, extend_coloring(d, c, 2))) EXPECT_EQ(t.a, t.b);
  }
}

TEST(Weight, ModulusMismatch) {
  const Diagram d = load_fixture("d1");
  const auto c = enumerate_colorings(d, Modulus(3)).front();
  EXPECT_THROW(weight(d, extend_coloring(d, c, 0), figure_eight_cochain()), ModulusMismatch);
}

TEST(Weight, PerCrossingTermsSum) {
  const Diagram d = load_fixture("d5");
  const auto& f = torus_link_cochain();
  for (const auto& c : enumerate_colorings(d, f.modulus())) {
    const auto w = weight(d, c, 0, f);
    Int sum = 0;
    for (const auto& t : w.per_crossing) {
      EXPECT_EQ(t.contribution, t.triple.epsilon * f(t.triple.s, t.triple.a, t.triple.b));
      sum += t.contribution;
    }
    EXPECT_EQ(sum, w.value);
  }
}

TEST(Weight, TrivialColoringsVanishOnRandomDiagrams) {
  std::mt19937 rng(101);
  for (int trial = 0; trial < 20; ++trial) {
    const int strands = 2 + static_cast<int>(rng() % 3);
    Diagram d = build_diagram(braid_closure(strands, random_word(rng, strands, strands + 2 + static_cast<int>(rng() % 5))));
    d = d.with_outer_face(static_cast<int>(rng() % d.faces().size()));
    const int n = 2 + static_cast<int>(rng() % 11);
    const CochainFn f = random_cochain(rng, n);
    for (int c0 = 0; c0 < n; ++c0) {
      Coloring c{n, std::vector<int>(d.arcs().size(), c0)};
      for (int s = 0; s < n; ++s) EXPECT_EQ(weight(d, c, s, f).value, 0);
    }
  }
}

TEST(Phi, FixtureValueSets) {
  EXPECT_EQ(phi_set(load_fixture("d1"), 0, trefoil_cochain()).values, (std::vector<Int>{-8, -1}));
  EXPECT_EQ(phi_set(load_fixture("d2"), 0, trefoil_cochain()).values, (std::vector<Int>{-2, 2}));
  EXPECT_EQ(phi_set(load_fixture("d6"), 0, torus_link_cochain()).values, (std::vector<Int>{-3744, -1004, 0, 292}));
  EXPECT_EQ(phi_set(load_fixture("d4"), 2, figure_eight_cochain()).values, fixtures::figure_eight_values());
}

TEST(Phi, FigureEightMatchesClosedForm) {
  const auto& f = figure_eight_cochain();
  std::vector<Int> closed;
  for (int a = 0; a < 5; ++a)
    for (int b = 0; b < 5; ++b)
      if (a != b) closed.push_back(w4_formula(a, b, f));
  sort_unique(closed);
  EXPECT_EQ(closed.size(), 20u);
  EXPECT_EQ(phi_set(load_fixture("d4"), 2, f).values, closed);
  for (const auto& [ab, w] : fixtures::figure_eight_table()) EXPECT_EQ(w4_formula(ab.first, ab.second, f), w);
  EXPECT_EQ(w4_formula(0, 1, f), 142336);
  EXPECT_EQ(w4_formula(3, 2, f), 10555072);
  EXPECT_EQ(w4_formula(4, 0, f), -7107048);
  EXPECT_THROW(w4_formula(1, 1, f), DomainError);
  EXPECT_THROW(w4_formula(0, 1, trefoil_cochain()), DomainError);
}

TEST(Phi, NoNonTrivialColoringGivesEmptySet) {
  EXPECT_TRUE(phi_set(load_fixture("d3"), 0, trefoil_cochain()).values.empty());
}

// Reidemeister moves realised as braid relations. Colorings of the two
// closures are matched through the colors of the closing arcs.

TEST(Moves, ReidemeisterTwoPreservesWeight) {
  std::mt19937 rng(202);
  for (int trial = 0; trial < 30; ++trial) {
    const int strands = 3;
    const Word base = random_word(rng, strands, 4);
    const int i = 1 + static_cast<int>(rng() % (strands - 1));
    const int e = rng() % 2 ? 1 : -1;
    const std::size_t cut = rng() % (base.size() + 1);
    Word moved(base.begin(), base.begin() + static_cast<long>(cut));
    moved.push_back({i, e});
    moved.push_back({i, -e});
    moved.insert(moved.end(), base.begin() + static_cast<long>(cut), base.end());
    const int n = 3 + static_cast<int>(rng() % 4);
    const CochainFn f = random_cochain(rng, n);
    const int s = static_cast<int>(rng() % n);
    const auto before = weights_by_bottom(build_diagram(braid_closure(strands, base)), strands, f, s);
    const auto after = weights_by_bottom(build_diagram(braid_closure(strands, moved)), strands, f, s);
    EXPECT_EQ(before, after);
  }
}

TEST(Moves, StabilisationPreservesWeight) {
  std::mt19937 rng(303);
  for (int trial = 0; trial < 30; ++trial) {
    const int strands = 2 + static_cast<int>(rng() % 2);
    const Word base = random_word(rng, strands, strands + 2);
    const Word moved = concat(base, {{strands, rng() % 2 ? 1 : -1}});
    const int n = 3 + static_cast<int>(rng() % 4);
    const CochainFn f = random_cochain(rng, n);
    const int s = static_cast<int>(rng() % n);
    const auto before = weights_by_bottom(build_diagram(braid_closure(strands, base)), strands, f, s);
    const auto after = weights_by_bottom(build_diagram(braid_closure(strands + 1, moved)), strands + 1, f, s);
    std::map<std::vector<int>, Int> truncated;
    for (const auto& [key, w] : after) truncated[std::vector<int>(key.begin(), key.end() - 1)] = w;
    EXPECT_EQ(before, truncated);
  }
}

TEST(Moves, ReidemeisterThreeShiftsWeightByCoboundary) {
  // sigma_i^a sigma_j^b sigma_i^c == sigma_j^c' sigma_i^b' sigma_j^a' for the
  // four sign patterns below (j = i + 1 or i - 1).
  struct Relation {
    Word lhs, rhs;
  };
  auto relations = [](int i, int j) {
    return std::vector<Relation>{
        {{{i, 1}, {j, 1}, {i, 1}}, {{j, 1}, {i, 1}, {j, 1}}},
        {{{i, -1}, {j, -1}, {i, -1}}, {{j, -1}, {i, -1}, {j, -1}}},
        {{{i, 1}, {j, 1}, {i, -1}}, {{j, -1}, {i, 1}, {j, 1}}},
        {{{i, -1}, {j, 1}, {i, 1}}, {{j, 1}, {i, 1}, {j, -1}}},
    };
  };
  std::mt19937 rng(404);
  int moves = 0, shifted = 0;
  for (int trial = 0; trial < 24; ++trial) {
    const int strands = 3 + static_cast<int>(rng() % 2);
    const Word base = random_word(rng, strands, strands + 1);
    const int i = 1 + static_cast<int>(rng() % (strands - 2));
    const auto rels = rng() % 2 ? relations(i, i + 1) : relations(i + 1, i);
    const auto& rel = rels[trial % 4];
    const std::size_t cut = rng() % (base.size() + 1);
    const Word head(base.begin(), base.begin() + static_cast<long>(cut));
    const Word tail(base.begin() + static_cast<long>(cut), base.end());
    const Word w1 = concat(concat(head, rel.lhs), tail);
    const Word w2 = concat(concat(head, rel.rhs), tail);
    for (const CochainFn* f : {&trefoil_cochain(), &torus_link_cochain(), &figure_eight_cochain()}) {
      DeltaReach reach(*f);
      const auto& delta1 = reach.level(1);
      const int s = static_cast<int>(rng() % f->n());
      const auto before = weights_by_bottom(build_diagram(braid_closure(strands, w1)), strands, *f, s);
      const auto after = weights_by_bottom(build_diagram(braid_closure(strands, w2)), strands, *f, s);
      ASSERT_EQ(before.size(), after.size());
      for (const auto& [key, w] : before) {
        ASSERT_TRUE(after.count(key));
        const Int diff = w - after.at(key);
        EXPECT_TRUE(sorted_contains(delta1, diff)) << "difference " << diff << " not in +-Im(delta f)";
        ++moves;
        shifted += diff != 0;
      }
    }
  }
  EXPECT_GT(moves, 0);
  EXPECT_GT(shifted, 0) << "no move changed W; the check would be vacuous";
}

// Certificates

TEST(Certify, FixtureBounds) {
  const auto lib = fixtures::FixtureLibrary::bundled();
  const CochainFn* fs[] = {&trefoil_cochain(), &figure_eight_cochain(), &torus_link_cochain()};
  DeltaCache cache;
  for (std::size_t i = 0; i < fixtures::cases().size(); ++i) {
    const auto& fc = fixtures::cases()[i];
    const Diagram& d = lib.get(fc.d);
    const Diagram& d2 = lib.get(fc.d2);
    const auto cert = certify_lower_bound(d, d2, fc.s, *fs[i], fc.max_m, cache);
    EXPECT_EQ(cert.m, fc.expected_m) << fc.label;
    EXPECT_FALSE(cert.degenerate);
    const auto v = verify_certificate(cert, d, d2, *fs[i]);
    EXPECT_TRUE(v.ok()) << fc.label << ": " << (v.problems.empty() ? "" : v.problems.front());
  }
}

TEST(Certify, SameDiagramGivesZero) {
  for (const auto& [key, f, s] : {std::tuple{"d1", &trefoil_cochain(), 0}, std::tuple{"d3", &figure_eight_cochain(), 2},
                                  std::tuple{"d5", &torus_link_cochain(), 0}}) {
    const Diagram d = load_fixture(key);
    const auto cert = certify_lower_bound(d, d, s, *f, 3);
    EXPECT_EQ(cert.m, 0) << key;
    ASSERT_FALSE(cert.verdicts.empty());
    EXPECT_EQ(cert.verdicts.front().hits, std::vector<Int>{0});
    EXPECT_TRUE(verify_certificate(cert, d, d, *f).ok());
  }
}

TEST(Certify, DegenerateWhenNoNonTrivialColoring) {
  const Diagram d = load_fixture("d3");
  const auto cert = certify_lower_bound(d, load_fixture("d4"), 0, trefoil_cochain(), 2);
  EXPECT_TRUE(cert.degenerate);
  EXPECT_EQ(cert.m, 0);
  EXPECT_FALSE(cert.coloring_id.has_value());
  EXPECT_TRUE(verify_certificate(cert, d, load_fixture("d4"), trefoil_cochain()).ok());
}

TEST(Certify, MonotoneInMaxM) {
  const Diagram d3 = load_fixture("d3"), d4 = load_fixture("d4");
  DeltaCache cache;
  int prev = 0;
  // Delta_3 for this cochain exceeds the default cardinality cap.
  for (int max_m = 1; max_m <= 3; ++max_m) {
    const auto cert = certify_lower_bound(d3, d4, 2, figure_eight_cochain(), max_m, cache);
    EXPECT_GE(cert.m, prev);
    EXPECT_LE(cert.m, max_m);
    prev = cert.m;
  }
  EXPECT_EQ(prev, 3);
  EXPECT_THROW(certify_lower_bound(d3, d4, 2, figure_eight_cochain(), 4, cache), CapExceeded);
}

TEST(Certify, BestColoringDominatesEverySubsearch) {
  const Diagram d5 = load_fixture("d5"), d6 = load_fixture("d6");
  const auto& f = torus_link_cochain();
  const auto cert = certify_lower_bound(d5, d6, 0, f, 3);
  DeltaReach reach(f);
  const auto phi = phi_set(d6, 0, f).values;
  int best = 0;
  std::optional<int> best_id;
  const auto colorings = enumerate_colorings(d5, f.modulus());
  for (std::size_t id = 0; id < colorings.size(); ++id) {
    if (is_trivial(colorings[id])) continue;
    const Int w = weight(d5, colorings[id], 0, f).value;
    int m = 0;
    while (m < 3) {
      bool clear = true;
      for (Int p : phi) clear = clear && !sorted_contains(reach.level(m), w - p);
      if (!clear) break;
      ++m;
    }
    EXPECT_LE(m, cert.m);
    if (!best_id || m > best) {
      best = m;
      best_id = static_cast<int>(id);
    }
  }
  EXPECT_EQ(cert.m, best);
  EXPECT_EQ(cert.coloring_id, best_id);
}

TEST(Certify, RandomPairsVerify) {
  std::mt19937 rng(505);
  DeltaCache cache;
  int emitted = 0;
  for (int trial = 0; trial < 25; ++trial) {
    const int strands = 2 + static_cast<int>(rng() % 2);
    Diagram d = build_diagram(braid_closure(strands, random_word(rng, strands, strands + 2), "A"));
    Diagram d2 = build_diagram(braid_closure(strands, random_word(rng, strands, strands + 2), "B"));
    d2 = d2.with_outer_face(static_cast<int>(rng() % d2.faces().size()));
    const CochainFn& f = trial % 2 ? trefoil_cochain() : torus_link_cochain();
    const int s = static_cast<int>(rng() % f.n());
    const auto cert = certify_lower_bound(d, d2, s, f, 2, cache);
    const auto v = verify_certificate(cert, d, d2, f);
    EXPECT_TRUE(v.ok()) << (v.problems.empty() ? "" : v.problems.front());
    ++emitted;
  }
  EXPECT_EQ(emitted, 25);
}

TEST(Certify, TamperedCertificatesAreRejected) {
  const Diagram d1 = load_fixture("d1"), d2 = load_fixture("d2");
  const auto& f = trefoil_cochain();
  const auto cert = certify_lower_bound(d1, d2, 0, f, 2);
  ASSERT_TRUE(verify_certificate(cert, d1, d2, f).ok());

  auto bad = cert;
  bad.w += 1;
  EXPECT_FALSE(verify_certificate(bad, d1, d2, f).ok());
  bad = cert;
  bad.max_m = 3;
  bad.m = 3;
  EXPECT_FALSE(verify_certificate(bad, d1, d2, f).ok());
  bad = cert;
  bad.phi.push_back(99);
  EXPECT_FALSE(verify_certificate(bad, d1, d2, f).ok());
  EXPECT_FALSE(verify_certificate(cert, d2, d1, f).ok());
  bad = cert;
  bad.coloring = {0, 0, 0};
  EXPECT_FALSE(verify_certificate(bad, d1, d2, f).ok());
}

TEST(Certify, JsonRoundTrip) {
  const Diagram d3 = load_fixture("d3"), d4 = load_fixture("d4");
  const auto cert = certify_lower_bound(d3, d4, 2, figure_eight_cochain(), 3);
  const auto back = certificate_from_json(to_json(cert));
  EXPECT_EQ(to_json(back), to_json(cert));
  EXPECT_TRUE(verify_certificate(back, d3, d4, figure_eight_cochain()).ok());
}

TEST(Certify, RejectsBadArguments) {
  const Diagram d = load_fixture("d1");
  EXPECT_THROW(certify_lower_bound(d, d, 0, trefoil_cochain(), 0), DomainError);
  EXPECT_THROW(certify_lower_bound(d, d, 3, trefoil_cochain(), 1), DomainError);
}
