#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "knotoid/bracket.hpp"
#include "knotoid/lift.hpp"
#include "support/random_diagrams.hpp"

using namespace knotoid;
using knotoid_test::crossingless_knotoid;
using knotoid_test::random_trivial_diagram;

namespace {

GeneralizedGaussCode random_plain_ggc(std::mt19937& rng, int max_n) {
  const int n = std::uniform_int_distribution<int>(0, max_n)(rng);
  std::vector<Passage> ps;
  for (int l = 1; l <= n; ++l) {
    ps.push_back({l, true});
    ps.push_back({l, false});
  }
  std::shuffle(ps.begin(), ps.end(), rng);
  GeneralizedGaussCode g;
  for (const auto& p : ps) g.sequence.push_back(p);
  const int cuts = std::uniform_int_distribution<int>(0, 3)(rng);
  for (int c = 0; c < cuts; ++c)
    g.sequence.insert(
        g.sequence.begin() + std::uniform_int_distribution<size_t>(
                                 0, g.sequence.size())(rng),
        CutEntry{});
  std::uniform_int_distribution<int> coin(0, 1);
  for (int i = 0; i < n; ++i) g.signs.push_back(coin(rng) ? 1 : -1);
  return g;
}

LaurentPolynomial lift_bracket(const PlanarDiagram& d) {
  return bracket(lift_code(to_ggc(d, auto_cuts(d)))).normalized;
}

}  // namespace

TEST_CASE("worked lift example") {
  auto g = parse_ggc("1,-2,b,-1,2 / 1,1");
  auto k = lift_code(g);
  CHECK(serialize(k) == "1,-2,-3,4,2,-1,-4,3 / -1,-1,-1,-1");
  CHECK(k.kind == Kind::Knot);
}

TEST_CASE("trivial lifts") {
  CHECK(lift_code(parse_ggc(" / ")).empty());
  CHECK(lift_code(parse_ggc("b / ")).empty());
  CHECK(lift_code(parse_ggc("b,b / ")).empty());
  CHECK(lift_code(parse_ggc(" / ")).kind == Kind::Knot);
}

TEST_CASE("lift palindrome structure") {
  std::mt19937 rng(404);
  for (int trial = 0; trial < 80; ++trial) {
    auto g = random_plain_ggc(rng, 6);
    const int n = g.crossings();
    auto k = lift_code(g);
    REQUIRE((int)k.sequence.size() == 4 * n);
    CHECK(k.crossings() == 2 * n);
    for (int i = 0; i < 2 * n; ++i) {
      const auto& a = k.sequence[i];
      const auto& b = k.sequence[4 * n - 1 - i];
      CHECK(b.label == (a.label > n ? a.label - n : a.label + n));
      CHECK(b.over == a.over);
    }
    for (int l = 1; l <= n; ++l) CHECK(k.signs[l - 1] == k.signs[l - 1 + n]);
  }
}

TEST_CASE("the example lift is a trefoil") {
  auto lifted = bracket(lift_code(parse_ggc("1,-2,b,-1,2 / 1,1")));
  auto trefoil = bracket(parse_gauss("1,-2,3,-1,2,-3 / 1,1,1", Kind::Knot));
  // same knot up to mirror image
  const bool same = lifted.normalized == trefoil.normalized;
  const bool mirrored =
      lifted.normalized == trefoil.normalized.substitute_inverse();
  CHECK((same || mirrored));
  CHECK(lifted.normalized != LaurentPolynomial::one());
}

TEST_CASE("double of the crossingless knotoid is the core circle") {
  auto d = crossingless_knotoid();
  auto a = double_diagram(d);
  CHECK(a.strand_count() == 1);
  CHECK(annular_to_code(a).empty());
  CHECK(winding(a).value == 1);
  for (int t : {0, 1, 2, -1}) CHECK(twist_embed(a, t).empty());
  // a cut system crossing the strand still yields the core
  CutSystem cs{{{0, 0, 0}, {0, 1, 1}}, {}};
  auto a2 = double_diagram(d, cs);
  CHECK(a2.strand_count() == 5);
  CHECK(annular_to_code(a2).empty());
  CHECK(std::abs(winding(a2).value) == 1);
}

TEST_CASE("winding agrees with the radial reference summary") {
  std::mt19937 rng(71);
  for (int trial = 0; trial < 20; ++trial) {
    auto d = random_trivial_diagram(rng, 4);
    for (const auto& cs : enumerate_cut_systems(d, 3)) {
      auto a = double_diagram(d, cs);
      int ref = 1;
      for (const auto& r : a.radial_ref) ref += 2 * r.direction;
      CHECK(winding(a).value == ref);
      CHECK(winding(a).value % 2 != 0);
    }
  }
}

TEST_CASE("oracle equivalence of the two lift constructions") {
  std::vector<PlanarDiagram> corpus;
  corpus.push_back(realize_code(parse_gauss("-1,1,2,-3,-2,3 / 1,1,1")));
  corpus.push_back(realize_code(parse_gauss("1,-2,-1,2 / 1,1")));
  corpus.push_back(realize_code(parse_gauss("1,-1 / -1")));
  std::mt19937 rng(99);
  for (int trial = 0; trial < 4; ++trial)
    corpus.push_back(random_trivial_diagram(rng, 4));
  for (const auto& d : corpus) {
    auto systems = enumerate_cut_systems(d, 3);
    REQUIRE(!systems.empty());
    LaurentPolynomial first;
    for (size_t i = 0; i < systems.size(); ++i) {
      auto direct = bracket(lift_code(to_ggc(d, systems[i]))).normalized;
      auto a = double_diagram(d, systems[i]);
      CHECK(direct == bracket(annular_to_code(a)).normalized);
      if (i == 0)
        first = direct;
      else
        CHECK(direct == first);  // the lift is cut independent
    }
  }
}

// the sheet labels, and with them the sign of the winding, are relative to
// the cut arcs; the magnitude is the planar invariant
TEST_CASE("winding magnitude depends only on the chosen outer face") {
  auto d = realize_code(parse_gauss("-1,1,2,-3,-2,3 / 1,1,1"));
  for (size_t f = 0; f < d.face_list.size(); ++f) {
    auto e = d;
    e.outer_face = (int)f;
    e.finalize();
    auto systems = enumerate_cut_systems(e, 4);
    int want = 0;
    for (size_t i = 0; i < systems.size(); ++i) {
      const int w = std::abs(winding(double_diagram(e, systems[i])).value);
      if (i == 0)
        want = w;
      else
        CHECK(w == want);
    }
  }
}

TEST_CASE("lifts of trivial knotoids are trivial") {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 10; ++trial) {
    auto d = random_trivial_diagram(rng, 5);
    CHECK(lift_bracket(d) == LaurentPolynomial::one());
  }
}

TEST_CASE("lift bracket is invariant under reversion and rotation") {
  for (const char* text : {"-1,1,2,-3,-2,3 / 1,1,1", "1,-2,-1,2 / 1,1"}) {
    auto d = realize_code(parse_gauss(text));
    auto g = to_ggc(d, auto_cuts(d));
    auto want = bracket(lift_code(g)).normalized;
    CHECK(bracket(lift_code(reverse_code(g))).normalized == want);
    CHECK(bracket(lift_code(rotate_code(g))).normalized == want);
  }
}

TEST_CASE("lift bracket is multiplicative over products") {
  auto c1 = parse_gauss("-1,1,2,-3,-2,3 / 1,1,1");
  auto c2 = parse_gauss("1,-2,-1,2 / 1,1");
  auto b1 = lift_bracket(realize_code(c1));
  auto b2 = lift_bracket(realize_code(c2));
  CHECK(lift_bracket(realize_code(product_code(c1, c2))) == b1 * b2);
  CHECK(lift_bracket(realize_code(product_code(c2, c1))) == b1 * b2);
}

TEST_CASE("twist embedding basics") {
  auto d = realize_code(parse_gauss("1,-2,-1,2 / 1,1"));
  // pick a cut system whose radial arc actually meets the strand
  CutSystem cs;
  for (const auto& c : enumerate_cut_systems(d, 8))
    if (!c.tail_path.empty()) {
      cs = c;
      break;
    }
  REQUIRE(!cs.tail_path.empty());
  auto a = double_diagram(d, cs);
  CHECK(twist_embed(a, 0) == annular_to_code(a));
  const int m = a.strand_count();
  REQUIRE(m >= 3);
  for (int t : {1, -1, 2}) {
    auto k = twist_embed(a, t);
    REQUIRE_NOTHROW(validate(k));
    CHECK(k.crossings() ==
          annular_to_code(a).crossings() + std::abs(t) * m * (m - 1));
    CHECK(twist_embed(a, t) == k);  // deterministic
  }
  CHECK(twist_embed(a, 1) != twist_embed(a, -1));
}

TEST_CASE("annular json carries the radial reference") {
  auto d = realize_code(parse_gauss("1,-2,-1,2 / 1,1"));
  auto a = double_diagram(d);
  auto j = annular_to_json(a);
  CHECK(j["kind"] == "annular");
  CHECK(j["vertices"].size() == a.vertices.size());
  CHECK(j["radial_ref"].size() == a.radial_ref.size());
  CHECK(j["branch_tail"] == a.branch_tail);
}
