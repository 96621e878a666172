#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "knotoid/bracket.hpp"
#include "knotoid/codes.hpp"
#include "support/naive_bracket.hpp"

using namespace knotoid;
using knotoid_test::naive_raw_bracket;
using knotoid_test::naive_state_loops;

namespace {

GaussCode random_code(std::mt19937& rng, int max_n, Kind kind) {
  std::uniform_int_distribution<int> nd(0, max_n);
  const int n = nd(rng);
  GaussCode code;
  code.kind = kind;
  for (int l = 1; l <= n; ++l) {
    code.sequence.push_back({l, true});
    code.sequence.push_back({l, false});
  }
  std::shuffle(code.sequence.begin(), code.sequence.end(), rng);
  std::uniform_int_distribution<int> coin(0, 1);
  for (int i = 0; i < n; ++i) code.signs.push_back(coin(rng) ? 1 : -1);
  return code;
}

GaussCode mirror_gauss(GaussCode c) {
  for (auto& p : c.sequence) p.over = !p.over;
  for (auto& s : c.signs) s = -s;
  return c;
}

GaussCode symmetric_gauss(GaussCode c) {
  for (auto& s : c.signs) s = -s;
  return c;
}

const LaurentPolynomial kOne = LaurentPolynomial::one();

}  // namespace

TEST_CASE("empty codes") {
  for (Kind kind : {Kind::Knotoid, Kind::Knot}) {
    GaussCode e;
    e.kind = kind;
    auto v = bracket(e);
    CHECK(v.raw == kOne);
    CHECK(v.writhe == 0);
    CHECK(v.normalized == kOne);
  }
}

TEST_CASE("single kink") {
  for (Kind kind : {Kind::Knotoid, Kind::Knot}) {
    auto pos = bracket(parse_gauss("1,-1 / 1", kind));
    CHECK(pos.raw == LaurentPolynomial::monomial(-1, 3));
    CHECK(pos.writhe == 1);
    CHECK(pos.normalized == kOne);

    auto neg = bracket(parse_gauss("1,-1 / -1", kind));
    CHECK(neg.raw == LaurentPolynomial::monomial(-1, -3));
    CHECK(neg.normalized == kOne);
  }
}

TEST_CASE("trefoil bracket") {
  auto c = parse_gauss("1,-2,3,-1,2,-3 / 1,1,1", Kind::Knot);
  auto v = bracket(c);
  CHECK(v.writhe == 3);
  CHECK(v.normalized.terms().size() == 3);
  CHECK(v.normalized != kOne);
  // chirality: the mirror has a genuinely different polynomial
  auto m = bracket(mirror_gauss(c));
  CHECK(m.normalized == v.normalized.substitute_inverse());
  CHECK(m.normalized != v.normalized);
  CHECK(v.raw == naive_raw_bracket(c));
}

TEST_CASE("basepoint independence for knot codes") {
  auto base = parse_gauss("1,-2,3,-1,2,-3 / 1,1,1", Kind::Knot);
  auto want = bracket(base).raw;
  for (size_t r = 1; r < base.sequence.size(); ++r) {
    GaussCode rot = base;
    std::rotate(rot.sequence.begin(), rot.sequence.begin() + r,
                rot.sequence.end());
    CHECK(bracket(rot).raw == want);
  }
}

TEST_CASE("naive oracle agreement up to 6 crossings") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 120; ++trial) {
    auto c = random_code(rng, 6, trial % 2 ? Kind::Knot : Kind::Knotoid);
    auto v = bracket(c);
    REQUIRE(v.raw == naive_raw_bracket(c));
  }
}

TEST_CASE("per state loop counts agree with production union-find") {
  // spot-check a handful of codes state by state
  std::mt19937 rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    auto c = random_code(rng, 5, trial % 2 ? Kind::Knot : Kind::Knotoid);
    const int n = c.crossings();
    if (n == 0) continue;
    const auto arcs = knotoid::detail::crossing_arcs(c);
    const int num_arcs = (c.kind == Kind::Knot) ? 2 * n : 2 * n + 1;
    for (unsigned state = 0; state < (1u << n); ++state) {
      knotoid::detail::UnionFind uf(num_arcs);
      int components = num_arcs;
      for (int k = 0; k < n; ++k) {
        const bool a_sm = !(state & (1u << k));
        const bool seifert = a_sm == (c.signs[k] > 0);
        const auto& x = arcs[k];
        if (seifert) {
          components -= uf.unite(x.in_over, x.out_under);
          components -= uf.unite(x.in_under, x.out_over);
        } else {
          components -= uf.unite(x.in_over, x.in_under);
          components -= uf.unite(x.out_over, x.out_under);
        }
      }
      // every knot component is a loop; a knotoid has one open component
      const int loops = c.kind == Kind::Knot ? components : components - 1;
      REQUIRE(loops == naive_state_loops(c, state));
    }
  }
}

TEST_CASE("mirror and symmetric substitution identities") {
  std::mt19937 rng(21);
  for (int trial = 0; trial < 60; ++trial) {
    auto c = random_code(rng, 6, trial % 2 ? Kind::Knot : Kind::Knotoid);
    auto v = bracket(c).normalized;
    CHECK(bracket(mirror_gauss(c)).normalized == v.substitute_inverse());
    CHECK(bracket(symmetric_gauss(c)).normalized == v.substitute_inverse());
  }
}

TEST_CASE("reversion leaves the bracket unchanged") {
  std::mt19937 rng(34);
  for (int trial = 0; trial < 60; ++trial) {
    auto c = random_code(rng, 6, trial % 2 ? Kind::Knot : Kind::Knotoid);
    GaussCode r = c;
    std::reverse(r.sequence.begin(), r.sequence.end());
    CHECK(bracket(r).raw == bracket(c).raw);
  }
}

TEST_CASE("crossing count guard") {
  GaussCode big;
  for (int l = 1; l <= 25; ++l) {
    big.sequence.push_back({l, true});
    big.sequence.push_back({l, false});
    big.signs.push_back(1);
  }
  CHECK_THROWS_AS(bracket(big), TooLarge);
  GaussCode mid;
  for (int l = 1; l <= 10; ++l) {
    mid.sequence.push_back({l, true});
    mid.sequence.push_back({l, false});
    mid.signs.push_back(1);
  }
  CHECK_THROWS_AS(bracket(mid, 9), TooLarge);
  CHECK_NOTHROW(bracket(mid, 10));
}

TEST_CASE("nontriviality certificate") {
  GaussCode e;
  CHECK(nontriviality_certificate(e) == Certificate::Inconclusive);
  CHECK(nontriviality_certificate(parse_gauss("1,-1 / 1", Kind::Knot)) ==
        Certificate::Inconclusive);
  CHECK(nontriviality_certificate(
            parse_gauss("1,-2,3,-1,2,-3 / 1,1,1", Kind::Knot)) ==
        Certificate::Nontrivial);
}

TEST_CASE("eighteen crossings stay interactive") {
  // chain of 18 kinks: large state space, known answer
  GaussCode c;
  c.kind = Kind::Knotoid;
  for (int l = 1; l <= 18; ++l) {
    c.sequence.push_back({l, true});
    c.sequence.push_back({l, false});
    c.signs.push_back(l % 2 ? 1 : -1);
  }
  auto v = bracket(c);
  CHECK(v.writhe == 0);
  CHECK(v.normalized == kOne);
}
