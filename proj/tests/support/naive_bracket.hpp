#ifndef TESTS_SUPPORT_NAIVE_BRACKET_HPP_
#define TESTS_SUPPORT_NAIVE_BRACKET_HPP_

// Deliberately independent bracket implementation used only as a test
// oracle: per state it glues arc ends explicitly and counts loops by
// walking the resulting curve, instead of the production union-find.

#include <cassert>
#include <map>
#include <set>
#include <vector>

#include "knotoid/bracket.hpp"
#include "knotoid/codes.hpp"
#include "knotoid/laurent.hpp"

namespace knotoid_test {

// Arc ends are encoded 2*arc (start) and 2*arc+1 (end).
inline int arc_start(int a) { return 2 * a; }
inline int arc_end(int a) { return 2 * a + 1; }

/// Closed-loop count of one smoothing state, by arc following.
inline int naive_state_loops(const knotoid::GaussCode& code,
                             unsigned state) {
  using knotoid::Kind;
  const int n = code.crossings();
  const int len = 2 * n;
  const int num_arcs = (code.kind == Kind::Knot) ? len : len + 1;
  if (n == 0) return 0;

  std::map<int, int> conn;  // symmetric gluing of arc ends
  auto glue = [&](int x, int y) {
    assert(!conn.count(x) && !conn.count(y));
    conn[x] = y;
    conn[y] = x;
  };
  struct Ends {
    int in_over, out_over, in_under, out_under;
  };
  std::vector<Ends> ends(n, {-1, -1, -1, -1});
  for (int i = 0; i < len; ++i) {
    const auto& p = code.sequence[i];
    const int in = i;
    const int out = (code.kind == Kind::Knot) ? (i + 1) % len : i + 1;
    auto& e = ends[p.label - 1];
    (p.over ? e.in_over : e.in_under) = arc_end(in);
    (p.over ? e.out_over : e.out_under) = arc_start(out);
  }
  for (int c = 0; c < n; ++c) {
    const bool a_smoothing = !(state & (1u << c));
    const bool seifert = a_smoothing == (code.signs[c] > 0);
    const auto& e = ends[c];
    if (seifert) {
      glue(e.in_over, e.out_under);
      glue(e.in_under, e.out_over);
    } else {
      glue(e.in_over, e.in_under);
      glue(e.out_over, e.out_under);
    }
  }

  std::set<int> seen;  // arcs visited
  int loops = 0;
  for (int a0 = 0; a0 < num_arcs; ++a0) {
    if (seen.count(a0)) continue;
    // follow the curve from this arc; flag whether we fall off a free end
    bool open = false;
    int arc = a0, entered_at = arc_start(a0);
    for (;;) {
      seen.insert(arc);
      int other = entered_at == arc_start(arc) ? arc_end(arc) : arc_start(arc);
      auto it = conn.find(other);
      if (it == conn.end()) {  // free end (knotoid tail/head side)
        open = true;
        // also walk the other direction from a0 to mark those arcs seen
        auto back = conn.find(arc_start(a0));
        int barc = a0, bent = arc_start(a0);
        while (back != conn.end()) {
          bent = back->second;
          barc = bent / 2;
          if (seen.count(barc)) break;
          seen.insert(barc);
          int bother =
              bent == arc_start(barc) ? arc_end(barc) : arc_start(barc);
          back = conn.find(bother);
        }
        break;
      }
      entered_at = it->second;
      arc = entered_at / 2;
      if (arc == a0 && entered_at == arc_start(a0)) break;  // loop closed
    }
    if (!open) ++loops;
  }
  return loops;
}

inline knotoid::LaurentPolynomial naive_raw_bracket(
    const knotoid::GaussCode& code) {
  using knotoid::LaurentPolynomial;
  const int n = code.crossings();
  LaurentPolynomial total;
  // Normalization: a knot state with a single loop contributes no delta
  // factor (so the crossingless unknot has bracket 1); the open component
  // of a knotoid is not a loop and never contributes.
  const int drop = (code.kind == knotoid::Kind::Knot && n > 0) ? 1 : 0;
  for (unsigned state = 0; state < (1u << n); ++state) {
    int exp = 0;
    for (int c = 0; c < n; ++c) exp += (state & (1u << c)) ? -1 : 1;
    total += LaurentPolynomial::monomial(1, exp) *
             LaurentPolynomial::loop_factor().pow(
                 static_cast<unsigned>(naive_state_loops(code, state) - drop));
  }
  return total;
}

}  // namespace knotoid_test

#endif  // TESTS_SUPPORT_NAIVE_BRACKET_HPP_
