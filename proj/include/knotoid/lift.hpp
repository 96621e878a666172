#ifndef KNOTOID_LIFT_HPP_
#define KNOTOID_LIFT_HPP_

#include <algorithm>
#include <array>
#include <map>
#include <queue>
#include <set>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "knotoid/codes.hpp"
#include "knotoid/errors.hpp"
#include "knotoid/planar.hpp"

namespace knotoid {

// ---------------------------------------------------------------------------
// Lift of a generalized Gauss code

/// Knot code of the double branched cover lift of a knotoid, built directly
/// from a generalized Gauss code. Walk the code keeping the parity of cut
/// entries seen: a passage of crossing l is emitted as l (even parity) or
/// l+n (odd). The second half is the deck image: the emitted entries
/// reversed with labels swapped across the halves. Crossings l and l+n both
/// inherit the sign of l, negated when the two occurrences of l are
/// separated by an odd number of cut entries.
inline GaussCode lift_code(const GeneralizedGaussCode& g) {
  validate(g);
  const int n = g.crossings();
  GaussCode out;
  out.kind = Kind::Knot;
  if (n == 0) return out;

  int parity = 0;
  for (const auto& e : g.sequence) {
    if (std::holds_alternative<CutEntry>(e)) {
      parity ^= 1;
      continue;
    }
    const auto& p = std::get<Passage>(e);
    out.sequence.push_back({parity ? p.label + n : p.label, p.over});
  }
  for (size_t i = out.sequence.size(); i-- > 0;) {
    Passage p = out.sequence[i];
    p.label += p.label > n ? -n : n;
    out.sequence.push_back(p);
  }

  out.signs.assign(2 * n, 0);
  std::vector<int> first_cuts(n + 1, -1);
  int cuts = 0;
  for (const auto& e : g.sequence) {
    if (std::holds_alternative<CutEntry>(e)) {
      ++cuts;
      continue;
    }
    const int l = std::get<Passage>(e).label;
    if (first_cuts[l] < 0) {
      first_cuts[l] = cuts;
    } else {
      const int sign =
          (cuts - first_cuts[l]) % 2 ? -g.signs[l - 1] : g.signs[l - 1];
      out.signs[l - 1] = out.signs[l - 1 + n] = sign;
    }
  }
  validate(out);
  return out;
}

// ---------------------------------------------------------------------------
// The doubled diagram

struct WindingNumber {
  int value = 0;
};

/// One crossing of the knotoid strand over the radial reference arc, as
/// seen from the forward (sheet-resolved) walk; ordinal is the 1-based
/// position along the tail cut arc.
struct RadialCrossing {
  int direction = 0;
  int ordinal = 0;
  bool operator==(const RadialCrossing&) const = default;
};

/// A crossing of the lifted curve over the radial reference arc, pinned to
/// a point of one doubled edge. Positions index the intersections along the
/// full arc; the branch vertex passage sits at the middle index and is not
/// stored as a mark.
struct RadialMark {
  int position = 0;
  int direction = 0;  // sign when the edge is walked edges[e][0] -> [1]
  bool operator==(const RadialMark&) const = default;
};

/// The lift of a knotoid diagram: two sheet copies of the diagram glued
/// along the cut arcs. Cut crossings are not vertices; an edge segment
/// simply continues on the other sheet, so each diagram edge contributes two
/// doubled edges whose endpoints record the sheets. The two endpoint
/// vertices become degree-2 branch vertices joining the sheets. The map is
/// spherical; the annular (solid torus) structure is carried by the radial
/// reference marks.
class AnnularDiagram {
 public:
  std::vector<Vertex> vertices;  // branch vertices keep Tail/Head kind
  std::vector<std::array<int, 2>> edges;
  std::vector<std::vector<RadialMark>> marks;  // parallel to edges, in order
  int branch_tail = -1, branch_head = -1;
  std::vector<RadialCrossing> radial_ref;
  std::map<int, int> deck;  // slot -> deck involution image

  // Derived structure, filled by finalize().
  std::map<int, std::pair<int, int>> slot_at;  // slot -> (vertex, position)
  std::map<int, int> slot_edge;
  std::map<int, int> alpha;

  /// Strands through the meridian disk spanned by the radial arc.
  int strand_count() const {
    return 2 * static_cast<int>(radial_ref.size()) + 1;
  }

  int opposite_slot(int slot) const {
    const auto [v, p] = slot_at.at(slot);
    return vertices[v].rotation[(p + 2) % 4];
  }

  bool is_over_slot(int slot) const {
    const auto [v, p] = slot_at.at(slot);
    return vertices[v].over[0] == slot || vertices[v].over[1] == slot;
  }

  void finalize();
};

inline void AnnularDiagram::finalize() {
  slot_at.clear();
  slot_edge.clear();
  alpha.clear();
  if (branch_tail < 0 || branch_head < 0 || branch_tail == branch_head ||
      branch_tail >= (int)vertices.size() ||
      branch_head >= (int)vertices.size())
    throw InvalidCode("annular diagram needs two branch vertices");

  for (size_t v = 0; v < vertices.size(); ++v) {
    const auto& vx = vertices[v];
    const bool branch = (int)v == branch_tail || (int)v == branch_head;
    const size_t want = branch ? 2 : 4;
    if (vx.rotation.size() != want)
      throw BadDegree("annular vertex " + std::to_string(v) + " has degree " +
                      std::to_string(vx.rotation.size()) + ", expected " +
                      std::to_string(want));
    for (size_t p = 0; p < vx.rotation.size(); ++p)
      if (!slot_at.emplace(vx.rotation[p], std::make_pair((int)v, (int)p))
               .second)
        throw InvalidCode("slot " + std::to_string(vx.rotation[p]) +
                          " used twice");
    if (!branch) {
      auto p0 = std::find(vx.rotation.begin(), vx.rotation.end(), vx.over[0]);
      auto p1 = std::find(vx.rotation.begin(), vx.rotation.end(), vx.over[1]);
      if (p0 == vx.rotation.end() || p1 == vx.rotation.end() ||
          std::abs(int(p0 - vx.rotation.begin()) -
                   int(p1 - vx.rotation.begin())) != 2)
        throw InvalidCode("over strand of annular vertex " +
                          std::to_string(v) +
                          " must occupy opposite rotation positions");
    }
  }

  if (marks.size() != edges.size())
    throw InvalidCode("radial marks must parallel the edges");
  for (size_t e = 0; e < edges.size(); ++e) {
    for (int s : edges[e]) {
      if (!slot_at.count(s))
        throw InvalidCode("edge uses unknown slot " + std::to_string(s));
      if (!slot_edge.emplace(s, (int)e).second)
        throw InvalidCode("slot " + std::to_string(s) + " in two edges");
    }
    alpha[edges[e][0]] = edges[e][1];
    alpha[edges[e][1]] = edges[e][0];
  }
  if (slot_edge.size() != slot_at.size())
    throw InvalidCode("some vertex slot belongs to no edge");

  // connectivity
  {
    std::set<int> vis{0};
    std::queue<int> q;
    q.push(0);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int s : vertices[v].rotation) {
        int w = slot_at.at(alpha.at(s)).first;
        if (vis.insert(w).second) q.push(w);
      }
    }
    if (vis.size() != vertices.size())
      throw Disconnected("doubled diagram is not connected");
  }

  // sphericity
  {
    std::map<int, int> sigma;
    for (const auto& [s, vp] : slot_at) {
      const auto& rot = vertices[vp.first].rotation;
      sigma[s] = rot[(vp.second + 1) % rot.size()];
    }
    const long euler = (long)vertices.size() - (long)edges.size() +
                       (long)detail::trace_faces(sigma, alpha).size();
    if (euler != 2)
      throw EulerViolation("doubled map has V-E+F = " + std::to_string(euler));
  }

  // the deck involution swaps the sheets and fixes only the branch vertices
  for (const auto& [s, vp] : slot_at) {
    auto it = deck.find(s);
    if (it == deck.end() || !slot_at.count(it->second) ||
        deck.at(it->second) != s)
      throw InvalidCode("deck involution is not an involution on the slots");
    const int v = vp.first, w = slot_at.at(it->second).first;
    const bool branch = v == branch_tail || v == branch_head;
    if (branch != (v == w))
      throw InvalidCode("deck involution must fix exactly the branch vertices");
    if (deck.at(alpha.at(s)) != alpha.at(deck.at(s)))
      throw InvalidCode("deck involution does not preserve the edges");
  }

  // single closed curve covering every edge
  {
    const int start = vertices[branch_tail].rotation[0];
    std::set<int> used;
    int cur = start;
    for (;;) {
      if (!used.insert(cur).second)
        throw NotSingleStrand("lifted curve revisits an edge");
      const int in = alpha.at(cur);
      const int v = slot_at.at(in).first;
      if (v == branch_tail) break;
      if (v == branch_head) {
        const auto& rot = vertices[v].rotation;
        cur = rot[0] == in ? rot[1] : rot[0];
      } else {
        cur = opposite_slot(in);
      }
    }
    if (used.size() != edges.size())
      throw NotSingleStrand("lifted curve does not cover every edge");
  }

  // the radial marks list every arc intersection except the branch passage
  {
    const int k = static_cast<int>(radial_ref.size());
    std::set<int> positions;
    size_t total = 0;
    for (const auto& mk : marks)
      for (const auto& m : mk) {
        ++total;
        positions.insert(m.position);
      }
    bool ok = total == 2 * (size_t)k && (int)positions.size() == 2 * k;
    for (int p = 0; ok && p <= 2 * k; ++p)
      ok = positions.count(p) == (p != k ? 1u : 0u);
    if (!ok)
      throw InvalidCode("radial marks must fill the arc positions");
  }
}

/// Double the cut diagram: two sheet copies, edges continuing on the other
/// sheet after each cut crossing, endpoints merged into branch vertices.
inline AnnularDiagram double_diagram(const PlanarDiagram& d,
                                     const CutSystem& cuts) {
  if (d.kind != Kind::Knotoid)
    throw InvalidCutSystem("doubling requires a knotoid diagram");
  if (!cuts_valid(d, cuts))
    throw InvalidCutSystem("cut system is not drawable on this diagram");
  auto t = traverse(d);
  const int S = d.max_slot() + 1;  // sheet-1 copy of slot x is x + S

  AnnularDiagram a;
  a.vertices = d.vertices;
  a.branch_tail = d.tail_vertex;
  a.branch_head = d.head_vertex;
  for (const auto& vx : d.vertices) {
    if (vx.kind != VertexKind::Crossing) continue;
    Vertex w = vx;
    for (int& s : w.rotation) s += S;
    for (int& s : w.over) s += S;
    a.vertices.push_back(w);
  }
  for (int v : {a.branch_tail, a.branch_head}) {
    auto& vx = a.vertices[v];
    vx.rotation = {vx.rotation[0], vx.rotation[0] + S};
  }

  struct Hit {
    int rank, ordinal, enter_slot;
    bool tail;
  };
  std::map<int, std::vector<Hit>> hits;
  for (const auto* path : {&cuts.tail_path, &cuts.head_path}) {
    int ordinal = 0;
    for (const auto& c : *path)
      hits[c.edge].push_back(
          {c.rank, ++ordinal, c.enter_slot, path == &cuts.tail_path});
  }
  for (auto& [e, list] : hits) {
    (void)e;
    std::sort(list.begin(), list.end(),
              [](const Hit& x, const Hit& y) { return x.rank < y.rank; });
  }

  std::map<int, int> enter_sheet;  // sheet of the forward strand per edge
  int sheet = 0;
  for (int e : t.edge_order) {
    enter_sheet[e] = sheet;
    sheet ^= static_cast<int>(hits[e].size()) & 1;
  }

  const int k = static_cast<int>(cuts.tail_path.size());
  a.radial_ref.assign(k, {});
  for (size_t e = 0; e < d.edges.size(); ++e) {
    const auto dir = t.edge_dir.at((int)e);
    for (int copy : {0, 1}) {
      int s = enter_sheet.at((int)e) ^ copy;
      const int from = dir[0] + s * S;
      std::vector<RadialMark> mk;
      for (const Hit& h : hits[(int)e]) {
        if (h.tail) {
          // which lift of the arc is crossed: the strand's sheet when it
          // comes from the arc's reference side, the other sheet otherwise
          const int lift = h.enter_slot == dir[0] ? s : s ^ 1;
          const int direction = s == 1 ? 1 : -1;
          mk.push_back({lift == 0 ? k + h.ordinal : k - h.ordinal, direction});
          if (copy == 0) a.radial_ref[h.ordinal - 1] = {direction, h.ordinal};
        }
        s ^= 1;
      }
      a.edges.push_back({from, dir[1] + s * S});
      a.marks.push_back(std::move(mk));
    }
  }

  for (const auto& vx : a.vertices)
    for (int s : vx.rotation) a.deck[s] = s < S ? s + S : s - S;
  a.finalize();
  return a;
}

inline AnnularDiagram double_diagram(const PlanarDiagram& d) {
  return double_diagram(d, auto_cuts(d));
}

// ---------------------------------------------------------------------------
// Walking the lifted curve

namespace detail {

struct CurveWalk {
  struct Passage {
    int vertex;
    int in_slot, out_slot;
    bool over;
  };
  struct Meridian {
    int position, direction;
  };
  std::vector<std::variant<Passage, Meridian>> events;
};

/// Traverse the lifted closed curve from the tail branch vertex, reporting
/// crossing passages and radial-arc intersections in order. Marks on an
/// edge walked against its stored direction appear reversed with flipped
/// signs; the branch passage itself counts as one positive intersection at
/// the middle position.
inline CurveWalk walk_curve(const AnnularDiagram& a) {
  CurveWalk w;
  const int start = a.vertices[a.branch_tail].rotation[0];
  w.events.push_back(
      CurveWalk::Meridian{static_cast<int>(a.radial_ref.size()), 1});
  int cur = start;
  for (;;) {
    const int e = a.slot_edge.at(cur);
    const bool fwd = a.edges[e][0] == cur;
    const auto& mk = a.marks[e];
    if (fwd) {
      for (const auto& m : mk)
        w.events.push_back(CurveWalk::Meridian{m.position, m.direction});
    } else {
      for (size_t i = mk.size(); i-- > 0;)
        w.events.push_back(
            CurveWalk::Meridian{mk[i].position, -mk[i].direction});
    }
    const int in = a.alpha.at(cur);
    const int v = a.slot_at.at(in).first;
    if (v == a.branch_tail) break;
    if (v == a.branch_head) {
      const auto& rot = a.vertices[v].rotation;
      cur = rot[0] == in ? rot[1] : rot[0];
      continue;
    }
    const int out = a.opposite_slot(in);
    w.events.push_back(CurveWalk::Passage{v, in, out, a.is_over_slot(in)});
    cur = out;
  }
  return w;
}

}  // namespace detail

/// Knot code of the lifted curve, signs read off the doubled rotations.
inline GaussCode annular_to_code(const AnnularDiagram& a) {
  auto w = detail::walk_curve(a);
  GaussCode code;
  code.kind = Kind::Knot;
  std::map<int, int> label;
  std::map<int, std::array<int, 2>> outs;  // vertex -> {over,under} out slot
  for (const auto& ev : w.events) {
    const auto* p = std::get_if<detail::CurveWalk::Passage>(&ev);
    if (!p) continue;
    auto it = label.find(p->vertex);
    if (it == label.end()) {
      it = label.emplace(p->vertex, (int)label.size() + 1).first;
      code.signs.push_back(0);
      outs[p->vertex] = {-1, -1};
    }
    code.sequence.push_back({it->second, p->over});
    outs[p->vertex][p->over ? 0 : 1] = p->out_slot;
  }
  for (const auto& [v, l] : label) {
    const auto& o = outs.at(v);
    const int po = a.slot_at.at(o[0]).second;
    const int pu = a.slot_at.at(o[1]).second;
    code.signs[l - 1] = pu == (po + 1) % 4 ? 1 : -1;
  }
  validate(code);
  return canonicalize(code);
}

/// Signed intersections of the lifted curve with the radial arc.
inline WindingNumber winding(const AnnularDiagram& a) {
  int w = 0;
  for (const auto& ev : detail::walk_curve(a).events)
    if (const auto* m = std::get_if<detail::CurveWalk::Meridian>(&ev))
      w += m->direction;
  return {w};
}

/// Re-embed with t full twists along the meridian disk spanned by the
/// radial arc: the m strands through the disk, ordered by arc position,
/// are braided by (s_1 ... s_{m-1})^{m t}.
inline GaussCode twist_embed(const AnnularDiagram& a, int t) {
  if (t == 0) return annular_to_code(a);
  auto w = detail::walk_curve(a);
  const int m = a.strand_count();

  // meridian passages in curve order
  struct Strand {
    int position, direction;
    std::vector<std::array<int, 3>> braid;  // {word step, label, over}
  };
  std::vector<Strand> strands;
  int annular_crossings = 0;
  {
    std::map<int, int> seen;
    for (const auto& ev : w.events) {
      if (const auto* mr = std::get_if<detail::CurveWalk::Meridian>(&ev))
        strands.push_back({mr->position, mr->direction, {}});
      else if (seen.emplace(
                       std::get<detail::CurveWalk::Passage>(ev).vertex,
                       0)
                   .second)
        ++annular_crossings;
    }
  }
  std::vector<int> occupant(m, -1);  // arc position -> strand index
  for (size_t i = 0; i < strands.size(); ++i)
    occupant[strands[i].position] = (int)i;

  int next_label = annular_crossings;
  int step = 0;
  for (int rep = 0; rep < m * std::abs(t); ++rep)
    for (int q = 1; q < m; ++q) {
      const int x = occupant[q - 1], y = occupant[q];
      const int label = ++next_label;
      const bool lower_over = t > 0;
      strands[x].braid.push_back({step, label, lower_over ? 1 : 0});
      strands[y].braid.push_back({step, label, lower_over ? 0 : 1});
      ++step;
      std::swap(occupant[q - 1], occupant[q]);
    }
  for (size_t i = 0; i < strands.size(); ++i)
    if (occupant[strands[i].position] != (int)i)
      throw InvalidCode("full twist is not a pure braid");

  GaussCode code;
  code.kind = Kind::Knot;
  code.signs.assign(next_label, 0);
  std::map<int, int> label;
  std::map<int, std::array<int, 2>> outs;
  size_t next_strand = 0;
  for (const auto& ev : w.events) {
    if (const auto* p = std::get_if<detail::CurveWalk::Passage>(&ev)) {
      auto it = label.find(p->vertex);
      if (it == label.end()) {
        it = label.emplace(p->vertex, (int)label.size() + 1).first;
        outs[p->vertex] = {-1, -1};
      }
      code.sequence.push_back({it->second, p->over});
      outs[p->vertex][p->over ? 0 : 1] = p->out_slot;
      continue;
    }
    // a strand crosses the twist region: its braid crossings in the order
    // it meets the word's layers
    auto& st = strands[next_strand++];
    std::sort(st.braid.begin(), st.braid.end());
    if (st.direction < 0) std::reverse(st.braid.begin(), st.braid.end());
    for (const auto& b : st.braid)
      code.sequence.push_back({b[1], b[2] != 0});
  }
  for (const auto& [v, l] : label) {
    const auto& o = outs.at(v);
    const int po = a.slot_at.at(o[0]).second;
    const int pu = a.slot_at.at(o[1]).second;
    code.signs[l - 1] = pu == (po + 1) % 4 ? 1 : -1;
  }
  // braid crossing signs: generator handedness times the two orientations
  for (const auto& st : strands)
    for (const auto& b : st.braid)
      code.signs[b[1] - 1] =
          code.signs[b[1] - 1] == 0
              ? (t > 0 ? 1 : -1) * st.direction
              : code.signs[b[1] - 1] * st.direction;
  validate(code);
  return canonicalize(code);
}

// ---------------------------------------------------------------------------
// JSON format

inline nlohmann::json annular_to_json(const AnnularDiagram& a) {
  nlohmann::json verts = nlohmann::json::array();
  for (size_t v = 0; v < a.vertices.size(); ++v) {
    const auto& vx = a.vertices[v];
    const bool branch = (int)v == a.branch_tail || (int)v == a.branch_head;
    nlohmann::json jv = {{"id", v},
                         {"kind", branch ? "branch" : "crossing"},
                         {"rotation", vx.rotation}};
    if (!branch)
      jv["over_slots"] = std::vector<int>{vx.over[0], vx.over[1]};
    verts.push_back(jv);
  }
  nlohmann::json ref = nlohmann::json::array();
  for (const auto& r : a.radial_ref)
    ref.push_back({{"direction", r.direction}, {"ordinal", r.ordinal}});
  nlohmann::json mk = nlohmann::json::array();
  for (const auto& em : a.marks) {
    nlohmann::json row = nlohmann::json::array();
    for (const auto& m : em)
      row.push_back({{"position", m.position}, {"direction", m.direction}});
    mk.push_back(row);
  }
  return {{"kind", "annular"},
          {"vertices", verts},
          {"edges", a.edges},
          {"marks", mk},
          {"branch_tail", a.branch_tail},
          {"branch_head", a.branch_head},
          {"radial_ref", ref}};
}

}  // namespace knotoid

#endif  // KNOTOID_LIFT_HPP_
