#ifndef KNOTOID_PLANAR_HPP_
#define KNOTOID_PLANAR_HPP_

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <vector>

#include <nlohmann/json.hpp>

#include "knotoid/codes.hpp"
#include "knotoid/errors.hpp"

namespace knotoid {

// A knotoid/knot diagram as a combinatorial map: vertices carry a cyclic
// counterclockwise rotation of slot ids, edges pair up slots. Crossings are
// degree 4 with the two strands at opposite slot positions; the over strand
// is the pair listed in `over`. Knotoid diagrams additionally have degree-1
// tail and head vertices.
enum class VertexKind { Crossing, Tail, Head };

struct Vertex {
  VertexKind kind = VertexKind::Crossing;
  std::vector<int> rotation;          // slot ids, counterclockwise
  std::array<int, 2> over = {-1, -1}; // the over strand's two slots
};

class PlanarDiagram {
 public:
  Kind kind = Kind::Knotoid;
  std::vector<Vertex> vertices;
  std::vector<std::array<int, 2>> edges;
  std::optional<int> outer_face;

  // Derived structure, filled by finalize().
  std::map<int, std::pair<int, int>> slot_at;  // slot -> (vertex, position)
  std::map<int, int> slot_edge;                // slot -> edge index
  std::map<int, int> alpha;                    // slot -> opposite slot
  std::vector<std::vector<int>> face_list;     // faces as slot cycles
  std::map<int, int> face_of;                  // slot -> face index
  int tail_vertex = -1, head_vertex = -1;

  int next_in_rotation(int slot) const {
    const auto [v, p] = slot_at.at(slot);
    const auto& rot = vertices[v].rotation;
    return rot[(p + 1) % rot.size()];
  }

  int opposite_slot(int slot) const {  // other end of the strand at a crossing
    const auto [v, p] = slot_at.at(slot);
    const auto& rot = vertices[v].rotation;
    return rot[(p + 2) % 4];
  }

  bool is_over_slot(int slot) const {
    const auto [v, p] = slot_at.at(slot);
    return vertices[v].over[0] == slot || vertices[v].over[1] == slot;
  }

  int max_slot() const {
    int m = -1;
    for (const auto& e : edges) m = std::max({m, e[0], e[1]});
    return m;
  }

  void finalize();
};

namespace detail {

// Face tracing for an abstract map given per-slot sigma (next in rotation)
// and alpha; returns faces as slot cycles, each starting at its smallest
// slot, ordered by that smallest slot.
inline std::vector<std::vector<int>> trace_faces(
    const std::map<int, int>& sigma, const std::map<int, int>& alpha) {
  std::vector<std::vector<int>> faces;
  std::set<int> seen;
  for (const auto& [s0, unused] : sigma) {
    (void)unused;
    if (seen.count(s0)) continue;
    std::vector<int> face;
    int s = s0;
    do {
      face.push_back(s);
      seen.insert(s);
      s = sigma.at(alpha.at(s));
    } while (s != s0);
    faces.push_back(std::move(face));
  }
  return faces;
}

}  // namespace detail

inline void PlanarDiagram::finalize() {
  slot_at.clear();
  slot_edge.clear();
  alpha.clear();
  face_list.clear();
  face_of.clear();
  tail_vertex = head_vertex = -1;

  for (size_t v = 0; v < vertices.size(); ++v) {
    const auto& vx = vertices[v];
    const size_t want = vx.kind == VertexKind::Crossing ? 4 : 1;
    if (vx.rotation.size() != want)
      throw BadDegree("vertex " + std::to_string(v) + " has degree " +
                      std::to_string(vx.rotation.size()) + ", expected " +
                      std::to_string(want));
    if (vx.kind == VertexKind::Tail) {
      if (tail_vertex >= 0) throw BadDegree("multiple tail vertices");
      tail_vertex = static_cast<int>(v);
    }
    if (vx.kind == VertexKind::Head) {
      if (head_vertex >= 0) throw BadDegree("multiple head vertices");
      head_vertex = static_cast<int>(v);
    }
    for (size_t p = 0; p < vx.rotation.size(); ++p) {
      if (!slot_at.emplace(vx.rotation[p], std::make_pair((int)v, (int)p))
               .second)
        throw InvalidCode("slot " + std::to_string(vx.rotation[p]) +
                          " used twice");
    }
    if (vx.kind == VertexKind::Crossing) {
      auto p0 = std::find(vx.rotation.begin(), vx.rotation.end(), vx.over[0]);
      auto p1 = std::find(vx.rotation.begin(), vx.rotation.end(), vx.over[1]);
      if (p0 == vx.rotation.end() || p1 == vx.rotation.end() ||
          std::abs(int(p0 - vx.rotation.begin()) -
                   int(p1 - vx.rotation.begin())) != 2)
        throw InvalidCode("over strand of vertex " + std::to_string(v) +
                          " must occupy opposite rotation positions");
    }
  }
  if (kind == Kind::Knotoid && (tail_vertex < 0 || head_vertex < 0))
    throw BadDegree("knotoid diagram needs tail and head vertices");
  if (kind == Kind::Knot && (tail_vertex >= 0 || head_vertex >= 0))
    throw BadDegree("knot diagram cannot have endpoint vertices");

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

  if (vertices.empty()) {  // crossingless knot diagram
    if (kind != Kind::Knot || !edges.empty())
      throw InvalidCode("empty diagram must be a crossingless knot");
    return;
  }

  // connectivity over vertices
  {
    std::vector<char> vis(vertices.size(), 0);
    std::queue<int> q;
    q.push(0);
    vis[0] = 1;
    size_t reached = 1;
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int s : vertices[v].rotation) {
        int w = slot_at.at(alpha.at(s)).first;
        if (!vis[w]) {
          vis[w] = 1;
          ++reached;
          q.push(w);
        }
      }
    }
    if (reached != vertices.size())
      throw Disconnected("diagram graph is not connected");
  }

  // faces and the Euler test
  std::map<int, int> sigma;
  for (const auto& [s, vp] : slot_at) {
    (void)vp;
    sigma[s] = next_in_rotation(s);
  }
  face_list = detail::trace_faces(sigma, alpha);
  for (size_t f = 0; f < face_list.size(); ++f)
    for (int s : face_list[f]) face_of[s] = static_cast<int>(f);
  const long euler = (long)vertices.size() - (long)edges.size() +
                     (long)face_list.size();
  if (euler != 2)
    throw EulerViolation("V-E+F = " + std::to_string(euler) +
                         ", map is not spherical");
  if (outer_face && (*outer_face < 0 || *outer_face >= (int)face_list.size()))
    throw NoOuterFace("marked outer face does not exist");

  // single-strand traversal covering every edge
  {
    int start = kind == Kind::Knotoid ? vertices[tail_vertex].rotation[0]
                                      : edges[0][0];
    std::set<int> used;  // departure slots
    int cur = start, last = -1;
    for (;;) {
      if (used.count(cur)) throw NotSingleStrand("strand revisits an edge");
      used.insert(cur);
      int in = alpha.at(cur);
      last = slot_at.at(in).first;
      if (vertices[last].kind != VertexKind::Crossing) {
        if (kind == Kind::Knot)
          throw NotSingleStrand("knot strand hit an endpoint");
        break;
      }
      cur = opposite_slot(in);
      if (kind == Kind::Knot && cur == start) break;
    }
    if (used.size() != edges.size())
      throw NotSingleStrand("strand does not cover every edge");
    if (kind == Kind::Knotoid && last != head_vertex)
      throw NotSingleStrand("strand does not end at the head");
  }
}

// ---------------------------------------------------------------------------
// Strand traversal

struct StrandTraversal {
  struct Visit {
    int vertex;
    int in_slot, out_slot;
    bool over;
  };
  std::vector<int> edge_order;                  // edge ids in walk order
  std::map<int, std::array<int, 2>> edge_dir;   // edge -> {from, to} slots
  std::vector<Visit> visits;                    // crossing passages in order
};

/// Walk the single strand: from the tail for knotoids, from a fixed
/// deterministic dart for knots.
inline StrandTraversal traverse(const PlanarDiagram& d) {
  StrandTraversal t;
  if (d.edges.empty()) return t;
  int cur = d.kind == Kind::Knotoid ? d.vertices[d.tail_vertex].rotation[0]
                                    : d.edges[0][0];
  const int start = cur;
  for (;;) {
    int e = d.slot_edge.at(cur);
    int in = d.alpha.at(cur);
    t.edge_order.push_back(e);
    t.edge_dir[e] = {cur, in};
    int v = d.slot_at.at(in).first;
    if (d.vertices[v].kind != VertexKind::Crossing) break;  // head reached
    int out = d.opposite_slot(in);
    t.visits.push_back({v, in, out, d.is_over_slot(in)});
    cur = out;
    if (d.kind == Kind::Knot && cur == start) break;
  }
  return t;
}

namespace detail {

// Crossing sign from the rotation: +1 iff the under strand's outgoing slot
// sits one counterclockwise step after the over strand's outgoing slot.
inline int crossing_sign(const PlanarDiagram& d, int over_out, int under_out) {
  const auto [v, po] = d.slot_at.at(over_out);
  const auto [w, pu] = d.slot_at.at(under_out);
  (void)w;
  return pu == (po + 1) % 4 ? 1 : -1;
}

}  // namespace detail

inline GaussCode to_gauss(const PlanarDiagram& d) {
  auto t = traverse(d);
  GaussCode code;
  code.kind = d.kind;
  std::map<int, int> label;                       // vertex -> label
  std::map<int, std::array<int, 2>> outs;         // vertex -> {over,under} out
  for (const auto& vis : t.visits) {
    auto it = label.find(vis.vertex);
    if (it == label.end()) {
      it = label.emplace(vis.vertex, (int)label.size() + 1).first;
      code.signs.push_back(0);
      outs[vis.vertex] = {-1, -1};
    }
    code.sequence.push_back({it->second, vis.over});
    outs[vis.vertex][vis.over ? 0 : 1] = vis.out_slot;
  }
  for (const auto& [v, l] : label) {
    const auto& o = outs.at(v);
    code.signs[l - 1] = detail::crossing_sign(d, o[0], o[1]);
  }
  return canonicalize(code);
}

// ---------------------------------------------------------------------------
// Realizing a code as a diagram

/// Build a diagram whose traversal reproduces the code. The rotation at
/// each crossing is forced by the crossing sign; throws EulerViolation when
/// the code admits no spherical embedding.
inline PlanarDiagram realize_code(const GaussCode& code) {
  validate(code);
  PlanarDiagram d;
  d.kind = code.kind;
  const int n = code.crossings();
  if (n == 0) {
    if (code.kind == Kind::Knotoid) {
      d.vertices.push_back({VertexKind::Tail, {0}, {-1, -1}});
      d.vertices.push_back({VertexKind::Head, {1}, {-1, -1}});
      d.edges.push_back({0, 1});
    }
    d.finalize();
    return d;
  }
  // Crossing c (1-based) owns slots base..base+3 = in1, out1, in2, out2
  // (first/second visit). Endpoint slots come after.
  auto base = [](int label) { return 4 * (label - 1); };
  std::vector<char> visited(n + 1, 0);
  std::vector<int> entry_slot, exit_slot;  // per walk position
  for (const auto& p : code.sequence) {
    const int b = base(p.label);
    const bool second = visited[p.label];
    visited[p.label] = 1;
    entry_slot.push_back(second ? b + 2 : b);
    exit_slot.push_back(second ? b + 3 : b + 1);
  }
  d.vertices.resize(n);
  std::fill(visited.begin(), visited.end(), 0);
  for (const auto& p : code.sequence) {
    if (visited[p.label]) continue;
    visited[p.label] = 1;
    const int b = base(p.label);
    Vertex vx;
    vx.kind = VertexKind::Crossing;
    // candidates: [in1,in2,out1,out2] (sign + when first visit is over)
    // or [in1,out2,out1,in2] (the opposite sign)
    const bool first_over = p.over;
    const bool plus = code.signs[p.label - 1] > 0;
    if (first_over == plus)
      vx.rotation = {b, b + 2, b + 1, b + 3};
    else
      vx.rotation = {b, b + 3, b + 1, b + 2};
    vx.over = p.over ? std::array<int, 2>{b, b + 1}
                     : std::array<int, 2>{b + 2, b + 3};
    d.vertices[p.label - 1] = vx;
  }
  const int len = 2 * n;
  if (code.kind == Kind::Knotoid) {
    const int tail_slot = 4 * n, head_slot = 4 * n + 1;
    d.vertices.push_back({VertexKind::Tail, {tail_slot}, {-1, -1}});
    d.vertices.push_back({VertexKind::Head, {head_slot}, {-1, -1}});
    d.edges.push_back({tail_slot, entry_slot[0]});
    for (int i = 0; i + 1 < len; ++i)
      d.edges.push_back({exit_slot[i], entry_slot[i + 1]});
    d.edges.push_back({exit_slot[len - 1], head_slot});
  } else {
    for (int i = 0; i < len; ++i)
      d.edges.push_back({exit_slot[i], entry_slot[(i + 1) % len]});
  }
  d.finalize();
  return d;
}

inline std::vector<std::vector<int>> faces(const PlanarDiagram& d) {
  return d.face_list;
}

// ---------------------------------------------------------------------------
// Cut systems

/// One crossing of a cut arc over a diagram edge. `enter_slot` is the edge
/// slot on the side the arc comes from (each edge side corresponds to one of
/// its two slots); `rank` orders all cut crossings on the same edge along
/// the strand direction.
struct CutCrossing {
  int edge = -1;
  int enter_slot = -1;
  int rank = 0;
  bool operator==(const CutCrossing&) const = default;
};

/// Dual walks from the tail/head endpoint to a common point in the
/// reference face, as ordered edge-crossing lists (ordinal = list position).
struct CutSystem {
  std::vector<CutCrossing> tail_path, head_path;
  bool operator==(const CutSystem&) const = default;
};

namespace detail {

// Generic abstract map for the overlay planarity test.
struct MapBuilder {
  std::vector<std::vector<int>> rot;  // per vertex: slot list (ccw)
  std::map<int, int> al;              // slot pairing
  int next_slot = 0;

  int add_vertex() {
    rot.push_back({});
    return static_cast<int>(rot.size()) - 1;
  }
  int dart(int v) {
    rot[v].push_back(next_slot);
    return next_slot++;
  }
  void connect(int a, int b) {
    al[a] = b;
    al[b] = a;
  }
  // vertices with reserved rotation layout (slots preallocated)
  int add_vertex_slots(int count) {
    std::vector<int> r;
    for (int i = 0; i < count; ++i) r.push_back(next_slot++);
    rot.push_back(r);
    return static_cast<int>(rot.size()) - 1;
  }

  bool spherical() const {
    if (rot.empty()) return true;
    std::map<int, int> sigma;
    std::map<int, int> owner;
    for (size_t v = 0; v < rot.size(); ++v)
      for (size_t p = 0; p < rot[v].size(); ++p) {
        sigma[rot[v][p]] = rot[v][(p + 1) % rot[v].size()];
        owner[rot[v][p]] = static_cast<int>(v);
      }
    if (sigma.size() != al.size()) return false;  // dangling slot
    // connectivity
    std::set<int> vis;
    std::queue<int> q;
    q.push(0);
    vis.insert(0);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int s : rot[v]) {
        int w = owner.at(al.at(s));
        if (vis.insert(w).second) q.push(w);
      }
    }
    if (vis.size() != rot.size()) return false;
    const long V = static_cast<long>(rot.size());
    const long E = static_cast<long>(al.size()) / 2;
    const long F = static_cast<long>(trace_faces(sigma, al).size());
    return V - E + F == 2;
  }
};

// Which rotation position a transversal arriving from the side of the
// strand's departure slot attaches at, with the through strand entering at
// position 0 and leaving at position 2. The side of an edge facing a face
// is identified with the dart whose face orbit contains it; entering from
// the departure dart's side lands at position 1. Pinned by hand-traced
// face orbits of the finger-move insertions and by the planarity tests.
inline constexpr int kEnterFromSidePos = 1;

}  // namespace detail

/// Geometric validity of a cut system: the diagram with both cut arcs drawn
/// in (arcs meeting at a common free end) must still be a spherical map.
inline bool cuts_valid(const PlanarDiagram& d, const CutSystem& cuts) {
  if (d.kind != Kind::Knotoid) return false;
  auto t = traverse(d);
  // structural checks
  std::map<int, std::vector<const CutCrossing*>> on_edge;
  for (const auto* path : {&cuts.tail_path, &cuts.head_path})
    for (const auto& c : *path) {
      if (c.edge < 0 || c.edge >= (int)d.edges.size()) return false;
      if (c.enter_slot != d.edges[c.edge][0] &&
          c.enter_slot != d.edges[c.edge][1])
        return false;
      on_edge[c.edge].push_back(&c);
    }
  for (auto& [e, list] : on_edge) {
    (void)e;
    std::set<int> ranks;
    for (const auto* c : list) ranks.insert(c->rank);
    if ((int)ranks.size() != (int)list.size() ||
        *ranks.begin() != 0 || *ranks.rbegin() != (int)list.size() - 1)
      return false;
  }

  // overlay map
  detail::MapBuilder m;
  // copy diagram vertices; slot ids reused via mapping
  std::map<int, int> slot_map;  // diagram slot -> overlay slot
  for (const auto& vx : d.vertices) {
    int v = m.add_vertex_slots(static_cast<int>(vx.rotation.size()));
    for (size_t p = 0; p < vx.rotation.size(); ++p)
      slot_map[vx.rotation[p]] = m.rot[v][p];
  }
  // per cut crossing: overlay vertex with rotation
  // [strand_in, side A, strand_out, side B]; positions of the arc darts are
  // fixed by kEnterFromSidePos relative to the strand direction.
  struct XInfo {
    int in_dart, out_dart;  // arc darts: entering side, leaving side
  };
  std::map<const CutCrossing*, XInfo> xinfo;
  for (auto& [e, list] : on_edge) {
    std::sort(list.begin(), list.end(),
              [](const CutCrossing* a, const CutCrossing* b) {
                return a->rank < b->rank;
              });
    const auto dir = t.edge_dir.at(e);  // {from, to} diagram slots
    int prev = slot_map.at(dir[0]);     // overlay dart chain along strand
    for (const auto* c : list) {
      int v = m.add_vertex_slots(4);
      const auto& r = m.rot[v];
      m.connect(prev, r[0]);
      prev = r[2];
      const bool from_side = c->enter_slot == dir[0];
      const int in_pos = from_side ? detail::kEnterFromSidePos
                                   : 4 - detail::kEnterFromSidePos;
      xinfo[c] = {r[in_pos], r[4 - in_pos]};
    }
    m.connect(prev, slot_map.at(dir[1]));
  }
  // uncrossed edges
  for (size_t e = 0; e < d.edges.size(); ++e)
    if (!on_edge.count((int)e))
      m.connect(slot_map.at(d.edges[e][0]), slot_map.at(d.edges[e][1]));

  // cut arcs: endpoint vertex -> crossings in path order -> common free end
  int vinf = m.add_vertex();
  for (const auto* path : {&cuts.tail_path, &cuts.head_path}) {
    const int endpoint =
        path == &cuts.tail_path ? d.tail_vertex : d.head_vertex;
    // the endpoint vertex gains a second dart for the arc
    int arc_prev = -1;
    {
      // locate overlay vertex of the endpoint: same index as in d.vertices
      int v = endpoint;
      m.rot[v].push_back(m.next_slot);
      arc_prev = m.next_slot++;
    }
    for (const auto& c : *path) {
      const auto& xi = xinfo.at(&c);
      m.connect(arc_prev, xi.in_dart);
      arc_prev = xi.out_dart;
    }
    m.connect(arc_prev, m.dart(vinf));
  }
  return m.spherical();
}

namespace detail {

// All simple dual paths from the face containing `endpoint` to `ref_face`,
// ordered by length then lexicographically; each path is a crossing list.
inline std::vector<std::vector<CutCrossing>> dual_paths(
    const PlanarDiagram& d, int endpoint_vertex, int ref_face,
    size_t max_paths) {
  const int f0 = d.face_of.at(d.vertices[endpoint_vertex].rotation[0]);
  std::vector<std::vector<CutCrossing>> out;
  struct State {
    std::vector<int> faces;
    std::vector<CutCrossing> path;
  };
  std::vector<State> frontier{{{f0}, {}}};
  while (!frontier.empty() && out.size() < max_paths) {
    std::vector<State> next;
    for (auto& st : frontier) {
      if (st.faces.back() == ref_face) {
        out.push_back(st.path);
        if (out.size() >= max_paths) break;
        continue;
      }
      // expand over edges on the current face boundary, ascending edge id
      std::set<int> cand;
      for (int s : d.face_list[st.faces.back()]) cand.insert(d.slot_edge.at(s));
      for (int e : cand) {
        // enter from the side whose slot lies on the current face
        int enter = d.face_of.at(d.edges[e][0]) == st.faces.back()
                        ? d.edges[e][0]
                        : d.edges[e][1];
        if (d.face_of.at(enter) != st.faces.back()) continue;
        int other = d.alpha.at(enter);
        int nf = d.face_of.at(other);
        if (std::find(st.faces.begin(), st.faces.end(), nf) !=
            st.faces.end())
          continue;  // keep dual walks simple
        State ns = st;
        ns.faces.push_back(nf);
        ns.path.push_back({e, enter, 0});
        next.push_back(std::move(ns));
      }
    }
    frontier = std::move(next);
  }
  return out;
}

}  // namespace detail

/// Deterministic valid cut systems for a knotoid diagram, up to `count`
/// of them, shortest first. The reference face is the marked outer face
/// when present, otherwise every face is tried.
inline std::vector<CutSystem> enumerate_cut_systems(const PlanarDiagram& d,
                                                    size_t count) {
  if (d.kind != Kind::Knotoid)
    throw InvalidCutSystem("cut systems require a knotoid diagram");
  std::vector<int> refs;
  if (d.outer_face)
    refs.push_back(*d.outer_face);
  else
    for (size_t f = 0; f < d.face_list.size(); ++f) refs.push_back((int)f);
  std::vector<CutSystem> out;
  for (int ref : refs) {
    auto tails = detail::dual_paths(d, d.tail_vertex, ref, 12);
    auto heads = detail::dual_paths(d, d.head_vertex, ref, 12);
    for (const auto& tp : tails) {
      for (const auto& hp : heads) {
        CutSystem cs{tp, hp};
        // rank shared edges: tail crossings first, in path order
        std::map<int, int> next_rank;
        for (auto* path : {&cs.tail_path, &cs.head_path})
          for (auto& c : *path) c.rank = next_rank[c.edge]++;
        if (!cuts_valid(d, cs)) {
          // try the opposite interleaving on shared edges
          std::map<int, int> hi;
          for (auto* path : {&cs.head_path, &cs.tail_path})
            for (auto& c : *path) c.rank = hi[c.edge]++;
          if (!cuts_valid(d, cs)) continue;
        }
        if (std::find(out.begin(), out.end(), cs) == out.end()) {
          out.push_back(cs);
          if (out.size() >= count) return out;
        }
      }
    }
  }
  return out;
}

/// The default cut system: the first valid one in the deterministic order.
inline CutSystem auto_cuts(const PlanarDiagram& d) {
  auto all = enumerate_cut_systems(d, 1);
  if (all.empty())
    throw InvalidCutSystem("no valid cut system found");
  return all.front();
}

/// Fully annotated generalized Gauss code: walk the strand and interleave
/// cut entries at their positions along each edge.
inline GeneralizedGaussCode to_ggc(const PlanarDiagram& d,
                                   const CutSystem& cuts) {
  if (d.kind != Kind::Knotoid)
    throw InvalidCutSystem("generalized codes require a knotoid diagram");
  if (!cuts_valid(d, cuts))
    throw InvalidCutSystem("cut system is not drawable on this diagram");
  auto gauss_part = to_gauss(d);  // canonical labels in first-visit order
  auto t = traverse(d);

  // cut entries per edge, by rank
  struct Hit {
    int rank;
    CutArc arc;
    int direction;
    int ordinal;
  };
  std::map<int, std::vector<Hit>> on_edge;
  for (const auto* path : {&cuts.tail_path, &cuts.head_path}) {
    const CutArc arc =
        path == &cuts.tail_path ? CutArc::Tail : CutArc::Head;
    int ordinal = 0;
    for (const auto& c : *path) {
      ++ordinal;
      const auto dir = t.edge_dir.at(c.edge);
      const int direction = c.enter_slot == dir[0] ? 1 : -1;
      on_edge[c.edge].push_back({c.rank, arc, direction, ordinal});
    }
  }
  for (auto& [e, hits] : on_edge) {
    (void)e;
    std::sort(hits.begin(), hits.end(),
              [](const Hit& a, const Hit& b) { return a.rank < b.rank; });
  }

  GeneralizedGaussCode out;
  out.signs = gauss_part.signs;
  size_t pos = 0;  // index into gauss_part.sequence
  for (int e : t.edge_order) {
    auto it = on_edge.find(e);
    if (it != on_edge.end())
      for (const auto& h : it->second)
        out.sequence.push_back(CutEntry{h.arc, h.direction, h.ordinal});
    if (pos < gauss_part.sequence.size())
      out.sequence.push_back(gauss_part.sequence[pos++]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Diagram surgeries

namespace detail {

// Rotation layout for a new crossing where `trans` crosses the through
// strand: through enters position 0 and leaves 2; the transversal's
// incoming dart sits at kEnterFromSidePos when it comes from the side of
// the through strand's departure slot.
struct NewCrossing {
  int through_in, through_out, trans_in, trans_out;  // slot ids
  std::vector<int> rotation;
};

inline NewCrossing make_crossing(int& next_slot, bool from_departure_side) {
  NewCrossing x;
  x.through_in = next_slot++;
  x.through_out = next_slot++;
  x.trans_in = next_slot++;
  x.trans_out = next_slot++;
  std::array<int, 4> rot{};
  rot[0] = x.through_in;
  rot[2] = x.through_out;
  const int in_pos = from_departure_side ? kEnterFromSidePos
                                         : 4 - kEnterFromSidePos;
  rot[in_pos] = x.trans_in;
  rot[4 - in_pos] = x.trans_out;
  x.rotation.assign(rot.begin(), rot.end());
  return x;
}

}  // namespace detail

/// Close the knotoid by an arc from head to tail running under (over) every
/// strand it meets; the routing follows the first valid dual path from the
/// head face to the tail face.
inline PlanarDiagram close_endpoints(const PlanarDiagram& d, bool new_under,
                                     const std::vector<CutCrossing>* route =
                                         nullptr) {
  if (d.kind != Kind::Knotoid)
    throw InvalidSite("closure requires a knotoid diagram");
  if (d.vertices.size() == 2) {  // crossingless: the 0-crossing unknot
    PlanarDiagram out;
    out.kind = Kind::Knot;
    out.finalize();
    return out;
  }
  auto t = traverse(d);
  std::vector<CutCrossing> path;
  if (route) {
    path = *route;
  } else {
    const int tail_face = d.face_of.at(d.vertices[d.tail_vertex].rotation[0]);
    auto cands = detail::dual_paths(d, d.head_vertex, tail_face, 8);
    for (const auto& cand : cands) {
      try {
        return close_endpoints(d, new_under, &cand);
      } catch (const Error&) {
      }
    }
    throw InvalidSite("no routing for closure found");
  }

  PlanarDiagram out;
  out.kind = Kind::Knot;
  out.vertices = d.vertices;
  out.edges.clear();
  int next_slot = d.max_slot() + 1;

  std::map<int, std::vector<std::pair<int, detail::NewCrossing>>> on_edge;
  std::vector<detail::NewCrossing> chain;  // along the new arc
  for (size_t i = 0; i < path.size(); ++i) {
    const auto dir = t.edge_dir.at(path[i].edge);
    auto x = detail::make_crossing(next_slot, path[i].enter_slot == dir[0]);
    on_edge[path[i].edge].push_back({(int)i, x});
    chain.push_back(x);
  }
  // old edges, subdivided where crossed (rank = order along the new arc is
  // also the order along the old edge only when the edge is crossed once;
  // dual_paths crosses each edge at most once, routes given explicitly must
  // do the same)
  for (auto& [e, xs] : on_edge)
    if (xs.size() != 1)
      throw InvalidSite("closure arc may cross an edge only once");
  for (size_t e = 0; e < d.edges.size(); ++e) {
    auto it = on_edge.find((int)e);
    const auto dir = t.edge_dir.at((int)e);
    if (it == on_edge.end()) {
      out.edges.push_back({dir[0], dir[1]});
    } else {
      const auto& x = it->second.front().second;
      out.edges.push_back({dir[0], x.through_in});
      out.edges.push_back({x.through_out, dir[1]});
    }
  }
  // new crossing vertices
  for (const auto& x : chain) {
    Vertex vx;
    vx.kind = VertexKind::Crossing;
    vx.rotation = x.rotation;
    vx.over = new_under ? std::array<int, 2>{x.through_in, x.through_out}
                        : std::array<int, 2>{x.trans_in, x.trans_out};
    out.vertices.push_back(vx);
  }
  // splice the connecting arc: strand-into-head -> chain -> strand-from-tail,
  // smoothing away both endpoint vertices
  const int head_slot = d.vertices[d.head_vertex].rotation[0];
  const int tail_slot = d.vertices[d.tail_vertex].rotation[0];
  int cursor = -1, tail_loose = -1;  // loose strand ends after smoothing
  std::vector<std::array<int, 2>> kept;
  for (auto& e : out.edges) {
    if (e[0] == head_slot || e[1] == head_slot) {
      cursor = e[0] == head_slot ? e[1] : e[0];
      continue;
    }
    if (e[0] == tail_slot || e[1] == tail_slot) {
      tail_loose = e[0] == tail_slot ? e[1] : e[0];
      continue;
    }
    kept.push_back(e);
  }
  out.edges = std::move(kept);
  for (const auto& x : chain) {
    out.edges.push_back({cursor, x.trans_in});
    cursor = x.trans_out;
  }
  out.edges.push_back({cursor, tail_loose});
  // drop endpoint vertices (their slots are gone)
  std::vector<Vertex> vs;
  for (size_t v = 0; v < out.vertices.size(); ++v)
    if ((int)v != d.tail_vertex && (int)v != d.head_vertex)
      vs.push_back(out.vertices[v]);
  out.vertices = std::move(vs);
  out.finalize();
  return out;
}

inline PlanarDiagram close_under(const PlanarDiagram& d) {
  return close_endpoints(d, true);
}
inline PlanarDiagram close_over(const PlanarDiagram& d) {
  return close_endpoints(d, false);
}

/// Cut a knot diagram open along an edge, producing a knot-type knotoid.
inline PlanarDiagram alpha_cut(const PlanarDiagram& d, int edge) {
  if (d.kind != Kind::Knot) throw InvalidSite("alpha cut requires a knot");
  if (edge < 0 || edge >= (int)d.edges.size())
    throw InvalidSite("no such edge");
  if (d.edges.empty()) throw InvalidSite("cannot cut the empty diagram");
  auto t = traverse(d);
  const auto dir = t.edge_dir.at(edge);
  PlanarDiagram out;
  out.kind = Kind::Knotoid;
  out.vertices = d.vertices;
  out.edges = d.edges;
  int next_slot = d.max_slot() + 1;
  const int head_slot = next_slot++;
  const int tail_slot = next_slot++;
  out.edges[edge] = {dir[0], head_slot};  // curve ends coming from dir[0]
  out.edges.push_back({tail_slot, dir[1]});
  out.vertices.push_back({VertexKind::Head, {head_slot}, {-1, -1}});
  out.vertices.push_back({VertexKind::Tail, {tail_slot}, {-1, -1}});
  out.finalize();
  return out;
}

/// Diagram-level product: delete d1's head and d2's tail and join the
/// loose strands.
inline PlanarDiagram product_diagram(const PlanarDiagram& d1,
                                     const PlanarDiagram& d2) {
  if (d1.kind != Kind::Knotoid || d2.kind != Kind::Knotoid)
    throw InvalidSite("product requires two knotoid diagrams");
  PlanarDiagram out;
  out.kind = Kind::Knotoid;
  const int shift = d1.max_slot() + 1;
  // copy d1 without its head, d2 without its tail
  int d1_loose = d1.alpha.at(d1.vertices[d1.head_vertex].rotation[0]);
  int d2_loose = d2.alpha.at(d2.vertices[d2.tail_vertex].rotation[0]) + shift;
  for (size_t v = 0; v < d1.vertices.size(); ++v)
    if ((int)v != d1.head_vertex) out.vertices.push_back(d1.vertices[v]);
  for (size_t v = 0; v < d2.vertices.size(); ++v)
    if ((int)v != d2.tail_vertex) {
      Vertex vx = d2.vertices[v];
      for (int& s : vx.rotation) s += shift;
      if (vx.kind == VertexKind::Crossing)
        for (int& s : vx.over) s += shift;
      out.vertices.push_back(vx);
    }
  const int h1 = d1.vertices[d1.head_vertex].rotation[0];
  const int t2 = d2.vertices[d2.tail_vertex].rotation[0] + shift;
  for (const auto& e : d1.edges)
    if (e[0] != h1 && e[1] != h1) out.edges.push_back(e);
  for (const auto& e : d2.edges) {
    std::array<int, 2> f{e[0] + shift, e[1] + shift};
    if (f[0] != t2 && f[1] != t2) out.edges.push_back(f);
  }
  out.edges.push_back({d1_loose, d2_loose});
  out.finalize();
  return out;
}

/// Insert a Reidemeister-1 kink of the requested sign on an edge.
inline PlanarDiagram r1_insert(const PlanarDiagram& d, int edge, int sign) {
  if (edge < 0 || edge >= (int)d.edges.size())
    throw InvalidSite("no such edge");
  if (sign != 1 && sign != -1) throw InvalidSite("kink sign must be +1/-1");
  auto t = traverse(d);
  const auto dir = t.edge_dir.at(edge);
  PlanarDiagram out = d;
  out.outer_face.reset();
  int b = d.max_slot() + 1;  // slots: a=b+0 in1, o1=b+1, in2=b+2, out2=b+3
  Vertex vx;
  vx.kind = VertexKind::Crossing;
  // first passage over; rotation choice sets the sign (see realize_code)
  vx.over = {b, b + 1};
  vx.rotation = sign > 0 ? std::vector<int>{b, b + 2, b + 1, b + 3}
                         : std::vector<int>{b, b + 3, b + 1, b + 2};
  out.vertices.push_back(vx);
  out.edges[edge] = {dir[0], b};
  out.edges.push_back({b + 1, b + 2});  // the kink loop
  out.edges.push_back({b + 3, dir[1]});
  out.finalize();
  return out;
}

/// Insert a Reidemeister-2 finger: the strand of `slot1`'s edge is pushed
/// across the strand of `slot2`'s edge through their common face; the
/// first strand passes over both new crossings when `first_over`.
inline PlanarDiagram r2_insert(const PlanarDiagram& d, int slot1, int slot2,
                               bool first_over) {
  if (!d.slot_at.count(slot1) || !d.slot_at.count(slot2))
    throw InvalidSite("no such slot");
  const int e1 = d.slot_edge.at(slot1), e2 = d.slot_edge.at(slot2);
  if (e1 == e2 && slot1 == slot2) throw InvalidSite("need two face sides");
  if (d.face_of.at(slot1) != d.face_of.at(slot2))
    throw InvalidSite("the two sides must bound a common face");
  auto t = traverse(d);
  const auto dir1 = t.edge_dir.at(e1);
  const auto dir2 = t.edge_dir.at(e2);

  if (e1 == e2) throw InvalidSite("finger move needs two distinct edges");

  // strand1 crosses e2 twice: into the far region and back. Which side it
  // crosses from first and which of the two crossings strand2 meets first
  // depend on how the common face's boundary interleaves the two edges, so
  // try the four layouts and keep the first spherical one that leaves the
  // cancelling bigon between the crossings.
  auto attempt = [&](bool flip, bool swap_chain) {
    PlanarDiagram out = d;
    out.outer_face.reset();
    int next_slot = d.max_slot() + 1;
    const bool from_side = (slot2 == dir2[0]) != flip;
    auto x1 = detail::make_crossing(next_slot, from_side);   // first on strand1
    auto x2 = detail::make_crossing(next_slot, !from_side);  // second
    // strand2 = through strand at both crossings
    Vertex v1, v2;
    v1.kind = v2.kind = VertexKind::Crossing;
    v1.rotation = x1.rotation;
    v2.rotation = x2.rotation;
    v1.over = first_over ? std::array<int, 2>{x1.trans_in, x1.trans_out}
                         : std::array<int, 2>{x1.through_in, x1.through_out};
    v2.over = first_over ? std::array<int, 2>{x2.trans_in, x2.trans_out}
                         : std::array<int, 2>{x2.through_in, x2.through_out};
    out.vertices.push_back(v1);
    out.vertices.push_back(v2);
    // e2 subdivided along strand2
    const auto& fst = swap_chain ? x2 : x1;
    const auto& snd = swap_chain ? x1 : x2;
    out.edges[e2] = {dir2[0], fst.through_in};
    out.edges.push_back({fst.through_out, snd.through_in});
    out.edges.push_back({snd.through_out, dir2[1]});
    // e1 subdivided along strand1: x1 then x2 via the transversal darts
    out.edges[e1] = {dir1[0], x1.trans_in};
    out.edges.push_back({x1.trans_out, x2.trans_in});
    out.edges.push_back({x2.trans_out, dir1[1]});
    out.finalize();
    // the middle segments must bound a bigon, or the insertion is a clasp
    const std::array<int, 2> m1{x1.trans_out, x2.trans_in};
    const std::array<int, 2> m2{fst.through_out, snd.through_in};
    for (const auto& face : out.face_list) {
      if (face.size() != 2) continue;
      const bool on1 = face[0] == m1[0] || face[0] == m1[1] ||
                       face[1] == m1[0] || face[1] == m1[1];
      const bool on2 = face[0] == m2[0] || face[0] == m2[1] ||
                       face[1] == m2[0] || face[1] == m2[1];
      if (on1 && on2) return out;
    }
    throw InvalidSite("no bigon between the new crossings");
  };
  for (bool flip : {false, true})
    for (bool swap_chain : {false, true}) {
      try {
        return attempt(flip, swap_chain);
      } catch (const Error&) {
      }
    }
  throw InvalidSite("finger move not drawable at this site");
}

// ---------------------------------------------------------------------------
// JSON formats

inline nlohmann::json diagram_to_json(const PlanarDiagram& d) {
  nlohmann::json verts = nlohmann::json::array();
  for (size_t v = 0; v < d.vertices.size(); ++v) {
    const auto& vx = d.vertices[v];
    nlohmann::json jv = {{"id", v},
                         {"kind", vx.kind == VertexKind::Crossing ? "crossing"
                                  : vx.kind == VertexKind::Tail ? "tail"
                                                                : "head"},
                         {"rotation", vx.rotation}};
    if (vx.kind == VertexKind::Crossing)
      jv["over_slots"] = std::vector<int>{vx.over[0], vx.over[1]};
    verts.push_back(jv);
  }
  nlohmann::json j = {{"kind", d.kind == Kind::Knot ? "knot" : "knotoid"},
                      {"vertices", verts},
                      {"edges", d.edges}};
  if (d.outer_face) j["outer_face"] = *d.outer_face;
  return j;
}

inline PlanarDiagram diagram_from_json(const nlohmann::json& j) {
  PlanarDiagram d;
  d.kind = j.value("kind", "knotoid") == std::string("knot") ? Kind::Knot
                                                             : Kind::Knotoid;
  for (const auto& jv : j.at("vertices")) {
    Vertex vx;
    const std::string k = jv.at("kind");
    vx.kind = k == "crossing" ? VertexKind::Crossing
              : k == "tail"   ? VertexKind::Tail
              : k == "head"   ? VertexKind::Head
                              : throw MalformedSyntax("bad vertex kind " + k);
    vx.rotation = jv.at("rotation").get<std::vector<int>>();
    if (vx.kind == VertexKind::Crossing) {
      auto ov = jv.at("over_slots").get<std::vector<int>>();
      if (ov.size() != 2) throw MalformedSyntax("over_slots needs 2 entries");
      vx.over = {ov[0], ov[1]};
    }
    d.vertices.push_back(vx);
  }
  for (const auto& je : j.at("edges")) {
    auto e = je.get<std::vector<int>>();
    if (e.size() != 2) throw MalformedSyntax("edge needs 2 slots");
    d.edges.push_back({e[0], e[1]});
  }
  if (j.contains("outer_face")) d.outer_face = j.at("outer_face").get<int>();
  d.finalize();
  return d;
}

inline nlohmann::json cuts_to_json(const CutSystem& cuts) {
  auto path = [](const std::vector<CutCrossing>& p) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& c : p)
      out.push_back(
          {{"edge", c.edge}, {"enter_slot", c.enter_slot}, {"rank", c.rank}});
    return out;
  };
  return {{"tail_path", path(cuts.tail_path)},
          {"head_path", path(cuts.head_path)}};
}

inline CutSystem cuts_from_json(const nlohmann::json& j) {
  CutSystem cs;
  auto read = [](const nlohmann::json& jp, std::vector<CutCrossing>& out) {
    for (const auto& jc : jp)
      out.push_back({jc.at("edge").get<int>(), jc.at("enter_slot").get<int>(),
                     jc.value("rank", 0)});
  };
  read(j.at("tail_path"), cs.tail_path);
  read(j.at("head_path"), cs.head_path);
  return cs;
}

/// Validated construction from the JSON vertex/edge description.
inline PlanarDiagram build_diagram(const nlohmann::json& spec) {
  return diagram_from_json(spec);
}

}  // namespace knotoid

#endif  // KNOTOID_PLANAR_HPP_
