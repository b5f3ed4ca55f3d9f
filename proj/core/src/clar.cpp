#include "sinkstable/clar.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>

#include "sinkstable/dicut.hpp"
#include "sinkstable/optimize.hpp"
#include "sinkstable/stability.hpp"

namespace sinkstable {

namespace {

std::vector<NodeId> shared_endpoints(const Edge& a, const Edge& b) {
  std::vector<NodeId> out;
  for (NodeId v : {a.tail, a.head})
    if (v == b.tail || v == b.head) out.push_back(v);
  if (out.size() == 2 && out[0] == out[1]) out.pop_back();
  return out;
}

std::vector<std::vector<EdgeId>> incidence(const PlaneBipartiteGraph& g) {
  std::vector<std::vector<EdgeId>> inc(g.n);
  for (EdgeId e = 0; e < static_cast<int>(g.edges.size()); ++e) {
    inc[g.edges[e].tail].push_back(e);
    inc[g.edges[e].head].push_back(e);
  }
  return inc;
}

NodeId other_end(const Edge& a, NodeId v) { return a.tail == v ? a.head : a.tail; }

}  // namespace

std::vector<NodeId> face_nodes(const PlaneBipartiteGraph& g, const std::vector<EdgeId>& face) {
  const int r = static_cast<int>(face.size());
  if (r < 2) throw input_error("boundary shorter than 2 edges");
  for (EdgeId e : face)
    if (e < 0 || e >= static_cast<int>(g.edges.size()))
      throw input_error("boundary edge id out of range");
  std::vector<NodeId> nodes(r);
  if (r == 2) {
    const Edge& a = g.edges[face[0]];
    const Edge& b = g.edges[face[1]];
    if (face[0] == face[1] || !(a == b || (a.tail == b.head && a.head == b.tail)))
      throw input_error("2-edge boundary is not a pair of parallel edges");
    nodes[0] = std::min(a.tail, a.head);
    nodes[1] = std::max(a.tail, a.head);
  } else {
    for (int i = 0; i < r; ++i) {
      auto s = shared_endpoints(g.edges[face[(i + r - 1) % r]], g.edges[face[i]]);
      if (s.empty()) throw input_error("consecutive boundary edges do not meet");
      if (s.size() > 1) throw input_error("ambiguous boundary corner");
      nodes[i] = s[0];
    }
  }
  std::vector<NodeId> sorted = nodes;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw input_error("boundary revisits a node");
  for (int i = 0; i < r; ++i) {
    const Edge& a = g.edges[face[i]];
    NodeId u = nodes[i], v = nodes[(i + 1) % r];
    if (!((a.tail == u && a.head == v) || (a.tail == v && a.head == u)))
      throw input_error("boundary edge does not join its corners");
  }
  return nodes;
}

void validate_plane_graph(const PlaneBipartiteGraph& g) {
  const int n = g.n;
  const int m = static_cast<int>(g.edges.size());
  if (n < 2) throw input_error("plane graph needs at least 2 nodes");
  if (g.s_side.universe() != n || g.t_side.universe() != n)
    throw input_error("bipartition universe mismatch");
  for (NodeId v = 0; v < n; ++v)
    if (g.s_side.contains(v) == g.t_side.contains(v))
      throw input_error("bipartition does not partition the nodes");
  for (const Edge& a : g.edges) {
    if (a.tail < 0 || a.tail >= n || a.head < 0 || a.head >= n)
      throw input_error("edge endpoint out of range");
    if (g.s_side.contains(a.tail) == g.s_side.contains(a.head))
      throw input_error("edge inside a bipartition class");
  }
  if (n - m + static_cast<int>(g.faces.size()) + 1 != 2)
    throw input_error("embedding fails the Euler relation");

  std::vector<int> uses(m, 0);
  for (const std::vector<EdgeId>& face : g.faces) {
    face_nodes(g, face);
    for (EdgeId e : face) ++uses[e];
  }
  face_nodes(g, g.outer);
  for (EdgeId e : g.outer) ++uses[e];
  for (EdgeId e = 0; e < m; ++e)
    if (uses[e] != 2) throw input_error("edge " + std::to_string(e) + " is not on 2 boundaries");

  // connectivity and 2-connectivity (iterative DFS, parallel edges allowed)
  auto inc = incidence(g);
  std::vector<int> disc(n, -1), low(n, 0), child(n, 0);
  std::vector<std::pair<NodeId, size_t>> stack;
  std::vector<EdgeId> via(n, -1);
  int timer = 0;
  disc[0] = low[0] = timer++;
  stack.push_back({0, 0});
  while (!stack.empty()) {
    auto& [v, i] = stack.back();
    if (i < inc[v].size()) {
      EdgeId e = inc[v][i++];
      if (e == via[v]) continue;
      NodeId u = other_end(g.edges[e], v);
      if (disc[u] == -1) {
        disc[u] = low[u] = timer++;
        via[u] = e;
        if (v == 0) ++child[0];
        stack.push_back({u, 0});
      } else {
        low[v] = std::min(low[v], disc[u]);
      }
    } else {
      stack.pop_back();
      if (!stack.empty()) {
        NodeId p = stack.back().first;
        low[p] = std::min(low[p], low[v]);
        if (p != 0 && low[v] >= disc[p]) throw input_error("graph is not 2-connected");
      }
    }
  }
  for (NodeId v = 0; v < n; ++v)
    if (disc[v] == -1) throw input_error("graph is not connected");
  if (child[0] > 1) throw input_error("graph is not 2-connected");
}

namespace {

/// Kuhn's augmenting-path matching restricted to active nodes.
struct BipMatching {
  std::vector<NodeId> mate;
  std::vector<EdgeId> mate_edge;
};

bool augment(const PlaneBipartiteGraph& g, const std::vector<std::vector<EdgeId>>& inc,
             const std::vector<char>& active, std::vector<char>& seen, BipMatching& bm,
             NodeId s) {
  for (EdgeId e : inc[s]) {
    NodeId t = other_end(g.edges[e], s);
    if (!active[t] || seen[t]) continue;
    seen[t] = 1;
    if (bm.mate[t] == -1 || augment(g, inc, active, seen, bm, bm.mate[t])) {
      bm.mate[s] = t;
      bm.mate_edge[s] = e;
      bm.mate[t] = s;
      bm.mate_edge[t] = e;
      return true;
    }
  }
  return false;
}

BipMatching max_matching(const PlaneBipartiteGraph& g, const std::vector<char>& active) {
  auto inc = incidence(g);
  BipMatching bm{std::vector<NodeId>(g.n, -1), std::vector<EdgeId>(g.n, -1)};
  for (NodeId s = 0; s < g.n; ++s) {
    if (!g.s_side.contains(s) || !active[s]) continue;
    std::vector<char> seen(g.n, 0);
    augment(g, inc, active, seen, bm, s);
  }
  return bm;
}

bool all_matched(const PlaneBipartiteGraph& g, const std::vector<char>& active,
                 const BipMatching& bm) {
  for (NodeId v = 0; v < g.n; ++v)
    if (active[v] && bm.mate[v] == -1) return false;
  return true;
}

EdgeSet matching_edges(const PlaneBipartiteGraph& g, const BipMatching& bm) {
  EdgeSet out(static_cast<int>(g.edges.size()));
  for (NodeId v = 0; v < g.n; ++v)
    if (g.s_side.contains(v) && bm.mate[v] != -1) out.add(bm.mate_edge[v]);
  return out;
}

}  // namespace

std::variant<EdgeSet, HallViolator> perfect_matching(const PlaneBipartiteGraph& g) {
  validate_plane_graph(g);
  std::vector<char> active(g.n, 1);
  if (g.s_side.count() != g.t_side.count()) {
    // the larger class violates Hall outright
    const NodeSet& big = g.s_side.count() > g.t_side.count() ? g.s_side : g.t_side;
    const NodeSet& small = g.s_side.count() > g.t_side.count() ? g.t_side : g.s_side;
    return HallViolator{big, small};
  }
  BipMatching bm = max_matching(g, active);
  if (all_matched(g, active, bm)) return matching_edges(g, bm);

  // alternating reachability from the unmatched S-nodes
  auto inc = incidence(g);
  HallViolator h{NodeSet(g.n), NodeSet(g.n)};
  std::vector<NodeId> queue;
  std::vector<char> seen(g.n, 0);
  for (NodeId s = 0; s < g.n; ++s)
    if (g.s_side.contains(s) && bm.mate[s] == -1) {
      queue.push_back(s);
      seen[s] = 1;
    }
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    NodeId s = queue[qi];
    h.s_nodes.add(s);
    for (EdgeId e : inc[s]) {
      NodeId t = other_end(g.edges[e], s);
      h.neighborhood.add(t);
      if (bm.mate[t] != -1 && !seen[bm.mate[t]]) {
        seen[bm.mate[t]] = 1;
        queue.push_back(bm.mate[t]);
      }
    }
  }
  if (h.neighborhood.count() >= h.s_nodes.count())
    throw std::logic_error("deficiency witness failed Hall's condition");
  return h;
}

DualGraph dual_digraph(const PlaneBipartiteGraph& g, const EdgeSet& m) {
  validate_plane_graph(g);
  const int me = static_cast<int>(g.edges.size());
  if (m.universe() != me) throw input_error("matching universe mismatch");
  std::vector<int> covered(g.n, 0);
  for (EdgeId e : m.ids()) {
    ++covered[g.edges[e].tail];
    ++covered[g.edges[e].head];
  }
  for (NodeId v = 0; v < g.n; ++v)
    if (covered[v] != 1) throw input_error("not a perfect matching");

  // S -> T orientation of the primal
  std::vector<NodeId> dtail(me), dhead(me);
  for (EdgeId e = 0; e < me; ++e) {
    dtail[e] = g.s_side.contains(g.edges[e].tail) ? g.edges[e].tail : g.edges[e].head;
    dhead[e] = other_end(g.edges[e], dtail[e]);
  }

  const int nf = static_cast<int>(g.faces.size());
  std::vector<Edge> dual(me, {-1, -1});
  std::vector<int> proposals(me, 0);
  auto propose = [&](int face_id, const std::vector<EdgeId>& face, bool bounded) {
    std::vector<NodeId> ns = face_nodes(g, face);
    for (size_t j = 0; j < face.size(); ++j) {
      EdgeId e = face[j];
      bool against = ns[j] == dhead[e];  // traversal runs head -> tail of D
      bool from_this = bounded ? against : !against;  // outer sense is flipped
      // the other face fills in symmetrically; both must agree
      Edge prop = from_this ? Edge{face_id, -1} : Edge{-1, face_id};
      if (proposals[e] == 0) {
        dual[e] = prop;
      } else {
        Edge& d = dual[e];
        if (from_this ? d.tail != -1 : d.head != -1)
          throw input_error("malformed embedding: inconsistent dual orientation");
        (from_this ? d.tail : d.head) = face_id;
      }
      ++proposals[e];
    }
  };
  for (int i = 0; i < nf; ++i) propose(i, g.faces[i], true);
  propose(nf, g.outer, false);
  for (EdgeId e = 0; e < me; ++e)
    if (proposals[e] != 2 || dual[e].tail == -1 || dual[e].head == -1)
      throw input_error("malformed embedding: inconsistent dual orientation");

  DualGraph out;
  out.dstar = Digraph(nf + 1, std::move(dual));
  out.outer_node = nf;
  out.f = EdgeSet(me);
  for (EdgeId e : m.ids()) out.f.add(e);
  if (!is_strongly_connected(out.dstar))
    throw input_error("malformed embedding: dual is not strongly connected");
  if (!is_flat(out.dstar, out.f))
    throw input_error("malformed embedding: dual matching is not flat");
  return out;
}

namespace {

Digraph st_orientation(const PlaneBipartiteGraph& g) {
  std::vector<Edge> es;
  for (const Edge& a : g.edges)
    es.push_back(g.s_side.contains(a.tail) ? a : Edge{a.head, a.tail});
  return Digraph(g.n, std::move(es));
}

/// A di-circuit of the dual is a minimal dicut of the S->T orientation; its
/// node side Z is the union of the components of G - B containing the heads.
FeasibleCut cut_from_dicircuit(const PlaneBipartiteGraph& g, const Digraph& dorient,
                               const EdgeSet& m, const DiCircuit& k) {
  FeasibleCut cut;
  cut.edges = EdgeSet(static_cast<int>(g.edges.size()));
  for (EdgeId e : k.edges) cut.edges.add(e);

  std::vector<int> comp(g.n);
  std::iota(comp.begin(), comp.end(), 0);
  std::function<int(int)> find = [&](int v) {
    while (comp[v] != v) v = comp[v] = comp[comp[v]];
    return v;
  };
  for (EdgeId e = 0; e < dorient.edge_count(); ++e)
    if (!cut.edges.contains(e)) comp[find(dorient.edge(e).tail)] = find(dorient.edge(e).head);
  std::vector<char> in_z(g.n, 0);
  for (EdgeId e : cut.edges.ids()) in_z[find(dorient.edge(e).head)] = 1;
  cut.z = NodeSet(g.n);
  for (NodeId v = 0; v < g.n; ++v)
    if (in_z[find(v)]) cut.z.add(v);

  if (!(entering_edges(dorient, cut.z) == cut.edges) || !is_dicut_set(dorient, cut.z))
    throw std::logic_error("dual di-circuit is not a dicut of the orientation");
  long long s_in = 0, t_in = 0;
  for (NodeId v : cut.z.ids()) (g.s_side.contains(v) ? s_in : t_in) += 1;
  for (EdgeId e : cut.edges.ids())
    if (m.contains(e)) ++cut.value;
  if (cut.value != t_in - s_in)
    throw std::logic_error("cut value disagrees with the side counts");
  return cut;
}

NodeSet boundary_nodes(const PlaneBipartiteGraph& g, const NodeSet& faces) {
  if (faces.universe() != static_cast<int>(g.faces.size()))
    throw input_error("face set universe mismatch");
  NodeSet nodes(g.n);
  for (int i : faces.ids())
    for (NodeId v : face_nodes(g, g.faces[i])) {
      if (nodes.contains(v)) throw input_error("faces share node " + std::to_string(v));
      nodes.add(v);
    }
  return nodes;
}

/// Matching of the graph minus the faces' boundary nodes, if one exists.
std::optional<BipMatching> rest_matching(const PlaneBipartiteGraph& g, const NodeSet& faces) {
  NodeSet del = boundary_nodes(g, faces);
  std::vector<char> active(g.n, 1);
  for (NodeId v : del.ids()) active[v] = 0;
  BipMatching bm = max_matching(g, active);
  if (!all_matched(g, active, bm)) return std::nullopt;
  return bm;
}

}  // namespace

bool check_resonant(const PlaneBipartiteGraph& g, const NodeSet& faces) {
  validate_plane_graph(g);
  return rest_matching(g, faces).has_value();
}

ClarResult clar_number(const PlaneBipartiteGraph& g) {
  auto pm = perfect_matching(g);
  if (!std::holds_alternative<EdgeSet>(pm))
    throw input_error("graph is not perfectly matchable");
  const EdgeSet& m = std::get<EdgeSet>(pm);
  DualGraph dual = dual_digraph(g, m);
  const int nf = static_cast<int>(g.faces.size());
  std::vector<long long> w(nf + 1, 1);
  w[dual.outer_node] = 0;

  MinMaxResult r = max_F_stable(dual.dstar, dual.f, w);
  ClarResult out;
  out.value = r.value;
  out.resonant = NodeSet(nf);
  for (int i = 0; i < nf; ++i)
    if (r.primal[i] == 1) out.resonant.add(i);

  Digraph dorient = st_orientation(g);
  long long cut_total = 0;
  for (const WeightedDiCircuit& wk : r.dual) {
    FeasibleCut cut = cut_from_dicircuit(g, dorient, m, wk.circuit);
    cut_total += wk.mult * cut.value;
    for (long long t = 0; t < wk.mult; ++t) out.cuts.push_back(cut);
  }
  if (cut_total != out.value || static_cast<long long>(out.resonant.count()) != out.value)
    throw std::logic_error("resonant set and cut family values disagree");

  auto rest = rest_matching(g, out.resonant);
  if (!rest) throw std::logic_error("optimal face set is not resonant");
  out.matching = matching_edges(g, *rest);
  for (int i : out.resonant.ids()) {
    const std::vector<EdgeId>& fe = g.faces[i];
    if (fe.size() % 2 != 0) throw std::logic_error("resonant face boundary is odd");
    for (size_t j = 0; j < fe.size(); j += 2) out.matching.add(fe[j]);
  }
  std::vector<int> covered(g.n, 0);
  for (EdgeId e : out.matching.ids()) {
    ++covered[g.edges[e].tail];
    ++covered[g.edges[e].head];
  }
  for (NodeId v = 0; v < g.n; ++v)
    if (covered[v] != 1) throw std::logic_error("witness matching is not perfect");
  return out;
}

KResonant k_resonant_max(const PlaneBipartiteGraph& g, int k) {
  if (k < 2) throw input_error("k must be at least 2");
  auto pm = perfect_matching(g);
  if (!std::holds_alternative<EdgeSet>(pm))
    throw input_error("graph is not perfectly matchable");
  const EdgeSet& m = std::get<EdgeSet>(pm);
  DualGraph dual = dual_digraph(g, m);
  const int nf = static_cast<int>(g.faces.size());
  std::vector<long long> w(nf + 1, 1);
  w[dual.outer_node] = 0;

  auto [r, part] = k_union_max_F(dual.dstar, dual.f, w, k);
  KResonant out;
  out.value = r.value;
  out.uncovered = r.dual_penalty;
  long long total = 0;
  for (const NodeSet& cls : part.classes) {
    NodeSet faces(nf);
    for (int i : cls.ids())
      if (i < nf) faces.add(i);
    total += faces.count();
    if (!check_resonant(g, faces)) throw std::logic_error("partition class is not resonant");
    out.classes.push_back(std::move(faces));
  }
  if (total != out.value) throw std::logic_error("class sizes disagree with the optimum");

  Digraph dorient = st_orientation(g);
  long long cut_total = 0;
  for (const WeightedDiCircuit& wk : r.dual) {
    FeasibleCut cut = cut_from_dicircuit(g, dorient, m, wk.circuit);
    cut_total += wk.mult * cut.value;
    for (long long t = 0; t < wk.mult; ++t) out.cuts.push_back(cut);
  }
  if (static_cast<long long>(k) * cut_total + out.uncovered != out.value)
    throw std::logic_error("cut family dual disagrees with the optimum");
  return out;
}

}  // namespace sinkstable
