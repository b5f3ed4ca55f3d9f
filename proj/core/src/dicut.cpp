#include "sinkstable/dicut.hpp"

#include <algorithm>
#include <stdexcept>

#include "sinkstable/potential.hpp"

namespace sinkstable {

EdgeSet entering_edges(const Digraph& d, const NodeSet& z) {
  EdgeSet out(d.edge_count());
  for (EdgeId e = 0; e < d.edge_count(); ++e)
    if (z.contains(d.edge(e).head) && !z.contains(d.edge(e).tail)) out.add(e);
  return out;
}

EdgeSet leaving_edges(const Digraph& d, const NodeSet& z) {
  EdgeSet out(d.edge_count());
  for (EdgeId e = 0; e < d.edge_count(); ++e)
    if (z.contains(d.edge(e).tail) && !z.contains(d.edge(e).head)) out.add(e);
  return out;
}

bool is_dicut_set(const Digraph& d, const NodeSet& z) {
  return leaving_edges(d, z).empty();
}

EdgeSet family_union(const Digraph& d, const DicutFamily& family) {
  EdgeSet all(d.edge_count());
  const NodeSet* prev = nullptr;
  for (const NodeSet& z : family.levels) {
    if (z.universe() != d.node_count()) throw input_error("level set universe mismatch");
    if (prev) {
      for (NodeId v : prev->ids())
        if (!z.contains(v)) throw input_error("level sets are not nested");
      if (*prev == z) throw input_error("repeated level set");
    }
    if (!is_dicut_set(d, z)) throw input_error("level set has a leaving edge");
    EdgeSet b = entering_edges(d, z);
    if (b.empty()) throw input_error("empty dicut in family");
    for (EdgeId e : b.ids()) {
      if (all.contains(e)) throw input_error("family dicuts are not disjoint");
      all.add(e);
    }
    prev = &z;
  }
  return all;
}

std::variant<DicutFamily, FViolation> recognize_dicut_union(const Digraph& d, const EdgeSet& f) {
  if (f.universe() != d.edge_count()) throw input_error("edge set universe mismatch");
  CostFunction x(d.edge_count(), 0);
  for (EdgeId e = 0; e < d.edge_count(); ++e)
    if (f.contains(e)) x[e] = 1;
  auto res = potential_from_tension(d, x);
  if (auto* w = std::get_if<NotATension>(&res)) {
    auto [phi, beta] = restrict_counts(w->circuit, f);
    if (phi == beta) throw std::logic_error("tension witness balances on F");
    return FViolation{w->circuit, phi, beta};
  }
  const Potential& pi = std::get<Potential>(res);
  long long top = *std::max_element(pi.begin(), pi.end());
  DicutFamily family;
  for (long long t = top; t >= 1; --t) {
    NodeSet z(d.node_count());
    for (NodeId v = 0; v < d.node_count(); ++v)
      if (pi[v] >= t) z.add(v);
    if (!entering_edges(d, z).empty()) family.levels.push_back(std::move(z));
  }
  if (family_union(d, family) != f)
    throw std::logic_error("level decomposition does not reproduce F");
  return family;
}

std::variant<DicutFamily, FViolation> dicut_equivalent(const Digraph& d, const Digraph& d2) {
  if (d.node_count() != d2.node_count() || d.edge_count() != d2.edge_count())
    throw input_error("orientations differ in size");
  EdgeSet f(d.edge_count());
  for (EdgeId e = 0; e < d.edge_count(); ++e) {
    const Edge& a = d.edge(e);
    const Edge& b = d2.edge(e);
    if (a == b) continue;
    if (a.tail == b.head && a.head == b.tail)
      f.add(e);
    else
      throw input_error("edge " + std::to_string(e) + " joins different nodes");
  }
  return recognize_dicut_union(d, f);
}

bool is_F_clean(const Digraph& d, const EdgeSet& f, const NodeSet& z) {
  if (f.universe() != d.edge_count()) throw input_error("edge set universe mismatch");
  if (z.universe() != d.node_count()) throw input_error("node set universe mismatch");
  bool entering_in_f = false, entering_out_f = false;
  bool leaving_in_f = false, leaving_out_f = false;
  for (EdgeId e = 0; e < d.edge_count(); ++e) {
    bool th = z.contains(d.edge(e).head), tt = z.contains(d.edge(e).tail);
    if (th == tt) continue;
    (th ? (f.contains(e) ? entering_in_f : entering_out_f)
        : (f.contains(e) ? leaving_in_f : leaving_out_f)) = true;
  }
  bool entering_mixed = entering_in_f && entering_out_f;
  bool leaving_mixed = leaving_in_f && leaving_out_f;
  if (entering_mixed || leaving_mixed) return false;
  // both directions present: they must disagree on F-membership
  if ((entering_in_f || entering_out_f) && (leaving_in_f || leaving_out_f))
    return entering_in_f != leaving_in_f;
  return true;
}

std::vector<NodeId> source_sequence(const Digraph& d, const DicutFamily& family) {
  EdgeSet all = family_union(d, family);
  Digraph cur = d;
  std::vector<NodeId> seq;
  for (const NodeSet& z : family.levels) {
    // Flip every node of the complement W once, in topological order of the
    // induced subgraph: edges inside W reverse twice, edges entering z once.
    std::vector<NodeId> w_nodes;
    for (NodeId v = 0; v < d.node_count(); ++v)
      if (!z.contains(v)) w_nodes.push_back(v);
    std::vector<int> local(d.node_count(), -1);
    for (size_t i = 0; i < w_nodes.size(); ++i) local[w_nodes[i]] = static_cast<int>(i);
    std::vector<Edge> induced;
    for (const Edge& a : cur.edges())
      if (local[a.tail] != -1 && local[a.head] != -1)
        induced.push_back({local[a.tail], local[a.head]});
    auto topo = topological_order(Digraph(static_cast<int>(w_nodes.size()), std::move(induced)));
    if (!std::holds_alternative<std::vector<NodeId>>(topo))
      throw input_error("no source sequence: complement of a level set induces a cycle");
    // `flip` tracks edges currently reversed relative to `cur`; a node's
    // reorientation toggles every edge leaving it in the effective digraph.
    EdgeSet flip(d.edge_count());
    for (NodeId lv : std::get<std::vector<NodeId>>(topo)) {
      NodeId v = w_nodes[lv];
      seq.push_back(v);
      for (EdgeId e : cur.in_edges(v)) {
        if (!flip.contains(e))
          throw std::logic_error("node is not a source at its scheduled turn");
        flip.remove(e);  // currently leaves v; reorienting v flips it back
      }
      for (EdgeId e : cur.out_edges(v)) flip.add(e);
    }
    cur = reverse_edges(cur, flip);
  }
  if (!(cur == reverse_edges(d, all)))
    throw std::logic_error("source sequence replay mismatch");
  const long long n = d.node_count();
  if (static_cast<long long>(seq.size()) > (n - 1) * (n - 1))
    throw std::logic_error("source sequence exceeds the quadratic bound");
  return seq;
}

Digraph replay_source_sequence(const Digraph& d, const std::vector<NodeId>& seq) {
  Digraph cur = d;
  for (NodeId v : seq) {
    if (v < 0 || v >= d.node_count()) throw input_error("sequence node out of range");
    if (!cur.in_edges(v).empty())
      throw input_error("node " + std::to_string(v) + " is not a source at its turn");
    EdgeSet flip(d.edge_count());
    for (EdgeId e : cur.out_edges(v)) flip.add(e);
    cur = reverse_edges(cur, flip);
  }
  return cur;
}

}  // namespace sinkstable
