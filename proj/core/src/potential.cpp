#include "sinkstable/potential.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace sinkstable {

long long total_cost(const CostFunction& c, const DiCircuit& k) {
  long long t = 0;
  for (EdgeId e : k.edges) t += c.at(e);
  return t;
}

namespace {

void check_cost_size(const Digraph& d, const CostFunction& c) {
  if (static_cast<int>(c.size()) != d.edge_count())
    throw input_error("cost function size does not match edge count");
}

void normalize_per_weak_component(const Digraph& d, Potential& pi) {
  int comps = 0;
  std::vector<int> comp = weak_components(d, &comps);
  std::vector<long long> cmin(comps, std::numeric_limits<long long>::max());
  for (NodeId v = 0; v < d.node_count(); ++v) cmin[comp[v]] = std::min(cmin[comp[v]], pi[v]);
  for (NodeId v = 0; v < d.node_count(); ++v) pi[v] -= cmin[comp[v]];
}

DiCircuit extract_negative_cycle(const Digraph& d, const std::vector<EdgeId>& pred,
                                 NodeId start) {
  const int n = d.node_count();
  // Walk the predecessor graph n steps to be certain of standing on a cycle.
  NodeId v = start;
  for (int i = 0; i < n; ++i) v = d.edge(pred[v]).tail;
  std::vector<int> seen_at(n, -1);
  std::vector<NodeId> walk_nodes;
  std::vector<EdgeId> walk_edges;
  while (seen_at[v] == -1) {
    seen_at[v] = static_cast<int>(walk_nodes.size());
    walk_nodes.push_back(v);
    walk_edges.push_back(pred[v]);
    v = d.edge(pred[v]).tail;
  }
  // walk goes backwards along edges: reverse it to get the forward traversal.
  DiCircuit k;
  for (int i = static_cast<int>(walk_nodes.size()) - 1; i >= seen_at[v]; --i) {
    k.nodes.push_back(walk_nodes[i]);
    k.edges.push_back(walk_edges[i]);
  }
  // step i goes from tail(walk_edges[i]) = next node to walk_nodes[i]; after
  // the reversal, edges must be shifted by one position to align.
  std::rotate(k.edges.begin(), k.edges.begin() + 1, k.edges.end());
  return k.canonical();
}

}  // namespace

std::variant<Potential, DiCircuit> feasible_potential(const Digraph& d, const CostFunction& c) {
  check_cost_size(d, c);
  const int n = d.node_count();
  // Label-correcting pass with a virtual source at distance 0 from every node.
  Potential dist(n, 0);
  std::vector<EdgeId> pred(n, -1);
  NodeId touched = -1;
  for (int round = 0; round <= n; ++round) {
    touched = -1;
    for (EdgeId e = 0; e < d.edge_count(); ++e) {
      const Edge& a = d.edge(e);
      if (dist[a.tail] + c[e] < dist[a.head]) {
        dist[a.head] = dist[a.tail] + c[e];
        pred[a.head] = e;
        touched = a.head;
      }
    }
    if (touched == -1) break;
  }
  if (touched != -1) {
    DiCircuit k = extract_negative_cycle(d, pred, touched);
    validate_dicircuit(d, k);
    if (total_cost(c, k) >= 0)
      throw std::logic_error("extracted di-circuit is not negative");
    return k;
  }
  normalize_per_weak_component(d, dist);
  for (EdgeId e = 0; e < d.edge_count(); ++e)
    if (dist[d.edge(e).head] - dist[d.edge(e).tail] > c[e])
      throw std::logic_error("potential fails feasibility after convergence");
  return dist;
}

std::variant<Potential, NotATension> potential_from_tension(const Digraph& d,
                                                            const CostFunction& x) {
  check_cost_size(d, x);
  const int m = d.edge_count();
  DoubledDigraph dd = add_reverse_edges(d);
  CostFunction y(2 * m);
  for (EdgeId e = 0; e < m; ++e) {
    y[e] = x[e];
    y[m + e] = -x[e];
  }
  auto res = feasible_potential(dd.graph, y);
  if (auto* pi = std::get_if<Potential>(&res)) {
    // Delta pi <= x and <= -x on the opposite edge forces equality.
    for (EdgeId e = 0; e < m; ++e)
      if ((*pi)[d.edge(e).head] - (*pi)[d.edge(e).tail] != x[e])
        throw std::logic_error("tension potential is not exact");
    return std::move(*pi);
  }
  const DiCircuit& k = std::get<DiCircuit>(res);
  Circuit c;
  c.nodes = k.nodes;
  for (EdgeId e : k.edges) {
    c.edges.push_back(e < m ? e : e - m);
    c.forward.push_back(e < m);
  }
  c = c.canonical();
  validate_circuit(d, c);
  NotATension w{c, 0, 0};
  for (int i = 0; i < c.length(); ++i)
    (c.forward[i] ? w.forward_total : w.backward_total) += x[c.edges[i]];
  if (w.forward_total == w.backward_total)
    throw std::logic_error("tension witness circuit balances");
  return w;
}

}  // namespace sinkstable
