#include "sinkstable/digraph.hpp"

#include <algorithm>

#include "sinkstable/circuit.hpp"

namespace sinkstable {

Digraph::Digraph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
  if (n < 0) throw input_error("negative node count");
  out_.resize(n);
  in_.resize(n);
  for (EdgeId e = 0; e < edge_count(); ++e) {
    const Edge& a = edges_[e];
    if (a.tail < 0 || a.tail >= n || a.head < 0 || a.head >= n)
      throw input_error("edge endpoint out of range at edge " + std::to_string(e));
    if (a.tail == a.head) throw input_error("loop rejected at edge " + std::to_string(e));
    out_[a.tail].push_back(e);
    in_[a.head].push_back(e);
  }
}

Digraph reverse_edges(const Digraph& d, const EdgeSet& f) {
  if (f.universe() != d.edge_count()) throw input_error("edge set universe mismatch");
  std::vector<Edge> edges = d.edges();
  for (EdgeId e = 0; e < d.edge_count(); ++e)
    if (f.contains(e)) std::swap(edges[e].tail, edges[e].head);
  Digraph out(d.node_count(), std::move(edges));
  out.names = d.names;
  return out;
}

DoubledDigraph add_reverse_edges(const Digraph& d) {
  std::vector<Edge> edges = d.edges();
  const int m = d.edge_count();
  edges.reserve(2 * m);
  for (EdgeId e = 0; e < m; ++e) edges.push_back({d.edge(e).head, d.edge(e).tail});
  DoubledDigraph out{Digraph(d.node_count(), std::move(edges)), EdgeSet(2 * m)};
  out.graph.names = d.names;
  for (EdgeId e = m; e < 2 * m; ++e) out.added.add(e);
  return out;
}

namespace {

// Iterative Tarjan. Components are renumbered afterwards so that ids follow a
// topological order of the condensation.
struct TarjanState {
  const Digraph& d;
  std::vector<int> index, low, comp;
  std::vector<bool> on_stack;
  std::vector<NodeId> stack;
  int next_index = 0, comp_count = 0;

  explicit TarjanState(const Digraph& g)
      : d(g), index(g.node_count(), -1), low(g.node_count(), 0), comp(g.node_count(), -1),
        on_stack(g.node_count(), false) {}

  void run(NodeId root) {
    struct Frame {
      NodeId v;
      size_t next_out = 0;
    };
    std::vector<Frame> frames{{root}};
    index[root] = low[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      Frame& f = frames.back();
      const auto& outs = d.out_edges(f.v);
      if (f.next_out < outs.size()) {
        NodeId w = d.edge(outs[f.next_out++]).head;
        if (index[w] == -1) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.push_back({w});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
      } else {
        if (low[f.v] == index[f.v]) {
          while (true) {
            NodeId w = stack.back();
            stack.pop_back();
            on_stack[w] = false;
            comp[w] = comp_count;
            if (w == f.v) break;
          }
          ++comp_count;
        }
        NodeId done = f.v;
        frames.pop_back();
        if (!frames.empty()) {
          NodeId parent = frames.back().v;
          low[parent] = std::min(low[parent], low[done]);
        }
      }
    }
  }
};

}  // namespace

StrongComponents strong_components(const Digraph& d) {
  TarjanState t(d);
  for (NodeId v = 0; v < d.node_count(); ++v)
    if (t.index[v] == -1) t.run(v);
  // Tarjan emits components in reverse topological order of the condensation.
  StrongComponents out;
  out.count = t.comp_count;
  out.component.resize(d.node_count());
  for (NodeId v = 0; v < d.node_count(); ++v) out.component[v] = t.comp_count - 1 - t.comp[v];
  return out;
}

std::vector<int> weak_components(const Digraph& d, int* count) {
  std::vector<int> comp(d.node_count(), -1);
  int c = 0;
  std::vector<NodeId> stack;
  for (NodeId s = 0; s < d.node_count(); ++s) {
    if (comp[s] != -1) continue;
    comp[s] = c;
    stack.push_back(s);
    while (!stack.empty()) {
      NodeId v = stack.back();
      stack.pop_back();
      auto visit = [&](NodeId w) {
        if (comp[w] == -1) {
          comp[w] = c;
          stack.push_back(w);
        }
      };
      for (EdgeId e : d.out_edges(v)) visit(d.edge(e).head);
      for (EdgeId e : d.in_edges(v)) visit(d.edge(e).tail);
    }
    ++c;
  }
  if (count) *count = c;
  return comp;
}

bool is_strongly_connected(const Digraph& d) {
  if (d.node_count() <= 1) return true;
  return strong_components(d).count == 1;
}

std::variant<std::vector<NodeId>, DiCircuit> topological_order(const Digraph& d) {
  const int n = d.node_count();
  std::vector<int> indeg(n, 0);
  for (const Edge& a : d.edges()) ++indeg[a.head];
  std::vector<NodeId> order;
  order.reserve(n);
  std::vector<NodeId> queue;
  for (NodeId v = n - 1; v >= 0; --v)
    if (indeg[v] == 0) queue.push_back(v);
  while (!queue.empty()) {
    // smallest available id first, for deterministic output
    auto it = std::min_element(queue.begin(), queue.end());
    NodeId v = *it;
    queue.erase(it);
    order.push_back(v);
    for (EdgeId e : d.out_edges(v))
      if (--indeg[d.edge(e).head] == 0) queue.push_back(d.edge(e).head);
  }
  if (static_cast<int>(order.size()) == n) return order;

  // A cycle remains among nodes with indeg > 0; walk forward inside that set
  // until a node repeats.
  std::vector<bool> remaining(n, false);
  for (NodeId v = 0; v < n; ++v)
    if (indeg[v] > 0) remaining[v] = true;
  NodeId start = 0;
  while (!remaining[start]) ++start;
  std::vector<int> seen_at(n, -1);
  std::vector<NodeId> walk_nodes;
  std::vector<EdgeId> walk_edges;
  NodeId v = start;
  while (seen_at[v] == -1) {
    seen_at[v] = static_cast<int>(walk_nodes.size());
    walk_nodes.push_back(v);
    EdgeId chosen = -1;
    for (EdgeId e : d.out_edges(v)) {
      if (remaining[d.edge(e).head] && (chosen == -1 || e < chosen)) chosen = e;
    }
    walk_edges.push_back(chosen);
    v = d.edge(chosen).head;
  }
  DiCircuit k;
  for (size_t i = seen_at[v]; i < walk_nodes.size(); ++i) {
    k.nodes.push_back(walk_nodes[i]);
    k.edges.push_back(walk_edges[i]);
  }
  return k.canonical();
}

}  // namespace sinkstable
