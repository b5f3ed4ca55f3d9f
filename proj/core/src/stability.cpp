#include "sinkstable/stability.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <stdexcept>

#include "sinkstable/potential.hpp"

namespace sinkstable {

namespace {

void check_node_set(const Digraph& d, const NodeSet& s) {
  if (s.universe() != d.node_count()) throw input_error("node set universe mismatch");
}

void check_edge_set(const Digraph& d, const EdgeSet& f) {
  if (f.universe() != d.edge_count()) throw input_error("edge set universe mismatch");
}

void require_stable(const Digraph& d, const NodeSet& s) {
  for (EdgeId e = 0; e < d.edge_count(); ++e)
    if (s.contains(d.edge(e).tail) && s.contains(d.edge(e).head))
      throw not_stable_error(e, d.edge(e).tail, d.edge(e).head);
}

int count_in_set(const std::vector<NodeId>& nodes, const NodeSet& s) {
  int c = 0;
  for (NodeId v : nodes)
    if (s.contains(v)) ++c;
  return c;
}

}  // namespace

StabilityCertificate check_sink_stable(const Digraph& d, const NodeSet& s) {
  check_node_set(d, s);
  require_stable(d, s);
  Digraph cur = d;
  EdgeSet flipped(d.edge_count());
  NodeSet done(d.node_count());  // elements of S already turned into sinks
  for (NodeId sv : s.ids()) {
    if (cur.out_edges(sv).empty()) {
      done.add(sv);
      continue;
    }
    // Reachability from sv in the auxiliary digraph: the current edges plus
    // the opposite of every edge entering an already-settled sink.
    std::vector<NodeId> par_node(d.node_count(), -1);
    std::vector<EdgeId> par_edge(d.node_count(), -1);
    std::vector<bool> par_fwd(d.node_count(), false);
    NodeSet z(d.node_count());
    z.add(sv);
    std::vector<NodeId> queue{sv};
    for (size_t qi = 0; qi < queue.size(); ++qi) {
      NodeId v = queue[qi];
      auto visit = [&](NodeId w, EdgeId e, bool fwd) {
        if (z.contains(w)) return;
        z.add(w);
        par_node[w] = v;
        par_edge[w] = e;
        par_fwd[w] = fwd;
        queue.push_back(w);
      };
      for (EdgeId e : cur.out_edges(v)) visit(cur.edge(e).head, e, true);
      if (done.contains(v))
        for (EdgeId e : cur.in_edges(v)) visit(cur.edge(e).tail, e, false);
    }
    EdgeId closing = -1;
    for (EdgeId e : cur.in_edges(sv))
      if (z.contains(cur.edge(e).tail) && (closing == -1 || e < closing)) closing = e;
    if (closing != -1) {
      // A reachable in-neighbour closes a circuit witnessing the violation.
      std::vector<NodeId> rev_nodes;
      std::vector<EdgeId> rev_edges;
      std::vector<bool> rev_fwd;
      for (NodeId v = cur.edge(closing).tail; v != sv; v = par_node[v]) {
        rev_nodes.push_back(v);
        rev_edges.push_back(par_edge[v]);
        rev_fwd.push_back(par_fwd[v]);
      }
      Circuit c;
      c.nodes.push_back(sv);
      for (int i = static_cast<int>(rev_nodes.size()) - 1; i >= 0; --i) {
        c.nodes.push_back(rev_nodes[i]);
        c.edges.push_back(rev_edges[i]);
        c.forward.push_back(rev_fwd[i]);
      }
      c.edges.push_back(closing);
      c.forward.push_back(true);
      // translate from the partially reoriented digraph back to d
      for (int i = 0; i < c.length(); ++i)
        if (flipped.contains(c.edges[i])) c.forward[i] = !c.forward[i];
      c = c.canonical();
      validate_circuit(d, c);
      CircuitViolation out{c, 1, count_in_set(c.nodes, s), c.eta()};
      if (out.intersection <= out.eta)
        throw std::logic_error("claimed violating circuit satisfies the eta bound");
      return out;
    }
    // No in-neighbour of sv is reachable: the edges entering the reachable
    // set form a dicut whose reversal makes sv a source; flipping the edges
    // leaving the source then makes it a sink.
    if (!is_dicut_set(cur, z)) throw std::logic_error("reachable set has a leaving edge");
    EdgeSet b = entering_edges(cur, z);
    for (EdgeId e : b.ids()) flipped.contains(e) ? flipped.remove(e) : flipped.add(e);
    cur = reverse_edges(cur, b);
    if (!cur.in_edges(sv).empty())
      throw std::logic_error("element did not become a source after the dicut flip");
    EdgeSet leave(d.edge_count());
    for (EdgeId e : cur.out_edges(sv)) leave.add(e);
    for (EdgeId e : leave.ids()) flipped.contains(e) ? flipped.remove(e) : flipped.add(e);
    cur = reverse_edges(cur, leave);
    done.add(sv);
  }
  auto rec = recognize_dicut_union(d, flipped);
  auto* family = std::get_if<DicutFamily>(&rec);
  if (!family) throw std::logic_error("accumulated reversal set is not a dicut union");
  Digraph replay = reverse_edges(d, family_union(d, *family));
  for (NodeId sv : s.ids())
    if (!replay.out_edges(sv).empty())
      throw std::logic_error("certificate family does not make S a sink set");
  return StableCert{std::move(*family)};
}

std::variant<Partition, CircuitViolation> partition_k_sink_stable(const Digraph& d,
                                                                  const NodeSet& s, int k) {
  check_node_set(d, s);
  if (k < 2) throw input_error("partition requires k >= 2; use check_sink_stable for k = 1");
  Partition part;
  part.classes.assign(k, NodeSet(d.node_count()));
  part.families.resize(k);
  if (s.empty()) return part;

  const int m = d.edge_count();
  DoubledDigraph dd = add_reverse_edges(d);
  CostFunction c(2 * m);
  for (EdgeId e = 0; e < 2 * m; ++e) {
    c[e] = e < m ? k : 0;
    if (s.contains(dd.graph.edge(e).head)) c[e] -= 1;
  }
  auto res = feasible_potential(dd.graph, c);
  if (auto* neg = std::get_if<DiCircuit>(&res)) {
    Circuit viol;
    viol.nodes = neg->nodes;
    for (EdgeId e : neg->edges) {
      viol.edges.push_back(e < m ? e : e - m);
      viol.forward.push_back(e < m);
    }
    viol = viol.canonical();
    validate_circuit(d, viol);
    CircuitViolation out{viol, k, count_in_set(viol.nodes, s), viol.eta()};
    if (out.intersection <= static_cast<long long>(k) * out.eta)
      throw std::logic_error("claimed violating circuit satisfies the k-eta bound");
    return out;
  }
  const Potential& pi = std::get<Potential>(res);
  long long top = *std::max_element(pi.begin(), pi.end());
  for (NodeId v : s.ids()) part.classes[pi[v] % k].add(v);
  for (int j = 0; j < k; ++j) {
    // thresholds t with t = j+1 (mod k), largest level set first
    for (long long t = top; t >= 1; --t) {
      if ((t - 1) % k != j) continue;
      NodeSet z(d.node_count());
      for (NodeId v = 0; v < d.node_count(); ++v)
        if (pi[v] >= t) z.add(v);
      if (!entering_edges(d, z).empty()) part.families[j].levels.push_back(std::move(z));
    }
    Digraph replay = reverse_edges(d, family_union(d, part.families[j]));
    for (NodeId v : part.classes[j].ids())
      if (!replay.out_edges(v).empty())
        throw std::logic_error("class member is not a sink after its family flip");
  }
  return part;
}

bool is_transversal(const Digraph& d, const EdgeSet& f) {
  check_edge_set(d, f);
  std::vector<Edge> rest;
  for (EdgeId e = 0; e < d.edge_count(); ++e)
    if (!f.contains(e)) rest.push_back(d.edge(e));
  return std::holds_alternative<std::vector<NodeId>>(
      topological_order(Digraph(d.node_count(), std::move(rest))));
}

namespace {

/// Minimum number of F-edges on a directed path from src to dst staying
/// inside one strong component; -1 if unreachable (cannot happen inside a
/// component). 0-1 BFS.
int min_f_path(const Digraph& d, const EdgeSet& f, const std::vector<int>& comp, NodeId src,
               NodeId dst) {
  std::vector<int> dist(d.node_count(), -1);
  std::deque<NodeId> dq{src};
  dist[src] = 0;
  while (!dq.empty()) {
    NodeId v = dq.front();
    dq.pop_front();
    for (EdgeId e : d.out_edges(v)) {
      NodeId w = d.edge(e).head;
      if (comp[w] != comp[src]) continue;
      int nd = dist[v] + (f.contains(e) ? 1 : 0);
      if (dist[w] == -1 || nd < dist[w]) {
        dist[w] = nd;
        f.contains(e) ? dq.push_back(w) : dq.push_front(w);
      }
    }
  }
  return dist[dst];
}

}  // namespace

bool is_flat(const Digraph& d, const EdgeSet& f) {
  check_edge_set(d, f);
  StrongComponents scc = strong_components(d);
  for (EdgeId e = 0; e < d.edge_count(); ++e) {
    NodeId u = d.edge(e).tail, v = d.edge(e).head;
    if (scc.component[u] != scc.component[v]) continue;  // not a cyclic edge
    int back = min_f_path(d, f, scc.component, v, u);
    if (back < 0) throw std::logic_error("component nodes mutually unreachable");
    if ((f.contains(e) ? 1 : 0) + back > 1) return false;
  }
  return true;
}

namespace {

/// Coherence of a linear order over an induced subgraph: every edge (u, v)
/// must admit a return path v -> u that is monotone in the rotation of the
/// order starting at v (such a path closes a di-circuit of winding 1).
struct ComponentGraph {
  std::vector<NodeId> nodes;              // global ids
  std::vector<int> local;                 // global -> local or -1
  std::vector<std::pair<int, int>> arcs;  // local pairs
  std::vector<EdgeId> arc_ids;            // global edge id per arc

  ComponentGraph(const Digraph& d, const std::vector<int>& comp, int which)
      : local(d.node_count(), -1) {
    for (NodeId v = 0; v < d.node_count(); ++v)
      if (comp[v] == which) {
        local[v] = static_cast<int>(nodes.size());
        nodes.push_back(v);
      }
    for (EdgeId e = 0; e < d.edge_count(); ++e) {
      NodeId t = d.edge(e).tail, h = d.edge(e).head;
      if (local[t] != -1 && local[h] != -1) {
        arcs.push_back({local[t], local[h]});
        arc_ids.push_back(e);
      }
    }
  }
  int size() const { return static_cast<int>(nodes.size()); }
};

bool order_coherent(const ComponentGraph& g, const std::vector<int>& order,
                    const std::vector<bool>& placed) {
  const int k = static_cast<int>(order.size());
  std::vector<int> pos(g.local.size(), -1);
  for (int i = 0; i < k; ++i) pos[order[i]] = i;
  // For each placed node v: nodes reachable from v by steps of strictly
  // increasing position in the rotation starting at v.
  for (int v : order) {
    std::vector<bool> reach(g.local.size(), false);
    reach[v] = true;
    std::vector<int> stack{v};
    auto rot = [&](int w) { return (pos[w] - pos[v] + k) % k; };
    while (!stack.empty()) {
      int a = stack.back();
      stack.pop_back();
      for (size_t i = 0; i < g.arcs.size(); ++i) {
        auto [t, h] = g.arcs[i];
        if (t != a || !placed[h] || reach[h]) continue;
        if (rot(h) > rot(a)) {
          reach[h] = true;
          stack.push_back(h);
        }
      }
    }
    for (auto [t, h] : g.arcs)
      if (h == v && placed[t] && !reach[t]) return false;
  }
  return true;
}

/// Ear-decomposition construction of a coherent linear order. For each ear,
/// every insertion gap is tried and the first keeping the partial order
/// coherent is taken. Returns empty on failure (rare; callers fall back to
/// exhaustive search).
std::vector<int> ear_order(const ComponentGraph& g) {
  const int k = g.size();
  std::vector<bool> placed(g.local.size(), false);
  // initial di-circuit: follow smallest-id arcs from local node of smallest
  // global id until a node repeats
  std::vector<std::vector<std::pair<int, int>>> out(k);  // local -> (arc idx, head)
  for (size_t i = 0; i < g.arcs.size(); ++i) out[g.arcs[i].first].push_back({(int)i, g.arcs[i].second});
  std::vector<int> seen(k, -1);
  std::vector<int> walk;
  int v = 0;
  while (seen[v] == -1) {
    seen[v] = static_cast<int>(walk.size());
    walk.push_back(v);
    v = out[v].front().second;
  }
  std::vector<int> order(walk.begin() + seen[v], walk.end());
  for (int w : order) placed[w] = true;
  int remaining = k - static_cast<int>(order.size());
  while (remaining > 0) {
    // smallest boundary arc from a placed tail to an unplaced head
    int start_arc = -1;
    for (size_t i = 0; i < g.arcs.size(); ++i)
      if (placed[g.arcs[i].first] && !placed[g.arcs[i].second]) {
        start_arc = static_cast<int>(i);
        break;
      }
    if (start_arc == -1) return {};  // disconnected inside a component: impossible
    int x = g.arcs[start_arc].first;
    // shortest path from the unplaced head back to a placed node
    std::vector<int> par(k, -1);
    std::vector<int> queue{g.arcs[start_arc].second};
    std::vector<bool> vis(k, false);
    vis[queue[0]] = true;
    int landing = -1;
    for (size_t qi = 0; qi < queue.size() && landing == -1; ++qi) {
      for (auto [ai, h] : out[queue[qi]]) {
        if (placed[h]) {
          landing = queue[qi];
          break;
        }
        if (!vis[h]) {
          vis[h] = true;
          par[h] = queue[qi];
          queue.push_back(h);
        }
      }
    }
    if (landing == -1) return {};
    std::vector<int> block;
    for (int w = landing; w != -1; w = par[w]) block.push_back(w);
    std::reverse(block.begin(), block.end());
    bool inserted = false;
    for (size_t gap = 0; gap <= order.size() && !inserted; ++gap) {
      std::vector<int> cand = order;
      cand.insert(cand.begin() + gap, block.begin(), block.end());
      for (int w : block) placed[w] = true;
      if (order_coherent(g, cand, placed)) {
        order = std::move(cand);
        inserted = true;
      } else {
        for (int w : block) placed[w] = false;
      }
    }
    (void)x;
    if (!inserted) return {};
    remaining -= static_cast<int>(block.size());
  }
  if (!order_coherent(g, order, placed)) return {};
  return order;
}

std::vector<int> exhaustive_order(const ComponentGraph& g) {
  const int k = g.size();
  if (k > 10) return {};
  std::vector<bool> placed(g.local.size(), true);
  std::vector<int> perm(k - 1);
  std::iota(perm.begin(), perm.end(), 1);
  do {
    std::vector<int> order{0};
    order.insert(order.end(), perm.begin(), perm.end());
    if (order_coherent(g, order, placed)) return order;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return {};
}

}  // namespace

EdgeSet flat_transversal(const Digraph& d) {
  StrongComponents scc = strong_components(d);
  EdgeSet f(d.edge_count());
  for (int ci = 0; ci < scc.count; ++ci) {
    ComponentGraph g(d, scc.component, ci);
    if (g.size() < 2) continue;
    std::vector<int> order = ear_order(g);
    if (order.empty()) order = exhaustive_order(g);
    if (order.empty())
      throw input_error("could not build a coherent order for a strong component (size " +
                        std::to_string(g.size()) + " beyond the exhaustive fallback)");
    std::vector<int> pos(g.local.size(), -1);
    for (size_t i = 0; i < order.size(); ++i) pos[order[i]] = static_cast<int>(i);
    for (size_t i = 0; i < g.arcs.size(); ++i)
      if (pos[g.arcs[i].second] < pos[g.arcs[i].first]) f.add(g.arc_ids[i]);
  }
  if (!is_transversal(d, f)) throw std::logic_error("constructed set is not a transversal");
  if (!is_flat(d, f)) throw std::logic_error("constructed transversal is not flat");
  return f;
}

namespace {

std::optional<DiCircuitViolation> fstable_violation(const Digraph& dstar, const EdgeSet& f,
                                                    const NodeSet& s, int k) {
  CostFunction c(dstar.edge_count());
  for (EdgeId e = 0; e < dstar.edge_count(); ++e) {
    c[e] = f.contains(e) ? k : 0;
    if (s.contains(dstar.edge(e).head)) c[e] -= 1;
  }
  auto res = feasible_potential(dstar, c);
  auto* neg = std::get_if<DiCircuit>(&res);
  if (!neg) return std::nullopt;
  DiCircuitViolation out;
  out.circuit = *neg;
  out.k = k;
  out.intersection = count_in_set(neg->nodes, s);
  out.f_count = 0;
  for (EdgeId e : neg->edges)
    if (f.contains(e)) ++out.f_count;
  if (out.intersection <= static_cast<long long>(k) * out.f_count)
    throw std::logic_error("claimed di-circuit violation satisfies the bound");
  return out;
}

}  // namespace

std::variant<Partition, DiCircuitViolation> check_F_stable_union(const Digraph& dstar,
                                                                 const EdgeSet& f,
                                                                 const NodeSet& s, int k) {
  check_edge_set(dstar, f);
  check_node_set(dstar, s);
  if (k < 1) throw input_error("k must be positive");
  if (!is_strongly_connected(dstar)) throw input_error("digraph is not strongly connected");
  if (!is_flat(dstar, f)) throw input_error("F is not flat");
  if (auto viol = fstable_violation(dstar, f, s, k)) return *viol;
  Digraph df = reverse_edges(dstar, f);
  if (k == 1) {
    auto cert = check_sink_stable(df, s);
    auto* stable = std::get_if<StableCert>(&cert);
    if (!stable) throw std::logic_error("condition held but the sink checker refused");
    Partition part;
    part.classes.push_back(s);
    part.families.push_back(std::move(stable->family));
    return part;
  }
  auto res = partition_k_sink_stable(df, s, k);
  auto* part = std::get_if<Partition>(&res);
  if (!part) throw std::logic_error("condition held but the partition builder refused");
  return std::move(*part);
}

CoverNumber min_F_stable_cover_number(const Digraph& dstar, const EdgeSet& f, const NodeSet& s) {
  check_edge_set(dstar, f);
  check_node_set(dstar, s);
  if (!is_strongly_connected(dstar)) throw input_error("digraph is not strongly connected");
  if (!is_transversal(dstar, f)) throw input_error("F is not a transversal of di-circuits");
  if (!is_flat(dstar, f)) throw input_error("F is not flat");
  if (s.empty()) return {0, std::nullopt};
  int lo = 1, hi = s.count();  // ceil(|S on K| / |F on K|) <= |S|
  while (lo < hi) {
    int mid = lo + (hi - lo) / 2;
    if (fstable_violation(dstar, f, s, mid))
      lo = mid + 1;
    else
      hi = mid;
  }
  CoverNumber out;
  out.k_star = lo;
  out.witness = fstable_violation(dstar, f, s, lo - 1);
  if (fstable_violation(dstar, f, s, lo))
    throw std::logic_error("cover number is not feasible at its own value");
  return out;
}

std::vector<NodeSet> bondy_chromatic_bound(const Digraph& dstar) {
  if (dstar.node_count() < 2) throw input_error("need at least 2 nodes");
  if (!is_strongly_connected(dstar)) throw input_error("digraph is not strongly connected");
  EdgeSet f = flat_transversal(dstar);
  NodeSet all(dstar.node_count());
  for (NodeId v = 0; v < dstar.node_count(); ++v) all.add(v);
  CoverNumber cover = min_F_stable_cover_number(dstar, f, all);
  auto res = check_F_stable_union(dstar, f, all, cover.k_star);
  auto* part = std::get_if<Partition>(&res);
  if (!part) throw std::logic_error("cover number infeasible when rebuilding the partition");
  std::vector<NodeSet> classes;
  for (NodeSet& cls : part->classes) {
    if (cls.empty()) continue;
    for (EdgeId e = 0; e < dstar.edge_count(); ++e)
      if (cls.contains(dstar.edge(e).tail) && cls.contains(dstar.edge(e).head))
        throw std::logic_error("colour class is not stable");
    classes.push_back(std::move(cls));
  }
  return classes;
}

CyclicOrder coherent_cyclic_order(const Digraph& dstar) {
  if (!is_strongly_connected(dstar)) throw input_error("digraph is not strongly connected");
  EdgeSet f = flat_transversal(dstar);
  auto topo = topological_order(reverse_edges(dstar, f));
  auto* seq = std::get_if<std::vector<NodeId>>(&topo);
  if (!seq) throw std::logic_error("digraph minus the transversal is not acyclic");
  CyclicOrder order{std::move(*seq), std::move(f)};
  std::vector<int> pos(dstar.node_count());
  for (size_t i = 0; i < order.sequence.size(); ++i) pos[order.sequence[i]] = (int)i;
  for (EdgeId e = 0; e < dstar.edge_count(); ++e)
    if ((pos[dstar.edge(e).head] < pos[dstar.edge(e).tail]) != order.backward.contains(e))
      throw std::logic_error("backward set disagrees with the opening");
  return order;
}

namespace {

void validate_order(const Digraph& d, const CyclicOrder& order) {
  if (static_cast<int>(order.sequence.size()) != d.node_count())
    throw input_error("cyclic order length mismatch");
  std::vector<int> pos(d.node_count(), -1);
  for (size_t i = 0; i < order.sequence.size(); ++i) {
    NodeId v = order.sequence[i];
    if (v < 0 || v >= d.node_count() || pos[v] != -1)
      throw input_error("cyclic order is not a permutation of the nodes");
    pos[v] = static_cast<int>(i);
  }
  if (order.backward.universe() != d.edge_count())
    throw input_error("edge set universe mismatch");
  for (EdgeId e = 0; e < d.edge_count(); ++e)
    if ((pos[d.edge(e).head] < pos[d.edge(e).tail]) != order.backward.contains(e))
      throw input_error("backward set does not match the opening of the order");
}

}  // namespace

int index(const Digraph& d, const CyclicOrder& order, const DiCircuit& k) {
  validate_order(d, order);
  validate_dicircuit(d, k);
  int ind = 0;
  for (EdgeId e : k.edges)
    if (order.backward.contains(e)) ++ind;
  return ind;
}

std::variant<Partition, DiCircuitViolation> check_cyclic_stable(const Digraph& dstar,
                                                                const CyclicOrder& order,
                                                                const NodeSet& s, int k) {
  validate_order(dstar, order);
  return check_F_stable_union(dstar, order.backward, s, k);
}

}  // namespace sinkstable
