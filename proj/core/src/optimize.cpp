#include "sinkstable/optimize.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "sinkstable/circulation.hpp"
#include "sinkstable/potential.hpp"

namespace sinkstable {

namespace {

void check_weights(const Digraph& d, const std::vector<long long>& w) {
  if (static_cast<int>(w.size()) != d.node_count())
    throw input_error("weight vector size mismatch");
  for (long long x : w)
    if (x < 0) throw input_error("negative weight");
}

CostFunction indicator_costs(const Digraph& d, const EdgeSet& f, long long scale) {
  if (f.universe() != d.edge_count()) throw input_error("edge set universe mismatch");
  CostFunction c(d.edge_count(), 0);
  for (EdgeId e = 0; e < d.edge_count(); ++e)
    if (f.contains(e)) c[e] = scale;
  return c;
}

long long f_count(const DiCircuit& k, const EdgeSet& f) {
  long long t = 0;
  for (EdgeId e : k.edges)
    if (f.contains(e)) ++t;
  return t;
}

/// Coverage multiplicities of a weighted di-circuit family.
std::vector<long long> family_coverage(int n, const std::vector<WeightedDiCircuit>& fam) {
  std::vector<long long> cov(n, 0);
  for (const WeightedDiCircuit& wk : fam)
    for (NodeId v : wk.circuit.nodes) cov[v] += wk.mult;
  return cov;
}

void require_strong(const Digraph& d) {
  if (d.node_count() < 2 || !is_strongly_connected(d))
    throw input_error("requires a strongly connected digraph with at least 2 nodes");
}

void require_flat(const Digraph& d, const EdgeSet& f) {
  if (!is_flat(d, f)) throw input_error("edge set is not flat");
}

}  // namespace

std::vector<WeightedDiCircuit> decompose_circulation(const Digraph& d,
                                                     const std::vector<long long>& z) {
  if (static_cast<int>(z.size()) != d.edge_count())
    throw input_error("circulation size mismatch");
  std::vector<long long> bal(d.node_count(), 0);
  for (EdgeId e = 0; e < d.edge_count(); ++e) {
    if (z[e] < 0) throw input_error("negative circulation value");
    bal[d.edge(e).tail] -= z[e];
    bal[d.edge(e).head] += z[e];
  }
  for (long long b : bal)
    if (b != 0) throw input_error("not a circulation");

  std::vector<long long> rem = z;
  std::vector<WeightedDiCircuit> out;
  std::vector<int> pos(d.node_count());
  for (EdgeId seed = 0; seed < d.edge_count(); ++seed) {
    while (rem[seed] > 0) {
      std::fill(pos.begin(), pos.end(), -1);
      std::vector<NodeId> pnodes;
      std::vector<EdgeId> pedges;
      NodeId v = d.edge(seed).tail;
      EdgeId e = seed;
      while (true) {
        pos[v] = static_cast<int>(pnodes.size());
        pnodes.push_back(v);
        pedges.push_back(e);
        NodeId h = d.edge(e).head;
        if (pos[h] != -1) {
          int s = pos[h];
          DiCircuit k{{pnodes.begin() + s, pnodes.end()}, {pedges.begin() + s, pedges.end()}};
          validate_dicircuit(d, k);
          long long mu = rem[k.edges.front()];
          for (EdgeId ke : k.edges) mu = std::min(mu, rem[ke]);
          for (EdgeId ke : k.edges) rem[ke] -= mu;
          k = k.canonical();
          bool merged = false;
          for (WeightedDiCircuit& wk : out)
            if (wk.circuit == k) {
              wk.mult += mu;
              merged = true;
              break;
            }
          if (!merged) out.push_back({std::move(k), mu});
          break;
        }
        v = h;
        e = -1;
        for (EdgeId cand : d.out_edges(v))
          if (rem[cand] > 0) {
            e = cand;
            break;
          }
        if (e == -1) throw std::logic_error("decomposition walk stuck despite conservation");
      }
    }
  }
  return out;
}

MinMaxResult gallai_min_max(const Digraph& d, const std::vector<long long>& c,
                            const std::vector<long long>& w) {
  const int n = d.node_count();
  const int m = d.edge_count();
  if (static_cast<int>(c.size()) != m) throw input_error("cost vector size mismatch");
  for (long long x : c)
    if (x < 0) throw input_error("negative cost");
  check_weights(d, w);
  StrongComponents scc = strong_components(d);
  std::vector<int> comp_size(scc.count, 0);
  for (NodeId v = 0; v < n; ++v) ++comp_size[scc.component[v]];
  for (NodeId v = 0; v < n; ++v)
    if (w[v] > 0 && comp_size[scc.component[v]] < 2)
      throw input_error("node " + std::to_string(v) +
                        " has positive weight but lies on no di-circuit");

  // Doubled network: v and n+v, di-circuits of d become circulations. Edge
  // arcs carry the cost, coverage arcs carry the demand.
  FlowNetwork net;
  net.n = 2 * n;
  for (EdgeId e = 0; e < m; ++e)
    net.arcs.push_back({d.edge(e).tail, n + d.edge(e).head, 0, kUnbounded, c[e],
                        ArcKind::EdgeArc, e});
  for (NodeId v = 0; v < n; ++v)
    net.arcs.push_back({n + v, v, w[v], kUnbounded, 0, ArcKind::CoverageArc, v});

  auto solved = min_cost_circulation(net);
  if (!std::holds_alternative<Circulation>(solved))
    throw std::logic_error("coverage network infeasible despite cyclic support");
  const Circulation& circ = std::get<Circulation>(solved);

  MinMaxResult res;
  res.primal.assign(n, 0);
  for (NodeId v = 0; v < n; ++v) {
    res.primal[v] = circ.potential[n + v] - circ.potential[v];
    if (res.primal[v] < 0) throw std::logic_error("negative primal multiplicity");
  }

  // independence: c(e) - x(head) admits a feasible potential iff every
  // di-circuit K satisfies x(V(K)) <= c(K)
  CostFunction reduced(m);
  for (EdgeId e = 0; e < m; ++e) reduced[e] = c[e] - res.primal[d.edge(e).head];
  if (!std::holds_alternative<Potential>(feasible_potential(d, reduced)))
    throw std::logic_error("primal multiset is not c-independent");

  std::vector<long long> z(circ.flow.begin(), circ.flow.begin() + m);
  res.dual = decompose_circulation(d, z);

  std::vector<long long> cov = family_coverage(n, res.dual);
  long long dual_value = 0;
  for (const WeightedDiCircuit& wk : res.dual)
    dual_value += wk.mult * total_cost(c, wk.circuit);
  long long primal_value = 0;
  for (NodeId v = 0; v < n; ++v) {
    primal_value += w[v] * res.primal[v];
    if (cov[v] < w[v]) throw std::logic_error("dual family undercovers a node");
  }
  if (primal_value != circ.cost || dual_value != circ.cost)
    throw std::logic_error("primal and dual objectives disagree");
  res.value = circ.cost;
  return res;
}

MinMaxResult max_F_stable(const Digraph& dstar, const EdgeSet& f,
                          const std::vector<long long>& w) {
  require_strong(dstar);
  check_weights(dstar, w);
  require_flat(dstar, f);
  MinMaxResult res = gallai_min_max(dstar, indicator_costs(dstar, f, 1), w);
  NodeSet s(dstar.node_count());
  for (NodeId v = 0; v < dstar.node_count(); ++v) {
    if (res.primal[v] > 1)
      throw std::logic_error("optimal multiset exceeds 1 despite flatness");
    if (res.primal[v] == 1) s.add(v);
  }
  if (!std::holds_alternative<Partition>(check_F_stable_union(dstar, f, s, 1)))
    throw std::logic_error("optimal set is not F-stable");
  return res;
}

std::pair<MinMaxResult, Partition> k_union_max_F(const Digraph& dstar, const EdgeSet& f,
                                                 const std::vector<long long>& w, int k) {
  if (k < 1) throw input_error("k must be at least 1");
  require_strong(dstar);
  check_weights(dstar, w);
  require_flat(dstar, f);
  const int n = dstar.node_count();
  const int m = dstar.edge_count();

  FlowNetwork net;
  net.n = 2 * n;
  CostFunction kc = indicator_costs(dstar, f, k);
  for (EdgeId e = 0; e < m; ++e)
    net.arcs.push_back({dstar.edge(e).tail, n + dstar.edge(e).head, 0, kUnbounded, kc[e],
                        ArcKind::EdgeArc, e});
  for (NodeId v = 0; v < n; ++v)
    net.arcs.push_back({n + v, v, w[v], kUnbounded, 0, ArcKind::CoverageArc, v});
  // relief: leaving weight uncovered costs 1 per unit
  for (NodeId v = 0; v < n; ++v)
    if (w[v] > 0) net.arcs.push_back({v, n + v, 0, w[v], 1, ArcKind::ReliefArc, v});

  auto solved = min_cost_circulation(net);
  if (!std::holds_alternative<Circulation>(solved))
    throw std::logic_error("k-union network infeasible despite strong support");
  const Circulation& circ = std::get<Circulation>(solved);

  MinMaxResult res;
  res.primal.assign(n, 0);
  NodeSet s(n);
  long long primal_value = 0;
  for (NodeId v = 0; v < n; ++v) {
    long long x = circ.potential[n + v] - circ.potential[v];
    if (x < 0) throw std::logic_error("negative node potential difference");
    if (x >= 1) {
      res.primal[v] = 1;
      s.add(v);
      primal_value += w[v];
    }
  }

  std::vector<long long> z(circ.flow.begin(), circ.flow.begin() + m);
  res.dual = decompose_circulation(dstar, z);
  std::vector<long long> cov = family_coverage(n, res.dual);
  long long dual_value = 0;
  for (const WeightedDiCircuit& wk : res.dual)
    dual_value += static_cast<long long>(k) * wk.mult * f_count(wk.circuit, f);
  for (NodeId v = 0; v < n; ++v) res.dual_penalty += std::max(0LL, w[v] - cov[v]);
  dual_value += res.dual_penalty;
  if (primal_value != circ.cost || dual_value != circ.cost)
    throw std::logic_error("k-union primal and dual objectives disagree");
  res.value = circ.cost;

  auto part = check_F_stable_union(dstar, f, s, k);
  if (!std::holds_alternative<Partition>(part))
    throw std::logic_error("optimal set is not a union of k F-stable sets");
  return {std::move(res), std::move(std::get<Partition>(part))};
}

namespace {

struct SubGraph {
  Digraph d;
  std::vector<NodeId> node_of;  // local -> global
  std::vector<EdgeId> edge_of;
};

SubGraph induce(const Digraph& d, const std::vector<int>& comp, int c) {
  SubGraph s;
  std::vector<int> local(d.node_count(), -1);
  for (NodeId v = 0; v < d.node_count(); ++v)
    if (comp[v] == c) {
      local[v] = static_cast<int>(s.node_of.size());
      s.node_of.push_back(v);
    }
  std::vector<Edge> es;
  for (EdgeId e = 0; e < d.edge_count(); ++e)
    if (comp[d.edge(e).tail] == c) {
      es.push_back({local[d.edge(e).tail], local[d.edge(e).head]});
      s.edge_of.push_back(e);
    }
  s.d = Digraph(static_cast<int>(s.node_of.size()), std::move(es));
  return s;
}

/// Splits di-circuits of the doubled digraph into single edges (digons
/// e, m+e) and circuits of d charged with their backward F-count.
void fold_sink_dual(const Digraph& d, const std::vector<WeightedDiCircuit>& fam,
                    bool keep_digons, std::vector<WeightedEdge>& edges,
                    std::vector<WeightedCircuit>& circuits) {
  const int m = d.edge_count();
  for (const WeightedDiCircuit& wk : fam) {
    const DiCircuit& kk = wk.circuit;
    if (kk.edges.size() == 2 && kk.edges[0] % m == kk.edges[1] % m) {
      if (keep_digons) edges.push_back({std::min(kk.edges[0], kk.edges[1]), wk.mult});
      continue;
    }
    Circuit c;
    c.nodes = kk.nodes;
    for (EdgeId e : kk.edges) {
      c.edges.push_back(e % m);
      c.forward.push_back(e < m);
    }
    validate_circuit(d, c);
    int beta = c.backward_count();
    if (beta > c.forward_count())
      throw std::logic_error("dual circuit charges the heavier orientation");
    circuits.push_back({c.canonical(), wk.mult, beta});
  }
}

void remap_circuit(Circuit& c, const SubGraph& sub) {
  for (NodeId& v : c.nodes) v = sub.node_of[v];
  for (EdgeId& e : c.edges) e = sub.edge_of[e];
  c = c.canonical();
}

void check_no_isolated(const Digraph& d) {
  for (NodeId v = 0; v < d.node_count(); ++v)
    if (d.out_edges(v).empty() && d.in_edges(v).empty())
      throw input_error("isolated node " + std::to_string(v));
}

}  // namespace

MinMaxResult max_sink_stable(const Digraph& d, const std::vector<long long>& w) {
  check_weights(d, w);
  check_no_isolated(d);
  const int n = d.node_count();
  int comp_count = 0;
  std::vector<int> comp = weak_components(d, &comp_count);

  MinMaxResult total;
  total.primal.assign(n, 0);
  NodeSet s(n);
  for (int c = 0; c < comp_count; ++c) {
    SubGraph sub = induce(d, comp, c);
    std::vector<long long> sw(sub.node_of.size());
    for (size_t i = 0; i < sub.node_of.size(); ++i) sw[i] = w[sub.node_of[i]];
    DoubledDigraph dd = add_reverse_edges(sub.d);
    MinMaxResult r = max_F_stable(dd.graph, dd.added, sw);
    for (size_t i = 0; i < sub.node_of.size(); ++i)
      if (r.primal[i] == 1) {
        total.primal[sub.node_of[i]] = 1;
        s.add(sub.node_of[i]);
      }
    std::vector<WeightedEdge> es;
    std::vector<WeightedCircuit> cs;
    fold_sink_dual(sub.d, r.dual, /*keep_digons=*/true, es, cs);
    for (WeightedEdge& we : es) total.dual_edges.push_back({sub.edge_of[we.edge], we.mult});
    for (WeightedCircuit& wc : cs) {
      remap_circuit(wc.circuit, sub);
      validate_circuit(d, wc.circuit);
      total.dual_circuits.push_back(std::move(wc));
    }
    total.value += r.value;
  }

  std::vector<long long> cov(n, 0);
  long long dual_value = 0;
  for (const WeightedEdge& we : total.dual_edges) {
    cov[d.edge(we.edge).tail] += we.mult;
    cov[d.edge(we.edge).head] += we.mult;
    dual_value += we.mult;
  }
  for (const WeightedCircuit& wc : total.dual_circuits) {
    for (NodeId v : wc.circuit.nodes) cov[v] += wc.mult;
    dual_value += wc.mult * wc.eta;
  }
  for (NodeId v = 0; v < n; ++v)
    if (cov[v] < w[v]) throw std::logic_error("sink dual undercovers a node");
  if (dual_value != total.value)
    throw std::logic_error("folded sink dual changes the objective");
  if (!std::holds_alternative<StableCert>(check_sink_stable(d, s)))
    throw std::logic_error("optimal set is not sink-stable");
  return total;
}

std::pair<MinMaxResult, Partition> k_union_max_sink(const Digraph& d,
                                                    const std::vector<long long>& w, int k) {
  if (k < 2) throw input_error("k must be at least 2");
  check_weights(d, w);
  check_no_isolated(d);
  const int n = d.node_count();
  int comp_count = 0;
  std::vector<int> comp = weak_components(d, &comp_count);

  MinMaxResult total;
  total.primal.assign(n, 0);
  Partition part;
  part.classes.assign(k, NodeSet(n));
  for (int c = 0; c < comp_count; ++c) {
    SubGraph sub = induce(d, comp, c);
    std::vector<long long> sw(sub.node_of.size());
    for (size_t i = 0; i < sub.node_of.size(); ++i) sw[i] = w[sub.node_of[i]];
    DoubledDigraph dd = add_reverse_edges(sub.d);
    auto [r, pc] = k_union_max_F(dd.graph, dd.added, sw, k);
    for (size_t i = 0; i < sub.node_of.size(); ++i)
      if (r.primal[i] == 1) total.primal[sub.node_of[i]] = 1;
    for (int j = 0; j < k; ++j)
      for (NodeId lv : pc.classes[j].ids()) part.classes[j].add(sub.node_of[lv]);
    std::vector<WeightedEdge> es;
    std::vector<WeightedCircuit> cs;
    fold_sink_dual(sub.d, r.dual, /*keep_digons=*/false, es, cs);
    for (WeightedCircuit& wc : cs) {
      remap_circuit(wc.circuit, sub);
      validate_circuit(d, wc.circuit);
      total.dual_circuits.push_back(std::move(wc));
    }
    total.value += r.value;
  }

  // digon duals were dropped; with k >= 2 the uncovered-weight term absorbs
  // them without changing the total
  std::vector<long long> cov(n, 0);
  long long dual_value = 0;
  NodeSet s(n);
  for (NodeId v = 0; v < n; ++v)
    if (total.primal[v] == 1) s.add(v);
  for (const WeightedCircuit& wc : total.dual_circuits) {
    for (NodeId v : wc.circuit.nodes) cov[v] += wc.mult;
    dual_value += static_cast<long long>(k) * wc.mult * wc.eta;
  }
  for (NodeId v = 0; v < n; ++v) total.dual_penalty += std::max(0LL, w[v] - cov[v]);
  dual_value += total.dual_penalty;
  if (dual_value != total.value)
    throw std::logic_error("circuit-only sink dual changes the objective");

  DoubledDigraph dd = add_reverse_edges(d);
  Digraph df = reverse_edges(dd.graph, dd.added);
  for (int j = 0; j < k; ++j) {
    auto cert = check_sink_stable(df, part.classes[j]);
    if (!std::holds_alternative<StableCert>(cert))
      throw std::logic_error("partition class is not sink-stable");
    part.families.push_back(std::move(std::get<StableCert>(cert).family));
  }
  NodeSet check_union(n);
  for (int j = 0; j < k; ++j)
    for (NodeId v : part.classes[j].ids()) check_union.add(v);
  if (!(check_union == s)) throw std::logic_error("partition does not cover the optimal set");
  return {std::move(total), std::move(part)};
}

DiCircuitCover cover_by_alpha_dicircuits(const Digraph& dstar, const NodeSet& u) {
  require_strong(dstar);
  if (u.universe() != dstar.node_count()) throw input_error("node set universe mismatch");
  const int n = dstar.node_count();
  DiCircuitCover out;
  out.witness = NodeSet(n);
  if (u.empty()) return out;

  EdgeSet f = flat_transversal(dstar);
  std::vector<long long> w(n, 0);
  for (NodeId v : u.ids()) w[v] = 1;
  MinMaxResult r = gallai_min_max(dstar, indicator_costs(dstar, f, 1), w);
  for (NodeId v = 0; v < n; ++v) {
    if (r.primal[v] > 1)
      throw std::logic_error("optimal multiset exceeds 1 despite flatness");
    if (r.primal[v] == 1 && u.contains(v)) out.witness.add(v);
  }
  if (static_cast<long long>(out.witness.count()) != r.value)
    throw std::logic_error("witness size differs from the optimum");
  for (EdgeId e = 0; e < dstar.edge_count(); ++e)
    if (out.witness.contains(dstar.edge(e).tail) && out.witness.contains(dstar.edge(e).head))
      throw std::logic_error("witness set is not stable");

  std::vector<char> covered(n, 0);
  for (const WeightedDiCircuit& wk : r.dual) {
    bool meets_u = false;
    for (NodeId v : wk.circuit.nodes) {
      covered[v] = 1;
      if (u.contains(v)) meets_u = true;
    }
    if (f_count(wk.circuit, f) < 1)
      throw std::logic_error("dual di-circuit misses the transversal");
    if (!meets_u) throw std::logic_error("dual di-circuit avoids U");
    out.family.push_back(wk.circuit);
  }
  for (NodeId v : u.ids())
    if (!covered[v]) throw std::logic_error("cover misses a node of U");
  if (static_cast<long long>(out.family.size()) > static_cast<long long>(out.witness.count()))
    throw std::logic_error("cover is larger than the stable witness");
  return out;
}

GreeneKleitman greene_kleitman(const Digraph& dposet, int k) {
  if (k < 1) throw input_error("k must be at least 1");
  const int n = dposet.node_count();
  const int m = dposet.edge_count();
  GreeneKleitman out;
  out.antichain_union = NodeSet(n);
  if (n == 0) return out;

  if (!std::holds_alternative<std::vector<NodeId>>(topological_order(dposet)))
    throw input_error("comparability digraph is not acyclic");
  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  for (const Edge& a : dposet.edges()) adj[a.tail][a.head] = 1;
  for (const Edge& a : dposet.edges())
    for (EdgeId e2 : dposet.out_edges(a.head))
      if (!adj[a.tail][dposet.edge(e2).head])
        throw input_error("comparability digraph is not transitive");

  // extra node z below-and-above everything: di-circuits become chains, the
  // edges entering z a flat transversal
  const NodeId z = n;
  std::vector<Edge> edges = dposet.edges();
  EdgeSet f(m + 2 * n);
  for (NodeId v = 0; v < n; ++v) {
    f.add(static_cast<int>(edges.size()));
    edges.push_back({v, z});
    edges.push_back({z, v});
  }
  Digraph d2(n + 1, std::move(edges));
  std::vector<long long> w(n + 1, 1);
  w[z] = 0;

  auto [r, part] = k_union_max_F(d2, f, w, k);
  for (NodeId v = 0; v < n; ++v)
    if (r.primal[v] == 1) out.antichain_union.add(v);
  out.value = r.value;
  if (static_cast<long long>(out.antichain_union.count()) != out.value)
    throw std::logic_error("antichain union size differs from the optimum");
  for (const NodeSet& cls : part.classes)
    for (const Edge& a : dposet.edges())
      if (cls.contains(a.tail) && cls.contains(a.head))
        throw std::logic_error("partition class is not an antichain");

  // expand the dual family into chains, then make them disjoint by
  // shortcutting repeated nodes (valid by transitivity)
  std::vector<std::vector<NodeId>> raw;
  for (const WeightedDiCircuit& wk : r.dual) {
    int zi = -1;
    for (size_t i = 0; i < wk.circuit.nodes.size(); ++i)
      if (wk.circuit.nodes[i] == z) zi = static_cast<int>(i);
    if (zi == -1) throw std::logic_error("dual di-circuit avoids the apex");
    if (wk.mult > n) throw std::logic_error("implausible dual multiplicity");
    std::vector<NodeId> chain;
    int len = static_cast<int>(wk.circuit.nodes.size());
    for (int i = 1; i < len; ++i) chain.push_back(wk.circuit.nodes[(zi + i) % len]);
    for (long long t = 0; t < wk.mult; ++t) raw.push_back(chain);
  }
  std::vector<char> used(n, 0);
  for (const std::vector<NodeId>& chain : raw) {
    std::vector<NodeId> kept;
    for (NodeId v : chain)
      if (!used[v]) {
        if (!kept.empty() && !adj[kept.back()][v])
          throw std::logic_error("shortcut breaks the chain");
        used[v] = 1;
        kept.push_back(v);
      }
    if (!kept.empty()) out.chains.push_back(std::move(kept));
  }
  long long uncovered = 0;
  for (NodeId v = 0; v < n; ++v)
    if (!used[v]) ++uncovered;
  for (const std::vector<NodeId>& chain : out.chains)
    if (static_cast<int>(chain.size()) < k)
      throw std::logic_error("dual chain shorter than k");
  if (static_cast<long long>(k) * static_cast<long long>(out.chains.size()) + uncovered !=
      out.value)
    throw std::logic_error("chain partition value differs from the optimum");
  return out;
}

}  // namespace sinkstable
