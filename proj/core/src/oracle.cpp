#include "sinkstable/oracle.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>

#include "sinkstable/circuit.hpp"
#include "sinkstable/dicut.hpp"
#include "sinkstable/potential.hpp"

namespace sinkstable::oracle {

namespace {

constexpr long long kNoCover = -1;

std::vector<unsigned> all_dicut_masks(const Digraph& d) {
  const int n = d.node_count();
  std::vector<unsigned> out;
  for (unsigned zm = 1; zm + 1 < (1u << n); ++zm) {
    unsigned entering = 0;
    bool leaving = false;
    for (EdgeId e = 0; e < d.edge_count(); ++e) {
      bool ht = (zm >> d.edge(e).head) & 1, tt = (zm >> d.edge(e).tail) & 1;
      if (ht && !tt) entering |= 1u << e;
      if (tt && !ht) leaving = true;
    }
    if (!leaving && entering != 0) out.push_back(entering);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// good[mask]: mask splits into pairwise disjoint dicuts
std::vector<char> dicut_union_table(const Digraph& d) {
  const int m = d.edge_count();
  std::vector<unsigned> dicuts = all_dicut_masks(d);
  std::vector<char> good(1u << m, 0);
  good[0] = 1;
  for (unsigned mask = 1; mask < (1u << m); ++mask)
    for (unsigned b : dicuts)
      if ((b & mask) == b && good[mask & ~b]) {
        good[mask] = 1;
        break;
      }
  return good;
}

std::vector<std::pair<NodeSet, long long>> circuit_items(const Digraph& d) {
  std::vector<std::pair<NodeSet, long long>> items;
  for (const Circuit& c : enumerate_circuits(d)) {
    NodeSet vs(d.node_count());
    for (NodeId v : c.nodes) vs.add(v);
    items.push_back({std::move(vs), c.eta()});
  }
  return items;
}

bool assignable(const std::vector<NodeId>& members, int k,
                const std::function<bool(const std::vector<std::vector<NodeId>>&)>& ok) {
  std::vector<std::vector<NodeId>> classes(k);
  std::function<bool(size_t)> rec = [&](size_t i) -> bool {
    if (i == members.size()) return ok(classes);
    for (int j = 0; j < k; ++j) {
      classes[j].push_back(members[i]);
      if (rec(i + 1)) return true;
      classes[j].pop_back();
    }
    return false;
  };
  return rec(0);
}

NodeSet to_set(int n, const std::vector<NodeId>& vs) { return NodeSet::of(n, vs); }

}  // namespace

bool is_stable(const Digraph& d, const NodeSet& s) {
  for (const Edge& a : d.edges())
    if (s.contains(a.tail) && s.contains(a.head)) return false;
  return true;
}

bool condition_k_sink(const Digraph& d, const NodeSet& s, int k) {
  if (!is_stable(d, s)) return false;
  bool ok = true;
  enumerate_circuits(d, [&](const Circuit& c) {
    int inter = 0;
    for (NodeId v : c.nodes)
      if (s.contains(v)) ++inter;
    if (inter > k * c.eta()) ok = false;
    return ok;
  });
  return ok;
}

bool dicut_union_by_search(const Digraph& d, const EdgeSet& f) {
  unsigned mask = 0;
  for (int e : f.ids()) mask |= 1u << e;
  return dicut_union_table(d)[mask] != 0;
}

bool sink_stable_by_search(const Digraph& d, const NodeSet& s) {
  if (!is_stable(d, s)) return false;
  std::vector<char> good = dicut_union_table(d);
  const int m = d.edge_count();
  for (unsigned mask = 0; mask < (1u << m); ++mask) {
    if (!good[mask]) continue;
    bool all_sinks = true;
    for (int v : s.ids()) {
      for (EdgeId e : d.out_edges(v))
        if (!((mask >> e) & 1)) all_sinks = false;
      for (EdgeId e : d.in_edges(v))
        if ((mask >> e) & 1) all_sinks = false;
      if (!all_sinks) break;
    }
    if (all_sinks) return true;
  }
  return false;
}

bool partition_k_by_search(const Digraph& d, const NodeSet& s, int k) {
  return assignable(s.ids(), k, [&](const std::vector<std::vector<NodeId>>& classes) {
    for (const std::vector<NodeId>& cls : classes)
      if (!condition_k_sink(d, to_set(d.node_count(), cls), 1)) return false;
    return true;
  });
}

bool f_stable_union_by_search(const Digraph& dstar, const EdgeSet& f, const NodeSet& s,
                              int k) {
  Digraph df = reverse_edges(dstar, f);
  return assignable(s.ids(), k, [&](const std::vector<std::vector<NodeId>>& classes) {
    for (const std::vector<NodeId>& cls : classes)
      if (!condition_k_sink(df, to_set(df.node_count(), cls), 1)) return false;
    return true;
  });
}

namespace {

long long best_subset(int n, const std::vector<long long>& w,
                      const std::function<bool(const NodeSet&)>& feasible) {
  long long best = 0;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    long long val = 0;
    NodeSet s(n);
    for (int v = 0; v < n; ++v)
      if ((mask >> v) & 1) {
        s.add(v);
        val += w[v];
      }
    if (val > best && feasible(s)) best = val;
  }
  return best;
}

}  // namespace

long long max_sink_stable_value(const Digraph& d, const std::vector<long long>& w) {
  return best_subset(d.node_count(), w,
                     [&](const NodeSet& s) { return condition_k_sink(d, s, 1); });
}

long long max_F_stable_value(const Digraph& dstar, const EdgeSet& f,
                             const std::vector<long long>& w) {
  Digraph df = reverse_edges(dstar, f);
  return best_subset(dstar.node_count(), w,
                     [&](const NodeSet& s) { return condition_k_sink(df, s, 1); });
}

long long k_union_max_F_value(const Digraph& dstar, const EdgeSet& f,
                              const std::vector<long long>& w, int k) {
  return best_subset(dstar.node_count(), w, [&](const NodeSet& s) {
    return f_stable_union_by_search(dstar, f, s, k);
  });
}

long long k_union_max_sink_value(const Digraph& d, const std::vector<long long>& w, int k) {
  return best_subset(d.node_count(), w,
                     [&](const NodeSet& s) { return partition_k_by_search(d, s, k); });
}

long long max_stable_value(const Digraph& d, const NodeSet& u) {
  std::vector<long long> w(d.node_count(), 0);
  for (int v : u.ids()) w[v] = 1;
  return best_subset(d.node_count(), w, [&](const NodeSet& s) {
    for (int v : s.ids())
      if (!u.contains(v)) return false;
    return is_stable(d, s);
  });
}

long long gallai_max_value(const Digraph& d, const std::vector<long long>& c,
                           const std::vector<long long>& w, long long cap) {
  std::vector<DiCircuit> circuits = enumerate_dicircuits(d);
  std::vector<long long> totals;
  for (const DiCircuit& k : circuits) totals.push_back(total_cost(c, k));
  const int n = d.node_count();
  std::vector<long long> x(n, 0);
  long long best = 0;
  while (true) {
    bool ok = true;
    for (size_t i = 0; i < circuits.size() && ok; ++i) {
      long long inter = 0;
      for (NodeId v : circuits[i].nodes) inter += x[v];
      if (inter > totals[i]) ok = false;
    }
    if (ok) {
      long long val = 0;
      for (NodeId v = 0; v < n; ++v) val += w[v] * x[v];
      best = std::max(best, val);
    }
    int i = 0;
    while (i < n && x[i] == cap) x[i++] = 0;
    if (i == n) break;
    ++x[i];
  }
  return best;
}

long long min_circuit_cover_value(const Digraph& d, const std::vector<long long>& w,
                                  bool allow_edges) {
  const int n = d.node_count();
  for (long long x : w)
    if (x != 0 && x != 1) throw input_error("cover oracle needs 0/1 weights");
  std::vector<std::pair<NodeSet, long long>> items = circuit_items(d);
  if (allow_edges)
    for (const Edge& a : d.edges())
      items.push_back({NodeSet::of(n, {a.tail, a.head}), 1});
  unsigned target = 0;
  for (int v = 0; v < n; ++v)
    if (w[v] == 1) target |= 1u << v;
  std::map<unsigned, long long> memo;
  std::function<long long(unsigned)> solve = [&](unsigned need) -> long long {
    if (need == 0) return 0;
    auto it = memo.find(need);
    if (it != memo.end()) return it->second;
    int pick = 0;
    while (!((need >> pick) & 1)) ++pick;
    long long best = kNoCover;
    for (const auto& [vs, value] : items) {
      if (!vs.contains(pick)) continue;
      unsigned covered = 0;
      for (int v : vs.ids()) covered |= 1u << v;
      long long rest = solve(need & ~covered);
      if (rest != kNoCover && (best == kNoCover || value + rest < best))
        best = value + rest;
    }
    memo[need] = best;
    return best;
  };
  return solve(target);
}

long long greene_kleitman_value(const Digraph& dposet, int k) {
  return best_subset(dposet.node_count(), std::vector<long long>(dposet.node_count(), 1),
                     [&](const NodeSet& s) {
                       return assignable(
                           s.ids(), k, [&](const std::vector<std::vector<NodeId>>& classes) {
                             for (const std::vector<NodeId>& cls : classes) {
                               NodeSet set = to_set(dposet.node_count(), cls);
                               if (!is_stable(dposet, set)) return false;
                             }
                             return true;
                           });
                     });
}

bool matchable_without(const PlaneBipartiteGraph& g, const NodeSet& removed) {
  std::vector<char> active(g.n, 1);
  for (int v : removed.ids()) active[v] = 0;
  std::vector<NodeId> s_rem, t_rem;
  for (NodeId v = 0; v < g.n; ++v)
    if (active[v]) (g.s_side.contains(v) ? s_rem : t_rem).push_back(v);
  if (s_rem.size() != t_rem.size()) return false;
  std::function<bool(size_t)> rec = [&](size_t i) -> bool {
    while (i < s_rem.size() && !active[s_rem[i]]) ++i;
    if (i == s_rem.size()) return true;
    NodeId s = s_rem[i];
    for (const Edge& a : g.edges) {
      if (a.tail != s && a.head != s) continue;
      NodeId t = a.tail == s ? a.head : a.tail;
      if (!active[t]) continue;
      active[s] = active[t] = 0;
      if (rec(i + 1)) return true;
      active[s] = active[t] = 1;
    }
    return false;
  };
  return rec(0);
}

namespace {

std::optional<NodeSet> disjoint_boundary(const PlaneBipartiteGraph& g,
                                         const std::vector<int>& faces) {
  NodeSet nodes(g.n);
  for (int i : faces)
    for (NodeId v : face_nodes(g, g.faces[i])) {
      if (nodes.contains(v)) return std::nullopt;
      nodes.add(v);
    }
  return nodes;
}

bool resonant_family(const PlaneBipartiteGraph& g, const std::vector<int>& faces) {
  auto nodes = disjoint_boundary(g, faces);
  return nodes && matchable_without(g, *nodes);
}

}  // namespace

long long clar_value(const PlaneBipartiteGraph& g) {
  const int nf = static_cast<int>(g.faces.size());
  long long best = -1;
  for (unsigned mask = 0; mask < (1u << nf); ++mask) {
    std::vector<int> faces;
    for (int i = 0; i < nf; ++i)
      if ((mask >> i) & 1) faces.push_back(i);
    if (static_cast<long long>(faces.size()) > best && resonant_family(g, faces))
      best = static_cast<long long>(faces.size());
  }
  return best;
}

long long k_resonant_value(const PlaneBipartiteGraph& g, int k) {
  const int nf = static_cast<int>(g.faces.size());
  long long best = -1;
  for (unsigned mask = 0; mask < (1u << nf); ++mask) {
    std::vector<int> faces;
    for (int i = 0; i < nf; ++i)
      if ((mask >> i) & 1) faces.push_back(i);
    if (static_cast<long long>(faces.size()) <= best) continue;
    if (assignable(faces, k, [&](const std::vector<std::vector<NodeId>>& classes) {
          for (const std::vector<NodeId>& cls : classes) {
            std::vector<int> ids(cls.begin(), cls.end());
            if (!resonant_family(g, ids)) return false;
          }
          return true;
        }))
      best = static_cast<long long>(faces.size());
  }
  return best;
}

}  // namespace sinkstable::oracle
