#include "sinkstable/circulation.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <stdexcept>
#include <string>

namespace sinkstable {

namespace {

constexpr long long kInfDist = std::numeric_limits<long long>::max() / 4;

struct ResidualArc {
  NodeId head;
  long long cap;
  long long cost;
  int partner;  // index of the reverse residual arc in its head's list
};

// Adjacency of residual arcs; arc (v, i) has its reverse at
// (adj[v][i].head, adj[v][i].partner).
struct Residual {
  std::vector<std::vector<ResidualArc>> adj;
  // location of the forward residual arc of network arc a
  std::vector<std::pair<NodeId, int>> fwd;

  explicit Residual(int n) : adj(n) {}

  void add(NodeId u, NodeId v, long long cap, long long cost) {
    int iu = static_cast<int>(adj[u].size());
    int iv = static_cast<int>(adj[v].size());
    adj[u].push_back({v, cap, cost, iv});
    adj[v].push_back({u, 0, -cost, iu});
  }
};

}  // namespace

std::variant<Circulation, InfeasibleCut> min_cost_circulation(const FlowNetwork& net) {
  const int n = net.n;
  if (n < 0) throw input_error("negative node count");
  for (const Arc& a : net.arcs) {
    if (a.tail < 0 || a.tail >= n || a.head < 0 || a.head >= n)
      throw input_error("arc endpoint out of range");
    if (a.tail == a.head) throw input_error("loop arc");
    if (a.lower < 0 || a.lower > a.upper) throw input_error("arc bounds out of order");
    if (a.cost < 0 && a.upper >= kUnbounded)
      throw input_error("negative-cost arc without capacity");
  }

  // Base pseudoflow: lower bound everywhere, upper bound on negative-cost
  // arcs. With down-capacity flow - lower, every residual arc then has
  // non-negative cost, so zero potentials start out valid for Dijkstra.
  std::vector<long long> flow(net.arcs.size());
  std::vector<long long> excess(n, 0);
  Residual res(n);
  for (size_t i = 0; i < net.arcs.size(); ++i) {
    const Arc& a = net.arcs[i];
    flow[i] = a.cost < 0 ? a.upper : a.lower;
    excess[a.tail] -= flow[i];
    excess[a.head] += flow[i];
    res.fwd.push_back({a.tail, static_cast<int>(res.adj[a.tail].size())});
    res.add(a.tail, a.head, a.upper - flow[i], a.cost);
    res.adj[a.head][res.adj[a.tail].back().partner].cap = flow[i] - a.lower;
  }

  std::vector<long long> pi(n, 0);
  std::vector<long long> dist(n);
  std::vector<std::pair<NodeId, int>> parent(n);

  while (true) {
    NodeId src = -1;
    for (NodeId v = 0; v < n; ++v)
      if (excess[v] > 0) {
        src = v;
        break;
      }
    if (src == -1) break;

    std::fill(dist.begin(), dist.end(), kInfDist);
    std::fill(parent.begin(), parent.end(), std::pair<NodeId, int>{-1, -1});
    dist[src] = 0;
    using Item = std::pair<long long, NodeId>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
    pq.push({0, src});
    while (!pq.empty()) {
      auto [dv, v] = pq.top();
      pq.pop();
      if (dv != dist[v]) continue;
      for (int i = 0; i < static_cast<int>(res.adj[v].size()); ++i) {
        const ResidualArc& r = res.adj[v][i];
        if (r.cap <= 0) continue;
        long long red = r.cost + pi[v] - pi[r.head];
        if (red < 0) throw std::logic_error("negative reduced cost in residual graph");
        if (dv + red < dist[r.head]) {
          dist[r.head] = dv + red;
          parent[r.head] = {v, i};
          pq.push({dist[r.head], r.head});
        }
      }
    }

    NodeId sink = -1;
    for (NodeId v = 0; v < n; ++v)
      if (excess[v] < 0 && dist[v] < kInfDist &&
          (sink == -1 || dist[v] < dist[sink]))
        sink = v;
    if (sink == -1) {
      // No deficit is residual-reachable from src: the reachable set R keeps
      // a positive excess forever, and the cut bounds prove it.
      InfeasibleCut cut;
      long long total = 0;
      std::vector<char> in_r(n, 0);
      for (NodeId v = 0; v < n; ++v)
        if (dist[v] < kInfDist) {
          cut.nodes.push_back(v);
          in_r[v] = 1;
          total += excess[v];
        }
      long long bound = 0;
      for (const Arc& a : net.arcs) {
        if (!in_r[a.tail] && in_r[a.head]) bound += a.lower;
        if (in_r[a.tail] && !in_r[a.head]) bound -= a.upper;
      }
      if (total <= 0 || bound != total)
        throw std::logic_error("infeasibility cut does not certify");
      cut.deficit = bound;
      return cut;
    }

    // unreached nodes shift by dist[sink] too, keeping arcs into the
    // reached side reduced-non-negative
    for (NodeId v = 0; v < n; ++v) pi[v] += std::min(dist[v], dist[sink]);

    long long amount = std::min(excess[src], -excess[sink]);
    for (NodeId v = sink; v != src;) {
      auto [u, i] = parent[v];
      amount = std::min(amount, res.adj[u][i].cap);
      v = u;
    }
    for (NodeId v = sink; v != src;) {
      auto [u, i] = parent[v];
      ResidualArc& r = res.adj[u][i];
      r.cap -= amount;
      res.adj[r.head][r.partner].cap += amount;
      v = u;
    }
    excess[src] -= amount;
    excess[sink] += amount;
  }

  Circulation out;
  out.flow.resize(net.arcs.size());
  out.potential = pi;
  for (size_t i = 0; i < net.arcs.size(); ++i) {
    const Arc& a = net.arcs[i];
    auto [v, j] = res.fwd[i];
    out.flow[i] = a.upper - res.adj[v][j].cap;
    if (out.flow[i] < a.lower || out.flow[i] > a.upper)
      throw std::logic_error("flow escapes its bounds");
    out.cost += out.flow[i] * a.cost;
  }
  // certify optimality: non-negative reduced cost on every residual arc
  for (NodeId v = 0; v < n; ++v)
    for (const ResidualArc& r : res.adj[v])
      if (r.cap > 0 && r.cost + pi[v] - pi[r.head] < 0)
        throw std::logic_error("final potentials do not certify optimality");
  return out;
}

}  // namespace sinkstable
