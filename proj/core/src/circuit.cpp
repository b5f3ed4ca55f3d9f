#include "sinkstable/circuit.hpp"

#include <algorithm>

namespace sinkstable {

int Circuit::forward_count() const {
  return static_cast<int>(std::count(forward.begin(), forward.end(), true));
}

int Circuit::backward_count() const { return length() - forward_count(); }

int Circuit::eta() const { return std::min(forward_count(), backward_count()); }

Circuit Circuit::reversed() const {
  const int len = length();
  Circuit r;
  r.nodes.resize(len);
  r.edges.resize(len);
  r.forward.resize(len);
  r.nodes[0] = nodes[0];
  for (int i = 1; i < len; ++i) r.nodes[i] = nodes[len - i];
  for (int i = 0; i < len; ++i) {
    r.edges[i] = edges[len - 1 - i];
    r.forward[i] = !forward[len - 1 - i];
  }
  return r;
}

namespace {

Circuit rotate_to(const Circuit& c, int i) {
  const int len = c.length();
  Circuit r;
  r.nodes.resize(len);
  r.edges.resize(len);
  r.forward.resize(len);
  for (int j = 0; j < len; ++j) {
    r.nodes[j] = c.nodes[(i + j) % len];
    r.edges[j] = c.edges[(i + j) % len];
    r.forward[j] = c.forward[(i + j) % len];
  }
  return r;
}

int min_node_index(const std::vector<NodeId>& nodes) {
  return static_cast<int>(std::min_element(nodes.begin(), nodes.end()) - nodes.begin());
}

}  // namespace

Circuit Circuit::canonical() const {
  Circuit a = rotate_to(*this, min_node_index(nodes));
  Circuit rev = reversed();
  Circuit b = rotate_to(rev, min_node_index(rev.nodes));
  auto less = [](const Circuit& x, const Circuit& y) {
    if (x.nodes != y.nodes) return x.nodes < y.nodes;
    return x.edges < y.edges;
  };
  return less(a, b) ? a : b;
}

void validate_circuit(const Digraph& d, const Circuit& c) {
  const int len = c.length();
  if (len < 2) throw input_error("circuit shorter than 2");
  if (static_cast<int>(c.nodes.size()) != len || static_cast<int>(c.forward.size()) != len)
    throw input_error("circuit field lengths disagree");
  std::vector<bool> seen_node(d.node_count(), false), seen_edge(d.edge_count(), false);
  for (int i = 0; i < len; ++i) {
    NodeId u = c.nodes[i], v = c.nodes[(i + 1) % len];
    EdgeId e = c.edges[i];
    if (u < 0 || u >= d.node_count()) throw input_error("circuit node out of range");
    if (e < 0 || e >= d.edge_count()) throw input_error("circuit edge out of range");
    if (seen_node[u]) throw input_error("circuit repeats a node");
    seen_node[u] = true;
    if (seen_edge[e]) throw input_error("circuit repeats an edge");
    seen_edge[e] = true;
    const Edge& a = d.edge(e);
    NodeId want_tail = c.forward[i] ? u : v;
    NodeId want_head = c.forward[i] ? v : u;
    if (a.tail != want_tail || a.head != want_head)
      throw input_error("circuit edge does not join consecutive nodes as flagged");
  }
}

std::pair<int, int> restrict_counts(const Circuit& c, const EdgeSet& f) {
  int phi = 0, beta = 0;
  for (int i = 0; i < c.length(); ++i) {
    if (!f.contains(c.edges[i])) continue;
    (c.forward[i] ? phi : beta)++;
  }
  return {phi, beta};
}

Circuit DiCircuit::as_circuit() const {
  Circuit c;
  c.nodes = nodes;
  c.edges = edges;
  c.forward.assign(edges.size(), true);
  return c;
}

NodeSet DiCircuit::node_set(int n) const {
  NodeSet s(n);
  for (NodeId v : nodes) s.add(v);
  return s;
}

EdgeSet DiCircuit::edge_set(int m) const {
  EdgeSet s(m);
  for (EdgeId e : edges) s.add(e);
  return s;
}

DiCircuit DiCircuit::canonical() const {
  const int len = length();
  const int i = min_node_index(nodes);
  DiCircuit r;
  r.nodes.resize(len);
  r.edges.resize(len);
  for (int j = 0; j < len; ++j) {
    r.nodes[j] = nodes[(i + j) % len];
    r.edges[j] = edges[(i + j) % len];
  }
  return r;
}

void validate_dicircuit(const Digraph& d, const DiCircuit& k) {
  validate_circuit(d, k.as_circuit());
}

std::optional<DiCircuit> as_dicircuit(const Circuit& c) {
  const Circuit* all_forward = nullptr;
  Circuit rev;
  if (c.backward_count() == 0) {
    all_forward = &c;
  } else if (c.forward_count() == 0) {
    rev = c.reversed();
    all_forward = &rev;
  } else {
    return std::nullopt;
  }
  DiCircuit k;
  k.nodes = all_forward->nodes;
  k.edges = all_forward->edges;
  return k.canonical();
}

namespace {

struct UndirectedAdj {
  // per node: (other endpoint, edge id), sorted
  std::vector<std::vector<std::pair<NodeId, EdgeId>>> at;

  explicit UndirectedAdj(const Digraph& d) : at(d.node_count()) {
    for (EdgeId e = 0; e < d.edge_count(); ++e) {
      at[d.edge(e).tail].push_back({d.edge(e).head, e});
      at[d.edge(e).head].push_back({d.edge(e).tail, e});
    }
    for (auto& v : at) std::sort(v.begin(), v.end());
  }
};

struct CircuitSearch {
  const Digraph& d;
  const UndirectedAdj adj;
  const std::function<bool(const Circuit&)>& cb;
  int max_len;
  std::vector<bool> used;
  Circuit path;  // open walk; path.edges/forward one shorter than nodes
  bool stopped = false;

  CircuitSearch(const Digraph& g, const std::function<bool(const Circuit&)>& f, int cap)
      : d(g), adj(g), cb(f), max_len(cap), used(g.node_count(), false) {}

  bool emit() {
    if (!cb(path)) stopped = true;
    return !stopped;
  }

  void extend(NodeId v) {
    const NodeId s = path.nodes[0];
    const int have = static_cast<int>(path.nodes.size());
    for (auto [w, e] : adj.at[v]) {
      if (stopped) return;
      if (w == s && have >= 3 && path.nodes[1] < v) {
        // close a circuit of length >= 3; the direction test keeps one
        // traversal of the two
        path.edges.push_back(e);
        path.forward.push_back(d.edge(e).tail == v);
        emit();
        path.edges.pop_back();
        path.forward.pop_back();
        continue;
      }
      if (w <= s || used[w] || have >= max_len) continue;
      used[w] = true;
      path.nodes.push_back(w);
      path.edges.push_back(e);
      path.forward.push_back(d.edge(e).tail == v);
      extend(w);
      path.forward.pop_back();
      path.edges.pop_back();
      path.nodes.pop_back();
      used[w] = false;
    }
  }
};

}  // namespace

void enumerate_circuits(const Digraph& d, const std::function<bool(const Circuit&)>& cb,
                        std::optional<int> max_len) {
  const int cap = max_len.value_or(d.node_count());
  if (cap < 2) return;

  // 2-circuits: unordered pairs of distinct edges joining the same node pair
  std::vector<std::pair<std::pair<NodeId, NodeId>, EdgeId>> by_pair;
  for (EdgeId e = 0; e < d.edge_count(); ++e) {
    NodeId u = d.edge(e).tail, v = d.edge(e).head;
    by_pair.push_back({{std::min(u, v), std::max(u, v)}, e});
  }
  std::sort(by_pair.begin(), by_pair.end());
  for (size_t i = 0; i < by_pair.size(); ++i) {
    for (size_t j = i + 1; j < by_pair.size() && by_pair[j].first == by_pair[i].first; ++j) {
      auto [u, v] = by_pair[i].first;
      EdgeId e = by_pair[i].second, f = by_pair[j].second;
      Circuit c;
      c.nodes = {u, v};
      c.edges = {e, f};
      c.forward = {d.edge(e).tail == u, d.edge(f).tail == v};
      if (!cb(c)) return;
    }
  }
  if (cap < 3) return;

  CircuitSearch search(d, cb, cap);
  for (NodeId s = 0; s < d.node_count() && !search.stopped; ++s) {
    search.used[s] = true;
    search.path.nodes = {s};
    search.path.edges.clear();
    search.path.forward.clear();
    search.extend(s);
    search.used[s] = false;
  }
}

std::vector<Circuit> enumerate_circuits(const Digraph& d, std::optional<int> max_len) {
  std::vector<Circuit> out;
  enumerate_circuits(
      d,
      [&](const Circuit& c) {
        out.push_back(c);
        return true;
      },
      max_len);
  return out;
}

std::vector<DiCircuit> enumerate_dicircuits(const Digraph& d, std::optional<int> max_len) {
  std::vector<DiCircuit> out;
  enumerate_circuits(
      d,
      [&](const Circuit& c) {
        if (auto k = as_dicircuit(c)) out.push_back(*k);
        return true;
      },
      max_len);
  return out;
}

}  // namespace sinkstable
