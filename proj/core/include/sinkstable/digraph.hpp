#ifndef SINKSTABLE_DIGRAPH_HPP
#define SINKSTABLE_DIGRAPH_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace sinkstable {

using NodeId = int;
using EdgeId = int;

/// Thrown for malformed inputs (bad ids, violated preconditions).
/// Mathematical "no" answers are regular return values, never exceptions.
class input_error : public std::runtime_error {
 public:
  explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

/// Set of node or edge ids over a fixed universe [0, size).
class IdSet {
 public:
  IdSet() = default;
  explicit IdSet(int universe) : bits_(universe, false) {}

  static IdSet of(int universe, const std::vector<int>& ids) {
    IdSet s(universe);
    for (int id : ids) s.add(id);
    return s;
  }

  int universe() const { return static_cast<int>(bits_.size()); }
  bool contains(int id) const {
    return id >= 0 && id < universe() && bits_[id];
  }
  void add(int id) {
    if (id < 0 || id >= universe()) throw input_error("id out of range: " + std::to_string(id));
    if (!bits_[id]) {
      bits_[id] = true;
      ++count_;
    }
  }
  void remove(int id) {
    if (contains(id)) {
      bits_[id] = false;
      --count_;
    }
  }
  int count() const { return count_; }
  bool empty() const { return count_ == 0; }

  std::vector<int> ids() const {
    std::vector<int> out;
    out.reserve(count_);
    for (int i = 0; i < universe(); ++i)
      if (bits_[i]) out.push_back(i);
    return out;
  }

  bool operator==(const IdSet&) const = default;

 private:
  std::vector<bool> bits_;
  int count_ = 0;
};

using NodeSet = IdSet;
using EdgeSet = IdSet;

/// Node multiset as multiplicity vector (indicator of a NodeSet is the 0/1 case).
using NodeMultiset = std::vector<long long>;

inline long long multiset_total(const NodeMultiset& x) {
  long long t = 0;
  for (long long v : x) t += v;
  return t;
}

struct Edge {
  NodeId tail;
  NodeId head;
  bool operator==(const Edge&) const = default;
};

/// Directed multigraph with stable edge ids. Loops are rejected at
/// construction; parallel edges are allowed. Immutable after construction.
class Digraph {
 public:
  Digraph() = default;
  Digraph(int n, std::vector<Edge> edges);

  int node_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const Edge& edge(EdgeId e) const { return edges_.at(e); }
  const std::vector<Edge>& edges() const { return edges_; }

  const std::vector<EdgeId>& out_edges(NodeId v) const { return out_.at(v); }
  const std::vector<EdgeId>& in_edges(NodeId v) const { return in_.at(v); }

  bool operator==(const Digraph& o) const { return n_ == o.n_ && edges_ == o.edges_; }

  /// Optional node names for I/O; empty when unnamed.
  std::vector<std::string> names;

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<EdgeId>> out_;
  std::vector<std::vector<EdgeId>> in_;
};

/// D_F: reverse the edges of F, keeping edge ids.
Digraph reverse_edges(const Digraph& d, const EdgeSet& f);

/// Adds the reverse a' of every edge a; reversed copy of edge e has id
/// edge_count + e. Returns the enlarged digraph and the set of added edges.
struct DoubledDigraph {
  Digraph graph;
  EdgeSet added;  // the reversed copies
};
DoubledDigraph add_reverse_edges(const Digraph& d);

struct StrongComponents {
  std::vector<int> component;  // node -> component id
  int count = 0;               // ids are 0..count-1 in condensation topological order
};
StrongComponents strong_components(const Digraph& d);

/// Node id -> weakly connected component id.
std::vector<int> weak_components(const Digraph& d, int* count = nullptr);

bool is_strongly_connected(const Digraph& d);

struct DiCircuit;

/// Topological order, or a di-circuit witnessing a cycle.
std::variant<std::vector<NodeId>, DiCircuit> topological_order(const Digraph& d);

}  // namespace sinkstable

#endif
