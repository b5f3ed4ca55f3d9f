#ifndef SINKSTABLE_CIRCUIT_HPP
#define SINKSTABLE_CIRCUIT_HPP

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "sinkstable/digraph.hpp"

namespace sinkstable {

/// An undirected circuit of a digraph with a fixed traversal. nodes[i] is
/// joined to nodes[(i+1) % len] by edges[i]; forward[i] says whether that edge
/// points along the traversal. Nodes are pairwise distinct, length >= 2.
struct Circuit {
  std::vector<NodeId> nodes;
  std::vector<EdgeId> edges;
  std::vector<bool> forward;

  int length() const { return static_cast<int>(edges.size()); }
  int forward_count() const;   // phi
  int backward_count() const;  // beta
  int eta() const;             // min(phi, beta), traversal-invariant

  /// Same circuit, opposite traversal (phi and beta swap).
  Circuit reversed() const;

  /// Canonical traversal: starts at the smallest node id and proceeds toward
  /// its smaller-id neighbour in the circuit (for 2-circuits, via the
  /// smaller edge id first).
  Circuit canonical() const;

  bool operator==(const Circuit&) const = default;
};

/// Checks the structural invariants of `c` against `d` (consecutive nodes
/// joined by the listed edge in the flagged direction, distinct nodes).
/// Throws input_error on violation.
void validate_circuit(const Digraph& d, const Circuit& c);

/// (phi_F, beta_F): forward/backward edges of C belonging to F.
std::pair<int, int> restrict_counts(const Circuit& c, const EdgeSet& f);

/// A circuit all of whose edges point along the traversal.
struct DiCircuit {
  std::vector<NodeId> nodes;  // nodes[i] -> nodes[(i+1) % len] via edges[i]
  std::vector<EdgeId> edges;

  int length() const { return static_cast<int>(edges.size()); }
  Circuit as_circuit() const;
  NodeSet node_set(int n) const;
  EdgeSet edge_set(int m) const;
  DiCircuit canonical() const;  // rotated so nodes[0] is the smallest id

  bool operator==(const DiCircuit&) const = default;
};

void validate_dicircuit(const Digraph& d, const DiCircuit& k);

/// The all-forward traversal of `c` if it is a di-circuit under either
/// traversal; nullopt otherwise.
std::optional<DiCircuit> as_dicircuit(const Circuit& c);

/// Streams every circuit of the underlying undirected multigraph exactly once
/// (canonical traversal), smallest-start-node first. Exponential in general;
/// intended for desk-scale digraphs. Enumeration stops early if the callback
/// returns false.
void enumerate_circuits(const Digraph& d, const std::function<bool(const Circuit&)>& cb,
                        std::optional<int> max_len = std::nullopt);

std::vector<Circuit> enumerate_circuits(const Digraph& d,
                                        std::optional<int> max_len = std::nullopt);

/// All di-circuits, derived from enumerate_circuits. Desk-scale only.
std::vector<DiCircuit> enumerate_dicircuits(const Digraph& d,
                                            std::optional<int> max_len = std::nullopt);

}  // namespace sinkstable

#endif
