#ifndef SINKSTABLE_DICUT_HPP
#define SINKSTABLE_DICUT_HPP

#include <variant>
#include <vector>

#include "sinkstable/circuit.hpp"
#include "sinkstable/digraph.hpp"

namespace sinkstable {

/// Chain of level sets Z_1 subset Z_2 subset ...; the i-th dicut consists of
/// the edges entering Z_i. Nestedness makes disjointness structural.
struct DicutFamily {
  std::vector<NodeSet> levels;

  bool empty() const { return levels.empty(); }
};

/// Edges with head in z and tail outside.
EdgeSet entering_edges(const Digraph& d, const NodeSet& z);

/// Edges with tail in z and head outside.
EdgeSet leaving_edges(const Digraph& d, const NodeSet& z);

/// True iff no edge leaves z (so the entering edges form a dicut, possibly
/// empty).
bool is_dicut_set(const Digraph& d, const NodeSet& z);

/// Union of the family's dicuts. Also checks the family invariants
/// (nested levels, each a dicut set, nonempty pairwise disjoint dicuts) and
/// throws input_error on violation.
EdgeSet family_union(const Digraph& d, const DicutFamily& family);

/// A circuit on which F fails the balance condition: its forward and
/// backward F-counts differ.
struct FViolation {
  Circuit circuit;
  int phi_F = 0;
  int beta_F = 0;
};

/// Decides whether F is a union of pairwise disjoint dicuts. Success yields
/// the canonical chain of level sets with union exactly F; failure yields a
/// circuit with phi_F != beta_F.
std::variant<DicutFamily, FViolation> recognize_dicut_union(const Digraph& d, const EdgeSet& f);

/// Decides whether d2 (an orientation of the same undirected graph, edges
/// matched by id) arises from d by reorienting disjoint dicuts. The witness
/// circuit, if any, has a different forward count in the two orientations.
std::variant<DicutFamily, FViolation> dicut_equivalent(const Digraph& d, const Digraph& d2);

/// True iff in the cut between z and its complement, the edges in one
/// direction all belong to f and the edges in the other all avoid f.
bool is_F_clean(const Digraph& d, const EdgeSet& f, const NodeSet& z);

/// Node sequence whose replay (reorienting all edges leaving each named
/// node, which must be a source at its turn) realizes reversing the family's
/// dicuts. Length at most (n-1)^2. Requires the subgraph induced by each
/// complement V - Z_i to be acyclic in the current digraph; otherwise no
/// source sequence exists and an input_error is thrown.
std::vector<NodeId> source_sequence(const Digraph& d, const DicutFamily& family);

/// Applies a source sequence; throws input_error when a named node is not a
/// source at its turn.
Digraph replay_source_sequence(const Digraph& d, const std::vector<NodeId>& seq);

}  // namespace sinkstable

#endif
