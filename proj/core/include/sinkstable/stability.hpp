#ifndef SINKSTABLE_STABILITY_HPP
#define SINKSTABLE_STABILITY_HPP

#include <optional>
#include <variant>
#include <vector>

#include "sinkstable/circuit.hpp"
#include "sinkstable/dicut.hpp"
#include "sinkstable/digraph.hpp"

namespace sinkstable {

/// S contains both endpoints of an edge; raised before any stability
/// reasoning starts (a stability assumption failure, not a "no" answer).
class not_stable_error : public input_error {
 public:
  not_stable_error(EdgeId e, NodeId u, NodeId v)
      : input_error("set is not stable: edge " + std::to_string(e) + " joins " +
                    std::to_string(u) + " and " + std::to_string(v)),
        witness_edge(e) {}
  EdgeId witness_edge;
};

/// Reorienting the family's dicuts turns every element of S into a sink.
struct StableCert {
  DicutFamily family;
};

/// A circuit with |S ∩ V(C)| > k·η(C).
struct CircuitViolation {
  Circuit circuit;
  int k = 1;
  int intersection = 0;
  int eta = 0;
};

/// A di-circuit with |S ∩ V(K)| > k·|F ∩ K|.
struct DiCircuitViolation {
  DiCircuit circuit;
  int k = 1;
  int intersection = 0;
  int f_count = 0;
};

using StabilityCertificate = std::variant<StableCert, CircuitViolation>;

/// Decides sink-stability of a stable set S (throws not_stable_error
/// otherwise). Constructive: per element, reachability in an auxiliary
/// digraph either exposes a violating circuit or yields a dicut to flip.
StabilityCertificate check_sink_stable(const Digraph& d, const NodeSet& s);

/// Classes with per-class dicut families certifying each class sink-stable.
struct Partition {
  std::vector<NodeSet> classes;
  std::vector<DicutFamily> families;
};

/// Partition of S into k sink-stable sets, or a circuit with
/// |S ∩ V(C)| > k·η(C). Requires k >= 2 (for k = 1 use check_sink_stable,
/// which also enforces the stability precondition).
std::variant<Partition, CircuitViolation> partition_k_sink_stable(const Digraph& d,
                                                                  const NodeSet& s, int k);

/// True iff removing F leaves an acyclic digraph, i.e. F meets every
/// di-circuit.
bool is_transversal(const Digraph& d, const EdgeSet& f);

/// True iff every cyclic edge lies on a di-circuit containing at most one
/// edge of F. For transversals this coincides with the exactly-one
/// condition. Polynomial (shortest F-count paths inside strong components).
bool is_flat(const Digraph& d, const EdgeSet& f);

/// A flat transversal of di-circuits, built per strong component from an
/// ear decomposition. Empty on acyclic digraphs. The result is re-verified
/// flat and transversal before return.
EdgeSet flat_transversal(const Digraph& d);

/// Decides whether S is a union of k F-stable sets of the strongly
/// connected digraph dstar, for flat F (flatness is verified; not
/// necessarily a transversal). Success yields the partition with per-class
/// certificates valid in reverse_edges(dstar, F).
std::variant<Partition, DiCircuitViolation> check_F_stable_union(const Digraph& dstar,
                                                                 const EdgeSet& f,
                                                                 const NodeSet& s, int k);

/// Minimum number of F-stable sets covering S, for a flat transversal F.
/// k_star = 0 for empty S; the witness di-circuit shows infeasibility at
/// k_star - 1 (absent in degenerate cases with no di-circuit through S).
struct CoverNumber {
  int k_star = 0;
  std::optional<DiCircuitViolation> witness;
};
CoverNumber min_F_stable_cover_number(const Digraph& dstar, const EdgeSet& f, const NodeSet& s);

/// Partition of V into stable classes, at most as many as the length of the
/// longest di-circuit. Requires dstar strong with at least 2 nodes.
std::vector<NodeSet> bondy_chromatic_bound(const Digraph& dstar);

/// Cyclic node order with the backward-edge set F of the stored opening.
struct CyclicOrder {
  std::vector<NodeId> sequence;
  EdgeSet backward;
};

/// A coherent cyclic order of a strong digraph: every edge lies on a
/// di-circuit of index 1. Built from a flat transversal and a topological
/// order of the digraph with its edges reversed.
CyclicOrder coherent_cyclic_order(const Digraph& dstar);

/// Winding number of the di-circuit around the order; equals
/// |order.backward ∩ K|. Validates that K is a di-circuit and that the
/// order's backward set matches its sequence.
int index(const Digraph& d, const CyclicOrder& order, const DiCircuit& k);

/// Cyclic stability = F-stability for the opening's backward set.
std::variant<Partition, DiCircuitViolation> check_cyclic_stable(const Digraph& dstar,
                                                                const CyclicOrder& order,
                                                                const NodeSet& s, int k);

}  // namespace sinkstable

#endif
