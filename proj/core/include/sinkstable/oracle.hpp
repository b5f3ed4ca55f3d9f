#ifndef SINKSTABLE_ORACLE_HPP
#define SINKSTABLE_ORACLE_HPP

#include <vector>

#include "sinkstable/clar.hpp"
#include "sinkstable/digraph.hpp"

// Brute-force reference implementations, independent of the constructive
// algorithms. Exponential; desk-scale inputs only.
namespace sinkstable::oracle {

bool is_stable(const Digraph& d, const NodeSet& s);

/// |S ∩ V(C)| <= k * eta(C) for every circuit, via full enumeration,
/// together with stability.
bool condition_k_sink(const Digraph& d, const NodeSet& s, int k);

/// Is F a union of pairwise disjoint dicuts? Recursive peeling over all
/// candidate dicut node sets (2^n per level).
bool dicut_union_by_search(const Digraph& d, const EdgeSet& f);

/// Definition-level sink-stability: some disjoint-dicut reorientation turns
/// every element of S into a sink. Enumerates all 2^m edge subsets.
bool sink_stable_by_search(const Digraph& d, const NodeSet& s);

/// Partition of S into k classes, each stable and passing the circuit
/// condition with k = 1, found by exhaustive assignment.
bool partition_k_by_search(const Digraph& d, const NodeSet& s, int k);

/// Union of k F-stable sets, by exhaustive assignment with per-class
/// sink-stability conditions in the F-reversed digraph.
bool f_stable_union_by_search(const Digraph& dstar, const EdgeSet& f, const NodeSet& s, int k);

long long max_sink_stable_value(const Digraph& d, const std::vector<long long>& w);
long long max_F_stable_value(const Digraph& dstar, const EdgeSet& f,
                             const std::vector<long long>& w);
long long k_union_max_F_value(const Digraph& dstar, const EdgeSet& f,
                              const std::vector<long long>& w, int k);
long long k_union_max_sink_value(const Digraph& d, const std::vector<long long>& w, int k);

/// Maximum stable subset of U.
long long max_stable_value(const Digraph& d, const NodeSet& u);

/// Maximum w-weight of a c-independent multiset with per-node multiplicity
/// at most cap.
long long gallai_max_value(const Digraph& d, const std::vector<long long>& c,
                           const std::vector<long long>& w, long long cap);

/// Minimum total value of a cover of {v : w(v) = 1} by circuits (value eta)
/// and, when allow_edges, single edges (value 1); -1 when no cover exists.
/// Requires 0/1 weights.
long long min_circuit_cover_value(const Digraph& d, const std::vector<long long>& w,
                                  bool allow_edges);

/// Maximum size of a union of k antichains of the transitive acyclic
/// digraph, by subset enumeration plus exhaustive antichain coloring.
long long greene_kleitman_value(const Digraph& dposet, int k);

/// Perfect matchability of the plane graph minus the given nodes, by
/// recursive search (no augmenting paths).
bool matchable_without(const PlaneBipartiteGraph& g, const NodeSet& removed);

/// Clar number by enumeration of disjoint resonant face subsets.
long long clar_value(const PlaneBipartiteGraph& g);

/// Maximum family of bounded faces splitting into k resonant classes.
long long k_resonant_value(const PlaneBipartiteGraph& g, int k);

}  // namespace sinkstable::oracle

#endif
