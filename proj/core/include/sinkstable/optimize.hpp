#ifndef SINKSTABLE_OPTIMIZE_HPP
#define SINKSTABLE_OPTIMIZE_HPP

#include <utility>
#include <vector>

#include "sinkstable/circuit.hpp"
#include "sinkstable/digraph.hpp"
#include "sinkstable/stability.hpp"

namespace sinkstable {

struct WeightedDiCircuit {
  DiCircuit circuit;
  long long mult = 0;
};

struct WeightedCircuit {
  Circuit circuit;
  long long mult = 0;
  int eta = 0;
};

struct WeightedEdge {
  EdgeId edge = -1;
  long long mult = 0;
};

/// Optimum with matching primal and dual certificates. `value` is both the
/// primal objective and the dual objective; equality is asserted inside the
/// solvers. The dual is a weighted di-circuit family, except for the
/// sink-stable variants, where it folds into circuits (counted with eta) and
/// single edges. `dual_penalty` is the uncovered-weight term of the k-union
/// duals, zero elsewhere.
struct MinMaxResult {
  NodeMultiset primal;
  std::vector<WeightedDiCircuit> dual;
  std::vector<WeightedCircuit> dual_circuits;
  std::vector<WeightedEdge> dual_edges;
  long long dual_penalty = 0;
  long long value = 0;
};

/// Splits a non-negative circulation on d (conservation is checked) into
/// weighted di-circuits; lowest edge ids are peeled first.
std::vector<WeightedDiCircuit> decompose_circulation(const Digraph& d,
                                                     const std::vector<long long>& z);

/// Maximum weight of a c-independent multiset against minimum-cost coverage
/// by di-circuits: w(v) copies of every node with w(v) > 0 must be covered,
/// each di-circuit K costs its c-length and may be used repeatedly. Requires
/// c, w >= 0 and every node with positive weight to lie on a di-circuit.
MinMaxResult gallai_min_max(const Digraph& d, const std::vector<long long>& c,
                            const std::vector<long long>& w);

/// Maximum-weight F-stable set of the strong digraph dstar, for flat F.
/// The primal multiset is 0/1; the dual di-circuits cover every node v at
/// least w(v) times at total F-length equal to the optimum.
MinMaxResult max_F_stable(const Digraph& dstar, const EdgeSet& f,
                          const std::vector<long long>& w);

/// Maximum-weight sink-stable set. Dual: edges (value 1) and circuits
/// (value eta) covering every node v at least w(v) times.
MinMaxResult max_sink_stable(const Digraph& d, const std::vector<long long>& w);

/// Maximum weight of a union of k F-stable sets, with the certifying
/// partition. The dual charges k per unit of F-length plus the weight left
/// uncovered.
std::pair<MinMaxResult, Partition> k_union_max_F(const Digraph& dstar, const EdgeSet& f,
                                                 const std::vector<long long>& w, int k);

/// Maximum weight of a union of k sink-stable sets (k >= 2); the dual uses
/// circuits only.
std::pair<MinMaxResult, Partition> k_union_max_sink(const Digraph& d,
                                                    const std::vector<long long>& w, int k);

/// Cover of U by di-circuits, each containing at least one node of U, of
/// size at most the stability number of U's induced conflict. The witness
/// stable set inside U matches the family size's lower bound when the two
/// meet; family size <= |witness| is asserted.
struct DiCircuitCover {
  std::vector<DiCircuit> family;
  NodeSet witness;  // stable, |witness| >= family size
};
DiCircuitCover cover_by_alpha_dicircuits(const Digraph& dstar, const NodeSet& u);

/// Max k-antichain-union of a finite poset given as its full comparability
/// digraph (acyclic and transitive, verified). Dual: disjoint chains, each
/// of size >= k, with sum of min(k, |chain|) over the induced chain
/// partition equal to the optimum.
struct GreeneKleitman {
  NodeSet antichain_union;
  std::vector<std::vector<NodeId>> chains;
  long long value = 0;
};
GreeneKleitman greene_kleitman(const Digraph& dposet, int k);

}  // namespace sinkstable

#endif
