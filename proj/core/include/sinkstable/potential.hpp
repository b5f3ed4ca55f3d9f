#ifndef SINKSTABLE_POTENTIAL_HPP
#define SINKSTABLE_POTENTIAL_HPP

#include <variant>
#include <vector>

#include "sinkstable/circuit.hpp"
#include "sinkstable/digraph.hpp"

namespace sinkstable {

/// Edge costs / edge functions, indexed by edge id.
using CostFunction = std::vector<long long>;

/// Node potentials pi, indexed by node id. Feasible for cost c when
/// pi(head) - pi(tail) <= c(e) on every edge e.
using Potential = std::vector<long long>;

long long total_cost(const CostFunction& c, const DiCircuit& k);

/// A feasible potential when c is conservative, otherwise a di-circuit of
/// negative total cost. Exactly one branch; both are verified before return.
/// The potential is normalized to minimum 0 on each weakly connected
/// component.
std::variant<Potential, DiCircuit> feasible_potential(const Digraph& d, const CostFunction& c);

/// Witness that x is not a tension: a circuit whose forward x-total differs
/// from its backward x-total.
struct NotATension {
  Circuit circuit;
  long long forward_total = 0;
  long long backward_total = 0;
};

/// Integer pi with pi(head) - pi(tail) = x(e) exactly on every edge, if x is
/// a tension; otherwise a NotATension witness. Normalized like
/// feasible_potential.
std::variant<Potential, NotATension> potential_from_tension(const Digraph& d,
                                                            const CostFunction& x);

}  // namespace sinkstable

#endif
