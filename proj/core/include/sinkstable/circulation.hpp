#ifndef SINKSTABLE_CIRCULATION_HPP
#define SINKSTABLE_CIRCULATION_HPP

#include <variant>
#include <vector>

#include "sinkstable/digraph.hpp"

namespace sinkstable {

inline constexpr long long kUnbounded = (1LL << 60);

/// Arc of a flow network, tagged with what it models.
enum class ArcKind { EdgeArc, CoverageArc, ReliefArc };

struct Arc {
  NodeId tail = 0;
  NodeId head = 0;
  long long lower = 0;
  long long upper = kUnbounded;
  long long cost = 0;
  ArcKind kind = ArcKind::EdgeArc;
  int ref = -1;  // digraph edge id or node id, by kind
};

struct FlowNetwork {
  int n = 0;
  std::vector<Arc> arcs;
};

/// Integral min-cost circulation with certifying node potentials: every
/// residual arc has non-negative reduced cost (verified before return).
struct Circulation {
  std::vector<long long> flow;  // per arc
  long long cost = 0;
  std::vector<long long> potential;
};

/// Cut witness: total lower bound entering the node set exceeds the total
/// upper bound leaving it.
struct InfeasibleCut {
  std::vector<NodeId> nodes;
  long long deficit = 0;  // sum lower(in) - sum upper(out) > 0
};

std::variant<Circulation, InfeasibleCut> min_cost_circulation(const FlowNetwork& net);

}  // namespace sinkstable

#endif
