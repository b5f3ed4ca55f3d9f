#ifndef SINKSTABLE_CLAR_HPP
#define SINKSTABLE_CLAR_HPP

#include <string>
#include <variant>
#include <vector>

#include "sinkstable/digraph.hpp"

namespace sinkstable {

/// 2-connected plane bipartite graph with an explicit embedding: bounded
/// faces as cyclic edge sequences plus the outer boundary (stored with the
/// opposite rotational sense).
struct PlaneBipartiteGraph {
  int n = 0;
  NodeSet s_side;
  NodeSet t_side;
  std::vector<Edge> edges;
  std::vector<std::vector<EdgeId>> faces;
  std::vector<EdgeId> outer;
  std::vector<std::string> names;
};

/// Structural validation: bipartition, Euler relation, every edge on exactly
/// two boundaries, boundaries are circuits, connected and 2-connected.
/// Throws input_error.
void validate_plane_graph(const PlaneBipartiteGraph& g);

/// Node sequence of a boundary: nodes[i] joins edges[i-1] and edges[i].
std::vector<NodeId> face_nodes(const PlaneBipartiteGraph& g, const std::vector<EdgeId>& face);

struct HallViolator {
  NodeSet s_nodes;       // |neighborhood| < |s_nodes|
  NodeSet neighborhood;
};

std::variant<EdgeSet, HallViolator> perfect_matching(const PlaneBipartiteGraph& g);

/// Planar dual of the S->T orientation; dual edge ids equal primal edge ids,
/// f marks the duals of matching edges. Verified strongly connected with f
/// flat.
struct DualGraph {
  Digraph dstar;
  EdgeSet f;
  int outer_node = 0;  // face ids 0..#faces-1, outer last
};
DualGraph dual_digraph(const PlaneBipartiteGraph& g, const EdgeSet& m);

/// Cut whose oriented version is a dicut of the S->T orientation; value =
/// matching edges across it, independent of the matching.
struct FeasibleCut {
  NodeSet z;
  EdgeSet edges;
  long long value = 0;
};

struct ClarResult {
  NodeSet resonant;  // bounded face ids
  std::vector<FeasibleCut> cuts;
  long long value = 0;
  EdgeSet matching;  // perfect matching alternating on every resonant face
};

/// Maximum number of disjoint resonant faces, with a feasible-cut family of
/// equal total value and an alternating witness matching.
ClarResult clar_number(const PlaneBipartiteGraph& g);

/// True iff the faces are node-disjoint and deleting their boundary nodes
/// leaves a perfectly matchable graph. Throws input_error when boundaries
/// share nodes.
bool check_resonant(const PlaneBipartiteGraph& g, const NodeSet& faces);

struct KResonant {
  std::vector<NodeSet> classes;  // each resonant
  std::vector<FeasibleCut> cuts;
  long long uncovered = 0;  // faces in no class, as charged by the dual
  long long value = 0;
};

/// Largest family of bounded faces that splits into k resonant sets, k >= 2.
KResonant k_resonant_max(const PlaneBipartiteGraph& g, int k);

}  // namespace sinkstable

#endif
