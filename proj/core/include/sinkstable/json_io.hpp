#ifndef SINKSTABLE_JSON_IO_HPP
#define SINKSTABLE_JSON_IO_HPP

#include <string>
#include <vector>

#include "json.hpp"
#include "sinkstable/clar.hpp"
#include "sinkstable/dicut.hpp"
#include "sinkstable/digraph.hpp"
#include "sinkstable/optimize.hpp"
#include "sinkstable/stability.hpp"

namespace sinkstable::io {

using json = nlohmann::json;

inline constexpr const char* kSchema = "sinkstable/1";

/// { "n": int, "edges": [[tail, head], ...], "names": [...] (optional) }
Digraph parse_digraph(const json& j);

/// { "s_side": [...], "t_side": [...], "edges": [[u, v], ...],
///   "faces": [[edge ids], ...], "outer": [edge ids], "names": optional }
PlaneBipartiteGraph parse_plane_graph(const json& j);

/// Resolves a node given as an id or a name.
NodeId resolve_node(const json& ref, int n, const std::vector<std::string>& names);

NodeSet parse_node_set(const json& j, int n, const std::vector<std::string>& names);

/// Comma-separated ids or names, e.g. "a,c" or "0,2".
NodeSet parse_node_csv(const std::string& csv, int n, const std::vector<std::string>& names);

/// Comma-separated edge ids or name pairs like "ab" / "a-b" (first matching
/// edge in either direction).
EdgeSet parse_edge_csv(const std::string& csv, const Digraph& d);

/// Array indexed by node, or object keyed by id/name (missing nodes get 0).
std::vector<long long> parse_weights(const json& j, int n,
                                     const std::vector<std::string>& names);

json node_ref(NodeId v, const std::vector<std::string>& names);
json node_list_json(const std::vector<NodeId>& vs, const std::vector<std::string>& names);
json node_set_json(const NodeSet& s, const std::vector<std::string>& names);
json edge_json(const Digraph& d, EdgeId e);
json edge_set_json(const Digraph& d, const EdgeSet& f);
json circuit_json(const Digraph& d, const Circuit& c);
json dicircuit_json(const Digraph& d, const DiCircuit& k);
json dicut_family_json(const Digraph& d, const DicutFamily& f);
json circuit_violation_json(const Digraph& d, const CircuitViolation& v);
json dicircuit_violation_json(const Digraph& d, const DiCircuitViolation& v);
json partition_json(const Digraph& d, const Partition& p);
json cyclic_order_json(const Digraph& d, const CyclicOrder& o);
json minmax_json(const Digraph& d, const MinMaxResult& r);
json feasible_cut_json(const PlaneBipartiteGraph& g, const FeasibleCut& c);
json clar_json(const PlaneBipartiteGraph& g, const ClarResult& r);
json k_resonant_json(const PlaneBipartiteGraph& g, const KResonant& r);
json greene_kleitman_json(const Digraph& d, const GreeneKleitman& r);

}  // namespace sinkstable::io

#endif
