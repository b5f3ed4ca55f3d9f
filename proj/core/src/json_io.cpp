#include "sinkstable/json_io.hpp"

#include <algorithm>

namespace sinkstable::io {

namespace {

std::vector<std::string> parse_names(const json& j, int n) {
  std::vector<std::string> names;
  if (!j.contains("names")) return names;
  if (!j["names"].is_array() || static_cast<int>(j["names"].size()) != n)
    throw input_error("\"names\" must list one name per node");
  for (const json& x : j["names"]) {
    if (!x.is_string()) throw input_error("node names must be strings");
    names.push_back(x.get<std::string>());
  }
  std::vector<std::string> sorted = names;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw input_error("node names must be unique");
  return names;
}

std::vector<Edge> parse_edges(const json& j) {
  if (!j.contains("edges") || !j["edges"].is_array())
    throw input_error("missing \"edges\" array");
  std::vector<Edge> edges;
  for (const json& e : j["edges"]) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
        !e[1].is_number_integer())
      throw input_error("each edge must be a [tail, head] pair of ids");
    edges.push_back({e[0].get<int>(), e[1].get<int>()});
  }
  return edges;
}

std::vector<std::string> split_csv(const std::string& csv) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : csv) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(ch))) {
      cur += ch;
    }
  }
  if (!cur.empty() || !out.empty()) out.push_back(cur);
  return out;
}

int name_index(const std::string& s, const std::vector<std::string>& names) {
  for (size_t i = 0; i < names.size(); ++i)
    if (names[i] == s) return static_cast<int>(i);
  return -1;
}

}  // namespace

Digraph parse_digraph(const json& j) {
  if (!j.is_object() || !j.contains("n") || !j["n"].is_number_integer())
    throw input_error("graph JSON needs an integer \"n\"");
  int n = j["n"].get<int>();
  Digraph d(n, parse_edges(j));
  d.names = parse_names(j, n);
  return d;
}

PlaneBipartiteGraph parse_plane_graph(const json& j) {
  if (!j.is_object() || !j.contains("s_side") || !j.contains("t_side") ||
      !j.contains("faces") || !j.contains("outer"))
    throw input_error("plane graph JSON needs s_side, t_side, edges, faces, outer");
  PlaneBipartiteGraph g;
  g.edges = parse_edges(j);
  int top = -1;
  for (const json& x : j["s_side"]) top = std::max(top, x.get<int>());
  for (const json& x : j["t_side"]) top = std::max(top, x.get<int>());
  for (const Edge& e : g.edges) top = std::max({top, e.tail, e.head});
  g.n = top + 1;
  g.s_side = NodeSet(g.n);
  g.t_side = NodeSet(g.n);
  for (const json& x : j["s_side"]) g.s_side.add(x.get<int>());
  for (const json& x : j["t_side"]) g.t_side.add(x.get<int>());
  auto face_list = [&](const json& f) {
    std::vector<EdgeId> out;
    for (const json& x : f) {
      if (!x.is_number_integer()) throw input_error("face boundaries are edge id lists");
      out.push_back(x.get<int>());
    }
    return out;
  };
  for (const json& f : j["faces"]) g.faces.push_back(face_list(f));
  g.outer = face_list(j["outer"]);
  g.names = parse_names(j, g.n);
  return g;
}

NodeId resolve_node(const json& ref, int n, const std::vector<std::string>& names) {
  if (ref.is_number_integer()) {
    int v = ref.get<int>();
    if (v < 0 || v >= n) throw input_error("node id out of range: " + std::to_string(v));
    return v;
  }
  if (ref.is_string()) {
    int v = name_index(ref.get<std::string>(), names);
    if (v == -1) throw input_error("unknown node name: " + ref.get<std::string>());
    return v;
  }
  throw input_error("node reference must be an id or a name");
}

NodeSet parse_node_set(const json& j, int n, const std::vector<std::string>& names) {
  if (!j.is_array()) throw input_error("node set must be an array");
  NodeSet s(n);
  for (const json& x : j) s.add(resolve_node(x, n, names));
  return s;
}

NodeSet parse_node_csv(const std::string& csv, int n,
                       const std::vector<std::string>& names) {
  NodeSet s(n);
  for (const std::string& tok : split_csv(csv)) {
    if (tok.empty()) throw input_error("empty node token");
    int v = name_index(tok, names);
    if (v == -1) {
      try {
        size_t used = 0;
        v = std::stoi(tok, &used);
        if (used != tok.size()) v = -1;
      } catch (const std::exception&) {
        v = -1;
      }
    }
    if (v < 0 || v >= n) throw input_error("unknown node: " + tok);
    s.add(v);
  }
  return s;
}

EdgeSet parse_edge_csv(const std::string& csv, const Digraph& d) {
  EdgeSet f(d.edge_count());
  auto find_edge = [&](const std::string& a, const std::string& b) -> EdgeId {
    int u = name_index(a, d.names), v = name_index(b, d.names);
    if (u == -1 || v == -1) return -1;
    for (EdgeId e = 0; e < d.edge_count(); ++e) {
      const Edge& ed = d.edge(e);
      if ((ed.tail == u && ed.head == v) || (ed.tail == v && ed.head == u)) return e;
    }
    return -1;
  };
  for (const std::string& tok : split_csv(csv)) {
    if (tok.empty()) throw input_error("empty edge token");
    EdgeId e = -1;
    auto dash = tok.find('-');
    if (dash != std::string::npos)
      e = find_edge(tok.substr(0, dash), tok.substr(dash + 1));
    else if (tok.size() == 2)
      e = find_edge(tok.substr(0, 1), tok.substr(1, 1));
    if (e == -1) {
      try {
        size_t used = 0;
        int id = std::stoi(tok, &used);
        if (used == tok.size() && id >= 0 && id < d.edge_count()) e = id;
      } catch (const std::exception&) {
      }
    }
    if (e == -1) throw input_error("unknown edge: " + tok);
    f.add(e);
  }
  return f;
}

std::vector<long long> parse_weights(const json& j, int n,
                                     const std::vector<std::string>& names) {
  std::vector<long long> w(n, 0);
  if (j.is_array()) {
    if (static_cast<int>(j.size()) != n)
      throw input_error("weight array must list one value per node");
    for (int v = 0; v < n; ++v) w[v] = j[v].get<long long>();
  } else if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      int v = name_index(it.key(), names);
      if (v == -1) {
        try {
          v = std::stoi(it.key());
        } catch (const std::exception&) {
          v = -1;
        }
      }
      if (v < 0 || v >= n) throw input_error("unknown node in weights: " + it.key());
      w[v] = it.value().get<long long>();
    }
  } else {
    throw input_error("weights must be an array or an object");
  }
  return w;
}

json node_ref(NodeId v, const std::vector<std::string>& names) {
  if (v >= 0 && v < static_cast<int>(names.size())) return names[v];
  return v;
}

json node_list_json(const std::vector<NodeId>& vs, const std::vector<std::string>& names) {
  json out = json::array();
  for (NodeId v : vs) out.push_back(node_ref(v, names));
  return out;
}

json node_set_json(const NodeSet& s, const std::vector<std::string>& names) {
  json out = json::array();
  for (int v : s.ids()) out.push_back(node_ref(v, names));
  return out;
}

json edge_json(const Digraph& d, EdgeId e) {
  return {{"id", e},
          {"tail", node_ref(d.edge(e).tail, d.names)},
          {"head", node_ref(d.edge(e).head, d.names)}};
}

json edge_set_json(const Digraph& d, const EdgeSet& f) {
  json out = json::array();
  for (int e : f.ids()) out.push_back(edge_json(d, e));
  return out;
}

json circuit_json(const Digraph& d, const Circuit& c) {
  return {{"nodes", node_list_json(c.nodes, d.names)},
          {"edges", c.edges},
          {"forward", c.forward},
          {"phi", c.forward_count()},
          {"beta", c.backward_count()},
          {"eta", c.eta()}};
}

json dicircuit_json(const Digraph& d, const DiCircuit& k) {
  return {{"nodes", node_list_json(k.nodes, d.names)}, {"edges", k.edges}};
}

json dicut_family_json(const Digraph& d, const DicutFamily& f) {
  json levels = json::array();
  for (const NodeSet& z : f.levels)
    levels.push_back({{"level", node_set_json(z, d.names)},
                      {"dicut", edge_set_json(d, entering_edges(d, z))}});
  return levels;
}

json circuit_violation_json(const Digraph& d, const CircuitViolation& v) {
  return {{"circuit", circuit_json(d, v.circuit)},
          {"k", v.k},
          {"intersection", v.intersection},
          {"eta", v.eta}};
}

json dicircuit_violation_json(const Digraph& d, const DiCircuitViolation& v) {
  return {{"dicircuit", dicircuit_json(d, v.circuit)},
          {"k", v.k},
          {"intersection", v.intersection},
          {"f_count", v.f_count}};
}

json partition_json(const Digraph& d, const Partition& p) {
  json classes = json::array();
  for (size_t i = 0; i < p.classes.size(); ++i) {
    json cls = {{"nodes", node_set_json(p.classes[i], d.names)}};
    if (i < p.families.size()) cls["family"] = dicut_family_json(d, p.families[i]);
    classes.push_back(std::move(cls));
  }
  return classes;
}

json cyclic_order_json(const Digraph& d, const CyclicOrder& o) {
  return {{"sequence", node_list_json(o.sequence, d.names)},
          {"backward", o.backward.ids()}};
}

json minmax_json(const Digraph& d, const MinMaxResult& r) {
  json out;
  bool zero_one = true;
  for (long long x : r.primal)
    if (x > 1) zero_one = false;
  if (zero_one) {
    json set = json::array();
    for (NodeId v = 0; v < static_cast<int>(r.primal.size()); ++v)
      if (r.primal[v] == 1) set.push_back(node_ref(v, d.names));
    out["primal"] = {{"set", set}};
  } else {
    json mult = json::object();
    for (NodeId v = 0; v < static_cast<int>(r.primal.size()); ++v)
      if (r.primal[v] > 0) {
        std::string key = v < static_cast<int>(d.names.size()) ? d.names[v]
                                                               : std::to_string(v);
        mult[key] = r.primal[v];
      }
    out["primal"] = {{"multiset", mult}};
  }
  json dual = json::object();
  if (!r.dual.empty()) {
    json ks = json::array();
    for (const WeightedDiCircuit& wk : r.dual)
      ks.push_back({{"nodes", node_list_json(wk.circuit.nodes, d.names)},
                    {"edges", wk.circuit.edges},
                    {"mult", wk.mult}});
    dual["dicircuits"] = ks;
  }
  if (!r.dual_circuits.empty()) {
    json cs = json::array();
    for (const WeightedCircuit& wc : r.dual_circuits) {
      json c = circuit_json(d, wc.circuit);
      c["mult"] = wc.mult;
      c["value"] = wc.eta;
      cs.push_back(std::move(c));
    }
    dual["circuits"] = cs;
  }
  if (!r.dual_edges.empty()) {
    json es = json::array();
    for (const WeightedEdge& we : r.dual_edges) {
      json e = edge_json(d, we.edge);
      e["mult"] = we.mult;
      es.push_back(std::move(e));
    }
    dual["edges"] = es;
  }
  if (r.dual_penalty != 0) dual["uncovered"] = r.dual_penalty;
  out["dual"] = dual;
  out["value"] = r.value;
  return out;
}

json feasible_cut_json(const PlaneBipartiteGraph& g, const FeasibleCut& c) {
  return {{"z", node_set_json(c.z, g.names)},
          {"edges", c.edges.ids()},
          {"value", c.value}};
}

json clar_json(const PlaneBipartiteGraph& g, const ClarResult& r) {
  json cuts = json::array();
  for (const FeasibleCut& c : r.cuts) cuts.push_back(feasible_cut_json(g, c));
  return {{"clar", r.value},
          {"resonant_faces", r.resonant.ids()},
          {"cuts", cuts},
          {"matching", r.matching.ids()}};
}

json k_resonant_json(const PlaneBipartiteGraph& g, const KResonant& r) {
  json classes = json::array();
  for (const NodeSet& cls : r.classes) classes.push_back(cls.ids());
  json cuts = json::array();
  for (const FeasibleCut& c : r.cuts) cuts.push_back(feasible_cut_json(g, c));
  return {{"value", r.value},
          {"classes", classes},
          {"cuts", cuts},
          {"uncovered", r.uncovered}};
}

json greene_kleitman_json(const Digraph& d, const GreeneKleitman& r) {
  json chains = json::array();
  for (const std::vector<NodeId>& c : r.chains) chains.push_back(node_list_json(c, d.names));
  return {{"value", r.value},
          {"antichain_union", node_set_json(r.antichain_union, d.names)},
          {"chains", chains}};
}

}  // namespace sinkstable::io
