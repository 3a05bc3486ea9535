#include "upm/behavior_net.hpp"

#include <algorithm>
#include <map>

#include "upm/errors.hpp"

namespace upm {

PrecedenceDag precedence_dag(const UncertainTrace& trace) {
  PrecedenceDag dag;
  for (const auto& e : trace.events) dag.nodes.push_back(e.id);
  for (const auto& e : trace.events)
    for (const auto& f : trace.events)
      if (e.id != f.id && strictly_precedes(e, f)) dag.edges.insert({e.id, f.id});
  return dag;
}

namespace {

// Reachability closure over the dag; throws on cycles.
std::map<std::string, std::set<std::string>> reachability(const PrecedenceDag& dag) {
  std::map<std::string, std::vector<std::string>> succ;
  std::map<std::string, int> indegree;
  for (const auto& n : dag.nodes) {
    succ[n];
    indegree[n] = 0;
  }
  for (const auto& [u, v] : dag.edges) {
    succ[u].push_back(v);
    ++indegree[v];
  }

  // Kahn topological order doubles as the cycle check.
  std::vector<std::string> order;
  std::vector<std::string> ready;
  for (const auto& n : dag.nodes)
    if (indegree[n] == 0) ready.push_back(n);
  while (!ready.empty()) {
    std::string n = ready.back();
    ready.pop_back();
    order.push_back(n);
    for (const auto& v : succ[n])
      if (--indegree[v] == 0) ready.push_back(v);
  }
  if (order.size() != dag.nodes.size()) throw model_error("precedence dag contains a cycle");

  std::map<std::string, std::set<std::string>> reach;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    auto& r = reach[*it];
    for (const auto& v : succ[*it]) {
      r.insert(v);
      const auto& rv = reach[v];
      r.insert(rv.begin(), rv.end());
    }
  }
  return reach;
}

}  // namespace

PrecedenceDag transitive_reduction(const PrecedenceDag& dag) {
  auto reach = reachability(dag);
  PrecedenceDag reduced;
  reduced.nodes = dag.nodes;
  for (const auto& [u, v] : dag.edges) {
    bool redundant = false;
    for (const auto& w : reach[u]) {
      if (w != v && reach[w].count(v)) {
        redundant = true;
        break;
      }
    }
    if (!redundant) reduced.edges.insert({u, v});
  }
  return reduced;
}

PetriNet build_behavior_net(const UncertainTrace& trace) {
  const PrecedenceDag reduced = transitive_reduction(precedence_dag(trace));

  std::map<std::string, std::vector<std::string>> inputs;   // event -> places feeding it
  std::map<std::string, std::vector<std::string>> outputs;  // event -> places it feeds
  for (const auto& e : trace.events) {
    inputs[e.id];
    outputs[e.id];
  }
  PetriNet net;
  for (const auto& [u, v] : reduced.edges) {
    const std::string place = "(" + u + "," + v + ")";
    net.places.push_back(place);
    outputs[u].push_back(place);
    inputs[v].push_back(place);
  }
  for (const auto& e : trace.events) {
    if (inputs[e.id].empty()) {
      const std::string place = "(start," + e.id + ")";
      net.places.push_back(place);
      inputs[e.id].push_back(place);
      net.initial_marking[place] = 1;
    }
    if (outputs[e.id].empty()) {
      const std::string place = "(" + e.id + ",end)";
      net.places.push_back(place);
      outputs[e.id].push_back(place);
      net.final_marking[place] = 1;
    }
  }
  std::sort(net.places.begin(), net.places.end());

  for (const auto& e : trace.events) {
    std::vector<std::string> ids;
    for (const auto& c : e.activity.candidates) {
      const std::string id = "(" + e.id + "," + c.label + ")";
      net.transitions.push_back({id, c.label});
      ids.push_back(id);
    }
    if (e.indeterminacy.indeterminate) {
      const std::string id = "(" + e.id + ",τ)";
      net.transitions.push_back({id, std::nullopt});
      ids.push_back(id);
    }
    for (const auto& id : ids) {
      for (const auto& p : inputs[e.id]) net.arcs.emplace_back(p, id);
      for (const auto& p : outputs[e.id]) net.arcs.emplace_back(id, p);
    }
  }
  return net;
}

}  // namespace upm
