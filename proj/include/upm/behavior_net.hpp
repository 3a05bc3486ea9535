#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "upm/event_model.hpp"
#include "upm/petri_net.hpp"

namespace upm {

// Precedence relation between the events of one trace. An edge (e,f) means
// e must have happened before f. Transitively closed and acyclic.
struct PrecedenceDag {
  std::vector<std::string> nodes;  // event ids, in recording order
  std::set<std::pair<std::string, std::string>> edges;

  friend bool operator==(const PrecedenceDag&, const PrecedenceDag&) = default;
};

PrecedenceDag precedence_dag(const UncertainTrace& trace);

// Unique minimal edge set with the same reachability. Throws model_error if
// the input contains a cycle.
PrecedenceDag transitive_reduction(const PrecedenceDag& dag);

// Petri net whose visible-label language is exactly the set of activity
// sequences realizable from the trace. Place and transition names follow the
// "(from,to)" convention: places "(start,e)", "(e,f)", "(e,end)"; transitions
// "(e,label)" plus "(e,τ)" for indeterminate events.
PetriNet build_behavior_net(const UncertainTrace& trace);

}  // namespace upm
