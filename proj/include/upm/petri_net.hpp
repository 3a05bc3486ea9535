#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace upm {

// Multiset of tokens over places; absent place means zero tokens.
using Marking = std::map<std::string, int>;

struct Transition {
  std::string id;
  std::optional<std::string> label;  // nullopt = silent

  bool is_silent() const { return !label.has_value(); }
  friend bool operator==(const Transition&, const Transition&) = default;
};

// Labeled place/transition net with one initial and one final marking.
// Arcs have weight 1. Values are immutable once built; all operations below
// are pure functions over them.
struct PetriNet {
  std::vector<std::string> places;
  std::vector<Transition> transitions;
  std::vector<std::pair<std::string, std::string>> arcs;  // place->transition or transition->place
  Marking initial_marking;
  Marking final_marking;

  const Transition* find_transition(const std::string& id) const;
  std::vector<std::string> transition_inputs(const std::string& id) const;
  std::vector<std::string> transition_outputs(const std::string& id) const;

  friend bool operator==(const PetriNet&, const PetriNet&) = default;
};

// Structural checks: arcs must reference existing nodes, markings existing places.
std::vector<std::string> structural_issues(const PetriNet& net);

std::set<std::string> enabled(const PetriNet& net, const Marking& m);

// Fires t at m; throws std::invalid_argument if t is not enabled or unknown.
Marking fire(const PetriNet& net, const Marking& m, const std::string& transition_id);

// All distinct visible-label sequences of firing sequences from the initial to
// the final marking with at most max_len visible labels. Silent firings add no
// label. Exhaustive up to the caps; throws cap_exceeded("max_seqs") when more
// than max_seqs distinct sequences exist.
std::set<std::vector<std::string>> bounded_language(const PetriNet& net, int max_len,
                                                    std::int64_t max_seqs);

}  // namespace upm
