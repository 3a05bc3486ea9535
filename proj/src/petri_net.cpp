#include "upm/petri_net.hpp"

#include <algorithm>
#include <stdexcept>

#include "upm/errors.hpp"

namespace upm {

const Transition* PetriNet::find_transition(const std::string& id) const {
  for (const auto& t : transitions)
    if (t.id == id) return &t;
  return nullptr;
}

std::vector<std::string> PetriNet::transition_inputs(const std::string& id) const {
  std::vector<std::string> in;
  for (const auto& [from, to] : arcs)
    if (to == id) in.push_back(from);
  return in;
}

std::vector<std::string> PetriNet::transition_outputs(const std::string& id) const {
  std::vector<std::string> out;
  for (const auto& [from, to] : arcs)
    if (from == id) out.push_back(to);
  return out;
}

std::vector<std::string> structural_issues(const PetriNet& net) {
  std::vector<std::string> issues;
  std::set<std::string> place_set(net.places.begin(), net.places.end());
  std::set<std::string> transition_set;
  for (const auto& t : net.transitions) {
    if (!transition_set.insert(t.id).second) issues.push_back("duplicate transition id: " + t.id);
  }
  if (place_set.size() != net.places.size()) issues.push_back("duplicate place id");
  for (const auto& [from, to] : net.arcs) {
    const bool pt = place_set.count(from) && transition_set.count(to);
    const bool tp = transition_set.count(from) && place_set.count(to);
    if (!pt && !tp) issues.push_back("arc references unknown node: " + from + " -> " + to);
  }
  for (const auto& [p, n] : net.initial_marking) {
    if (!place_set.count(p)) issues.push_back("initial marking over unknown place: " + p);
    if (n < 1) issues.push_back("initial marking with non-positive count on: " + p);
  }
  for (const auto& [p, n] : net.final_marking) {
    if (!place_set.count(p)) issues.push_back("final marking over unknown place: " + p);
    if (n < 1) issues.push_back("final marking with non-positive count on: " + p);
  }
  return issues;
}

namespace {

// Input/output place lists per transition, in a stable order.
struct NetIndex {
  std::vector<std::string> transition_ids;                      // sorted
  std::map<std::string, std::vector<std::string>> inputs;
  std::map<std::string, std::vector<std::string>> outputs;
  std::map<std::string, const Transition*> by_id;

  explicit NetIndex(const PetriNet& net) {
    for (const auto& t : net.transitions) {
      transition_ids.push_back(t.id);
      by_id[t.id] = &t;
      inputs[t.id];
      outputs[t.id];
    }
    std::sort(transition_ids.begin(), transition_ids.end());
    for (const auto& [from, to] : net.arcs) {
      if (by_id.count(to)) inputs[to].push_back(from);
      if (by_id.count(from)) outputs[from].push_back(to);
    }
  }

  bool enabled_at(const std::string& id, const Marking& m) const {
    for (const auto& p : inputs.at(id)) {
      auto it = m.find(p);
      if (it == m.end() || it->second < 1) return false;
    }
    return true;
  }

  Marking fire_at(const std::string& id, const Marking& m) const {
    Marking next = m;
    for (const auto& p : inputs.at(id)) {
      auto it = next.find(p);
      if (--it->second == 0) next.erase(it);
    }
    for (const auto& p : outputs.at(id)) ++next[p];
    return next;
  }
};

}  // namespace

std::set<std::string> enabled(const PetriNet& net, const Marking& m) {
  NetIndex index(net);
  std::set<std::string> result;
  for (const auto& id : index.transition_ids)
    if (index.enabled_at(id, m)) result.insert(id);
  return result;
}

Marking fire(const PetriNet& net, const Marking& m, const std::string& transition_id) {
  NetIndex index(net);
  if (!index.by_id.count(transition_id))
    throw std::invalid_argument("unknown transition: " + transition_id);
  if (!index.enabled_at(transition_id, m))
    throw std::invalid_argument("transition not enabled: " + transition_id);
  return index.fire_at(transition_id, m);
}

namespace {

struct LanguageSearch {
  const NetIndex& index;
  const Marking& final_marking;
  int max_len;
  std::int64_t max_seqs;
  std::set<std::vector<std::string>> found;
  std::vector<std::string> prefix;
  // (marking, visible labels consumed) pairs on the current path; a repeat
  // means a cycle that produced no progress, so the branch is pruned.
  std::set<std::pair<Marking, int>> on_path;

  void run(const Marking& m, int consumed) {
    auto key = std::make_pair(m, consumed);
    if (!on_path.insert(key).second) return;

    if (m == final_marking) {
      if (found.insert(prefix).second &&
          static_cast<std::int64_t>(found.size()) > max_seqs)
        throw cap_exceeded("max_seqs", max_seqs, static_cast<std::int64_t>(found.size()));
    }
    for (const auto& id : index.transition_ids) {
      if (!index.enabled_at(id, m)) continue;
      const Transition* t = index.by_id.at(id);
      if (t->is_silent()) {
        run(index.fire_at(id, m), consumed);
      } else if (consumed < max_len) {
        prefix.push_back(*t->label);
        run(index.fire_at(id, m), consumed + 1);
        prefix.pop_back();
      }
    }
    on_path.erase(key);
  }
};

}  // namespace

std::set<std::vector<std::string>> bounded_language(const PetriNet& net, int max_len,
                                                    std::int64_t max_seqs) {
  if (max_len < 0) throw std::invalid_argument("max_len must be >= 0");
  if (max_seqs < 1) throw std::invalid_argument("max_seqs must be >= 1");
  NetIndex index(net);
  LanguageSearch search{index, net.final_marking, max_len, max_seqs, {}, {}, {}};
  search.run(net.initial_marking, 0);
  return search.found;
}

}  // namespace upm
