#include "upm/alignment.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <sstream>
#include <stdexcept>

#include "upm/behavior_net.hpp"
#include "upm/errors.hpp"
#include "upm/realizations.hpp"

namespace upm {

std::vector<std::string> Alignment::log_projection() const {
  std::vector<std::string> out;
  for (const auto& m : moves)
    if (m.kind == MoveKind::Sync || m.kind == MoveKind::LogMove) out.push_back(m.label);
  return out;
}

std::vector<std::string> Alignment::model_projection() const {
  std::vector<std::string> out;
  for (const auto& m : moves)
    if (m.kind == MoveKind::Sync || m.kind == MoveKind::ModelMove) out.push_back(m.label);
  return out;
}

PetriNet trace_net(const std::vector<std::string>& sequence) {
  PetriNet net;
  net.places.push_back("p0");
  for (size_t i = 0; i < sequence.size(); ++i) {
    net.places.push_back("p" + std::to_string(i + 1));
    const std::string tid = "t" + std::to_string(i + 1);
    net.transitions.push_back({tid, sequence[i]});
    net.arcs.emplace_back("p" + std::to_string(i), tid);
    net.arcs.emplace_back(tid, "p" + std::to_string(i + 1));
  }
  net.initial_marking["p0"] = 1;
  net.final_marking["p" + std::to_string(sequence.size())] = 1;
  return net;
}

namespace {

bool move_less(const Move& a, const Move& b) {
  if (a.kind != b.kind) return a.kind < b.kind;
  if (a.label != b.label) return a.label < b.label;
  if (a.model_transition_id != b.model_transition_id)
    return a.model_transition_id < b.model_transition_id;
  return a.log_transition_id < b.log_transition_id;
}

bool path_less(const std::vector<Move>& a, const std::vector<Move>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), move_less);
}

struct SideIndex {
  std::vector<std::string> ids;  // sorted
  std::map<std::string, std::vector<std::string>> inputs, outputs;
  std::map<std::string, std::optional<std::string>> label;

  explicit SideIndex(const PetriNet& net) {
    for (const auto& t : net.transitions) {
      ids.push_back(t.id);
      label[t.id] = t.label;
      inputs[t.id];
      outputs[t.id];
    }
    std::sort(ids.begin(), ids.end());
    for (const auto& [from, to] : net.arcs) {
      if (label.count(to)) inputs[to].push_back(from);
      if (label.count(from)) outputs[from].push_back(to);
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

struct Node {
  int cost;
  std::vector<Move> path;
  Marking log_marking;
  Marking model_marking;
};

struct NodeGreater {
  bool operator()(const Node& a, const Node& b) const {
    if (a.cost != b.cost) return a.cost > b.cost;
    return path_less(b.path, a.path);
  }
};

}  // namespace

Alignment optimal_alignment(const PetriNet& log_net, const PetriNet& model) {
  const SideIndex log_side(log_net);
  const SideIndex model_side(model);

  using State = std::pair<Marking, Marking>;
  std::set<State> settled;
  std::priority_queue<Node, std::vector<Node>, NodeGreater> queue;
  queue.push({0, {}, log_net.initial_marking, model.initial_marking});

  while (!queue.empty()) {
    Node node = queue.top();
    queue.pop();
    State state{node.log_marking, node.model_marking};
    if (!settled.insert(state).second) continue;

    if (node.log_marking == log_net.final_marking &&
        node.model_marking == model.final_marking)
      return Alignment{std::move(node.path), node.cost};

    std::vector<std::pair<Move, State>> successors;
    std::vector<std::string> log_enabled, model_enabled;
    for (const auto& id : log_side.ids)
      if (log_side.enabled_at(id, node.log_marking)) log_enabled.push_back(id);
    for (const auto& id : model_side.ids)
      if (model_side.enabled_at(id, node.model_marking)) model_enabled.push_back(id);

    for (const auto& id : log_enabled) {
      const auto& label = log_side.label.at(id);
      Move m{label ? MoveKind::LogMove : MoveKind::SilentLogMove, label.value_or(""), id, ""};
      successors.push_back({m, {log_side.fire_at(id, node.log_marking), node.model_marking}});
    }
    for (const auto& id : model_enabled) {
      const auto& label = model_side.label.at(id);
      Move m{label ? MoveKind::ModelMove : MoveKind::SilentModelMove, label.value_or(""), "", id};
      successors.push_back({m, {node.log_marking, model_side.fire_at(id, node.model_marking)}});
    }
    for (const auto& lid : log_enabled) {
      const auto& llabel = log_side.label.at(lid);
      if (!llabel) continue;
      for (const auto& mid : model_enabled) {
        const auto& mlabel = model_side.label.at(mid);
        if (!mlabel || *mlabel != *llabel) continue;
        Move m{MoveKind::Sync, *llabel, lid, mid};
        successors.push_back({m, {log_side.fire_at(lid, node.log_marking),
                                  model_side.fire_at(mid, node.model_marking)}});
      }
    }

    for (auto& [move, next_state] : successors) {
      if (settled.count(next_state)) continue;
      Node child{node.cost + move.cost(), node.path, std::move(next_state.first),
                 std::move(next_state.second)};
      child.path.push_back(move);
      queue.push(std::move(child));
    }
  }
  throw model_error("final marking unreachable in the synchronous product");
}

ConformanceBounds conformance_bounds(const UncertainTrace& trace, const PetriNet& model,
                                     std::int64_t cap) {
  ConformanceBounds result;
  result.lower_witness = optimal_alignment(build_behavior_net(trace), model);
  result.lower = result.lower_witness.cost;

  std::set<std::vector<std::string>> sequences;
  try {
    sequences = realization_sequences(trace, cap);
  } catch (const cap_exceeded& e) {
    result.cap_note = e.what();
    return result;
  }
  for (const auto& seq : sequences) {
    Alignment a = optimal_alignment(trace_net(seq), model);
    if (!result.upper || a.cost > *result.upper) {
      result.upper = a.cost;
      result.upper_witness = std::move(a);
    }
  }
  return result;
}

double expected_cost(const UncertainTrace& trace, const PetriNet& model, std::int64_t samples,
                     std::uint64_t seed, std::int64_t cap, bool allow_defaults) {
  const auto realizations = enumerate_realizations(trace, cap);
  std::map<std::vector<std::string>, int> cost_by_sequence;
  double weighted = 0.0, total = 0.0;
  for (const auto& r : realizations) {
    auto seq = r.activity_sequence();
    auto it = cost_by_sequence.find(seq);
    if (it == cost_by_sequence.end())
      it = cost_by_sequence.emplace(seq, optimal_alignment(trace_net(seq), model).cost).first;
    const double p = realization_probability(trace, r, samples, seed, allow_defaults);
    weighted += p * it->second;
    total += p;
  }
  if (!(total > 0.0)) throw model_error("all realization probabilities estimated as zero");
  return weighted / total;
}

std::string render_alignment(const Alignment& a) {
  std::vector<std::string> log_row, model_row;
  for (const auto& m : a.moves) {
    switch (m.kind) {
      case MoveKind::Sync:
        log_row.push_back(m.label);
        model_row.push_back(m.label);
        break;
      case MoveKind::LogMove:
        log_row.push_back(m.label);
        model_row.push_back("»");
        break;
      case MoveKind::ModelMove:
        log_row.push_back("»");
        model_row.push_back(m.label);
        break;
      case MoveKind::SilentLogMove:
        log_row.push_back("τ");
        model_row.push_back("»");
        break;
      case MoveKind::SilentModelMove:
        log_row.push_back("»");
        model_row.push_back("τ");
        break;
    }
  }
  std::ostringstream out;
  for (const auto* row : {&log_row, &model_row}) {
    for (size_t i = 0; i < row->size(); ++i) {
      if (i) out << " | ";
      // Pad to the column width; the multibyte "»" and "τ" count as one glyph.
      const std::string& cell = (*row)[i];
      const std::string& other = (*(row == &log_row ? &model_row : &log_row))[i];
      auto glyphs = [](const std::string& s) {
        size_t n = 0;
        for (unsigned char c : s)
          if ((c & 0xC0) != 0x80) ++n;
        return n;
      };
      const size_t width = std::max(glyphs(cell), glyphs(other));
      out << cell << std::string(width - glyphs(cell), ' ');
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace upm
