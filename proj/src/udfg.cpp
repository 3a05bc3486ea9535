#include "upm/udfg.hpp"

#include <limits>

#include "upm/errors.hpp"
#include "upm/realizations.hpp"

namespace upm {

std::map<std::pair<std::string, std::string>, FrequencyBounds> trace_df_bounds(
    const UncertainTrace& trace, std::int64_t cap) {
  const auto sequences = realization_sequences(trace, cap);

  // Count pairs per realization, then take min/max across realizations,
  // treating a pair missing from a realization as count 0.
  std::vector<std::map<std::pair<std::string, std::string>, std::int64_t>> counts;
  counts.reserve(sequences.size());
  for (const auto& seq : sequences) {
    std::vector<std::string> padded;
    padded.reserve(seq.size() + 2);
    padded.push_back(kStartNode);
    padded.insert(padded.end(), seq.begin(), seq.end());
    padded.push_back(kEndNode);
    auto& c = counts.emplace_back();
    for (size_t i = 0; i + 1 < padded.size(); ++i) ++c[{padded[i], padded[i + 1]}];
  }

  std::map<std::pair<std::string, std::string>, FrequencyBounds> bounds;
  for (const auto& c : counts)
    for (const auto& [pair, n] : c) {
      auto [it, inserted] = bounds.emplace(
          pair, FrequencyBounds{std::numeric_limits<std::int64_t>::max(), 0});
      (void)inserted;
      if (n > it->second.max) it->second.max = n;
    }
  for (auto& [pair, b] : bounds) {
    for (const auto& c : counts) {
      auto it = c.find(pair);
      const std::int64_t n = it == c.end() ? 0 : it->second;
      if (n < b.min) b.min = n;
    }
  }
  return bounds;
}

Udfg compute_udfg(const UncertainLog& log, std::int64_t cap) {
  Udfg g;
  g.nodes.insert(kStartNode);
  g.nodes.insert(kEndNode);
  for (const auto& wt : log.traces) {
    for (const auto& e : wt.trace.events)
      for (const auto& c : e.activity.candidates) {
        if (c.label == kStartNode || c.label == kEndNode)
          throw std::invalid_argument("activity label '" + c.label +
                                      "' collides with a reserved node name");
        g.nodes.insert(c.label);
      }
  }
  for (const auto& wt : log.traces) {
    std::map<std::pair<std::string, std::string>, FrequencyBounds> bounds;
    try {
      bounds = trace_df_bounds(wt.trace, cap);
    } catch (const cap_exceeded& e) {
      throw cap_exceeded("realizations of trace " + wt.trace.case_id, e.cap(),
                         e.partial_count());
    }
    for (const auto& [pair, b] : bounds) {
      auto& edge = g.edges[pair];
      edge.min += b.min * wt.weight;
      edge.max += b.max * wt.weight;
    }
  }
  return g;
}

Dfg filter_udfg(const Udfg& g, FilterMode mode, std::int64_t threshold) {
  Dfg out;
  out.nodes.insert(kStartNode);
  out.nodes.insert(kEndNode);
  for (const auto& [pair, b] : g.edges) {
    const std::int64_t gate = mode == FilterMode::Min ? b.min : b.max;
    if (gate >= threshold) {
      out.edges[pair] = b.max;
      out.nodes.insert(pair.first);
      out.nodes.insert(pair.second);
    }
  }
  return out;
}

}  // namespace upm
