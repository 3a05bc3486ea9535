#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "upm/event_model.hpp"

namespace upm {

inline constexpr const char* kStartNode = "START";
inline constexpr const char* kEndNode = "END";

// Frequency bounds of a directly-follows pair over all realizations of a log.
struct FrequencyBounds {
  std::int64_t min = 0;
  std::int64_t max = 0;
  friend bool operator==(const FrequencyBounds&, const FrequencyBounds&) = default;
};

// Directly-follows graph over activity labels plus the artificial START and
// END nodes, each edge carrying [min,max] observable frequencies.
struct Udfg {
  std::set<std::string> nodes;  // includes START and END
  std::map<std::pair<std::string, std::string>, FrequencyBounds> edges;

  friend bool operator==(const Udfg&, const Udfg&) = default;
};

// Certain directly-follows graph, as produced by filtering a Udfg.
struct Dfg {
  std::set<std::string> nodes;  // includes START and END
  std::map<std::pair<std::string, std::string>, std::int64_t> edges;

  friend bool operator==(const Dfg&, const Dfg&) = default;
};

// Per-pair [min,max] directly-follows counts over the realizations of one
// trace, with sequences padded by START and END. Enumeration is capped;
// throws cap_exceeded beyond it.
std::map<std::pair<std::string, std::string>, FrequencyBounds> trace_df_bounds(
    const UncertainTrace& trace, std::int64_t cap = 10000);

// Sum of per-trace bounds scaled by trace weights. Rejects logs using the
// reserved START/END labels; a cap overrun names the offending trace.
Udfg compute_udfg(const UncertainLog& log, std::int64_t cap = 10000);

enum class FilterMode { Min, Max };

// Keep edges whose min (or max) bound reaches the threshold; drop activities
// left without any incident edge. Retained edges carry their max bound.
Dfg filter_udfg(const Udfg& g, FilterMode mode, std::int64_t threshold);

}  // namespace upm
