#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>

#include "upm/event_model.hpp"

namespace upm {

// Knobs for simulating recording anomalies on a certain log. Confusion sets
// implicitly keep the original label; weak mode emits fixed probabilities
// (0.9 for the original label, absence drawn from (0, 0.5]) so runs stay
// reproducible.
struct InjectionConfig {
  std::optional<double> time_granularity;
  std::map<std::string, std::set<std::string>> label_confusion;
  double p_label = 0.0;
  double p_indeterminate = 0.0;
  bool weak = false;
  std::uint64_t seed = 0;

  friend bool operator==(const InjectionConfig&, const InjectionConfig&) = default;
};

std::string injection_config_to_json(const InjectionConfig& config);
InjectionConfig injection_config_from_json(const std::string& text);

// Point timestamps widen to the enclosing granularity bucket
// [floor(t/g)*g, floor(t/g)*g + g]. Rejects already-uncertain timestamps.
UncertainLog coarsen_timestamps(const UncertainLog& log, double granularity);

// Each event whose (certain) label has a confusion set gains the confused
// candidates with probability p_label. Per-event decisions derive from the
// seed and the event's identity, so they survive log reordering.
UncertainLog ambiguate_labels(const UncertainLog& log,
                              const std::map<std::string, std::set<std::string>>& confusion,
                              double p_label, bool weak, std::uint64_t seed);

// Each event independently becomes indeterminate with probability p.
UncertainLog inject_indeterminacy(const UncertainLog& log, double p, bool weak,
                                  std::uint64_t seed);

// All three steps, driven by one config.
UncertainLog inject(const UncertainLog& log, const InjectionConfig& config);

}  // namespace upm
