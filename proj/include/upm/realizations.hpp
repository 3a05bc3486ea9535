#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "upm/event_model.hpp"

namespace upm {

// One concrete outcome of an uncertain trace: which events happened, in which
// order, under which labels.
struct Realization {
  std::vector<std::pair<std::string, std::string>> steps;  // (event id, chosen label)
  std::set<std::string> excluded;                           // events chosen absent

  std::vector<std::string> activity_sequence() const;

  friend bool operator==(const Realization&, const Realization&) = default;
  friend auto operator<=>(const Realization&, const Realization&) = default;
};

// Every realization of the trace: all subsets of indeterminate events absent,
// all label choices, all linear extensions of the precedence dag over the
// present events. Throws cap_exceeded("realizations") beyond cap.
std::set<Realization> enumerate_realizations(const UncertainTrace& trace, std::int64_t cap);

// Distinct activity sequences over all realizations, same cap behavior.
std::set<std::vector<std::string>> realization_sequences(const UncertainTrace& trace,
                                                         std::int64_t cap);

// Monte-Carlo estimate of the probability that the listed events, when their
// timestamps are sampled (points constant, intervals uniform, gaussians
// normal), sort exactly in the given order. Deterministic for a fixed seed;
// returns exactly 1.0 when every consecutive pair is already strictly ordered
// by supports. `order` must name a subset of the trace's events, each once.
double ordering_probability(const UncertainTrace& trace, const std::vector<std::string>& order,
                            std::int64_t samples, std::uint64_t seed);

// Probability of one realization: absence factors for excluded events,
// presence and label factors for the others, times the ordering probability
// of its steps. Requires weak uncertainty everywhere unless allow_defaults is
// set, in which case uniform label probabilities, absence 0.5 and uniform
// interval sampling stand in for missing distributions.
double realization_probability(const UncertainTrace& trace, const Realization& r,
                               std::int64_t samples, std::uint64_t seed,
                               bool allow_defaults = false);

}  // namespace upm
