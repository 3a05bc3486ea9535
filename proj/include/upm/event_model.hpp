#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace upm {

// ---- timestamps ------------------------------------------------------------

struct PointTime {
  double value = 0.0;
  friend bool operator==(const PointTime&, const PointTime&) = default;
};

struct IntervalTime {
  double lo = 0.0;
  double hi = 0.0;  // lo <= hi
  friend bool operator==(const IntervalTime&, const IntervalTime&) = default;
};

struct GaussianTime {
  double mu = 0.0;
  double sigma = 1.0;  // > 0
  friend bool operator==(const GaussianTime&, const GaussianTime&) = default;
};

using TimestampSpec = std::variant<PointTime, IntervalTime, GaussianTime>;

// Closed interval of time values an event may occupy.
struct TimeInterval {
  double lo = 0.0;
  double hi = 0.0;
  friend bool operator==(const TimeInterval&, const TimeInterval&) = default;
};

// Support of a timestamp, used for ordering events. Gaussians are truncated
// to mu +/- 4*sigma here; probability computations sample the full curve.
TimeInterval support(const TimestampSpec& ts);

// ---- activities ------------------------------------------------------------

struct ActivityCandidate {
  std::string label;
  std::optional<double> probability;  // all-or-none across an ActivitySpec
  friend bool operator==(const ActivityCandidate&, const ActivityCandidate&) = default;
};

// One or more possible activity labels for an event, optionally weighted.
// A single unweighted candidate is a certain activity.
struct ActivitySpec {
  std::vector<ActivityCandidate> candidates;

  static ActivitySpec certain(std::string label);
  static ActivitySpec choice(std::vector<std::string> labels);
  static ActivitySpec weighted(std::vector<std::pair<std::string, double>> weighted_labels);

  bool has_probabilities() const;
  bool is_certain() const { return candidates.size() == 1 && !has_probabilities(); }
  std::vector<std::string> labels() const;

  friend bool operator==(const ActivitySpec&, const ActivitySpec&) = default;
};

// ---- indeterminacy ---------------------------------------------------------

// An indeterminate event was recorded but may not have happened.
// absence_probability, when known, is the probability it did NOT happen.
struct Indeterminacy {
  bool indeterminate = false;
  std::optional<double> absence_probability;  // in (0,1); implies indeterminate

  static Indeterminacy none() { return {}; }
  static Indeterminacy maybe() { return {true, std::nullopt}; }
  static Indeterminacy with_probability(double p) { return {true, p}; }

  friend bool operator==(const Indeterminacy&, const Indeterminacy&) = default;
};

// ---- events, traces, logs --------------------------------------------------

struct UncertainEvent {
  std::string id;
  ActivitySpec activity;
  TimestampSpec timestamp = PointTime{0.0};
  Indeterminacy indeterminacy;

  friend bool operator==(const UncertainEvent&, const UncertainEvent&) = default;
};

// Events are kept in recording order; only timestamps carry temporal meaning.
struct UncertainTrace {
  std::string case_id;
  std::vector<UncertainEvent> events;

  const UncertainEvent* find_event(const std::string& event_id) const;

  friend bool operator==(const UncertainTrace&, const UncertainTrace&) = default;
};

struct WeightedTrace {
  UncertainTrace trace;
  std::int64_t weight = 1;
  friend bool operator==(const WeightedTrace&, const WeightedTrace&) = default;
};

struct UncertainLog {
  std::vector<WeightedTrace> traces;
  friend bool operator==(const UncertainLog&, const UncertainLog&) = default;
};

// ---- operations ------------------------------------------------------------

// True iff e must have happened before f: the supports do not overlap and do
// not touch. Overlapping or touching supports leave the order open either way.
bool strictly_precedes(const UncertainEvent& e, const UncertainEvent& f);

struct Violation {
  std::string case_id;
  std::string event_id;  // empty for trace-level rules
  std::string rule;
  std::string detail;
  friend bool operator==(const Violation&, const Violation&) = default;
};

// Checks every type invariant; returns one record per breach, never throws.
std::vector<Violation> validate(const UncertainLog& log);
std::vector<Violation> validate(const UncertainTrace& trace);

}  // namespace upm
