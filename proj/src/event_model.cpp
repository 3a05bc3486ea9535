#include "upm/event_model.hpp"

#include <cmath>
#include <set>

namespace upm {

TimeInterval support(const TimestampSpec& ts) {
  if (const auto* p = std::get_if<PointTime>(&ts)) return {p->value, p->value};
  if (const auto* iv = std::get_if<IntervalTime>(&ts)) return {iv->lo, iv->hi};
  const auto& g = std::get<GaussianTime>(ts);
  return {g.mu - 4.0 * g.sigma, g.mu + 4.0 * g.sigma};
}

ActivitySpec ActivitySpec::certain(std::string label) {
  return {{ActivityCandidate{std::move(label), std::nullopt}}};
}

ActivitySpec ActivitySpec::choice(std::vector<std::string> labels) {
  ActivitySpec spec;
  spec.candidates.reserve(labels.size());
  for (auto& l : labels) spec.candidates.push_back({std::move(l), std::nullopt});
  return spec;
}

ActivitySpec ActivitySpec::weighted(std::vector<std::pair<std::string, double>> weighted_labels) {
  ActivitySpec spec;
  spec.candidates.reserve(weighted_labels.size());
  for (auto& [l, p] : weighted_labels) spec.candidates.push_back({std::move(l), p});
  return spec;
}

bool ActivitySpec::has_probabilities() const {
  return !candidates.empty() && candidates.front().probability.has_value();
}

std::vector<std::string> ActivitySpec::labels() const {
  std::vector<std::string> out;
  out.reserve(candidates.size());
  for (const auto& c : candidates) out.push_back(c.label);
  return out;
}

const UncertainEvent* UncertainTrace::find_event(const std::string& event_id) const {
  for (const auto& e : events)
    if (e.id == event_id) return &e;
  return nullptr;
}

bool strictly_precedes(const UncertainEvent& e, const UncertainEvent& f) {
  return support(e.timestamp).hi < support(f.timestamp).lo;
}

namespace {

void check_event(const UncertainTrace& t, const UncertainEvent& e, std::vector<Violation>& out) {
  const auto add = [&](const std::string& rule, const std::string& detail) {
    out.push_back({t.case_id, e.id, rule, detail});
  };

  if (e.activity.candidates.empty()) {
    add("candidates-empty", "activity must list at least one label");
  } else {
    std::set<std::string> seen;
    for (const auto& c : e.activity.candidates)
      if (!seen.insert(c.label).second) add("duplicate-label", "label '" + c.label + "' repeated");

    const bool first_has_p = e.activity.candidates.front().probability.has_value();
    bool mixed = false;
    for (const auto& c : e.activity.candidates)
      if (c.probability.has_value() != first_has_p) mixed = true;
    if (mixed) {
      add("probabilities-partial", "either every candidate carries a probability or none does");
    } else if (first_has_p) {
      double sum = 0.0;
      bool range_ok = true;
      for (const auto& c : e.activity.candidates) {
        const double p = *c.probability;
        if (!(p > 0.0 && p <= 1.0)) range_ok = false;
        sum += p;
      }
      if (!range_ok) add("probability-range", "label probabilities must lie in (0,1]");
      if (std::fabs(sum - 1.0) > 1e-9)
        add("probabilities-sum", "label probabilities sum to " + std::to_string(sum));
    }
  }

  if (const auto* iv = std::get_if<IntervalTime>(&e.timestamp)) {
    if (!(iv->lo <= iv->hi)) add("interval-order", "interval lo must not exceed hi");
  } else if (const auto* g = std::get_if<GaussianTime>(&e.timestamp)) {
    if (!(g->sigma > 0.0)) add("sigma-positive", "gaussian sigma must be positive");
  }

  if (e.indeterminacy.absence_probability) {
    if (!e.indeterminacy.indeterminate)
      add("absence-without-indeterminate", "absence probability on a determinate event");
    const double p = *e.indeterminacy.absence_probability;
    if (!(p > 0.0 && p < 1.0)) add("absence-range", "absence probability must lie in (0,1)");
  }
}

}  // namespace

std::vector<Violation> validate(const UncertainTrace& trace) {
  std::vector<Violation> out;
  std::set<std::string> ids;
  for (const auto& e : trace.events) {
    if (!ids.insert(e.id).second)
      out.push_back({trace.case_id, e.id, "duplicate-id", "event id repeated within trace"});
    check_event(trace, e, out);
  }
  return out;
}

std::vector<Violation> validate(const UncertainLog& log) {
  std::vector<Violation> out;
  for (const auto& wt : log.traces) {
    if (wt.weight < 1)
      out.push_back({wt.trace.case_id, "", "weight-positive",
                     "trace weight must be >= 1, got " + std::to_string(wt.weight)});
    auto trace_violations = validate(wt.trace);
    out.insert(out.end(), trace_violations.begin(), trace_violations.end());
  }
  return out;
}

}  // namespace upm
