#include "upm/realizations.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "upm/behavior_net.hpp"
#include "upm/errors.hpp"
#include "upm/rng.hpp"

namespace upm {

std::vector<std::string> Realization::activity_sequence() const {
  std::vector<std::string> seq;
  seq.reserve(steps.size());
  for (const auto& [id, label] : steps) seq.push_back(label);
  return seq;
}

namespace {

struct Enumerator {
  const UncertainTrace& trace;
  std::int64_t cap;
  std::set<Realization> out;

  std::map<std::string, const UncertainEvent*> by_id;
  std::vector<std::string> present;                         // current presence choice
  std::set<std::pair<std::string, std::string>> dag_edges;  // full precedence dag

  explicit Enumerator(const UncertainTrace& t, std::int64_t c) : trace(t), cap(c) {
    for (const auto& e : trace.events) by_id[e.id] = &e;
    dag_edges = precedence_dag(trace).edges;
  }

  void run() {
    std::vector<const UncertainEvent*> indeterminate;
    for (const auto& e : trace.events)
      if (e.indeterminacy.indeterminate) indeterminate.push_back(&e);
    choose_absent(indeterminate, 0, {});
  }

  void choose_absent(const std::vector<const UncertainEvent*>& indeterminate, size_t i,
                     std::set<std::string> excluded) {
    if (i == indeterminate.size()) {
      present.clear();
      for (const auto& e : trace.events)
        if (!excluded.count(e.id)) present.push_back(e.id);
      std::vector<std::pair<std::string, std::string>> steps;
      extend_order(excluded, steps, present);
      return;
    }
    choose_absent(indeterminate, i + 1, excluded);
    excluded.insert(indeterminate[i]->id);
    choose_absent(indeterminate, i + 1, std::move(excluded));
  }

  // Linear extensions: repeatedly pick any remaining event whose predecessors
  // are all placed, then branch over its candidate labels.
  void extend_order(const std::set<std::string>& excluded,
                    std::vector<std::pair<std::string, std::string>>& steps,
                    const std::vector<std::string>& remaining) {
    if (remaining.empty()) {
      Realization r{steps, excluded};
      if (out.insert(std::move(r)).second &&
          static_cast<std::int64_t>(out.size()) > cap)
        throw cap_exceeded("realizations", cap, static_cast<std::int64_t>(out.size()));
      return;
    }
    for (size_t k = 0; k < remaining.size(); ++k) {
      const std::string& id = remaining[k];
      bool minimal = true;
      for (const auto& other : remaining) {
        if (other != id && dag_edges.count({other, id})) {
          minimal = false;
          break;
        }
      }
      if (!minimal) continue;
      std::vector<std::string> rest;
      rest.reserve(remaining.size() - 1);
      for (size_t j = 0; j < remaining.size(); ++j)
        if (j != k) rest.push_back(remaining[j]);
      for (const auto& c : by_id.at(id)->activity.candidates) {
        steps.emplace_back(id, c.label);
        extend_order(excluded, steps, rest);
        steps.pop_back();
      }
    }
  }
};

}  // namespace

std::set<Realization> enumerate_realizations(const UncertainTrace& trace, std::int64_t cap) {
  if (cap < 1) throw std::invalid_argument("cap must be >= 1");
  Enumerator e(trace, cap);
  e.run();
  return std::move(e.out);
}

std::set<std::vector<std::string>> realization_sequences(const UncertainTrace& trace,
                                                         std::int64_t cap) {
  std::set<std::vector<std::string>> seqs;
  for (const auto& r : enumerate_realizations(trace, cap)) seqs.insert(r.activity_sequence());
  return seqs;
}

namespace {

double sample_time(const TimestampSpec& ts, DetRng& rng) {
  if (const auto* p = std::get_if<PointTime>(&ts)) return p->value;
  if (const auto* iv = std::get_if<IntervalTime>(&ts)) return rng.uniform(iv->lo, iv->hi);
  const auto& g = std::get<GaussianTime>(ts);
  return rng.gaussian(g.mu, g.sigma);
}

}  // namespace

double ordering_probability(const UncertainTrace& trace, const std::vector<std::string>& order,
                            std::int64_t samples, std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("samples must be >= 1");
  std::vector<const UncertainEvent*> events;
  events.reserve(order.size());
  {
    std::set<std::string> seen;
    for (const auto& id : order) {
      const UncertainEvent* e = trace.find_event(id);
      if (!e) throw std::invalid_argument("unknown event id: " + id);
      if (!seen.insert(id).second) throw std::invalid_argument("event id repeated: " + id);
      events.push_back(e);
    }
  }
  if (events.size() < 2) return 1.0;

  bool chain = true;
  for (size_t i = 0; i + 1 < events.size(); ++i)
    if (!(support(events[i]->timestamp).hi < support(events[i + 1]->timestamp).lo)) chain = false;
  if (chain) return 1.0;

  // One substream per sample index, so results are independent of how callers
  // chunk the sample range.
  std::int64_t hits = 0;
  const size_t n = events.size();
  std::vector<double> t(n);
  for (std::int64_t s = 0; s < samples; ++s) {
    DetRng rng(derive_seed(seed, static_cast<std::uint64_t>(s)));
    for (size_t i = 0; i < n; ++i) t[i] = sample_time(events[i]->timestamp, rng);
    // Ties are vanishingly rare but floats allow them: resample the pair once,
    // then fall back to event-id order.
    for (size_t i = 0; i < n; ++i)
      for (size_t j = i + 1; j < n; ++j)
        if (t[i] == t[j]) {
          t[i] = sample_time(events[i]->timestamp, rng);
          t[j] = sample_time(events[j]->timestamp, rng);
        }
    bool in_order = true;
    for (size_t i = 0; i + 1 < n && in_order; ++i) {
      if (t[i] < t[i + 1]) continue;
      if (t[i] > t[i + 1]) {
        in_order = false;
      } else {
        in_order = events[i]->id < events[i + 1]->id;
      }
    }
    if (in_order) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(samples);
}

namespace {

double label_probability(const UncertainEvent& e, const std::string& label, bool allow_defaults) {
  for (const auto& c : e.activity.candidates) {
    if (c.label != label) continue;
    if (c.probability) return *c.probability;
    if (e.activity.candidates.size() == 1) return 1.0;
    if (!allow_defaults)
      throw std::invalid_argument("event " + e.id +
                                  " has candidate labels without probabilities; "
                                  "pass allow_defaults to assume a uniform choice");
    return 1.0 / static_cast<double>(e.activity.candidates.size());
  }
  throw std::invalid_argument("label '" + label + "' is not a candidate of event " + e.id);
}

double absence_probability(const UncertainEvent& e, bool allow_defaults) {
  if (e.indeterminacy.absence_probability) return *e.indeterminacy.absence_probability;
  if (!allow_defaults)
    throw std::invalid_argument("event " + e.id +
                                " is indeterminate without an absence probability; "
                                "pass allow_defaults to assume 0.5");
  return 0.5;
}

}  // namespace

double realization_probability(const UncertainTrace& trace, const Realization& r,
                               std::int64_t samples, std::uint64_t seed, bool allow_defaults) {
  if (!allow_defaults) {
    for (const auto& e : trace.events) {
      if (std::holds_alternative<IntervalTime>(e.timestamp))
        throw std::invalid_argument("event " + e.id +
                                    " has an interval timestamp with no distribution; "
                                    "pass allow_defaults to sample it uniformly");
    }
  }
  double p = 1.0;
  for (const auto& id : r.excluded) {
    const UncertainEvent* e = trace.find_event(id);
    if (!e) throw std::invalid_argument("unknown event id: " + id);
    p *= absence_probability(*e, allow_defaults);
  }
  std::vector<std::string> order;
  order.reserve(r.steps.size());
  for (const auto& [id, label] : r.steps) {
    const UncertainEvent* e = trace.find_event(id);
    if (!e) throw std::invalid_argument("unknown event id: " + id);
    if (e->indeterminacy.indeterminate) p *= 1.0 - absence_probability(*e, allow_defaults);
    p *= label_probability(*e, label, allow_defaults);
    order.push_back(id);
  }
  return p * ordering_probability(trace, order, samples, seed);
}

}  // namespace upm
