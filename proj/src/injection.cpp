#include "upm/injection.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "upm/errors.hpp"
#include "upm/rng.hpp"

namespace upm {

std::string injection_config_to_json(const InjectionConfig& config) {
  nlohmann::ordered_json j;
  if (config.time_granularity)
    j["time_granularity"] = *config.time_granularity;
  else
    j["time_granularity"] = nullptr;
  j["label_confusion"] = nlohmann::ordered_json::object();
  for (const auto& [label, others] : config.label_confusion)
    j["label_confusion"][label] = others;
  j["p_label"] = config.p_label;
  j["p_indeterminate"] = config.p_indeterminate;
  j["weak"] = config.weak;
  j["seed"] = config.seed;
  return j.dump(2) + "\n";
}

InjectionConfig injection_config_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw parse_error(std::string("invalid JSON: ") + e.what());
  }
  InjectionConfig config;
  if (j.contains("time_granularity") && !j["time_granularity"].is_null())
    config.time_granularity = j["time_granularity"].get<double>();
  if (j.contains("label_confusion"))
    for (auto it = j["label_confusion"].begin(); it != j["label_confusion"].end(); ++it)
      config.label_confusion[it.key()] = it.value().get<std::set<std::string>>();
  config.p_label = j.value("p_label", 0.0);
  config.p_indeterminate = j.value("p_indeterminate", 0.0);
  config.weak = j.value("weak", false);
  config.seed = j.value("seed", std::uint64_t{0});
  if (config.p_label < 0.0 || config.p_label > 1.0)
    throw parse_error("$.p_label: must lie in [0,1]");
  if (config.p_indeterminate < 0.0 || config.p_indeterminate > 1.0)
    throw parse_error("$.p_indeterminate: must lie in [0,1]");
  if (config.time_granularity && !(*config.time_granularity > 0.0))
    throw parse_error("$.time_granularity: must be positive");
  return config;
}

namespace {

DetRng event_rng(std::uint64_t seed, const UncertainTrace& trace, const UncertainEvent& e,
                 const char* op) {
  return DetRng(derive_seed(seed, trace.case_id + "/" + e.id + "/" + op));
}

}  // namespace

UncertainLog coarsen_timestamps(const UncertainLog& log, double granularity) {
  if (!(granularity > 0.0)) throw std::invalid_argument("granularity must be positive");
  UncertainLog out = log;
  for (auto& wt : out.traces)
    for (auto& e : wt.trace.events) {
      const auto* p = std::get_if<PointTime>(&e.timestamp);
      if (!p)
        throw std::invalid_argument("event " + e.id + " of trace " + wt.trace.case_id +
                                    " already has an uncertain timestamp");
      const double lo = std::floor(p->value / granularity) * granularity;
      e.timestamp = IntervalTime{lo, lo + granularity};
    }
  return out;
}

UncertainLog ambiguate_labels(const UncertainLog& log,
                              const std::map<std::string, std::set<std::string>>& confusion,
                              double p_label, bool weak, std::uint64_t seed) {
  UncertainLog out = log;
  for (auto& wt : out.traces)
    for (auto& e : wt.trace.events) {
      if (e.activity.candidates.size() != 1 || e.activity.has_probabilities()) continue;
      const std::string original = e.activity.candidates.front().label;
      auto it = confusion.find(original);
      if (it == confusion.end()) continue;
      std::vector<std::string> extra(it->second.begin(), it->second.end());
      extra.erase(std::remove(extra.begin(), extra.end(), original), extra.end());
      if (extra.empty()) continue;
      DetRng rng = event_rng(seed, wt.trace, e, "label");
      if (!rng.bernoulli(p_label)) continue;
      ActivitySpec spec;
      if (weak) {
        spec.candidates.push_back({original, 0.9});
        const double share = 0.1 / static_cast<double>(extra.size());
        for (const auto& l : extra) spec.candidates.push_back({l, share});
      } else {
        spec.candidates.push_back({original, std::nullopt});
        for (const auto& l : extra) spec.candidates.push_back({l, std::nullopt});
      }
      e.activity = std::move(spec);
    }
  return out;
}

UncertainLog inject_indeterminacy(const UncertainLog& log, double p, bool weak,
                                  std::uint64_t seed) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("p must lie in [0,1]");
  UncertainLog out = log;
  for (auto& wt : out.traces)
    for (auto& e : wt.trace.events) {
      DetRng rng = event_rng(seed, wt.trace, e, "indet");
      if (!rng.bernoulli(p)) continue;
      if (weak) {
        // Uniform over (0, 0.5].
        e.indeterminacy = Indeterminacy::with_probability(0.5 * (1.0 - rng.uniform01()));
      } else {
        e.indeterminacy = Indeterminacy::maybe();
      }
    }
  return out;
}

UncertainLog inject(const UncertainLog& log, const InjectionConfig& config) {
  UncertainLog out = log;
  if (config.time_granularity) out = coarsen_timestamps(out, *config.time_granularity);
  if (!config.label_confusion.empty())
    out = ambiguate_labels(out, config.label_confusion, config.p_label, config.weak, config.seed);
  out = inject_indeterminacy(out, config.p_indeterminate, config.weak, config.seed);
  return out;
}

}  // namespace upm
