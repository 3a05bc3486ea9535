#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "upm/event_model.hpp"
#include "upm/petri_net.hpp"

namespace upm {

enum class MoveKind {
  Sync,             // both sides advance on the same label, cost 0
  LogMove,          // label only in the trace, cost 1
  ModelMove,        // visible transition only in the model, cost 1
  SilentLogMove,    // silent transition of the log-side net (behavior nets), cost 0
  SilentModelMove,  // silent transition of the model, cost 0
};

struct Move {
  MoveKind kind;
  std::string label;                  // visible label; empty for silent moves
  std::string log_transition_id;      // set when the log side advances
  std::string model_transition_id;    // set when the model side advances

  int cost() const { return kind == MoveKind::LogMove || kind == MoveKind::ModelMove ? 1 : 0; }

  friend bool operator==(const Move&, const Move&) = default;
};

struct Alignment {
  std::vector<Move> moves;
  int cost = 0;

  // Visible labels contributed by the trace side (Sync + LogMove).
  std::vector<std::string> log_projection() const;
  // Visible labels contributed by the model side (Sync + ModelMove).
  std::vector<std::string> model_projection() const;

  friend bool operator==(const Alignment&, const Alignment&) = default;
};

// Linear net accepting exactly the given activity sequence.
PetriNet trace_net(const std::vector<std::string>& sequence);

// Minimum-cost path through the synchronous product of log_net and model,
// from (initial, initial) to (final, final). Unit costs: log and visible
// model moves cost 1, synchronous and silent moves cost 0. Ties are broken
// lexicographically over move sequences so the result is reproducible.
// Throws model_error when the product's final state is unreachable.
Alignment optimal_alignment(const PetriNet& log_net, const PetriNet& model);

struct ConformanceBounds {
  int lower = 0;
  Alignment lower_witness;
  std::optional<int> upper;             // absent when realization enumeration hit the cap
  std::optional<Alignment> upper_witness;
  std::optional<std::string> cap_note;  // why upper is absent
};

// Best- and worst-case deviation costs of the uncertain trace against the
// model: lower from the behavior net, upper by enumerating realizations
// (capped). The lower bound survives a cap overrun; the upper does not.
ConformanceBounds conformance_bounds(const UncertainTrace& trace, const PetriNet& model,
                                     std::int64_t cap);

// Probability-weighted mean optimal cost over all realizations. Weights are
// normalized over the enumerated set, which pins the result inside
// [lower, upper] regardless of Monte-Carlo noise.
double expected_cost(const UncertainTrace& trace, const PetriNet& model, std::int64_t samples,
                     std::uint64_t seed, std::int64_t cap, bool allow_defaults = false);

// Two-row rendering: trace row over model row, "»" for no-move, "τ" for silent.
std::string render_alignment(const Alignment& a);

}  // namespace upm
