#pragma once

// Shared hand-built inputs: the healthcare running example (one uncertain
// trace and its normative model) and the three-trace uncertain log used by
// the discovery tests.

#include "upm/event_model.hpp"
#include "upm/log_io.hpp"
#include "upm/petri_net.hpp"

namespace fixtures {

// Trace ID192: an indeterminate NightSweats at 5, an ambiguous PrTP/SecTP at
// 8, a Splenomeg somewhere in [4,10], and a certain Adm at 12.
inline upm::UncertainTrace running_example_trace() {
  upm::UncertainTrace t;
  t.case_id = "ID192";
  t.events = {
      {"e1", upm::ActivitySpec::certain("NightSweats"), upm::PointTime{5},
       upm::Indeterminacy::maybe()},
      {"e2", upm::ActivitySpec::choice({"PrTP", "SecTP"}), upm::PointTime{8},
       upm::Indeterminacy::none()},
      {"e3", upm::ActivitySpec::certain("Splenomeg"), upm::IntervalTime{4, 10},
       upm::Indeterminacy::none()},
      {"e4", upm::ActivitySpec::certain("Adm"), upm::PointTime{12}, upm::Indeterminacy::none()},
  };
  return t;
}

// The weakly uncertain variant (case ID348): absence 25%, PrTP 90%/SecTP 10%,
// Splenomeg timestamp N(7,1).
inline upm::UncertainTrace weak_example_trace() {
  upm::UncertainTrace t;
  t.case_id = "ID348";
  t.events = {
      {"e4", upm::ActivitySpec::weighted({{"NightSweats", 1.0}}), upm::PointTime{5},
       upm::Indeterminacy::with_probability(0.25)},
      {"e5", upm::ActivitySpec::weighted({{"PrTP", 0.9}, {"SecTP", 0.1}}), upm::PointTime{8},
       upm::Indeterminacy::none()},
      {"e6", upm::ActivitySpec::weighted({{"Splenomeg", 1.0}}), upm::GaussianTime{7, 1},
       upm::Indeterminacy::none()},
  };
  return t;
}

// Normative model: a silent split into concurrent NightSweats and Splenomeg,
// a silent join, then PrTP and Adm in sequence.
inline upm::PetriNet healthcare_model() {
  upm::PetriNet net;
  net.places = {"p1", "p11", "p12", "p21", "p22", "p2", "p3", "p6"};
  net.transitions = {
      {"t1", std::nullopt},    {"t2", "NightSweats"}, {"t3", "Splenomeg"},
      {"t4", std::nullopt},    {"t5", "PrTP"},        {"t6", "Adm"},
  };
  net.arcs = {
      {"p1", "t1"},  {"t1", "p11"}, {"t1", "p12"}, {"p11", "t2"}, {"t2", "p21"},
      {"p12", "t3"}, {"t3", "p22"}, {"p21", "t4"}, {"p22", "t4"}, {"t4", "p2"},
      {"p2", "t5"},  {"t5", "p3"},  {"p3", "t6"},  {"t6", "p6"},
  };
  net.initial_marking = {{"p1", 1}};
  net.final_marking = {{"p6", 1}};
  return net;
}

inline const char* kSampleLogText =
    "<a,b,e,f,g,h>^80; <a,{b,c},[e,f],g,i>^15; <a,{b,c,d},[e,f],g,j?>^5";

inline upm::UncertainLog sample_uncertain_log() { return upm::parse_shorthand(kSampleLogText); }

}  // namespace fixtures
