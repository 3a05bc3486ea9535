#pragma once

#include <string>

#include "upm/event_model.hpp"
#include "upm/petri_net.hpp"
#include "upm/udfg.hpp"

namespace upm {

// ---- shorthand trace notation ----------------------------------------------
//
//   log      := trace (";" trace)*
//   trace    := "<" item ("," item)* ">" ("^" INT)?
//   item     := elem | "[" elem ("," elem)+ "]"
//   elem     := (LABEL | "{" LABEL ("," LABEL)+ "}") ("?")?
//
// Item i (1-based) gets timestamp Point(i); members of an overlap group at
// position i all get Interval(i, i+0.5). "?" marks an indeterminate event.
// Traces are named t1, t2, ... and events e1, e2, ... in order.
UncertainLog parse_shorthand(const std::string& text);

// Inverse of parse_shorthand for logs in its canonical form. Weak-uncertainty
// attributes (probabilities, gaussians) have no shorthand and are rejected.
std::string render_shorthand(const UncertainLog& log);

// ---- JSON log serialization --------------------------------------------------
//
// {"traces":[{"case_id":str,"weight":int,"events":[{"id":str,
//   "activities":[{"label":str,"p":number|null}],
//   "timestamp":{"type":"point","value":num}
//              |{"type":"interval","lo":num,"hi":num}
//              |{"type":"gaussian","mu":num,"sigma":num},
//   "indeterminate":bool,"absence_p":number|null}]}]}
std::string to_json(const UncertainLog& log);
UncertainLog from_json(const std::string& text);

// ---- XES ---------------------------------------------------------------------
//
// Plain XES describes certain logs (concept:name + time:timestamp, seconds
// since epoch). Events carrying the uncertainty:* keys are promoted:
//   uncertainty:label        nested attribute, one child per candidate label
//                            (float child = probability, string child = none)
//   uncertainty:time_lo/hi   dates, interval timestamp
//   uncertainty:time_mu/sigma floats, gaussian timestamp
//   uncertainty:indeterminate boolean
//   uncertainty:absence_p    float
UncertainLog import_xes(const std::string& xml_text);
std::string export_xes(const UncertainLog& log);

// ---- Petri net JSON ------------------------------------------------------------
//
// {"places":[str],"transitions":[{"id":str,"label":str|null}],
//  "arcs":[[str,str]],"initial":{place:int},"final":{place:int}}
std::string net_to_json(const PetriNet& net);
PetriNet net_from_json(const std::string& text);

// ---- DOT renderings -------------------------------------------------------------
//
// Deterministic output: nodes and edges sorted by identifier. Places are
// circles (initial tokens shown as the label, final places double-circled),
// transitions boxes, silent ones filled black. UDFG edges carry "[min, max]".
std::string export_dot_net(const PetriNet& net);
std::string export_dot_udfg(const Udfg& g);

}  // namespace upm
