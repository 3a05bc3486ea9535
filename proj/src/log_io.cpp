#include "upm/log_io.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include <nlohmann/json.hpp>

#include "upm/errors.hpp"

namespace upm {

// ---- shorthand --------------------------------------------------------------

namespace {

class ShorthandParser {
 public:
  explicit ShorthandParser(const std::string& text) : text_(text) {}

  UncertainLog parse() {
    UncertainLog log;
    skip_ws();
    if (eof()) throw error("expected a trace");
    log.traces.push_back(parse_trace());
    skip_ws();
    while (!eof()) {
      expect(';');
      skip_ws();
      log.traces.push_back(parse_trace());
      skip_ws();
    }
    return log;
  }

 private:
  struct Elem {
    std::vector<std::string> labels;
    bool indeterminate = false;
  };

  WeightedTrace parse_trace() {
    WeightedTrace wt;
    wt.trace.case_id = "t" + std::to_string(++trace_count_);
    expect('<');
    int item_index = 0;
    int event_index = 0;
    const auto add_event = [&](const Elem& elem, const TimestampSpec& ts) {
      UncertainEvent e;
      e.id = "e" + std::to_string(++event_index);
      e.activity = ActivitySpec::choice(elem.labels);
      e.timestamp = ts;
      if (elem.indeterminate) e.indeterminacy = Indeterminacy::maybe();
      wt.trace.events.push_back(std::move(e));
    };
    for (;;) {
      ++item_index;
      skip_ws();
      if (peek() == '[') {
        get();
        const double lo = item_index, hi = item_index + 0.5;
        int members = 0;
        for (;;) {
          skip_ws();
          add_event(parse_elem(), IntervalTime{lo, hi});
          ++members;
          skip_ws();
          if (peek() == ',') {
            get();
            continue;
          }
          expect(']');
          break;
        }
        if (members < 2) throw error("an overlap group needs at least two events");
      } else {
        add_event(parse_elem(), PointTime{static_cast<double>(item_index)});
      }
      skip_ws();
      if (peek() == ',') {
        get();
        continue;
      }
      expect('>');
      break;
    }
    skip_ws();
    if (peek() == '^') {
      get();
      skip_ws();
      wt.weight = parse_int();
      if (wt.weight < 1) throw error("trace weight must be >= 1");
    }
    return wt;
  }

  Elem parse_elem() {
    Elem elem;
    skip_ws();
    if (peek() == '{') {
      get();
      skip_ws();
      if (peek() == '}') throw error("empty activity set");
      elem.labels.push_back(parse_label());
      skip_ws();
      while (peek() == ',') {
        get();
        skip_ws();
        elem.labels.push_back(parse_label());
        skip_ws();
      }
      if (elem.labels.size() < 2) throw error("an activity set needs at least two labels");
      expect('}');
    } else {
      elem.labels.push_back(parse_label());
    }
    skip_ws();
    if (peek() == '?') {
      get();
      elem.indeterminate = true;
    }
    return elem;
  }

  std::string parse_label() {
    if (eof() || !(std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_'))
      throw error("expected an activity label");
    std::string label;
    while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_'))
      label += get();
    return label;
  }

  std::int64_t parse_int() {
    if (eof() || !std::isdigit(static_cast<unsigned char>(peek())))
      throw error("expected a trace weight");
    std::int64_t value = 0;
    while (!eof() && std::isdigit(static_cast<unsigned char>(peek())))
      value = value * 10 + (get() - '0');
    return value;
  }

  bool eof() const { return pos_ >= text_.size(); }
  char peek() const { return eof() ? '\0' : text_[pos_]; }

  char get() {
    const char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  void expect(char c) {
    if (eof() || peek() != c)
      throw error(std::string("expected '") + c + "'" +
                  (eof() ? " before end of input" : std::string(", found '") + peek() + "'"));
    get();
  }

  void skip_ws() {
    while (!eof() && std::isspace(static_cast<unsigned char>(peek()))) get();
  }

  parse_error error(const std::string& message) const { return {message, line_, col_}; }

  const std::string& text_;
  size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  int trace_count_ = 0;
};

}  // namespace

UncertainLog parse_shorthand(const std::string& text) { return ShorthandParser(text).parse(); }

namespace {

std::string render_elem(const UncertainEvent& e) {
  if (e.activity.has_probabilities() || e.indeterminacy.absence_probability)
    throw std::invalid_argument("shorthand cannot express probabilities (event " + e.id + ")");
  std::string out;
  if (e.activity.candidates.size() == 1) {
    out = e.activity.candidates.front().label;
  } else {
    out = "{";
    for (size_t i = 0; i < e.activity.candidates.size(); ++i) {
      if (i) out += ",";
      out += e.activity.candidates[i].label;
    }
    out += "}";
  }
  if (e.indeterminacy.indeterminate) out += "?";
  return out;
}

}  // namespace

std::string render_shorthand(const UncertainLog& log) {
  std::string out;
  for (size_t ti = 0; ti < log.traces.size(); ++ti) {
    if (ti) out += ";\n";
    const auto& wt = log.traces[ti];
    out += "<";
    bool first_item = true;
    for (size_t i = 0; i < wt.trace.events.size();) {
      const auto& e = wt.trace.events[i];
      if (!first_item) out += ",";
      first_item = false;
      if (std::holds_alternative<IntervalTime>(e.timestamp)) {
        // Consecutive events sharing one interval form an overlap group.
        size_t j = i + 1;
        while (j < wt.trace.events.size() && wt.trace.events[j].timestamp == e.timestamp) ++j;
        if (j - i < 2)
          throw std::invalid_argument("interval timestamp outside an overlap group (event " +
                                      e.id + ")");
        out += "[";
        for (size_t k = i; k < j; ++k) {
          if (k > i) out += ",";
          out += render_elem(wt.trace.events[k]);
        }
        out += "]";
        i = j;
      } else if (std::holds_alternative<PointTime>(e.timestamp)) {
        out += render_elem(e);
        ++i;
      } else {
        throw std::invalid_argument("shorthand cannot express gaussian timestamps (event " +
                                    e.id + ")");
      }
    }
    out += ">";
    if (wt.weight != 1) out += "^" + std::to_string(wt.weight);
  }
  out += "\n";
  return out;
}

// ---- JSON log ---------------------------------------------------------------

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json timestamp_to_json(const TimestampSpec& ts) {
  ordered_json j;
  if (const auto* p = std::get_if<PointTime>(&ts)) {
    j["type"] = "point";
    j["value"] = p->value;
  } else if (const auto* iv = std::get_if<IntervalTime>(&ts)) {
    j["type"] = "interval";
    j["lo"] = iv->lo;
    j["hi"] = iv->hi;
  } else {
    const auto& g = std::get<GaussianTime>(ts);
    j["type"] = "gaussian";
    j["mu"] = g.mu;
    j["sigma"] = g.sigma;
  }
  return j;
}

[[noreturn]] void json_fail(const std::string& path, const std::string& message) {
  throw parse_error(path + ": " + message);
}

const ordered_json& field(const ordered_json& j, const std::string& path, const char* key) {
  if (!j.is_object()) json_fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) json_fail(path, std::string("missing key '") + key + "'");
  return *it;
}

double number_at(const ordered_json& j, const std::string& path) {
  if (!j.is_number()) json_fail(path, "expected a number");
  return j.get<double>();
}

std::string string_at(const ordered_json& j, const std::string& path) {
  if (!j.is_string()) json_fail(path, "expected a string");
  return j.get<std::string>();
}

TimestampSpec timestamp_from_json(const ordered_json& j, const std::string& path) {
  const std::string type = string_at(field(j, path, "type"), path + ".type");
  if (type == "point") return PointTime{number_at(field(j, path, "value"), path + ".value")};
  if (type == "interval")
    return IntervalTime{number_at(field(j, path, "lo"), path + ".lo"),
                        number_at(field(j, path, "hi"), path + ".hi")};
  if (type == "gaussian")
    return GaussianTime{number_at(field(j, path, "mu"), path + ".mu"),
                        number_at(field(j, path, "sigma"), path + ".sigma")};
  json_fail(path + ".type", "expected 'point', 'interval' or 'gaussian'");
}

}  // namespace

std::string to_json(const UncertainLog& log) {
  ordered_json root;
  root["traces"] = ordered_json::array();
  for (const auto& wt : log.traces) {
    ordered_json jt;
    jt["case_id"] = wt.trace.case_id;
    jt["weight"] = wt.weight;
    jt["events"] = ordered_json::array();
    for (const auto& e : wt.trace.events) {
      ordered_json je;
      je["id"] = e.id;
      je["activities"] = ordered_json::array();
      for (const auto& c : e.activity.candidates) {
        ordered_json jc;
        jc["label"] = c.label;
        if (c.probability)
          jc["p"] = *c.probability;
        else
          jc["p"] = nullptr;
        je["activities"].push_back(std::move(jc));
      }
      je["timestamp"] = timestamp_to_json(e.timestamp);
      je["indeterminate"] = e.indeterminacy.indeterminate;
      if (e.indeterminacy.absence_probability)
        je["absence_p"] = *e.indeterminacy.absence_probability;
      else
        je["absence_p"] = nullptr;
      jt["events"].push_back(std::move(je));
    }
    root["traces"].push_back(std::move(jt));
  }
  return root.dump(2) + "\n";
}

UncertainLog from_json(const std::string& text) {
  ordered_json root;
  try {
    root = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw parse_error(std::string("invalid JSON: ") + e.what());
  }
  UncertainLog log;
  const auto& jtraces = field(root, "$", "traces");
  if (!jtraces.is_array()) json_fail("$.traces", "expected an array");
  for (size_t ti = 0; ti < jtraces.size(); ++ti) {
    const std::string tpath = "$.traces[" + std::to_string(ti) + "]";
    const auto& jt = jtraces[ti];
    WeightedTrace wt;
    wt.trace.case_id = string_at(field(jt, tpath, "case_id"), tpath + ".case_id");
    const auto& jw = field(jt, tpath, "weight");
    if (!jw.is_number_integer()) json_fail(tpath + ".weight", "expected an integer");
    wt.weight = jw.get<std::int64_t>();
    const auto& jevents = field(jt, tpath, "events");
    if (!jevents.is_array()) json_fail(tpath + ".events", "expected an array");
    for (size_t ei = 0; ei < jevents.size(); ++ei) {
      const std::string epath = tpath + ".events[" + std::to_string(ei) + "]";
      const auto& je = jevents[ei];
      UncertainEvent e;
      e.id = string_at(field(je, epath, "id"), epath + ".id");
      const auto& jacts = field(je, epath, "activities");
      if (!jacts.is_array() || jacts.empty())
        json_fail(epath + ".activities", "expected a non-empty array");
      for (size_t ai = 0; ai < jacts.size(); ++ai) {
        const std::string apath = epath + ".activities[" + std::to_string(ai) + "]";
        const auto& ja = jacts[ai];
        ActivityCandidate c;
        c.label = string_at(field(ja, apath, "label"), apath + ".label");
        const auto& jp = field(ja, apath, "p");
        if (!jp.is_null()) c.probability = number_at(jp, apath + ".p");
        e.activity.candidates.push_back(std::move(c));
      }
      e.timestamp = timestamp_from_json(field(je, epath, "timestamp"), epath + ".timestamp");
      const auto& ji = field(je, epath, "indeterminate");
      if (!ji.is_boolean()) json_fail(epath + ".indeterminate", "expected a boolean");
      e.indeterminacy.indeterminate = ji.get<bool>();
      const auto& jab = field(je, epath, "absence_p");
      if (!jab.is_null())
        e.indeterminacy.absence_probability = number_at(jab, epath + ".absence_p");
      wt.trace.events.push_back(std::move(e));
    }
    log.traces.push_back(std::move(wt));
  }
  return log;
}

// ---- Petri net JSON -----------------------------------------------------------

std::string net_to_json(const PetriNet& net) {
  ordered_json root;
  root["places"] = net.places;
  root["transitions"] = ordered_json::array();
  for (const auto& t : net.transitions) {
    ordered_json jt;
    jt["id"] = t.id;
    if (t.label)
      jt["label"] = *t.label;
    else
      jt["label"] = nullptr;
    root["transitions"].push_back(std::move(jt));
  }
  root["arcs"] = ordered_json::array();
  for (const auto& [from, to] : net.arcs) root["arcs"].push_back({from, to});
  root["initial"] = ordered_json::object();
  for (const auto& [p, n] : net.initial_marking) root["initial"][p] = n;
  root["final"] = ordered_json::object();
  for (const auto& [p, n] : net.final_marking) root["final"][p] = n;
  return root.dump(2) + "\n";
}

PetriNet net_from_json(const std::string& text) {
  ordered_json root;
  try {
    root = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw parse_error(std::string("invalid JSON: ") + e.what());
  }
  PetriNet net;
  const auto& jplaces = field(root, "$", "places");
  if (!jplaces.is_array()) json_fail("$.places", "expected an array");
  for (size_t i = 0; i < jplaces.size(); ++i)
    net.places.push_back(string_at(jplaces[i], "$.places[" + std::to_string(i) + "]"));
  const auto& jtrans = field(root, "$", "transitions");
  if (!jtrans.is_array()) json_fail("$.transitions", "expected an array");
  for (size_t i = 0; i < jtrans.size(); ++i) {
    const std::string path = "$.transitions[" + std::to_string(i) + "]";
    Transition t;
    t.id = string_at(field(jtrans[i], path, "id"), path + ".id");
    const auto& jl = field(jtrans[i], path, "label");
    if (!jl.is_null()) t.label = string_at(jl, path + ".label");
    net.transitions.push_back(std::move(t));
  }
  const auto& jarcs = field(root, "$", "arcs");
  if (!jarcs.is_array()) json_fail("$.arcs", "expected an array");
  for (size_t i = 0; i < jarcs.size(); ++i) {
    const std::string path = "$.arcs[" + std::to_string(i) + "]";
    if (!jarcs[i].is_array() || jarcs[i].size() != 2) json_fail(path, "expected a [from,to] pair");
    net.arcs.emplace_back(string_at(jarcs[i][0], path + "[0]"),
                          string_at(jarcs[i][1], path + "[1]"));
  }
  const auto read_marking = [&](const char* key) {
    Marking m;
    const auto& jm = field(root, "$", key);
    if (!jm.is_object()) json_fail(std::string("$.") + key, "expected an object");
    for (auto it = jm.begin(); it != jm.end(); ++it) {
      if (!it.value().is_number_integer())
        json_fail(std::string("$.") + key + "." + it.key(), "expected an integer");
      m[it.key()] = it.value().get<int>();
    }
    return m;
  };
  net.initial_marking = read_marking("initial");
  net.final_marking = read_marking("final");

  const auto issues = structural_issues(net);
  if (!issues.empty()) throw parse_error("invalid net: " + issues.front());
  return net;
}

// ---- DOT --------------------------------------------------------------------

namespace {

std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string export_dot_net(const PetriNet& net) {
  std::ostringstream out;
  out << "digraph petri_net {\n  rankdir=LR;\n";
  std::vector<std::string> lines;
  for (const auto& p : net.places) {
    std::string attrs = "shape=circle";
    auto it = net.initial_marking.find(p);
    attrs += ", label=" + dot_quote(it != net.initial_marking.end()
                                        ? std::to_string(it->second) : "");
    if (net.final_marking.count(p)) attrs += ", peripheries=2";
    lines.push_back("  " + dot_quote(p) + " [" + attrs + "];\n");
  }
  for (const auto& t : net.transitions) {
    std::string attrs = "shape=box";
    if (t.label)
      attrs += ", label=" + dot_quote(*t.label);
    else
      attrs += ", style=filled, fillcolor=black, label=\"\"";
    lines.push_back("  " + dot_quote(t.id) + " [" + attrs + "];\n");
  }
  std::sort(lines.begin(), lines.end());
  for (const auto& l : lines) out << l;
  lines.clear();
  for (const auto& [from, to] : net.arcs)
    lines.push_back("  " + dot_quote(from) + " -> " + dot_quote(to) + ";\n");
  std::sort(lines.begin(), lines.end());
  for (const auto& l : lines) out << l;
  out << "}\n";
  return out.str();
}

std::string export_dot_udfg(const Udfg& g) {
  std::ostringstream out;
  out << "digraph udfg {\n  rankdir=LR;\n";
  for (const auto& n : g.nodes) out << "  " << dot_quote(n) << ";\n";
  for (const auto& [pair, b] : g.edges)
    out << "  " << dot_quote(pair.first) << " -> " << dot_quote(pair.second) << " [label="
        << dot_quote("[" + std::to_string(b.min) + ", " + std::to_string(b.max) + "]") << "];\n";
  out << "}\n";
  return out.str();
}

}  // namespace upm
