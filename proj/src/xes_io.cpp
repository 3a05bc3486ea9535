#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include <cstdio>
#include <sstream>

#include "upm/errors.hpp"
#include "upm/log_io.hpp"

namespace upm {

namespace {

// Days since 1970-01-01 for a civil date (proleptic Gregorian).
long long days_from_civil(int y, int m, int d) {
  y -= m <= 2;
  const long long era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<long long>(doe) - 719468;
}

void civil_from_days(long long z, int& y, int& m, int& d) {
  z += 719468;
  const long long era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const long long yy = static_cast<long long>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
  m = static_cast<int>(mp + (mp < 10 ? 3 : -9));
  y = static_cast<int>(yy + (m <= 2));
}

// ISO-8601 date-time to seconds since epoch. Accepts a fractional part and
// 'Z' or a +hh:mm offset; no offset is read as UTC.
double parse_iso8601(const std::string& s) {
  int y, mo, d, h, mi, se;
  int consumed = 0;
  if (std::sscanf(s.c_str(), "%d-%d-%dT%d:%d:%d%n", &y, &mo, &d, &h, &mi, &se, &consumed) != 6)
    throw parse_error("invalid date-time: " + s);
  size_t pos = static_cast<size_t>(consumed);
  double fraction = 0.0;
  if (pos < s.size() && s[pos] == '.') {
    ++pos;
    double scale = 0.1;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      fraction += (s[pos] - '0') * scale;
      scale *= 0.1;
      ++pos;
    }
  }
  long long offset_seconds = 0;
  if (pos < s.size()) {
    if (s[pos] == 'Z') {
      ++pos;
    } else if (s[pos] == '+' || s[pos] == '-') {
      const int sign = s[pos] == '+' ? 1 : -1;
      int oh = 0, om = 0;
      if (std::sscanf(s.c_str() + pos + 1, "%2d:%2d", &oh, &om) < 1)
        throw parse_error("invalid timezone offset: " + s);
      offset_seconds = sign * (oh * 3600LL + om * 60LL);
      pos = s.size();
    }
  }
  const long long days = days_from_civil(y, mo, d);
  return static_cast<double>(days * 86400LL + h * 3600LL + mi * 60LL + se - offset_seconds) +
         fraction;
}

std::string format_iso8601(double seconds_since_epoch) {
  long long whole = static_cast<long long>(seconds_since_epoch);
  double frac = seconds_since_epoch - static_cast<double>(whole);
  if (frac < 0) {
    frac += 1.0;
    --whole;
  }
  long long days = whole / 86400;
  long long sod = whole % 86400;
  if (sod < 0) {
    sod += 86400;
    --days;
  }
  int y, m, d;
  civil_from_days(days, y, m, d);
  const int micros = static_cast<int>(frac * 1e6 + 0.5);
  char buf[48];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02d.%06dZ", y, m, d,
                static_cast<int>(sod / 3600), static_cast<int>(sod / 60 % 60),
                static_cast<int>(sod % 60), micros);
  return buf;
}

using boost::property_tree::ptree;

std::string attr_key(const ptree& node) { return node.get<std::string>("<xmlattr>.key", ""); }

std::string attr_value(const ptree& node) { return node.get<std::string>("<xmlattr>.value", ""); }

}  // namespace

UncertainLog import_xes(const std::string& xml_text) {
  ptree doc;
  try {
    std::istringstream in(xml_text);
    boost::property_tree::read_xml(in, doc);
  } catch (const boost::property_tree::xml_parser_error& e) {
    throw parse_error(std::string("invalid XML: ") + e.what());
  }
  const auto log_node = doc.get_child_optional("log");
  if (!log_node) throw parse_error("missing <log> root element");

  UncertainLog log;
  int trace_count = 0;
  for (const auto& [tag, tnode] : *log_node) {
    if (tag != "trace") continue;
    WeightedTrace wt;
    wt.trace.case_id = "t" + std::to_string(++trace_count);
    int event_count = 0;
    for (const auto& [etag, enode] : tnode) {
      if (etag == "string" && attr_key(enode) == "concept:name") {
        wt.trace.case_id = attr_value(enode);
      } else if (etag == "int" && attr_key(enode) == "uncertainty:weight") {
        wt.weight = std::stoll(attr_value(enode));
      } else if (etag == "event") {
        UncertainEvent e;
        ++event_count;
        std::optional<std::string> name;
        std::optional<double> time_point, time_lo, time_hi, time_mu, time_sigma;
        std::vector<ActivityCandidate> label_candidates;
        for (const auto& [atag, anode] : enode) {
          if (atag == "<xmlattr>") continue;
          const std::string key = attr_key(anode);
          if (key == "identity:id") {
            e.id = attr_value(anode);
          } else if (key == "concept:name") {
            name = attr_value(anode);
          } else if (key == "time:timestamp") {
            time_point = parse_iso8601(attr_value(anode));
          } else if (key == "uncertainty:label") {
            for (const auto& [ctag, cnode] : anode) {
              if (ctag == "<xmlattr>") continue;
              ActivityCandidate c;
              c.label = attr_key(cnode);
              if (ctag == "float") c.probability = std::stod(attr_value(cnode));
              label_candidates.push_back(std::move(c));
            }
          } else if (key == "uncertainty:time_lo") {
            time_lo = parse_iso8601(attr_value(anode));
          } else if (key == "uncertainty:time_hi") {
            time_hi = parse_iso8601(attr_value(anode));
          } else if (key == "uncertainty:time_mu") {
            time_mu = std::stod(attr_value(anode));
          } else if (key == "uncertainty:time_sigma") {
            time_sigma = std::stod(attr_value(anode));
          } else if (key == "uncertainty:indeterminate") {
            e.indeterminacy.indeterminate = attr_value(anode) == "true";
          } else if (key == "uncertainty:absence_p") {
            e.indeterminacy.indeterminate = true;
            e.indeterminacy.absence_probability = std::stod(attr_value(anode));
          }
        }
        if (!label_candidates.empty()) {
          e.activity.candidates = std::move(label_candidates);
        } else if (name) {
          e.activity = ActivitySpec::certain(*name);
        } else {
          throw parse_error("event " + std::to_string(event_count) + " of trace " +
                            wt.trace.case_id + " lacks concept:name");
        }
        if (e.id.empty()) e.id = "e" + std::to_string(event_count);
        if (time_lo && time_hi) {
          e.timestamp = IntervalTime{*time_lo, *time_hi};
        } else if (time_mu && time_sigma) {
          e.timestamp = GaussianTime{*time_mu, *time_sigma};
        } else if (time_point) {
          e.timestamp = PointTime{*time_point};
        } else {
          throw parse_error("event " + std::to_string(event_count) + " of trace " +
                            wt.trace.case_id + " lacks time:timestamp");
        }
        wt.trace.events.push_back(std::move(e));
      }
    }
    log.traces.push_back(std::move(wt));
  }
  return log;
}

namespace {

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

void emit_attr(std::ostringstream& out, const char* indent, const char* type,
               const std::string& key, const std::string& value) {
  out << indent << "<" << type << " key=\"" << xml_escape(key) << "\" value=\""
      << xml_escape(value) << "\"/>\n";
}

std::string float_text(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string export_xes(const UncertainLog& log) {
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<log xes.version=\"1.0\">\n";
  for (const auto& wt : log.traces) {
    out << "  <trace>\n";
    emit_attr(out, "    ", "string", "concept:name", wt.trace.case_id);
    if (wt.weight != 1)
      emit_attr(out, "    ", "int", "uncertainty:weight", std::to_string(wt.weight));
    for (const auto& e : wt.trace.events) {
      out << "    <event>\n";
      emit_attr(out, "      ", "string", "identity:id", e.id);
      emit_attr(out, "      ", "string", "concept:name", e.activity.candidates.front().label);
      if (e.activity.candidates.size() > 1 || e.activity.has_probabilities()) {
        out << "      <string key=\"uncertainty:label\" value=\"\">\n";
        for (const auto& c : e.activity.candidates) {
          if (c.probability)
            emit_attr(out, "        ", "float", c.label, float_text(*c.probability));
          else
            emit_attr(out, "        ", "string", c.label, "");
        }
        out << "      </string>\n";
      }
      if (const auto* p = std::get_if<PointTime>(&e.timestamp)) {
        emit_attr(out, "      ", "date", "time:timestamp", format_iso8601(p->value));
      } else if (const auto* iv = std::get_if<IntervalTime>(&e.timestamp)) {
        emit_attr(out, "      ", "date", "time:timestamp", format_iso8601(iv->lo));
        emit_attr(out, "      ", "date", "uncertainty:time_lo", format_iso8601(iv->lo));
        emit_attr(out, "      ", "date", "uncertainty:time_hi", format_iso8601(iv->hi));
      } else {
        const auto& g = std::get<GaussianTime>(e.timestamp);
        emit_attr(out, "      ", "date", "time:timestamp", format_iso8601(g.mu));
        emit_attr(out, "      ", "float", "uncertainty:time_mu", float_text(g.mu));
        emit_attr(out, "      ", "float", "uncertainty:time_sigma", float_text(g.sigma));
      }
      if (e.indeterminacy.indeterminate)
        emit_attr(out, "      ", "boolean", "uncertainty:indeterminate", "true");
      if (e.indeterminacy.absence_probability)
        emit_attr(out, "      ", "float", "uncertainty:absence_p",
                  float_text(*e.indeterminacy.absence_probability));
      out << "    </event>\n";
    }
    out << "  </trace>\n";
  }
  out << "</log>\n";
  return out.str();
}

}  // namespace upm
