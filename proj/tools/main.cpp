// upm: analyze uncertain event logs from the command line.
//
// Exit codes: 0 success, 1 usage or I/O error, 2 validation failure,
// 3 enumeration cap exceeded. Results go to stdout or the named output
// files; diagnostics go to stderr.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "upm/alignment.hpp"
#include "upm/behavior_net.hpp"
#include "upm/errors.hpp"
#include "upm/event_model.hpp"
#include "upm/inductive_miner.hpp"
#include "upm/injection.hpp"
#include "upm/log_io.hpp"
#include "upm/realizations.hpp"
#include "upm/rng.hpp"
#include "upm/udfg.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;
constexpr int kExitCap = 3;

struct Report {
  std::string command;
  nlohmann::ordered_json inputs = nlohmann::ordered_json::object();
  nlohmann::ordered_json results = nlohmann::ordered_json::object();
  std::optional<std::uint64_t> seed;
  std::chrono::steady_clock::time_point started = std::chrono::steady_clock::now();

  void write(const std::string& path) const {
    nlohmann::ordered_json j;
    j["command"] = command;
    j["inputs"] = inputs;
    j["results"] = results;
    j["elapsed_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - started)
                          .count();
    if (seed)
      j["seed"] = *seed;
    else
      j["seed"] = nullptr;
    std::ofstream out(path);
    out << j.dump(2) << "\n";
  }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << content;
}

std::string digest_hex(const std::string& content) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(upm::fnv1a64(content)));
  return buf;
}

upm::UncertainLog load_log(const std::string& path, const std::string& format, Report& report) {
  const std::string content = read_file(path);
  report.inputs[path] = digest_hex(content);
  std::string fmt = format;
  if (fmt == "auto") {
    if (path.size() > 5 && path.substr(path.size() - 5) == ".json")
      fmt = "json";
    else if (path.size() > 4 && path.substr(path.size() - 4) == ".xes")
      fmt = "xes";
    else
      fmt = "shorthand";
  }
  if (fmt == "json") return upm::from_json(content);
  if (fmt == "xes") return upm::import_xes(content);
  return upm::parse_shorthand(content);
}

// Returns false (and reports) when the log violates the data-model invariants.
bool check_valid(const upm::UncertainLog& log) {
  const auto violations = upm::validate(log);
  for (const auto& v : violations)
    std::cerr << "violation: trace=" << v.case_id << " event=" << v.event_id
              << " rule=" << v.rule << " (" << v.detail << ")\n";
  return violations.empty();
}

const upm::UncertainTrace& find_trace(const upm::UncertainLog& log, const std::string& case_id) {
  for (const auto& wt : log.traces)
    if (wt.trace.case_id == case_id) return wt.trace;
  throw std::runtime_error("no trace with case id '" + case_id + "'");
}

std::string sequence_text(const std::vector<std::string>& seq) {
  std::string out = "<";
  for (size_t i = 0; i < seq.size(); ++i) {
    if (i) out += ",";
    out += seq[i];
  }
  return out + ">";
}

std::string probability_text(double p) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", p);
  return buf;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"process mining over uncertain event data"};
  app.require_subcommand(1);

  std::string report_path;
  app.add_option("--report", report_path, "write a JSON run report to this file");

  std::string in_path, format = "auto", out_path, dot_path, case_id, model_path, config_path;
  std::string mode = "min";
  std::int64_t cap = 10000, threshold = 0, samples = 10000;
  std::uint64_t seed = 42;
  bool probs = false, defaults = false, tree_flag = false;

  CLI::App* parse_cmd = app.add_subcommand("parse", "validate and normalize a log");
  parse_cmd->add_option("in", in_path)->required();
  parse_cmd->add_option("--format", format)
      ->check(CLI::IsMember({"auto", "shorthand", "json", "xes"}));
  parse_cmd->add_option("--out", out_path, "write normalized JSON here instead of stdout");

  CLI::App* stats_cmd = app.add_subcommand("stats", "trace, event and realization counts");
  stats_cmd->add_option("in", in_path)->required();
  stats_cmd->add_option("--cap", cap);

  CLI::App* bnet_cmd = app.add_subcommand("bnet", "behavior net of one trace as DOT");
  bnet_cmd->add_option("in", in_path)->required();
  bnet_cmd->add_option("--trace", case_id)->required();
  bnet_cmd->add_option("--dot", dot_path)->required();

  CLI::App* realize_cmd = app.add_subcommand("realize", "list the realizations of one trace");
  realize_cmd->add_option("in", in_path)->required();
  realize_cmd->add_option("--trace", case_id)->required();
  realize_cmd->add_option("--cap", cap);
  realize_cmd->add_flag("--probs", probs, "estimate realization probabilities");
  realize_cmd->add_option("--samples", samples);
  realize_cmd->add_option("--seed", seed);
  realize_cmd->add_flag("--defaults", defaults, "assume uniform defaults for strong uncertainty");

  CLI::App* align_cmd = app.add_subcommand("align", "conformance bounds against a model");
  align_cmd->add_option("log", in_path)->required();
  align_cmd->add_option("--model", model_path)->required();
  align_cmd->add_option("--cap", cap);

  CLI::App* udfg_cmd = app.add_subcommand("udfg", "uncertain directly-follows graph as DOT");
  udfg_cmd->add_option("in", in_path)->required();
  udfg_cmd->add_option("--dot", dot_path)->required();
  udfg_cmd->add_option("--cap", cap);

  CLI::App* discover_cmd = app.add_subcommand("discover", "inductive discovery over the UDFG");
  discover_cmd->add_option("in", in_path)->required();
  discover_cmd->add_option("--mode", mode)->check(CLI::IsMember({"min", "max"}))->required();
  discover_cmd->add_option("--threshold", threshold)->required();
  discover_cmd->add_flag("--tree", tree_flag, "print only the process tree");
  discover_cmd->add_option("--dot", dot_path, "write the discovered net as DOT");
  discover_cmd->add_option("--cap", cap);

  CLI::App* inject_cmd = app.add_subcommand("inject", "simulate uncertainty on a certain log");
  inject_cmd->add_option("in", in_path)->required();
  inject_cmd->add_option("--config", config_path)->required();
  inject_cmd->add_option("--out", out_path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitUsage;
  }

  Report report;
  for (int i = 1; i < argc; ++i) {
    // The report destination is not an analysis input; keep the echo stable
    // across runs that only differ in where the report lands.
    if (std::string(argv[i]) == "--report") {
      ++i;
      continue;
    }
    if (!report.command.empty()) report.command += " ";
    report.command += argv[i];
  }

  int exit_code = kExitOk;
  try {
    if (*parse_cmd) {
      const auto log = load_log(in_path, format, report);
      if (!check_valid(log)) return kExitValidation;
      const std::string json = upm::to_json(log);
      if (out_path.empty())
        std::cout << json;
      else
        write_file(out_path, json);
      report.results["traces"] = log.traces.size();
      if (!out_path.empty()) report.results["out"] = out_path;
    } else if (*stats_cmd) {
      const auto log = load_log(in_path, "auto", report);
      if (!check_valid(log)) return kExitValidation;
      size_t events = 0;
      for (const auto& wt : log.traces) events += wt.trace.events.size();
      std::cout << "traces=" << log.traces.size() << " events=" << events << "\n";
      nlohmann::ordered_json per_trace = nlohmann::ordered_json::object();
      for (const auto& wt : log.traces) {
        std::cout << wt.trace.case_id << " weight=" << wt.weight
                  << " events=" << wt.trace.events.size() << " realizations=";
        try {
          const auto n = upm::enumerate_realizations(wt.trace, cap).size();
          std::cout << n << "\n";
          per_trace[wt.trace.case_id] = n;
        } catch (const upm::cap_exceeded&) {
          std::cout << ">" << cap << "\n";
          per_trace[wt.trace.case_id] = nullptr;
          exit_code = kExitCap;
        }
      }
      report.results["realizations"] = per_trace;
    } else if (*bnet_cmd) {
      const auto log = load_log(in_path, "auto", report);
      if (!check_valid(log)) return kExitValidation;
      const auto net = upm::build_behavior_net(find_trace(log, case_id));
      write_file(dot_path, upm::export_dot_net(net));
      std::cout << "behavior net of " << case_id << ": " << net.places.size() << " places, "
                << net.transitions.size() << " transitions, " << net.arcs.size() << " arcs -> "
                << dot_path << "\n";
      report.results["dot"] = dot_path;
      report.results["places"] = net.places.size();
      report.results["transitions"] = net.transitions.size();
    } else if (*realize_cmd) {
      const auto log = load_log(in_path, "auto", report);
      if (!check_valid(log)) return kExitValidation;
      const auto& trace = find_trace(log, case_id);
      const auto realizations = upm::enumerate_realizations(trace, cap);
      report.seed = seed;
      for (const auto& r : realizations) {
        std::cout << sequence_text(r.activity_sequence());
        if (!r.excluded.empty()) {
          std::cout << " excluded=";
          bool first = true;
          for (const auto& id : r.excluded) {
            if (!first) std::cout << ",";
            std::cout << id;
            first = false;
          }
        }
        if (probs)
          std::cout << " p="
                    << probability_text(
                           upm::realization_probability(trace, r, samples, seed, defaults));
        std::cout << "\n";
      }
      report.results["count"] = realizations.size();
    } else if (*align_cmd) {
      const auto log = load_log(in_path, "auto", report);
      if (!check_valid(log)) return kExitValidation;
      const std::string model_text = read_file(model_path);
      report.inputs[model_path] = digest_hex(model_text);
      const auto model = upm::net_from_json(model_text);
      nlohmann::ordered_json rows = nlohmann::ordered_json::object();
      for (const auto& wt : log.traces) {
        const auto bounds = upm::conformance_bounds(wt.trace, model, cap);
        std::cout << wt.trace.case_id << " lower=" << bounds.lower << " upper=";
        if (bounds.upper) {
          std::cout << *bounds.upper << "\n";
        } else {
          std::cout << "?\n";
          std::cerr << wt.trace.case_id << ": " << *bounds.cap_note << "\n";
          exit_code = kExitCap;
        }
        std::cout << "lower witness:\n" << upm::render_alignment(bounds.lower_witness);
        if (bounds.upper_witness)
          std::cout << "upper witness:\n" << upm::render_alignment(*bounds.upper_witness);
        nlohmann::ordered_json row;
        row["lower"] = bounds.lower;
        if (bounds.upper)
          row["upper"] = *bounds.upper;
        else
          row["upper"] = nullptr;
        rows[wt.trace.case_id] = std::move(row);
      }
      report.results["bounds"] = rows;
    } else if (*udfg_cmd) {
      const auto log = load_log(in_path, "auto", report);
      if (!check_valid(log)) return kExitValidation;
      const auto graph = upm::compute_udfg(log, cap);
      write_file(dot_path, upm::export_dot_udfg(graph));
      std::cout << "udfg: " << graph.nodes.size() << " nodes, " << graph.edges.size()
                << " edges -> " << dot_path << "\n";
      report.results["nodes"] = graph.nodes.size();
      report.results["edges"] = graph.edges.size();
      report.results["dot"] = dot_path;
    } else if (*discover_cmd) {
      const auto log = load_log(in_path, "auto", report);
      if (!check_valid(log)) return kExitValidation;
      const auto graph = upm::compute_udfg(log, cap);
      const auto dfg = upm::filter_udfg(
          graph, mode == "min" ? upm::FilterMode::Min : upm::FilterMode::Max, threshold);
      const auto tree = upm::im_discover(dfg);
      const std::string text = upm::to_text(tree);
      if (tree_flag)
        std::cout << text << "\n";
      else
        std::cout << "tree=" << text << "\n";
      if (!dot_path.empty()) {
        write_file(dot_path, upm::export_dot_net(upm::tree_to_net(tree)));
        if (!tree_flag) std::cout << "net -> " << dot_path << "\n";
        report.results["dot"] = dot_path;
      }
      report.results["tree"] = text;
    } else if (*inject_cmd) {
      const auto log = load_log(in_path, "auto", report);
      if (!check_valid(log)) return kExitValidation;
      const std::string config_text = read_file(config_path);
      report.inputs[config_path] = digest_hex(config_text);
      const auto config = upm::injection_config_from_json(config_text);
      report.seed = config.seed;
      const auto injected = upm::inject(log, config);
      write_file(out_path, upm::to_json(injected));
      std::cout << "injected " << injected.traces.size() << " traces -> " << out_path << "\n";
      report.results["out"] = out_path;
    }
  } catch (const upm::cap_exceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCap;
  } catch (const upm::parse_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  if (!report_path.empty()) report.write(report_path);
  return exit_code;
}
