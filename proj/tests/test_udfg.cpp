#include <doctest.h>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "upm/errors.hpp"
#include "upm/log_io.hpp"
#include "upm/udfg.hpp"

using namespace upm;

namespace {

FrequencyBounds edge(const Udfg& g, const std::string& from, const std::string& to) {
  auto it = g.edges.find({from, to});
  REQUIRE_MESSAGE(it != g.edges.end(), "missing edge " << from << " -> " << to);
  return it->second;
}

}  // namespace

TEST_CASE("trace df bounds") {
  SUBCASE("the mixed trace from the sample log") {
    const auto log = parse_shorthand("<a,{b,c},[e,f],g,i>");
    const auto bounds = trace_df_bounds(log.traces[0].trace);
    CHECK(bounds.at({"a", "b"}) == FrequencyBounds{0, 1});
    CHECK(bounds.at({"e", "f"}) == FrequencyBounds{0, 1});
    CHECK(bounds.at({"f", "e"}) == FrequencyBounds{0, 1});
    CHECK(bounds.at({"g", "i"}) == FrequencyBounds{1, 1});
  }
  SUBCASE("a certain trace has tight bounds") {
    const auto log = parse_shorthand("<a,b>");
    const auto bounds = trace_df_bounds(log.traces[0].trace);
    CHECK(bounds.at({"a", "b"}) == FrequencyBounds{1, 1});
    CHECK(bounds.at({kStartNode, "a"}) == FrequencyBounds{1, 1});
    CHECK(bounds.at({"b", kEndNode}) == FrequencyBounds{1, 1});
  }
  SUBCASE("indeterminacy toggles adjacency") {
    const auto log = parse_shorthand("<a,b?>");
    const auto bounds = trace_df_bounds(log.traces[0].trace);
    CHECK(bounds.at({"a", "b"}) == FrequencyBounds{0, 1});
    CHECK(bounds.at({"a", kEndNode}) == FrequencyBounds{0, 1});
  }
}

TEST_CASE("udfg of the sample log reproduces the expected bounds") {
  const Udfg g = compute_udfg(fixtures::sample_uncertain_log());

  CHECK(g.nodes == std::set<std::string>{"END", "START", "a", "b", "c", "d", "e", "f", "g", "h",
                                         "i", "j"});

  CHECK(edge(g, "a", "b") == FrequencyBounds{80, 100});
  CHECK(edge(g, "a", "c") == FrequencyBounds{0, 20});
  CHECK(edge(g, "a", "d") == FrequencyBounds{0, 5});
  CHECK(edge(g, "b", "e") == FrequencyBounds{80, 100});
  CHECK(edge(g, "b", "f") == FrequencyBounds{0, 20});
  CHECK(edge(g, "c", "e") == FrequencyBounds{0, 20});
  CHECK(edge(g, "c", "f") == FrequencyBounds{0, 20});
  CHECK(edge(g, "d", "e") == FrequencyBounds{0, 5});
  CHECK(edge(g, "d", "f") == FrequencyBounds{0, 5});
  CHECK(edge(g, "e", "f") == FrequencyBounds{80, 100});
  CHECK(edge(g, "f", "e") == FrequencyBounds{0, 20});
  CHECK(edge(g, "e", "g") == FrequencyBounds{0, 20});
  CHECK(edge(g, "f", "g") == FrequencyBounds{80, 100});
  CHECK(edge(g, "g", "h") == FrequencyBounds{80, 80});
  CHECK(edge(g, "g", "i") == FrequencyBounds{15, 15});
  CHECK(edge(g, "g", "j") == FrequencyBounds{0, 5});
  CHECK(edge(g, "START", "a") == FrequencyBounds{100, 100});
  CHECK(edge(g, "h", "END") == FrequencyBounds{80, 80});
  CHECK(edge(g, "i", "END") == FrequencyBounds{15, 15});
  CHECK(edge(g, "j", "END") == FrequencyBounds{0, 5});
  // The indeterminate last event of the third trace also allows traces
  // ending at g.
  CHECK(edge(g, "g", "END") == FrequencyBounds{0, 5});
  CHECK(g.edges.size() == 21);
}

TEST_CASE("udfg edge cases") {
  SUBCASE("empty log") {
    const Udfg g = compute_udfg(UncertainLog{});
    CHECK(g.nodes == std::set<std::string>{"END", "START"});
    CHECK(g.edges.empty());
  }
  SUBCASE("certain logs collapse to a classic dfg") {
    const Udfg g = compute_udfg(parse_shorthand("<a,b,c>^3; <a,c>"));
    for (const auto& [pair, b] : g.edges) CHECK(b.min == b.max);
    CHECK(edge(g, "a", "b") == FrequencyBounds{3, 3});
    CHECK(edge(g, "a", "c") == FrequencyBounds{1, 1});
  }
  SUBCASE("weights scale linearly") {
    const Udfg once = compute_udfg(parse_shorthand("<a,{b,c}>"));
    const Udfg twice = compute_udfg(parse_shorthand("<a,{b,c}>^2"));
    for (const auto& [pair, b] : once.edges) {
      CHECK(twice.edges.at(pair).min == 2 * b.min);
      CHECK(twice.edges.at(pair).max == 2 * b.max);
    }
  }
  SUBCASE("reserved node names are rejected") {
    UncertainLog log;
    log.traces.push_back(
        {UncertainTrace{"c", {{"e1", ActivitySpec::certain("START"), PointTime{1}, {}}}}, 1});
    CHECK_THROWS_AS(compute_udfg(log), std::invalid_argument);
  }
  SUBCASE("cap overruns name the trace") {
    UncertainTrace big{"c9", {}};
    for (int i = 0; i < 9; ++i)
      big.events.push_back({"e" + std::to_string(i), ActivitySpec::choice({"a", "b"}),
                            IntervalTime{0, 100}, {}});
    UncertainLog log;
    log.traces.push_back({big, 1});
    try {
      compute_udfg(log, 1000);
      FAIL("expected cap_exceeded");
    } catch (const cap_exceeded& e) {
      CHECK(e.cap_name().find("c9") != std::string::npos);
    }
  }
}

TEST_CASE("min never exceeds max on random logs") {
  DetRng rng(8080);
  oracles::TraceGenOptions opt;
  opt.max_events = 4;
  for (int round = 0; round < 40; ++round) {
    const auto log = oracles::random_log(rng, opt, 3);
    for (const auto& [pair, b] : compute_udfg(log).edges) {
      CHECK(b.min <= b.max);
      CHECK(b.min >= 0);
    }
  }
}

TEST_CASE("filtering the sample udfg") {
  const Udfg g = compute_udfg(fixtures::sample_uncertain_log());

  SUBCASE("min mode, threshold 15") {
    const Dfg d = filter_udfg(g, FilterMode::Min, 15);
    CHECK(d.nodes ==
          std::set<std::string>{"END", "START", "a", "b", "e", "f", "g", "h", "i"});
    CHECK(d.edges.count({"a", "b"}));
    CHECK(d.edges.at({"a", "b"}) == 100);  // retained edges carry the max bound
    CHECK_FALSE(d.edges.count({"f", "e"}));
    CHECK_FALSE(d.edges.count({"g", "END"}));
  }
  SUBCASE("max mode, threshold 15 adds c and the f->e edge") {
    const Dfg d = filter_udfg(g, FilterMode::Max, 15);
    CHECK(d.nodes ==
          std::set<std::string>{"END", "START", "a", "b", "c", "e", "f", "g", "h", "i"});
    CHECK(d.edges.count({"f", "e"}));
  }
  SUBCASE("max mode, threshold 1 keeps everything") {
    const Dfg d = filter_udfg(g, FilterMode::Max, 1);
    CHECK(d.nodes.size() == 12);
    CHECK(d.edges.count({"g", "END"}));
    CHECK(d.edges.count({"a", "d"}));
  }
  SUBCASE("start and end survive even when everything is filtered away") {
    const Dfg d = filter_udfg(g, FilterMode::Min, 1000000);
    CHECK(d.nodes == std::set<std::string>{"END", "START"});
    CHECK(d.edges.empty());
  }
}
