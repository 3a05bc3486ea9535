#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "upm/errors.hpp"
#include "upm/realizations.hpp"

using namespace upm;

namespace {

// Standard normal CDF, for the frozen expected values below.
double phi(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

}  // namespace

TEST_CASE("the running example has exactly 10 realizations") {
  const auto trace = fixtures::running_example_trace();
  const auto realizations = enumerate_realizations(trace, 10000);
  CHECK(realizations.size() == 10);

  const auto sequences = realization_sequences(trace, 10000);
  CHECK(sequences.size() == 10);
  CHECK(sequences.count({"NightSweats", "Splenomeg", "PrTP", "Adm"}));
  CHECK(sequences.count({"SecTP", "Splenomeg", "Adm"}));
  CHECK(sequences == oracles::realization_sequences(trace));
}

TEST_CASE("enumerate on simple traces") {
  SUBCASE("a certain trace has one realization") {
    UncertainTrace t{"c",
                     {{"e1", ActivitySpec::certain("a"), PointTime{1}, {}},
                      {"e2", ActivitySpec::certain("b"), PointTime{2}, {}}}};
    const auto rs = enumerate_realizations(t, 10);
    REQUIRE(rs.size() == 1);
    CHECK(rs.begin()->activity_sequence() == std::vector<std::string>{"a", "b"});
    CHECK(rs.begin()->excluded.empty());
  }
  SUBCASE("two labels plus indeterminacy give three realizations") {
    UncertainTrace t{"c", {{"e1", ActivitySpec::choice({"a", "b"}), PointTime{1},
                            Indeterminacy::maybe()}}};
    const auto seqs = realization_sequences(t, 10);
    CHECK(seqs == std::set<std::vector<std::string>>{{}, {"a"}, {"b"}});
  }
  SUBCASE("steps are linear extensions: every trace event is placed or excluded") {
    const auto rs = enumerate_realizations(fixtures::running_example_trace(), 10000);
    for (const auto& r : rs) {
      CHECK(r.steps.size() + r.excluded.size() == 4);
      for (const auto& id : r.excluded) CHECK(id == "e1");
    }
  }
}

TEST_CASE("a binary label choice doubles the count on a strict chain") {
  UncertainTrace t{"c",
                   {{"e1", ActivitySpec::certain("a"), PointTime{1}, {}},
                    {"e2", ActivitySpec::certain("b"), PointTime{2}, {}},
                    {"e3", ActivitySpec::certain("c"), PointTime{3}, {}}}};
  const auto base = enumerate_realizations(t, 100).size();
  t.events[1].activity = ActivitySpec::choice({"b", "x"});
  CHECK(enumerate_realizations(t, 100).size() == 2 * base);
}

TEST_CASE("enumerate reports cap overruns") {
  UncertainTrace t{"c", {}};
  for (int i = 0; i < 6; ++i)
    t.events.push_back({"e" + std::to_string(i), ActivitySpec::choice({"a", "b"}),
                        PointTime{static_cast<double>(i)}, Indeterminacy::maybe()});
  try {
    enumerate_realizations(t, 50);
    FAIL("expected cap_exceeded");
  } catch (const cap_exceeded& e) {
    CHECK(e.cap_name() == "realizations");
    CHECK(e.cap() == 50);
    CHECK(e.partial_count() == 51);
  }
}

TEST_CASE("ordering probability") {
  const auto trace = fixtures::weak_example_trace();  // e4@5, e5@8, e6~N(7,1)

  SUBCASE("strictly ordered points short-circuit to 1.0") {
    CHECK(ordering_probability(trace, {"e4", "e5"}, 1, 1) == 1.0);
  }
  SUBCASE("gaussian vs point matches the normal cdf") {
    const double p = ordering_probability(trace, {"e6", "e4"}, 100000, 7);
    CHECK(std::fabs(p - phi((5.0 - 7.0) / 1.0)) < 0.005);
    CHECK(std::fabs(p - 0.02275) < 0.005);
  }
  SUBCASE("identical intervals split evenly") {
    UncertainTrace t{"c",
                     {{"e1", ActivitySpec::certain("a"), IntervalTime{0, 1}, {}},
                      {"e2", ActivitySpec::certain("b"), IntervalTime{0, 1}, {}}}};
    const double p12 = ordering_probability(t, {"e1", "e2"}, 100000, 3);
    const double p21 = ordering_probability(t, {"e2", "e1"}, 100000, 3);
    CHECK(std::fabs(p12 - 0.5) < 0.01);
    CHECK(std::fabs(p21 - 0.5) < 0.01);
  }
  SUBCASE("results are deterministic for a fixed seed and chunk-stable") {
    const double a = ordering_probability(trace, {"e6", "e5"}, 5000, 42);
    const double b = ordering_probability(trace, {"e6", "e5"}, 5000, 42);
    CHECK(a == b);
    // Sample substreams are indexed, so a prefix of the samples is the same
    // computation as a shorter run.
    const double full = ordering_probability(trace, {"e6", "e5"}, 2000, 42);
    const double half1 = ordering_probability(trace, {"e6", "e5"}, 1000, 42);
    CHECK(std::fabs(full - half1) < 0.1);  // same stream family, same regime
  }
  SUBCASE("unknown ids are rejected") {
    CHECK_THROWS_AS(ordering_probability(trace, {"zzz"}, 10, 1), std::invalid_argument);
  }
}

TEST_CASE("realization probability on the weak example") {
  const auto trace = fixtures::weak_example_trace();

  SUBCASE("PrTP then Splenomeg with e4 absent") {
    Realization r;
    r.excluded = {"e4"};
    r.steps = {{"e5", "PrTP"}, {"e6", "Splenomeg"}};
    const double p = realization_probability(trace, r, 100000, 17);
    // 0.25 * 0.9 * (1 - phi(1)) per the product rule
    const double expected = 0.25 * 0.9 * (1.0 - phi(1.0));
    CHECK(std::fabs(p - expected) < 0.002);
    CHECK(std::fabs(p - 0.0357) < 0.002);
  }
  SUBCASE("a certain trace has probability one") {
    UncertainTrace t{"c", {{"e1", ActivitySpec::certain("a"), PointTime{1}, {}}}};
    Realization r;
    r.steps = {{"e1", "a"}};
    CHECK(realization_probability(t, r, 10, 1) == 1.0);
  }
  SUBCASE("probabilities over all realizations sum to one") {
    double total = 0.0;
    for (const auto& r : enumerate_realizations(trace, 1000))
      total += realization_probability(trace, r, 100000, 23);
    CHECK(std::fabs(total - 1.0) < 0.01);
  }
}

TEST_CASE("strong uncertainty requires the defaults flag") {
  UncertainTrace t{"c", {{"e1", ActivitySpec::choice({"a", "b"}), PointTime{1}, {}}}};
  Realization r;
  r.steps = {{"e1", "a"}};
  CHECK_THROWS_AS(realization_probability(t, r, 10, 1), std::invalid_argument);
  CHECK(realization_probability(t, r, 10, 1, true) == doctest::Approx(0.5));

  UncertainTrace ti{"c", {{"e1", ActivitySpec::certain("a"), PointTime{1},
                           Indeterminacy::maybe()}}};
  Realization absent;
  absent.excluded = {"e1"};
  CHECK_THROWS_AS(realization_probability(ti, absent, 10, 1), std::invalid_argument);
  CHECK(realization_probability(ti, absent, 10, 1, true) == doctest::Approx(0.5));

  UncertainTrace tiv{"c", {{"e1", ActivitySpec::weighted({{"a", 1.0}}), IntervalTime{0, 1}, {}}}};
  Realization only;
  only.steps = {{"e1", "a"}};
  CHECK_THROWS_AS(realization_probability(tiv, only, 10, 1), std::invalid_argument);
  CHECK(realization_probability(tiv, only, 10, 1, true) == doctest::Approx(1.0));
}

TEST_CASE("probability sums hold for random weak traces") {
  DetRng rng(5150);
  oracles::TraceGenOptions opt;
  opt.max_events = 4;
  opt.weak = true;
  opt.p_gaussian = 0.3;
  opt.p_interval = 0.0;
  for (int round = 0; round < 10; ++round) {
    const auto trace = oracles::random_trace(rng, opt, "c");
    double total = 0.0;
    for (const auto& r : enumerate_realizations(trace, 100000))
      total += realization_probability(trace, r, 20000, 1000 + round);
    CHECK_MESSAGE(std::fabs(total - 1.0) < 0.05, "round " << round << " total " << total);
  }
}
