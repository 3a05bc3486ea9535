#include <doctest.h>

#include <algorithm>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "upm/alignment.hpp"
#include "upm/behavior_net.hpp"
#include "upm/errors.hpp"
#include "upm/process_tree.hpp"
#include "upm/realizations.hpp"

using namespace upm;

namespace {

int count_kind(const Alignment& a, MoveKind kind) {
  int n = 0;
  for (const auto& m : a.moves) n += m.kind == kind;
  return n;
}

// Replays both projections to confirm the alignment is structurally sound
// against the pair of nets it aligns.
void check_valid(const Alignment& a, const PetriNet& log_net, const PetriNet& model) {
  Marking lm = log_net.initial_marking;
  Marking mm = model.initial_marking;
  int cost = 0;
  for (const auto& move : a.moves) {
    cost += move.cost();
    switch (move.kind) {
      case MoveKind::Sync:
        REQUIRE(log_net.find_transition(move.log_transition_id));
        CHECK(*log_net.find_transition(move.log_transition_id)->label == move.label);
        REQUIRE(model.find_transition(move.model_transition_id));
        CHECK(*model.find_transition(move.model_transition_id)->label == move.label);
        lm = fire(log_net, lm, move.log_transition_id);
        mm = fire(model, mm, move.model_transition_id);
        break;
      case MoveKind::LogMove:
      case MoveKind::SilentLogMove:
        lm = fire(log_net, lm, move.log_transition_id);
        break;
      case MoveKind::ModelMove:
      case MoveKind::SilentModelMove:
        mm = fire(model, mm, move.model_transition_id);
        break;
    }
  }
  CHECK(lm == log_net.final_marking);
  CHECK(mm == model.final_marking);
  CHECK(cost == a.cost);
  CHECK(a.cost == count_kind(a, MoveKind::LogMove) + count_kind(a, MoveKind::ModelMove));
}

}  // namespace

TEST_CASE("trace nets") {
  const PetriNet two = trace_net({"a", "b"});
  CHECK(two.places.size() == 3);
  CHECK(two.transitions.size() == 2);
  CHECK(bounded_language(two, 2, 10) == std::set<std::vector<std::string>>{{"a", "b"}});

  const PetriNet empty = trace_net({});
  CHECK(empty.places.size() == 1);
  CHECK(empty.initial_marking == empty.final_marking);

  const PetriNet four = trace_net({"NightSweats", "Splenomeg", "PrTP", "Adm"});
  CHECK(four.places.size() == 5);
  CHECK(four.transitions.size() == 4);
}

TEST_CASE("optimal alignments against the healthcare model") {
  const PetriNet model = fixtures::healthcare_model();

  SUBCASE("the conforming sequence costs 0") {
    const PetriNet log_net = trace_net({"NightSweats", "Splenomeg", "PrTP", "Adm"});
    const Alignment a = optimal_alignment(log_net, model);
    CHECK(a.cost == 0);
    CHECK(a.log_projection() ==
          std::vector<std::string>{"NightSweats", "Splenomeg", "PrTP", "Adm"});
    check_valid(a, log_net, model);
  }
  SUBCASE("the worst realization costs 3, split 2 model / 1 log") {
    const PetriNet log_net = trace_net({"SecTP", "Splenomeg", "Adm"});
    const Alignment a = optimal_alignment(log_net, model);
    CHECK(a.cost == 3);
    CHECK(count_kind(a, MoveKind::ModelMove) == 2);
    CHECK(count_kind(a, MoveKind::LogMove) == 1);
    check_valid(a, log_net, model);
  }
  SUBCASE("the empty trace pays one model move per visible transition") {
    const PetriNet log_net = trace_net({});
    const Alignment a = optimal_alignment(log_net, model);
    CHECK(a.cost == 4);
    CHECK(count_kind(a, MoveKind::ModelMove) == 4);
    check_valid(a, log_net, model);
  }
  SUBCASE("alignments are reproducible") {
    const PetriNet log_net = trace_net({"SecTP", "Splenomeg", "Adm"});
    CHECK(optimal_alignment(log_net, model) == optimal_alignment(log_net, model));
  }
  SUBCASE("unreachable final markings are reported") {
    PetriNet broken;
    broken.places = {"p0", "p1"};
    broken.transitions = {{"t", "a"}};
    broken.arcs = {{"p0", "t"}};  // t never marks p1
    broken.initial_marking = {{"p0", 1}};
    broken.final_marking = {{"p1", 1}};
    CHECK_THROWS_AS(optimal_alignment(trace_net({"a"}), broken), model_error);
  }
}

TEST_CASE("conformance bounds of the running example are (0, 3)") {
  const auto bounds =
      conformance_bounds(fixtures::running_example_trace(), fixtures::healthcare_model(), 10000);
  CHECK(bounds.lower == 0);
  REQUIRE(bounds.upper.has_value());
  CHECK(*bounds.upper == 3);
  CHECK(bounds.lower_witness.log_projection() ==
        std::vector<std::string>{"NightSweats", "Splenomeg", "PrTP", "Adm"});
  REQUIRE(bounds.upper_witness.has_value());
  CHECK(count_kind(*bounds.upper_witness, MoveKind::ModelMove) == 2);
  CHECK(count_kind(*bounds.upper_witness, MoveKind::LogMove) == 1);
}

TEST_CASE("conformance bounds on small cases") {
  SUBCASE("a certain conforming trace is (0,0)") {
    UncertainTrace t{"c", {}};
    const std::vector<std::string> labels{"NightSweats", "Splenomeg", "PrTP", "Adm"};
    for (size_t i = 0; i < labels.size(); ++i)
      t.events.push_back({"e" + std::to_string(i + 1), ActivitySpec::certain(labels[i]),
                          PointTime{static_cast<double>(i + 1)}, {}});
    const auto bounds = conformance_bounds(t, fixtures::healthcare_model(), 100);
    CHECK(bounds.lower == 0);
    CHECK(bounds.upper == 0);
  }
  SUBCASE("a two-label event against a single-transition model is (0,2)") {
    UncertainTrace t{"c", {{"e1", ActivitySpec::choice({"a", "b"}), PointTime{1}, {}}}};
    const PetriNet model = tree_to_net(ProcessTree::leaf("a"));
    const auto bounds = conformance_bounds(t, model, 100);
    CHECK(bounds.lower == 0);
    CHECK(bounds.upper == 2);
  }
  SUBCASE("cap overruns keep the lower bound and drop the upper") {
    UncertainTrace t{"c", {}};
    for (int i = 0; i < 8; ++i)
      t.events.push_back({"e" + std::to_string(i), ActivitySpec::choice({"a", "b"}),
                          PointTime{static_cast<double>(i)}, {}});
    const auto bounds = conformance_bounds(t, tree_to_net(ProcessTree::leaf("a")), 10);
    CHECK(bounds.lower >= 0);
    CHECK_FALSE(bounds.upper.has_value());
    REQUIRE(bounds.cap_note.has_value());
    CHECK(bounds.cap_note->find("realizations") != std::string::npos);
  }
}

TEST_CASE("behavior net lower bound equals the minimum over realizations") {
  // Model corpus: the healthcare net plus trees over a small alphabet.
  std::vector<PetriNet> corpus;
  corpus.push_back(fixtures::healthcare_model());
  corpus.push_back(tree_to_net(ProcessTree::leaf("a")));
  corpus.push_back(tree_to_net(
      ProcessTree::seq({ProcessTree::leaf("a"), ProcessTree::leaf("b"), ProcessTree::leaf("c")})));
  corpus.push_back(tree_to_net(ProcessTree::xor_({ProcessTree::leaf("a"), ProcessTree::leaf("b")})));
  corpus.push_back(tree_to_net(ProcessTree::and_({ProcessTree::leaf("a"), ProcessTree::leaf("b")})));
  corpus.push_back(tree_to_net(ProcessTree::loop(ProcessTree::leaf("a"), ProcessTree::leaf("b"))));
  corpus.push_back(tree_to_net(ProcessTree::xor_({ProcessTree::leaf("a"), ProcessTree::silent()})));
  corpus.push_back(tree_to_net(ProcessTree::seq(
      {ProcessTree::leaf("a"),
       ProcessTree::and_({ProcessTree::leaf("b"), ProcessTree::leaf("c")})})));
  corpus.push_back(tree_to_net(ProcessTree::loop(
      ProcessTree::xor_({ProcessTree::leaf("a"), ProcessTree::leaf("b")}), ProcessTree::silent())));
  corpus.push_back(tree_to_net(ProcessTree::seq(
      {ProcessTree::leaf("a"),
       ProcessTree::xor_({ProcessTree::leaf("b"), ProcessTree::leaf("c")})})));

  DetRng rng(77);
  oracles::TraceGenOptions opt;
  opt.max_events = 5;
  opt.alphabet = {"a", "b", "c", "x"};
  for (int round = 0; round < 120; ++round) {
    const auto trace = oracles::random_trace(rng, opt, "c");
    const PetriNet& model = corpus[round % corpus.size()];

    const auto bounds = conformance_bounds(trace, model, 100000);
    int min_cost = -1, max_cost = -1;
    for (const auto& seq : realization_sequences(trace, 100000)) {
      const int cost = optimal_alignment(trace_net(seq), model).cost;
      if (min_cost < 0 || cost < min_cost) min_cost = cost;
      if (cost > max_cost) max_cost = cost;
    }
    REQUIRE_MESSAGE(bounds.lower == min_cost, "round " << round);
    REQUIRE(bounds.upper.has_value());
    REQUIRE_MESSAGE(*bounds.upper == max_cost, "round " << round);
    CHECK(bounds.lower <= *bounds.upper);
    check_valid(bounds.lower_witness, build_behavior_net(trace), model);
    check_valid(*bounds.upper_witness, trace_net(bounds.upper_witness->log_projection()), model);

    // Cost 0 exactly when some realization is in the model's language.
    const auto language = bounded_language(model, static_cast<int>(trace.events.size()), 100000);
    bool in_language = false;
    for (const auto& seq : realization_sequences(trace, 100000))
      if (language.count(seq)) in_language = true;
    CHECK((bounds.lower == 0) == in_language);
  }
}

TEST_CASE("expected cost") {
  SUBCASE("a certain trace collapses to its alignment cost") {
    UncertainTrace t{"c",
                     {{"e1", ActivitySpec::certain("a"), PointTime{1}, {}},
                      {"e2", ActivitySpec::certain("x"), PointTime{2}, {}}}};
    const PetriNet model = tree_to_net(ProcessTree::leaf("a"));
    const auto bounds = conformance_bounds(t, model, 100);
    const double e = expected_cost(t, model, 100, 1, 100);
    CHECK(e == doctest::Approx(bounds.lower));
    CHECK(e == doctest::Approx(*bounds.upper));
  }
  SUBCASE("a weighted label choice mixes the two costs") {
    UncertainTrace t{"c", {{"e1", ActivitySpec::weighted({{"a", 0.9}, {"b", 0.1}}),
                            PointTime{1}, {}}}};
    const double e = expected_cost(t, tree_to_net(ProcessTree::leaf("a")), 100, 1, 100);
    CHECK(e == doctest::Approx(0.9 * 0.0 + 0.1 * 2.0));
  }
  SUBCASE("the weak example lands between its bounds") {
    const auto trace = fixtures::weak_example_trace();
    const PetriNet model = fixtures::healthcare_model();
    const auto bounds = conformance_bounds(trace, model, 10000);
    const double e = expected_cost(trace, model, 20000, 5, 10000);
    CHECK(bounds.lower <= e);
    CHECK(e <= *bounds.upper);
  }
}

TEST_CASE("alignment rendering uses the two-row no-move notation") {
  const Alignment a =
      optimal_alignment(trace_net({"SecTP", "Splenomeg", "Adm"}), fixtures::healthcare_model());
  const std::string text = render_alignment(a);
  const auto newline = text.find('\n');
  REQUIRE(newline != std::string::npos);
  const std::string log_row = text.substr(0, newline);
  const std::string model_row = text.substr(newline + 1);
  CHECK(log_row.find("SecTP") != std::string::npos);
  CHECK(log_row.find("»") != std::string::npos);
  CHECK(model_row.find("τ") != std::string::npos);
  CHECK(model_row.find("NightSweats") != std::string::npos);
  CHECK(text.back() == '\n');
}
