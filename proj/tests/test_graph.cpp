#include "statepol/graph.hpp"

#include <random>
#include <stdexcept>

#include "support/harness.hpp"
#include "support/test_instances.hpp"

namespace {

using namespace statepol;
using statepol::testing::expect;
using statepol::testing::InstanceOptions;
using statepol::testing::random_edge_subset;
using statepol::testing::random_valid_instance;
using statepol::testing::TestCase;

NodeId node(const char* name) { return NodeId(name); }

Edge edge(const char* src, const char* dst) { return Edge{node(src), node(dst)}; }

bool node_id_rules() {
  bool threw = false;
  try {
    NodeId empty("");
    (void)empty;
  } catch (const std::invalid_argument&) {
    threw = true;
  }
  return expect(threw, "empty node name must be rejected") &&
         expect(node("A") != node("a"), "comparison is case sensitive") &&
         expect(node("a") == node("a"), "equal names compare equal");
}

bool backflows_examples() {
  const EdgeSet single = {edge("A", "B")};
  const EdgeSet reversed = backflows(single);
  const EdgeSet both = {edge("A", "B"), edge("B", "A")};
  const EdgeSet loop = {edge("A", "A")};
  return expect(reversed == EdgeSet{edge("B", "A")}, "single edge reverses") &&
         expect(backflows(EdgeSet{}).empty(), "empty set stays empty") &&
         expect(backflows(both) == both, "symmetric set is a fixed point") &&
         expect(backflows(loop) == loop, "self loop reverses to itself");
}

bool backflows_involution() {
  std::mt19937 rng(11);
  for (int i = 0; i < 200; ++i) {
    const auto instance = random_valid_instance(rng, InstanceOptions{});
    const EdgeSet& edges = instance.graph.edges;
    if (backflows(backflows(edges)) != edges) {
      return expect(false, "double reversal must restore " + to_string(edges));
    }
  }
  return true;
}

bool alpha_identity_without_stateful() {
  DirectedPolicy g;
  g.nodes = {node("A"), node("B"), node("C")};
  g.edges = {edge("A", "B"), edge("B", "C")};
  const StatefulPolicy t{g.nodes, g.edges, {}};
  return expect(alpha(t) == g, "no stateful flows means alpha changes nothing");
}

bool alpha_adds_backflow() {
  const NodeSet nodes = {node("A"), node("B")};
  const StatefulPolicy t{nodes, {edge("A", "B")}, {edge("A", "B")}};
  const DirectedPolicy expected{nodes, {edge("A", "B"), edge("B", "A")}};
  return expect(alpha(t) == expected, "stateful flow adds its reverse");
}

bool alpha_building_automation() {
  const NodeSet nodes = {node("A"), node("B"), node("C")};
  const EdgeSet flows = {edge("B", "A"), edge("B", "C")};
  const StatefulPolicy t{nodes, flows, {edge("B", "A")}};
  const DirectedPolicy expected{nodes, {edge("B", "A"), edge("B", "C"), edge("A", "B")}};
  return expect(alpha(t) == expected, "upgrade of (B,A) yields edges (B,A),(B,C),(A,B)");
}

bool alpha_rejects_invalid() {
  const NodeSet nodes = {node("A"), node("B")};
  const StatefulPolicy stateful_outside_flows{nodes, {edge("A", "B")}, {edge("B", "A")}};
  const StatefulPolicy undeclared_endpoint{{node("A")}, {edge("A", "B")}, {}};
  bool threw1 = false;
  bool threw2 = false;
  try {
    alpha(stateful_outside_flows);
  } catch (const std::invalid_argument&) {
    threw1 = true;
  }
  try {
    alpha(undeclared_endpoint);
  } catch (const std::invalid_argument&) {
    threw2 = true;
  }
  return expect(threw1, "stateful edge outside flows must throw") &&
         expect(threw2, "undeclared endpoint must throw");
}

bool new_backflows_examples() {
  const NodeSet nodes = {node("A"), node("B"), node("C")};
  const StatefulPolicy already_bidirectional{
      nodes, {edge("A", "B"), edge("B", "A")}, {edge("A", "B")}};
  const StatefulPolicy adds_one{nodes, {edge("A", "B")}, {edge("A", "B")}};
  const StatefulPolicy adds_two{
      nodes, {edge("B", "A"), edge("B", "C")}, {edge("B", "A"), edge("B", "C")}};
  return expect(new_backflows(already_bidirectional).empty(),
                "backflow already a policy edge adds nothing") &&
         expect(new_backflows(adds_one) == EdgeSet{edge("B", "A")},
                "lone stateful flow adds exactly its reverse") &&
         expect(new_backflows(adds_two) == EdgeSet({edge("A", "B"), edge("C", "B")}),
                "both upgrades add their reverses");
}

bool new_backflows_two_formulations_agree() {
  std::mt19937 rng(12);
  for (int i = 0; i < 300; ++i) {
    const auto instance = random_valid_instance(rng, InstanceOptions{});
    StatefulPolicy t{instance.graph.nodes, instance.graph.edges,
                     random_edge_subset(rng, instance.graph.edges)};
    EdgeSet filtered;
    for (const Edge& e : t.stateful) {
      if (t.flows.count(Edge{e.dst, e.src}) == 0) filtered.insert(e);
    }
    if (new_backflows(t) != backflows(filtered)) {
      return expect(false, "set difference and filtered forms disagree on " +
                               to_string(t.stateful));
    }
    const EdgeSet nb = new_backflows(t);
    for (const Edge& e : nb) {
      if (t.flows.count(e) != 0) {
        return expect(false, "new backflow " + to_string(e) + " is a policy flow");
      }
    }
  }
  return true;
}

bool alpha_contains_flows_and_backflows() {
  std::mt19937 rng(13);
  for (int i = 0; i < 200; ++i) {
    const auto instance = random_valid_instance(rng, InstanceOptions{});
    StatefulPolicy t{instance.graph.nodes, instance.graph.edges,
                     random_edge_subset(rng, instance.graph.edges)};
    const DirectedPolicy a = alpha(t);
    if (!is_edge_subset(t.flows, a.edges) ||
        !is_edge_subset(backflows(t.stateful), a.edges)) {
      return expect(false, "alpha must contain flows and stateful backflows");
    }
    EdgeSet expected = t.flows;
    const EdgeSet nb = new_backflows(t);
    expected.insert(nb.begin(), nb.end());
    if (a.edges != expected) {
      return expect(false, "alpha edges must equal flows plus new backflows");
    }
  }
  return true;
}

bool validation_reasons() {
  const NodeSet nodes = {node("A"), node("B")};
  const DirectedPolicy g{nodes, {edge("A", "B")}};

  const StatefulValidation ok = validate_stateful_against_policy(
      StatefulPolicy{nodes, {edge("A", "B")}, {}}, g);

  const StatefulValidation flows_outside = validate_stateful_against_policy(
      StatefulPolicy{nodes, {edge("B", "A")}, {}}, g);

  const StatefulValidation stateful_outside = validate_stateful_against_policy(
      StatefulPolicy{nodes, {edge("A", "B")}, {edge("B", "A")}}, g);

  auto has_reason = [](const StatefulValidation& v, const std::string& needle) {
    for (const std::string& reason : v.violations) {
      if (reason.find(needle) != std::string::npos) return true;
    }
    return false;
  };

  return expect(ok.ok && ok.violations.empty(), "faithful candidate validates") &&
         expect(!flows_outside.ok, "foreign flow fails validation") &&
         expect(has_reason(flows_outside, "flows not subset of policy edges"),
                "foreign flow names the failed condition") &&
         expect(!stateful_outside.ok, "stateful outside flows fails validation") &&
         expect(has_reason(stateful_outside, "stateful not subset of flows"),
                "stateful outside flows names the failed condition");
}

bool syntactic_checks() {
  const DirectedPolicy good{{node("A"), node("B")}, {edge("A", "B")}};
  const DirectedPolicy dangling{{node("A")}, {edge("A", "B")}};
  const StatefulPolicy t_good{{node("A"), node("B")}, {edge("A", "B")}, {edge("A", "B")}};
  const StatefulPolicy t_bad{{node("A"), node("B")}, {edge("A", "B")}, {edge("B", "A")}};
  return expect(syntactically_valid(good), "declared endpoints validate") &&
         expect(!syntactically_valid(dangling), "undeclared endpoint fails") &&
         expect(syntactically_valid(t_good), "stateful subset of flows validates") &&
         expect(!syntactically_valid(t_bad), "stateful outside flows fails");
}

bool rendering() {
  const EdgeSet edges = {edge("a", "b"), edge("c", "d")};
  return expect(to_string(edge("a", "b")) == std::string("(a,b)"), "edge renders") &&
         expect(to_string(edges) == std::string("{(a,b), (c,d)}"), "edge set renders") &&
         expect(to_string(EdgeSet{}) == std::string("{}"), "empty set renders");
}

}  // namespace

int main() {
  const std::vector<TestCase> tests = {
      {"node_id_rules", "node names are non-empty and compared exactly", node_id_rules},
      {"backflows_examples", "reversal on single, empty, symmetric and loop sets",
       backflows_examples},
      {"backflows_involution", "reversing twice restores any edge set",
       backflows_involution},
      {"alpha_identity_without_stateful", "alpha is the identity when nothing is stateful",
       alpha_identity_without_stateful},
      {"alpha_adds_backflow", "alpha adds the reverse of a stateful flow",
       alpha_adds_backflow},
      {"alpha_building_automation", "alpha on the door-lock controller example",
       alpha_building_automation},
      {"alpha_rejects_invalid", "alpha refuses syntactically invalid policies",
       alpha_rejects_invalid},
      {"new_backflows_examples", "new backflows skip already bidirectional pairs",
       new_backflows_examples},
      {"new_backflows_two_formulations_agree",
       "set-difference and filtered definitions coincide",
       new_backflows_two_formulations_agree},
      {"alpha_contains_flows_and_backflows", "alpha equals flows plus new backflows",
       alpha_contains_flows_and_backflows},
      {"validation_reasons", "validation lists each violated condition",
       validation_reasons},
      {"syntactic_checks", "endpoint and subset checks on both policy kinds",
       syntactic_checks},
      {"rendering", "edges and edge sets render deterministically", rendering},
  };
  return statepol::testing::run_tests("graph tests", tests);
}
