#include "statepol/io_format.hpp"

#include <random>
#include <string>

#include "statepol/compliance.hpp"
#include "support/campus.hpp"
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

std::string parse_error_of(const std::string& text) {
  try {
    parse_policy(text);
  } catch (const ParseError& e) {
    return e.what();
  }
  return "";
}

bool parse_minimal_policy() {
  const ParsedPolicy parsed = parse_policy(
      R"({"version": 1, "nodes": ["a", "b"], "edges": [["a", "b"]]})");
  return expect(parsed.document.graph.nodes == NodeSet({node("a"), node("b")}),
                "nodes are read") &&
         expect(parsed.document.graph.edges == EdgeSet{edge("a", "b")},
                "edges are read") &&
         expect(parsed.invariants.empty() && parsed.document.invariants.empty(),
                "invariants default to none") &&
         expect(!parsed.document.has_priority, "priority defaults to absent") &&
         expect(parsed.warnings.empty(), "clean documents warn about nothing");
}

bool parse_all_invariant_kinds() {
  const ParsedPolicy parsed = parse_policy(R"({
    "version": 1,
    "nodes": ["a", "b", "c"],
    "edges": [],
    "invariants": [
      {"kind": "whitelist", "protected": "a", "allowed": ["b"]},
      {"kind": "sink", "sinks": ["a"]},
      {"kind": "confidentiality", "levels": {"a": 2}, "trusted": ["c"]},
      {"kind": "confidentiality"},
      {"kind": "transitive_no_access", "forbidden": [["a", "c"]]}
    ]
  })");
  const std::vector<InvariantSpec>& specs = parsed.document.invariants;
  return expect(specs.size() == 5 && parsed.invariants.size() == 5,
                "every kind builds") &&
         expect(specs[0] == InvariantSpec{WhitelistSpec{node("a"), {node("b")}}},
                "whitelist fields are read") &&
         expect(specs[1] == InvariantSpec{SinkSpec{{node("a")}}},
                "sink fields are read") &&
         expect(specs[2] == InvariantSpec{ConfidentialitySpec{{{node("a"), 2}},
                                                              {node("c")}}},
                "confidentiality fields are read") &&
         expect(specs[3] == InvariantSpec{ConfidentialitySpec{}},
                "confidentiality fields are optional") &&
         expect(specs[4] == InvariantSpec{TransitiveNoAccessSpec{
                                {{node("a"), node("c")}}}},
                "forbidden pairs are read");
}

bool parse_rejects_malformed_documents() {
  return expect(parse_error_of("[1, 2]") == "document root must be an object",
                "non-object root") &&
         expect(parse_error_of(R"({"nodes": [], "edges": []})") ==
                    "document: missing field: version",
                "missing version") &&
         expect(parse_error_of(R"({"version": 2, "nodes": [], "edges": []})") ==
                    "version unsupported: 2",
                "future version") &&
         expect(parse_error_of(R"({"version": 1, "nodes": [], "edges": [], "x": 1})") ==
                    "document: unknown field: x",
                "unknown root field") &&
         expect(!parse_error_of("{nope").empty(), "broken syntax reports an error") &&
         expect(parse_error_of(R"({"version": 1, "nodes": [""], "edges": []})") ==
                    "nodes[0]: node name must be non-empty",
                "empty node name") &&
         expect(parse_error_of(
                    R"({"version": 1, "nodes": ["a"], "edges": [["a"]]})") ==
                    "edges[0]: expected [src, dst] pair",
                "short edge pair") &&
         expect(parse_error_of(
                    R"({"version": 1, "nodes": ["a"], "edges": [["a", "x"]]})") ==
                    "edges[0]: unknown node: x",
                "undeclared edge endpoint");
}

bool parse_rejects_malformed_invariants() {
  const std::string head = R"({"version": 1, "nodes": ["a", "b"], "edges": [], )";
  return expect(parse_error_of(head + R"("invariants": [{"kind": "frob"}]})") ==
                    "invariants[0]: unknown invariant kind: frob",
                "unknown kind") &&
         expect(parse_error_of(
                    head + R"("invariants": [{"kind": "whitelist", "protected": "a"}]})") ==
                    "invariants[0]: missing field: allowed",
                "missing whitelist field") &&
         expect(parse_error_of(head +
                               R"("invariants": [{"kind": "sink", "sinks": ["q"]}]})") ==
                    "invariants[0]: unknown node: q",
                "sink names an undeclared node") &&
         expect(parse_error_of(
                    head +
                    R"("invariants": [{"kind": "confidentiality", "levels": {"a": -1}}]})") ==
                    "invariants[0].levels.a: expected non-negative integer",
                "negative level") &&
         expect(parse_error_of(
                    head +
                    R"("invariants": [{"kind": "transitive_no_access", "forbidden": [["a", "a"]]}]})") ==
                    "invariants[0]: reflexive forbidden pair: (a,a)",
                "reflexive pair") &&
         expect(parse_error_of(
                    head + R"("invariants": [{"kind": "sink", "sinks": [], "x": 1}]})") ==
                    "invariants[0]: unknown field: x",
                "unknown invariant field");
}

bool parse_priority_rules() {
  const std::string head =
      R"({"version": 1, "nodes": ["a", "b"], "edges": [["a", "b"], ["b", "a"]], )";
  const ParsedPolicy good =
      parse_policy(head + R"("priority": [["b", "a"], ["a", "b"]]})");
  return expect(good.document.has_priority &&
                    good.document.priority ==
                        EdgePriorityList({edge("b", "a"), edge("a", "b")}),
                "priority keeps list order") &&
         expect(parse_error_of(head + R"("priority": [["a", "a"]]})") ==
                    "priority[0]: edge not in policy: (a,a)",
                "priority outside the edges") &&
         expect(parse_error_of(head + R"("priority": [["a", "b"], ["a", "b"]]})") ==
                    "priority[1]: duplicate edge: (a,b)",
                "repeated priority entry");
}

bool parse_warns_about_duplicates() {
  const ParsedPolicy parsed = parse_policy(R"({
    "version": 1,
    "nodes": ["a", "b", "a"],
    "edges": [["a", "b"], ["a", "b"]]
  })");
  return expect(parsed.document.graph.nodes.size() == 2 &&
                    parsed.document.graph.edges.size() == 1,
                "duplicates collapse") &&
         expect(parsed.warnings.size() == 2, "each duplicate warns once") &&
         expect(parsed.warnings[0] == "duplicate node: a" &&
                    parsed.warnings[1] == "duplicate edge: (a,b)",
                "warnings name the duplicate");
}

bool policy_round_trip() {
  std::mt19937 rng(61);
  for (int i = 0; i < 60; ++i) {
    const auto instance = random_valid_instance(rng, InstanceOptions{});
    PolicyDocument doc;
    doc.graph = instance.graph;
    doc.invariants = instance.specs;
    if (rng() % 2 == 0) {
      doc.priority = statepol::testing::random_order(rng, instance.graph.edges);
      doc.has_priority = true;
    }
    const ParsedPolicy reread = parse_policy(emit_policy(doc));
    if (!(reread.document == doc)) {
      return expect(false, "document changed across emit and parse on " +
                               to_string(doc.graph.edges));
    }
    if (!reread.warnings.empty()) {
      return expect(false, "emitted documents must parse without warnings");
    }
  }
  return true;
}

bool stateful_round_trip() {
  std::mt19937 rng(62);
  for (int i = 0; i < 60; ++i) {
    const auto instance = random_valid_instance(rng, InstanceOptions{});
    const StatefulPolicy t{instance.graph.nodes, instance.graph.edges,
                           random_edge_subset(rng, instance.graph.edges)};
    const ParsedStateful reread = parse_stateful(emit_stateful(t));
    if (!(reread.policy == t)) {
      return expect(false, "stateful policy changed across emit and parse");
    }
  }
  const std::string text = emit_stateful(
      StatefulPolicy{{node("a"), node("b")}, {edge("a", "b")}, {}});
  return expect(parse_stateful(text).policy.stateful.empty(),
                "empty stateful set survives the round trip");
}

bool stateful_parse_is_structural_only() {
  // A stateful set outside the flows is a compliance question, not a
  // parse error.
  const ParsedStateful parsed = parse_stateful(R"({
    "version": 1,
    "nodes": ["a", "b"],
    "flows": [["a", "b"]],
    "stateful": [["b", "a"]]
  })");
  bool threw = false;
  try {
    parse_stateful(R"({"version": 1, "nodes": ["a"], "flows": [["a", "x"]], "stateful": []})");
  } catch (const ParseError&) {
    threw = true;
  }
  return expect(parsed.policy.stateful == EdgeSet{edge("b", "a")},
                "non-subset stateful sets parse") &&
         expect(threw, "undeclared endpoints still fail");
}

bool emitters_are_deterministic() {
  const DirectedPolicy g = statepol::testing::campus_policy();
  PolicyDocument doc;
  doc.graph = g;
  doc.invariants = statepol::testing::campus_specs();
  const StatefulPolicy t{g.nodes, g.edges, statepol::testing::campus_expected_stateful()};
  const ComplianceReport report = verify(t, g, statepol::testing::campus_invariants());
  return expect(emit_policy(doc) == emit_policy(doc), "policy emission is stable") &&
         expect(emit_stateful(t) == emit_stateful(t), "stateful emission is stable") &&
         expect(emit_dot(g, t) == emit_dot(g, t), "dot emission is stable") &&
         expect(emit_report(report) == emit_report(report), "report emission is stable");
}

bool dot_rendering() {
  DirectedPolicy g;
  g.nodes = {node("A"), node("B"), node("C")};
  g.edges = {edge("B", "A"), edge("B", "C")};
  const StatefulPolicy t{g.nodes, g.edges, {edge("B", "C")}};
  const std::string expected =
      "digraph policy {\n"
      "  \"A\";\n"
      "  \"B\";\n"
      "  \"C\";\n"
      "  \"B\" -> \"A\";\n"
      "  \"B\" -> \"C\";\n"
      "  \"C\" -> \"B\" [style=dashed];\n"
      "}\n";
  bool threw = false;
  try {
    emit_dot(g, StatefulPolicy{g.nodes, {edge("A", "C")}, {}});
  } catch (const std::invalid_argument& e) {
    threw = std::string(e.what()).find("stateful policy does not match policy graph") !=
            std::string::npos;
  }
  return expect(emit_dot(g, t) == expected, "solid flows, dashed new backflows") &&
         expect(threw, "mismatched stateful policy is refused");
}

bool iptables_rendering() {
  const NodeSet nodes = {node("A"), node("B")};
  const StatefulPolicy stateful{nodes, {edge("A", "B")}, {edge("A", "B")}};
  const StatefulPolicy stateless{nodes, {edge("A", "B")}, {}};
  const StatefulPolicy empty{nodes, {}, {}};

  const std::string expected_stateful =
      "iptables -A INPUT -s A -d B -m conntrack --ctstate NEW -j ACCEPT\n"
      "iptables -A INPUT -m conntrack --ctstate ESTABLISHED -j ACCEPT\n"
      "iptables -A INPUT -j DROP\n";
  const std::string expected_stateless =
      "iptables -A INPUT -s A -d B -j ACCEPT\n"
      "iptables -A INPUT -j DROP\n";

  bool threw = false;
  try {
    emit_iptables(StatefulPolicy{nodes, {edge("A", "B")}, {edge("B", "A")}});
  } catch (const std::invalid_argument& e) {
    threw = std::string(e.what()) == "stateful policy syntactically invalid";
  }
  return expect(emit_iptables(stateful) == expected_stateful,
                "stateful flow gets connection tracking") &&
         expect(emit_iptables(stateless) == expected_stateless,
                "stateless flow gets a plain accept") &&
         expect(emit_iptables(empty) == "iptables -A INPUT -j DROP\n",
                "no flows, drop only") &&
         expect(threw, "invalid policies are refused");
}

bool iptables_line_count() {
  std::mt19937 rng(63);
  for (int i = 0; i < 80; ++i) {
    const auto instance = random_valid_instance(rng, InstanceOptions{});
    const StatefulPolicy t{instance.graph.nodes, instance.graph.edges,
                           random_edge_subset(rng, instance.graph.edges)};
    const std::string rules = emit_iptables(t);
    std::size_t lines = 0;
    for (char c : rules) {
      if (c == '\n') ++lines;
    }
    const std::size_t expected =
        t.flows.size() + (t.stateful.empty() ? 0 : 1) + 1;
    if (lines != expected) {
      return expect(false, "rule count " + std::to_string(lines) + " differs from " +
                               std::to_string(expected));
    }
  }
  return true;
}

bool order_parsing() {
  DirectedPolicy g;
  g.nodes = {node("A"), node("B"), node("C")};
  g.edges = {edge("B", "A"), edge("B", "C")};
  const EdgePriorityList order = parse_order(R"([["B", "C"], ["B", "A"]])", g);

  auto error_of = [&](const std::string& text) -> std::string {
    try {
      parse_order(text, g);
    } catch (const ParseError& e) {
      return e.what();
    }
    return "";
  };

  return expect(order == EdgePriorityList({edge("B", "C"), edge("B", "A")}),
                "orders keep their list order") &&
         expect(error_of(R"({"not": "an array"})") ==
                    "order: expected array of [src, dst] pairs",
                "non-array orders are refused") &&
         expect(error_of(R"([["A", "C"]])") == "order[0]: edge not in policy: (A,C)",
                "foreign edges are refused") &&
         expect(error_of(R"([["B", "A"], ["B", "A"]])") ==
                    "order[1]: duplicate edge: (B,A)",
                "duplicates are refused");
}

bool report_rendering() {
  DirectedPolicy g;
  g.nodes = {node("A"), node("B"), node("C")};
  g.edges = {edge("B", "A"), edge("B", "C")};
  const InvariantList invariants = {
      build_invariant(TransitiveNoAccessSpec{{{node("A"), node("C")}}}, g)};

  const ComplianceReport good =
      verify(StatefulPolicy{g.nodes, g.edges, {edge("B", "C")}}, g, invariants);
  const ComplianceReport bad =
      verify(StatefulPolicy{g.nodes, g.edges, {edge("B", "A")}}, g, invariants);

  const std::string good_text =
      "syntactic check: ok\n"
      "information flow invariants: ok\n"
      "access control side effects: none\n"
      "overall: compliant\n";
  const std::string bad_text =
      "syntactic check: ok\n"
      "information flow invariants: ok\n"
      "access control side effects: not verifiable as side-effect-free\n"
      "  transitive_no_access(forbidden={(A,C)}): witness {(B,C)}, excess {(B,C)}\n"
      "reason: not verifiable as side-effect-free: "
      "transitive_no_access(forbidden={(A,C)})\n"
      "overall: not compliant\n";

  const std::string bad_json = emit_report(bad);
  const ParsedPolicy roundtrip_guard = parse_policy(emit_policy(PolicyDocument{
      1, g, {TransitiveNoAccessSpec{{{node("A"), node("C")}}}}, {}, false}));

  return expect(render_report_text(good) == good_text, "compliant rendering") &&
         expect(render_report_text(bad) == bad_text, "violation rendering") &&
         expect(bad_json.find("\"overall\": false") != std::string::npos,
                "report document carries the verdict") &&
         expect(bad_json.find("\"excess\"") != std::string::npos,
                "report document carries the excess") &&
         expect(roundtrip_guard.document.invariants.size() == 1,
                "report fixtures round-trip their policy");
}

}  // namespace

int main() {
  const std::vector<TestCase> tests = {
      {"parse_minimal_policy", "a minimal document parses with defaults",
       parse_minimal_policy},
      {"parse_all_invariant_kinds", "every invariant kind is read faithfully",
       parse_all_invariant_kinds},
      {"parse_rejects_malformed_documents", "structural defects carry field paths",
       parse_rejects_malformed_documents},
      {"parse_rejects_malformed_invariants", "invariant defects carry field paths",
       parse_rejects_malformed_invariants},
      {"parse_priority_rules", "priority lists are validated against the edges",
       parse_priority_rules},
      {"parse_warns_about_duplicates", "duplicates collapse with a warning",
       parse_warns_about_duplicates},
      {"policy_round_trip", "parse of emit restores the document",
       policy_round_trip},
      {"stateful_round_trip", "parse of emit restores the stateful policy",
       stateful_round_trip},
      {"stateful_parse_is_structural_only", "subset checking is left to verification",
       stateful_parse_is_structural_only},
      {"emitters_are_deterministic", "all emitters are byte-stable",
       emitters_are_deterministic},
      {"dot_rendering", "dot output lists nodes, flows and dashed backflows",
       dot_rendering},
      {"iptables_rendering", "firewall rules follow the connection-tracking templates",
       iptables_rendering},
      {"iptables_line_count", "rule count matches the flow partition",
       iptables_line_count},
      {"order_parsing", "orders are validated edge lists", order_parsing},
      {"report_rendering", "text and document reports render the verdict",
       report_rendering},
  };
  return statepol::testing::run_tests("format tests", tests);
}
