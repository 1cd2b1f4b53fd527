#ifndef STATEPOL_IO_FORMAT_HPP
#define STATEPOL_IO_FORMAT_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "statepol/compliance.hpp"
#include "statepol/graph.hpp"
#include "statepol/invariant_library.hpp"
#include "statepol/synthesis.hpp"

namespace statepol {

/// Malformed or semantically invalid document. Messages carry the field
/// path (e.g. "edges[3]: unknown node: X").
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Validated in-memory form of a .policy document (JSON, version 1).
struct PolicyDocument {
  int version = 1;
  DirectedPolicy graph;
  std::vector<InvariantSpec> invariants;
  EdgePriorityList priority;  // meaningful only when has_priority
  bool has_priority = false;

  friend bool operator==(const PolicyDocument&, const PolicyDocument&) = default;
};

struct ParsedPolicy {
  PolicyDocument document;
  InvariantList invariants;           // built against document.graph
  std::vector<std::string> warnings;  // de-duplication notes
};

struct ParsedStateful {
  StatefulPolicy policy;
  std::vector<std::string> warnings;
};

/// Parses and validates a .policy document: known fields only, declared
/// endpoints, known invariant kinds referencing declared nodes, priority
/// drawn from the edges without repeats. Duplicate node or edge entries
/// are dropped with a warning.
ParsedPolicy parse_policy(const std::string& text);

/// Canonical rendering; parse_policy(emit_policy(d)).document == d.
std::string emit_policy(const PolicyDocument& doc);

/// Parses a .stateful document structurally (known fields, declared
/// endpoints). Whether the stateful set is a subset of the flows is a
/// compliance question and is left to verification.
ParsedStateful parse_stateful(const std::string& text);

std::string emit_stateful(const StatefulPolicy& t);

/// Parses a JSON array of [src, dst] pairs as a synthesis order; every
/// pair must be a policy edge, no repeats.
EdgePriorityList parse_order(const std::string& text, const DirectedPolicy& g);

/// DOT graph: every node, solid edges for the flows, dashed edges for
/// the new backflows the stateful upgrade permits. Lexicographic and
/// byte-deterministic. Requires t to validate against g.
std::string emit_dot(const DirectedPolicy& g, const StatefulPolicy& t);

/// Firewall rules: a connection-tracking NEW accept per stateful flow,
/// a plain accept per stateless flow, one ESTABLISHED accept when any
/// flow is stateful, and a final DROP.
std::string emit_iptables(const StatefulPolicy& t);

/// Machine-readable report document with stable key order.
std::string emit_report(const ComplianceReport& report);

/// Human-readable report rendering.
std::string render_report_text(const ComplianceReport& report);

}  // namespace statepol

#endif
