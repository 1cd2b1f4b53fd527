#ifndef STATEPOL_INVARIANT_LIBRARY_HPP
#define STATEPOL_INVARIANT_LIBRARY_HPP

#include <map>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "statepol/graph.hpp"
#include "statepol/invariant.hpp"

namespace statepol {

/// Access control: only listed sources may reach the protected node.
/// The protected node may always reach itself.
struct WhitelistSpec {
  NodeId protected_node;
  NodeSet allowed;

  friend bool operator==(const WhitelistSpec&, const WhitelistSpec&) = default;
};

/// Information flow: sink nodes must have no outgoing edge, self-loops
/// included.
struct SinkSpec {
  NodeSet sinks;

  friend bool operator==(const SinkSpec&, const SinkSpec&) = default;
};

/// Information flow with security levels. Unmapped nodes sit at level 0.
/// Trusted nodes declassify what they send (source level 0) and may
/// receive anything (destination level unbounded).
struct ConfidentialitySpec {
  std::map<NodeId, unsigned> levels;
  NodeSet trusted;

  friend bool operator==(const ConfidentialitySpec&, const ConfidentialitySpec&) = default;
};

/// Access control: for every pair (a, c), c must not be reachable from a
/// over one or more edges. Reflexive pairs are rejected at construction.
struct TransitiveNoAccessSpec {
  std::set<std::pair<NodeId, NodeId>> forbidden;

  friend bool operator==(const TransitiveNoAccessSpec&, const TransitiveNoAccessSpec&) = default;
};

using InvariantSpec =
    std::variant<WhitelistSpec, SinkSpec, ConfidentialitySpec, TransitiveNoAccessSpec>;

std::string describe(const WhitelistSpec& spec);
std::string describe(const SinkSpec& spec);
std::string describe(const ConfidentialitySpec& spec);
std::string describe(const TransitiveNoAccessSpec& spec);
std::string describe(const InvariantSpec& spec);

/// Instantiates the invariant after checking every referenced node
/// occurs in g.nodes. Throws std::invalid_argument "unknown node: X"
/// otherwise; the transitive spec also rejects reflexive pairs.
SecurityInvariant build_invariant(const WhitelistSpec& spec, const DirectedPolicy& g);
SecurityInvariant build_invariant(const SinkSpec& spec, const DirectedPolicy& g);
SecurityInvariant build_invariant(const ConfidentialitySpec& spec, const DirectedPolicy& g);
SecurityInvariant build_invariant(const TransitiveNoAccessSpec& spec, const DirectedPolicy& g);
SecurityInvariant build_invariant(const InvariantSpec& spec, const DirectedPolicy& g);

InvariantList build_invariants(const std::vector<InvariantSpec>& specs,
                               const DirectedPolicy& g);

/// Nodes reachable from `from` via one or more edges; `from` itself
/// appears only when it lies on a cycle. Throws on an undeclared node.
NodeSet transitive_closure_reachable(const DirectedPolicy& g, const NodeId& from);

}  // namespace statepol

#endif
