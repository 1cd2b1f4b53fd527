#ifndef STATEPOL_GRAPH_HPP
#define STATEPOL_GRAPH_HPP

#include <algorithm>
#include <compare>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace statepol {

/// Opaque host identifier. Non-empty; compared by exact, case-sensitive text.
class NodeId {
 public:
  explicit NodeId(std::string name) : name_(std::move(name)) {
    if (name_.empty()) {
      throw std::invalid_argument("node name must be non-empty");
    }
  }

  const std::string& name() const { return name_; }

  friend auto operator<=>(const NodeId&, const NodeId&) = default;

 private:
  std::string name_;
};

/// A permitted unidirectional flow from src to dst. Ordering is
/// lexicographic by (src, dst), which fixes all deterministic outputs.
struct Edge {
  NodeId src;
  NodeId dst;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

using NodeSet = std::set<NodeId>;
using EdgeSet = std::set<Edge>;

/// True when every edge of a also lies in b.
inline bool is_edge_subset(const EdgeSet& a, const EdgeSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

/// A network security policy's access rules as a finite directed graph.
struct DirectedPolicy {
  NodeSet nodes;
  EdgeSet edges;

  friend bool operator==(const DirectedPolicy&, const DirectedPolicy&) = default;
};

/**
 * A directed policy together with the subset of flows upgraded to be
 * stateful. An upgraded flow (s,r) additionally permits answer packets
 * in the reverse direction (r,s).
 */
struct StatefulPolicy {
  NodeSet nodes;
  EdgeSet flows;     // all permitted flows
  EdgeSet stateful;  // upgraded subset of flows

  friend bool operator==(const StatefulPolicy&, const StatefulPolicy&) = default;
};

/// True iff every edge endpoint is listed in nodes.
bool syntactically_valid(const DirectedPolicy& g);

/// True iff every flow endpoint is listed in nodes and stateful is a
/// subset of flows.
bool syntactically_valid(const StatefulPolicy& t);

/// Every edge reversed: { (r,s) | (s,r) in edges }. An involution.
EdgeSet backflows(const EdgeSet& edges);

/// The directed graph a stateful policy permits:
/// (nodes, flows + stateful + backflows(stateful)).
/// Throws std::invalid_argument for a syntactically invalid policy.
DirectedPolicy alpha(const StatefulPolicy& t);

/// Backflows of the stateful flows that are not already forward flows;
/// the flows alpha adds on top of the directed policy.
EdgeSet new_backflows(const StatefulPolicy& t);

struct StatefulValidation {
  bool ok = false;
  std::vector<std::string> violations;  // every violated condition
};

/// Checks that t is a faithful stateful implementation candidate for g:
/// same hosts, flows drawn from g's edges, stateful drawn from the flows,
/// and both objects syntactically valid.
StatefulValidation validate_stateful_against_policy(const StatefulPolicy& t,
                                                    const DirectedPolicy& g);

/// Renders "(src,dst)".
std::string to_string(const Edge& e);

/// Renders "{(a,b), (c,d)}" in set order.
std::string to_string(const EdgeSet& edges);

}  // namespace statepol

#endif
