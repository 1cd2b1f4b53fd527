#include "statepol/invariant_library.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace statepol {

namespace {

std::string join_names(const NodeSet& nodes) {
  std::string out = "{";
  bool first = true;
  for (const NodeId& n : nodes) {
    if (!first) out += ", ";
    out += n.name();
    first = false;
  }
  return out + "}";
}

void require_known(const NodeId& n, const DirectedPolicy& g) {
  if (g.nodes.count(n) == 0) {
    throw std::invalid_argument("unknown node: " + n.name());
  }
}

/// Invariants violated edge by edge have a unique minimal repair: the
/// set of all violating edges. Predicate and fast offending path share
/// one violation test.
SecurityInvariant make_edgewise(std::function<bool(const Edge&)> violates,
                                SecurityStrategy strategy, std::string description) {
  auto evaluate = [violates](const DirectedPolicy& g) {
    return std::none_of(g.edges.begin(), g.edges.end(), violates);
  };
  auto offending = [violates](const DirectedPolicy& g) -> OffendingFlows {
    EdgeSet bad;
    for (const Edge& e : g.edges) {
      if (violates(e)) bad.insert(e);
    }
    if (bad.empty()) return {};
    return {bad};
  };
  return SecurityInvariant(std::move(evaluate), strategy, std::move(description),
                           std::move(offending));
}

/// Reachability over the edge relation alone, one or more hops. Total
/// over arbitrary edge sets so predicates built on it stay total.
bool reaches(const EdgeSet& edges, const NodeId& from, const NodeId& to) {
  std::map<NodeId, std::vector<NodeId>> adj;
  for (const Edge& e : edges) adj[e.src].push_back(e.dst);

  std::set<NodeId> seen;
  std::deque<NodeId> frontier;
  auto start = adj.find(from);
  if (start == adj.end()) return false;
  for (const NodeId& n : start->second) {
    if (seen.insert(n).second) frontier.push_back(n);
  }
  while (!frontier.empty()) {
    NodeId n = frontier.front();
    frontier.pop_front();
    if (n == to) return true;
    auto it = adj.find(n);
    if (it == adj.end()) continue;
    for (const NodeId& next : it->second) {
      if (seen.insert(next).second) frontier.push_back(next);
    }
  }
  return false;
}

}  // namespace

std::string describe(const WhitelistSpec& spec) {
  return "whitelist(protected=" + spec.protected_node.name() +
         ", allowed=" + join_names(spec.allowed) + ")";
}

std::string describe(const SinkSpec& spec) {
  return "sink(sinks=" + join_names(spec.sinks) + ")";
}

std::string describe(const ConfidentialitySpec& spec) {
  std::string out = "confidentiality(levels={";
  bool first = true;
  for (const auto& [node, level] : spec.levels) {
    if (!first) out += ", ";
    out += node.name() + ":" + std::to_string(level);
    first = false;
  }
  return out + "}, trusted=" + join_names(spec.trusted) + ")";
}

std::string describe(const TransitiveNoAccessSpec& spec) {
  std::string out = "transitive_no_access(forbidden={";
  bool first = true;
  for (const auto& [a, c] : spec.forbidden) {
    if (!first) out += ", ";
    out += "(" + a.name() + "," + c.name() + ")";
    first = false;
  }
  return out + "})";
}

std::string describe(const InvariantSpec& spec) {
  return std::visit([](const auto& s) { return describe(s); }, spec);
}

SecurityInvariant build_invariant(const WhitelistSpec& spec, const DirectedPolicy& g) {
  require_known(spec.protected_node, g);
  for (const NodeId& n : spec.allowed) require_known(n, g);

  auto violates = [spec](const Edge& e) {
    return e.dst == spec.protected_node && e.src != spec.protected_node &&
           spec.allowed.count(e.src) == 0;
  };
  return make_edgewise(violates, SecurityStrategy::ACS, describe(spec));
}

SecurityInvariant build_invariant(const SinkSpec& spec, const DirectedPolicy& g) {
  for (const NodeId& n : spec.sinks) require_known(n, g);

  auto violates = [spec](const Edge& e) { return spec.sinks.count(e.src) != 0; };
  return make_edgewise(violates, SecurityStrategy::IFS, describe(spec));
}

SecurityInvariant build_invariant(const ConfidentialitySpec& spec,
                                  const DirectedPolicy& g) {
  for (const auto& [node, level] : spec.levels) require_known(node, g);
  for (const NodeId& n : spec.trusted) require_known(n, g);

  auto violates = [spec](const Edge& e) {
    if (spec.trusted.count(e.dst) != 0) return false;
    unsigned src_level = 0;
    if (spec.trusted.count(e.src) == 0) {
      auto it = spec.levels.find(e.src);
      if (it != spec.levels.end()) src_level = it->second;
    }
    auto it = spec.levels.find(e.dst);
    const unsigned dst_level = (it == spec.levels.end()) ? 0 : it->second;
    return src_level > dst_level;
  };
  return make_edgewise(violates, SecurityStrategy::IFS, describe(spec));
}

SecurityInvariant build_invariant(const TransitiveNoAccessSpec& spec,
                                  const DirectedPolicy& g) {
  for (const auto& [a, c] : spec.forbidden) {
    require_known(a, g);
    require_known(c, g);
    if (a == c) {
      throw std::invalid_argument("reflexive forbidden pair: (" + a.name() + "," +
                                  c.name() + ")");
    }
  }

  auto forbidden = spec.forbidden;
  auto evaluate = [forbidden](const DirectedPolicy& sub) {
    for (const auto& [a, c] : forbidden) {
      if (reaches(sub.edges, a, c)) return false;
    }
    return true;
  };
  // Repairs of a reachability violation are not unique; only the
  // exhaustive enumeration is correct here.
  return SecurityInvariant(std::move(evaluate), SecurityStrategy::ACS, describe(spec));
}

SecurityInvariant build_invariant(const InvariantSpec& spec, const DirectedPolicy& g) {
  return std::visit([&g](const auto& s) { return build_invariant(s, g); }, spec);
}

InvariantList build_invariants(const std::vector<InvariantSpec>& specs,
                               const DirectedPolicy& g) {
  InvariantList out;
  out.reserve(specs.size());
  for (const InvariantSpec& spec : specs) out.push_back(build_invariant(spec, g));
  return out;
}

NodeSet transitive_closure_reachable(const DirectedPolicy& g, const NodeId& from) {
  if (g.nodes.count(from) == 0) {
    throw std::invalid_argument("unknown node: " + from.name());
  }
  std::map<NodeId, std::vector<NodeId>> adj;
  for (const Edge& e : g.edges) adj[e.src].push_back(e.dst);

  NodeSet reached;
  std::deque<NodeId> frontier;
  auto start = adj.find(from);
  if (start != adj.end()) {
    for (const NodeId& n : start->second) {
      if (reached.insert(n).second) frontier.push_back(n);
    }
  }
  while (!frontier.empty()) {
    NodeId n = frontier.front();
    frontier.pop_front();
    auto it = adj.find(n);
    if (it == adj.end()) continue;
    for (const NodeId& next : it->second) {
      if (reached.insert(next).second) frontier.push_back(next);
    }
  }
  return reached;
}

}  // namespace statepol
