#include "statepol/synthesis.hpp"

#include <algorithm>
#include <stdexcept>

namespace statepol {

namespace {

void require_valid_policy(const DirectedPolicy& g, const InvariantList& invariants) {
  if (!syntactically_valid(g)) {
    throw std::invalid_argument("invalid policy: policy graph syntactically invalid");
  }
  for (const SecurityInvariant& m : invariants) {
    if (!m.evaluate(g)) {
      throw std::invalid_argument("invalid policy: " + m.description() +
                                  " fails on the policy graph");
    }
  }
}

void require_order(const DirectedPolicy& g, const EdgePriorityList& order) {
  EdgeSet seen;
  for (const Edge& e : order) {
    if (g.edges.count(e) == 0) {
      throw std::invalid_argument("order edge not in policy: " + to_string(e));
    }
    if (!seen.insert(e).second) {
      throw std::invalid_argument("order contains duplicate edge: " + to_string(e));
    }
  }
}

}  // namespace

EdgePriorityList default_order(const DirectedPolicy& g) {
  return EdgePriorityList(g.edges.begin(), g.edges.end());
}

EdgeSet filter_ifs(const DirectedPolicy& g, const InvariantList& invariants,
                   const EdgePriorityList& order) {
  require_valid_policy(g, invariants);
  require_order(g, order);

  const InvariantList ifs = get_ifs(invariants);
  if (ifs.empty()) return EdgeSet(order.begin(), order.end());

  // candidate stays the interpretation of (V, E, accepted): E plus the
  // accepted backflows. Each step tentatively adds one backflow.
  DirectedPolicy candidate = g;
  EdgeSet accepted;
  for (const Edge& e : order) {
    const Edge rev{e.dst, e.src};
    const bool inserted = candidate.edges.insert(rev).second;
    const bool ok = std::all_of(ifs.begin(), ifs.end(), [&](const SecurityInvariant& m) {
      return m.evaluate(candidate);
    });
    if (ok) {
      accepted.insert(e);
    } else if (inserted) {
      candidate.edges.erase(rev);
    }
  }
  return accepted;
}

EdgeSet filter_acs(const DirectedPolicy& g, const InvariantList& invariants,
                   const EdgePriorityList& order) {
  require_valid_policy(g, invariants);
  require_order(g, order);

  const InvariantList acs = get_acs(invariants);
  const EdgeSet reversed_policy = backflows(g.edges);

  DirectedPolicy candidate = g;
  EdgeSet accepted;
  EdgeSet accepted_back;
  for (const Edge& e : order) {
    // Already bidirectional in the policy; a stateful upgrade adds nothing.
    if (reversed_policy.count(e) != 0) continue;

    const Edge rev{e.dst, e.src};
    const bool inserted = candidate.edges.insert(rev).second;
    EdgeSet bound = accepted_back;
    bound.insert(rev);

    bool ok = true;
    for (const SecurityInvariant& m : acs) {
      for (const EdgeSet& f : m.offending(candidate)) {
        if (!is_edge_subset(f, bound)) {
          ok = false;
          break;
        }
      }
      if (!ok) break;
    }
    if (ok) {
      accepted.insert(e);
      accepted_back.insert(rev);
    } else if (inserted) {
      candidate.edges.erase(rev);
    }
  }
  return accepted;
}

StatefulPolicy generate1(const DirectedPolicy& g, const InvariantList& invariants,
                         const EdgePriorityList& order) {
  const EdgeSet survivors = filter_ifs(g, invariants, order);
  EdgePriorityList relisted;
  relisted.reserve(survivors.size());
  for (const Edge& e : order) {
    if (survivors.count(e) != 0) relisted.push_back(e);
  }
  return StatefulPolicy{g.nodes, g.edges, filter_acs(g, invariants, relisted)};
}

StatefulPolicy generate2(const DirectedPolicy& g, const InvariantList& invariants,
                         const EdgePriorityList& order) {
  const EdgeSet from_acs = filter_acs(g, invariants, order);
  const EdgeSet from_ifs = filter_ifs(g, invariants, order);
  EdgeSet both;
  std::set_intersection(from_acs.begin(), from_acs.end(), from_ifs.begin(),
                        from_ifs.end(), std::inserter(both, both.end()));
  return StatefulPolicy{g.nodes, g.edges, both};
}

}  // namespace statepol
