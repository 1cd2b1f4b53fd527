#ifndef STATEPOL_SYNTHESIS_HPP
#define STATEPOL_SYNTHESIS_HPP

#include <vector>

#include "statepol/graph.hpp"
#include "statepol/invariant.hpp"

namespace statepol {

/// Candidate edges for the stateful upgrade, most preferred first.
/// Must be duplicate-free and drawn from the policy's edges.
using EdgePriorityList = std::vector<Edge>;

/// Lexicographic order over all policy edges.
EdgePriorityList default_order(const DirectedPolicy& g);

/**
 * Greedy accumulator over `order`: an edge joins the result iff all
 * information flow invariants still hold once it and the edges accepted
 * so far are upgraded. Deterministic for a fixed order.
 *
 * Requires a valid policy (syntactically valid, every invariant holds);
 * throws std::invalid_argument "invalid policy" otherwise, likewise for
 * an order that repeats edges or leaves the policy.
 */
EdgeSet filter_ifs(const DirectedPolicy& g, const InvariantList& invariants,
                   const EdgePriorityList& order);

/**
 * Greedy accumulator over `order` for the access control criterion: an
 * edge is skipped when its reverse is already a policy edge (nothing to
 * gain), and joins the result iff every access control violation of the
 * upgraded candidate lies within the backflows accepted so far plus its
 * own. Preconditions as for filter_ifs.
 */
EdgeSet filter_acs(const DirectedPolicy& g, const InvariantList& invariants,
                   const EdgePriorityList& order);

/// Chains the filters: the information flow survivors, re-listed in
/// `order`'s relative order, feed the access control filter.
StatefulPolicy generate1(const DirectedPolicy& g, const InvariantList& invariants,
                         const EdgePriorityList& order);

/// Intersects the two filters, each run over the full order.
StatefulPolicy generate2(const DirectedPolicy& g, const InvariantList& invariants,
                         const EdgePriorityList& order);

}  // namespace statepol

#endif
