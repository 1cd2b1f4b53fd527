#ifndef STATEPOL_INVARIANT_HPP
#define STATEPOL_INVARIANT_HPP

#include <cstddef>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "statepol/graph.hpp"

namespace statepol {

/// IFS prevents data leakage; ACS prevents unauthorized accesses. The
/// strategy decides how tolerant compliance checking is toward the
/// backflows a stateful upgrade introduces.
enum class SecurityStrategy { IFS, ACS };

/// All minimal edge sets whose removal repairs a violation. Empty iff
/// the invariant holds.
using OffendingFlows = std::set<EdgeSet>;

/// Cap on the edge-set size the exponential subset enumerations accept.
inline constexpr std::size_t kDefaultOracleLimit = 16;

/// Raised when a brute-force enumeration would exceed its subset limit.
class OracleLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/**
 * A security requirement over directed policies.
 *
 * The predicate must be total, hold on every edgeless graph, and be
 * monotone: if it holds for an edge set it holds for every subset.
 * Neither condition is enforceable at construction; both are tested
 * contracts (see check_invariant_contract).
 *
 * The offending function must agree with the brute-force definition.
 * Invariants with uniquely defined offending flows supply a fast path;
 * the default falls back to exponential enumeration.
 */
class SecurityInvariant {
 public:
  using Predicate = std::function<bool(const DirectedPolicy&)>;
  using OffendingFn = std::function<OffendingFlows(const DirectedPolicy&)>;

  SecurityInvariant(Predicate evaluate, SecurityStrategy strategy,
                    std::string description);
  SecurityInvariant(Predicate evaluate, SecurityStrategy strategy,
                    std::string description, OffendingFn offending);

  bool evaluate(const DirectedPolicy& g) const { return evaluate_(g); }
  OffendingFlows offending(const DirectedPolicy& g) const { return offending_(g); }
  SecurityStrategy strategy() const { return strategy_; }
  const std::string& description() const { return description_; }

 private:
  Predicate evaluate_;
  SecurityStrategy strategy_;
  std::string description_;
  OffendingFn offending_;
};

/// Ordered: list position expresses evaluation and reporting order.
using InvariantList = std::vector<SecurityInvariant>;

/// Enumerates every minimal F subset of g.edges whose removal restores
/// the predicate, by checking all subsets. Throws OracleLimitError when
/// |edges| exceeds oracle_limit.
OffendingFlows offending_flows_bruteforce(
    const std::function<bool(const DirectedPolicy&)>& evaluate,
    const DirectedPolicy& g, std::size_t oracle_limit = kDefaultOracleLimit);

OffendingFlows offending_flows_bruteforce(
    const SecurityInvariant& m, const DirectedPolicy& g,
    std::size_t oracle_limit = kDefaultOracleLimit);

/// Union, as a set of sets, of each invariant's offending flows.
OffendingFlows get_offending_flows(const InvariantList& invariants,
                                   const DirectedPolicy& g);

/// Flattened union of all offending edge sets.
EdgeSet offending_union(const OffendingFlows& offending);

InvariantList get_ifs(const InvariantList& invariants);
InvariantList get_acs(const InvariantList& invariants);

struct ContractReport {
  bool passed = false;
  std::size_t checks_run = 0;
  std::string first_counterexample;  // empty when passed
};

/**
 * Tests the invariant contract on sample graphs: the empty-graph axiom,
 * monotonicity on sampled edge subsets, monotonicity of the offending
 * union under edge removal, the narrowed-upper-bound property, agreement
 * of the offending function with the brute-force definition, and the
 * basic shape facts (offending empty iff the predicate holds; removing
 * any offending set restores the predicate).
 *
 * Subset sampling is seeded and deterministic. Samples whose edge count
 * exceeds oracle_limit skip the brute-force comparison.
 */
ContractReport check_invariant_contract(
    const SecurityInvariant& m, const std::vector<DirectedPolicy>& samples,
    unsigned seed = 1, std::size_t oracle_limit = kDefaultOracleLimit);

}  // namespace statepol

#endif
