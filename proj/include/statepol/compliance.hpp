#ifndef STATEPOL_COMPLIANCE_HPP
#define STATEPOL_COMPLIANCE_HPP

#include <string>
#include <vector>

#include "statepol/graph.hpp"
#include "statepol/invariant.hpp"

namespace statepol {

/// One failing invariant with a concrete offending edge set F. For
/// information flow failures excess = F (nothing is tolerable); for
/// access control failures excess = F minus the new backflows, the part
/// falling outside the tolerated additions.
struct ReportViolation {
  std::string invariant;
  EdgeSet witness;
  EdgeSet excess;

  friend bool operator==(const ReportViolation&, const ReportViolation&) = default;
};

struct CheckResult {
  bool ok = true;
  std::vector<ReportViolation> witnesses;
};

/// Every information flow invariant must hold on alpha(t), with no
/// tolerance for violations. Witnesses name each failing invariant;
/// witness sets are best effort (empty if enumeration is infeasible).
CheckResult check_ifs(const StatefulPolicy& t, const InvariantList& invariants);

/// Every access control violation on alpha(t) must be confined to the
/// new backflows. Linear per invariant when fast offending paths exist.
CheckResult check_acs_efficient(const StatefulPolicy& t, const InvariantList& invariants);

struct ComplianceReport {
  bool syntactic_ok = false;
  bool ifs_ok = false;
  bool acs_efficient_ok = false;
  std::vector<ReportViolation> violating_invariants;
  std::vector<std::string> reasons;  // empty iff overall
  bool overall = false;              // conjunction of the three flags

  friend bool operator==(const ComplianceReport&, const ComplianceReport&) = default;
};

/**
 * Full compliance verdict, checked in order: the policy graph must be
 * syntactically valid and satisfy every invariant (otherwise the report
 * carries a "policy not valid" reason and stops), t must validate
 * against g, then the information flow and access control criteria run
 * on alpha(t). Identical inputs yield identical reports.
 */
ComplianceReport verify(const StatefulPolicy& t, const DirectedPolicy& g,
                        const InvariantList& invariants);

namespace oracle {

/// Reference check: for every subset X of the stateful backflows, all
/// access control violations of (nodes, flows + stateful + X) must lie
/// inside X. Exponential; throws OracleLimitError above the limit.
bool check_acs_all_subsets(const StatefulPolicy& t, const InvariantList& invariants,
                           std::size_t oracle_limit = kDefaultOracleLimit);

/// Weaker implied check: the access control offending union on alpha(t)
/// lies inside the stateful backflows.
bool check_acs_union_bound(const StatefulPolicy& t, const InvariantList& invariants);

/// Weaker implied check: each stateful backflow, added alone, causes no
/// violation beyond itself.
bool check_acs_singletons(const StatefulPolicy& t, const InvariantList& invariants);

}  // namespace oracle

}  // namespace statepol

#endif
