#include "statepol/compliance.hpp"

#include <algorithm>
#include <cstdint>

namespace statepol {

namespace {

EdgeSet set_minus(const EdgeSet& a, const EdgeSet& b) {
  EdgeSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::inserter(out, out.end()));
  return out;
}

EdgeSet first_offending_or_empty(const SecurityInvariant& m, const DirectedPolicy& g) {
  try {
    OffendingFlows off = m.offending(g);
    if (!off.empty()) return *off.begin();
  } catch (const OracleLimitError&) {
    // witness omitted; the verdict itself never depends on this path
  }
  return {};
}

}  // namespace

CheckResult check_ifs(const StatefulPolicy& t, const InvariantList& invariants) {
  const DirectedPolicy a = alpha(t);
  CheckResult result;
  for (const SecurityInvariant& m : get_ifs(invariants)) {
    if (m.evaluate(a)) continue;
    result.ok = false;
    EdgeSet f = first_offending_or_empty(m, a);
    result.witnesses.push_back({m.description(), f, f});
  }
  return result;
}

CheckResult check_acs_efficient(const StatefulPolicy& t, const InvariantList& invariants) {
  const DirectedPolicy a = alpha(t);
  const EdgeSet tolerated = new_backflows(t);
  CheckResult result;
  for (const SecurityInvariant& m : get_acs(invariants)) {
    for (const EdgeSet& f : m.offending(a)) {
      if (is_edge_subset(f, tolerated)) continue;
      result.ok = false;
      result.witnesses.push_back({m.description(), f, set_minus(f, tolerated)});
      break;
    }
  }
  return result;
}

ComplianceReport verify(const StatefulPolicy& t, const DirectedPolicy& g,
                        const InvariantList& invariants) {
  ComplianceReport report;

  if (!syntactically_valid(g)) {
    report.reasons.push_back("policy graph syntactically invalid");
    return report;
  }

  bool policy_valid = true;
  for (const SecurityInvariant& m : invariants) {
    if (m.evaluate(g)) continue;
    policy_valid = false;
    report.reasons.push_back("policy not valid: " + m.description() +
                             " fails on the policy graph");
    EdgeSet f = first_offending_or_empty(m, g);
    report.violating_invariants.push_back({m.description(), f, f});
  }
  if (!policy_valid) {
    report.syntactic_ok = true;
    return report;
  }

  const StatefulValidation validation = validate_stateful_against_policy(t, g);
  if (!validation.ok) {
    report.reasons = validation.violations;
    return report;
  }
  report.syntactic_ok = true;

  CheckResult ifs = check_ifs(t, invariants);
  report.ifs_ok = ifs.ok;
  for (ReportViolation& v : ifs.witnesses) {
    report.reasons.push_back("information flow invariant violated: " + v.invariant);
    report.violating_invariants.push_back(std::move(v));
  }

  CheckResult acs = check_acs_efficient(t, invariants);
  report.acs_efficient_ok = acs.ok;
  for (ReportViolation& v : acs.witnesses) {
    report.reasons.push_back("not verifiable as side-effect-free: " + v.invariant);
    report.violating_invariants.push_back(std::move(v));
  }

  report.overall = report.syntactic_ok && report.ifs_ok && report.acs_efficient_ok;
  return report;
}

namespace oracle {

bool check_acs_all_subsets(const StatefulPolicy& t, const InvariantList& invariants,
                           std::size_t oracle_limit) {
  const EdgeSet back = backflows(t.stateful);
  if (back.size() > oracle_limit || back.size() > 63) {
    throw OracleLimitError("oracle limit exceeded: |backflows| = " +
                           std::to_string(back.size()) + ", limit = " +
                           std::to_string(oracle_limit));
  }
  const InvariantList acs = get_acs(invariants);
  const std::vector<Edge> back_vec(back.begin(), back.end());
  const std::uint64_t full = (std::uint64_t{1} << back_vec.size()) - 1;

  for (std::uint64_t mask = 0; mask <= full; ++mask) {
    DirectedPolicy candidate{t.nodes, t.flows};
    candidate.edges.insert(t.stateful.begin(), t.stateful.end());
    EdgeSet x;
    for (std::size_t i = 0; i < back_vec.size(); ++i) {
      if (mask & (std::uint64_t{1} << i)) x.insert(back_vec[i]);
    }
    candidate.edges.insert(x.begin(), x.end());
    for (const EdgeSet& f : get_offending_flows(acs, candidate)) {
      if (!is_edge_subset(f, x)) return false;
    }
  }
  return true;
}

bool check_acs_union_bound(const StatefulPolicy& t, const InvariantList& invariants) {
  const EdgeSet union_offending =
      offending_union(get_offending_flows(get_acs(invariants), alpha(t)));
  return is_edge_subset(union_offending, backflows(t.stateful));
}

bool check_acs_singletons(const StatefulPolicy& t, const InvariantList& invariants) {
  const InvariantList acs = get_acs(invariants);
  for (const Edge& b : backflows(t.stateful)) {
    DirectedPolicy candidate{t.nodes, t.flows};
    candidate.edges.insert(t.stateful.begin(), t.stateful.end());
    candidate.edges.insert(b);
    const EdgeSet union_offending =
        offending_union(get_offending_flows(acs, candidate));
    if (!is_edge_subset(union_offending, EdgeSet{b})) return false;
  }
  return true;
}

}  // namespace oracle

}  // namespace statepol
