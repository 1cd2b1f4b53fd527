#include "statepol/invariant.hpp"

#include <algorithm>
#include <cstdint>
#include <random>
#include <utility>

namespace statepol {

SecurityInvariant::SecurityInvariant(Predicate evaluate, SecurityStrategy strategy,
                                     std::string description)
    : evaluate_(std::move(evaluate)),
      strategy_(strategy),
      description_(std::move(description)) {
  Predicate copy = evaluate_;
  offending_ = [copy](const DirectedPolicy& g) {
    return offending_flows_bruteforce(copy, g, kDefaultOracleLimit);
  };
}

SecurityInvariant::SecurityInvariant(Predicate evaluate, SecurityStrategy strategy,
                                     std::string description, OffendingFn offending)
    : evaluate_(std::move(evaluate)),
      strategy_(strategy),
      description_(std::move(description)),
      offending_(std::move(offending)) {}

OffendingFlows offending_flows_bruteforce(
    const std::function<bool(const DirectedPolicy&)>& evaluate,
    const DirectedPolicy& g, std::size_t oracle_limit) {
  if (evaluate(g)) return {};

  const std::size_t n = g.edges.size();
  if (n > oracle_limit || n > 63) {
    throw OracleLimitError("oracle limit exceeded: |E| = " + std::to_string(n) +
                           ", limit = " + std::to_string(oracle_limit));
  }

  const std::vector<Edge> edges(g.edges.begin(), g.edges.end());
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;

  // Memoized predicate over kept-edge masks; bit i keeps edges[i].
  std::vector<std::int8_t> memo(std::size_t{1} << n, -1);
  auto holds_on = [&](std::uint64_t mask) {
    std::int8_t& slot = memo[mask];
    if (slot < 0) {
      DirectedPolicy sub{g.nodes, {}};
      for (std::size_t i = 0; i < n; ++i) {
        if (mask & (std::uint64_t{1} << i)) sub.edges.insert(edges[i]);
      }
      slot = evaluate(sub) ? 1 : 0;
    }
    return slot == 1;
  };

  OffendingFlows result;
  for (std::uint64_t removal = 1; removal <= full; ++removal) {
    const std::uint64_t kept = full & ~removal;
    if (!holds_on(kept)) continue;
    bool minimal = true;
    for (std::size_t i = 0; i < n && minimal; ++i) {
      const std::uint64_t bit = std::uint64_t{1} << i;
      if ((removal & bit) && holds_on(kept | bit)) minimal = false;
    }
    if (!minimal) continue;
    EdgeSet flows;
    for (std::size_t i = 0; i < n; ++i) {
      if (removal & (std::uint64_t{1} << i)) flows.insert(edges[i]);
    }
    result.insert(std::move(flows));
  }
  return result;
}

OffendingFlows offending_flows_bruteforce(const SecurityInvariant& m,
                                          const DirectedPolicy& g,
                                          std::size_t oracle_limit) {
  return offending_flows_bruteforce(
      [&m](const DirectedPolicy& sub) { return m.evaluate(sub); }, g, oracle_limit);
}

OffendingFlows get_offending_flows(const InvariantList& invariants,
                                   const DirectedPolicy& g) {
  OffendingFlows all;
  for (const SecurityInvariant& m : invariants) {
    OffendingFlows part = m.offending(g);
    all.insert(part.begin(), part.end());
  }
  return all;
}

EdgeSet offending_union(const OffendingFlows& offending) {
  EdgeSet flat;
  for (const EdgeSet& f : offending) flat.insert(f.begin(), f.end());
  return flat;
}

namespace {

InvariantList filter_strategy(const InvariantList& invariants, SecurityStrategy s) {
  InvariantList out;
  std::copy_if(invariants.begin(), invariants.end(), std::back_inserter(out),
               [s](const SecurityInvariant& m) { return m.strategy() == s; });
  return out;
}

}  // namespace

InvariantList get_ifs(const InvariantList& invariants) {
  return filter_strategy(invariants, SecurityStrategy::IFS);
}

InvariantList get_acs(const InvariantList& invariants) {
  return filter_strategy(invariants, SecurityStrategy::ACS);
}

ContractReport check_invariant_contract(const SecurityInvariant& m,
                                        const std::vector<DirectedPolicy>& samples,
                                        unsigned seed, std::size_t oracle_limit) {
  ContractReport report;
  std::mt19937 rng(seed);

  auto random_subset = [&rng](const EdgeSet& edges) {
    EdgeSet out;
    for (const Edge& e : edges) {
      if (rng() % 2 == 0) out.insert(e);
    }
    return out;
  };

  auto fail = [&](const std::string& what) {
    report.passed = false;
    report.first_counterexample = m.description() + ": " + what;
    return report;
  };

  constexpr int kSubsetRounds = 6;

  for (const DirectedPolicy& g : samples) {
    ++report.checks_run;
    if (!m.evaluate(DirectedPolicy{g.nodes, {}})) {
      return fail("predicate false on edgeless graph");
    }

    for (int round = 0; round < kSubsetRounds; ++round) {
      const EdgeSet e1 = (round == 0) ? g.edges : random_subset(g.edges);
      const EdgeSet e2 = random_subset(e1);
      const DirectedPolicy g1{g.nodes, e1};
      const DirectedPolicy g2{g.nodes, e2};

      ++report.checks_run;
      if (m.evaluate(g1) && !m.evaluate(g2)) {
        return fail("not monotone: holds on " + to_string(e1) +
                    " but not on subset " + to_string(e2));
      }

      if (e1.size() > oracle_limit) continue;

      const OffendingFlows off1 = m.offending(g1);
      const OffendingFlows off2 = m.offending(g2);

      ++report.checks_run;
      if (off1 != offending_flows_bruteforce(m, g1, oracle_limit)) {
        return fail("offending function disagrees with definition on " + to_string(e1));
      }

      ++report.checks_run;
      if (off1.empty() != m.evaluate(g1)) {
        return fail("offending flows empty but predicate false (or vice versa) on " +
                    to_string(e1));
      }

      ++report.checks_run;
      for (const EdgeSet& f : off1) {
        if (f.empty() || !is_edge_subset(f, e1)) {
          return fail("offending set " + to_string(f) + " not a nonempty subset of " +
                      to_string(e1));
        }
        EdgeSet repaired = e1;
        for (const Edge& e : f) repaired.erase(e);
        if (!m.evaluate(DirectedPolicy{g.nodes, repaired})) {
          return fail("removing offending set " + to_string(f) +
                      " does not restore the predicate on " + to_string(e1));
        }
      }

      // Offending union grows monotonically with the edge set.
      ++report.checks_run;
      if (!is_edge_subset(offending_union(off2), offending_union(off1))) {
        return fail("offending union on subset " + to_string(e2) +
                    " escapes offending union on " + to_string(e1));
      }

      // Any bound on the offending union narrows by exactly the removed
      // edges: union(E) subset of X implies union(E\E') subset of X\E'.
      EdgeSet removed;
      std::set_difference(e1.begin(), e1.end(), e2.begin(), e2.end(),
                          std::inserter(removed, removed.end()));
      EdgeSet x_bound = offending_union(off1);
      for (const Edge& e : e1) {
        if (rng() % 2 == 0) x_bound.insert(e);
      }
      EdgeSet narrowed;
      std::set_difference(x_bound.begin(), x_bound.end(), removed.begin(),
                          removed.end(), std::inserter(narrowed, narrowed.end()));
      ++report.checks_run;
      if (!is_edge_subset(offending_union(off2), narrowed)) {
        return fail("offending union on " + to_string(e2) +
                    " escapes the narrowed bound from " + to_string(e1));
      }
    }
  }

  report.passed = true;
  return report;
}

}  // namespace statepol
