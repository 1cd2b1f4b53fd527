#include "statepol/casestudy.hpp"

#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace statepol {

namespace {

std::string host_name(std::size_t index, std::size_t width) {
  std::string digits = std::to_string(index);
  while (digits.size() < width) digits.insert(digits.begin(), '0');
  return "h" + digits;
}

}  // namespace

PolicyDocument make_case_study_policy(const CaseStudyParams& params) {
  if (params.node_count < 2) {
    throw std::invalid_argument("infeasible parameters: need at least 2 nodes");
  }
  const std::size_t host_count = params.node_count - 1;
  if (params.protected_count > host_count) {
    throw std::invalid_argument("infeasible parameters: more protected hosts than hosts");
  }

  const std::size_t width = std::to_string(host_count).size();
  const NodeId inet{"inet"};
  std::vector<NodeId> hosts;
  hosts.reserve(host_count);
  for (std::size_t i = 1; i <= host_count; ++i) {
    hosts.emplace_back(host_name(i, width));
  }

  NodeSet protected_hosts(hosts.begin(), hosts.begin() + params.protected_count);

  PolicyDocument doc;
  doc.graph.nodes.insert(inet);
  doc.graph.nodes.insert(hosts.begin(), hosts.end());

  // Candidate flows: every ordered pair except self-loops and outside
  // access into a protected host, which the whitelists forbid.
  std::vector<Edge> pool;
  pool.reserve(params.node_count * params.node_count);
  for (const NodeId& src : doc.graph.nodes) {
    for (const NodeId& dst : doc.graph.nodes) {
      if (src == dst) continue;
      if (src == inet && protected_hosts.count(dst) != 0) continue;
      pool.push_back(Edge{src, dst});
    }
  }
  if (params.edge_count > pool.size()) {
    throw std::invalid_argument("infeasible parameters: at most " +
                                std::to_string(pool.size()) + " edges possible");
  }

  std::mt19937 rng(params.seed);
  for (std::size_t i = 0; i < params.edge_count; ++i) {
    const std::size_t j = i + rng() % (pool.size() - i);
    std::swap(pool[i], pool[j]);
    doc.graph.edges.insert(pool[i]);
  }

  NodeSet all_hosts(hosts.begin(), hosts.end());
  for (const NodeId& p : protected_hosts) {
    NodeSet allowed = all_hosts;
    allowed.erase(p);
    doc.invariants.push_back(WhitelistSpec{p, std::move(allowed)});
  }
  return doc;
}

}  // namespace statepol
