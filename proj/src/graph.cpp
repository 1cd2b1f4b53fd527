#include "statepol/graph.hpp"

#include <algorithm>
#include <sstream>

namespace statepol {

namespace {

bool endpoints_declared(const EdgeSet& edges, const NodeSet& nodes) {
  return std::all_of(edges.begin(), edges.end(), [&](const Edge& e) {
    return nodes.count(e.src) != 0 && nodes.count(e.dst) != 0;
  });
}

}  // namespace

bool syntactically_valid(const DirectedPolicy& g) {
  return endpoints_declared(g.edges, g.nodes);
}

bool syntactically_valid(const StatefulPolicy& t) {
  return endpoints_declared(t.flows, t.nodes) &&
         std::includes(t.flows.begin(), t.flows.end(), t.stateful.begin(),
                       t.stateful.end());
}

EdgeSet backflows(const EdgeSet& edges) {
  EdgeSet reversed;
  for (const Edge& e : edges) {
    reversed.insert(Edge{e.dst, e.src});
  }
  return reversed;
}

DirectedPolicy alpha(const StatefulPolicy& t) {
  if (!syntactically_valid(t)) {
    throw std::invalid_argument("alpha: stateful policy is syntactically invalid");
  }
  DirectedPolicy g{t.nodes, t.flows};
  for (const Edge& e : t.stateful) {
    g.edges.insert(e);
    g.edges.insert(Edge{e.dst, e.src});
  }
  return g;
}

EdgeSet new_backflows(const StatefulPolicy& t) {
  if (!syntactically_valid(t)) {
    throw std::invalid_argument(
        "new_backflows: stateful policy is syntactically invalid");
  }
  EdgeSet fresh;
  for (const Edge& e : backflows(t.stateful)) {
    if (t.flows.count(e) == 0) {
      fresh.insert(e);
    }
  }
  return fresh;
}

StatefulValidation validate_stateful_against_policy(const StatefulPolicy& t,
                                                    const DirectedPolicy& g) {
  StatefulValidation result;
  if (!syntactically_valid(g)) {
    result.violations.push_back("policy graph syntactically invalid");
  }
  if (!endpoints_declared(t.flows, t.nodes)) {
    result.violations.push_back("flow endpoints not declared as nodes");
  }
  if (t.nodes != g.nodes) {
    result.violations.push_back("node sets differ");
  }
  if (!std::includes(g.edges.begin(), g.edges.end(), t.flows.begin(),
                     t.flows.end())) {
    result.violations.push_back("flows not subset of policy edges");
  }
  if (!std::includes(t.flows.begin(), t.flows.end(), t.stateful.begin(),
                     t.stateful.end())) {
    result.violations.push_back("stateful not subset of flows");
  }
  result.ok = result.violations.empty();
  return result;
}

std::string to_string(const Edge& e) {
  return "(" + e.src.name() + "," + e.dst.name() + ")";
}

std::string to_string(const EdgeSet& edges) {
  std::ostringstream out;
  out << "{";
  bool first = true;
  for (const Edge& e : edges) {
    if (!first) out << ", ";
    first = false;
    out << to_string(e);
  }
  out << "}";
  return out.str();
}

}  // namespace statepol
