#include "statepol/io_format.hpp"

#include <algorithm>
#include <initializer_list>
#include <json.hpp>

namespace statepol {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void parse_fail(const std::string& message) { throw ParseError(message); }

void reject_unknown_fields(const json& obj, std::initializer_list<const char*> allowed,
                           const std::string& path) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (std::none_of(allowed.begin(), allowed.end(),
                     [&](const char* k) { return it.key() == k; })) {
      parse_fail(path + ": unknown field: " + it.key());
    }
  }
}

const json& require_field(const json& obj, const char* key, const std::string& path) {
  if (!obj.contains(key)) parse_fail(path + ": missing field: " + key);
  return obj.at(key);
}

std::string get_string(const json& value, const std::string& path) {
  if (!value.is_string()) parse_fail(path + ": expected string");
  return value.get<std::string>();
}

NodeId get_node_name(const json& value, const std::string& path) {
  std::string name = get_string(value, path);
  if (name.empty()) parse_fail(path + ": node name must be non-empty");
  return NodeId(std::move(name));
}

Edge get_edge_pair(const json& value, const std::string& path) {
  if (!value.is_array() || value.size() != 2) {
    parse_fail(path + ": expected [src, dst] pair");
  }
  return Edge{get_node_name(value[0], path), get_node_name(value[1], path)};
}

NodeSet get_node_array(const json& value, const std::string& path) {
  if (!value.is_array()) parse_fail(path + ": expected array");
  NodeSet out;
  for (std::size_t i = 0; i < value.size(); ++i) {
    out.insert(get_node_name(value[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

InvariantSpec parse_invariant_spec(const json& item, const std::string& path) {
  if (!item.is_object()) parse_fail(path + ": expected object");
  const std::string kind = get_string(require_field(item, "kind", path), path + ".kind");

  if (kind == "whitelist") {
    reject_unknown_fields(item, {"kind", "protected", "allowed"}, path);
    return WhitelistSpec{
        get_node_name(require_field(item, "protected", path), path + ".protected"),
        get_node_array(require_field(item, "allowed", path), path + ".allowed")};
  }
  if (kind == "sink") {
    reject_unknown_fields(item, {"kind", "sinks"}, path);
    return SinkSpec{get_node_array(require_field(item, "sinks", path), path + ".sinks")};
  }
  if (kind == "confidentiality") {
    reject_unknown_fields(item, {"kind", "levels", "trusted"}, path);
    ConfidentialitySpec spec;
    if (item.contains("levels")) {
      const json& levels = item.at("levels");
      if (!levels.is_object()) parse_fail(path + ".levels: expected object");
      for (auto it = levels.begin(); it != levels.end(); ++it) {
        if (it.key().empty()) parse_fail(path + ".levels: node name must be non-empty");
        if (!it.value().is_number_unsigned()) {
          parse_fail(path + ".levels." + it.key() + ": expected non-negative integer");
        }
        spec.levels.emplace(NodeId(it.key()), it.value().get<unsigned>());
      }
    }
    if (item.contains("trusted")) {
      spec.trusted = get_node_array(item.at("trusted"), path + ".trusted");
    }
    return spec;
  }
  if (kind == "transitive_no_access") {
    reject_unknown_fields(item, {"kind", "forbidden"}, path);
    const json& pairs = require_field(item, "forbidden", path);
    if (!pairs.is_array()) parse_fail(path + ".forbidden: expected array");
    TransitiveNoAccessSpec spec;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      Edge pair = get_edge_pair(pairs[i], path + ".forbidden[" + std::to_string(i) + "]");
      spec.forbidden.emplace(pair.src, pair.dst);
    }
    return spec;
  }
  parse_fail(path + ": unknown invariant kind: " + kind);
}

json parse_root_object(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    parse_fail(e.what());
  }
  if (!root.is_object()) parse_fail("document root must be an object");
  return root;
}

void require_version_1(const json& root) {
  const json& version = require_field(root, "version", "document");
  if (!version.is_number_integer()) parse_fail("version: expected integer");
  if (version.get<long long>() != 1) {
    parse_fail("version unsupported: " + version.dump());
  }
}

NodeSet parse_node_list(const json& value, const char* key,
                        std::vector<std::string>& warnings) {
  if (!value.is_array()) parse_fail(std::string(key) + ": expected array");
  NodeSet out;
  for (std::size_t i = 0; i < value.size(); ++i) {
    const std::string path = std::string(key) + "[" + std::to_string(i) + "]";
    NodeId id = get_node_name(value[i], path);
    if (!out.insert(id).second) warnings.push_back("duplicate node: " + id.name());
  }
  return out;
}

EdgeSet parse_edge_list(const json& value, const char* key, const NodeSet& nodes,
                        std::vector<std::string>& warnings) {
  if (!value.is_array()) parse_fail(std::string(key) + ": expected array");
  EdgeSet out;
  for (std::size_t i = 0; i < value.size(); ++i) {
    const std::string path = std::string(key) + "[" + std::to_string(i) + "]";
    Edge e = get_edge_pair(value[i], path);
    if (nodes.count(e.src) == 0) parse_fail(path + ": unknown node: " + e.src.name());
    if (nodes.count(e.dst) == 0) parse_fail(path + ": unknown node: " + e.dst.name());
    if (!out.insert(e).second) warnings.push_back("duplicate edge: " + to_string(e));
  }
  return out;
}

ordered_json names_json(const NodeSet& nodes) {
  ordered_json arr = ordered_json::array();
  for (const NodeId& n : nodes) arr.push_back(n.name());
  return arr;
}

ordered_json pairs_json(const EdgeSet& edges) {
  ordered_json arr = ordered_json::array();
  for (const Edge& e : edges) arr.push_back({e.src.name(), e.dst.name()});
  return arr;
}

ordered_json spec_json(const InvariantSpec& spec) {
  ordered_json j;
  if (const auto* w = std::get_if<WhitelistSpec>(&spec)) {
    j["kind"] = "whitelist";
    j["protected"] = w->protected_node.name();
    j["allowed"] = names_json(w->allowed);
  } else if (const auto* s = std::get_if<SinkSpec>(&spec)) {
    j["kind"] = "sink";
    j["sinks"] = names_json(s->sinks);
  } else if (const auto* c = std::get_if<ConfidentialitySpec>(&spec)) {
    j["kind"] = "confidentiality";
    ordered_json levels = ordered_json::object();
    for (const auto& [node, level] : c->levels) levels[node.name()] = level;
    j["levels"] = std::move(levels);
    j["trusted"] = names_json(c->trusted);
  } else {
    const auto& t = std::get<TransitiveNoAccessSpec>(spec);
    j["kind"] = "transitive_no_access";
    ordered_json pairs = ordered_json::array();
    for (const auto& [a, c] : t.forbidden) pairs.push_back({a.name(), c.name()});
    j["forbidden"] = std::move(pairs);
  }
  return j;
}

}  // namespace

ParsedPolicy parse_policy(const std::string& text) {
  const json root = parse_root_object(text);
  reject_unknown_fields(root, {"version", "nodes", "edges", "invariants", "priority"},
                        "document");
  require_version_1(root);

  ParsedPolicy out;
  out.document.graph.nodes = parse_node_list(require_field(root, "nodes", "document"),
                                             "nodes", out.warnings);
  out.document.graph.edges = parse_edge_list(require_field(root, "edges", "document"),
                                             "edges", out.document.graph.nodes,
                                             out.warnings);

  if (root.contains("invariants")) {
    const json& specs = root.at("invariants");
    if (!specs.is_array()) parse_fail("invariants: expected array");
    for (std::size_t i = 0; i < specs.size(); ++i) {
      const std::string path = "invariants[" + std::to_string(i) + "]";
      try {
        InvariantSpec spec = parse_invariant_spec(specs[i], path);
        out.invariants.push_back(build_invariant(spec, out.document.graph));
        out.document.invariants.push_back(std::move(spec));
      } catch (const std::invalid_argument& e) {
        parse_fail(path + ": " + e.what());
      }
    }
  }

  if (root.contains("priority")) {
    const json& priority = root.at("priority");
    if (!priority.is_array()) parse_fail("priority: expected array");
    EdgeSet seen;
    for (std::size_t i = 0; i < priority.size(); ++i) {
      const std::string path = "priority[" + std::to_string(i) + "]";
      Edge e = get_edge_pair(priority[i], path);
      if (out.document.graph.edges.count(e) == 0) {
        parse_fail(path + ": edge not in policy: " + to_string(e));
      }
      if (!seen.insert(e).second) {
        parse_fail(path + ": duplicate edge: " + to_string(e));
      }
      out.document.priority.push_back(e);
    }
    out.document.has_priority = true;
  }
  return out;
}

std::string emit_policy(const PolicyDocument& doc) {
  ordered_json j;
  j["version"] = doc.version;
  j["nodes"] = names_json(doc.graph.nodes);
  j["edges"] = pairs_json(doc.graph.edges);
  ordered_json specs = ordered_json::array();
  for (const InvariantSpec& spec : doc.invariants) specs.push_back(spec_json(spec));
  j["invariants"] = std::move(specs);
  if (doc.has_priority) {
    ordered_json pairs = ordered_json::array();
    for (const Edge& e : doc.priority) pairs.push_back({e.src.name(), e.dst.name()});
    j["priority"] = std::move(pairs);
  }
  return j.dump(2) + "\n";
}

ParsedStateful parse_stateful(const std::string& text) {
  const json root = parse_root_object(text);
  reject_unknown_fields(root, {"version", "nodes", "flows", "stateful"}, "document");
  require_version_1(root);

  ParsedStateful out;
  out.policy.nodes = parse_node_list(require_field(root, "nodes", "document"), "nodes",
                                     out.warnings);
  out.policy.flows = parse_edge_list(require_field(root, "flows", "document"), "flows",
                                     out.policy.nodes, out.warnings);
  out.policy.stateful = parse_edge_list(require_field(root, "stateful", "document"),
                                        "stateful", out.policy.nodes, out.warnings);
  return out;
}

std::string emit_stateful(const StatefulPolicy& t) {
  ordered_json j;
  j["version"] = 1;
  j["nodes"] = names_json(t.nodes);
  j["flows"] = pairs_json(t.flows);
  j["stateful"] = pairs_json(t.stateful);
  return j.dump(2) + "\n";
}

EdgePriorityList parse_order(const std::string& text, const DirectedPolicy& g) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    parse_fail(e.what());
  }
  if (!root.is_array()) parse_fail("order: expected array of [src, dst] pairs");

  EdgePriorityList order;
  EdgeSet seen;
  for (std::size_t i = 0; i < root.size(); ++i) {
    const std::string path = "order[" + std::to_string(i) + "]";
    Edge e = get_edge_pair(root[i], path);
    if (g.edges.count(e) == 0) parse_fail(path + ": edge not in policy: " + to_string(e));
    if (!seen.insert(e).second) parse_fail(path + ": duplicate edge: " + to_string(e));
    order.push_back(e);
  }
  return order;
}

std::string emit_dot(const DirectedPolicy& g, const StatefulPolicy& t) {
  const StatefulValidation validation = validate_stateful_against_policy(t, g);
  if (!validation.ok) {
    throw std::invalid_argument("stateful policy does not match policy graph: " +
                                validation.violations.front());
  }
  std::string out = "digraph policy {\n";
  for (const NodeId& n : g.nodes) {
    out += "  \"" + n.name() + "\";\n";
  }
  for (const Edge& e : t.flows) {
    out += "  \"" + e.src.name() + "\" -> \"" + e.dst.name() + "\";\n";
  }
  for (const Edge& e : new_backflows(t)) {
    out += "  \"" + e.src.name() + "\" -> \"" + e.dst.name() + "\" [style=dashed];\n";
  }
  out += "}\n";
  return out;
}

std::string emit_iptables(const StatefulPolicy& t) {
  if (!syntactically_valid(t)) {
    throw std::invalid_argument("stateful policy syntactically invalid");
  }
  std::string out;
  for (const Edge& e : t.stateful) {
    out += "iptables -A INPUT -s " + e.src.name() + " -d " + e.dst.name() +
           " -m conntrack --ctstate NEW -j ACCEPT\n";
  }
  for (const Edge& e : t.flows) {
    if (t.stateful.count(e) != 0) continue;
    out += "iptables -A INPUT -s " + e.src.name() + " -d " + e.dst.name() +
           " -j ACCEPT\n";
  }
  if (!t.stateful.empty()) {
    out += "iptables -A INPUT -m conntrack --ctstate ESTABLISHED -j ACCEPT\n";
  }
  out += "iptables -A INPUT -j DROP\n";
  return out;
}

std::string emit_report(const ComplianceReport& report) {
  ordered_json j;
  j["syntactic_ok"] = report.syntactic_ok;
  j["ifs_ok"] = report.ifs_ok;
  j["acs_efficient_ok"] = report.acs_efficient_ok;
  ordered_json violations = ordered_json::array();
  for (const ReportViolation& v : report.violating_invariants) {
    ordered_json item;
    item["invariant"] = v.invariant;
    item["witness"] = pairs_json(v.witness);
    item["excess"] = pairs_json(v.excess);
    violations.push_back(std::move(item));
  }
  j["violating_invariants"] = std::move(violations);
  j["reasons"] = report.reasons;
  j["overall"] = report.overall;
  return j.dump(2) + "\n";
}

std::string render_report_text(const ComplianceReport& report) {
  std::string out;
  out += std::string("syntactic check: ") + (report.syntactic_ok ? "ok" : "failed") + "\n";
  out += std::string("information flow invariants: ") +
         (report.ifs_ok ? "ok" : "violated") + "\n";
  out += std::string("access control side effects: ") +
         (report.acs_efficient_ok ? "none" : "not verifiable as side-effect-free") + "\n";
  for (const ReportViolation& v : report.violating_invariants) {
    out += "  " + v.invariant + ": witness " + to_string(v.witness) + ", excess " +
           to_string(v.excess) + "\n";
  }
  for (const std::string& reason : report.reasons) {
    out += "reason: " + reason + "\n";
  }
  out += std::string("overall: ") + (report.overall ? "compliant" : "not compliant") + "\n";
  return out;
}

}  // namespace statepol
