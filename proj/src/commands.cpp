#include "statepol/commands.hpp"

#include <chrono>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "statepol/casestudy.hpp"
#include "statepol/compliance.hpp"
#include "statepol/invariant_library.hpp"
#include "statepol/io_format.hpp"
#include "statepol/synthesis.hpp"

namespace statepol {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
  if (!out) throw std::runtime_error("cannot write file: " + path);
}

void print_warnings(const std::vector<std::string>& warnings, std::ostream& err) {
  for (const std::string& w : warnings) err << "warning: " << w << "\n";
}

int input_error(std::ostream& err, const std::string& message) {
  err << "error: " << message << "\n";
  return kExitInputError;
}

}  // namespace

int cmd_verify(const VerifyOptions& options, std::ostream& out, std::ostream& err) {
  try {
    ParsedPolicy policy = parse_policy(read_file(options.policy_path));
    ParsedStateful stateful = parse_stateful(read_file(options.stateful_path));
    print_warnings(policy.warnings, err);
    print_warnings(stateful.warnings, err);

    const ComplianceReport report =
        verify(stateful.policy, policy.document.graph, policy.invariants);
    out << render_report_text(report);
    if (!options.json_report_path.empty()) {
      write_file(options.json_report_path, emit_report(report));
    }
    return report.overall ? kExitOk : kExitNonCompliant;
  } catch (const std::exception& e) {
    return input_error(err, e.what());
  }
}

int cmd_synthesize(const SynthesizeOptions& options, std::ostream& out,
                   std::ostream& err) {
  try {
    ParsedPolicy policy = parse_policy(read_file(options.policy_path));
    print_warnings(policy.warnings, err);
    const DirectedPolicy& g = policy.document.graph;

    EdgePriorityList order;
    if (!options.order_path.empty()) {
      order = parse_order(read_file(options.order_path), g);
    } else if (policy.document.has_priority) {
      order = policy.document.priority;
    } else {
      order = default_order(g);
    }

    StatefulPolicy result;
    if (options.algorithm == "generate1") {
      result = generate1(g, policy.invariants, order);
    } else if (options.algorithm == "generate2") {
      result = generate2(g, policy.invariants, order);
    } else {
      return input_error(err, "unknown algorithm: " + options.algorithm);
    }

    const ComplianceReport report = verify(result, g, policy.invariants);
    if (!report.overall) {
      err << "internal error: synthesized policy failed verification\n";
      err << render_report_text(report);
      return kExitInternalError;
    }

    const std::string document = emit_stateful(result);
    if (options.output_path.empty()) {
      out << document;
    } else {
      write_file(options.output_path, document);
    }
    if (!options.dot_path.empty()) {
      write_file(options.dot_path, emit_dot(g, result));
    }
    if (!options.iptables_path.empty()) {
      write_file(options.iptables_path, emit_iptables(result));
    }
    return kExitOk;
  } catch (const std::exception& e) {
    return input_error(err, e.what());
  }
}

int cmd_emit(const EmitOptions& options, std::ostream&, std::ostream& err) {
  try {
    if (options.dot_path.empty() && options.iptables_path.empty()) {
      return input_error(err, "nothing to emit: pass a dot or iptables output path");
    }
    ParsedStateful stateful = parse_stateful(read_file(options.stateful_path));
    print_warnings(stateful.warnings, err);

    if (!options.dot_path.empty()) {
      if (options.policy_path.empty()) {
        return input_error(err, "dot output requires the policy file");
      }
      ParsedPolicy policy = parse_policy(read_file(options.policy_path));
      print_warnings(policy.warnings, err);
      write_file(options.dot_path, emit_dot(policy.document.graph, stateful.policy));
    }
    if (!options.iptables_path.empty()) {
      write_file(options.iptables_path, emit_iptables(stateful.policy));
    }
    return kExitOk;
  } catch (const std::exception& e) {
    return input_error(err, e.what());
  }
}

int cmd_oracle(const OracleOptions& options, std::ostream& out, std::ostream& err) {
  try {
    ParsedPolicy policy = parse_policy(read_file(options.policy_path));
    ParsedStateful stateful = parse_stateful(read_file(options.stateful_path));
    print_warnings(policy.warnings, err);
    print_warnings(stateful.warnings, err);
    const DirectedPolicy& g = policy.document.graph;
    const StatefulPolicy& t = stateful.policy;
    const InvariantList& invariants = policy.invariants;

    for (const SecurityInvariant& m : invariants) {
      if (!m.evaluate(g)) {
        err << "policy not valid: " << m.description()
            << " fails on the policy graph\n";
        return kExitNonCompliant;
      }
    }
    const StatefulValidation validation = validate_stateful_against_policy(t, g);
    if (!validation.ok) {
      for (const std::string& v : validation.violations) err << v << "\n";
      return kExitNonCompliant;
    }

    const bool all_subsets =
        oracle::check_acs_all_subsets(t, invariants, options.oracle_limit);
    const bool union_bound = oracle::check_acs_union_bound(t, invariants);
    const bool singletons = oracle::check_acs_singletons(t, invariants);
    const bool efficient = check_acs_efficient(t, invariants).ok;

    const DirectedPolicy interpreted = alpha(t);
    bool agreement = true;
    for (const SecurityInvariant& m : invariants) {
      if (m.offending(interpreted) !=
          offending_flows_bruteforce(m, interpreted, options.oracle_limit)) {
        agreement = false;
        break;
      }
    }
    const bool consistent = (!efficient || all_subsets) &&
                            (!all_subsets || (union_bound && singletons));

    auto verdict = [](bool ok) { return ok ? "pass" : "fail"; };
    out << "all backflow subsets tolerated: " << verdict(all_subsets) << "\n";
    out << "offending union within backflows: " << verdict(union_bound) << "\n";
    out << "single backflows side-effect-free: " << verdict(singletons) << "\n";
    out << "efficient criterion: " << verdict(efficient) << "\n";
    out << "fast offending agrees with enumeration: " << verdict(agreement) << "\n";
    out << "implication chain consistent: " << (consistent ? "yes" : "NO") << "\n";

    const bool all_ok = all_subsets && union_bound && singletons && efficient &&
                        agreement && consistent;
    return all_ok ? kExitOk : kExitNonCompliant;
  } catch (const std::exception& e) {
    return input_error(err, e.what());
  }
}

int cmd_casestudy(const CaseStudyOptions& options, std::ostream& out,
                  std::ostream& err) {
  try {
    CaseStudyParams params;
    params.seed = options.seed;
    params.node_count = options.node_count;
    params.edge_count = options.edge_count;
    params.protected_count = options.protected_count;
    const PolicyDocument doc = make_case_study_policy(params);
    write_file(options.output_path, emit_policy(doc));

    const InvariantList invariants = build_invariants(doc.invariants, doc.graph);
    const EdgePriorityList order = default_order(doc.graph);

    using Clock = std::chrono::steady_clock;
    auto ms = [](Clock::duration d) {
      return std::chrono::duration_cast<std::chrono::milliseconds>(d).count();
    };

    const auto t0 = Clock::now();
    const StatefulPolicy first = generate1(doc.graph, invariants, order);
    const auto t1 = Clock::now();
    const StatefulPolicy second = generate2(doc.graph, invariants, order);
    const auto t2 = Clock::now();
    const ComplianceReport report = verify(first, doc.graph, invariants);
    const auto t3 = Clock::now();

    out << "nodes: " << doc.graph.nodes.size() << "\n";
    out << "edges: " << doc.graph.edges.size() << "\n";
    out << "invariants: " << doc.invariants.size() << "\n";
    out << "generate1: " << ms(t1 - t0) << " ms, " << first.stateful.size()
        << " stateful flows\n";
    out << "generate2: " << ms(t2 - t1) << " ms, " << second.stateful.size()
        << " stateful flows\n";
    out << "generate1 equals generate2: " << (first == second ? "yes" : "no") << "\n";
    out << "verify: " << ms(t3 - t2) << " ms, "
        << (report.overall ? "compliant" : "not compliant") << "\n";
    out << "policy written to " << options.output_path << "\n";

    if (!report.overall) {
      err << "internal error: generated policy failed verification\n";
      return kExitInternalError;
    }
    return kExitOk;
  } catch (const std::exception& e) {
    return input_error(err, e.what());
  }
}

}  // namespace statepol
