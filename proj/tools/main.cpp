#include <iostream>

#include <CLI11.hpp>

#include "statepol/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Verify and synthesize stateful firewall policies against a "
               "directed network security policy"};
  app.require_subcommand(1);

  statepol::VerifyOptions verify_options;
  CLI::App* verify =
      app.add_subcommand("verify", "Check a stateful policy against a policy document");
  verify->add_option("-p,--policy", verify_options.policy_path, "Policy document")
      ->required();
  verify
      ->add_option("-s,--stateful", verify_options.stateful_path,
                   "Stateful policy document")
      ->required();
  verify->add_option("--json", verify_options.json_report_path,
                     "Write the machine-readable report to this path");

  statepol::SynthesizeOptions synth_options;
  CLI::App* synthesize =
      app.add_subcommand("synthesize", "Compute a maximal stateful policy");
  synthesize->add_option("-p,--policy", synth_options.policy_path, "Policy document")
      ->required();
  synthesize
      ->add_option("-a,--algorithm", synth_options.algorithm,
                   "Synthesis algorithm (default generate1)")
      ->check(CLI::IsMember({"generate1", "generate2"}));
  synthesize->add_option("--order", synth_options.order_path,
                         "Priority list file: JSON array of [src, dst] pairs");
  synthesize->add_option("-o,--output", synth_options.output_path,
                         "Stateful document output path (default: stdout)");
  synthesize->add_option("--dot", synth_options.dot_path, "Write a DOT rendering");
  synthesize->add_option("--iptables", synth_options.iptables_path,
                         "Write firewall rules");

  statepol::EmitOptions emit_options;
  CLI::App* emit =
      app.add_subcommand("emit", "Render a stateful policy as DOT or firewall rules");
  emit->add_option("-s,--stateful", emit_options.stateful_path,
                   "Stateful policy document")
      ->required();
  emit->add_option("-p,--policy", emit_options.policy_path,
                   "Policy document (required for DOT output)");
  emit->add_option("--dot", emit_options.dot_path, "DOT output path");
  emit->add_option("--iptables", emit_options.iptables_path,
                   "Firewall rules output path");

  statepol::OracleOptions oracle_options;
  CLI::App* oracle = app.add_subcommand(
      "oracle", "Exhaustive reference checks for small instances");
  oracle->add_option("-p,--policy", oracle_options.policy_path, "Policy document")
      ->required();
  oracle
      ->add_option("-s,--stateful", oracle_options.stateful_path,
                   "Stateful policy document")
      ->required();
  oracle->add_option("--oracle-limit", oracle_options.oracle_limit,
                     "Edge cap for the exhaustive enumerations (default 16)");

  statepol::CaseStudyOptions case_options;
  CLI::App* casestudy = app.add_subcommand(
      "casestudy", "Generate and benchmark a synthetic policy");
  casestudy->add_option("--seed", case_options.seed, "Generator seed (default 1)");
  casestudy->add_option("-n,--nodes", case_options.node_count,
                        "Node count including the outside node (default 24)");
  casestudy->add_option("-k,--edges", case_options.edge_count,
                        "Edge count (default 496)");
  casestudy->add_option("--protected", case_options.protected_count,
                        "Number of whitelist-protected hosts (default 3)");
  casestudy->add_option("-o,--output", case_options.output_path,
                        "Policy output path (default casestudy.policy)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return statepol::kExitInputError;
  }

  if (verify->parsed()) return statepol::cmd_verify(verify_options, std::cout, std::cerr);
  if (synthesize->parsed()) {
    return statepol::cmd_synthesize(synth_options, std::cout, std::cerr);
  }
  if (emit->parsed()) return statepol::cmd_emit(emit_options, std::cout, std::cerr);
  if (oracle->parsed()) return statepol::cmd_oracle(oracle_options, std::cout, std::cerr);
  if (casestudy->parsed()) {
    return statepol::cmd_casestudy(case_options, std::cout, std::cerr);
  }
  return statepol::kExitInputError;
}
