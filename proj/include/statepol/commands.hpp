#ifndef STATEPOL_COMMANDS_HPP
#define STATEPOL_COMMANDS_HPP

#include <cstddef>
#include <iosfwd>
#include <string>

#include "statepol/invariant.hpp"

namespace statepol {

// Exit codes shared by all commands: 0 compliant/success, 1 verdict
// negative, 2 usage or input error, 3 internal self-check failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitNonCompliant = 1;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitInternalError = 3;

struct VerifyOptions {
  std::string policy_path;
  std::string stateful_path;
  std::string json_report_path;  // empty: no file written
};

int cmd_verify(const VerifyOptions& options, std::ostream& out, std::ostream& err);

struct SynthesizeOptions {
  std::string policy_path;
  std::string algorithm = "generate1";  // generate1 | generate2
  std::string order_path;               // empty: document priority or default
  std::string output_path;              // empty: print document to out
  std::string dot_path;                 // empty: skip
  std::string iptables_path;            // empty: skip
};

int cmd_synthesize(const SynthesizeOptions& options, std::ostream& out,
                   std::ostream& err);

struct EmitOptions {
  std::string stateful_path;
  std::string policy_path;    // required when dot output is requested
  std::string dot_path;       // empty: skip
  std::string iptables_path;  // empty: skip
};

int cmd_emit(const EmitOptions& options, std::ostream& out, std::ostream& err);

struct OracleOptions {
  std::string policy_path;
  std::string stateful_path;
  std::size_t oracle_limit = kDefaultOracleLimit;
};

int cmd_oracle(const OracleOptions& options, std::ostream& out, std::ostream& err);

struct CaseStudyOptions {
  unsigned seed = 1;
  std::size_t node_count = 24;
  std::size_t edge_count = 496;
  std::size_t protected_count = 3;
  std::string output_path = "casestudy.policy";
};

int cmd_casestudy(const CaseStudyOptions& options, std::ostream& out,
                  std::ostream& err);

}  // namespace statepol

#endif
