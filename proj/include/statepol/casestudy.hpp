#ifndef STATEPOL_CASESTUDY_HPP
#define STATEPOL_CASESTUDY_HPP

#include <cstddef>

#include "statepol/io_format.hpp"

namespace statepol {

/// Defaults reproduce the published evaluation scale: two dozen host
/// groups, roughly five hundred permitted flows, a handful protected.
struct CaseStudyParams {
  unsigned seed = 1;
  std::size_t node_count = 24;
  std::size_t edge_count = 496;
  std::size_t protected_count = 3;
};

/**
 * Synthetic benchmark policy: one outside node ("inet") plus a core of
 * collaborating hosts. The first protected_count hosts carry whitelist
 * invariants admitting every host but never the outside, and no edge
 * from the outside into a protected host is generated, so the policy is
 * valid by construction. Deterministic for a fixed seed. Throws
 * std::invalid_argument when the parameters cannot be met.
 */
PolicyDocument make_case_study_policy(const CaseStudyParams& params);

}  // namespace statepol

#endif
