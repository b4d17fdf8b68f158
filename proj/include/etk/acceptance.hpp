#ifndef ETK_ACCEPTANCE_HPP
#define ETK_ACCEPTANCE_HPP

#include <string>
#include <vector>

namespace etk {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  bool ran = false;
  std::string detail;
};

// Built-in verification suite.  Criteria 1-8 and 10 are fast; criterion 9
// (time-domain hierarchy cross-validation) runs minutes and is gated behind
// include_oracle.  `only` restricts to a single criterion by name ("" = all).
std::vector<CriterionResult> run_acceptance(bool include_oracle,
                                            const std::string& only = "");

// Names accepted by `only`, in criterion order.
std::vector<std::string> criterion_names();

}  // namespace etk

#endif
