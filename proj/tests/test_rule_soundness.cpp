#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support/rules_check.hpp"

// The full 1000-instances-per-rule sweep runs in the acceptance binary; the
// unit suite keeps a smaller count per rule for quick feedback.

TEST_CASE("linear rule soundness") {
  for (const auto &[rule, make] : rules_check::linear_makers()) {
    rules_check::Report rep = rules_check::check_linear_rule(rule, make, 200);
    CHECK_MESSAGE(rep.tested == 200, rule << ": only " << rep.tested);
    CHECK_MESSAGE(rep.violations == 0, rule);
  }
}

TEST_CASE("branching rule soundness and mutual exclusivity") {
  for (const auto &[rule, make] : rules_check::branching_makers()) {
    rules_check::Report rep =
        rules_check::check_branching_rule(rule, make, 200);
    CHECK_MESSAGE(rep.tested == 200, rule << ": only " << rep.tested);
    CHECK_MESSAGE(rep.violations == 0, rule);
  }
}
