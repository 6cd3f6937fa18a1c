#ifndef MLSS_CERTIFICATE_HPP
#define MLSS_CERTIFICATE_HPP

#include <set>
#include <string>
#include <vector>

#include "mlss/branch.hpp"

namespace mlss {

// Replayable proof tree. Inner nodes record one rule application: for a
// linear rule, `added` is the delta and there is one child; for a branching
// rule the children are `alt` wrapper nodes whose `added` lists are exactly
// the rule's alternatives. Leaves carry the close reason of the accumulated
// branch.
struct CertNode {
  std::optional<CloseReason> close; // set iff leaf
  std::string rule;                 // rule id, or "alt" for alternatives
  std::vector<Formula> added;
  std::vector<CertNode> children;

  bool is_leaf() const { return close.has_value(); }
};

struct Certificate {
  Formula formula;
  bool typed = false;
  CertNode root;
};

std::string certificate_to_json(const Certificate &c);

struct CertificateFormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Throws CertificateFormatError on malformed input.
Certificate certificate_from_json(const std::string &json_text);

struct CheckResult {
  bool accepted = false;
  std::string reason; // node path + first failed check when rejected
};

// Replays the certificate from [f]: every inner node must be a valid rule
// instance (side conditions included, subsumption not re-checked), leaves
// must close the accumulated branch, and branching nodes must cover exactly
// the rule's alternatives. flexible_tags feed the urelement check for
// typed-mode witness nodes.
CheckResult check_certificate(const Formula &f, const Certificate &c,
                              const std::set<unsigned> &flexible_tags = {});

} // namespace mlss

#endif
