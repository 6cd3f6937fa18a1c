#ifndef MLSS_SOLVER_HPP
#define MLSS_SOLVER_HPP

#include <cstdint>
#include <map>
#include <variant>

#include "mlss/certificate.hpp"
#include "mlss/parser.hpp"
#include "mlss/semantics.hpp"
#include "mlss/tableau.hpp"
#include "mlss/typing.hpp"

namespace mlss {

struct SolveStats {
  std::uint64_t branches_explored = 0;
  std::uint64_t rule_applications = 0;
  std::uint64_t max_branch_size = 0;
  std::uint64_t bound = 0; // 2*|subfms| + 16*|subterms|^4
};

struct SolveOptions {
  bool typed = true;
  std::uint64_t step_budget = 0; // 0: use the branch-size bound
  bool debug_invariants = false;
  // test hooks
  bool double_negation = true;
  bool check_typing_invariance = false;
};

struct Unsat {
  Certificate certificate;
};

struct Sat {
  Valuation model;
  Branch witness_branch;
};

using Verdict = std::variant<Unsat, Sat>;

// Raised when a runtime self-check fails; always an implementation bug,
// never a user error.
struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

// 2*|subfms(f)| + 16*|subterms(f)|^4
std::uint64_t branch_size_bound(const Formula &f);

class Solver {
public:
  explicit Solver(SolveOptions opts = {}) : opts_(opts) {}

  // Untypeable is only possible in typed mode.
  std::variant<Verdict, Untypeable>
  decide(const Formula &f, const std::set<unsigned> &flexible_tags = {});

  // The four-equation branch procedure; Closed carries the proof tree,
  // OpenSaturated the saturated branch.
  struct Closed {
    CertNode node;
  };
  struct OpenSaturated {
    Branch branch;
  };
  std::variant<Closed, OpenSaturated> decide_branch(const Branch &b);

  const SolveStats &stats() const { return stats_; }

private:
  std::variant<Closed, OpenSaturated> run(const Branch &b,
                                          std::uint64_t path_steps);
  void note_branch(const Branch &b);

  SolveOptions opts_;
  SolveStats stats_;
  TypedMode typed_mode_;
  std::optional<Inference> inference_;
  std::map<std::string, long> path_var_levels_; // typed-mode invariance check
};

struct BranchGraph {
  std::set<Term> verts;
  std::set<std::pair<Term, Term>> arcs; // (s, t) iff `s in t` in branch
};

// b must be open and saturated.
BranchGraph build_bgraph(const Branch &b);

// Realisation of all vertex terms along the acyclic membership graph. When
// typed info is given, urelement terms get distinguished values per
// equality class.
std::map<Term, HFSet> realise_all(const BranchGraph &g, const Branch &b,
                                  const Inference *typed);

// Model from an open saturated branch; runs the literal- and term-level
// coherence checks and throws InternalError if any fails.
Valuation extract_model(const Branch &b, const Inference *typed);

} // namespace mlss

#endif
