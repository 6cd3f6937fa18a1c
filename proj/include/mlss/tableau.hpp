#ifndef MLSS_TABLEAU_HPP
#define MLSS_TABLEAU_HPP

#include <optional>
#include <string>
#include <vector>

#include "mlss/branch.hpp"

namespace mlss {

// Stable rule identifiers; these are the vocabulary of certificates.
namespace rules {
inline constexpr const char *prop_and = "prop.and";
inline constexpr const char *prop_nor = "prop.nor";
inline constexpr const char *prop_or_neg_l = "prop.or-neg-l";
inline constexpr const char *prop_or_neg_r = "prop.or-neg-r";
inline constexpr const char *prop_nand_l = "prop.nand-l";
inline constexpr const char *prop_nand_r = "prop.nand-r";
inline constexpr const char *prop_neg_neg = "prop.neg-neg";
inline constexpr const char *single_intro = "single.intro";
inline constexpr const char *single_mem_elim = "single.mem-elim";
inline constexpr const char *single_nmem_elim = "single.nmem-elim";
inline constexpr const char *union_nmem_elim = "union.nmem-elim";
inline constexpr const char *union_mem_intro_l = "union.mem-intro-l";
inline constexpr const char *union_mem_intro_r = "union.mem-intro-r";
inline constexpr const char *union_mem_elim_l = "union.mem-elim-l";
inline constexpr const char *union_mem_elim_r = "union.mem-elim-r";
inline constexpr const char *union_nmem_intro = "union.nmem-intro";
inline constexpr const char *inter_mem_elim = "inter.mem-elim";
inline constexpr const char *inter_mem_intro = "inter.mem-intro";
inline constexpr const char *inter_nmem_intro_l = "inter.nmem-intro-l";
inline constexpr const char *inter_nmem_intro_r = "inter.nmem-intro-r";
inline constexpr const char *inter_nmem_elim_l = "inter.nmem-elim-l";
inline constexpr const char *inter_nmem_elim_r = "inter.nmem-elim-r";
inline constexpr const char *diff_mem_elim = "diff.mem-elim";
inline constexpr const char *diff_mem_intro = "diff.mem-intro";
inline constexpr const char *diff_nmem_intro_l = "diff.nmem-intro-l";
inline constexpr const char *diff_nmem_intro_r = "diff.nmem-intro-r";
inline constexpr const char *diff_nmem_elim_l = "diff.nmem-elim-l";
inline constexpr const char *diff_nmem_elim_r = "diff.nmem-elim-r";
inline constexpr const char *eq_subst_lr = "eq.subst-lr";
inline constexpr const char *eq_subst_rl = "eq.subst-rl";
inline constexpr const char *eq_neq_intro = "eq.neq-intro";
inline constexpr const char *branch_or = "branch.or";
inline constexpr const char *branch_nand = "branch.nand";
inline constexpr const char *branch_union = "branch.union";
inline constexpr const char *branch_inter = "branch.inter";
inline constexpr const char *branch_diff = "branch.diff";
inline constexpr const char *branch_witness = "branch.witness";
} // namespace rules

struct LinearStep {
  std::string rule;
  std::vector<Formula> premises;    // members of the branch
  std::vector<Formula> conclusions; // at least one not yet in the branch
};

struct BranchStep {
  std::string rule;
  std::vector<Formula> premises;
  std::vector<std::vector<Formula>> alternatives; // mutually exclusive, two
  std::optional<std::string> fresh_witness;       // witness rule only
};

struct TypedMode {
  std::set<Term> urelems; // blocks the witness rule on these terms
};

struct ExpandConfig {
  // The double-negation rule is part of the calculus; disabling it
  // reproduces the saturated-open counterexample of the original rule set.
  bool double_negation = true;
  const TypedMode *typed = nullptr;
};

// All applicable linear rule instances in deterministic priority order:
// propositional, Single, union/inter/diff, equality.
std::vector<LinearStep> linear_expansions(const Branch &b,
                                          const ExpandConfig &cfg = {});

// All applicable, non-subsumed branching rule instances; cuts before the
// witness rule.
std::vector<BranchStep> branching_expansions(const Branch &b,
                                             const ExpandConfig &cfg = {});

bool is_lin_sat(const Branch &b, const ExpandConfig &cfg = {});
bool is_sat(const Branch &b, const ExpandConfig &cfg = {});

} // namespace mlss

#endif
