#ifndef MLSS_BRANCH_HPP
#define MLSS_BRANCH_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "mlss/formula.hpp"

namespace mlss {

// Why a branch is closed. Cited formulas are members of the branch.
struct CloseReason {
  enum Kind { Contradiction, MemEmpty, NeqRefl, MemberCycle } kind;
  std::vector<Formula> formulas;
};

// Tableau branch: the initial formula plus everything derived from it, with
// caches for membership lookup and the positive-membership digraph.
class Branch {
public:
  explicit Branch(Formula initial);

  // New branch with `delta` appended (formulas already present are kept out
  // of the stored sequence).
  Branch extended(const std::vector<Formula> &delta) const;

  // Insertion order; index 0 is the initial formula.
  const std::vector<Formula> &formulas() const { return fms_; }
  const Formula &initial() const { return fms_.front(); }
  std::size_t size() const { return present_.size(); }

  bool contains(const Formula &f) const { return present_.count(f) != 0; }
  bool contains_lit(bool positive, const Atom &a) const;

  const std::set<Term> &initial_subterms() const { return initial_subterms_; }
  const std::set<std::string> &variables() const { return vars_; }

  // Literals of the branch in insertion order.
  const std::vector<Literal> &literals() const { return lits_; }

  // Positive-membership digraph: edge s -> t iff (s in t) is in the branch.
  const std::map<Term, std::set<Term>> &mem_edges_out() const {
    return mem_out_;
  }
  const std::map<Term, std::set<Term>> &mem_edges_in() const {
    return mem_in_;
  }

  std::set<std::string> wits() const;  // vars(b) - vars(initial)
  std::set<std::string> pwits() const; // witnesses free of equality links
  std::set<Term> subterms_prime() const;

  // Fresh witness name for this expansion path: `_w<k>` with a per-path
  // counter, bumped past any colliding name.
  std::string fresh_witness_name() const;

  std::optional<CloseReason> close_reason() const;
  bool is_closed() const { return close_reason().has_value(); }

private:
  Branch() = default;

  std::vector<Formula> fms_;
  std::set<Formula> present_;
  std::vector<Literal> lits_;
  std::set<std::string> vars_;
  std::set<std::string> initial_vars_;
  std::set<Term> initial_subterms_;
  std::map<Term, std::set<Term>> mem_out_, mem_in_;
  unsigned wit_counter_ = 0;

  void index(const Formula &f);
  friend class BranchBuilder;
};

} // namespace mlss

#endif
