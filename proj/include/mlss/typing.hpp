#ifndef MLSS_TYPING_HPP
#define MLSS_TYPING_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "mlss/formula.hpp"

namespace mlss {

// Normal form of a level expression: base + offset where the base is either
// a level variable or the constant 0.
struct LevelExpr {
  std::optional<std::string> var; // nullopt => constant
  long offset = 0;

  static LevelExpr constant(long n) { return {std::nullopt, n}; }
  static LevelExpr of(std::string v, long off = 0) {
    return {std::move(v), off};
  }
  LevelExpr succ() const { return {var, offset + 1}; }
};

struct LevelConstraint {
  LevelExpr lhs, rhs;
  std::string origin; // pretty form of the atom or term that produced it
};

struct ConstraintGen {
  std::vector<LevelConstraint> constraints;
  std::map<Term, LevelExpr> term_level; // one entry per subterm of the formula
};

// Syntax-directed constraint generation. Level variables: `v:<name>` per
// formula variable, `e:<tag>` per flexible Empty occurrence, `s:<k>` fresh
// for the l = S i encoding of l != 0. A pinned Empty(n) has level n+1.
ConstraintGen generate_constraints(const Formula &f,
                                   const std::set<unsigned> &flexible_tags);

struct LevelEnv {
  std::map<std::string, long> var_levels;   // formula variable -> level
  std::map<unsigned, long> empty_levels;    // flexible empty tag -> level tag value
};

struct Untypeable {
  std::string reason;
};

// Minimum assignment for the constraints, or Untypeable on an offset cycle
// or constant conflict. The result is pointwise minimal among solutions.
std::variant<std::map<std::string, long>, Untypeable>
solve_min(const std::vector<LevelConstraint> &constraints);

struct Inference {
  LevelEnv env;
  std::set<Term> urelems;             // subterms with level 0
  std::map<Term, long> term_levels;   // every subterm's level under env
};

std::variant<Inference, Untypeable>
infer(const Formula &f, const std::set<unsigned> &flexible_tags = {});

// Independent re-evaluation of the typing rules: computes term levels
// bottom-up from the given assignments and checks every atom. Used as the
// oracle for inference soundness and for the expansion-invariance check.
bool type_checks(const Formula &f, const std::map<std::string, long> &var_levels,
                 const std::map<unsigned, long> &empty_levels);
bool type_checks(const std::vector<Formula> &fs,
                 const std::map<std::string, long> &var_levels,
                 const std::map<unsigned, long> &empty_levels);

} // namespace mlss

#endif
