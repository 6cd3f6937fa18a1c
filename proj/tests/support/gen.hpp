// Deterministic random formula/term generators shared by the test suites.
#ifndef TESTS_SUPPORT_GEN_HPP
#define TESTS_SUPPORT_GEN_HPP

#include <random>
#include <string>
#include <vector>

#include "mlss/formula.hpp"

namespace gen {

using Rng = std::mt19937;

inline std::vector<std::string> var_names(unsigned n) {
  static const char *names[] = {"x", "y", "z", "u", "v", "w"};
  std::vector<std::string> out;
  for (unsigned i = 0; i < n && i < 6; ++i)
    out.push_back(names[i]);
  return out;
}

inline unsigned pick(Rng &rng, unsigned n) {
  return std::uniform_int_distribution<unsigned>(0, n - 1)(rng);
}

inline mlss::Term term(Rng &rng, const std::vector<std::string> &vars,
                       unsigned depth) {
  unsigned choice = depth == 0 ? pick(rng, 2) : pick(rng, 6);
  switch (choice) {
  case 0:
    return mlss::Term::var(vars[pick(rng, static_cast<unsigned>(vars.size()))]);
  case 1:
    return mlss::Term::empty(pick(rng, 3));
  case 2:
    return mlss::Term::single(term(rng, vars, depth - 1));
  case 3:
    return mlss::Term::union_of(term(rng, vars, depth - 1),
                                term(rng, vars, depth - 1));
  case 4:
    return mlss::Term::inter(term(rng, vars, depth - 1),
                             term(rng, vars, depth - 1));
  default:
    return mlss::Term::diff(term(rng, vars, depth - 1),
                            term(rng, vars, depth - 1));
  }
}

inline mlss::Atom atom(Rng &rng, const std::vector<std::string> &vars,
                       unsigned term_depth) {
  mlss::Term l = term(rng, vars, term_depth);
  mlss::Term r = term(rng, vars, term_depth);
  return pick(rng, 2) == 0 ? mlss::mem(l, r) : mlss::eq(l, r);
}

inline mlss::Formula formula(Rng &rng, const std::vector<std::string> &vars,
                             unsigned depth, unsigned term_depth) {
  if (depth == 0 || pick(rng, 3) == 0)
    return mlss::Formula::atom(atom(rng, vars, term_depth));
  switch (pick(rng, 3)) {
  case 0:
    return mlss::Formula::neg(formula(rng, vars, depth - 1, term_depth));
  case 1:
    return mlss::Formula::conj(formula(rng, vars, depth - 1, term_depth),
                               formula(rng, vars, depth - 1, term_depth));
  default:
    return mlss::Formula::disj(formula(rng, vars, depth - 1, term_depth),
                               formula(rng, vars, depth - 1, term_depth));
  }
}

// Exhaustive corpus: all formulas over the given atoms with <= 2
// propositional connectives, in the fixed shape list below.
inline std::vector<mlss::Formula>
connective_closure(const std::vector<mlss::Formula> &one_atom,
                   const std::vector<mlss::Formula> &pair_atoms) {
  using mlss::Formula;
  std::vector<Formula> out;
  for (const Formula &a : one_atom) {
    out.push_back(a);
    out.push_back(Formula::neg(a));
    out.push_back(Formula::neg(Formula::neg(a)));
  }
  for (const Formula &a : pair_atoms)
    for (const Formula &b : pair_atoms) {
      out.push_back(Formula::conj(a, b));
      out.push_back(Formula::disj(a, b));
      out.push_back(Formula::neg(Formula::conj(a, b)));
      out.push_back(Formula::neg(Formula::disj(a, b)));
      out.push_back(Formula::conj(Formula::neg(a), b));
      out.push_back(Formula::disj(Formula::neg(a), b));
    }
  return out;
}

// Terms of depth <= 1 over two variables.
inline std::vector<mlss::Term> micro_terms() {
  using mlss::Term;
  Term x = Term::var("x"), y = Term::var("y"), e = Term::empty(0);
  return {x,
          y,
          e,
          Term::single(x),
          Term::single(y),
          Term::union_of(x, y),
          Term::inter(x, y),
          Term::diff(x, y),
          Term::diff(y, x)};
}

inline std::vector<mlss::Formula> micro_atoms(const std::vector<mlss::Term> &ts) {
  std::vector<mlss::Formula> out;
  for (const mlss::Term &l : ts)
    for (const mlss::Term &r : ts) {
      out.push_back(mlss::Formula::atom(mlss::mem(l, r)));
      out.push_back(mlss::Formula::atom(mlss::eq(l, r)));
    }
  return out;
}

} // namespace gen

#endif
