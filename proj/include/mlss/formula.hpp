#ifndef MLSS_FORMULA_HPP
#define MLSS_FORMULA_HPP

#include <memory>
#include <set>
#include <vector>

#include "mlss/term.hpp"

namespace mlss {

enum class AtomKind { Mem, Eq };

struct Atom {
  AtomKind kind;
  Term lhs, rhs;

  int compare(const Atom &other) const;
  friend bool operator==(const Atom &a, const Atom &b) {
    return a.compare(b) == 0;
  }
  friend bool operator!=(const Atom &a, const Atom &b) { return !(a == b); }
  friend bool operator<(const Atom &a, const Atom &b) {
    return a.compare(b) < 0;
  }
};

inline Atom mem(Term e, Term s) { return {AtomKind::Mem, std::move(e), std::move(s)}; }
inline Atom eq(Term l, Term r) { return {AtomKind::Eq, std::move(l), std::move(r)}; }

enum class FormulaKind { Atom, Neg, And, Or };

class Formula {
public:
  static Formula atom(Atom a);
  static Formula neg(Formula inner);
  static Formula conj(Formula left, Formula right);
  static Formula disj(Formula left, Formula right);

  FormulaKind kind() const { return node_->kind; }
  const Atom &as_atom() const;    // Atom only
  Formula left() const;           // Neg: inner; And/Or: left
  Formula right() const;          // And/Or only

  int compare(const Formula &other) const;
  friend bool operator==(const Formula &a, const Formula &b) {
    return a.compare(b) == 0;
  }
  friend bool operator!=(const Formula &a, const Formula &b) { return !(a == b); }
  friend bool operator<(const Formula &a, const Formula &b) {
    return a.compare(b) < 0;
  }

private:
  struct Node {
    FormulaKind kind;
    std::shared_ptr<const Atom> atom;
    std::shared_ptr<const Node> left, right;
  };
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static int compare_nodes(const Node *a, const Node *b);

  std::shared_ptr<const Node> node_;
};

// Literal: signed atom. Embeds into Formula as A(a) or Neg(A(a)).
struct Literal {
  bool positive;
  Atom atom;

  Formula to_formula() const;
  friend bool operator==(const Literal &a, const Literal &b) {
    return a.positive == b.positive && a.atom == b.atom;
  }
};

// Returns the literal view of f if f is A(a) or Neg(A(a)).
bool as_literal(const Formula &f, Literal &out);

std::set<std::string> vars(const Atom &a);
std::set<std::string> vars(const Formula &f);
std::set<std::string> vars(const std::vector<Formula> &fs);

std::set<Atom> atoms(const Formula &f);

std::set<Term> subterms(const Atom &a);
std::set<Term> subterms(const Formula &f);
std::set<Term> subterms(const std::vector<Formula> &fs);

std::set<Formula> subfms(const Formula &f);

// Replaces each side of l's atom that equals `from` with `to`; strict
// subterm positions are untouched.
Literal subst_top_level(const Literal &l, const Term &from, const Term &to);

} // namespace mlss

#endif
