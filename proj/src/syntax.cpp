#include "mlss/formula.hpp"

#include <cassert>
#include <functional>
#include <stdexcept>

namespace mlss {

namespace {

std::size_t hash_combine(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

} // namespace

Term Term::empty(unsigned level_tag) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::Empty;
  n->level_tag = level_tag;
  n->hash = hash_combine(0x01, level_tag);
  return Term(std::move(n));
}

Term Term::var(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::Var;
  n->name = std::move(name);
  n->hash = hash_combine(0x02, std::hash<std::string>{}(n->name));
  return Term(std::move(n));
}

static std::size_t binary_hash(std::size_t tag, std::size_t l, std::size_t r) {
  std::size_t h = tag;
  h = h * 1000003 + l;
  h = h * 1000003 + r;
  return h;
}

Term Term::single(Term inner) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::Single;
  n->hash = binary_hash(0x03, inner.node_->hash, 0);
  n->left = std::move(inner.node_);
  return Term(std::move(n));
}

Term Term::union_of(Term left, Term right) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::Union;
  n->hash = binary_hash(0x04, left.node_->hash, right.node_->hash);
  n->left = std::move(left.node_);
  n->right = std::move(right.node_);
  return Term(std::move(n));
}

Term Term::inter(Term left, Term right) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::Inter;
  n->hash = binary_hash(0x05, left.node_->hash, right.node_->hash);
  n->left = std::move(left.node_);
  n->right = std::move(right.node_);
  return Term(std::move(n));
}

Term Term::diff(Term left, Term right) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::Diff;
  n->hash = binary_hash(0x06, left.node_->hash, right.node_->hash);
  n->left = std::move(left.node_);
  n->right = std::move(right.node_);
  return Term(std::move(n));
}

unsigned Term::level_tag() const {
  assert(kind() == TermKind::Empty);
  return node_->level_tag;
}

const std::string &Term::name() const {
  assert(kind() == TermKind::Var);
  return node_->name;
}

Term Term::left() const {
  assert(node_->left);
  return Term(node_->left);
}

Term Term::right() const {
  assert(node_->right);
  return Term(node_->right);
}

int Term::compare_nodes(const Node *a, const Node *b) {
  if (a == b)
    return 0;
  if (a->kind != b->kind)
    return static_cast<int>(a->kind) < static_cast<int>(b->kind) ? -1 : 1;
  switch (a->kind) {
  case TermKind::Empty:
    if (a->level_tag != b->level_tag)
      return a->level_tag < b->level_tag ? -1 : 1;
    return 0;
  case TermKind::Var:
    return a->name.compare(b->name) < 0   ? -1
           : a->name.compare(b->name) > 0 ? 1
                                          : 0;
  case TermKind::Single:
    return compare_nodes(a->left.get(), b->left.get());
  default: {
    int c = compare_nodes(a->left.get(), b->left.get());
    if (c != 0)
      return c;
    return compare_nodes(a->right.get(), b->right.get());
  }
  }
}

int Term::compare(const Term &other) const {
  return compare_nodes(node_.get(), other.node_.get());
}

std::set<std::string> vars(const Term &t) {
  std::set<std::string> out;
  std::function<void(const Term &)> go = [&](const Term &u) {
    switch (u.kind()) {
    case TermKind::Empty:
      break;
    case TermKind::Var:
      out.insert(u.name());
      break;
    case TermKind::Single:
      go(u.left());
      break;
    default:
      go(u.left());
      go(u.right());
    }
  };
  go(t);
  return out;
}

void collect_subterms(const Term &t, std::set<Term> &out) {
  out.insert(t);
  switch (t.kind()) {
  case TermKind::Empty:
  case TermKind::Var:
    break;
  case TermKind::Single:
    collect_subterms(t.left(), out);
    break;
  default:
    collect_subterms(t.left(), out);
    collect_subterms(t.right(), out);
  }
}

std::set<Term> subterms(const Term &t) {
  std::set<Term> out;
  collect_subterms(t, out);
  return out;
}

int Atom::compare(const Atom &other) const {
  if (kind != other.kind)
    return kind == AtomKind::Mem ? -1 : 1;
  int c = lhs.compare(other.lhs);
  if (c != 0)
    return c;
  return rhs.compare(other.rhs);
}

Formula Formula::atom(Atom a) {
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::Atom;
  n->atom = std::make_shared<Atom>(std::move(a));
  return Formula(std::move(n));
}

Formula Formula::neg(Formula inner) {
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::Neg;
  n->left = std::move(inner.node_);
  return Formula(std::move(n));
}

Formula Formula::conj(Formula left, Formula right) {
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::And;
  n->left = std::move(left.node_);
  n->right = std::move(right.node_);
  return Formula(std::move(n));
}

Formula Formula::disj(Formula left, Formula right) {
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::Or;
  n->left = std::move(left.node_);
  n->right = std::move(right.node_);
  return Formula(std::move(n));
}

const Atom &Formula::as_atom() const {
  assert(kind() == FormulaKind::Atom);
  return *node_->atom;
}

Formula Formula::left() const {
  assert(node_->left);
  return Formula(node_->left);
}

Formula Formula::right() const {
  assert(node_->right);
  return Formula(node_->right);
}

int Formula::compare_nodes(const Node *a, const Node *b) {
  if (a == b)
    return 0;
  if (a->kind != b->kind)
    return static_cast<int>(a->kind) < static_cast<int>(b->kind) ? -1 : 1;
  switch (a->kind) {
  case FormulaKind::Atom:
    return a->atom->compare(*b->atom);
  case FormulaKind::Neg:
    return compare_nodes(a->left.get(), b->left.get());
  default: {
    int c = compare_nodes(a->left.get(), b->left.get());
    if (c != 0)
      return c;
    return compare_nodes(a->right.get(), b->right.get());
  }
  }
}

int Formula::compare(const Formula &other) const {
  return compare_nodes(node_.get(), other.node_.get());
}

Formula Literal::to_formula() const {
  Formula f = Formula::atom(atom);
  return positive ? f : Formula::neg(std::move(f));
}

bool as_literal(const Formula &f, Literal &out) {
  if (f.kind() == FormulaKind::Atom) {
    out = Literal{true, f.as_atom()};
    return true;
  }
  if (f.kind() == FormulaKind::Neg && f.left().kind() == FormulaKind::Atom) {
    out = Literal{false, f.left().as_atom()};
    return true;
  }
  return false;
}

std::set<std::string> vars(const Atom &a) {
  std::set<std::string> out = vars(a.lhs);
  std::set<std::string> r = vars(a.rhs);
  out.insert(r.begin(), r.end());
  return out;
}

std::set<std::string> vars(const Formula &f) {
  std::set<std::string> out;
  for (const Atom &a : atoms(f)) {
    std::set<std::string> v = vars(a);
    out.insert(v.begin(), v.end());
  }
  return out;
}

std::set<std::string> vars(const std::vector<Formula> &fs) {
  std::set<std::string> out;
  for (const Formula &f : fs) {
    std::set<std::string> v = vars(f);
    out.insert(v.begin(), v.end());
  }
  return out;
}

std::set<Atom> atoms(const Formula &f) {
  std::set<Atom> out;
  std::function<void(const Formula &)> go = [&](const Formula &g) {
    switch (g.kind()) {
    case FormulaKind::Atom:
      out.insert(g.as_atom());
      break;
    case FormulaKind::Neg:
      go(g.left());
      break;
    default:
      go(g.left());
      go(g.right());
    }
  };
  go(f);
  return out;
}

std::set<Term> subterms(const Atom &a) {
  std::set<Term> out;
  collect_subterms(a.lhs, out);
  collect_subterms(a.rhs, out);
  return out;
}

std::set<Term> subterms(const Formula &f) {
  std::set<Term> out;
  for (const Atom &a : atoms(f)) {
    collect_subterms(a.lhs, out);
    collect_subterms(a.rhs, out);
  }
  return out;
}

std::set<Term> subterms(const std::vector<Formula> &fs) {
  std::set<Term> out;
  for (const Formula &f : fs) {
    std::set<Term> s = subterms(f);
    out.insert(s.begin(), s.end());
  }
  return out;
}

std::set<Formula> subfms(const Formula &f) {
  std::set<Formula> out;
  std::function<void(const Formula &)> go = [&](const Formula &g) {
    out.insert(g);
    switch (g.kind()) {
    case FormulaKind::Atom:
      break;
    case FormulaKind::Neg:
      go(g.left());
      break;
    default:
      go(g.left());
      go(g.right());
    }
  };
  go(f);
  return out;
}

Literal subst_top_level(const Literal &l, const Term &from, const Term &to) {
  Atom a = l.atom;
  if (a.lhs == from)
    a.lhs = to;
  if (a.rhs == from)
    a.rhs = to;
  return Literal{l.positive, std::move(a)};
}

} // namespace mlss
