#ifndef MLSS_TERM_HPP
#define MLSS_TERM_HPP

#include <cstddef>
#include <memory>
#include <set>
#include <string>

namespace mlss {

enum class TermKind { Empty, Var, Single, Union, Inter, Diff };

// Immutable set term. Empty carries a level tag that only matters for type
// inference; two Empty terms with different tags are structurally distinct.
class Term {
public:
  static Term empty(unsigned level_tag);
  static Term var(std::string name);
  static Term single(Term inner);
  static Term union_of(Term left, Term right);
  static Term inter(Term left, Term right);
  static Term diff(Term left, Term right);

  TermKind kind() const { return node_->kind; }
  unsigned level_tag() const;           // Empty only
  const std::string &name() const;      // Var only
  Term left() const;                    // Single/Union/Inter/Diff (Single: inner)
  Term right() const;                   // Union/Inter/Diff

  std::size_t hash() const { return node_->hash; }

  // Canonical total order: constructor rank, then tag/name/children.
  int compare(const Term &other) const;

  friend bool operator==(const Term &a, const Term &b) {
    return a.compare(b) == 0;
  }
  friend bool operator!=(const Term &a, const Term &b) { return !(a == b); }
  friend bool operator<(const Term &a, const Term &b) {
    return a.compare(b) < 0;
  }

private:
  struct Node {
    TermKind kind;
    unsigned level_tag = 0;
    std::string name;
    std::shared_ptr<const Node> left, right;
    std::size_t hash = 0;
  };

  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static int compare_nodes(const Node *a, const Node *b);

  std::shared_ptr<const Node> node_;
};

// Variables occurring in t.
std::set<std::string> vars(const Term &t);

// Reflexive-transitive subterm closure.
std::set<Term> subterms(const Term &t);
void collect_subterms(const Term &t, std::set<Term> &out);

} // namespace mlss

#endif
