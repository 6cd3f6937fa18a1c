#include "mlss/branch.hpp"

#include <algorithm>
#include <cassert>
#include <functional>

namespace mlss {

Branch::Branch(Formula initial) {
  index(initial);
  initial_vars_ = vars_;
  initial_subterms_ = subterms(initial);
}

Branch Branch::extended(const std::vector<Formula> &delta) const {
  Branch b = *this;
  for (const Formula &f : delta)
    if (!b.present_.count(f))
      b.index(f);
  return b;
}

void Branch::index(const Formula &f) {
  fms_.push_back(f);
  present_.insert(f);
  for (const std::string &v : vars(f)) {
    if (vars_.insert(v).second && v.rfind("_w", 0) == 0) {
      // keep the per-path witness counter ahead of any witness seen
      unsigned k = 0;
      for (std::size_t i = 2; i < v.size(); ++i)
        if (v[i] >= '0' && v[i] <= '9')
          k = k * 10 + static_cast<unsigned>(v[i] - '0');
      wit_counter_ = std::max(wit_counter_, k + 1);
    }
  }
  Literal l{true, Atom{AtomKind::Eq, Term::var(""), Term::var("")}};
  if (as_literal(f, l)) {
    lits_.push_back(l);
    if (l.positive && l.atom.kind == AtomKind::Mem) {
      mem_out_[l.atom.lhs].insert(l.atom.rhs);
      mem_in_[l.atom.rhs].insert(l.atom.lhs);
    }
  }
}

bool Branch::contains_lit(bool positive, const Atom &a) const {
  Formula f = Formula::atom(a);
  return present_.count(positive ? f : Formula::neg(std::move(f))) != 0;
}

std::set<std::string> Branch::wits() const {
  std::set<std::string> out;
  for (const std::string &v : vars_)
    if (!initial_vars_.count(v))
      out.insert(v);
  return out;
}

std::set<std::string> Branch::pwits() const {
  std::set<std::string> ws = wits();
  std::set<std::string> out;
  for (const std::string &c : ws) {
    Term vc = Term::var(c);
    bool linked = false;
    for (const Literal &l : lits_) {
      if (!l.positive || l.atom.kind != AtomKind::Eq)
        continue;
      if ((l.atom.lhs == vc && initial_subterms_.count(l.atom.rhs)) ||
          (l.atom.rhs == vc && initial_subterms_.count(l.atom.lhs))) {
        linked = true;
        break;
      }
    }
    if (!linked)
      out.insert(c);
  }
  return out;
}

std::set<Term> Branch::subterms_prime() const {
  std::set<Term> out = initial_subterms_;
  std::set<std::string> pw = pwits();
  for (const std::string &w : wits())
    if (!pw.count(w))
      out.insert(Term::var(w));
  return out;
}

std::string Branch::fresh_witness_name() const {
  unsigned k = wit_counter_;
  std::string name = "_w" + std::to_string(k);
  while (vars_.count(name)) {
    ++k;
    name = "_w" + std::to_string(k);
  }
  return name;
}

namespace {

// DFS cycle search in the membership digraph; returns the cycle as a list
// of positive membership atoms t0 in t1, ..., tk in t0.
std::optional<std::vector<Formula>>
find_member_cycle(const std::map<Term, std::set<Term>> &out_edges) {
  std::map<Term, int> state; // 0 unvisited, 1 on stack, 2 done
  std::vector<Term> stack;

  std::function<std::optional<std::vector<Formula>>(const Term &)> dfs =
      [&](const Term &u) -> std::optional<std::vector<Formula>> {
    state[u] = 1;
    stack.push_back(u);
    auto it = out_edges.find(u);
    if (it != out_edges.end()) {
      for (const Term &v : it->second) {
        int s = 0;
        auto sit = state.find(v);
        if (sit != state.end())
          s = sit->second;
        if (s == 1) {
          // found a cycle: slice the stack from v to u
          std::vector<Formula> cyc;
          std::size_t start = 0;
          while (stack[start] != v)
            ++start;
          for (std::size_t i = start; i + 1 < stack.size(); ++i)
            cyc.push_back(Formula::atom(mem(stack[i], stack[i + 1])));
          cyc.push_back(Formula::atom(mem(stack.back(), v)));
          return cyc;
        }
        if (s == 0) {
          auto r = dfs(v);
          if (r)
            return r;
        }
      }
    }
    stack.pop_back();
    state[u] = 2;
    return std::nullopt;
  };

  for (const auto &[u, _] : out_edges) {
    if (state.find(u) == state.end()) {
      auto r = dfs(u);
      if (r)
        return r;
    }
  }
  return std::nullopt;
}

} // namespace

std::optional<CloseReason> Branch::close_reason() const {
  // fixed check order: contradiction, membership in empty, irreflexivity,
  // membership cycle
  for (const Formula &f : fms_) {
    Formula n = Formula::neg(f);
    if (present_.count(n))
      return CloseReason{CloseReason::Contradiction, {f, n}};
  }
  for (const Literal &l : lits_) {
    if (l.positive && l.atom.kind == AtomKind::Mem &&
        l.atom.rhs.kind() == TermKind::Empty)
      return CloseReason{CloseReason::MemEmpty, {l.to_formula()}};
  }
  for (const Literal &l : lits_) {
    if (!l.positive && l.atom.kind == AtomKind::Eq && l.atom.lhs == l.atom.rhs)
      return CloseReason{CloseReason::NeqRefl, {l.to_formula()}};
  }
  if (auto cyc = find_member_cycle(mem_out_))
    return CloseReason{CloseReason::MemberCycle, *cyc};
  return std::nullopt;
}

} // namespace mlss
