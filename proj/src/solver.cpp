#include "mlss/solver.hpp"

#include <algorithm>
#include <functional>

namespace mlss {

std::uint64_t branch_size_bound(const Formula &f) {
  std::uint64_t nf = subfms(f).size();
  std::uint64_t nt = subterms(f).size();
  return 2 * nf + 16 * nt * nt * nt * nt;
}

void Solver::note_branch(const Branch &b) {
  ++stats_.branches_explored;
  stats_.max_branch_size = std::max<std::uint64_t>(stats_.max_branch_size, b.size());
  if (b.size() > stats_.bound)
    throw InternalError("branch size exceeds the termination bound");
}

std::variant<Verdict, Untypeable>
Solver::decide(const Formula &f, const std::set<unsigned> &flexible_tags) {
  stats_ = SolveStats{};
  stats_.bound = branch_size_bound(f);
  inference_.reset();
  typed_mode_ = TypedMode{};
  if (opts_.typed) {
    auto inf = infer(f, flexible_tags);
    if (std::holds_alternative<Untypeable>(inf))
      return std::get<Untypeable>(inf);
    inference_ = std::get<Inference>(std::move(inf));
    typed_mode_.urelems = inference_->urelems;
  }

  auto result = decide_branch(Branch(f));
  if (std::holds_alternative<Closed>(result)) {
    Certificate cert{f, opts_.typed, std::get<Closed>(std::move(result)).node};
    return Verdict{Unsat{std::move(cert)}};
  }
  Branch open = std::get<OpenSaturated>(std::move(result)).branch;
  Valuation m = extract_model(open, inference_ ? &*inference_ : nullptr);
  if (!satisfies(m, f))
    throw InternalError("extracted model fails the initial formula");
  return Verdict{Sat{std::move(m), std::move(open)}};
}

std::variant<Solver::Closed, Solver::OpenSaturated>
Solver::decide_branch(const Branch &b) {
  if (stats_.bound == 0)
    stats_.bound = branch_size_bound(b.initial());
  if (opts_.typed && inference_)
    path_var_levels_ = inference_->env.var_levels;
  return run(b, 0);
}

std::variant<Solver::Closed, Solver::OpenSaturated>
Solver::run(const Branch &start, std::uint64_t path_steps) {
  note_branch(start);

  ExpandConfig cfg;
  cfg.double_negation = opts_.double_negation;
  if (opts_.typed && inference_)
    cfg.typed = &typed_mode_;

  std::uint64_t budget = opts_.step_budget ? opts_.step_budget : stats_.bound;

  auto check_invariance = [&](const Branch &b) {
    if (!opts_.check_typing_invariance || !inference_)
      return;
    if (!type_checks(b.formulas(), path_var_levels_,
                     inference_->env.empty_levels))
      throw InternalError("typing judgement broken by branch expansion");
  };

  Branch b = start;
  std::vector<std::pair<std::string, std::vector<Formula>>> chain;

  // equation (1): saturate with linear rules, first applicable step
  for (;;) {
    std::vector<LinearStep> steps = linear_expansions(b, cfg);
    if (steps.empty())
      break;
    const LinearStep &s = steps.front();
    std::vector<Formula> added;
    for (const Formula &c : s.conclusions)
      if (!b.contains(c))
        added.push_back(c);
    b = b.extended(added);
    ++stats_.rule_applications;
    if (++path_steps > budget)
      throw InternalError("step budget exceeded");
    if (b.size() > stats_.bound)
      throw InternalError("branch size exceeds the termination bound");
    stats_.max_branch_size =
        std::max<std::uint64_t>(stats_.max_branch_size, b.size());
    check_invariance(b);
    chain.emplace_back(s.rule, std::move(added));
  }

  auto wrap_chain = [&chain](CertNode tail) {
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
      CertNode n;
      n.rule = it->first;
      n.added = it->second;
      n.children.push_back(std::move(tail));
      tail = std::move(n);
    }
    return tail;
  };

  // equation (2): linearly saturated and closed
  if (auto reason = b.close_reason()) {
    CertNode leaf;
    leaf.close = std::move(*reason);
    return Closed{wrap_chain(std::move(leaf))};
  }

  // equation (3): open, apply the first branching step
  std::vector<BranchStep> bsteps = branching_expansions(b, cfg);
  if (!bsteps.empty()) {
    const BranchStep &s = bsteps.front();
    ++stats_.rule_applications;
    if (++path_steps > budget)
      throw InternalError("step budget exceeded");

    std::map<std::string, long> saved_levels = path_var_levels_;
    if (s.fresh_witness && inference_) {
      // the witness for t1 != t2 sits one level below t1
      Literal l{true, Atom{AtomKind::Eq, Term::var(""), Term::var("")}};
      as_literal(s.premises.front(), l);
      auto it = inference_->term_levels.find(l.atom.lhs);
      if (it != inference_->term_levels.end())
        path_var_levels_[*s.fresh_witness] = it->second - 1;
    }

    CertNode node;
    node.rule = s.rule;
    std::optional<OpenSaturated> open;
    for (const std::vector<Formula> &alt : s.alternatives) {
      Branch child = b.extended(alt);
      check_invariance(child);
      auto r = run(child, path_steps);
      if (std::holds_alternative<OpenSaturated>(r)) {
        open = std::get<OpenSaturated>(std::move(r));
        break; // first open child wins; no need to close the rest
      }
      CertNode altn;
      altn.rule = "alt";
      altn.added = alt;
      altn.children.push_back(std::get<Closed>(std::move(r)).node);
      node.children.push_back(std::move(altn));
    }
    path_var_levels_ = std::move(saved_levels);
    if (open)
      return std::move(*open);
    return Closed{wrap_chain(std::move(node))};
  }

  // equation (4): saturated; b is open here, bclosed was checked above
  return OpenSaturated{std::move(b)};
}

BranchGraph build_bgraph(const Branch &b) {
  if (b.is_closed())
    throw InternalError("bgraph requested for a closed branch");
  BranchGraph g;
  for (const std::string &c : b.pwits())
    g.verts.insert(Term::var(c));
  std::set<Term> sp = b.subterms_prime();
  g.verts.insert(sp.begin(), sp.end());
  for (const auto &[s, ts] : b.mem_edges_out())
    for (const Term &t : ts)
      if (g.verts.count(s) && g.verts.count(t))
        g.arcs.emplace(s, t);
  return g;
}

std::map<Term, HFSet> realise_all(const BranchGraph &g, const Branch &b,
                                  const Inference *typed) {
  std::map<Term, HFSet> out;
  std::size_t nverts = g.verts.size();

  // (i) pure witnesses: pairwise distinct singletons of large ordinals
  std::set<std::string> pw = b.pwits();
  std::size_t k = 0;
  for (const std::string &c : pw)
    out.emplace(Term::var(c), HFSet::single(HFSet::ordinal(nverts + 1 + k++)));

  // typed mode: urelement terms by equality class, each class one value
  if (typed) {
    std::map<Term, Term> root;
    std::function<Term(const Term &)> find = [&](const Term &t) -> Term {
      auto it = root.find(t);
      if (it == root.end() || it->second == t)
        return t;
      Term r = find(it->second);
      it->second = r;
      return r;
    };
    for (const Literal &l : b.literals()) {
      if (!l.positive || l.atom.kind != AtomKind::Eq)
        continue;
      Term a = find(l.atom.lhs), c = find(l.atom.rhs);
      if (!(a == c)) {
        Term lo = std::min(a, c), hi = std::min(a, c) == a ? c : a;
        root.insert_or_assign(hi, lo);
      }
    }
    // classes that contain an urelement, indexed in canonical order
    std::map<Term, std::size_t> class_index;
    for (const Term &t : g.verts) {
      if (out.count(t))
        continue;
      if (typed->urelems.count(t)) {
        Term r = find(t);
        if (!class_index.count(r))
          class_index.emplace(r, class_index.size());
      }
    }
    for (const Term &t : g.verts) {
      if (out.count(t))
        continue;
      Term r = find(t);
      auto it = class_index.find(r);
      if (it != class_index.end())
        out.emplace(t, HFSet::single(HFSet::ordinal(nverts + 1 + pw.size() +
                                                    it->second)));
    }
  }

  // (ii) everything else: union of the realisations of the parents
  std::map<Term, std::set<Term>> parents;
  for (const auto &[s, t] : g.arcs)
    parents[t].insert(s);

  std::set<Term> visiting;
  std::function<const HFSet &(const Term &)> eval =
      [&](const Term &t) -> const HFSet & {
    auto it = out.find(t);
    if (it != out.end())
      return it->second;
    if (!g.verts.count(t))
      return out.emplace(t, HFSet()).first->second;
    if (!visiting.insert(t).second)
      throw InternalError("membership graph of an open branch has a cycle");
    std::vector<HFSet> elems;
    auto pit = parents.find(t);
    if (pit != parents.end())
      for (const Term &u : pit->second)
        elems.push_back(eval(u));
    visiting.erase(t);
    return out.emplace(t, HFSet::from(std::move(elems))).first->second;
  };
  for (const Term &t : g.verts)
    eval(t);
  return out;
}

Valuation extract_model(const Branch &b, const Inference *typed) {
  BranchGraph g = build_bgraph(b);
  std::map<Term, HFSet> r = realise_all(g, b, typed);

  auto realise = [&](const Term &t) -> HFSet {
    auto it = r.find(t);
    return it == r.end() ? HFSet() : it->second;
  };

  // literal-level coherence: the realisation models every literal
  for (const Literal &l : b.literals()) {
    HFSet lhs = realise(l.atom.lhs);
    HFSet rhs = realise(l.atom.rhs);
    bool holds = l.atom.kind == AtomKind::Mem ? rhs.mem(lhs) : lhs == rhs;
    if (holds != l.positive)
      throw InternalError("realisation fails literal " +
                          std::to_string(static_cast<int>(l.atom.kind)));
  }

  // term-level coherence on all subterms of the branch
  for (const Term &t : subterms(b.formulas())) {
    switch (t.kind()) {
    case TermKind::Empty:
      if (!(realise(t) == HFSet()))
        throw InternalError("realisation of the empty set is non-empty");
      break;
    case TermKind::Single:
      if (!(realise(t) == HFSet::single(realise(t.left()))))
        throw InternalError("realisation breaks the singleton equation");
      break;
    case TermKind::Union:
      if (!(realise(t) == realise(t.left()).set_union(realise(t.right()))))
        throw InternalError("realisation breaks the union equation");
      break;
    case TermKind::Inter:
      if (!(realise(t) == realise(t.left()).set_inter(realise(t.right()))))
        throw InternalError("realisation breaks the intersection equation");
      break;
    case TermKind::Diff:
      if (!(realise(t) == realise(t.left()).set_diff(realise(t.right()))))
        throw InternalError("realisation breaks the difference equation");
      break;
    case TermKind::Var:
      break;
    }
  }

  Valuation m;
  for (const std::string &x : b.variables())
    m.set(x, realise(Term::var(x)));

  for (const Formula &f : b.formulas())
    if (!satisfies(m, f))
      throw InternalError("extracted model fails a branch formula");
  return m;
}

} // namespace mlss
