#include "mlss/tableau.hpp"

namespace mlss {

namespace {

Formula pos(const Atom &a) { return Formula::atom(a); }
Formula neg(const Atom &a) { return Formula::neg(Formula::atom(a)); }

struct Emitter {
  const Branch &b;
  std::vector<LinearStep> &out;

  void step(const char *rule, std::vector<Formula> premises,
            std::vector<Formula> conclusions) {
    for (const Formula &c : conclusions) {
      if (!b.contains(c)) {
        out.push_back(LinearStep{rule, std::move(premises), std::move(conclusions)});
        return;
      }
    }
  }
};

template <TermKind K> std::vector<Term> initial_terms_of(const Branch &b) {
  std::vector<Term> out;
  for (const Term &t : b.initial_subterms())
    if (t.kind() == K)
      out.push_back(t);
  return out;
}

} // namespace

std::vector<LinearStep> linear_expansions(const Branch &b,
                                          const ExpandConfig &cfg) {
  std::vector<LinearStep> out;
  Emitter emit{b, out};

  const std::vector<Formula> &fms = b.formulas();
  const std::vector<Literal> &lits = b.literals();

  // propositional rules
  for (const Formula &f : fms) {
    switch (f.kind()) {
    case FormulaKind::And:
      emit.step(rules::prop_and, {f}, {f.left(), f.right()});
      break;
    case FormulaKind::Or: {
      Formula nl = Formula::neg(f.left());
      Formula nr = Formula::neg(f.right());
      if (b.contains(nl))
        emit.step(rules::prop_or_neg_l, {f, nl}, {f.right()});
      if (b.contains(nr))
        emit.step(rules::prop_or_neg_r, {f, nr}, {f.left()});
      break;
    }
    case FormulaKind::Neg: {
      Formula g = f.left();
      if (g.kind() == FormulaKind::Or) {
        emit.step(rules::prop_nor, {f},
                  {Formula::neg(g.left()), Formula::neg(g.right())});
      } else if (g.kind() == FormulaKind::And) {
        if (b.contains(g.left()))
          emit.step(rules::prop_nand_l, {f, g.left()},
                    {Formula::neg(g.right())});
        if (b.contains(g.right()))
          emit.step(rules::prop_nand_r, {f, g.right()},
                    {Formula::neg(g.left())});
      } else if (g.kind() == FormulaKind::Neg && cfg.double_negation) {
        emit.step(rules::prop_neg_neg, {f}, {g.left()});
      }
      break;
    }
    default:
      break;
    }
  }

  // Single rules
  for (const Term &u : initial_terms_of<TermKind::Single>(b))
    emit.step(rules::single_intro, {}, {pos(mem(u.left(), u))});
  for (const Literal &l : lits) {
    if (l.atom.kind != AtomKind::Mem || l.atom.rhs.kind() != TermKind::Single)
      continue;
    Term s = l.atom.lhs, t = l.atom.rhs.left();
    if (l.positive)
      emit.step(rules::single_mem_elim, {l.to_formula()}, {pos(eq(s, t))});
    else
      emit.step(rules::single_nmem_elim, {l.to_formula()}, {neg(eq(s, t))});
  }

  // union rules
  std::vector<Term> unions = initial_terms_of<TermKind::Union>(b);
  for (const Literal &l : lits) {
    if (l.atom.kind != AtomKind::Mem)
      continue;
    const Term &s = l.atom.lhs;
    const Term &t = l.atom.rhs;
    if (!l.positive && t.kind() == TermKind::Union) {
      emit.step(rules::union_nmem_elim, {l.to_formula()},
                {neg(mem(s, t.left())), neg(mem(s, t.right()))});
    }
    if (l.positive) {
      for (const Term &u : unions) {
        if (u.left() == t)
          emit.step(rules::union_mem_intro_l, {l.to_formula()}, {pos(mem(s, u))});
        if (u.right() == t)
          emit.step(rules::union_mem_intro_r, {l.to_formula()}, {pos(mem(s, u))});
      }
    }
    if (l.positive && t.kind() == TermKind::Union) {
      Formula nl = neg(mem(s, t.left()));
      Formula nr = neg(mem(s, t.right()));
      if (b.contains(nl))
        emit.step(rules::union_mem_elim_l, {l.to_formula(), nl},
                  {pos(mem(s, t.right()))});
      if (b.contains(nr))
        emit.step(rules::union_mem_elim_r, {l.to_formula(), nr},
                  {pos(mem(s, t.left()))});
    }
    if (!l.positive) {
      for (const Term &u : unions) {
        if (u.left() == t && b.contains(neg(mem(s, u.right()))))
          emit.step(rules::union_nmem_intro,
                    {l.to_formula(), neg(mem(s, u.right()))}, {neg(mem(s, u))});
      }
    }
  }

  // intersection rules
  std::vector<Term> inters = initial_terms_of<TermKind::Inter>(b);
  for (const Literal &l : lits) {
    if (l.atom.kind != AtomKind::Mem)
      continue;
    const Term &s = l.atom.lhs;
    const Term &t = l.atom.rhs;
    if (l.positive && t.kind() == TermKind::Inter) {
      emit.step(rules::inter_mem_elim, {l.to_formula()},
                {pos(mem(s, t.left())), pos(mem(s, t.right()))});
    }
    if (l.positive) {
      for (const Term &u : inters) {
        if (u.left() == t && b.contains(pos(mem(s, u.right()))))
          emit.step(rules::inter_mem_intro,
                    {l.to_formula(), pos(mem(s, u.right()))}, {pos(mem(s, u))});
      }
    }
    if (!l.positive) {
      for (const Term &u : inters) {
        if (u.left() == t)
          emit.step(rules::inter_nmem_intro_l, {l.to_formula()},
                    {neg(mem(s, u))});
        if (u.right() == t)
          emit.step(rules::inter_nmem_intro_r, {l.to_formula()},
                    {neg(mem(s, u))});
      }
    }
    if (!l.positive && t.kind() == TermKind::Inter) {
      Formula pl = pos(mem(s, t.left()));
      Formula pr = pos(mem(s, t.right()));
      if (b.contains(pl))
        emit.step(rules::inter_nmem_elim_l, {l.to_formula(), pl},
                  {neg(mem(s, t.right()))});
      if (b.contains(pr))
        emit.step(rules::inter_nmem_elim_r, {l.to_formula(), pr},
                  {neg(mem(s, t.left()))});
    }
  }

  // difference rules
  std::vector<Term> diffs = initial_terms_of<TermKind::Diff>(b);
  for (const Literal &l : lits) {
    if (l.atom.kind != AtomKind::Mem)
      continue;
    const Term &s = l.atom.lhs;
    const Term &t = l.atom.rhs;
    if (l.positive && t.kind() == TermKind::Diff) {
      emit.step(rules::diff_mem_elim, {l.to_formula()},
                {pos(mem(s, t.left())), neg(mem(s, t.right()))});
    }
    if (l.positive) {
      for (const Term &u : diffs) {
        if (u.left() == t && b.contains(neg(mem(s, u.right()))))
          emit.step(rules::diff_mem_intro,
                    {l.to_formula(), neg(mem(s, u.right()))}, {pos(mem(s, u))});
        if (u.right() == t)
          emit.step(rules::diff_nmem_intro_r, {l.to_formula()},
                    {neg(mem(s, u))});
      }
    }
    if (!l.positive) {
      for (const Term &u : diffs) {
        if (u.left() == t)
          emit.step(rules::diff_nmem_intro_l, {l.to_formula()},
                    {neg(mem(s, u))});
      }
    }
    if (!l.positive && t.kind() == TermKind::Diff) {
      Formula pl = pos(mem(s, t.left()));
      Formula nr = neg(mem(s, t.right()));
      if (b.contains(pl))
        emit.step(rules::diff_nmem_elim_l, {l.to_formula(), pl},
                  {pos(mem(s, t.right()))});
      if (b.contains(nr))
        emit.step(rules::diff_nmem_elim_r, {l.to_formula(), nr},
                  {neg(mem(s, t.left()))});
    }
  }

  // equality rules
  for (const Literal &e : lits) {
    if (e.atom.kind != AtomKind::Eq || !e.positive)
      continue;
    const Term &t1 = e.atom.lhs;
    const Term &t2 = e.atom.rhs;
    if (t1 == t2)
      continue;
    for (const Literal &l : lits) {
      Literal lr = subst_top_level(l, t1, t2);
      if (!(lr == l))
        emit.step(rules::eq_subst_lr, {e.to_formula(), l.to_formula()},
                  {lr.to_formula()});
      Literal rl = subst_top_level(l, t2, t1);
      if (!(rl == l))
        emit.step(rules::eq_subst_rl, {e.to_formula(), l.to_formula()},
                  {rl.to_formula()});
    }
  }
  for (const Literal &p : lits) {
    if (p.atom.kind != AtomKind::Mem || !p.positive)
      continue;
    for (const Literal &n : lits) {
      if (n.atom.kind != AtomKind::Mem || n.positive)
        continue;
      if (p.atom.rhs == n.atom.rhs)
        emit.step(rules::eq_neq_intro, {p.to_formula(), n.to_formula()},
                  {neg(eq(p.atom.lhs, n.atom.lhs))});
    }
  }

  return out;
}

bool is_lin_sat(const Branch &b, const ExpandConfig &cfg) {
  return linear_expansions(b, cfg).empty();
}

std::vector<BranchStep> branching_expansions(const Branch &b,
                                             const ExpandConfig &cfg) {
  std::vector<BranchStep> out;
  const std::vector<Formula> &fms = b.formulas();
  const std::vector<Literal> &lits = b.literals();

  auto cut = [&](const char *rule, std::vector<Formula> premises,
                 const Formula &on) {
    Formula not_on = Formula::neg(on);
    if (b.contains(on) || b.contains(not_on))
      return; // subsumed
    out.push_back(BranchStep{rule, std::move(premises),
                             {{on}, {not_on}}, std::nullopt});
  };

  for (const Formula &f : fms) {
    if (f.kind() == FormulaKind::Or)
      cut(rules::branch_or, {f}, f.left());
    if (f.kind() == FormulaKind::Neg && f.left().kind() == FormulaKind::And)
      cut(rules::branch_nand, {f}, Formula::neg(f.left().left()));
  }

  for (const Literal &l : lits) {
    if (!l.positive || l.atom.kind != AtomKind::Mem)
      continue;
    const Term &t = l.atom.rhs;
    if (t.kind() == TermKind::Union && b.initial_subterms().count(t))
      cut(rules::branch_union, {l.to_formula()},
          pos(mem(l.atom.lhs, t.left())));
  }

  for (const Term &u : initial_terms_of<TermKind::Inter>(b)) {
    for (const Literal &l : lits) {
      if (!l.positive || l.atom.kind != AtomKind::Mem)
        continue;
      if (l.atom.rhs == u.left())
        cut(rules::branch_inter, {l.to_formula()},
            pos(mem(l.atom.lhs, u.right())));
      if (l.atom.rhs == u.right())
        cut(rules::branch_inter, {l.to_formula()},
            pos(mem(l.atom.lhs, u.left())));
    }
  }
  for (const Term &u : initial_terms_of<TermKind::Diff>(b)) {
    for (const Literal &l : lits) {
      if (!l.positive || l.atom.kind != AtomKind::Mem)
        continue;
      if (l.atom.rhs == u.left())
        cut(rules::branch_diff, {l.to_formula()},
            pos(mem(l.atom.lhs, u.right())));
    }
  }

  // witness rule, deferred behind the cuts
  for (const Literal &l : lits) {
    if (l.positive || l.atom.kind != AtomKind::Eq)
      continue;
    const Term &t1 = l.atom.lhs;
    const Term &t2 = l.atom.rhs;
    if (!b.initial_subterms().count(t1) || !b.initial_subterms().count(t2))
      continue;
    if (cfg.typed &&
        (cfg.typed->urelems.count(t1) || cfg.typed->urelems.count(t2)))
      continue;
    bool subsumed = false;
    for (const Literal &m : lits) {
      if (m.atom.kind != AtomKind::Mem)
        continue;
      const Term &s = m.atom.lhs;
      if (m.positive && m.atom.rhs == t1 && b.contains(neg(mem(s, t2)))) {
        subsumed = true;
        break;
      }
      if (m.positive && m.atom.rhs == t2 && b.contains(neg(mem(s, t1)))) {
        subsumed = true;
        break;
      }
    }
    if (subsumed)
      continue;
    std::string x = b.fresh_witness_name();
    Term vx = Term::var(x);
    out.push_back(BranchStep{rules::branch_witness,
                             {l.to_formula()},
                             {{pos(mem(vx, t1)), neg(mem(vx, t2))},
                              {neg(mem(vx, t1)), pos(mem(vx, t2))}},
                             x});
  }

  return out;
}

bool is_sat(const Branch &b, const ExpandConfig &cfg) {
  return is_lin_sat(b, cfg) && branching_expansions(b, cfg).empty();
}

} // namespace mlss
