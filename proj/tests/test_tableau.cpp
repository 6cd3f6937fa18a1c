#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mlss/parser.hpp"
#include "mlss/tableau.hpp"

using namespace mlss;

namespace {
Term x = Term::var("x");
Term y = Term::var("y");
Term z = Term::var("z");

Formula fm(const std::string &text) { return parse(text).formula; }
Formula pos(const Atom &a) { return Formula::atom(a); }
Formula neg(const Atom &a) { return Formula::neg(Formula::atom(a)); }

bool has_step(const std::vector<LinearStep> &steps, const std::string &rule,
              const Formula &conclusion) {
  for (const LinearStep &s : steps)
    if (s.rule == rule)
      for (const Formula &c : s.conclusions)
        if (c == conclusion)
          return true;
  return false;
}
} // namespace

TEST_CASE("close reasons") {
  CHECK(Branch(fm("x in {}")).close_reason()->kind == CloseReason::MemEmpty);
  CHECK(Branch(fm("x != x")).close_reason()->kind == CloseReason::NeqRefl);

  Branch b = Branch(fm("x in y")).extended({neg(mem(x, y))});
  auto r = b.close_reason();
  REQUIRE(r.has_value());
  CHECK(r->kind == CloseReason::Contradiction);

  Branch cyc = Branch(fm("x in y")).extended({pos(mem(y, x))});
  auto rc = cyc.close_reason();
  REQUIRE(rc.has_value());
  CHECK(rc->kind == CloseReason::MemberCycle);
  CHECK(rc->formulas.size() == 2);

  Branch self = Branch(fm("x in y")).extended({pos(mem(x, x))});
  CHECK(self.close_reason()->kind == CloseReason::MemberCycle);

  CHECK_FALSE(Branch(fm("x in y")).close_reason().has_value());
}

TEST_CASE("propositional linear rules") {
  Formula p = fm("x in y"), q = fm("y in z");

  auto and_steps = linear_expansions(Branch(Formula::conj(p, q)));
  REQUIRE_FALSE(and_steps.empty());
  CHECK(and_steps.front().rule == rules::prop_and);
  CHECK(and_steps.front().conclusions == std::vector<Formula>{p, q});

  auto nor = linear_expansions(
      Branch(Formula::neg(Formula::disj(p, q))));
  CHECK(has_step(nor, rules::prop_nor, Formula::neg(p)));
  CHECK(has_step(nor, rules::prop_nor, Formula::neg(q)));

  Branch orb = Branch(Formula::disj(p, q)).extended({Formula::neg(p)});
  CHECK(has_step(linear_expansions(orb), rules::prop_or_neg_l, q));

  Branch nand = Branch(Formula::neg(Formula::conj(p, q))).extended({p});
  CHECK(has_step(linear_expansions(nand), rules::prop_nand_l,
                 Formula::neg(q)));

  auto dn = linear_expansions(Branch(Formula::neg(Formula::neg(p))));
  CHECK(has_step(dn, rules::prop_neg_neg, p));
  ExpandConfig no_dn;
  no_dn.double_negation = false;
  CHECK(linear_expansions(Branch(Formula::neg(Formula::neg(p))), no_dn)
            .empty());
}

TEST_CASE("single rules") {
  auto intro = linear_expansions(Branch(fm("{x} = y")));
  CHECK(has_step(intro, rules::single_intro, pos(mem(x, Term::single(x)))));
  // suppressed once the conclusion is already on the branch
  CHECK_FALSE(has_step(linear_expansions(Branch(fm("x in {x}"))),
                       rules::single_intro, pos(mem(x, Term::single(x)))));

  Branch b = Branch(fm("y in {x}"));
  CHECK(has_step(linear_expansions(b), rules::single_mem_elim,
                 pos(eq(y, x))));
  Branch nb = Branch(fm("y notin {x}"));
  CHECK(has_step(linear_expansions(nb), rules::single_nmem_elim,
                 neg(eq(y, x))));
}

TEST_CASE("union rules and the subterm side condition") {
  Term xy = Term::union_of(x, y);

  Branch nelim = Branch(fm("z notin x + y"));
  auto s1 = linear_expansions(nelim);
  CHECK(has_step(s1, rules::union_nmem_elim, neg(mem(z, x))));
  CHECK(has_step(s1, rules::union_nmem_elim, neg(mem(z, y))));

  // intro fires only when x + y occurs in the initial formula
  Branch intro_ok = Branch(fm("x + y = x + y")).extended({pos(mem(z, x))});
  CHECK(has_step(linear_expansions(intro_ok), rules::union_mem_intro_l,
                 pos(mem(z, xy))));
  Branch intro_blocked = Branch(fm("x = y")).extended({pos(mem(z, x))});
  CHECK_FALSE(has_step(linear_expansions(intro_blocked),
                       rules::union_mem_intro_l, pos(mem(z, xy))));

  Branch elim = Branch(fm("z in x + y")).extended({neg(mem(z, x))});
  CHECK(has_step(linear_expansions(elim), rules::union_mem_elim_l,
                 pos(mem(z, y))));

  Branch nintro =
      Branch(fm("x + y = x + y")).extended({neg(mem(z, x)), neg(mem(z, y))});
  CHECK(has_step(linear_expansions(nintro), rules::union_nmem_intro,
                 neg(mem(z, xy))));
}

TEST_CASE("intersection and difference rules") {
  Term xi = Term::inter(x, y);
  Term xd = Term::diff(x, y);

  auto mi = linear_expansions(Branch(fm("z in x ^ y")));
  CHECK(has_step(mi, rules::inter_mem_elim, pos(mem(z, x))));
  CHECK(has_step(mi, rules::inter_mem_elim, pos(mem(z, y))));

  Branch nintro = Branch(fm("x ^ y = x ^ y")).extended({neg(mem(z, x))});
  CHECK(has_step(linear_expansions(nintro), rules::inter_nmem_intro_l,
                 neg(mem(z, xi))));

  Branch nelim = Branch(fm("z notin x ^ y")).extended({pos(mem(z, x))});
  CHECK(has_step(linear_expansions(nelim), rules::inter_nmem_elim_l,
                 neg(mem(z, y))));

  auto de = linear_expansions(Branch(fm("z in x \\ y")));
  CHECK(has_step(de, rules::diff_mem_elim, pos(mem(z, x))));
  CHECK(has_step(de, rules::diff_mem_elim, neg(mem(z, y))));

  Branch dintro =
      Branch(fm("x \\ y = x \\ y")).extended({pos(mem(z, x)), neg(mem(z, y))});
  CHECK(has_step(linear_expansions(dintro), rules::diff_mem_intro,
                 pos(mem(z, xd))));

  Branch dnr = Branch(fm("x \\ y = x \\ y")).extended({pos(mem(z, y))});
  CHECK(has_step(linear_expansions(dnr), rules::diff_nmem_intro_r,
                 neg(mem(z, xd))));

  Branch dnelim = Branch(fm("z notin x \\ y")).extended({pos(mem(z, x))});
  CHECK(has_step(linear_expansions(dnelim), rules::diff_nmem_elim_l,
                 pos(mem(z, y))));
}

TEST_CASE("equality rules") {
  Branch b = Branch(fm("x = y & z in x"));
  b = b.extended({pos(eq(x, y)), pos(mem(z, x))});
  CHECK(has_step(linear_expansions(b), rules::eq_subst_lr, pos(mem(z, y))));

  Branch n = Branch(fm("x in z")).extended({neg(mem(y, z))});
  CHECK(has_step(linear_expansions(n), rules::eq_neq_intro, neg(eq(x, y))));
}

TEST_CASE("progress: no step whose conclusions are all present") {
  Branch b = Branch(fm("x in y & y in z"));
  while (true) {
    auto steps = linear_expansions(b);
    if (steps.empty())
      break;
    for (const LinearStep &s : steps) {
      bool fresh = false;
      for (const Formula &c : s.conclusions)
        if (!b.contains(c))
          fresh = true;
      CHECK(fresh);
    }
    b = b.extended(steps.front().conclusions);
  }
}

TEST_CASE("branching: disjunction cut and subsumption") {
  Formula p = fm("x in y"), q = fm("y in z");
  Branch b(Formula::disj(p, q));
  auto steps = branching_expansions(b);
  REQUIRE_FALSE(steps.empty());
  CHECK(steps.front().rule == rules::branch_or);
  CHECK(steps.front().alternatives ==
        std::vector<std::vector<Formula>>{{p}, {Formula::neg(p)}});

  CHECK(branching_expansions(b.extended({p})).empty());
  CHECK(branching_expansions(b.extended({Formula::neg(p)})).empty());
}

TEST_CASE("branching: witness rule") {
  Branch b(fm("x != y"));
  auto steps = branching_expansions(b);
  REQUIRE_FALSE(steps.empty());
  const BranchStep &s = steps.front();
  CHECK(s.rule == rules::branch_witness);
  REQUIRE(s.fresh_witness.has_value());
  Term w = Term::var(*s.fresh_witness);
  CHECK(s.alternatives ==
        std::vector<std::vector<Formula>>{
            {pos(mem(w, x)), neg(mem(w, y))},
            {neg(mem(w, x)), pos(mem(w, y))}});
  CHECK(b.variables().count(*s.fresh_witness) == 0);

  // subsumed once some s is in x but not in y
  Branch sub = b.extended({pos(mem(z, x)), neg(mem(z, y))});
  CHECK(branching_expansions(sub).empty());

  // typed mode: no witness split on urelements
  TypedMode tm;
  tm.urelems = {x, y};
  ExpandConfig cfg;
  cfg.typed = &tm;
  CHECK(branching_expansions(b, cfg).empty());
}

TEST_CASE("witness names stay fresh along a path") {
  Branch b(fm("x != y & y != z"));
  std::string w1 = b.fresh_witness_name();
  Branch b2 = b.extended({pos(mem(Term::var(w1), x))});
  std::string w2 = b2.fresh_witness_name();
  CHECK(w1 != w2);
  CHECK(b2.wits() == std::set<std::string>{w1});
}

TEST_CASE("pwits and subterms_prime") {
  Branch b(fm("x != y"));
  CHECK(b.wits().empty());
  CHECK(b.subterms_prime() == b.initial_subterms());

  Branch w = b.extended({pos(mem(Term::var("_w0"), x))});
  CHECK(w.pwits() == std::set<std::string>{"_w0"});

  // an equality link to an initial subterm makes the witness impure
  Branch linked = w.extended({pos(eq(Term::var("_w0"), y))});
  CHECK(linked.pwits().empty());
  CHECK(linked.subterms_prime().count(Term::var("_w0")) == 1);
}

TEST_CASE("saturated open branch without the double-negation rule") {
  Formula p = fm("x in y");
  Formula f = Formula::conj(Formula::neg(Formula::neg(Formula::neg(p))), p);
  ExpandConfig no_dn;
  no_dn.double_negation = false;

  Branch b(f);
  while (true) {
    auto steps = linear_expansions(b, no_dn);
    if (steps.empty())
      break;
    b = b.extended(steps.front().conclusions);
  }
  CHECK(is_lin_sat(b, no_dn));
  CHECK(is_sat(b, no_dn));
  CHECK_FALSE(b.close_reason().has_value());

  // with the rule enabled the same branch closes
  ExpandConfig dn;
  Branch c(f);
  while (true) {
    auto steps = linear_expansions(c, dn);
    if (steps.empty())
      break;
    c = c.extended(steps.front().conclusions);
  }
  CHECK(c.close_reason().has_value());
}
