#include "mlss/certificate.hpp"

#include <functional>

#include <json.hpp>

#include "mlss/parser.hpp"
#include "mlss/tableau.hpp"
#include "mlss/typing.hpp"

namespace mlss {

namespace {

using nlohmann::json;

const char *kind_name(CloseReason::Kind k) {
  switch (k) {
  case CloseReason::Contradiction:
    return "contradiction";
  case CloseReason::MemEmpty:
    return "mem-empty";
  case CloseReason::NeqRefl:
    return "neq-refl";
  case CloseReason::MemberCycle:
    return "member-cycle";
  }
  return "?";
}

CloseReason::Kind kind_from(const std::string &s) {
  if (s == "contradiction")
    return CloseReason::Contradiction;
  if (s == "mem-empty")
    return CloseReason::MemEmpty;
  if (s == "neq-refl")
    return CloseReason::NeqRefl;
  if (s == "member-cycle")
    return CloseReason::MemberCycle;
  throw CertificateFormatError("unknown close kind: " + s);
}

json node_to_json(const CertNode &n) {
  json j = json::object();
  if (n.close) {
    json fs = json::array();
    for (const Formula &f : n.close->formulas)
      fs.push_back(pretty(f));
    j["close"] = {{"kind", kind_name(n.close->kind)}, {"formulas", fs}};
    return j;
  }
  j["rule"] = n.rule;
  json added = json::array();
  for (const Formula &f : n.added)
    added.push_back(pretty(f));
  j["added"] = added;
  json children = json::array();
  for (const CertNode &c : n.children)
    children.push_back(node_to_json(c));
  j["children"] = children;
  return j;
}

Formula parse_fm(const json &j) {
  if (!j.is_string())
    throw CertificateFormatError("formula entry is not a string");
  try {
    ParseOptions o;
    o.allow_internal_names = true;
    return parse(j.get<std::string>(), o).formula;
  } catch (const ParseError &e) {
    throw CertificateFormatError("unparseable formula \"" +
                                 j.get<std::string>() + "\": " + e.what());
  }
}

CertNode node_from_json(const json &j) {
  if (!j.is_object())
    throw CertificateFormatError("certificate node is not an object");
  CertNode n;
  if (j.contains("close")) {
    const json &c = j.at("close");
    if (!c.is_object() || !c.contains("kind") || !c.contains("formulas") ||
        !c.at("kind").is_string() || !c.at("formulas").is_array())
      throw CertificateFormatError("malformed close object");
    CloseReason r;
    r.kind = kind_from(c.at("kind").get<std::string>());
    for (const json &f : c.at("formulas"))
      r.formulas.push_back(parse_fm(f));
    n.close = std::move(r);
    return n;
  }
  if (!j.contains("rule") || !j.at("rule").is_string())
    throw CertificateFormatError("inner node without rule id");
  n.rule = j.at("rule").get<std::string>();
  if (!j.contains("added") || !j.at("added").is_array())
    throw CertificateFormatError("inner node without added list");
  for (const json &f : j.at("added"))
    n.added.push_back(parse_fm(f));
  if (!j.contains("children") || !j.at("children").is_array())
    throw CertificateFormatError("inner node without children list");
  for (const json &c : j.at("children"))
    n.children.push_back(node_from_json(c));
  return n;
}

} // namespace

std::string certificate_to_json(const Certificate &c) {
  json j;
  j["formula"] = pretty(c.formula);
  j["mode"] = c.typed ? "typed" : "untyped";
  j["root"] = node_to_json(c.root);
  return j.dump(2) + "\n";
}

Certificate certificate_from_json(const std::string &json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error &e) {
    throw CertificateFormatError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("formula") || !j.contains("mode") ||
      !j.contains("root"))
    throw CertificateFormatError("certificate must have formula, mode, root");
  std::string mode = j.at("mode").is_string() ? j.at("mode").get<std::string>()
                                              : std::string();
  if (mode != "typed" && mode != "untyped")
    throw CertificateFormatError("mode must be \"typed\" or \"untyped\"");
  Certificate c{parse_fm(j.at("formula")), mode == "typed",
                node_from_json(j.at("root"))};
  return c;
}

namespace {

// The replay validators below recognise rule instances directly from the
// accumulated branch; they deliberately do not reuse the expansion
// generators in tableau.cpp.

struct Lit {
  bool positive;
  Atom atom;
};

bool get_lit(const Formula &f, Lit &out) {
  Literal l{true, Atom{AtomKind::Eq, Term::var(""), Term::var("")}};
  if (!as_literal(f, l))
    return false;
  out = Lit{l.positive, l.atom};
  return true;
}

bool is_mem(const Formula &f, bool positive, Term &s, Term &t) {
  Lit l{true, Atom{AtomKind::Eq, Term::var(""), Term::var("")}};
  if (!get_lit(f, l) || l.positive != positive || l.atom.kind != AtomKind::Mem)
    return false;
  s = l.atom.lhs;
  t = l.atom.rhs;
  return true;
}

bool is_eq(const Formula &f, bool positive, Term &s, Term &t) {
  Lit l{true, Atom{AtomKind::Eq, Term::var(""), Term::var("")}};
  if (!get_lit(f, l) || l.positive != positive || l.atom.kind != AtomKind::Eq)
    return false;
  s = l.atom.lhs;
  t = l.atom.rhs;
  return true;
}

bool subset_of(const std::vector<Formula> &added,
               const std::vector<Formula> &allowed) {
  for (const Formula &a : added) {
    bool found = false;
    for (const Formula &x : allowed)
      if (a == x) {
        found = true;
        break;
      }
    if (!found)
      return false;
  }
  return true;
}

bool has_mem(const Branch &b, bool positive, const Term &s, const Term &t) {
  return b.contains_lit(positive, mem(s, t));
}

// Does the branch justify `added` as one instance of the named linear rule?
bool linear_instance(const Branch &b, const std::string &rule,
                     const std::vector<Formula> &added) {
  if (added.empty())
    return false;
  const std::set<Term> &init = b.initial_subterms();
  Term s = Term::var(""), t = Term::var("");

  if (rule == rules::prop_and) {
    for (const Formula &f : b.formulas())
      if (f.kind() == FormulaKind::And &&
          subset_of(added, {f.left(), f.right()}))
        return true;
    return false;
  }
  if (rule == rules::prop_nor) {
    for (const Formula &f : b.formulas())
      if (f.kind() == FormulaKind::Neg && f.left().kind() == FormulaKind::Or &&
          subset_of(added, {Formula::neg(f.left().left()),
                            Formula::neg(f.left().right())}))
        return true;
    return false;
  }
  if (rule == rules::prop_or_neg_l || rule == rules::prop_or_neg_r) {
    bool left = rule == rules::prop_or_neg_l;
    for (const Formula &f : b.formulas())
      if (f.kind() == FormulaKind::Or &&
          b.contains(Formula::neg(left ? f.left() : f.right())) &&
          subset_of(added, {left ? f.right() : f.left()}))
        return true;
    return false;
  }
  if (rule == rules::prop_nand_l || rule == rules::prop_nand_r) {
    bool left = rule == rules::prop_nand_l;
    for (const Formula &f : b.formulas()) {
      if (f.kind() != FormulaKind::Neg || f.left().kind() != FormulaKind::And)
        continue;
      Formula g = f.left();
      if (b.contains(left ? g.left() : g.right()) &&
          subset_of(added, {Formula::neg(left ? g.right() : g.left())}))
        return true;
    }
    return false;
  }
  if (rule == rules::prop_neg_neg) {
    for (const Formula &f : b.formulas())
      if (f.kind() == FormulaKind::Neg && f.left().kind() == FormulaKind::Neg &&
          subset_of(added, {f.left().left()}))
        return true;
    return false;
  }

  if (rule == rules::single_intro) {
    for (const Term &u : init)
      if (u.kind() == TermKind::Single &&
          subset_of(added, {Formula::atom(mem(u.left(), u))}))
        return true;
    return false;
  }
  if (rule == rules::single_mem_elim || rule == rules::single_nmem_elim) {
    bool positive = rule == rules::single_mem_elim;
    for (const Literal &l : b.literals()) {
      if (l.positive != positive || l.atom.kind != AtomKind::Mem ||
          l.atom.rhs.kind() != TermKind::Single)
        continue;
      Formula c = Formula::atom(eq(l.atom.lhs, l.atom.rhs.left()));
      if (subset_of(added, {positive ? c : Formula::neg(c)}))
        return true;
    }
    return false;
  }

  if (rule == rules::union_nmem_elim) {
    for (const Literal &l : b.literals()) {
      if (l.positive || l.atom.kind != AtomKind::Mem ||
          l.atom.rhs.kind() != TermKind::Union)
        continue;
      Term u = l.atom.rhs;
      if (subset_of(added,
                    {Formula::neg(Formula::atom(mem(l.atom.lhs, u.left()))),
                     Formula::neg(Formula::atom(mem(l.atom.lhs, u.right())))}))
        return true;
    }
    return false;
  }
  if (rule == rules::union_mem_intro_l || rule == rules::union_mem_intro_r) {
    bool left = rule == rules::union_mem_intro_l;
    if (added.size() != 1 || !is_mem(added.front(), true, s, t) ||
        t.kind() != TermKind::Union || !init.count(t))
      return false;
    return has_mem(b, true, s, left ? t.left() : t.right());
  }
  if (rule == rules::union_mem_elim_l || rule == rules::union_mem_elim_r) {
    bool left = rule == rules::union_mem_elim_l; // left: s notin t1 |- s in t2
    if (added.size() != 1 || !is_mem(added.front(), true, s, t))
      return false;
    for (const auto &[x, ys] : b.mem_edges_out()) {
      if (!(x == s))
        continue;
      for (const Term &u : ys)
        if (u.kind() == TermKind::Union &&
            (left ? u.right() : u.left()) == t &&
            has_mem(b, false, s, left ? u.left() : u.right()))
          return true;
    }
    return false;
  }
  if (rule == rules::union_nmem_intro) {
    if (added.size() != 1 || !is_mem(added.front(), false, s, t) ||
        t.kind() != TermKind::Union || !init.count(t))
      return false;
    return has_mem(b, false, s, t.left()) && has_mem(b, false, s, t.right());
  }

  if (rule == rules::inter_mem_elim) {
    for (const Literal &l : b.literals()) {
      if (!l.positive || l.atom.kind != AtomKind::Mem ||
          l.atom.rhs.kind() != TermKind::Inter)
        continue;
      Term u = l.atom.rhs;
      if (subset_of(added, {Formula::atom(mem(l.atom.lhs, u.left())),
                            Formula::atom(mem(l.atom.lhs, u.right()))}))
        return true;
    }
    return false;
  }
  if (rule == rules::inter_mem_intro) {
    if (added.size() != 1 || !is_mem(added.front(), true, s, t) ||
        t.kind() != TermKind::Inter || !init.count(t))
      return false;
    return has_mem(b, true, s, t.left()) && has_mem(b, true, s, t.right());
  }
  if (rule == rules::inter_nmem_intro_l || rule == rules::inter_nmem_intro_r) {
    bool left = rule == rules::inter_nmem_intro_l;
    if (added.size() != 1 || !is_mem(added.front(), false, s, t) ||
        t.kind() != TermKind::Inter || !init.count(t))
      return false;
    return has_mem(b, false, s, left ? t.left() : t.right());
  }
  if (rule == rules::inter_nmem_elim_l || rule == rules::inter_nmem_elim_r) {
    bool left = rule == rules::inter_nmem_elim_l; // left: s in t1 |- s notin t2
    if (added.size() != 1 || !is_mem(added.front(), false, s, t))
      return false;
    for (const Literal &l : b.literals()) {
      if (l.positive || l.atom.kind != AtomKind::Mem ||
          l.atom.rhs.kind() != TermKind::Inter || !(l.atom.lhs == s))
        continue;
      Term u = l.atom.rhs;
      if ((left ? u.right() : u.left()) == t &&
          has_mem(b, true, s, left ? u.left() : u.right()))
        return true;
    }
    return false;
  }

  if (rule == rules::diff_mem_elim) {
    for (const Literal &l : b.literals()) {
      if (!l.positive || l.atom.kind != AtomKind::Mem ||
          l.atom.rhs.kind() != TermKind::Diff)
        continue;
      Term u = l.atom.rhs;
      if (subset_of(added,
                    {Formula::atom(mem(l.atom.lhs, u.left())),
                     Formula::neg(Formula::atom(mem(l.atom.lhs, u.right())))}))
        return true;
    }
    return false;
  }
  if (rule == rules::diff_mem_intro) {
    if (added.size() != 1 || !is_mem(added.front(), true, s, t) ||
        t.kind() != TermKind::Diff || !init.count(t))
      return false;
    return has_mem(b, true, s, t.left()) && has_mem(b, false, s, t.right());
  }
  if (rule == rules::diff_nmem_intro_l || rule == rules::diff_nmem_intro_r) {
    bool left = rule == rules::diff_nmem_intro_l;
    if (added.size() != 1 || !is_mem(added.front(), false, s, t) ||
        t.kind() != TermKind::Diff || !init.count(t))
      return false;
    return left ? has_mem(b, false, s, t.left())
                : has_mem(b, true, s, t.right());
  }
  if (rule == rules::diff_nmem_elim_l || rule == rules::diff_nmem_elim_r) {
    bool left = rule == rules::diff_nmem_elim_l;
    // left: s notin t1-t2, s in t1 |- s in t2
    // right: s notin t1-t2, s notin t2 |- s notin t1
    if (added.size() != 1 || !is_mem(added.front(), left, s, t))
      return false;
    for (const Literal &l : b.literals()) {
      if (l.positive || l.atom.kind != AtomKind::Mem ||
          l.atom.rhs.kind() != TermKind::Diff || !(l.atom.lhs == s))
        continue;
      Term u = l.atom.rhs;
      if (left) {
        if (u.right() == t && has_mem(b, true, s, u.left()))
          return true;
      } else {
        if (u.left() == t && has_mem(b, false, s, u.right()))
          return true;
      }
    }
    return false;
  }

  if (rule == rules::eq_subst_lr || rule == rules::eq_subst_rl) {
    bool lr = rule == rules::eq_subst_lr;
    if (added.size() != 1)
      return false;
    Lit target{true, Atom{AtomKind::Eq, Term::var(""), Term::var("")}};
    if (!get_lit(added.front(), target))
      return false;
    for (const Literal &e : b.literals()) {
      if (!e.positive || e.atom.kind != AtomKind::Eq)
        continue;
      Term from = lr ? e.atom.lhs : e.atom.rhs;
      Term to = lr ? e.atom.rhs : e.atom.lhs;
      if (from == to)
        continue;
      for (const Literal &l : b.literals()) {
        Literal r = subst_top_level(l, from, to);
        if (!(r == l) && r.positive == target.positive &&
            r.atom == target.atom)
          return true;
      }
    }
    return false;
  }
  if (rule == rules::eq_neq_intro) {
    if (added.size() != 1 || !is_eq(added.front(), false, s, t))
      return false;
    for (const auto &[x, ys] : b.mem_edges_out()) {
      if (!(x == s))
        continue;
      for (const Term &u : ys)
        if (has_mem(b, false, t, u))
          return true;
    }
    return false;
  }

  return false; // unknown rule id
}

// Does the branch justify `alts` as one instance of the named branching
// rule? `alts` must list the alternatives exactly and in order.
bool branching_instance(const Branch &b, const std::string &rule,
                        const std::vector<std::vector<Formula>> &alts,
                        const std::set<Term> &typed_urelems, bool typed) {
  auto is_cut = [&](const Formula &on) {
    return alts.size() == 2 && alts[0].size() == 1 && alts[1].size() == 1 &&
           alts[0][0] == on && alts[1][0] == Formula::neg(on);
  };
  Term s = Term::var(""), t = Term::var("");
  const std::set<Term> &init = b.initial_subterms();

  if (rule == rules::branch_or) {
    for (const Formula &f : b.formulas())
      if (f.kind() == FormulaKind::Or && is_cut(f.left()))
        return true;
    return false;
  }
  if (rule == rules::branch_nand) {
    for (const Formula &f : b.formulas())
      if (f.kind() == FormulaKind::Neg &&
          f.left().kind() == FormulaKind::And &&
          is_cut(Formula::neg(f.left().left())))
        return true;
    return false;
  }
  if (rule == rules::branch_union) {
    for (const Literal &l : b.literals()) {
      if (!l.positive || l.atom.kind != AtomKind::Mem)
        continue;
      const Term &u = l.atom.rhs;
      if (u.kind() == TermKind::Union && init.count(u) &&
          is_cut(Formula::atom(mem(l.atom.lhs, u.left()))))
        return true;
    }
    return false;
  }
  if (rule == rules::branch_inter) {
    for (const Term &u : init) {
      if (u.kind() != TermKind::Inter)
        continue;
      for (const Literal &l : b.literals()) {
        if (!l.positive || l.atom.kind != AtomKind::Mem)
          continue;
        if (l.atom.rhs == u.left() &&
            is_cut(Formula::atom(mem(l.atom.lhs, u.right()))))
          return true;
        if (l.atom.rhs == u.right() &&
            is_cut(Formula::atom(mem(l.atom.lhs, u.left()))))
          return true;
      }
    }
    return false;
  }
  if (rule == rules::branch_diff) {
    for (const Term &u : init) {
      if (u.kind() != TermKind::Diff)
        continue;
      for (const Literal &l : b.literals())
        if (l.positive && l.atom.kind == AtomKind::Mem &&
            l.atom.rhs == u.left() &&
            is_cut(Formula::atom(mem(l.atom.lhs, u.right()))))
          return true;
    }
    return false;
  }
  if (rule == rules::branch_witness) {
    if (alts.size() != 2 || alts[0].size() != 2 || alts[1].size() != 2)
      return false;
    // expected shape: {x in t1, x notin t2} | {x notin t1, x in t2}
    Term x1 = Term::var(""), t1 = Term::var("");
    Term x2 = Term::var(""), t2 = Term::var("");
    if (!is_mem(alts[0][0], true, x1, t1) ||
        !is_mem(alts[0][1], false, x2, t2) || !(x1 == x2))
      return false;
    Term y1 = Term::var(""), u1 = Term::var("");
    Term y2 = Term::var(""), u2 = Term::var("");
    if (!is_mem(alts[1][0], false, y1, u1) ||
        !is_mem(alts[1][1], true, y2, u2) || !(y1 == x1) || !(y2 == x1) ||
        !(u1 == t1) || !(u2 == t2))
      return false;
    if (x1.kind() != TermKind::Var || x1.name() != b.fresh_witness_name())
      return false;
    if (!b.contains_lit(false, eq(t1, t2)))
      return false;
    if (!init.count(t1) || !init.count(t2))
      return false;
    if (typed && (typed_urelems.count(t1) || typed_urelems.count(t2)))
      return false;
    (void)s;
    (void)t;
    return true;
  }
  return false;
}

bool leaf_valid(const Branch &b, const CloseReason &r, std::string &why) {
  for (const Formula &f : r.formulas)
    if (!b.contains(f)) {
      why = "cited formula not on the branch: " + pretty(f);
      return false;
    }
  Term s = Term::var(""), t = Term::var("");
  switch (r.kind) {
  case CloseReason::Contradiction:
    if (r.formulas.size() == 2 &&
        (r.formulas[1] == Formula::neg(r.formulas[0]) ||
         r.formulas[0] == Formula::neg(r.formulas[1])))
      return true;
    why = "contradiction leaf needs a formula and its negation";
    return false;
  case CloseReason::MemEmpty:
    if (r.formulas.size() == 1 && is_mem(r.formulas[0], true, s, t) &&
        t.kind() == TermKind::Empty)
      return true;
    why = "mem-empty leaf needs a positive membership in an empty term";
    return false;
  case CloseReason::NeqRefl:
    if (r.formulas.size() == 1 && is_eq(r.formulas[0], false, s, t) && s == t)
      return true;
    why = "neq-refl leaf needs t != t";
    return false;
  case CloseReason::MemberCycle: {
    std::size_t n = r.formulas.size();
    if (n == 0) {
      why = "member-cycle leaf cites no formulas";
      return false;
    }
    std::vector<Term> lhs(n, Term::var("")), rhs(n, Term::var(""));
    for (std::size_t i = 0; i < n; ++i)
      if (!is_mem(r.formulas[i], true, lhs[i], rhs[i])) {
        why = "member-cycle leaf cites a non-membership formula";
        return false;
      }
    for (std::size_t i = 0; i < n; ++i)
      if (!(rhs[i] == lhs[(i + 1) % n])) {
        why = "cited memberships do not chain into a cycle";
        return false;
      }
    return true;
  }
  }
  why = "unknown close kind";
  return false;
}

struct Replay {
  const std::set<Term> &urelems;
  bool typed;
  std::string reason;

  bool fail(const std::string &path, const std::string &msg) {
    reason = path + ": " + msg;
    return false;
  }

  bool walk(const Branch &b, const CertNode &n, const std::string &path) {
    if (n.is_leaf()) {
      std::string why;
      if (!leaf_valid(b, *n.close, why))
        return fail(path, why);
      return true;
    }
    if (n.rule == "alt")
      return fail(path, "alt node outside a branching node");

    bool branching =
        n.rule.rfind("branch.", 0) == 0; // branching rules share the prefix
    if (!branching) {
      if (!linear_instance(b, n.rule, n.added))
        return fail(path, "not a valid instance of " + n.rule);
      if (n.children.size() != 1)
        return fail(path, "linear node must have exactly one child");
      return walk(b.extended(n.added), n.children.front(), path + ".0");
    }

    if (!n.added.empty())
      return fail(path, "branching node must not add formulas itself");
    std::vector<std::vector<Formula>> alts;
    for (const CertNode &c : n.children) {
      if (c.is_leaf() || c.rule != "alt")
        return fail(path, "children of a branching node must be alt nodes");
      if (c.children.size() != 1)
        return fail(path, "alt node must have exactly one child");
      alts.push_back(c.added);
    }
    if (!branching_instance(b, n.rule, alts, urelems, typed))
      return fail(path, "not a valid instance of " + n.rule);
    for (std::size_t i = 0; i < n.children.size(); ++i) {
      if (!walk(b.extended(n.children[i].added),
                n.children[i].children.front(),
                path + "." + std::to_string(i) + ".0"))
        return false;
    }
    return true;
  }
};

} // namespace

CheckResult check_certificate(const Formula &f, const Certificate &c,
                              const std::set<unsigned> &flexible_tags) {
  if (!(f == c.formula))
    return {false, "certificate formula differs from the input formula"};

  std::set<Term> urelems;
  if (c.typed) {
    auto inf = infer(f, flexible_tags);
    if (std::holds_alternative<Untypeable>(inf))
      return {false, "typed certificate for an untypeable formula: " +
                         std::get<Untypeable>(inf).reason};
    urelems = std::get<Inference>(inf).urelems;
  }

  Replay rp{urelems, c.typed, ""};
  if (!rp.walk(Branch(f), c.root, "root"))
    return {false, rp.reason};
  return {true, ""};
}

} // namespace mlss
