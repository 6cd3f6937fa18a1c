#include "mlss/semantics.hpp"

#include <vector>

namespace mlss {

const HFSet &Valuation::operator()(const std::string &name) const {
  auto it = assignment_.find(name);
  return it == assignment_.end() ? default_ : it->second;
}

HFSet interp_term(const Valuation &m, const Term &t) {
  switch (t.kind()) {
  case TermKind::Empty:
    return HFSet(); // level tag has no semantic impact
  case TermKind::Var:
    return m(t.name());
  case TermKind::Single:
    return HFSet::single(interp_term(m, t.left()));
  case TermKind::Union:
    return interp_term(m, t.left()).set_union(interp_term(m, t.right()));
  case TermKind::Inter:
    return interp_term(m, t.left()).set_inter(interp_term(m, t.right()));
  case TermKind::Diff:
    return interp_term(m, t.left()).set_diff(interp_term(m, t.right()));
  }
  return HFSet();
}

bool interp_atom(const Valuation &m, const Atom &a) {
  HFSet l = interp_term(m, a.lhs);
  HFSet r = interp_term(m, a.rhs);
  return a.kind == AtomKind::Mem ? r.mem(l) : l == r;
}

bool satisfies(const Valuation &m, const Formula &f) {
  switch (f.kind()) {
  case FormulaKind::Atom:
    return interp_atom(m, f.as_atom());
  case FormulaKind::Neg:
    return !satisfies(m, f.left());
  case FormulaKind::And:
    return satisfies(m, f.left()) && satisfies(m, f.right());
  case FormulaKind::Or:
    return satisfies(m, f.left()) || satisfies(m, f.right());
  }
  return false;
}

std::optional<Valuation> oracle_sat(const Formula &f, unsigned rank_bound) {
  std::set<std::string> vs = vars(f);
  if (vs.size() > 4)
    throw OracleGuardError("oracle_sat: more than 4 variables");
  if (rank_bound > 3)
    throw OracleGuardError("oracle_sat: rank bound exceeds 3");

  std::vector<std::string> names(vs.begin(), vs.end());
  std::vector<HFSet> univ = hf_universe(rank_bound);
  std::vector<std::size_t> idx(names.size(), 0);

  for (;;) {
    Valuation m;
    for (std::size_t i = 0; i < names.size(); ++i)
      m.set(names[i], univ[idx[i]]);
    if (satisfies(m, f))
      return m;
    // next assignment in canonical order (last variable fastest)
    std::size_t i = names.size();
    while (i > 0) {
      --i;
      if (++idx[i] < univ.size())
        break;
      idx[i] = 0;
      if (i == 0)
        return std::nullopt;
    }
    if (names.empty())
      return std::nullopt;
  }
}

} // namespace mlss
