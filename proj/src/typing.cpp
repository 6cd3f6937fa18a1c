#include "mlss/typing.hpp"

#include "mlss/parser.hpp"

#include <algorithm>
#include <cassert>

namespace mlss {

namespace {

class ConstraintBuilder {
public:
  explicit ConstraintBuilder(const std::set<unsigned> &flexible)
      : flexible_(flexible) {}

  LevelExpr term_level(const Term &t) {
    auto it = out_.term_level.find(t);
    if (it != out_.term_level.end())
      return it->second;
    LevelExpr l = compute(t);
    out_.term_level.emplace(t, l);
    return l;
  }

  void atom(const Atom &a) {
    LevelExpr l = term_level(a.lhs);
    LevelExpr r = term_level(a.rhs);
    if (a.kind == AtomKind::Eq)
      out_.constraints.push_back({l, r, pretty(a)});
    else
      out_.constraints.push_back({l.succ(), r, pretty(a)});
  }

  ConstraintGen take() { return std::move(out_); }

private:
  LevelExpr compute(const Term &t) {
    switch (t.kind()) {
    case TermKind::Empty:
      if (flexible_.count(t.level_tag()))
        return LevelExpr::of("e:" + std::to_string(t.level_tag()), 1);
      return LevelExpr::constant(static_cast<long>(t.level_tag()) + 1);
    case TermKind::Var:
      return LevelExpr::of("v:" + t.name());
    case TermKind::Single:
      return term_level(t.left()).succ();
    default: {
      LevelExpr l = term_level(t.left());
      LevelExpr r = term_level(t.right());
      std::string where = pretty(t);
      out_.constraints.push_back({l, r, where});
      // l != 0, encoded as l = S i with i fresh
      out_.constraints.push_back(
          {l, LevelExpr::of("s:" + std::to_string(fresh_++), 1), where});
      return l;
    }
    }
  }

  const std::set<unsigned> &flexible_;
  ConstraintGen out_;
  unsigned fresh_ = 0;
};

// Union-find over level variables with integer offsets: value(x) =
// value(root) + delta(x). A class may additionally be pinned to a constant.
class OffsetUnionFind {
public:
  std::size_t node(const std::string &name) {
    auto it = index_.find(name);
    if (it != index_.end())
      return it->second;
    std::size_t id = parent_.size();
    index_.emplace(name, id);
    parent_.push_back(id);
    delta_.push_back(0);
    names_.push_back(name);
    return id;
  }

  // returns (root, delta) with value(x) = value(root) + delta
  std::pair<std::size_t, long> find(std::size_t x) {
    if (parent_[x] == x)
      return {x, 0};
    auto [root, d] = find(parent_[x]);
    parent_[x] = root;
    delta_[x] += d;
    return {root, delta_[x]};
  }

  // value(x) + a = value(y) + b
  std::optional<Untypeable> relate(std::size_t x, long a, std::size_t y, long b,
                                   const std::string &origin) {
    auto [rx, dx] = find(x);
    auto [ry, dy] = find(y);
    if (rx == ry) {
      if (dx + a != dy + b)
        return Untypeable{"offset cycle involving '" + names_[x] +
                          "' (from " + origin + ")"};
      return std::nullopt;
    }
    // value(ry) = value(rx) + dx + a - dy - b
    parent_[ry] = rx;
    delta_[ry] = dx + a - dy - b;
    auto pin = pinned_.find(ry);
    if (pin != pinned_.end()) {
      // value(ry) = value(rx) + delta(ry), so the pin moves to rx
      long v = pin->second - delta_[ry];
      pinned_.erase(pin);
      return pin_root(rx, v, origin);
    }
    return std::nullopt;
  }

  // value(x) + a = c
  std::optional<Untypeable> pin(std::size_t x, long a, long c,
                                const std::string &origin) {
    auto [rx, dx] = find(x);
    return pin_root(rx, c - a - dx, origin);
  }

  std::size_t var_count() const { return parent_.size(); }
  const std::string &name(std::size_t i) const { return names_[i]; }

  // Minimal assignment: per class, the pinned value or the least base
  // making every member non-negative.
  std::variant<std::map<std::string, long>, Untypeable> solve() {
    std::map<std::size_t, long> base;
    for (std::size_t i = 0; i < parent_.size(); ++i) {
      auto [r, d] = find(i);
      auto pin = pinned_.find(r);
      if (pin != pinned_.end()) {
        if (pin->second + d < 0)
          return Untypeable{"'" + names_[i] + "' would need a negative level"};
        continue;
      }
      long need = std::max(0L, -d);
      auto it = base.find(r);
      if (it == base.end())
        base.emplace(r, need);
      else
        it->second = std::max(it->second, need);
    }
    std::map<std::string, long> out;
    for (std::size_t i = 0; i < parent_.size(); ++i) {
      auto [r, d] = find(i);
      auto pin = pinned_.find(r);
      long b = pin != pinned_.end() ? pin->second : base[r];
      out[names_[i]] = b + d;
    }
    return out;
  }

private:
  std::optional<Untypeable> pin_root(std::size_t root, long value,
                                     const std::string &origin) {
    auto [r, d] = find(root);
    value -= d;
    auto it = pinned_.find(r);
    if (it != pinned_.end()) {
      if (it->second != value)
        return Untypeable{"conflicting levels for '" + names_[r] + "' (from " +
                          origin + ")"};
      return std::nullopt;
    }
    if (value < 0)
      return Untypeable{"'" + names_[r] + "' would need a negative level (from " +
                        origin + ")"};
    pinned_.emplace(r, value);
    return std::nullopt;
  }

  std::map<std::string, std::size_t> index_;
  std::vector<std::size_t> parent_;
  std::vector<long> delta_;
  std::vector<std::string> names_;
  std::map<std::size_t, long> pinned_;
};

} // namespace

ConstraintGen generate_constraints(const Formula &f,
                                   const std::set<unsigned> &flexible_tags) {
  ConstraintBuilder b(flexible_tags);
  for (const Atom &a : atoms(f))
    b.atom(a);
  return b.take();
}

std::variant<std::map<std::string, long>, Untypeable>
solve_min(const std::vector<LevelConstraint> &constraints) {
  OffsetUnionFind uf;
  for (const LevelConstraint &c : constraints) {
    std::optional<Untypeable> err;
    if (c.lhs.var && c.rhs.var) {
      err = uf.relate(uf.node(*c.lhs.var), c.lhs.offset, uf.node(*c.rhs.var),
                      c.rhs.offset, c.origin);
    } else if (c.lhs.var) {
      err = uf.pin(uf.node(*c.lhs.var), c.lhs.offset, c.rhs.offset, c.origin);
    } else if (c.rhs.var) {
      err = uf.pin(uf.node(*c.rhs.var), c.rhs.offset, c.lhs.offset, c.origin);
    } else if (c.lhs.offset != c.rhs.offset) {
      err = Untypeable{"constant level conflict (from " + c.origin + ")"};
    }
    if (err)
      return *err;
  }
  return uf.solve();
}

std::variant<Inference, Untypeable>
infer(const Formula &f, const std::set<unsigned> &flexible_tags) {
  ConstraintGen gen = generate_constraints(f, flexible_tags);
  auto solved = solve_min(gen.constraints);
  if (std::holds_alternative<Untypeable>(solved))
    return std::get<Untypeable>(solved);
  const auto &sol = std::get<std::map<std::string, long>>(solved);

  auto eval = [&](const LevelExpr &e) -> long {
    if (!e.var)
      return e.offset;
    auto it = sol.find(*e.var);
    // a variable absent from all constraints is unconstrained: minimum 0
    return (it == sol.end() ? 0 : it->second) + e.offset;
  };

  Inference out;
  for (const std::string &v : vars(f))
    out.env.var_levels[v] = eval(LevelExpr::of("v:" + v));
  for (unsigned tag : flexible_tags)
    out.env.empty_levels[tag] = eval(LevelExpr::of("e:" + std::to_string(tag)));
  for (const auto &[t, le] : gen.term_level) {
    long l = eval(le);
    out.term_levels[t] = l;
    if (l == 0)
      out.urelems.insert(t);
  }
  // subterms that never reached an atom cannot occur; term_level covers all
  return out;
}

namespace {

std::optional<long> level_of(const Term &t,
                             const std::map<std::string, long> &var_levels,
                             const std::map<unsigned, long> &empty_levels) {
  switch (t.kind()) {
  case TermKind::Empty: {
    auto it = empty_levels.find(t.level_tag());
    long n = it != empty_levels.end() ? it->second
                                      : static_cast<long>(t.level_tag());
    return n + 1;
  }
  case TermKind::Var: {
    auto it = var_levels.find(t.name());
    if (it == var_levels.end())
      return std::nullopt;
    return it->second;
  }
  case TermKind::Single: {
    auto l = level_of(t.left(), var_levels, empty_levels);
    if (!l)
      return std::nullopt;
    return *l + 1;
  }
  default: {
    auto l = level_of(t.left(), var_levels, empty_levels);
    auto r = level_of(t.right(), var_levels, empty_levels);
    if (!l || !r || *l != *r || *l == 0)
      return std::nullopt;
    return *l;
  }
  }
}

bool atom_checks(const Atom &a, const std::map<std::string, long> &var_levels,
                 const std::map<unsigned, long> &empty_levels) {
  auto l = level_of(a.lhs, var_levels, empty_levels);
  auto r = level_of(a.rhs, var_levels, empty_levels);
  if (!l || !r)
    return false;
  return a.kind == AtomKind::Eq ? *l == *r : *l + 1 == *r;
}

} // namespace

bool type_checks(const Formula &f, const std::map<std::string, long> &var_levels,
                 const std::map<unsigned, long> &empty_levels) {
  for (const Atom &a : atoms(f))
    if (!atom_checks(a, var_levels, empty_levels))
      return false;
  return true;
}

bool type_checks(const std::vector<Formula> &fs,
                 const std::map<std::string, long> &var_levels,
                 const std::map<unsigned, long> &empty_levels) {
  for (const Formula &f : fs)
    if (!type_checks(f, var_levels, empty_levels))
      return false;
  return true;
}

} // namespace mlss
