#ifndef MLSS_SEMANTICS_HPP
#define MLSS_SEMANTICS_HPP

#include <map>
#include <optional>
#include <string>

#include "mlss/formula.hpp"
#include "mlss/hf.hpp"

namespace mlss {

// Total valuation: unmapped variables default to the empty set.
class Valuation {
public:
  Valuation() = default;
  explicit Valuation(std::map<std::string, HFSet> assignment)
      : assignment_(std::move(assignment)) {}

  const HFSet &operator()(const std::string &name) const;
  void set(const std::string &name, HFSet value) {
    assignment_[name] = std::move(value);
  }
  const std::map<std::string, HFSet> &assignment() const {
    return assignment_;
  }

private:
  std::map<std::string, HFSet> assignment_;
  HFSet default_;
};

HFSet interp_term(const Valuation &m, const Term &t);
bool interp_atom(const Valuation &m, const Atom &a);
bool satisfies(const Valuation &m, const Formula &f); // M |= f

struct OracleGuardError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Exhaustive bounded model search: all assignments of vars(f) into
// hf_universe(rank_bound), variables in identifier order, universe in
// canonical order. Guards: |vars(f)| <= 4 and rank_bound <= 3. A nullopt
// result only means "no model within this bounded universe".
std::optional<Valuation> oracle_sat(const Formula &f, unsigned rank_bound);

} // namespace mlss

#endif
