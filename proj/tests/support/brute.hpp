// Brute-force level-assignment search used to cross-check type inference.
#ifndef TESTS_SUPPORT_BRUTE_HPP
#define TESTS_SUPPORT_BRUTE_HPP

#include <map>
#include <set>
#include <string>
#include <vector>

#include "mlss/typing.hpp"

namespace brute {

struct Assignment {
  std::map<std::string, long> var_levels;
  std::map<unsigned, long> empty_levels;
};

// All assignments of formula variables and flexible empty tags into
// {0..max_level} under which the formula type-checks.
inline std::vector<Assignment>
satisfying_levels(const mlss::Formula &f, const std::set<unsigned> &flexible,
                  long max_level = 4) {
  std::set<std::string> var_set = vars(f);
  std::vector<std::string> vs(var_set.begin(), var_set.end());
  // tags that never occur in the formula are unconstrained; skip them
  std::set<mlss::Term> terms = subterms(f);
  std::vector<unsigned> tags;
  for (unsigned tag : flexible)
    for (const mlss::Term &t : terms)
      if (t.kind() == mlss::TermKind::Empty && t.level_tag() == tag) {
        tags.push_back(tag);
        break;
      }
  // hoist the atom decomposition out of the assignment loop
  std::vector<mlss::Formula> atom_fs;
  for (const mlss::Atom &a : atoms(f))
    atom_fs.push_back(mlss::Formula::atom(a));
  std::size_t slots = vs.size() + tags.size();
  std::vector<long> cur(slots, 0);
  std::vector<Assignment> out;
  for (;;) {
    Assignment a;
    for (std::size_t i = 0; i < vs.size(); ++i)
      a.var_levels[vs[i]] = cur[i];
    for (std::size_t i = 0; i < tags.size(); ++i)
      a.empty_levels[tags[i]] = cur[vs.size() + i];
    if (mlss::type_checks(atom_fs, a.var_levels, a.empty_levels))
      out.push_back(std::move(a));
    std::size_t i = 0;
    while (i < slots && cur[i] == max_level)
      cur[i++] = 0;
    if (i == slots)
      break;
    ++cur[i];
  }
  return out;
}

} // namespace brute

#endif
