#ifndef MLSS_HF_HPP
#define MLSS_HF_HPP

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

namespace mlss {

// Hereditarily finite set in canonical form: the element list is sorted by
// the canonical order (shorter element lists first, then lexicographic) and
// duplicate free, so structural equality coincides with extensional equality.
class HFSet {
public:
  HFSet(); // the empty set, i.e. the ordinal 0

  static HFSet from(std::vector<HFSet> elems);
  static HFSet single(const HFSet &x);
  static HFSet ordinal(std::size_t n);

  const std::vector<HFSet> &elements() const { return *elems_; }
  std::size_t card() const { return elems_->size(); }
  std::size_t rank() const;

  bool mem(const HFSet &x) const; // x ∈ this
  HFSet set_union(const HFSet &other) const;
  HFSet set_inter(const HFSet &other) const;
  HFSet set_diff(const HFSet &other) const;

  int compare(const HFSet &other) const;
  friend bool operator==(const HFSet &a, const HFSet &b) {
    return a.compare(b) == 0;
  }
  friend bool operator!=(const HFSet &a, const HFSet &b) { return !(a == b); }
  friend bool operator<(const HFSet &a, const HFSet &b) {
    return a.compare(b) < 0;
  }

  // `{...}` nesting with elements in canonical order, e.g. `{{}, {{}}}`.
  std::string render() const;

private:
  explicit HFSet(std::shared_ptr<const std::vector<HFSet>> elems)
      : elems_(std::move(elems)) {}

  std::shared_ptr<const std::vector<HFSet>> elems_;
};

// All HF sets of rank <= rank_bound in canonical order. Sizes follow the
// iterated-powerset pattern 1, 2, 4, 16, 65536; rank_bound > 4 is rejected.
std::vector<HFSet> hf_universe(unsigned rank_bound);

} // namespace mlss

#endif
