#include "mlss/hf.hpp"

#include <algorithm>
#include <stdexcept>

namespace mlss {

HFSet::HFSet() : elems_(std::make_shared<std::vector<HFSet>>()) {}

HFSet HFSet::from(std::vector<HFSet> elems) {
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end(),
                          [](const HFSet &a, const HFSet &b) { return a == b; }),
              elems.end());
  return HFSet(std::make_shared<std::vector<HFSet>>(std::move(elems)));
}

HFSet HFSet::single(const HFSet &x) { return from({x}); }

HFSet HFSet::ordinal(std::size_t n) {
  HFSet acc;
  std::vector<HFSet> elems;
  for (std::size_t i = 0; i < n; ++i) {
    elems.push_back(acc);
    acc = from(elems);
  }
  return acc;
}

std::size_t HFSet::rank() const {
  std::size_t r = 0;
  for (const HFSet &e : *elems_)
    r = std::max(r, e.rank() + 1);
  return r;
}

bool HFSet::mem(const HFSet &x) const {
  auto it = std::lower_bound(elems_->begin(), elems_->end(), x);
  return it != elems_->end() && *it == x;
}

HFSet HFSet::set_union(const HFSet &other) const {
  std::vector<HFSet> out;
  std::merge(elems_->begin(), elems_->end(), other.elems_->begin(),
             other.elems_->end(), std::back_inserter(out));
  out.erase(std::unique(out.begin(), out.end(),
                        [](const HFSet &a, const HFSet &b) { return a == b; }),
            out.end());
  return HFSet(std::make_shared<std::vector<HFSet>>(std::move(out)));
}

HFSet HFSet::set_inter(const HFSet &other) const {
  std::vector<HFSet> out;
  std::set_intersection(elems_->begin(), elems_->end(), other.elems_->begin(),
                        other.elems_->end(), std::back_inserter(out));
  return HFSet(std::make_shared<std::vector<HFSet>>(std::move(out)));
}

HFSet HFSet::set_diff(const HFSet &other) const {
  std::vector<HFSet> out;
  std::set_difference(elems_->begin(), elems_->end(), other.elems_->begin(),
                      other.elems_->end(), std::back_inserter(out));
  return HFSet(std::make_shared<std::vector<HFSet>>(std::move(out)));
}

int HFSet::compare(const HFSet &other) const {
  if (elems_ == other.elems_)
    return 0;
  if (elems_->size() != other.elems_->size())
    return elems_->size() < other.elems_->size() ? -1 : 1;
  for (std::size_t i = 0; i < elems_->size(); ++i) {
    int c = (*elems_)[i].compare((*other.elems_)[i]);
    if (c != 0)
      return c;
  }
  return 0;
}

std::string HFSet::render() const {
  std::string out = "{";
  bool first = true;
  for (const HFSet &e : *elems_) {
    if (!first)
      out += ", ";
    first = false;
    out += e.render();
  }
  out += "}";
  return out;
}

std::vector<HFSet> hf_universe(unsigned rank_bound) {
  if (rank_bound > 4)
    throw std::invalid_argument("hf_universe: rank bound exceeds 4");
  std::vector<HFSet> univ = {HFSet()};
  for (unsigned r = 1; r <= rank_bound; ++r) {
    // powerset of the previous universe
    std::vector<HFSet> next;
    std::size_t n = univ.size();
    next.reserve(std::size_t{1} << n);
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
      std::vector<HFSet> elems;
      for (std::size_t i = 0; i < n; ++i)
        if (mask & (std::size_t{1} << i))
          elems.push_back(univ[i]);
      next.push_back(HFSet::from(std::move(elems)));
    }
    univ = std::move(next);
  }
  std::sort(univ.begin(), univ.end());
  return univ;
}

} // namespace mlss
