#include "relprime/types.hpp"

#include <algorithm>
#include <stdexcept>

namespace relprime {

Interval::Interval(std::uint64_t lo_, std::uint64_t hi_) : lo(lo_), hi(hi_) {
  if (lo < 1 || lo > hi) {
    throw std::invalid_argument("interval requires 1 <= lo <= hi");
  }
}

SplitUnion::SplitUnion(std::uint64_t m1_, std::uint64_t l2_, std::uint64_t m2_)
    : m1(m1_), l2(l2_), m2(m2_) {
  if (m1 < 1 || l2 <= m1 || m2 < l2) {
    throw std::invalid_argument("split union requires 1 <= m1 < l2 <= m2");
  }
}

ElementSet::ElementSet(std::vector<std::uint64_t> elems)
    : elems_(std::move(elems)) {
  for (std::uint64_t v : elems_) {
    if (v == 0) throw std::invalid_argument("set elements must be positive");
  }
  std::sort(elems_.begin(), elems_.end());
  elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
}

bool ElementSet::contains(std::uint64_t v) const {
  return std::binary_search(elems_.begin(), elems_.end(), v);
}

bool ElementSet::subset_of(const Interval& r) const {
  return elems_.empty() || (elems_.front() >= r.lo && elems_.back() <= r.hi);
}

std::string ElementSet::to_string() const {
  std::string s = "{";
  for (std::size_t i = 0; i < elems_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(elems_[i]);
  }
  s += '}';
  return s;
}

}  // namespace relprime
