#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace relprime {

// Contiguous integer range [lo, hi] with 1 <= lo <= hi.
struct Interval {
  Interval(std::uint64_t lo, std::uint64_t hi);

  std::uint64_t lo;
  std::uint64_t hi;

  std::uint64_t width() const { return hi - lo + 1; }
  bool contains(std::uint64_t v) const { return lo <= v && v <= hi; }
};

// Two-piece universe [1, m1] u [l2, m2] with 1 <= m1 < l2 <= m2.
struct SplitUnion {
  SplitUnion(std::uint64_t m1, std::uint64_t l2, std::uint64_t m2);

  std::uint64_t m1;
  std::uint64_t l2;
  std::uint64_t m2;

  std::uint64_t size() const { return m1 + (m2 - l2 + 1); }
};

// Finite set of positive integers, kept sorted and duplicate-free.
class ElementSet {
 public:
  ElementSet() = default;
  // Sorts and deduplicates; rejects zero elements.
  explicit ElementSet(std::vector<std::uint64_t> elems);

  const std::vector<std::uint64_t>& elements() const { return elems_; }
  std::size_t size() const { return elems_.size(); }
  bool empty() const { return elems_.empty(); }
  bool contains(std::uint64_t v) const;
  bool subset_of(const Interval& r) const;
  std::string to_string() const;  // "{2,3}"

  friend bool operator==(const ElementSet&, const ElementSet&) = default;

 private:
  std::vector<std::uint64_t> elems_;
};

}  // namespace relprime
