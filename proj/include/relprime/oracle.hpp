#pragma once

// Brute-force ground truth for the counting library. The oracle enumerates
// every subset of an explicit universe and applies the defining predicate
// directly, so it is trustworthy by inspection. It never calls into the
// closed-form counting code; the two sides only meet in tests and in the
// check/bench commands.

#include <cstdint>
#include <optional>
#include <vector>

#include "relprime/numtheory.hpp"
#include "relprime/types.hpp"

namespace relprime::oracle {

// Default ceiling on universe size; 2^24 subsets is the practical limit for
// routine runs. Raise it explicitly (see UniverseSpec::cap) for longer runs.
inline constexpr std::uint64_t kDefaultUniverseCap = 24;

// The materialized universe to enumerate over.
struct UniverseSpec {
  ElementSet elements;
  std::uint64_t cap = kDefaultUniverseCap;
};

UniverseSpec universe_of(const Interval& r,
                         std::uint64_t cap = kDefaultUniverseCap);
UniverseSpec universe_of(const SplitUnion& u,
                         std::uint64_t cap = kDefaultUniverseCap);

// Predicate families. The gcd side of the predicate is chosen by
// PredicateSpec::modulus: gcd(X u {n}) = 1 when set, gcd(X) = 1 when not.
enum class Family {
  subset_coprime_to_n,  // gcd(X u {n}) = 1 (modulus required)
  subset_gcd_one,       // gcd(X) = 1 (modulus must be absent)
  contains_required,    // required <= X, plus the gcd condition
  avoids_forbidden,     // X n forbidden = {}, plus the gcd condition
  meets_required,       // X n required != {}, plus the gcd condition
};

struct PredicateSpec {
  Family family = Family::subset_gcd_one;
  std::optional<std::uint64_t> modulus;
  ElementSet required;   // contains_required / meets_required families
  ElementSet forbidden;  // avoids_forbidden family
  std::optional<std::uint64_t> cardinality;  // #X = k when set (k >= 1)
};

// Number of nonempty subsets of the universe satisfying the predicate.
Count enumerate_count(const UniverseSpec& universe, const PredicateSpec& pred);

// The first `limit` qualifying subsets in binary-counter order: subsets are
// read as bit masks over the sorted universe (bit i = i-th smallest element)
// and produced in increasing mask value. Never takes counting shortcuts, so
// it doubles as an independent check on enumerate_count.
std::vector<ElementSet> enumerate_witnesses(const UniverseSpec& universe,
                                            const PredicateSpec& pred,
                                            std::uint64_t limit);

}  // namespace relprime::oracle
