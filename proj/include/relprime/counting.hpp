#pragma once

// Closed-form counting of relatively prime subsets and supersets of
// integer intervals.
//
// A set X of positive integers is relatively prime when gcd(X) = 1, and
// relatively prime to n when gcd(X u {n}) = 1. Each operation below counts
// one family of such sets through a Mobius-weighted divisor sum instead of
// enumerating subsets. Writing fl(x) for floor(x) and w(d) for the number
// of multiples of d in the universe, the core identities are
//
//   phi_interval([l,m], n)   = sum_{d|n} mu(d) 2^w(d),
//                              w(d) = fl(m/d) - fl((l-1)/d)
//   phi_k_interval           = sum_{d|n} mu(d) C(w(d), k)
//   f_interval([l,m])        = sum_{d=1..m} mu(d) (2^w(d) - 1)
//   f_k_interval             = sum_{d=1..m} mu(d) C(w(d), k)
//   psi(u, n)                = sum_{d|gcd(l2,n)} mu(d) 2^(fl(m1/d)+fl(m2/d)-l2/d)
//   phi_union(u, n)          = sum_{d|n} mu(d) 2^(fl(m1/d)+fl(m2/d)-fl((l2-1)/d))
//   epsilon_interval([l,m],n)= sum_{d|n} mu(d) 2^(fl((l-1)/d)+n/d-fl(m/d)),
//                              requires m < n
//   superset_phi(A, [l,m], n)= sum_{d|gcd(A,n)} mu(d) 2^(w(d)-#A)
//   superset_f(A, [l,m])     = sum_{d|gcd(A)} mu(d) 2^(w(d)-#A)
//
// and the k-constrained variants swap the power of two for a binomial
// coefficient. The meet_* operations reduce to superset sums over the
// nonempty subsets of the meet set; see MeetMode for the two available
// sign conventions.
//
// The divisor sums count the empty set exactly when the summation index is
// 1 (only then does every term admit X = {}), so phi_interval and phi_union
// subtract 1 in that case to honour the X != {} convention. All results are
// exact arbitrary-precision integers and arrive non-negative; a negative
// intermediate total indicates a broken invariant and throws.

#include <cstdint>
#include <optional>
#include <vector>

#include "relprime/numtheory.hpp"
#include "relprime/types.hpp"

namespace relprime::counting {

// Which divisors the sums iterate over. Squarefree scanning is the default;
// scanning all divisors only adds terms with mu(d) = 0 and must produce
// identical results, which makes it a useful debugging cross-check.
enum class DivisorScan { squarefree, all };

// Sign convention for the meet_* families, which sum superset counts over
// the nonempty subsets X of the meet set A. The plain (literal) sum counts
// a subset once per nonempty intersection with A, so sets meeting A in two
// or more elements are over-counted; inclusion_exclusion weights each X by
// (-1)^(#X+1) and counts every qualifying set exactly once.
enum class MeetMode { inclusion_exclusion, literal };

// Largest meet set the meet_* operations accept by default (the subset sum
// is exponential in #A).
inline constexpr std::uint64_t kDefaultMeetCap = 20;

// One recorded summand of a closed-form evaluation.
struct SumTerm {
  enum class Kind { pow2, pow2_minus_one, binomial };

  std::uint64_t d = 1;   // summation divisor
  int mu = 0;            // mobius(d)
  int sign = 1;          // outer subset sign (meet families; +1 elsewhere)
  Kind kind = Kind::pow2;
  std::uint64_t exponent = 0;  // e in 2^e / (2^e - 1), or the binomial top
  std::uint64_t choose = 0;    // binomial bottom (Kind::binomial only)
  std::vector<std::uint64_t> subset;  // inner subset X (meet families only)
  Count value;           // signed contribution to the total
};

// Optional evaluation controls shared by every operation.
struct EvalOptions {
  DivisorScan scan = DivisorScan::squarefree;
  // When non-null, every summand is appended here in evaluation order.
  std::vector<SumTerm>* terms = nullptr;
  // When non-null, receives the divisor-sum value before the empty-set
  // subtraction (only operations that can subtract write it).
  Count* raw_sum = nullptr;
};

// Nonempty X in [l,m] with gcd(X u {n}) = 1.
Count phi_interval(Interval range, std::uint64_t n,
                   const EvalOptions& opt = {});

// As phi_interval, restricted to #X = k (k >= 1).
Count phi_k_interval(Interval range, std::uint64_t k, std::uint64_t n,
                     const EvalOptions& opt = {});

// Nonempty X in [l,m] with gcd(X) = 1.
Count f_interval(Interval range, const EvalOptions& opt = {});

// As f_interval, restricted to #X = k.
Count f_k_interval(Interval range, std::uint64_t k,
                   const EvalOptions& opt = {});

// Nonempty X in [1,m1] u [l2,m2] with l2 in X and gcd(X u {n}) = 1.
Count psi(SplitUnion u, std::uint64_t n, const EvalOptions& opt = {});

// As psi, restricted to #X = k.
Count psi_k(SplitUnion u, std::uint64_t k, std::uint64_t n,
            const EvalOptions& opt = {});

// Nonempty X in [1,m1] u [l2,m2] with gcd(X u {n}) = 1.
Count phi_union(SplitUnion u, std::uint64_t n, const EvalOptions& opt = {});

// As phi_union, restricted to #X = k.
Count phi_k_union(SplitUnion u, std::uint64_t k, std::uint64_t n,
                  const EvalOptions& opt = {});

// Nonempty X in [1,n] with X disjoint from [l,m] and gcd(X u {n}) = 1.
// Requires avoid.hi < n.
Count epsilon_interval(Interval avoid, std::uint64_t n,
                       const EvalOptions& opt = {});

// As epsilon_interval, restricted to #X = k.
Count epsilon_k_interval(Interval avoid, std::uint64_t k, std::uint64_t n,
                         const EvalOptions& opt = {});

// Nonempty X with base <= X <= [l,m] and gcd(X u {n}) = 1. An empty base
// delegates to phi_interval.
Count superset_phi(const ElementSet& base, Interval range, std::uint64_t n,
                   const EvalOptions& opt = {});

// As superset_phi, restricted to #X = k; requires #base <= k <= width.
Count superset_phi_k(const ElementSet& base, Interval range, std::uint64_t k,
                     std::uint64_t n, const EvalOptions& opt = {});

// Nonempty X with base <= X <= [l,m] and gcd(X) = 1. An empty base
// delegates to f_interval.
Count superset_f(const ElementSet& base, Interval range,
                 const EvalOptions& opt = {});

// As superset_f, restricted to #X = k; requires #base <= k <= width.
Count superset_f_k(const ElementSet& base, Interval range, std::uint64_t k,
                   const EvalOptions& opt = {});

// Nonempty X in [l,m] meeting the meet set (X n meet != {}) with
// gcd(X u {n}) = 1. An empty meet set yields 0.
Count meet_phi(const ElementSet& meet, Interval range, std::uint64_t n,
               MeetMode mode = MeetMode::inclusion_exclusion,
               const EvalOptions& opt = {},
               std::uint64_t max_meet = kDefaultMeetCap);

// As meet_phi, restricted to #X = k; k beyond the interval width yields 0.
Count meet_phi_k(const ElementSet& meet, Interval range, std::uint64_t k,
                 std::uint64_t n,
                 MeetMode mode = MeetMode::inclusion_exclusion,
                 const EvalOptions& opt = {},
                 std::uint64_t max_meet = kDefaultMeetCap);

// Nonempty X in [l,m] meeting the meet set with gcd(X) = 1.
Count meet_f(const ElementSet& meet, Interval range,
             MeetMode mode = MeetMode::inclusion_exclusion,
             const EvalOptions& opt = {},
             std::uint64_t max_meet = kDefaultMeetCap);

// As meet_f, restricted to #X = k.
Count meet_f_k(const ElementSet& meet, Interval range, std::uint64_t k,
               MeetMode mode = MeetMode::inclusion_exclusion,
               const EvalOptions& opt = {},
               std::uint64_t max_meet = kDefaultMeetCap);

}  // namespace relprime::counting
