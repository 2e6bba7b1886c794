#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace relprime {

// Exact arbitrary-precision count. Every formula result lives here, so no
// input in the supported parameter space can overflow (counts reach
// 2^(m-l+1) for interval widths of a million and beyond).
using Count = mpz_class;

namespace numtheory {

// Factorization is by deterministic trial division; moduli are capped here.
inline constexpr std::uint64_t kMaxModulus = (std::uint64_t{1} << 63) - 1;

// Memory guard for mobius_sieve.
inline constexpr std::uint64_t kDefaultSieveCap = 100'000'000;

// Guard against counts that would not fit in memory (bits of 2^e).
inline constexpr std::uint64_t kMaxCountBits = std::uint64_t{1} << 31;

// Mobius function: 0 if n has a squared prime factor, otherwise
// (-1)^(number of distinct prime factors); mobius(1) = +1.
int mobius(std::uint64_t n);

// mu(1..limit) by linear sieve. Entry i is mobius(i); entry 0 is unused.
std::vector<std::int8_t> mobius_sieve(std::uint64_t limit,
                                      std::uint64_t cap = kDefaultSieveCap);

// (prime, exponent) pairs in increasing prime order.
std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n);

// All positive divisors of n, increasing.
std::vector<std::uint64_t> divisors(std::uint64_t n);

// The divisors d of n with mobius(d) != 0, increasing; equivalently the
// divisors of radical(n). A mu-weighted divisor sum sees only these.
std::vector<std::uint64_t> squarefree_divisors(std::uint64_t n);

// Product of the distinct primes dividing n.
std::uint64_t radical(std::uint64_t n);

// gcd of all values together with seed; seed 0 contributes nothing.
// Rejects the all-zero case (the gcd of nothing is undefined).
std::uint64_t gcd_fold(std::span<const std::uint64_t> values,
                       std::uint64_t seed = 0);

// floor(a/d) in exact integer arithmetic; rejects d = 0.
std::uint64_t floor_div(std::uint64_t a, std::uint64_t d);

// 2^e.
Count pow2(std::uint64_t e);

// Binomial coefficient, total: 0 when k < 0 or k > n; binomial(n, 0) = 1.
Count binomial(std::uint64_t n, std::int64_t k);

// sum_{j=M..N} binomial(j, L), evaluated through the closed form
// binomial(N+1, L+1) - binomial(M, L+1). Requires L <= M <= N.
Count binomial_range_sum(std::uint64_t L, std::uint64_t M, std::uint64_t N);

}  // namespace numtheory
}  // namespace relprime
