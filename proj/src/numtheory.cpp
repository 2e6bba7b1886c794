#include "relprime/numtheory.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace relprime::numtheory {

namespace {

void require_positive(std::uint64_t n, const char* who) {
  if (n == 0) {
    throw std::invalid_argument(std::string(who) + ": argument must be >= 1");
  }
  if (n > kMaxModulus) {
    throw std::invalid_argument(std::string(who) +
                                ": argument exceeds the 2^63-1 cap");
  }
}

}  // namespace

std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n) {
  require_positive(n, "factorize");
  std::vector<std::pair<std::uint64_t, int>> out;
  for (std::uint64_t p = 2; p <= n / p; p += (p == 2 ? 1 : 2)) {
    if (n % p) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

int mobius(std::uint64_t n) {
  require_positive(n, "mobius");
  int sign = 1;
  for (const auto& [p, e] : factorize(n)) {
    if (e > 1) return 0;
    sign = -sign;
  }
  return sign;
}

std::vector<std::int8_t> mobius_sieve(std::uint64_t limit, std::uint64_t cap) {
  if (limit == 0) {
    throw std::invalid_argument("mobius_sieve: limit must be >= 1");
  }
  if (limit > cap) {
    throw std::invalid_argument("mobius_sieve: limit " + std::to_string(limit) +
                                " exceeds cap " + std::to_string(cap));
  }
  std::vector<std::int8_t> mu(limit + 1, 0);
  std::vector<bool> composite(limit + 1, false);
  std::vector<std::uint64_t> primes;
  mu[1] = 1;
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (!composite[i]) {
      primes.push_back(i);
      mu[i] = -1;
    }
    for (std::uint64_t p : primes) {
      if (i * p > limit) break;
      composite[i * p] = true;
      if (i % p == 0) {
        mu[i * p] = 0;
        break;
      }
      mu[i * p] = -mu[i];
    }
  }
  return mu;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
  auto fac = factorize(n);
  std::vector<std::uint64_t> divs{1};
  for (const auto& [p, e] : fac) {
    const std::size_t base = divs.size();
    std::uint64_t pk = 1;
    for (int i = 1; i <= e; ++i) {
      pk *= p;
      for (std::size_t j = 0; j < base; ++j) divs.push_back(divs[j] * pk);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

std::vector<std::uint64_t> squarefree_divisors(std::uint64_t n) {
  auto fac = factorize(n);
  std::vector<std::uint64_t> divs{1};
  for (const auto& [p, e] : fac) {
    const std::size_t base = divs.size();
    for (std::size_t j = 0; j < base; ++j) divs.push_back(divs[j] * p);
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

std::uint64_t radical(std::uint64_t n) {
  std::uint64_t r = 1;
  for (const auto& [p, e] : factorize(n)) r *= p;
  return r;
}

std::uint64_t gcd_fold(std::span<const std::uint64_t> values,
                       std::uint64_t seed) {
  std::uint64_t g = seed;
  for (std::uint64_t v : values) g = std::gcd(g, v);
  if (g == 0) {
    throw std::invalid_argument("gcd_fold: gcd of an all-zero input is undefined");
  }
  return g;
}

std::uint64_t floor_div(std::uint64_t a, std::uint64_t d) {
  if (d == 0) throw std::invalid_argument("floor_div: division by zero");
  return a / d;
}

Count pow2(std::uint64_t e) {
  if (e >= kMaxCountBits) {
    throw std::invalid_argument("pow2: exponent exceeds the supported range");
  }
  Count r;
  mpz_setbit(r.get_mpz_t(), static_cast<mp_bitcnt_t>(e));
  return r;
}

Count binomial(std::uint64_t n, std::int64_t k) {
  if (k < 0 || static_cast<std::uint64_t>(k) > n) return Count(0);
  Count r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n),
               static_cast<unsigned long>(k));
  return r;
}

Count binomial_range_sum(std::uint64_t L, std::uint64_t M, std::uint64_t N) {
  if (L > M || M > N) {
    throw std::invalid_argument("binomial_range_sum: requires L <= M <= N");
  }
  if (N >= kMaxModulus) {
    throw std::invalid_argument("binomial_range_sum: bound exceeds the cap");
  }
  const auto low = static_cast<std::int64_t>(L) + 1;
  return binomial(N + 1, low) - binomial(M, low);
}

}  // namespace relprime::numtheory
