#include "relprime/counting.hpp"

#include <bit>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>

namespace relprime::counting {

namespace nt = relprime::numtheory;

namespace {

void check_modulus(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("modulus must be >= 1");
  if (n > nt::kMaxModulus) {
    throw std::invalid_argument("modulus exceeds the 2^63-1 cap");
  }
}

void check_cardinality(std::uint64_t k) {
  if (k == 0) throw std::invalid_argument("cardinality must be >= 1");
}

// Final non-negativity check; a negative total means a broken identity,
// not bad input.
Count checked(Count total, const char* who) {
  if (total < 0) {
    throw std::logic_error(std::string(who) +
                           ": internal error, negative count");
  }
  return total;
}

std::vector<std::uint64_t> scan_divisors(std::uint64_t idx, DivisorScan scan) {
  return scan == DivisorScan::all ? nt::divisors(idx)
                                  : nt::squarefree_divisors(idx);
}

// Multiples of d in [l,m].
std::uint64_t multiples_in(const Interval& r, std::uint64_t d) {
  return nt::floor_div(r.hi, d) - nt::floor_div(r.lo - 1, d);
}

// Number of universe elements >= the base size, for the superset sums. The
// base consists of multiples of d inside the range, so the count of
// multiples can never fall below it; anything else is an internal error.
std::uint64_t drop_base(std::uint64_t multiples, std::size_t base_size,
                        const char* who) {
  if (multiples < base_size) {
    throw std::logic_error(std::string(who) +
                           ": internal error, base exceeds its multiples");
  }
  return multiples - base_size;
}

// sum over the scan divisors d of idx of mu(d) * 2^(exp_of(d)).
template <typename ExpFn>
Count power_sum(std::uint64_t idx, const EvalOptions& opt, ExpFn&& exp_of) {
  Count total = 0;
  for (std::uint64_t d : scan_divisors(idx, opt.scan)) {
    const int mu = nt::mobius(d);
    if (mu == 0 && opt.terms == nullptr) continue;
    const std::uint64_t e = exp_of(d);
    Count term = mu == 0 ? Count(0) : nt::pow2(e);
    if (mu < 0) term = -term;
    total += term;
    if (opt.terms) {
      opt.terms->push_back({.d = d,
                            .mu = mu,
                            .sign = 1,
                            .kind = SumTerm::Kind::pow2,
                            .exponent = e,
                            .choose = 0,
                            .subset = {},
                            .value = std::move(term)});
    }
  }
  return total;
}

// sum over the scan divisors d of idx of mu(d) * C(top_of(d), choose).
template <typename TopFn>
Count binomial_sum(std::uint64_t idx, std::uint64_t choose,
                   const EvalOptions& opt, TopFn&& top_of) {
  Count total = 0;
  for (std::uint64_t d : scan_divisors(idx, opt.scan)) {
    const int mu = nt::mobius(d);
    if (mu == 0 && opt.terms == nullptr) continue;
    const std::uint64_t top = top_of(d);
    Count term = mu == 0
                     ? Count(0)
                     : nt::binomial(top, static_cast<std::int64_t>(choose));
    if (mu < 0) term = -term;
    total += term;
    if (opt.terms) {
      opt.terms->push_back({.d = d,
                            .mu = mu,
                            .sign = 1,
                            .kind = SumTerm::Kind::binomial,
                            .exponent = top,
                            .choose = choose,
                            .subset = {},
                            .value = std::move(term)});
    }
  }
  return total;
}

void require_subset(const ElementSet& s, const Interval& r, const char* who) {
  if (!s.subset_of(r)) {
    throw std::invalid_argument(std::string(who) + ": " + s.to_string() +
                                " is not a subset of the interval");
  }
}

std::uint64_t gcd_of(const ElementSet& s) {
  return nt::gcd_fold(s.elements(), 0);
}

}  // namespace

Count phi_interval(Interval range, std::uint64_t n, const EvalOptions& opt) {
  check_modulus(n);
  Count total = power_sum(
      n, opt, [&](std::uint64_t d) { return multiples_in(range, d); });
  if (opt.raw_sum) *opt.raw_sum = total;
  // The d = 1 term alone admits X = {}, so the sum includes the empty set
  // exactly when n = 1.
  if (n == 1) --total;
  return checked(std::move(total), "phi_interval");
}

Count phi_k_interval(Interval range, std::uint64_t k, std::uint64_t n,
                     const EvalOptions& opt) {
  check_modulus(n);
  check_cardinality(k);
  Count total = binomial_sum(
      n, k, opt, [&](std::uint64_t d) { return multiples_in(range, d); });
  return checked(std::move(total), "phi_k_interval");
}

Count f_interval(Interval range, const EvalOptions& opt) {
  // The sum ranges over every d up to m, not just divisors of a modulus;
  // subtracting 1 from each power drops the empty set from every term.
  const auto mu = nt::mobius_sieve(range.hi);
  Count total = 0;
  for (std::uint64_t d = 1; d <= range.hi; ++d) {
    if (mu[d] == 0 && opt.terms == nullptr) continue;
    const std::uint64_t e = multiples_in(range, d);
    Count term = mu[d] == 0 ? Count(0) : nt::pow2(e) - 1;
    if (mu[d] < 0) term = -term;
    total += term;
    if (opt.terms) {
      opt.terms->push_back({.d = d,
                            .mu = mu[d],
                            .sign = 1,
                            .kind = SumTerm::Kind::pow2_minus_one,
                            .exponent = e,
                            .choose = 0,
                            .subset = {},
                            .value = std::move(term)});
    }
  }
  if (opt.raw_sum) *opt.raw_sum = total;
  return checked(std::move(total), "f_interval");
}

Count f_k_interval(Interval range, std::uint64_t k, const EvalOptions& opt) {
  check_cardinality(k);
  const auto mu = nt::mobius_sieve(range.hi);
  Count total = 0;
  for (std::uint64_t d = 1; d <= range.hi; ++d) {
    if (mu[d] == 0 && opt.terms == nullptr) continue;
    const std::uint64_t e = multiples_in(range, d);
    Count term = mu[d] == 0
                     ? Count(0)
                     : nt::binomial(e, static_cast<std::int64_t>(k));
    if (mu[d] < 0) term = -term;
    total += term;
    if (opt.terms) {
      opt.terms->push_back({.d = d,
                            .mu = mu[d],
                            .sign = 1,
                            .kind = SumTerm::Kind::binomial,
                            .exponent = e,
                            .choose = k,
                            .subset = {},
                            .value = std::move(term)});
    }
  }
  return checked(std::move(total), "f_k_interval");
}

Count psi(SplitUnion u, std::uint64_t n, const EvalOptions& opt) {
  check_modulus(n);
  // Only divisors of both l2 and n contribute: the counted sets all
  // contain l2, so divisors of n that miss l2 cannot divide gcd(X u {n}).
  const std::uint64_t idx = std::gcd(u.l2, n);
  Count total = power_sum(idx, opt, [&](std::uint64_t d) {
    return nt::floor_div(u.m1, d) + nt::floor_div(u.m2, d) - u.l2 / d;
  });
  if (opt.raw_sum) *opt.raw_sum = total;
  return checked(std::move(total), "psi");
}

Count psi_k(SplitUnion u, std::uint64_t k, std::uint64_t n,
            const EvalOptions& opt) {
  check_modulus(n);
  check_cardinality(k);
  const std::uint64_t idx = std::gcd(u.l2, n);
  // l2 itself is one of the k elements; the binomial places the other k-1.
  Count total = binomial_sum(idx, k - 1, opt, [&](std::uint64_t d) {
    return nt::floor_div(u.m1, d) + nt::floor_div(u.m2, d) - u.l2 / d;
  });
  return checked(std::move(total), "psi_k");
}

Count phi_union(SplitUnion u, std::uint64_t n, const EvalOptions& opt) {
  check_modulus(n);
  Count total = power_sum(n, opt, [&](std::uint64_t d) {
    return nt::floor_div(u.m1, d) + nt::floor_div(u.m2, d) -
           nt::floor_div(u.l2 - 1, d);
  });
  if (opt.raw_sum) *opt.raw_sum = total;
  if (n == 1) --total;
  return checked(std::move(total), "phi_union");
}

Count phi_k_union(SplitUnion u, std::uint64_t k, std::uint64_t n,
                  const EvalOptions& opt) {
  check_modulus(n);
  check_cardinality(k);
  Count total = binomial_sum(n, k, opt, [&](std::uint64_t d) {
    return nt::floor_div(u.m1, d) + nt::floor_div(u.m2, d) -
           nt::floor_div(u.l2 - 1, d);
  });
  return checked(std::move(total), "phi_k_union");
}

Count epsilon_interval(Interval avoid, std::uint64_t n,
                       const EvalOptions& opt) {
  check_modulus(n);
  if (avoid.hi >= n) {
    throw std::invalid_argument(
        "epsilon_interval: requires the avoided range to end below n");
  }
  // X ranges over [1,n] minus [l,m]; d | n makes n/d exact, and m < n keeps
  // every exponent non-negative.
  Count total = power_sum(n, opt, [&](std::uint64_t d) {
    return nt::floor_div(avoid.lo - 1, d) + n / d - nt::floor_div(avoid.hi, d);
  });
  if (opt.raw_sum) *opt.raw_sum = total;
  return checked(std::move(total), "epsilon_interval");
}

Count epsilon_k_interval(Interval avoid, std::uint64_t k, std::uint64_t n,
                         const EvalOptions& opt) {
  check_modulus(n);
  check_cardinality(k);
  if (avoid.hi >= n) {
    throw std::invalid_argument(
        "epsilon_k_interval: requires the avoided range to end below n");
  }
  Count total = binomial_sum(n, k, opt, [&](std::uint64_t d) {
    return nt::floor_div(avoid.lo - 1, d) + n / d - nt::floor_div(avoid.hi, d);
  });
  return checked(std::move(total), "epsilon_k_interval");
}

Count superset_phi(const ElementSet& base, Interval range, std::uint64_t n,
                   const EvalOptions& opt) {
  check_modulus(n);
  if (base.empty()) return phi_interval(range, n, opt);
  require_subset(base, range, "superset_phi");
  // Candidate divisors must divide every base element as well as n.
  const std::uint64_t idx = std::gcd(gcd_of(base), n);
  Count total = power_sum(idx, opt, [&](std::uint64_t d) {
    return drop_base(multiples_in(range, d), base.size(), "superset_phi");
  });
  if (opt.raw_sum) *opt.raw_sum = total;
  return checked(std::move(total), "superset_phi");
}

Count superset_phi_k(const ElementSet& base, Interval range, std::uint64_t k,
                     std::uint64_t n, const EvalOptions& opt) {
  check_modulus(n);
  check_cardinality(k);
  if (k < base.size() || k > range.width()) {
    throw std::invalid_argument(
        "superset_phi_k: requires #base <= k <= interval width");
  }
  if (base.empty()) return phi_k_interval(range, k, n, opt);
  require_subset(base, range, "superset_phi_k");
  const std::uint64_t idx = std::gcd(gcd_of(base), n);
  const std::uint64_t extra = k - base.size();
  Count total = binomial_sum(idx, extra, opt, [&](std::uint64_t d) {
    return drop_base(multiples_in(range, d), base.size(), "superset_phi_k");
  });
  return checked(std::move(total), "superset_phi_k");
}

Count superset_f(const ElementSet& base, Interval range,
                 const EvalOptions& opt) {
  if (base.empty()) return f_interval(range, opt);
  require_subset(base, range, "superset_f");
  const std::uint64_t idx = gcd_of(base);
  Count total = power_sum(idx, opt, [&](std::uint64_t d) {
    return drop_base(multiples_in(range, d), base.size(), "superset_f");
  });
  if (opt.raw_sum) *opt.raw_sum = total;
  return checked(std::move(total), "superset_f");
}

Count superset_f_k(const ElementSet& base, Interval range, std::uint64_t k,
                   const EvalOptions& opt) {
  check_cardinality(k);
  if (k < base.size() || k > range.width()) {
    throw std::invalid_argument(
        "superset_f_k: requires #base <= k <= interval width");
  }
  if (base.empty()) return f_k_interval(range, k, opt);
  require_subset(base, range, "superset_f_k");
  const std::uint64_t idx = gcd_of(base);
  const std::uint64_t extra = k - base.size();
  Count total = binomial_sum(idx, extra, opt, [&](std::uint64_t d) {
    return drop_base(multiples_in(range, d), base.size(), "superset_f_k");
  });
  return checked(std::move(total), "superset_f_k");
}

namespace {

// Shared driver for the meet_* families: sums inner(X) over the nonempty
// subsets X of the meet set, in increasing bit mask order. In literal mode
// every subset enters with a plus sign, which over-counts sets intersecting
// the meet set in two or more elements (a set with j meet elements is
// counted 2^j - 1 times); inclusion_exclusion weights X by (-1)^(#X+1)
// and counts each qualifying set exactly once.
// Returns true when the meet arguments admit no counted set at all: an
// empty meet set, or a cardinality bound wider than the interval.
bool meet_trivial(const ElementSet& meet, const Interval& range,
                  std::optional<std::uint64_t> size_cap,
                  std::uint64_t max_meet, const char* who) {
  if (meet.size() > max_meet) {
    throw std::invalid_argument(std::string(who) +
                                ": meet set exceeds the subset-sum cap");
  }
  require_subset(meet, range, who);
  return meet.empty() || (size_cap && *size_cap > range.width());
}

template <typename InnerFn>
Count meet_sum(const ElementSet& meet, const Interval& range,
               std::optional<std::uint64_t> size_cap, MeetMode mode,
               std::uint64_t max_meet, const EvalOptions& opt,
               const char* who, InnerFn&& inner) {
  if (meet_trivial(meet, range, size_cap, max_meet, who)) return 0;
  const auto& elems = meet.elements();
  Count total = 0;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << elems.size());
       ++mask) {
    const unsigned sz = static_cast<unsigned>(std::popcount(mask));
    // Subsets larger than the cardinality bound cannot sit inside any
    // counted set, so both modes drop them.
    if (size_cap && sz > *size_cap) continue;
    std::vector<std::uint64_t> picked;
    picked.reserve(sz);
    for (std::size_t i = 0; i < elems.size(); ++i) {
      if (mask & (std::uint64_t{1} << i)) picked.push_back(elems[i]);
    }
    const int sign =
        (mode == MeetMode::inclusion_exclusion && sz % 2 == 0) ? -1 : 1;
    std::vector<SumTerm> local;
    EvalOptions inner_opt;
    inner_opt.scan = opt.scan;
    inner_opt.terms = opt.terms ? &local : nullptr;
    Count part = inner(ElementSet(picked), inner_opt);
    if (sign < 0) {
      total -= part;
    } else {
      total += part;
    }
    if (opt.terms) {
      for (SumTerm& t : local) {
        t.sign = sign;
        if (sign < 0) t.value = -t.value;
        t.subset = picked;
        opt.terms->push_back(std::move(t));
      }
    }
  }
  return checked(std::move(total), who);
}

}  // namespace

Count meet_phi(const ElementSet& meet, Interval range, std::uint64_t n,
               MeetMode mode, const EvalOptions& opt, std::uint64_t max_meet) {
  check_modulus(n);
  return meet_sum(meet, range, std::nullopt, mode, max_meet, opt, "meet_phi",
                  [&](const ElementSet& sub, const EvalOptions& inner_opt) {
                    return superset_phi(sub, range, n, inner_opt);
                  });
}

Count meet_phi_k(const ElementSet& meet, Interval range, std::uint64_t k,
                 std::uint64_t n, MeetMode mode, const EvalOptions& opt,
                 std::uint64_t max_meet) {
  check_modulus(n);
  check_cardinality(k);
  return meet_sum(meet, range, k, mode, max_meet, opt, "meet_phi_k",
                  [&](const ElementSet& sub, const EvalOptions& inner_opt) {
                    return superset_phi_k(sub, range, k, n, inner_opt);
                  });
}

Count meet_f(const ElementSet& meet, Interval range, MeetMode mode,
             const EvalOptions& opt, std::uint64_t max_meet) {
  return meet_sum(meet, range, std::nullopt, mode, max_meet, opt, "meet_f",
                  [&](const ElementSet& sub, const EvalOptions& inner_opt) {
                    return superset_f(sub, range, inner_opt);
                  });
}

Count meet_f_k(const ElementSet& meet, Interval range, std::uint64_t k,
               MeetMode mode, const EvalOptions& opt, std::uint64_t max_meet) {
  check_cardinality(k);
  return meet_sum(meet, range, k, mode, max_meet, opt, "meet_f_k",
                  [&](const ElementSet& sub, const EvalOptions& inner_opt) {
                    return superset_f_k(sub, range, k, inner_opt);
                  });
}

}  // namespace relprime::counting
