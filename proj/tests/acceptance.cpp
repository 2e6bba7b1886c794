// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Each criterion re-derives counts with the brute-force enumerator or an
// algebraic identity, so a pass means the closed forms, the oracle, the
// samplers and the reporting pipeline all agree end to end.

#include <chrono>
#include <cstdint>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "relprime/cli.hpp"
#include "relprime/counting.hpp"
#include "relprime/numtheory.hpp"
#include "relprime/types.hpp"

using relprime::Count;
using relprime::ElementSet;
using relprime::Interval;
using relprime::SplitUnion;
namespace cli = relprime::cli;
namespace counting = relprime::counting;
namespace numtheory = relprime::numtheory;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

cli::FamilyArgs point(const std::string& family) {
  cli::FamilyArgs a;
  a.family = family;
  return a;
}

std::string point_text(const cli::FamilyArgs& a) {
  std::ostringstream s;
  s << a.family;
  if (a.l) s << " l=" << *a.l;
  if (a.m) s << " m=" << *a.m;
  if (a.m1) s << " m1=" << *a.m1;
  if (a.l2) s << " l2=" << *a.l2;
  if (a.m2) s << " m2=" << *a.m2;
  if (a.k) s << " k=" << *a.k;
  if (a.n) s << " n=" << *a.n;
  if (cli::family_takes_base(a.family)) {
    s << " base=" << ElementSet(a.base).to_string();
  }
  if (cli::family_takes_meet(a.family)) {
    s << " meet=" << ElementSet(a.meet).to_string();
  }
  return s.str();
}

// Closed form versus enumeration at one point; fills `bad` on disagreement.
bool agree(const cli::FamilyArgs& a, std::string& bad) {
  const Count lhs = cli::evaluate(a);
  const Count rhs = cli::oracle_count(a);
  if (lhs == rhs) return true;
  bad = point_text(a) + " closed-form " + lhs.get_str() + " vs enumeration " +
        rhs.get_str();
  return false;
}

// 1. Interval families, exhaustively: 1 <= l <= m <= 14, moduli up to 30,
//    every cardinality.
Outcome interval_families() {
  std::uint64_t cases = 0;
  std::string bad;
  for (std::uint64_t l = 1; l <= 14; ++l) {
    for (std::uint64_t m = l; m <= 14; ++m) {
      const std::uint64_t width = m - l + 1;
      auto a = point("f");
      a.l = l;
      a.m = m;
      if (!agree(a, bad)) return {false, bad};
      ++cases;
      for (std::uint64_t k = 1; k <= width; ++k) {
        a = point("f-k");
        a.l = l;
        a.m = m;
        a.k = k;
        if (!agree(a, bad)) return {false, bad};
        ++cases;
      }
      for (std::uint64_t n = 1; n <= 30; ++n) {
        a = point("phi");
        a.l = l;
        a.m = m;
        a.n = n;
        if (!agree(a, bad)) return {false, bad};
        ++cases;
        for (std::uint64_t k = 1; k <= width; ++k) {
          a = point("phi-k");
          a.l = l;
          a.m = m;
          a.k = k;
          a.n = n;
          if (!agree(a, bad)) return {false, bad};
          ++cases;
        }
      }
    }
  }
  return {true, std::to_string(cases) + " cases"};
}

// 2. Split-union families, exhaustively: m1 < l2 <= m2 <= 12, moduli up to
//    20, every cardinality.
Outcome union_families() {
  std::uint64_t cases = 0;
  std::string bad;
  for (std::uint64_t m1 = 1; m1 <= 11; ++m1) {
    for (std::uint64_t l2 = m1 + 1; l2 <= 12; ++l2) {
      for (std::uint64_t m2 = l2; m2 <= 12; ++m2) {
        const std::uint64_t size = m1 + (m2 - l2 + 1);
        for (std::uint64_t n = 1; n <= 20; ++n) {
          auto a = point("psi");
          a.m1 = m1;
          a.l2 = l2;
          a.m2 = m2;
          a.n = n;
          if (!agree(a, bad)) return {false, bad};
          ++cases;
          a.family = "phi-union";
          if (!agree(a, bad)) return {false, bad};
          ++cases;
          for (std::uint64_t k = 1; k <= size; ++k) {
            a.family = "psi-k";
            a.k = k;
            if (!agree(a, bad)) return {false, bad};
            ++cases;
            a.family = "phi-k-union";
            if (!agree(a, bad)) return {false, bad};
            ++cases;
          }
          a.k.reset();
        }
      }
    }
  }
  return {true, std::to_string(cases) + " cases"};
}

// 3. Avoidance families over every valid triple l <= m < n <= 18, which
//    includes the l = 1 and m = n - 1 edges, plus the first empty
//    cardinality past each window.
Outcome avoidance_families() {
  std::uint64_t cases = 0;
  std::string bad;
  for (std::uint64_t n = 2; n <= 18; ++n) {
    for (std::uint64_t l = 1; l < n; ++l) {
      for (std::uint64_t m = l; m < n; ++m) {
        const std::uint64_t width = m - l + 1;
        auto a = point("eps");
        a.l = l;
        a.m = m;
        a.n = n;
        if (!agree(a, bad)) return {false, bad};
        ++cases;
        for (std::uint64_t k = 1; k <= n - width + 1; ++k) {
          a = point("eps-k");
          a.l = l;
          a.m = m;
          a.k = k;
          a.n = n;
          if (!agree(a, bad)) return {false, bad};
          ++cases;
        }
      }
    }
  }
  return {true, std::to_string(cases) + " cases"};
}

// 4. Superset families on 500 seeded samples with m <= 14 and n <= 30; the
//    sampler periodically forces an empty base and n = 1.
Outcome superset_families() {
  std::uint64_t cases = 0;
  bool saw_empty_base = false;
  bool saw_n_one = false;
  std::string bad;
  cli::SampleRng rng(20240801);
  for (std::uint64_t i = 0; i < 500; ++i) {
    const cli::SupersetSample s = cli::draw_superset_sample(rng, i, 14, 30);
    saw_empty_base = saw_empty_base || s.base.empty();
    saw_n_one = saw_n_one || s.n == 1;

    auto a = point("superset-phi");
    a.l = s.l;
    a.m = s.m;
    a.n = s.n;
    a.base = s.base;
    if (!agree(a, bad)) return {false, bad};
    ++cases;

    a.family = "superset-phi-k";
    a.k = s.k;
    if (!agree(a, bad)) return {false, bad};
    ++cases;

    a = point("superset-f");
    a.l = s.l;
    a.m = s.m;
    a.base = s.base;
    if (!agree(a, bad)) return {false, bad};
    ++cases;

    a.family = "superset-f-k";
    a.k = s.k;
    if (!agree(a, bad)) return {false, bad};
    ++cases;
  }
  if (!saw_empty_base) return {false, "no sample exercised an empty base"};
  if (!saw_n_one) return {false, "no sample exercised n = 1"};
  return {true, std::to_string(cases) + " cases, empty base and n = 1 seen"};
}

// 5. Meet families on 200 seeded samples (meet sets of at most 4 elements,
//    m <= 12, n <= 20): the inclusion-exclusion mode must match enumeration
//    everywhere, and the literal subset sum must be caught over-counting,
//    with a witness and its multiplicity in the report.
Outcome meet_families(std::string& note) {
  cli::CheckOptions o;
  o.families = {"meet-phi", "meet-phi-k", "meet-f", "meet-f-k"};
  o.max_m = 12;
  o.max_n = 20;
  o.samples = 50;  // per family, 200 points in total
  o.seed = 11;

  std::ostringstream out, err;
  const std::uint64_t bad_ie = cli::run_check(o, out, err);
  if (bad_ie != 0) {
    return {false, "inclusion-exclusion disagreed " +
                       std::to_string(bad_ie) + " times"};
  }

  o.mode = counting::MeetMode::literal;
  std::ostringstream lit_out, lit_err;
  const std::uint64_t bad_lit = cli::run_check(o, lit_out, lit_err);
  if (bad_lit == 0) {
    return {false, "literal subset sum was never caught over-counting"};
  }
  const std::string text = lit_out.str();
  const auto pos = text.find("witness {");
  const auto mult = text.find("counts it");
  if (pos == std::string::npos || mult == std::string::npos) {
    return {false, "no over-counted witness with multiplicity in the report"};
  }
  const auto line_start = text.rfind('\n', pos) + 1;
  const auto line_end = text.find('\n', pos);
  note = text.substr(line_start, line_end - line_start);
  return {true, "inclusion-exclusion clean, literal over-counts " +
                    std::to_string(bad_lit) + " of 200 samples"};
}

// 6. Algebraic cross-checks: cardinality partitions, the union telescoping
//    over the anchor element, avoidance delegating to the complement, and
//    the closed binomial range sum against literal summation up to 60.
Outcome identities() {
  std::uint64_t cases = 0;
  std::mt19937_64 gen(7);
  const auto draw = [&gen](std::uint64_t lo, std::uint64_t hi) {
    return lo + gen() % (hi - lo + 1);
  };

  for (int i = 0; i < 300; ++i) {
    const std::uint64_t l = draw(1, 20);
    const std::uint64_t m = draw(l, l + 11);
    const std::uint64_t n = draw(1, 40);
    const Interval r(l, m);
    Count phi_sum = 0, f_sum = 0;
    for (std::uint64_t k = 1; k <= r.width(); ++k) {
      phi_sum += counting::phi_k_interval(r, k, n);
      f_sum += counting::f_k_interval(r, k);
    }
    const std::string at =
        "[" + std::to_string(l) + "," + std::to_string(m) + "]";
    if (phi_sum != counting::phi_interval(r, n)) {
      return {false,
              "cardinality partition failed at " + at + " n=" + std::to_string(n)};
    }
    if (f_sum != counting::f_interval(r)) {
      return {false, "cardinality partition failed at " + at};
    }
    cases += 2;
  }

  for (int i = 0; i < 300; ++i) {
    const std::uint64_t m1 = draw(1, 12);
    const std::uint64_t l2 = draw(m1 + 1, m1 + 9);
    const std::uint64_t m2 = draw(l2, l2 + 9);
    const std::uint64_t n = draw(1, 30);
    Count total = counting::phi_interval(Interval(1, m1), n);
    for (std::uint64_t j = l2; j <= m2; ++j) {
      total += counting::psi(SplitUnion(m1, j, m2), n);
    }
    if (total != counting::phi_union(SplitUnion(m1, l2, m2), n)) {
      return {false, "telescoping failed at m1=" + std::to_string(m1) +
                         " l2=" + std::to_string(l2) +
                         " m2=" + std::to_string(m2) +
                         " n=" + std::to_string(n)};
    }
    ++cases;
  }

  for (int i = 0; i < 300; ++i) {
    const std::uint64_t n = draw(2, 40);
    const std::uint64_t l = draw(1, n - 1);
    const std::uint64_t m = draw(l, n - 1);
    const Count eps = counting::epsilon_interval(Interval(l, m), n);
    const Count direct =
        l == 1 ? counting::phi_interval(Interval(m + 1, n), n)
               : counting::phi_union(SplitUnion(l - 1, m + 1, n), n);
    if (eps != direct) {
      return {false, "avoidance delegation failed at l=" + std::to_string(l) +
                         " m=" + std::to_string(m) +
                         " n=" + std::to_string(n)};
    }
    ++cases;
  }

  for (int i = 0; i < 500; ++i) {
    const std::uint64_t L = draw(0, 60);
    const std::uint64_t M = draw(L, 60);
    const std::uint64_t N = draw(M, 60);
    Count literal = 0;
    for (std::uint64_t j = M; j <= N; ++j) {
      literal += numtheory::binomial(j, static_cast<std::int64_t>(L));
    }
    if (literal != numtheory::binomial_range_sum(L, M, N)) {
      return {false, "binomial range sum failed at L=" + std::to_string(L) +
                         " M=" + std::to_string(M) +
                         " N=" + std::to_string(N)};
    }
    ++cases;
  }

  return {true, std::to_string(cases) + " cases"};
}

// 7. Performance: a width 10^6 interval count stays under a second, and at
//    width 24 the closed form beats enumeration by at least three orders of
//    magnitude while agreeing with it.
Outcome performance() {
  const auto t0 = std::chrono::steady_clock::now();
  const Count big = counting::phi_interval(Interval(1, 1000000), 30030);
  const double big_seconds = seconds_since(t0);
  if (big <= 0) return {false, "width 10^6 count was not positive"};
  if (big_seconds >= 1.0) {
    return {false, "width 10^6 evaluation took " +
                       std::to_string(big_seconds) + " s"};
  }

  cli::BenchOptions b;
  b.point = point("phi");
  b.point.l = 1;
  b.point.m = 24;
  b.point.n = 30030;
  b.reps = 5;
  std::ostringstream sink;
  const cli::BenchResult r = cli::run_bench(b, sink);
  if (!r.oracle_feasible) return {false, "enumeration leg did not run"};
  if (!r.counts_match) return {false, "bench legs disagreed"};
  const double speedup = r.oracle_seconds / r.closed_form_seconds;
  if (speedup < 1000.0) {
    return {false, "speedup only " + std::to_string(speedup) + "x"};
  }
  std::ostringstream d;
  d << "width 10^6 in " << big_seconds << " s, width 24 speedup "
    << static_cast<std::uint64_t>(speedup) << "x";
  return {true, d.str()};
}

// 8. Reproducibility: the full check report is byte-identical across runs
//    for a fixed seed.
Outcome reproducibility() {
  cli::CheckOptions o;
  o.families = {"superset-phi", "superset-f-k", "meet-phi", "meet-f"};
  o.max_m = 10;
  o.max_n = 14;
  o.samples = 100;
  o.seed = 5;

  std::ostringstream out1, err1, out2, err2;
  const std::uint64_t bad1 = cli::run_check(o, out1, err1);
  const std::uint64_t bad2 = cli::run_check(o, out2, err2);
  if (bad1 != 0 || bad2 != 0) return {false, "sampled checks found mismatches"};
  if (out1.str() != out2.str()) {
    return {false, "reports differ between identical runs"};
  }
  return {true, std::to_string(out1.str().size()) + " report bytes identical"};
}

}  // namespace

int main() {
  int failed = 0;
  int index = 0;
  std::string meet_note;

  const auto report = [&](const char* name, double budget, Outcome o,
                          double elapsed) {
    ++index;
    if (elapsed > budget) {
      o.ok = false;
      o.detail += (o.detail.empty() ? "" : "; ");
      o.detail += "exceeded the " + std::to_string(budget) + " s budget";
    }
    if (!o.ok) ++failed;
    std::ostringstream line;
    line.setf(std::ios::fixed);
    line.precision(1);
    line << (o.ok ? "PASS" : "FAIL") << " " << index << ". " << name << " ["
         << elapsed << " s]";
    if (!o.detail.empty()) line << " (" << o.detail << ")";
    std::cout << line.str() << "\n";
  };

  const auto timed = [&](const char* name, double budget, auto&& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o = fn();
    report(name, budget, std::move(o), seconds_since(t0));
  };

  timed("interval families match enumeration (m <= 14, n <= 30, all k)", 60.0,
        interval_families);
  timed("split-union families match enumeration (m2 <= 12, n <= 20, all k)",
        120.0, union_families);
  timed("avoidance families match enumeration (all l <= m < n <= 18)", 60.0,
        avoidance_families);
  timed("superset families match enumeration on 500 seeded samples", 60.0,
        superset_families);
  timed("meet families: inclusion-exclusion exact, literal over-count caught",
        60.0, [&] { return meet_families(meet_note); });
  if (!meet_note.empty()) std::cout << "     note: " << meet_note << "\n";
  timed("partition, telescoping and binomial range-sum identities hold", 60.0,
        identities);
  timed("closed forms stay fast and beat enumeration by 1000x", 60.0,
        performance);
  timed("check reports are byte-identical for a fixed seed", 60.0,
        reproducibility);

  std::cout << "acceptance: " << (8 - failed) << " of 8 criteria passed"
            << std::endl;
  return failed == 0 ? 0 : 1;
}
