#pragma once

// Command-line front end. The actual argument parsing lives in run(); the
// building blocks (family dispatch, oracle mirroring, the check and bench
// drivers, the deterministic samplers) are exposed so tests and the
// acceptance suite can call them directly.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "relprime/counting.hpp"
#include "relprime/oracle.hpp"

namespace relprime::cli {

// One parameter point for a named counting family ("phi", "meet-f-k", ...).
struct FamilyArgs {
  std::string family;
  std::optional<std::uint64_t> l, m, n, k, m1, l2, m2;
  std::vector<std::uint64_t> base;  // superset-* families
  std::vector<std::uint64_t> meet;  // meet-* families
  counting::MeetMode mode = counting::MeetMode::inclusion_exclusion;
};

// All family names, in canonical listing order.
const std::vector<std::string>& family_names();

// Scalar parameter names of a family, in CLI and table-column order.
// Throws on an unknown family name.
std::vector<std::string> family_params(const std::string& family);

bool family_takes_base(const std::string& family);
bool family_takes_meet(const std::string& family);

// Evaluate the closed form at the given point. Missing or out-of-range
// parameters raise std::invalid_argument.
Count evaluate(const FamilyArgs& a, const counting::EvalOptions& opt = {});

// Size of the universe the matching brute-force enumeration walks.
std::uint64_t universe_size(const FamilyArgs& a);

// Brute-force count for the same point (throws when the universe is larger
// than cap).
Count oracle_count(const FamilyArgs& a,
                   std::uint64_t cap = oracle::kDefaultUniverseCap);

// First `limit` qualifying subsets for the same point.
std::vector<ElementSet> oracle_witnesses(
    const FamilyArgs& a, std::uint64_t limit,
    std::uint64_t cap = oracle::kDefaultUniverseCap);

// Deterministic sampler used by check and the acceptance suite. Draws with
// gen() % bound, which is reproducible across platforms for a fixed seed
// (std::uniform_int_distribution is not).
class SampleRng {
 public:
  explicit SampleRng(std::uint64_t seed) : gen_(seed) {}
  std::uint64_t below(std::uint64_t bound);           // uniform in [0, bound)
  std::uint64_t in(std::uint64_t lo, std::uint64_t hi);  // uniform in [lo, hi]

 private:
  std::mt19937_64 gen_;
};

// Random (base, [l,m], n, k) instance for the superset families. Every 8th
// draw forces an empty base and every 16th forces n = 1 so the delegation
// paths stay covered.
struct SupersetSample {
  std::uint64_t l = 1, m = 1, n = 1, k = 1;
  std::vector<std::uint64_t> base;
};
SupersetSample draw_superset_sample(SampleRng& rng, std::uint64_t index,
                                    std::uint64_t max_m, std::uint64_t max_n);

// Random (meet, [l,m], n, k) instance for the meet families; the meet set is
// nonempty with at most max_meet_size elements.
struct MeetSample {
  std::uint64_t l = 1, m = 1, n = 1, k = 1;
  std::vector<std::uint64_t> meet;
};
MeetSample draw_meet_sample(SampleRng& rng, std::uint64_t index,
                            std::uint64_t max_m, std::uint64_t max_n,
                            std::uint64_t max_meet_size = 4);

struct CheckOptions {
  std::vector<std::string> families;  // expanded family names
  std::uint64_t max_m = 8;
  std::uint64_t max_n = 12;
  std::uint64_t samples = 100;  // sampled families (superset-*, meet-*)
  std::uint64_t seed = 1;
  counting::MeetMode mode = counting::MeetMode::inclusion_exclusion;
  std::uint64_t oracle_cap = oracle::kDefaultUniverseCap;
  std::string format = "plain";  // plain | csv | json
};

// Compare closed forms against the oracle over exhaustive grids (interval,
// union and avoidance families) or seeded samples (superset and meet
// families). The report on `out` is deterministic for fixed options; wall
// time goes to `err`. Returns the number of mismatching cases.
std::uint64_t run_check(const CheckOptions& o, std::ostream& out,
                        std::ostream& err);

struct BenchOptions {
  FamilyArgs point;
  std::uint64_t reps = 5;
  std::uint64_t oracle_cap = oracle::kDefaultUniverseCap;
  std::string format = "plain";
};

struct BenchResult {
  Count count;
  double closed_form_seconds = 0.0;
  std::uint64_t universe = 0;
  bool oracle_feasible = false;
  double oracle_seconds = 0.0;
  Count oracle_result;
  bool counts_match = true;  // vacuously true when the oracle leg is skipped
};

BenchResult run_bench(const BenchOptions& o, std::ostream& out);

// Full command-line entry points; return the process exit code
// (0 success, 1 mismatch, 2 usage or precondition error).
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);
int run(int argc, const char* const* argv);

}  // namespace relprime::cli
