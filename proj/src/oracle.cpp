#include "relprime/oracle.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

namespace relprime::oracle {

namespace {

// Enumeration beyond 2^62 subsets is out of reach no matter the cap.
constexpr std::uint64_t kHardSizeLimit = 62;

void validate(const UniverseSpec& universe, const PredicateSpec& pred) {
  if (universe.elements.size() > universe.cap) {
    throw std::invalid_argument(
        "oracle: universe of " + std::to_string(universe.elements.size()) +
        " elements exceeds the cap of " + std::to_string(universe.cap));
  }
  if (universe.elements.size() > kHardSizeLimit) {
    throw std::invalid_argument("oracle: universe too large to enumerate");
  }
  const bool has_mod = pred.modulus.has_value();
  if (has_mod && *pred.modulus == 0) {
    throw std::invalid_argument("oracle: modulus must be >= 1");
  }
  switch (pred.family) {
    case Family::subset_coprime_to_n:
      if (!has_mod) {
        throw std::invalid_argument("oracle: coprime family needs a modulus");
      }
      break;
    case Family::subset_gcd_one:
      if (has_mod) {
        throw std::invalid_argument(
            "oracle: gcd-one family takes no modulus");
      }
      break;
    default:
      break;
  }
  const bool wants_required = pred.family == Family::contains_required ||
                              pred.family == Family::meets_required;
  if (!wants_required && !pred.required.empty()) {
    throw std::invalid_argument(
        "oracle: required set given to a family that ignores it");
  }
  if (pred.family != Family::avoids_forbidden && !pred.forbidden.empty()) {
    throw std::invalid_argument(
        "oracle: forbidden set given to a family that ignores it");
  }
  if (pred.cardinality && *pred.cardinality == 0) {
    throw std::invalid_argument("oracle: cardinality must be >= 1");
  }
}

// Depth-first walk over the subset tree. Element i of the sorted universe
// is bit i of the mask; the walk decides the highest bit first and takes
// the exclude branch before the include branch, which visits masks in
// increasing numeric order (the binary-counter order witnesses promise).
struct Walker {
  const std::vector<std::uint64_t>& elems;
  const PredicateSpec& pred;

  std::uint64_t count = 0;
  std::vector<ElementSet>* witnesses = nullptr;
  std::uint64_t witness_limit = 0;

  std::vector<std::uint64_t> chosen;
  std::size_t required_in = 0;
  std::size_t forbidden_in = 0;
  // Sound only for the plain contains_required count: once the gcd has hit
  // 1 with the whole required set included, every completion qualifies.
  bool allow_early_exit = false;

  bool witnesses_full() const {
    return witnesses != nullptr && witnesses->size() >= witness_limit;
  }

  void leaf(std::uint64_t g) {
    if (chosen.empty()) return;
    if (pred.cardinality && chosen.size() != *pred.cardinality) return;
    switch (pred.family) {
      case Family::contains_required:
        if (required_in != pred.required.size()) return;
        break;
      case Family::avoids_forbidden:
        if (forbidden_in != 0) return;
        break;
      case Family::meets_required:
        if (required_in == 0) return;
        break;
      default:
        break;
    }
    if (g != 1) return;
    if (witnesses) {
      witnesses->push_back(ElementSet(chosen));
    } else {
      ++count;
    }
  }

  // undecided = number of elements still to decide (indices 0..undecided-1);
  // g = gcd of the chosen elements plus the modulus when present (0 = empty).
  void walk(std::size_t undecided, std::uint64_t g) {
    if (witnesses_full()) return;
    if (allow_early_exit && g == 1 && !chosen.empty() &&
        required_in == pred.required.size()) {
      count += std::uint64_t{1} << undecided;
      return;
    }
    if (undecided == 0) {
      leaf(g);
      return;
    }
    const std::size_t i = undecided - 1;
    walk(i, g);
    const std::uint64_t e = elems[i];
    const bool in_required = pred.required.contains(e);
    const bool in_forbidden = pred.forbidden.contains(e);
    chosen.push_back(e);
    required_in += in_required;
    forbidden_in += in_forbidden;
    walk(i, std::gcd(g, e));
    chosen.pop_back();
    required_in -= in_required;
    forbidden_in -= in_forbidden;
  }
};

}  // namespace

UniverseSpec universe_of(const Interval& r, std::uint64_t cap) {
  if (r.width() > kHardSizeLimit) {
    throw std::invalid_argument("oracle: interval too wide to materialize");
  }
  std::vector<std::uint64_t> elems;
  elems.reserve(r.width());
  for (std::uint64_t v = r.lo; v <= r.hi; ++v) elems.push_back(v);
  return UniverseSpec{ElementSet(std::move(elems)), cap};
}

UniverseSpec universe_of(const SplitUnion& u, std::uint64_t cap) {
  if (u.size() > kHardSizeLimit) {
    throw std::invalid_argument("oracle: union too wide to materialize");
  }
  std::vector<std::uint64_t> elems;
  elems.reserve(u.size());
  for (std::uint64_t v = 1; v <= u.m1; ++v) elems.push_back(v);
  for (std::uint64_t v = u.l2; v <= u.m2; ++v) elems.push_back(v);
  return UniverseSpec{ElementSet(std::move(elems)), cap};
}

Count enumerate_count(const UniverseSpec& universe, const PredicateSpec& pred) {
  validate(universe, pred);
  Walker w{universe.elements.elements(), pred};
  w.allow_early_exit = pred.family == Family::contains_required &&
                       !pred.modulus && !pred.cardinality &&
                       !pred.required.empty();
  w.walk(w.elems.size(), pred.modulus.value_or(0));
  return Count(static_cast<unsigned long>(w.count));
}

std::vector<ElementSet> enumerate_witnesses(const UniverseSpec& universe,
                                            const PredicateSpec& pred,
                                            std::uint64_t limit) {
  validate(universe, pred);
  if (limit == 0) {
    throw std::invalid_argument("oracle: witness limit must be >= 1");
  }
  std::vector<ElementSet> out;
  Walker w{universe.elements.elements(), pred};
  w.witnesses = &out;
  w.witness_limit = limit;
  w.walk(w.elems.size(), pred.modulus.value_or(0));
  return out;
}

}  // namespace relprime::oracle
