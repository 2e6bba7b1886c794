// Python bindings for the counting library. Counts are returned as native
// Python ints (built from decimal strings) so arbitrary precision survives
// the crossing.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "relprime/counting.hpp"
#include "relprime/numtheory.hpp"
#include "relprime/oracle.hpp"

namespace py = pybind11;

namespace {

using namespace relprime;

py::int_ to_pyint(const Count& v) {
  PyObject* obj = PyLong_FromString(v.get_str().c_str(), nullptr, 10);
  if (obj == nullptr) throw py::error_already_set();
  return py::reinterpret_steal<py::int_>(obj);
}

counting::MeetMode mode_from(const std::string& s) {
  if (s == "inclusion-exclusion") return counting::MeetMode::inclusion_exclusion;
  if (s == "paper-literal") return counting::MeetMode::literal;
  throw std::invalid_argument(
      "mode must be 'inclusion-exclusion' or 'paper-literal'");
}

oracle::PredicateSpec predicate_from(const std::string& family,
                                     std::optional<std::uint64_t> n,
                                     const std::vector<std::uint64_t>& required,
                                     const std::vector<std::uint64_t>& forbidden,
                                     std::optional<std::uint64_t> k) {
  oracle::PredicateSpec pred;
  if (family == "subset-coprime-to-n") {
    pred.family = oracle::Family::subset_coprime_to_n;
  } else if (family == "subset-gcd-one") {
    pred.family = oracle::Family::subset_gcd_one;
  } else if (family == "contains-required") {
    pred.family = oracle::Family::contains_required;
  } else if (family == "avoids-forbidden") {
    pred.family = oracle::Family::avoids_forbidden;
  } else if (family == "meets-required") {
    pred.family = oracle::Family::meets_required;
  } else {
    throw std::invalid_argument("unknown predicate family: " + family);
  }
  pred.modulus = n;
  pred.required = ElementSet(required);
  pred.forbidden = ElementSet(forbidden);
  pred.cardinality = k;
  return pred;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Exact counts of relatively prime subsets and supersets of integer "
      "ranges";

  // Number-theoretic helpers.
  m.def("mobius", &numtheory::mobius, py::arg("n"));
  m.def(
      "mobius_sieve",
      [](std::uint64_t limit) {
        auto mu = numtheory::mobius_sieve(limit);
        return std::vector<int>(mu.begin(), mu.end());
      },
      py::arg("limit"),
      "List of length limit+1 with entry i = mobius(i); entry 0 is unused");
  m.def("divisors", &numtheory::divisors, py::arg("n"));
  m.def("squarefree_divisors", &numtheory::squarefree_divisors, py::arg("n"));
  m.def("radical", &numtheory::radical, py::arg("n"));
  m.def(
      "gcd_fold",
      [](const std::vector<std::uint64_t>& values, std::uint64_t seed) {
        return numtheory::gcd_fold(values, seed);
      },
      py::arg("values"), py::arg("seed") = 0);
  m.def(
      "binomial",
      [](std::uint64_t n, std::int64_t k) {
        return to_pyint(numtheory::binomial(n, k));
      },
      py::arg("n"), py::arg("k"));
  m.def(
      "binomial_range_sum",
      [](std::uint64_t L, std::uint64_t M, std::uint64_t N) {
        return to_pyint(numtheory::binomial_range_sum(L, M, N));
      },
      py::arg("L"), py::arg("M"), py::arg("N"));
  m.def(
      "pow2", [](std::uint64_t e) { return to_pyint(numtheory::pow2(e)); },
      py::arg("e"));

  // Counting operations.
  m.def(
      "phi_interval",
      [](std::uint64_t l, std::uint64_t m, std::uint64_t n) {
        return to_pyint(counting::phi_interval(Interval(l, m), n));
      },
      py::arg("l"), py::arg("m"), py::arg("n"),
      "Nonempty subsets of [l,m] whose gcd together with n is 1");
  m.def(
      "phi_k_interval",
      [](std::uint64_t l, std::uint64_t m, std::uint64_t k, std::uint64_t n) {
        return to_pyint(counting::phi_k_interval(Interval(l, m), k, n));
      },
      py::arg("l"), py::arg("m"), py::arg("k"), py::arg("n"));
  m.def(
      "f_interval",
      [](std::uint64_t l, std::uint64_t m) {
        return to_pyint(counting::f_interval(Interval(l, m)));
      },
      py::arg("l"), py::arg("m"),
      "Nonempty subsets of [l,m] with gcd 1");
  m.def(
      "f_k_interval",
      [](std::uint64_t l, std::uint64_t m, std::uint64_t k) {
        return to_pyint(counting::f_k_interval(Interval(l, m), k));
      },
      py::arg("l"), py::arg("m"), py::arg("k"));
  m.def(
      "psi",
      [](std::uint64_t m1, std::uint64_t l2, std::uint64_t m2,
         std::uint64_t n) {
        return to_pyint(counting::psi(SplitUnion(m1, l2, m2), n));
      },
      py::arg("m1"), py::arg("l2"), py::arg("m2"), py::arg("n"),
      "Subsets of [1,m1] u [l2,m2] containing l2, coprime to n");
  m.def(
      "psi_k",
      [](std::uint64_t m1, std::uint64_t l2, std::uint64_t m2, std::uint64_t k,
         std::uint64_t n) {
        return to_pyint(counting::psi_k(SplitUnion(m1, l2, m2), k, n));
      },
      py::arg("m1"), py::arg("l2"), py::arg("m2"), py::arg("k"), py::arg("n"));
  m.def(
      "phi_union",
      [](std::uint64_t m1, std::uint64_t l2, std::uint64_t m2,
         std::uint64_t n) {
        return to_pyint(counting::phi_union(SplitUnion(m1, l2, m2), n));
      },
      py::arg("m1"), py::arg("l2"), py::arg("m2"), py::arg("n"));
  m.def(
      "phi_k_union",
      [](std::uint64_t m1, std::uint64_t l2, std::uint64_t m2, std::uint64_t k,
         std::uint64_t n) {
        return to_pyint(counting::phi_k_union(SplitUnion(m1, l2, m2), k, n));
      },
      py::arg("m1"), py::arg("l2"), py::arg("m2"), py::arg("k"), py::arg("n"));
  m.def(
      "epsilon_interval",
      [](std::uint64_t l, std::uint64_t m, std::uint64_t n) {
        return to_pyint(counting::epsilon_interval(Interval(l, m), n));
      },
      py::arg("l"), py::arg("m"), py::arg("n"),
      "Nonempty subsets of [1,n] avoiding [l,m], coprime to n (m < n)");
  m.def(
      "epsilon_k_interval",
      [](std::uint64_t l, std::uint64_t m, std::uint64_t k, std::uint64_t n) {
        return to_pyint(counting::epsilon_k_interval(Interval(l, m), k, n));
      },
      py::arg("l"), py::arg("m"), py::arg("k"), py::arg("n"));
  m.def(
      "superset_phi",
      [](const std::vector<std::uint64_t>& base, std::uint64_t l,
         std::uint64_t m, std::uint64_t n) {
        return to_pyint(
            counting::superset_phi(ElementSet(base), Interval(l, m), n));
      },
      py::arg("base"), py::arg("l"), py::arg("m"), py::arg("n"),
      "Subsets of [l,m] containing base, coprime to n");
  m.def(
      "superset_phi_k",
      [](const std::vector<std::uint64_t>& base, std::uint64_t l,
         std::uint64_t m, std::uint64_t k, std::uint64_t n) {
        return to_pyint(
            counting::superset_phi_k(ElementSet(base), Interval(l, m), k, n));
      },
      py::arg("base"), py::arg("l"), py::arg("m"), py::arg("k"), py::arg("n"));
  m.def(
      "superset_f",
      [](const std::vector<std::uint64_t>& base, std::uint64_t l,
         std::uint64_t m) {
        return to_pyint(
            counting::superset_f(ElementSet(base), Interval(l, m)));
      },
      py::arg("base"), py::arg("l"), py::arg("m"));
  m.def(
      "superset_f_k",
      [](const std::vector<std::uint64_t>& base, std::uint64_t l,
         std::uint64_t m, std::uint64_t k) {
        return to_pyint(
            counting::superset_f_k(ElementSet(base), Interval(l, m), k));
      },
      py::arg("base"), py::arg("l"), py::arg("m"), py::arg("k"));
  m.def(
      "meet_phi",
      [](const std::vector<std::uint64_t>& meet, std::uint64_t l,
         std::uint64_t m, std::uint64_t n, const std::string& mode) {
        return to_pyint(counting::meet_phi(ElementSet(meet), Interval(l, m), n,
                                           mode_from(mode)));
      },
      py::arg("meet"), py::arg("l"), py::arg("m"), py::arg("n"),
      py::arg("mode") = "inclusion-exclusion",
      "Subsets of [l,m] meeting the given set, coprime to n");
  m.def(
      "meet_phi_k",
      [](const std::vector<std::uint64_t>& meet, std::uint64_t l,
         std::uint64_t m, std::uint64_t k, std::uint64_t n,
         const std::string& mode) {
        return to_pyint(counting::meet_phi_k(ElementSet(meet), Interval(l, m),
                                             k, n, mode_from(mode)));
      },
      py::arg("meet"), py::arg("l"), py::arg("m"), py::arg("k"), py::arg("n"),
      py::arg("mode") = "inclusion-exclusion");
  m.def(
      "meet_f",
      [](const std::vector<std::uint64_t>& meet, std::uint64_t l,
         std::uint64_t m, const std::string& mode) {
        return to_pyint(counting::meet_f(ElementSet(meet), Interval(l, m),
                                         mode_from(mode)));
      },
      py::arg("meet"), py::arg("l"), py::arg("m"),
      py::arg("mode") = "inclusion-exclusion");
  m.def(
      "meet_f_k",
      [](const std::vector<std::uint64_t>& meet, std::uint64_t l,
         std::uint64_t m, std::uint64_t k, const std::string& mode) {
        return to_pyint(counting::meet_f_k(ElementSet(meet), Interval(l, m), k,
                                           mode_from(mode)));
      },
      py::arg("meet"), py::arg("l"), py::arg("m"), py::arg("k"),
      py::arg("mode") = "inclusion-exclusion");

  // Brute-force oracle.
  m.def(
      "enumerate_count",
      [](const std::vector<std::uint64_t>& universe, const std::string& family,
         std::optional<std::uint64_t> n,
         const std::vector<std::uint64_t>& required,
         const std::vector<std::uint64_t>& forbidden,
         std::optional<std::uint64_t> k, std::uint64_t cap) {
        oracle::UniverseSpec spec{ElementSet(universe), cap};
        return to_pyint(oracle::enumerate_count(
            spec, predicate_from(family, n, required, forbidden, k)));
      },
      py::arg("universe"), py::arg("family"), py::kw_only(),
      py::arg("n") = std::nullopt,
      py::arg("required") = std::vector<std::uint64_t>{},
      py::arg("forbidden") = std::vector<std::uint64_t>{},
      py::arg("k") = std::nullopt,
      py::arg("cap") = oracle::kDefaultUniverseCap,
      "Count subsets of an explicit universe by direct enumeration");
  m.def(
      "enumerate_witnesses",
      [](const std::vector<std::uint64_t>& universe, const std::string& family,
         std::uint64_t limit, std::optional<std::uint64_t> n,
         const std::vector<std::uint64_t>& required,
         const std::vector<std::uint64_t>& forbidden,
         std::optional<std::uint64_t> k, std::uint64_t cap) {
        oracle::UniverseSpec spec{ElementSet(universe), cap};
        auto sets = oracle::enumerate_witnesses(
            spec, predicate_from(family, n, required, forbidden, k), limit);
        std::vector<std::vector<std::uint64_t>> out;
        out.reserve(sets.size());
        for (const auto& s : sets) out.push_back(s.elements());
        return out;
      },
      py::arg("universe"), py::arg("family"), py::arg("limit"), py::kw_only(),
      py::arg("n") = std::nullopt,
      py::arg("required") = std::vector<std::uint64_t>{},
      py::arg("forbidden") = std::vector<std::uint64_t>{},
      py::arg("k") = std::nullopt,
      py::arg("cap") = oracle::kDefaultUniverseCap,
      "First qualifying subsets in binary-counter order");

#ifdef VERSION_INFO
  m.attr("__version__") = VERSION_INFO;
#else
  m.attr("__version__") = "dev";
#endif
}
