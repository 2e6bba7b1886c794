#include "relprime/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cerrno>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>

namespace relprime::cli {

namespace {

using counting::EvalOptions;
using counting::MeetMode;
using counting::SumTerm;
using ordered_json = nlohmann::ordered_json;

struct FamilyInfo {
  const char* name;
  std::vector<std::string> params;  // scalar parameters, in column order
  bool takes_base;
  bool takes_meet;
};

const std::vector<FamilyInfo>& family_table() {
  static const std::vector<FamilyInfo> t = {
      {"phi", {"l", "m", "n"}, false, false},
      {"phi-k", {"l", "m", "k", "n"}, false, false},
      {"f", {"l", "m"}, false, false},
      {"f-k", {"l", "m", "k"}, false, false},
      {"psi", {"m1", "l2", "m2", "n"}, false, false},
      {"psi-k", {"m1", "l2", "m2", "k", "n"}, false, false},
      {"phi-union", {"m1", "l2", "m2", "n"}, false, false},
      {"phi-k-union", {"m1", "l2", "m2", "k", "n"}, false, false},
      {"eps", {"l", "m", "n"}, false, false},
      {"eps-k", {"l", "m", "k", "n"}, false, false},
      {"superset-phi", {"l", "m", "n"}, true, false},
      {"superset-phi-k", {"l", "m", "k", "n"}, true, false},
      {"superset-f", {"l", "m"}, true, false},
      {"superset-f-k", {"l", "m", "k"}, true, false},
      {"meet-phi", {"l", "m", "n"}, false, true},
      {"meet-phi-k", {"l", "m", "k", "n"}, false, true},
      {"meet-f", {"l", "m"}, false, true},
      {"meet-f-k", {"l", "m", "k"}, false, true},
  };
  return t;
}

const FamilyInfo& family_info(const std::string& name) {
  for (const auto& fi : family_table()) {
    if (name == fi.name) return fi;
  }
  throw std::invalid_argument("unknown family: " + name);
}

std::uint64_t need(const std::optional<std::uint64_t>& v, const char* what,
                   const std::string& family) {
  if (!v) {
    throw std::invalid_argument("missing --" + std::string(what) + " for " +
                                family);
  }
  return *v;
}

const std::optional<std::uint64_t>& param_ref(const FamilyArgs& a,
                                              const std::string& p) {
  if (p == "l") return a.l;
  if (p == "m") return a.m;
  if (p == "n") return a.n;
  if (p == "k") return a.k;
  if (p == "m1") return a.m1;
  if (p == "l2") return a.l2;
  if (p == "m2") return a.m2;
  throw std::invalid_argument("unknown parameter name: " + p);
}

std::optional<std::uint64_t>& param_ref(FamilyArgs& a, const std::string& p) {
  return const_cast<std::optional<std::uint64_t>&>(
      param_ref(static_cast<const FamilyArgs&>(a), p));
}

const char* mode_name(MeetMode mode) {
  return mode == MeetMode::inclusion_exclusion ? "inclusion-exclusion"
                                               : "paper-literal";
}

MeetMode parse_mode(const std::string& s) {
  if (s == "inclusion-exclusion") return MeetMode::inclusion_exclusion;
  if (s == "paper-literal") return MeetMode::literal;
  throw std::invalid_argument(
      "mode must be inclusion-exclusion or paper-literal");
}

std::string set_text(const std::vector<std::uint64_t>& vs) {
  return ElementSet(vs).to_string();
}

// "l=1 m=2 n=6 meet={1,2} mode=paper-literal"
std::string describe(const FamilyArgs& a) {
  const FamilyInfo& fi = family_info(a.family);
  std::string s;
  for (const auto& p : fi.params) {
    const auto& v = param_ref(a, p);
    if (!v) continue;
    if (!s.empty()) s += ' ';
    s += p + "=" + std::to_string(*v);
  }
  if (fi.takes_base) s += " base=" + set_text(a.base);
  if (fi.takes_meet) {
    s += " meet=" + set_text(a.meet);
    s += " mode=" + std::string(mode_name(a.mode));
  }
  return s;
}

void put_params(ordered_json& j, const FamilyArgs& a) {
  const FamilyInfo& fi = family_info(a.family);
  for (const auto& p : fi.params) {
    const auto& v = param_ref(a, p);
    if (v) j[p] = *v;
  }
  if (fi.takes_base) j["base"] = ElementSet(a.base).elements();
  if (fi.takes_meet) {
    j["meet"] = ElementSet(a.meet).elements();
    j["mode"] = mode_name(a.mode);
  }
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

std::string format_seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", s);
  return buf;
}

}  // namespace

const std::vector<std::string>& family_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& fi : family_table()) v.push_back(fi.name);
    return v;
  }();
  return names;
}

std::vector<std::string> family_params(const std::string& family) {
  return family_info(family).params;
}

bool family_takes_base(const std::string& family) {
  return family_info(family).takes_base;
}

bool family_takes_meet(const std::string& family) {
  return family_info(family).takes_meet;
}

Count evaluate(const FamilyArgs& a, const EvalOptions& opt) {
  namespace c = counting;
  const std::string& f = a.family;
  const auto interval = [&] { return Interval(need(a.l, "l", f), need(a.m, "m", f)); };
  const auto split = [&] {
    return SplitUnion(need(a.m1, "m1", f), need(a.l2, "l2", f),
                      need(a.m2, "m2", f));
  };
  const auto n = [&] { return need(a.n, "n", f); };
  const auto k = [&] { return need(a.k, "k", f); };

  if (f == "phi") return c::phi_interval(interval(), n(), opt);
  if (f == "phi-k") return c::phi_k_interval(interval(), k(), n(), opt);
  if (f == "f") return c::f_interval(interval(), opt);
  if (f == "f-k") return c::f_k_interval(interval(), k(), opt);
  if (f == "psi") return c::psi(split(), n(), opt);
  if (f == "psi-k") return c::psi_k(split(), k(), n(), opt);
  if (f == "phi-union") return c::phi_union(split(), n(), opt);
  if (f == "phi-k-union") return c::phi_k_union(split(), k(), n(), opt);
  if (f == "eps") return c::epsilon_interval(interval(), n(), opt);
  if (f == "eps-k") return c::epsilon_k_interval(interval(), k(), n(), opt);
  if (f == "superset-phi") {
    return c::superset_phi(ElementSet(a.base), interval(), n(), opt);
  }
  if (f == "superset-phi-k") {
    return c::superset_phi_k(ElementSet(a.base), interval(), k(), n(), opt);
  }
  if (f == "superset-f") {
    return c::superset_f(ElementSet(a.base), interval(), opt);
  }
  if (f == "superset-f-k") {
    return c::superset_f_k(ElementSet(a.base), interval(), k(), opt);
  }
  if (f == "meet-phi") {
    return c::meet_phi(ElementSet(a.meet), interval(), n(), a.mode, opt);
  }
  if (f == "meet-phi-k") {
    return c::meet_phi_k(ElementSet(a.meet), interval(), k(), n(), a.mode,
                         opt);
  }
  if (f == "meet-f") {
    return c::meet_f(ElementSet(a.meet), interval(), a.mode, opt);
  }
  if (f == "meet-f-k") {
    return c::meet_f_k(ElementSet(a.meet), interval(), k(), a.mode, opt);
  }
  throw std::invalid_argument("unknown family: " + f);
}

std::uint64_t universe_size(const FamilyArgs& a) {
  const std::string& f = a.family;
  if (f == "psi" || f == "psi-k" || f == "phi-union" || f == "phi-k-union") {
    return SplitUnion(need(a.m1, "m1", f), need(a.l2, "l2", f),
                      need(a.m2, "m2", f))
        .size();
  }
  if (f == "eps" || f == "eps-k") return need(a.n, "n", f);
  return Interval(need(a.l, "l", f), need(a.m, "m", f)).width();
}

namespace {

// Universe plus predicate mirroring the closed form of a family point. The
// oracle side never touches the counting module, so the comparison stays
// honest.
std::pair<oracle::UniverseSpec, oracle::PredicateSpec> oracle_setup(
    const FamilyArgs& a, std::uint64_t cap) {
  namespace o = oracle;
  const std::string& f = a.family;
  const bool with_k = !f.empty() && (f.ends_with("-k") || f == "phi-k-union");
  o::PredicateSpec pred;
  if (with_k) pred.cardinality = need(a.k, "k", f);

  if (f == "phi" || f == "phi-k") {
    pred.family = o::Family::subset_coprime_to_n;
    pred.modulus = need(a.n, "n", f);
    return {o::universe_of(Interval(need(a.l, "l", f), need(a.m, "m", f)), cap),
            pred};
  }
  if (f == "f" || f == "f-k") {
    pred.family = o::Family::subset_gcd_one;
    return {o::universe_of(Interval(need(a.l, "l", f), need(a.m, "m", f)), cap),
            pred};
  }
  if (f == "psi" || f == "psi-k") {
    pred.family = o::Family::contains_required;
    pred.modulus = need(a.n, "n", f);
    pred.required = ElementSet({need(a.l2, "l2", f)});
    return {o::universe_of(SplitUnion(need(a.m1, "m1", f), need(a.l2, "l2", f),
                                      need(a.m2, "m2", f)),
                           cap),
            pred};
  }
  if (f == "phi-union" || f == "phi-k-union") {
    pred.family = o::Family::subset_coprime_to_n;
    pred.modulus = need(a.n, "n", f);
    return {o::universe_of(SplitUnion(need(a.m1, "m1", f), need(a.l2, "l2", f),
                                      need(a.m2, "m2", f)),
                           cap),
            pred};
  }
  if (f == "eps" || f == "eps-k") {
    const std::uint64_t n = need(a.n, "n", f);
    auto universe = o::universe_of(Interval(1, n), cap);
    pred.family = o::Family::avoids_forbidden;
    pred.modulus = n;
    std::vector<std::uint64_t> banned;
    for (std::uint64_t v = need(a.l, "l", f); v <= need(a.m, "m", f); ++v) {
      banned.push_back(v);
    }
    pred.forbidden = ElementSet(std::move(banned));
    return {std::move(universe), pred};
  }
  if (f.starts_with("superset-")) {
    pred.family = o::Family::contains_required;
    pred.required = ElementSet(a.base);
    if (f == "superset-phi" || f == "superset-phi-k") {
      pred.modulus = need(a.n, "n", f);
    }
    return {o::universe_of(Interval(need(a.l, "l", f), need(a.m, "m", f)), cap),
            pred};
  }
  if (f.starts_with("meet-")) {
    pred.family = o::Family::meets_required;
    pred.required = ElementSet(a.meet);
    if (f == "meet-phi" || f == "meet-phi-k") {
      pred.modulus = need(a.n, "n", f);
    }
    return {o::universe_of(Interval(need(a.l, "l", f), need(a.m, "m", f)), cap),
            pred};
  }
  throw std::invalid_argument("unknown family: " + f);
}

}  // namespace

Count oracle_count(const FamilyArgs& a, std::uint64_t cap) {
  auto [universe, pred] = oracle_setup(a, cap);
  return oracle::enumerate_count(universe, pred);
}

std::vector<ElementSet> oracle_witnesses(const FamilyArgs& a,
                                         std::uint64_t limit,
                                         std::uint64_t cap) {
  auto [universe, pred] = oracle_setup(a, cap);
  return oracle::enumerate_witnesses(universe, pred, limit);
}

std::uint64_t SampleRng::below(std::uint64_t bound) {
  if (bound == 0) throw std::logic_error("SampleRng: empty range");
  return gen_() % bound;
}

std::uint64_t SampleRng::in(std::uint64_t lo, std::uint64_t hi) {
  return lo + below(hi - lo + 1);
}

SupersetSample draw_superset_sample(SampleRng& rng, std::uint64_t index,
                                    std::uint64_t max_m, std::uint64_t max_n) {
  SupersetSample s;
  s.l = rng.in(1, max_m);
  s.m = rng.in(s.l, max_m);
  s.n = rng.in(1, max_n);
  if (index % 16 == 1) s.n = 1;
  if (index % 8 != 0) {
    for (std::uint64_t v = s.l; v <= s.m; ++v) {
      if (rng.below(2) == 0) s.base.push_back(v);
    }
  }
  const std::uint64_t width = s.m - s.l + 1;
  const std::uint64_t k_lo = std::max<std::uint64_t>(s.base.size(), 1);
  s.k = rng.in(k_lo, width);
  return s;
}

MeetSample draw_meet_sample(SampleRng& rng, std::uint64_t index,
                            std::uint64_t max_m, std::uint64_t max_n,
                            std::uint64_t max_meet_size) {
  MeetSample s;
  s.l = rng.in(1, max_m);
  s.m = rng.in(s.l, max_m);
  s.n = rng.in(1, max_n);
  if (index % 16 == 1) s.n = 1;
  const std::uint64_t width = s.m - s.l + 1;
  const std::uint64_t want = rng.in(1, std::min(max_meet_size, width));
  while (s.meet.size() < want) {
    const std::uint64_t v = rng.in(s.l, s.m);
    if (std::find(s.meet.begin(), s.meet.end(), v) == s.meet.end()) {
      s.meet.push_back(v);
    }
  }
  s.k = rng.in(1, width);
  return s;
}

namespace {

struct MismatchDetail {
  FamilyArgs point;
  Count formula;
  Count truth;
  std::string witness;  // "{2,3}" or empty when no qualifying subset exists
  std::string note;     // extra explanation (literal-mode multiplicity)
};

// For literal-mode meet mismatches, look for a qualifying set intersecting
// the meet set in j >= 2 elements: the unsigned subset sum counts it once
// per nonempty sub-intersection, 2^j - 1 times in total.
void attach_witness(MismatchDetail& d, std::uint64_t oracle_cap) {
  const std::uint64_t usize = universe_size(d.point);
  const std::uint64_t scan =
      usize >= 12 ? 4096 : (std::uint64_t{1} << usize);
  auto witnesses = oracle_witnesses(d.point, std::max<std::uint64_t>(scan, 1),
                                    oracle_cap);
  if (witnesses.empty()) {
    d.witness.clear();
    return;
  }
  d.witness = witnesses.front().to_string();
  if (!family_takes_meet(d.point.family) ||
      d.point.mode != MeetMode::literal) {
    return;
  }
  const ElementSet meet(d.point.meet);
  for (const auto& w : witnesses) {
    std::uint64_t j = 0;
    for (std::uint64_t v : w.elements()) j += meet.contains(v);
    if (j >= 2) {
      const std::uint64_t times = (std::uint64_t{1} << j) - 1;
      d.witness = w.to_string();
      d.note = "meets the set in " + std::to_string(j) +
               " elements, so the literal sum counts it " +
               std::to_string(times) + " times";
      return;
    }
  }
}

struct FamilyCheck {
  std::string family;
  std::string grid;
  std::uint64_t cases = 0;
  std::vector<MismatchDetail> mismatches;
};

void check_family(const CheckOptions& o, const std::string& fam,
                  FamilyCheck& out) {
  out.family = fam;
  const auto params = family_params(fam);
  const bool has_k =
      std::find(params.begin(), params.end(), std::string("k")) != params.end();

  auto consider = [&](const FamilyArgs& a) {
    ++out.cases;
    Count lhs = evaluate(a);
    Count rhs = oracle_count(a, o.oracle_cap);
    if (lhs != rhs) {
      MismatchDetail d{a, std::move(lhs), std::move(rhs), "", ""};
      attach_witness(d, o.oracle_cap);
      out.mismatches.push_back(std::move(d));
    }
  };

  FamilyArgs a;
  a.family = fam;
  a.mode = o.mode;

  if (fam == "phi" || fam == "phi-k" || fam == "f" || fam == "f-k") {
    const bool has_n = fam.starts_with("phi");
    out.grid = "exhaustive grid 1 <= l <= m <= " + std::to_string(o.max_m);
    if (has_n) out.grid += ", 1 <= n <= " + std::to_string(o.max_n);
    for (std::uint64_t l = 1; l <= o.max_m; ++l) {
      for (std::uint64_t m = l; m <= o.max_m; ++m) {
        a.l = l;
        a.m = m;
        const std::uint64_t n_hi = has_n ? o.max_n : 1;
        for (std::uint64_t n = 1; n <= n_hi; ++n) {
          if (has_n) a.n = n;
          if (!has_k) {
            consider(a);
            continue;
          }
          for (std::uint64_t k = 1; k <= m - l + 1; ++k) {
            a.k = k;
            consider(a);
          }
        }
      }
    }
    return;
  }

  if (fam == "psi" || fam == "psi-k" || fam == "phi-union" ||
      fam == "phi-k-union") {
    out.grid = "exhaustive grid 1 <= m1 < l2 <= m2 <= " +
               std::to_string(o.max_m) + ", 1 <= n <= " +
               std::to_string(o.max_n);
    for (std::uint64_t m1 = 1; m1 <= o.max_m; ++m1) {
      for (std::uint64_t l2 = m1 + 1; l2 <= o.max_m; ++l2) {
        for (std::uint64_t m2 = l2; m2 <= o.max_m; ++m2) {
          a.m1 = m1;
          a.l2 = l2;
          a.m2 = m2;
          const std::uint64_t size = m1 + m2 - l2 + 1;
          for (std::uint64_t n = 1; n <= o.max_n; ++n) {
            a.n = n;
            if (!has_k) {
              consider(a);
              continue;
            }
            for (std::uint64_t k = 1; k <= size; ++k) {
              a.k = k;
              consider(a);
            }
          }
        }
      }
    }
    return;
  }

  if (fam == "eps" || fam == "eps-k") {
    out.grid = "exhaustive grid 1 <= l <= m < n <= " + std::to_string(o.max_n) +
               ", m <= " + std::to_string(o.max_m);
    for (std::uint64_t n = 2; n <= o.max_n; ++n) {
      const std::uint64_t m_hi = std::min(o.max_m, n - 1);
      for (std::uint64_t l = 1; l <= m_hi; ++l) {
        for (std::uint64_t m = l; m <= m_hi; ++m) {
          a.l = l;
          a.m = m;
          a.n = n;
          if (!has_k) {
            consider(a);
            continue;
          }
          // Universe [1,n] minus [l,m] has n - (m-l+1) elements; one size
          // beyond that checks the zero case too.
          const std::uint64_t left = n - (m - l + 1);
          for (std::uint64_t k = 1; k <= left + 1; ++k) {
            a.k = k;
            consider(a);
          }
        }
      }
    }
    return;
  }

  if (fam.starts_with("superset-")) {
    out.grid = std::to_string(o.samples) + " seeded samples, m <= " +
               std::to_string(o.max_m) + ", n <= " + std::to_string(o.max_n) +
               ", seed " + std::to_string(o.seed);
    SampleRng rng(o.seed);
    for (std::uint64_t i = 0; i < o.samples; ++i) {
      const SupersetSample s = draw_superset_sample(rng, i, o.max_m, o.max_n);
      a.l = s.l;
      a.m = s.m;
      a.n = s.n;
      a.base = s.base;
      if (has_k) a.k = s.k;
      consider(a);
    }
    return;
  }

  if (fam.starts_with("meet-")) {
    out.grid = std::to_string(o.samples) + " seeded samples, m <= " +
               std::to_string(o.max_m) + ", n <= " + std::to_string(o.max_n) +
               ", seed " + std::to_string(o.seed) + ", mode " +
               mode_name(o.mode);
    SampleRng rng(o.seed);
    for (std::uint64_t i = 0; i < o.samples; ++i) {
      const MeetSample s = draw_meet_sample(rng, i, o.max_m, o.max_n);
      a.l = s.l;
      a.m = s.m;
      a.n = s.n;
      a.meet = s.meet;
      if (has_k) a.k = s.k;
      consider(a);
    }
    return;
  }

  throw std::invalid_argument("unknown family: " + fam);
}

void render_check_plain(const std::vector<FamilyCheck>& checks,
                        std::ostream& out) {
  std::uint64_t cases = 0, bad = 0;
  for (const auto& c : checks) {
    out << "check " << c.family << ": " << c.grid << "\n";
    for (const auto& d : c.mismatches) {
      out << "  mismatch " << describe(d.point) << ": closed-form "
          << d.formula.get_str() << ", oracle " << d.truth.get_str() << "\n";
      if (d.witness.empty()) {
        out << "    no qualifying subset exists\n";
      } else if (d.note.empty()) {
        out << "    witness " << d.witness << "\n";
      } else {
        out << "    witness " << d.witness << " " << d.note << "\n";
      }
    }
    out << "  cases " << c.cases << ", mismatches " << c.mismatches.size()
        << "\n";
    cases += c.cases;
    bad += c.mismatches.size();
  }
  out << "check result: " << bad << " mismatches in " << cases << " cases\n";
}

void render_check_json(const std::vector<FamilyCheck>& checks,
                       std::ostream& out) {
  ordered_json doc;
  doc["command"] = "check";
  doc["families"] = ordered_json::array();
  std::uint64_t cases = 0, bad = 0;
  for (const auto& c : checks) {
    ordered_json jc;
    jc["family"] = c.family;
    jc["grid"] = c.grid;
    jc["cases"] = c.cases;
    jc["mismatches"] = ordered_json::array();
    for (const auto& d : c.mismatches) {
      ordered_json jm;
      jm["family"] = d.point.family;
      put_params(jm, d.point);
      jm["closed_form"] = d.formula.get_str();
      jm["oracle"] = d.truth.get_str();
      if (!d.witness.empty()) jm["witness"] = d.witness;
      if (!d.note.empty()) jm["witness_note"] = d.note;
      jc["mismatches"].push_back(std::move(jm));
    }
    doc["families"].push_back(std::move(jc));
    cases += c.cases;
    bad += c.mismatches.size();
  }
  doc["cases"] = cases;
  doc["total_mismatches"] = bad;
  out << doc.dump(2) << "\n";
}

void render_check_csv(const std::vector<FamilyCheck>& checks,
                      std::ostream& out) {
  out << "family,cases,mismatches\n";
  for (const auto& c : checks) {
    out << c.family << "," << c.cases << "," << c.mismatches.size() << "\n";
  }
}

}  // namespace

std::uint64_t run_check(const CheckOptions& o, std::ostream& out,
                        std::ostream& err) {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<FamilyCheck> checks;
  for (const auto& fam : o.families) {
    FamilyCheck c;
    check_family(o, fam, c);
    checks.push_back(std::move(c));
  }
  if (o.format == "json") {
    render_check_json(checks, out);
  } else if (o.format == "csv") {
    render_check_csv(checks, out);
  } else {
    render_check_plain(checks, out);
  }
  err << "check elapsed: " << format_seconds(seconds_since(t0)) << " s\n";
  std::uint64_t bad = 0;
  for (const auto& c : checks) bad += c.mismatches.size();
  return bad;
}

BenchResult run_bench(const BenchOptions& o, std::ostream& out) {
  if (o.reps == 0) throw std::invalid_argument("bench: reps must be >= 1");
  BenchResult r;
  double best = 0;
  for (std::uint64_t i = 0; i < o.reps; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    r.count = evaluate(o.point);
    const double dt = seconds_since(t0);
    if (i == 0 || dt < best) best = dt;
  }
  r.closed_form_seconds = std::max(best, 1e-9);
  r.universe = universe_size(o.point);
  r.oracle_feasible = r.universe <= o.oracle_cap;
  if (r.oracle_feasible) {
    const auto t0 = std::chrono::steady_clock::now();
    r.oracle_result = oracle_count(o.point, o.oracle_cap);
    r.oracle_seconds = std::max(seconds_since(t0), 1e-9);
    r.counts_match = r.count == r.oracle_result;
  }

  if (o.format == "json") {
    ordered_json doc;
    doc["command"] = "bench";
    doc["family"] = o.point.family;
    put_params(doc, o.point);
    doc["count"] = r.count.get_str();
    doc["closed_form_seconds"] = r.closed_form_seconds;
    doc["reps"] = o.reps;
    doc["universe"] = r.universe;
    doc["oracle_feasible"] = r.oracle_feasible;
    if (r.oracle_feasible) {
      doc["oracle_seconds"] = r.oracle_seconds;
      doc["oracle_count"] = r.oracle_result.get_str();
      doc["speedup"] = r.oracle_seconds / r.closed_form_seconds;
      doc["counts_match"] = r.counts_match;
    }
    out << doc.dump(2) << "\n";
  } else if (o.format == "csv") {
    out << "family,count,closed_form_seconds,universe,oracle_feasible,"
           "oracle_seconds,speedup,counts_match\n";
    out << o.point.family << "," << r.count.get_str() << ","
        << r.closed_form_seconds << "," << r.universe << ","
        << (r.oracle_feasible ? "true" : "false") << ",";
    if (r.oracle_feasible) {
      out << r.oracle_seconds << "," << r.oracle_seconds / r.closed_form_seconds
          << "," << (r.counts_match ? "true" : "false");
    } else {
      out << ",,";
    }
    out << "\n";
  } else {
    out << "bench " << o.point.family << " " << describe(o.point) << "\n";
    out << "  closed-form " << format_seconds(r.closed_form_seconds)
        << " s (best of " << o.reps << "), count " << r.count.get_str()
        << "\n";
    if (r.oracle_feasible) {
      out << "  oracle " << format_seconds(r.oracle_seconds) << " s, universe "
          << r.universe << ", count " << r.oracle_result.get_str() << "\n";
      out << "  speedup "
          << format_seconds(r.oracle_seconds / r.closed_form_seconds) << "x\n";
      out << (r.counts_match ? "  counts match\n" : "  COUNTS DIFFER\n");
    } else {
      out << "  oracle skipped, universe " << r.universe << " exceeds cap "
          << o.oracle_cap << "\n";
    }
  }
  return r;
}

namespace {

std::uint64_t parse_u64(const std::string& s, const char* what) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
    throw std::invalid_argument(std::string(what) +
                                ": expected an unsigned integer, got '" + s +
                                "'");
  }
  errno = 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(s.c_str(), &end, 10);
  if (errno != 0 || end != s.c_str() + s.size()) {
    throw std::invalid_argument(std::string(what) + ": value out of range");
  }
  return v;
}

// "3" or "1..5"
std::pair<std::uint64_t, std::uint64_t> parse_range(const std::string& s,
                                                    const char* what) {
  const auto dots = s.find("..");
  if (dots == std::string::npos) {
    const std::uint64_t v = parse_u64(s, what);
    return {v, v};
  }
  const std::uint64_t lo = parse_u64(s.substr(0, dots), what);
  const std::uint64_t hi = parse_u64(s.substr(dots + 2), what);
  if (lo > hi) {
    throw std::invalid_argument(std::string(what) +
                                ": range start exceeds range end");
  }
  return {lo, hi};
}

// "4,6" (empty string = empty set)
std::vector<std::uint64_t> parse_set(const std::string& s, const char* what) {
  std::vector<std::uint64_t> out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    std::size_t comma = s.find(',', pos);
    if (comma == std::string::npos) comma = s.size();
    out.push_back(parse_u64(s.substr(pos, comma - pos), what));
    pos = comma + 1;
  }
  return out;
}

// Option bundle shared by eval, table and bench.
struct PointOpts {
  std::string family;
  std::string l, m, n, k, m1, l2, m2;
  std::string base, meet;
  std::string mode = "inclusion-exclusion";

  void attach(CLI::App* sub, bool ranges) {
    const char* value_hint = ranges ? "VALUE or LO..HI" : "VALUE";
    sub->add_option("family", family, "counting family (see list below)")
        ->required();
    sub->add_option("--l", l, value_hint);
    sub->add_option("--m", m, value_hint);
    sub->add_option("--n", n, value_hint);
    sub->add_option("--k", k, value_hint);
    sub->add_option("--m1", m1, value_hint);
    sub->add_option("--l2", l2, value_hint);
    sub->add_option("--m2", m2, value_hint);
    sub->add_option("--base", base, "comma separated set, e.g. 4,6");
    sub->add_option("--meet", meet, "comma separated set, e.g. 2,3");
    sub->add_option("--mode", mode,
                    "meet family summation: inclusion-exclusion or "
                    "paper-literal")
        ->check(CLI::IsMember({"inclusion-exclusion", "paper-literal"}));
  }

  // Scalars as single values (eval, bench).
  FamilyArgs point() const {
    FamilyArgs a;
    a.family = family;
    a.mode = parse_mode(mode);
    if (!l.empty()) a.l = parse_u64(l, "--l");
    if (!m.empty()) a.m = parse_u64(m, "--m");
    if (!n.empty()) a.n = parse_u64(n, "--n");
    if (!k.empty()) a.k = parse_u64(k, "--k");
    if (!m1.empty()) a.m1 = parse_u64(m1, "--m1");
    if (!l2.empty()) a.l2 = parse_u64(l2, "--l2");
    if (!m2.empty()) a.m2 = parse_u64(m2, "--m2");
    a.base = parse_set(base, "--base");
    a.meet = parse_set(meet, "--meet");
    return a;
  }

  const std::string& raw(const std::string& p) const {
    if (p == "l") return l;
    if (p == "m") return m;
    if (p == "n") return n;
    if (p == "k") return k;
    if (p == "m1") return m1;
    if (p == "l2") return l2;
    if (p == "m2") return m2;
    throw std::invalid_argument("unknown parameter name: " + p);
  }
};

void render_terms_plain(const std::vector<SumTerm>& terms, std::ostream& out) {
  for (const auto& t : terms) {
    out << "  ";
    if (!t.subset.empty()) {
      out << "X=" << set_text(t.subset) << " sign=" << (t.sign < 0 ? "-" : "+")
          << " ";
    }
    out << "d=" << t.d << " mu=" << t.mu << " ";
    switch (t.kind) {
      case SumTerm::Kind::pow2:
        out << "2^" << t.exponent;
        break;
      case SumTerm::Kind::pow2_minus_one:
        out << "(2^" << t.exponent << "-1)";
        break;
      case SumTerm::Kind::binomial:
        out << "C(" << t.exponent << "," << t.choose << ")";
        break;
    }
    out << " term=" << t.value.get_str() << "\n";
  }
}

ordered_json terms_json(const std::vector<SumTerm>& terms) {
  ordered_json arr = ordered_json::array();
  for (const auto& t : terms) {
    ordered_json jt;
    if (!t.subset.empty()) {
      jt["subset"] = t.subset;
      jt["sign"] = t.sign;
    }
    jt["d"] = t.d;
    jt["mu"] = t.mu;
    switch (t.kind) {
      case SumTerm::Kind::pow2:
        jt["exponent"] = t.exponent;
        break;
      case SumTerm::Kind::pow2_minus_one:
        jt["exponent"] = t.exponent;
        jt["minus_one"] = true;
        break;
      case SumTerm::Kind::binomial:
        jt["top"] = t.exponent;
        jt["choose"] = t.choose;
        break;
    }
    jt["term"] = t.value.get_str();
    arr.push_back(std::move(jt));
  }
  return arr;
}

int cmd_eval(const PointOpts& p, const std::string& format, bool verbose,
             std::ostream& out) {
  const FamilyArgs a = p.point();
  EvalOptions opt;
  std::vector<SumTerm> terms;
  Count raw(-1);
  if (verbose) {
    opt.terms = &terms;
    opt.raw_sum = &raw;
  }
  const Count c = evaluate(a, opt);

  if (format == "json") {
    ordered_json doc;
    doc["family"] = a.family;
    put_params(doc, a);
    doc["count"] = c.get_str();
    if (verbose) {
      if (raw >= 0 && raw != c) doc["raw_sum"] = raw.get_str();
      doc["terms"] = terms_json(terms);
    }
    out << doc.dump() << "\n";
  } else if (format == "csv") {
    const auto params = family_params(a.family);
    out << "family";
    for (const auto& pn : params) out << "," << pn;
    if (family_takes_base(a.family)) out << ",base";
    if (family_takes_meet(a.family)) out << ",meet,mode";
    out << ",count\n";
    out << a.family;
    for (const auto& pn : params) {
      const auto& v = param_ref(a, pn);
      out << ",";
      if (v) out << *v;
    }
    if (family_takes_base(a.family)) {
      out << ",";
      const auto elems = ElementSet(a.base).elements();
      for (std::size_t i = 0; i < elems.size(); ++i) {
        out << (i ? ";" : "") << elems[i];
      }
    }
    if (family_takes_meet(a.family)) {
      out << ",";
      const auto elems = ElementSet(a.meet).elements();
      for (std::size_t i = 0; i < elems.size(); ++i) {
        out << (i ? ";" : "") << elems[i];
      }
      out << "," << mode_name(a.mode);
    }
    out << "," << c.get_str() << "\n";
  } else {
    if (verbose) {
      render_terms_plain(terms, out);
      if (raw >= 0 && raw != c) {
        out << "  raw sum " << raw.get_str() << " (empty set excluded from the count)\n";
      }
    }
    out << c.get_str() << "\n";
  }
  return 0;
}

int cmd_table(const PointOpts& p, const std::string& format,
              std::uint64_t max_rows, std::ostream& out, std::ostream& err) {
  const auto params = family_params(p.family);
  const bool with_base = family_takes_base(p.family);
  const bool with_meet = family_takes_meet(p.family);

  std::vector<std::pair<std::uint64_t, std::uint64_t>> ranges;
  for (const auto& pn : params) {
    const std::string& rawv = p.raw(pn);
    if (rawv.empty()) {
      throw std::invalid_argument("missing --" + pn + " for " + p.family);
    }
    ranges.push_back(parse_range(rawv, pn.c_str()));
  }

  std::uint64_t rows = 1;
  for (const auto& [lo, hi] : ranges) {
    const std::uint64_t span = hi - lo + 1;
    if (span == 0 || span > max_rows || rows > max_rows / span) {
      throw std::invalid_argument("table would exceed the row cap of " +
                                  std::to_string(max_rows));
    }
    rows *= span;
  }

  FamilyArgs a;
  a.family = p.family;
  a.mode = parse_mode(p.mode);
  a.base = parse_set(p.base, "--base");
  a.meet = parse_set(p.meet, "--meet");

  if (format == "csv") {
    for (std::size_t i = 0; i < params.size(); ++i) {
      out << (i ? "," : "") << params[i];
    }
    out << ",count\n";
  } else if (format == "json") {
    out << "[";
  }

  std::uint64_t emitted = 0, skipped = 0;
  std::vector<std::uint64_t> cursor(params.size());
  const std::function<void(std::size_t)> walk = [&](std::size_t depth) {
    if (depth == params.size()) {
      for (std::size_t i = 0; i < params.size(); ++i) {
        param_ref(a, params[i]) = cursor[i];
      }
      Count c(0);
      try {
        c = evaluate(a);
      } catch (const std::invalid_argument&) {
        ++skipped;  // parameter combinations that violate preconditions
        return;
      }
      if (format == "csv") {
        for (std::size_t i = 0; i < params.size(); ++i) {
          out << (i ? "," : "") << cursor[i];
        }
        out << "," << c.get_str() << "\n";
      } else if (format == "json") {
        ordered_json row;
        for (std::size_t i = 0; i < params.size(); ++i) {
          row[params[i]] = cursor[i];
        }
        if (with_base) row["base"] = ElementSet(a.base).elements();
        if (with_meet) {
          row["meet"] = ElementSet(a.meet).elements();
          row["mode"] = mode_name(a.mode);
        }
        row["count"] = c.get_str();
        out << (emitted ? "," : "") << row.dump();
      } else {
        for (std::size_t i = 0; i < params.size(); ++i) {
          out << (i ? " " : "") << params[i] << "=" << cursor[i];
        }
        out << " count=" << c.get_str() << "\n";
      }
      ++emitted;
      return;
    }
    for (std::uint64_t v = ranges[depth].first; v <= ranges[depth].second;
         ++v) {
      cursor[depth] = v;
      walk(depth + 1);
    }
  };
  walk(0);

  if (format == "json") out << "]\n";

  if (emitted == 0 && skipped > 0) {
    err << "error: no valid parameter combination in the requested ranges\n";
    return 2;
  }
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{
      "relprime: exact counts of relatively prime subsets and supersets of "
      "integer ranges"};
  app.require_subcommand(1);

  std::string format = "plain";
  bool verbose = false;
  std::uint64_t oracle_cap = oracle::kDefaultUniverseCap;
  std::uint64_t seed = 1;
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"plain", "csv", "json"}))
      ->capture_default_str();
  app.add_flag("--verbose", verbose, "show the divisor-sum terms (eval)");
  app.add_option("--oracle-cap", oracle_cap,
                 "largest universe the brute-force side will enumerate")
      ->capture_default_str();
  app.add_option("--seed", seed, "seed for sampled checks")
      ->capture_default_str();

  std::string families_help = "families: ";
  for (std::size_t i = 0; i < family_names().size(); ++i) {
    families_help += (i ? ", " : "") + family_names()[i];
  }
  app.footer(families_help);

  auto* eval = app.add_subcommand("eval", "evaluate one family at one point");
  eval->fallthrough();
  PointOpts eval_opts;
  eval_opts.attach(eval, false);

  auto* table =
      app.add_subcommand("table", "evaluate a family over parameter ranges");
  table->fallthrough();
  PointOpts table_opts;
  table_opts.attach(table, true);
  std::uint64_t max_rows = 1'000'000;
  table->add_option("--max-rows", max_rows, "row cap")->capture_default_str();

  auto* check = app.add_subcommand(
      "check", "compare closed forms against brute-force enumeration");
  check->fallthrough();
  std::vector<std::string> check_families;
  check->add_option("families", check_families,
                    "family names, or 'all'")
      ->required();
  CheckOptions check_opts;
  check->add_option("--max-m", check_opts.max_m, "grid bound for interval ends")
      ->capture_default_str();
  check->add_option("--max-n", check_opts.max_n, "grid bound for the modulus")
      ->capture_default_str();
  check->add_option("--samples", check_opts.samples,
                    "sample count for superset and meet families")
      ->capture_default_str();
  std::string check_mode = "inclusion-exclusion";
  check->add_option("--mode", check_mode, "meet family summation")
      ->check(CLI::IsMember({"inclusion-exclusion", "paper-literal"}));

  auto* bench = app.add_subcommand(
      "bench", "time the closed form against brute-force enumeration");
  bench->fallthrough();
  PointOpts bench_opts;
  bench_opts.attach(bench, false);
  std::uint64_t reps = 5;
  bench->add_option("--reps", reps, "closed-form repetitions")
      ->capture_default_str();

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("relprime");
  for (const auto& s : args) argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*eval) return cmd_eval(eval_opts, format, verbose, out);
    if (*table) return cmd_table(table_opts, format, max_rows, out, err);
    if (*check) {
      if (check_families.size() == 1 && check_families[0] == "all") {
        check_families = family_names();
      } else {
        for (const auto& fam : check_families) family_info(fam);
      }
      check_opts.families = check_families;
      check_opts.seed = seed;
      check_opts.mode = parse_mode(check_mode);
      check_opts.oracle_cap = oracle_cap;
      check_opts.format = format;
      return run_check(check_opts, out, err) == 0 ? 0 : 1;
    }
    if (*bench) {
      BenchOptions b;
      b.point = bench_opts.point();
      b.reps = reps;
      b.oracle_cap = oracle_cap;
      b.format = format;
      const BenchResult r = run_bench(b, out);
      return r.counts_match ? 0 : 1;
    }
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

int run(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, std::cout, std::cerr);
}

}  // namespace relprime::cli
