// Built-in corpus: exhaustive enumerators for small groupoids and arrow
// topologies, the named fixture registry with expected verdicts and
// provenance metadata, the pool of supported quantales behind the identity
// suites, and the groupoid-morphism fixtures for the lax-preimage checks.

#ifndef QGK_CORPUS_HPP_
#define QGK_CORPUS_HPP_

#include <array>
#include <functional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "qgk/base.hpp"
#include "qgk/fixtures.hpp"
#include "qgk/groupoid.hpp"
#include "qgk/invsemi.hpp"
#include "qgk/quantale.hpp"
#include "qgk/tensor.hpp"

namespace qgk {

// ---------------------------------------------------------------------------
// Exhaustive enumeration of labeled groupoids on a small arrow set: choose
// the units, endpoint maps into them, then every composition table that
// passes full validation. Sizes 1..4 give 1, 3, 10 and 65 groupoids in 13
// isomorphism classes.

inline constexpr int kGroupoidEnumCap = 4;

inline std::vector<FinGroupoid> enumerate_groupoids_on(int n) {
  if (n < 1 || n > kGroupoidEnumCap)
    fail("CarrierTooLarge",
         cat("groupoid enumeration covers 1 to ", kGroupoidEnumCap,
             " arrows, got ", n));
  std::vector<FinGroupoid> out;
  for (Mask um = 1; um < (Mask{1} << n); ++um) {
    std::vector<int> units, non;
    for (int x = 0; x < n; ++x) (um >> x & 1 ? units : non).push_back(x);
    const int k = static_cast<int>(units.size());
    const int f = static_cast<int>(non.size());
    long long total = 1;
    for (int i = 0; i < 2 * f; ++i) total *= k;
    for (long long code = 0; code < total; ++code) {
      std::vector<int> dom(n), cod(n);
      for (int u : units) dom[u] = cod[u] = u;
      long long c = code;
      for (int x : non) { dom[x] = units[c % k]; c /= k; }
      for (int x : non) { cod[x] = units[c % k]; c /= k; }

      // Unit rows of the composition are forced; only pairs of non-units
      // leave a choice, restricted to arrows with matching endpoints.
      std::vector<std::pair<int, int>> free_pairs;
      std::vector<int> comp(n * n, -1);
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
          if (cod[x] != dom[y]) continue;
          if (um >> x & 1) comp[x * n + y] = y;
          else if (um >> y & 1) comp[x * n + y] = x;
          else free_pairs.emplace_back(x, y);
        }
      std::vector<std::vector<int>> cands(free_pairs.size());
      for (std::size_t t = 0; t < free_pairs.size(); ++t) {
        auto [x, y] = free_pairs[t];
        for (int z = 0; z < n; ++z)
          if (dom[z] == dom[x] && cod[z] == cod[y]) cands[t].push_back(z);
      }
      std::function<void(std::size_t)> dfs = [&](std::size_t t) {
        if (t == free_pairs.size()) {
          std::vector<std::array<int, 3>> triples;
          for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
              if (comp[x * n + y] >= 0)
                triples.push_back({x, y, comp[x * n + y]});
          std::vector<int> inv(n, -1);
          for (int x = 0; x < n; ++x)
            for (int y = 0; y < n && inv[x] < 0; ++y)
              if (dom[y] == cod[x] && cod[y] == dom[x] &&
                  comp[x * n + y] == dom[x] && comp[y * n + x] == cod[x])
                inv[x] = y;
          for (int x = 0; x < n; ++x)
            if (inv[x] < 0) return;
          try {
            out.push_back(validate_groupoid(n, units, dom, cod, triples, inv));
          } catch (const Error&) {
          }
          return;
        }
        auto [x, y] = free_pairs[t];
        for (int z : cands[t]) {
          comp[x * n + y] = z;
          dfs(t + 1);
        }
        comp[x * n + y] = -1;
      };
      dfs(0);
    }
  }
  return out;
}

inline std::vector<FinGroupoid> groupoid_corpus(int max_arrows = 4) {
  std::vector<FinGroupoid> out;
  for (int n = 1; n <= max_arrows; ++n)
    for (FinGroupoid& g : enumerate_groupoids_on(n)) out.push_back(std::move(g));
  return out;
}

struct NamedGroupoid {
  std::string name;
  FinGroupoid g;
};

// Hand-built representatives of the 13 isomorphism classes with at most four
// arrows; enumeration coverage of this list is asserted in the tests.
inline std::vector<NamedGroupoid> named_groupoid_reps() {
  std::vector<NamedGroupoid> out;
  out.push_back({"trivial", discrete_groupoid(1)});
  out.push_back({"discrete-2", discrete_groupoid(2)});
  out.push_back({"z2", z2_groupoid()});
  out.push_back({"discrete-3", discrete_groupoid(3)});
  out.push_back({"z3", z3_groupoid()});
  out.push_back({"z2-plus-unit",
                 disjoint_union_groupoid(z2_groupoid(), discrete_groupoid(1))});
  out.push_back({"discrete-4", discrete_groupoid(4)});
  out.push_back({"z4", z4_groupoid()});
  out.push_back({"klein", klein_groupoid()});
  out.push_back({"pair-2", pair_groupoid(2)});
  out.push_back({"z2-plus-2units",
                 disjoint_union_groupoid(z2_groupoid(), discrete_groupoid(2))});
  out.push_back({"z2-plus-z2",
                 disjoint_union_groupoid(z2_groupoid(), z2_groupoid())});
  out.push_back({"z3-plus-unit",
                 disjoint_union_groupoid(z3_groupoid(), discrete_groupoid(1))});
  return out;
}

// ---------------------------------------------------------------------------
// Every topology on a set of up to four points: families of subsets closed
// under union and intersection that contain the empty and full sets. Counts
// for 1..4 points: 1, 4, 29, 355.

inline std::vector<std::vector<Mask>> all_topologies_on(int points) {
  if (points < 1 || points > 4)
    fail("CarrierTooLarge",
         cat("topology enumeration covers 1 to 4 points, got ", points));
  const int N = 1 << points;
  std::vector<std::vector<Mask>> out;
  for (unsigned long fam = 0; fam < (1ul << N); ++fam) {
    if (!(fam & 1) || !(fam >> (N - 1) & 1)) continue;
    std::vector<Mask> opens;
    for (int s = 0; s < N; ++s)
      if (fam >> s & 1) opens.push_back(static_cast<Mask>(s));
    bool closed = true;
    for (std::size_t i = 0; i < opens.size() && closed; ++i)
      for (std::size_t j = i; j < opens.size() && closed; ++j)
        closed = (fam >> (opens[i] | opens[j]) & 1) &&
                 (fam >> (opens[i] & opens[j]) & 1);
    if (closed) out.push_back(std::move(opens));
  }
  return out;
}

// ---------------------------------------------------------------------------
// The fixture registry. Each fixture bundles a structure with the verdicts
// it is expected to produce and a provenance tag: "fixed-table" for values
// pinned alongside a hand-written table, "enumeration" for values frozen
// from an exhaustive enumeration, "direct-check" for values confirmed by an
// independent computation in the test suite.

using CorpusStructure = std::variant<FinSupLattice, FinQuantale,
                                     FinInverseSemigroup, FinGroupoid,
                                     FinTopGroupoid>;

struct CorpusFixture {
  std::string name;
  std::string kind;        // lattice | quantale | invsemi | groupoid | topgroupoid
  std::string provenance;  // fixed-table | enumeration | direct-check
  std::vector<std::string> tags;
  CorpusStructure structure;
  std::vector<std::pair<std::string, std::string>> expected;
};

namespace detail {

inline std::string yes_no(bool b) { return b ? "yes" : "no"; }

inline FinInverseSemigroup corpus_five_element() {
  SemigroupTable t = five_element_inverse_monoid();
  return validate_inverse_semigroup(t.n, t.mult);
}

inline FinTopGroupoid corpus_five_arrow_space() {
  FinInverseSemigroup five = corpus_five_element();
  std::vector<int> units, dom(5), cod(5), inv(5);
  for (int x = 0; x < 5; ++x) {
    if (five.is_idempotent(x)) units.push_back(x);
    dom[x] = five.times(x, five.star(x));
    cod[x] = five.times(five.star(x), x);
    inv[x] = five.star(x);
  }
  std::vector<std::array<int, 3>> comp;
  for (int x = 0; x < 5; ++x)
    for (int y = 0; y < 5; ++y)
      if (cod[x] == dom[y]) comp.push_back({x, y, five.times(x, y)});
  FinGroupoid g = validate_groupoid(5, units, dom, cod, comp, inv);
  return validate_topgroupoid(g, downset_quantale(five).sets);
}

}  // namespace detail

// Evaluates one named check against a fixture structure and renders the
// verdict as a short string, so expectations can be compared textually and
// reported by the command-line corpus runner.
inline std::string corpus_evaluate(const CorpusStructure& structure,
                                   const std::string& check) {
  using detail::yes_no;
  if (const auto* L = std::get_if<FinSupLattice>(&structure)) {
    if (check == "size") return cat(L->size());
    if (check == "frame") return yes_no(check_frame(*L).is_frame);
    if (check == "irreducibles") return cat(L->irreducibles().size());
  } else if (const auto* q = std::get_if<FinQuantale>(&structure)) {
    if (check == "size") return cat(q->size());
    if (check == "frame") return yes_no(check_frame(q->lat).is_frame);
    if (check == "supported") {
      bool s = has_candidate_support(*q);
      if (!s && q->size() <= kSupportSearchCap)
        s = !find_supports_exhaustive(*q).empty();
      return yes_no(s);
    }
    if (check == "support-count")
      return cat(find_supports_exhaustive(*q).size());
    if (check == "stable") {
      if (!has_candidate_support(*q)) return "no";
      return yes_no(candidate_support(*q).stable);
    }
    if (check == "stable-quantal-frame")
      return yes_no(check_stable_quantal_frame(*q));
    if (check == "multiplicative") {
      if (!check_stable_quantal_frame(*q)) return "n/a";
      return yes_no(check_multiplicative(*q).multiplicative);
    }
    if (check == "inverse") return yes_no(check_inverse_quantale(*q).inverse);
    if (check == "inverse-quantal-frame")
      return yes_no(check_inverse_quantal_frame(*q));
    if (check == "ipi-join-top")
      return yes_no(check_inversion_laws(*q).ipi_join_is_top);
    if (check == "epsilon") {
      EpsilonReport ep = epsilon(*q);
      if (ep.iso) return "pass";
      return cat("fail (size mismatch ", ep.envelope.quantale.size(), " vs ",
                 q->size(), ")");
    }
  } else if (const auto* s = std::get_if<FinInverseSemigroup>(&structure)) {
    if (check == "size") return cat(s->n);
    if (check == "idempotents") return cat(idempotent_elements(*s).size());
    if (check == "complete") return yes_no(check_complete(*s));
    if (check == "distributive")
      return yes_no(check_infinitely_distributive(*s));
    if (check == "eta") return eta(*s).iso ? "pass" : "fail";
    if (check == "envelope-size")
      return cat(enveloping_quantale(*s).quantale.size());
  } else if (const auto* g = std::get_if<FinGroupoid>(&structure)) {
    if (check == "arrows") return cat(g->n);
    if (check == "units") return cat(g->units.size());
    if (check == "gsets-size") return cat(gsets(*g).monoid.n);
    if (check == "powerset-iqf")
      return yes_no(check_inverse_quantal_frame(powerset_quantale(*g)));
    if (check == "atom-recovery")
      return recover_groupoid_from_atoms(powerset_quantale(*g)) == *g
                 ? "pass"
                 : "fail";
  } else if (const auto* tg = std::get_if<FinTopGroupoid>(&structure)) {
    if (check == "opens") return cat(tg->opens.size());
    if (check == "units-open")
      return yes_no(check_etale_conditions(*tg).units_open);
    if (check == "etale") return yes_no(check_etale_conditions(*tg).etale);
    if (check == "quantal") {
      try {
        topology_quantale(*tg);
        return "yes";
      } catch (const Error& e) {
        if (e.code() == "NotQuantalTopology") return "no";
        throw;
      }
    }
    if (check == "gset-cover")
      return cat(check_etale_conditions(*tg).gset_cover.size());
  }
  return cat("unknown check \"", check, "\"");
}

inline std::vector<CorpusFixture> corpus_fixtures() {
  using P = std::vector<std::pair<std::string, std::string>>;
  std::vector<CorpusFixture> out;
  auto add = [&](std::string name, std::string kind, std::string provenance,
                 std::vector<std::string> tags, CorpusStructure structure,
                 P expected) {
    out.push_back({std::move(name), std::move(kind), std::move(provenance),
                   std::move(tags), std::move(structure), std::move(expected)});
  };

  add("boolean-2", "lattice", "direct-check", {"lattice"}, boolean_lattice(2),
      {{"size", "4"}, {"frame", "yes"}, {"irreducibles", "2"}});
  add("diamond", "lattice", "fixed-table", {"lattice"}, diamond_lattice(),
      {{"frame", "no"}});
  add("pentagon", "lattice", "fixed-table", {"lattice"}, pentagon_lattice(),
      {{"frame", "no"}});
  add("chain-4", "lattice", "direct-check", {"lattice"}, chain_lattice(4),
      {{"frame", "yes"}});

  add("four-chain-unstable", "quantale", "fixed-table",
      {"quantale", "support", "stability", "search"},
      unstable_support_chain_quantale(),
      {{"size", "4"},
       {"supported", "yes"},
       {"support-count", "1"},
       {"stable", "no"},
       {"frame", "yes"}});
  add("fuzzy-powerset", "quantale", "fixed-table",
      {"quantale", "support", "tensor", "search"}, fuzzy_powerset_quantale(),
      {{"size", "4"},
       {"stable-quantal-frame", "yes"},
       {"multiplicative", "no"},
       {"inverse", "no"},
       {"epsilon", "fail (size mismatch 2 vs 4)"}});
  add("idempotent-chain", "quantale", "fixed-table",
      {"quantale", "tensor", "inverse"}, idempotent_chain_quantale(),
      {{"size", "3"},
       {"stable-quantal-frame", "yes"},
       {"multiplicative", "yes"},
       {"inverse", "no"},
       {"ipi-join-top", "no"}});
  add("pentagon-no-support", "quantale", "fixed-table",
      {"quantale", "support"}, no_support_pentagon_quantale(),
      {{"supported", "no"}});
  add("nine-ideals", "quantale", "fixed-table",
      {"quantale", "inverse", "roundtrip"}, nine_ideal_quantale_golden(),
      {{"size", "9"},
       {"frame", "yes"},
       {"inverse", "yes"},
       {"inverse-quantal-frame", "yes"},
       {"epsilon", "pass"}});
  add("seven-quotient", "quantale", "fixed-table",
      {"quantale", "inverse", "quotient"}, seven_element_quotient().quantale,
      {{"size", "7"}, {"inverse", "yes"}, {"frame", "no"}});
  add("z2-powerset", "quantale", "direct-check",
      {"quantale", "inverse", "roundtrip"}, z2_powerset_quantale(),
      {{"size", "4"}, {"inverse-quantal-frame", "yes"}, {"epsilon", "pass"}});
  add("z3-powerset", "quantale", "direct-check",
      {"quantale", "inverse", "roundtrip"}, z3_powerset_quantale(),
      {{"size", "8"}, {"inverse-quantal-frame", "yes"}, {"epsilon", "pass"}});
  add("relations-2", "quantale", "direct-check",
      {"quantale", "inverse", "roundtrip"},
      powerset_quantale(pair_groupoid(2)),
      {{"size", "16"}, {"inverse-quantal-frame", "yes"}, {"epsilon", "pass"}});
  add("boolean-frame-2", "quantale", "direct-check", {"quantale", "inverse"},
      frame_quantale(boolean_lattice(2)),
      {{"frame", "yes"}, {"inverse-quantal-frame", "yes"}});

  add("five-element-monoid", "invsemi", "fixed-table",
      {"invsemi", "roundtrip"}, detail::corpus_five_element(),
      {{"size", "5"},
       {"idempotents", "3"},
       {"complete", "yes"},
       {"distributive", "yes"},
       {"eta", "pass"},
       {"envelope-size", "9"}});
  add("symmetric-1", "invsemi", "direct-check", {"invsemi", "roundtrip"},
      symmetric_inverse_monoid(1).monoid,
      {{"size", "2"}, {"eta", "pass"}, {"envelope-size", "2"}});
  add("symmetric-2", "invsemi", "direct-check", {"invsemi", "roundtrip"},
      symmetric_inverse_monoid(2).monoid,
      {{"size", "7"}, {"eta", "pass"}, {"envelope-size", "16"}});
  add("symmetric-3", "invsemi", "direct-check", {"invsemi"},
      symmetric_inverse_monoid(3).monoid,
      {{"size", "34"}, {"envelope-size", "512"}});

  struct GroupoidRow {
    const char* gsets;
    const char* arrows;
  };
  std::vector<std::pair<std::string, GroupoidRow>> gsets_by_name = {
      {"trivial", {"2", "1"}},        {"discrete-2", {"4", "2"}},
      {"z2", {"3", "2"}},             {"discrete-3", {"8", "3"}},
      {"z3", {"4", "3"}},             {"z2-plus-unit", {"6", "3"}},
      {"discrete-4", {"16", "4"}},     {"z4", {"5", "4"}},
      {"klein", {"5", "4"}},           {"pair-2", {"7", "4"}},
      {"z2-plus-2units", {"12", "4"}}, {"z2-plus-z2", {"9", "4"}},
      {"z3-plus-unit", {"8", "4"}}};
  for (NamedGroupoid& rep : named_groupoid_reps()) {
    const GroupoidRow* row = nullptr;
    for (auto& [name, r] : gsets_by_name)
      if (name == rep.name) row = &r;
    P expected = {{"arrows", row ? row->arrows : "?"},
                  {"powerset-iqf", "yes"},
                  {"atom-recovery", "pass"}};
    if (row) expected.push_back({"gsets-size", row->gsets});
    add(rep.name, "groupoid", "direct-check", {"groupoid", "roundtrip"},
        std::move(rep.g), std::move(expected));
  }
  add("pair-3", "groupoid", "direct-check", {"groupoid", "roundtrip"},
      pair_groupoid(3),
      {{"arrows", "9"},
       {"gsets-size", "34"},
       {"powerset-iqf", "yes"},
       {"atom-recovery", "pass"}});

  add("five-arrow-space", "topgroupoid", "fixed-table",
      {"topgroupoid", "etale", "topology"}, detail::corpus_five_arrow_space(),
      {{"opens", "10"},
       {"etale", "yes"},
       {"quantal", "yes"},
       {"gset-cover", "6"}});
  {
    FinGroupoid z2 = z2_groupoid();
    add("z2-discrete", "topgroupoid", "direct-check",
        {"topgroupoid", "etale"},
        validate_topgroupoid(z2, discrete_topology(z2)),
        {{"opens", "4"}, {"etale", "yes"}, {"quantal", "yes"}});
    add("z2-indiscrete", "topgroupoid", "direct-check",
        {"topgroupoid", "etale"}, validate_topgroupoid(z2, {0, 3}),
        {{"etale", "no"}, {"units-open", "no"}, {"quantal", "no"}});
  }
  {
    FinGroupoid z2u =
        disjoint_union_groupoid(z2_groupoid(), discrete_groupoid(1));
    add("z2-plus-unit-mixed", "topgroupoid", "enumeration",
        {"topgroupoid", "etale", "topology"},
        validate_topgroupoid(z2u, {0, 2, 5, 7}),
        {{"units-open", "yes"}, {"etale", "no"}, {"quantal", "no"}});
  }
  return out;
}

struct CorpusCheckResult {
  std::string check, expected, actual;
  bool pass = false;
};

struct CorpusFixtureResult {
  std::string name, provenance;
  std::vector<std::string> tags;
  std::vector<CorpusCheckResult> checks;
  bool pass = true;
};

inline CorpusFixtureResult run_fixture(const CorpusFixture& f) {
  CorpusFixtureResult r;
  r.name = f.name;
  r.provenance = f.provenance;
  r.tags = f.tags;
  for (const auto& [check, expected] : f.expected) {
    CorpusCheckResult c;
    c.check = check;
    c.expected = expected;
    try {
      c.actual = corpus_evaluate(f.structure, check);
    } catch (const Error& e) {
      c.actual = cat("error ", e.code(), ": ", e.detail());
    }
    c.pass = c.actual == c.expected;
    r.pass = r.pass && c.pass;
    r.checks.push_back(std::move(c));
  }
  return r;
}

// ---------------------------------------------------------------------------
// The pool of supported quantales for the identity suites: the supported
// named fixtures, frames over small lattices, the powerset of every labeled
// groupoid with up to three arrows, and the quantale of opens of every etale
// topology on the 13 small-groupoid representatives. Well over 200 entries.

struct NamedQuantale {
  std::string name;
  FinQuantale q;
};

inline std::vector<NamedQuantale> corpus_supported_quantales() {
  std::vector<NamedQuantale> out;
  out.push_back({"four-chain-unstable", unstable_support_chain_quantale()});
  out.push_back({"fuzzy-powerset", fuzzy_powerset_quantale()});
  out.push_back({"idempotent-chain", idempotent_chain_quantale()});
  out.push_back({"nine-ideals", nine_ideal_quantale_golden()});
  out.push_back({"seven-quotient", seven_element_quotient().quantale});
  out.push_back({"z2-powerset", z2_powerset_quantale()});
  out.push_back({"z3-powerset", z3_powerset_quantale()});
  out.push_back({"relations-2", powerset_quantale(pair_groupoid(2))});
  FinInverseSemigroup five = detail::corpus_five_element();
  out.push_back({"downsets-five", downset_quantale(five).quantale});
  out.push_back({"envelope-five", enveloping_quantale(five).quantale});
  out.push_back(
      {"envelope-i2",
       enveloping_quantale(symmetric_inverse_monoid(2).monoid).quantale});
  for (int n = 1; n <= 4; ++n)
    out.push_back({cat("chain-frame-", n), frame_quantale(chain_lattice(n))});
  for (int k = 1; k <= 3; ++k)
    out.push_back(
        {cat("boolean-frame-", k), frame_quantale(boolean_lattice(k))});

  int serial = 0;
  for (const FinGroupoid& g : groupoid_corpus(3))
    out.push_back({cat("powerset-", g.n, "-", serial++), powerset_quantale(g)});

  for (const NamedGroupoid& rep : named_groupoid_reps()) {
    int index = 0;
    for (const std::vector<Mask>& opens : all_topologies_on(rep.g.n)) {
      FinTopGroupoid tg;
      try {
        tg = validate_topgroupoid(rep.g, opens);
      } catch (const Error&) {
        continue;
      }
      if (!check_etale_conditions(tg).etale) {
        ++index;
        continue;
      }
      out.push_back(
          {cat("opens-", rep.name, "-", index++), topology_quantale(tg)});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Groupoid morphisms with frozen multiplicativity verdicts; every entry must
// satisfy the lax inequality, which check_lax_morphism asserts internally.

struct MorphismFixture {
  std::string name;
  FinGroupoid src, dst;
  std::vector<int> map;
  bool multiplicative = false;
};

inline std::vector<MorphismFixture> corpus_morphisms() {
  std::vector<MorphismFixture> out;
  FinGroupoid z2 = z2_groupoid(), z3 = z3_groupoid(), z4 = z4_groupoid();
  FinGroupoid klein = klein_groupoid(), pair2 = pair_groupoid(2);
  FinGroupoid point = discrete_groupoid(1);
  out.push_back({"identity-pair2", pair2, pair2, {0, 1, 2, 3}, true});
  out.push_back({"identity-z3", z3, z3, {0, 1, 2}, true});
  out.push_back({"collapse-z2", z2, z2, {0, 0}, false});
  out.push_back({"collapse-z3", z3, point, {0, 0, 0}, true});
  out.push_back({"collapse-pair2", pair2, point, {0, 0, 0, 0}, true});
  out.push_back({"include-z2-z4", z2, z4, {0, 2}, false});
  out.push_back({"quotient-z4-z2", z4, z2, {0, 1, 0, 1}, true});
  out.push_back({"quotient-klein-z2", klein, z2, {0, 1, 0, 1}, true});
  out.push_back(
      {"embed-units-pair2", discrete_groupoid(2), pair2, {0, 3}, false});
  return out;
}

}  // namespace qgk

#endif  // QGK_CORPUS_HPP_
