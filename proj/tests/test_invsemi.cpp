// Inverse semigroup validation, the natural order, completeness and
// distributivity, symmetric inverse monoids, the downset and enveloping
// quantales and the maps eta, epsilon and the join extension.

#include <catch2/catch_amalgamated.hpp>

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qgk/fixtures.hpp"
#include "qgk/invsemi.hpp"
#include "qgk/quantale.hpp"

namespace {

using namespace qgk;

std::pair<std::string, std::string> error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return {e.code(), e.detail()};
  }
  return {"", ""};
}

FinInverseSemigroup five_element() {
  SemigroupTable t = five_element_inverse_monoid();
  return validate_inverse_semigroup(t.n, t.mult);
}

// The meet operation of a lattice as a commutative idempotent table.
FinInverseSemigroup meet_monoid(const FinSupLattice& lat) {
  std::vector<int> mult(lat.size() * lat.size());
  for (int a = 0; a < lat.size(); ++a)
    for (int b = 0; b < lat.size(); ++b)
      mult[a * lat.size() + b] = lat.meet(a, b);
  return validate_inverse_semigroup(lat.size(), std::move(mult));
}

// Three idempotents 0 < e, 0 < f with ef = 0: no upper bound for {e, f}.
FinInverseSemigroup incomplete_semilattice() {
  return validate_inverse_semigroup(3, {0, 0, 0, 0, 1, 0, 0, 0, 2});
}

// Index permutation matching two subset listings element by element.
std::vector<int> align_by_sets(const std::vector<Mask>& from,
                               const std::vector<Mask>& to) {
  std::vector<int> perm(from.size(), -1);
  for (std::size_t i = 0; i < from.size(); ++i)
    for (std::size_t j = 0; j < to.size(); ++j)
      if (from[i] == to[j]) perm[i] = static_cast<int>(j);
  for (int p : perm) REQUIRE(p >= 0);
  return perm;
}

TEST_CASE("validation rejects broken tables with their own codes",
          "[invsemi]") {
  SECTION("associativity failure") {
    auto [code, detail] = error_of([] {
      validate_inverse_semigroup(2, {1, 1, 1, 0});
    });
    REQUIRE(code == "AssocFail");
    REQUIRE(detail.find("(0,0,1)") != std::string::npos);
  }
  SECTION("malformed table") {
    auto [code, detail] = error_of([] {
      validate_inverse_semigroup(2, {0, 0, 0});
    });
    REQUIRE(code == "AssocFail");
  }
  SECTION("null semigroup has no inner inverse for nonzero elements") {
    auto [code, detail] = error_of([] {
      validate_inverse_semigroup(2, {0, 0, 0, 0});
    });
    REQUIRE(code == "NotRegular");
    REQUIRE(detail.find("1") != std::string::npos);
  }
  SECTION("left zero semigroup is regular but has clashing idempotents") {
    auto [code, detail] = error_of([] {
      validate_inverse_semigroup(2, {0, 0, 1, 1});
    });
    REQUIRE(code == "IdempotentsDontCommute");
  }
  SECTION("declared unit must be a two-sided identity") {
    SemigroupTable t = five_element_inverse_monoid();
    auto [code, detail] = error_of([&] {
      validate_inverse_semigroup(t.n, t.mult, 0);
    });
    REQUIRE(code == "UnitFail");
  }
}

TEST_CASE("five element commutative monoid: order, idempotents, inverses",
          "[invsemi]") {
  FinInverseSemigroup s = five_element();
  REQUIRE(s.n == 5);
  REQUIRE(s.unit == 3);
  REQUIRE(s.least == 0);
  for (int x = 0; x < 5; ++x) REQUIRE(s.star(x) == x);
  REQUIRE(s.is_idempotent(0));
  REQUIRE(s.is_idempotent(1));
  REQUIRE_FALSE(s.is_idempotent(2));
  REQUIRE(s.is_idempotent(3));
  REQUIRE_FALSE(s.is_idempotent(4));

  // Two chains over the zero: 0 < f < e and 0 < t < s.
  REQUIRE(s.leq(1, 3));
  REQUIRE(s.leq(2, 4));
  REQUIRE_FALSE(s.leq(1, 2));
  REQUIRE_FALSE(s.leq(2, 3));
  REQUIRE_FALSE(s.leq(3, 4));
  REQUIRE_FALSE(s.leq(4, 3));
  for (int x = 0; x < 5; ++x) REQUIRE(s.leq(0, x));

  // Compatibility coincides with comparability here.
  for (int a = 0; a < 5; ++a)
    for (int b = 0; b < 5; ++b)
      REQUIRE(compatible(s, a, b) == (s.leq(a, b) || s.leq(b, a)));

  REQUIRE(check_complete(s));
  REQUIRE(check_infinitely_distributive(s));
}

TEST_CASE("symmetric inverse monoids: sizes, order and compatibility",
          "[invsemi]") {
  for (int n = 0; n <= 4; ++n) {
    SymmetricInverseMonoid m = symmetric_inverse_monoid(n);
    long expected = 0;
    for (int k = 0; k <= n; ++k) {
      long binom = 1;
      for (int i = 0; i < k; ++i) binom = binom * (n - i) / (i + 1);
      long fact = 1;
      for (int i = 2; i <= k; ++i) fact *= i;
      expected += binom * binom * fact;
    }
    REQUIRE(m.monoid.n == expected);
  }
  REQUIRE(symmetric_inverse_monoid(1).monoid.n == 2);
  REQUIRE(symmetric_inverse_monoid(2).monoid.n == 7);
  REQUIRE(symmetric_inverse_monoid(3).monoid.n == 34);
  REQUIRE(symmetric_inverse_monoid(4).monoid.n == 209);
  REQUIRE(error_of([] { symmetric_inverse_monoid(5); }).first ==
          "CarrierTooLarge");

  SymmetricInverseMonoid two = symmetric_inverse_monoid(2);
  const FinInverseSemigroup& s = two.monoid;
  REQUIRE(two.maps[0] == std::vector<int>{-1, -1});
  REQUIRE(s.least == 0);
  REQUIRE(two.maps[s.unit] == std::vector<int>{0, 1});
  int partial0 = 3;  // fixes the first point only
  int partial1 = 2;  // fixes the second point only
  int swap = 6;
  REQUIRE(two.maps[partial0] == std::vector<int>{0, -1});
  REQUIRE(two.maps[partial1] == std::vector<int>{-1, 1});
  REQUIRE(two.maps[swap] == std::vector<int>{1, 0});

  // The order is restriction of partial maps.
  REQUIRE(s.leq(partial0, s.unit));
  REQUIRE(s.leq(partial1, s.unit));
  REQUIRE_FALSE(s.leq(partial0, swap));
  for (int x = 0; x < s.n; ++x) REQUIRE(s.leq(0, x));

  REQUIRE(compatible(s, partial0, s.unit));
  REQUIRE_FALSE(compatible(s, swap, s.unit));

  REQUIRE(join_in(s, {partial0, partial1}) == std::optional<int>{s.unit});
  REQUIRE_FALSE(join_in(s, {partial0, 5}).has_value());
  REQUIRE(join_in(s, {}) == std::optional<int>{0});
}

TEST_CASE("completeness and distributivity run separate diagnostics",
          "[invsemi]") {
  SECTION("symmetric monoids are complete and distributive") {
    for (int n = 1; n <= 2; ++n) {
      FinInverseSemigroup s = symmetric_inverse_monoid(n).monoid;
      REQUIRE(check_complete(s));
      REQUIRE(check_infinitely_distributive(s));
    }
    // 34 elements: the pair reduction and the idempotent reduction kick in.
    FinInverseSemigroup big = symmetric_inverse_monoid(3).monoid;
    REQUIRE(check_complete(big));
    REQUIRE(check_infinitely_distributive(big));
  }
  SECTION("missing joins of compatible pairs break completeness") {
    FinInverseSemigroup s = incomplete_semilattice();
    REQUIRE(s.unit == -1);
    REQUIRE(compatible(s, 1, 2));
    REQUIRE_FALSE(check_complete(s));
    REQUIRE(check_infinitely_distributive(s));
  }
  SECTION("a modular non-distributive meet table fails distributivity") {
    FinInverseSemigroup s = meet_monoid(diamond_lattice());
    REQUIRE(check_complete(s));
    REQUIRE_FALSE(check_infinitely_distributive(s));
  }
  SECTION("the idempotent reduction agrees with the direct scan") {
    for (const FinInverseSemigroup& s :
         {five_element(), symmetric_inverse_monoid(2).monoid,
          meet_monoid(diamond_lattice()), incomplete_semilattice()}) {
      FinInverseSemigroup e = restrict_to(s, idempotent_elements(s));
      REQUIRE(check_infinitely_distributive(s) ==
              check_infinitely_distributive(e));
    }
  }
}

TEST_CASE("meets come from the equalizing idempotent formula", "[invsemi]") {
  SymmetricInverseMonoid two = symmetric_inverse_monoid(2);
  const FinInverseSemigroup& s = two.monoid;
  for (int x = 0; x < s.n; ++x) REQUIRE(meet_of(s, {x}) == x);
  REQUIRE(meet_of(s, {s.unit, 3}) == 3);
  REQUIRE(meet_of(s, {6, s.unit}) == 0);
  REQUIRE(meet_of(s, {3, 2}) == 0);

  REQUIRE(error_of([&] { meet_of(s, {}); }).first == "NotACP");
  REQUIRE(error_of([] {
            meet_of(meet_monoid(diamond_lattice()), {1, 2});
          }).first == "NotACP");
  REQUIRE(error_of([] {
            meet_of(incomplete_semilattice(), {1, 2});
          }).first == "NotACP");
}

TEST_CASE("downset quantale: pointwise structure over the natural order",
          "[invsemi]") {
  SECTION("two element monoid gives the three element chain") {
    DownsetQuantale dq = downset_quantale(symmetric_inverse_monoid(1).monoid);
    REQUIRE(dq.quantale.size() == 3);
    REQUIRE(dq.quantale == frame_quantale(chain_lattice(3)));
  }
  SECTION("five element monoid: ten downsets embedding the nine ideals") {
    DownsetQuantale dq = downset_quantale(five_element());
    REQUIRE(dq.quantale.size() == 10);
    REQUIRE(dq.sets[0] == 0);
    REQUIRE(dq.quantale.zero() == 0);
    std::vector<Mask> golden = nine_ideal_golden_sets();
    FinQuantale nine = nine_ideal_quantale_golden();
    // Skipping the empty set aligns the remaining downsets with the golden
    // nine element family through their underlying subsets.
    std::vector<Mask> rest(dq.sets.begin() + 1, dq.sets.end());
    std::vector<int> perm = align_by_sets(rest, golden);
    for (int i = 0; i < 9; ++i)
      for (int j = 0; j < 9; ++j) {
        REQUIRE(perm[dq.quantale.times(i + 1, j + 1) - 1] ==
                nine.times(perm[i], perm[j]));
        REQUIRE(dq.quantale.leq(i + 1, j + 1) ==
                nine.leq(perm[i], perm[j]));
      }
    REQUIRE(perm[dq.quantale.unit - 1] == nine.unit);
    REQUIRE(dq.support.stable);
    REQUIRE(check_inverse_quantal_frame(dq.quantale));
  }
  SECTION("a meet table turns into downsets under pointwise meet") {
    FinInverseSemigroup s = meet_monoid(boolean_lattice(2));
    DownsetQuantale dq = downset_quantale(s);
    REQUIRE(dq.quantale.size() == 6);
    REQUIRE(check_frame(dq.quantale.lat).is_frame);
    for (int a = 0; a < s.n; ++a)
      for (int b = 0; b < s.n; ++b)
        REQUIRE(dq.quantale.times(dq.principal[a], dq.principal[b]) ==
                dq.principal[s.times(a, b)]);
  }
  SECTION("a non-distributive carrier still yields an inverse quantale") {
    DownsetQuantale dq = downset_quantale(meet_monoid(diamond_lattice()));
    REQUIRE(dq.quantale.size() == 10);
    REQUIRE(dq.support.stable);
  }
  SECTION("oversized carriers are refused") {
    FinInverseSemigroup big = symmetric_inverse_monoid(4).monoid;
    REQUIRE(error_of([&] { downset_quantale(big); }).first ==
            "CarrierTooLarge");
  }
}

TEST_CASE("enveloping quantale: closed downsets under compatible joins",
          "[invsemi]") {
  SECTION("five element monoid reproduces the nine ideals entry for entry") {
    EnvelopingQuantale env = enveloping_quantale(five_element());
    REQUIRE(env.quantale.size() == 9);
    std::vector<int> perm = align_by_sets(env.sets, nine_ideal_golden_sets());
    FinQuantale nine = nine_ideal_quantale_golden();
    for (int i = 0; i < 9; ++i) {
      REQUIRE(env.quantale.star(i) == i);
      for (int j = 0; j < 9; ++j) {
        REQUIRE(perm[env.quantale.times(i, j)] ==
                nine.times(perm[i], perm[j]));
        REQUIRE(env.quantale.leq(i, j) == nine.leq(perm[i], perm[j]));
      }
    }
    REQUIRE(perm[env.quantale.unit] == nine.unit);
    REQUIRE(env.support.stable);
    REQUIRE(check_inverse_quantal_frame(env.quantale));
  }
  SECTION("symmetric monoid envelopes hit the expected sizes") {
    REQUIRE(enveloping_quantale(symmetric_inverse_monoid(1).monoid)
                .quantale.size() == 2);
    EnvelopingQuantale env =
        enveloping_quantale(symmetric_inverse_monoid(2).monoid);
    REQUIRE(env.quantale.size() == 16);
    REQUIRE(check_inverse_quantal_frame(env.quantale));
  }
  SECTION("a frame turned meet monoid envelopes to itself") {
    FinInverseSemigroup s = meet_monoid(boolean_lattice(2));
    EnvelopingQuantale env = enveloping_quantale(s);
    REQUIRE(env.quantale.size() == 4);
    for (int a = 0; a < s.n; ++a)
      for (int b = 0; b < s.n; ++b)
        REQUIRE(env.quantale.times(env.principal[a], env.principal[b]) ==
                env.principal[s.times(a, b)]);
    REQUIRE(quantale_isomorphic(env.quantale,
                                frame_quantale(boolean_lattice(2))));
  }
  SECTION("carriers outside the closed-ideal scope are refused") {
    REQUIRE(error_of([] {
              enveloping_quantale(meet_monoid(diamond_lattice()));
            }).first == "NotACP");
    REQUIRE(error_of([] {
              enveloping_quantale(incomplete_semilattice());
            }).first == "NotACP");
  }
}

TEST_CASE("eta embeds a monoid as the partial units of its envelope",
          "[invsemi]") {
  EtaReport five = eta(five_element());
  REQUIRE(five.iso);
  REQUIRE(five.envelope.quantale.size() == 9);

  EtaReport two = eta(symmetric_inverse_monoid(2).monoid);
  REQUIRE(two.iso);
  REQUIRE(two.envelope.quantale.size() == 16);

  EtaReport trivial = eta(validate_inverse_semigroup(1, {0}));
  REQUIRE(trivial.iso);
  REQUIRE(trivial.envelope.quantale.size() == 1);

  REQUIRE(error_of([] { eta(meet_monoid(diamond_lattice())); }).first ==
          "NotACP");
}

TEST_CASE("partial units of a supported quantale form an inverse monoid",
          "[invsemi]") {
  SECTION("the nine ideals recover the five element monoid") {
    IpiMonoid m = ipi_monoid(nine_ideal_quantale_golden());
    REQUIRE(m.members == std::vector<int>{0, 1, 2, 3, 5});
    REQUIRE(m.monoid.mult == five_element().mult);
  }
  SECTION("an unstable support still leaves a monoid of partial units") {
    IpiMonoid m = ipi_monoid(unstable_support_chain_quantale());
    REQUIRE(m.members == std::vector<int>{0, 1, 2});
    REQUIRE(m.monoid.unit == 2);
  }
  SECTION("without any support there is no monoid") {
    REQUIRE(error_of([] {
              ipi_monoid(no_support_pentagon_quantale());
            }).first == "NotASupport");
  }
}

TEST_CASE("epsilon compares a quantale with the envelope of its units",
          "[invsemi]") {
  SECTION("group powersets are recovered") {
    EpsilonReport z2 = epsilon(z2_powerset_quantale());
    REQUIRE(z2.iso);
    REQUIRE(z2.envelope.quantale.size() == 4);
    EpsilonReport z3 = epsilon(z3_powerset_quantale());
    REQUIRE(z3.iso);
    REQUIRE(z3.envelope.quantale.size() == 8);
  }
  SECTION("frames are recovered") {
    EpsilonReport rep = epsilon(frame_quantale(boolean_lattice(2)));
    REQUIRE(rep.iso);
  }
  SECTION("the nine ideals are recovered") {
    EpsilonReport rep = epsilon(nine_ideal_quantale_golden());
    REQUIRE(rep.iso);
    REQUIRE(rep.envelope.quantale.size() == 9);
  }
  SECTION("too few partial units leave the comparison injective only") {
    EpsilonReport rep = epsilon(fuzzy_powerset_quantale());
    REQUIRE_FALSE(rep.iso);
    REQUIRE(rep.envelope.quantale.size() == 2);
    REQUIRE(rep.map == std::vector<int>{0, 1});
  }
  SECTION("a quotient that is not a frame is not recovered") {
    EpsilonReport rep = epsilon(seven_element_quotient().quantale);
    REQUIRE_FALSE(rep.iso);
    REQUIRE(rep.envelope.quantale.size() == 9);
  }
}

TEST_CASE("monoid maps into partial units extend along downsets",
          "[invsemi]") {
  SECTION("trivial monoid into the four element stable quantale") {
    FinInverseSemigroup s = validate_inverse_semigroup(1, {0});
    FinQuantale q = fuzzy_powerset_quantale();
    ExtendedHom ext = extend_hom(s, q, {q.unit});
    REQUIRE(ext.domain.quantale.size() == 2);
    REQUIRE(ext.map == std::vector<int>{0, 1});
  }
  SECTION("identity on the units of a group powerset is surjective") {
    FinQuantale q = z2_powerset_quantale();
    IpiMonoid m = ipi_monoid(q);
    ExtendedHom ext = extend_hom(m.monoid, q, m.members);
    REQUIRE(ext.domain.quantale.size() == 5);
    std::vector<char> hit(q.size(), 0);
    for (int v : ext.map) hit[v] = 1;
    REQUIRE(std::count(hit.begin(), hit.end(), 1) == q.size());
  }
  SECTION("principal embedding of the symmetric monoid covers its envelope") {
    FinInverseSemigroup s = symmetric_inverse_monoid(2).monoid;
    EnvelopingQuantale env = enveloping_quantale(s);
    ExtendedHom ext = extend_hom(s, env.quantale, env.principal);
    REQUIRE(ext.domain.quantale.size() == 26);
    std::vector<char> hit(env.quantale.size(), 0);
    for (int v : ext.map) hit[v] = 1;
    REQUIRE(std::count(hit.begin(), hit.end(), 1) == env.quantale.size());
  }
  SECTION("broken maps are rejected") {
    FinQuantale q = z2_powerset_quantale();
    IpiMonoid m = ipi_monoid(q);
    std::vector<int> to_top(m.monoid.n, q.top());
    REQUIRE(error_of([&] { extend_hom(m.monoid, q, to_top); }).first ==
            "NotAMonoidHom");
    std::vector<int> drop = m.members;
    drop[2] = 0;  // send the group element to zero: products break
    REQUIRE(error_of([&] { extend_hom(m.monoid, q, drop); }).first ==
            "NotAMonoidHom");
    REQUIRE(error_of([&] {
              extend_hom(incomplete_semilattice(), q, {0, 1, 1});
            }).first == "NotAMonoidHom");
  }
}

TEST_CASE("downsets of a carrier envelope its completed unit monoid",
          "[invsemi]") {
  // The partial units of the downset quantale form a completion of the
  // carrier, and the closed downsets of that completion give the downset
  // quantale back.
  DownsetQuantale ls = downset_quantale(five_element());
  IpiMonoid completed = ipi_monoid(ls.quantale);
  REQUIRE(completed.monoid.n == 6);
  EnvelopingQuantale round = enveloping_quantale(completed.monoid);
  REQUIRE(round.quantale.size() == ls.quantale.size());
  REQUIRE(quantale_isomorphic(round.quantale, ls.quantale));
}

}  // namespace
