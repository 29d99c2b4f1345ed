// Groupoid validation and fixtures, powerset and topology quantales, partial
// bijections, atom-level recovery, the groupoid of an inverse quantal frame,
// the five etale conditions over exhaustively enumerated topologies, and the
// lax behaviour of preimage maps of groupoid morphisms.

#include <catch2/catch_amalgamated.hpp>

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "qgk/fixtures.hpp"
#include "qgk/groupoid.hpp"
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

// The one-object groupoid over a three-element cyclic group, as raw tables
// open to perturbation.
struct RawGroup {
  std::vector<int> units{0};
  std::vector<int> dom{0, 0, 0}, cod{0, 0, 0};
  std::vector<std::array<int, 3>> comp;
  std::vector<int> inv{0, 2, 1};

  RawGroup() {
    SemigroupTable z3 = cyclic_group_table(3);
    for (int x = 0; x < 3; ++x)
      for (int y = 0; y < 3; ++y) comp.push_back({x, y, z3.times(x, y)});
  }
  FinGroupoid validate() const {
    return validate_groupoid(3, units, dom, cod, comp, inv);
  }
};

// The arrow groupoid of the five-element inverse monoid: every element is an
// arrow from x x* to x* x, composed by the monoid product, with all downsets
// of the natural order as topology.
FinTopGroupoid five_arrow_space() {
  FinInverseSemigroup five = five_element();
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

// Every topology on the arrow set of g: each family of subsets containing the
// empty and full sets and closed under union and intersection. Only feasible
// for up to four arrows.
std::vector<std::vector<Mask>> all_topologies(const FinGroupoid& g) {
  REQUIRE(g.n <= 4);
  const int N = 1 << g.n;
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

}  // namespace

TEST_CASE("groupoid validation pinpoints the broken axiom", "[groupoid]") {
  CHECK(error_of([] {
          validate_groupoid(0, {}, {}, {}, {}, {});
        }).first == "NotAGroupoid");

  RawGroup raw;
  CHECK_NOTHROW(raw.validate());

  SECTION("dom must be a unit") {
    RawGroup r;
    r.dom[1] = 1;
    auto [code, detail] = error_of([&] { r.validate(); });
    CHECK(code == "NotAGroupoid");
    CHECK(detail == "dom of arrow 1 is not a unit");
  }
  SECTION("units are their own endpoints") {
    RawGroup r;
    r.units = {0, 1};  // declares the non-idempotent arrow 1 a unit
    auto [code, detail] = error_of([&] { r.validate(); });
    CHECK(code == "UnitFail");
    CHECK(detail == "unit 1 is not its own dom and cod");
  }
  SECTION("missing and surplus composites") {
    RawGroup r;
    r.comp.pop_back();
    CHECK(error_of([&] { r.validate(); }).first == "CompFail");
    RawGroup r2;
    r2.comp.push_back({0, 0, 0});
    CHECK(error_of([&] { r2.validate(); }).first == "NotAGroupoid");
  }
  SECTION("associativity witness") {
    RawGroup r;
    // redirect g g to the unit; (g g) g then differs from g (g g)
    for (auto& t : r.comp)
      if (t[0] == 1 && t[1] == 1) t[2] = 0;
    auto [code, detail] = error_of([&] { r.validate(); });
    CHECK(code == "AssocFail");
    CHECK(detail == "(1,1,2)");
  }
  SECTION("perturbed inversion on one arrow") {
    std::vector<int> inv = {0, 1, 2, 3};  // identity instead of transposes
    FinGroupoid good = pair_groupoid(2);
    std::vector<std::array<int, 3>> comp;
    for (int x = 0; x < 4; ++x)
      for (int y = 0; y < 4; ++y)
        if (good.composable(x, y)) comp.push_back({x, y, good.m(x, y)});
    auto [code, detail] = error_of([&] {
      validate_groupoid(4, good.units, good.dom, good.cod, comp, inv);
    });
    CHECK(code == "InversionFail");
    CHECK(detail == "arrow 1 does not compose with its declared inverse");
  }
}

TEST_CASE("groupoid fixtures validate and isomorphism discriminates",
          "[groupoid]") {
  FinGroupoid z2 = z2_groupoid();
  FinGroupoid pair2 = pair_groupoid(2);
  CHECK(z2.n == 2);
  CHECK(z2.units == std::vector<int>{0});
  CHECK(pair2.n == 4);
  CHECK(pair2.units == std::vector<int>{0, 3});
  CHECK(pair2.m(1, 2) == 0);  // (0,1) then (1,0) returns to the 0 loop
  CHECK(pair2.m(2, 1) == 3);
  CHECK(klein_groupoid().n == 4);
  CHECK(discrete_groupoid(3).units.size() == 3);

  FinGroupoid z2u = disjoint_union_groupoid(z2, discrete_groupoid(1));
  CHECK(z2u.n == 3);
  CHECK(z2u.units == std::vector<int>{0, 2});

  CHECK(groupoid_isomorphic(z2, z2_groupoid()));
  CHECK(groupoid_isomorphic(pair2, pair_groupoid(2)));
  CHECK_FALSE(groupoid_isomorphic(z2, discrete_groupoid(2)));
  CHECK_FALSE(groupoid_isomorphic(z4_groupoid(), klein_groupoid()));
  CHECK_FALSE(groupoid_isomorphic(pair2, disjoint_union_groupoid(z2, z2)));
  CHECK(error_of([] {
          groupoid_isomorphic(pair_groupoid(4), pair_groupoid(4));
        }).first == "CarrierTooLarge");
}

TEST_CASE("powerset quantale with dom-image support", "[groupoid]") {
  FinGroupoid z2 = z2_groupoid();
  FinQuantale pz2 = powerset_quantale(z2);
  CHECK(pz2.size() == 4);
  CHECK(pz2.unit == 1);
  CHECK(pz2.times(2, 2) == 1);  // {g}{g} = {e}
  CHECK(pz2 == z2_powerset_quantale());

  // Binary relations on two points, composed directly on pair masks, agree
  // with the powerset of the pair groupoid entry for entry.
  FinGroupoid pair2 = pair_groupoid(2);
  FinQuantale pp2 = powerset_quantale(pair2);
  CHECK(pp2.size() == 16);
  for (int a = 0; a < 16; ++a)
    for (int b = 0; b < 16; ++b) {
      int composed = 0;
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
          for (int l = 0; l < 2; ++l)
            if ((a >> (i * 2 + j) & 1) && (b >> (j * 2 + l) & 1))
              composed |= 1 << (i * 2 + l);
      CHECK(pp2.times(a, b) == composed);
    }
  CHECK(pp2.unit == 0b1001);
  CHECK(check_inverse_quantal_frame(pp2));

  CHECK(powerset_quantale(discrete_groupoid(2)) ==
        frame_quantale(boolean_lattice(2)));

  // The support is the dom image and the unit part of U U* at once.
  FinGroupoid z2u = disjoint_union_groupoid(z2, discrete_groupoid(1));
  FinQuantale pu = powerset_quantale(z2u);
  SupportMap s = candidate_support(pu);
  CHECK(s.stable);
  Mask g0 = 0b101;
  for (int u = 0; u < pu.size(); ++u) {
    Mask direct = 0;
    for (int x = 0; x < z2u.n; ++x)
      if (u >> x & 1) direct |= mask_bit(z2u.dom[x]);
    CHECK(static_cast<Mask>(s(u)) == direct);
    CHECK((static_cast<Mask>(pu.times(u, pu.star(u))) & g0) == direct);
  }

  CHECK(error_of([] {
          powerset_quantale(pair_groupoid(4));
        }).first == "CarrierTooLarge");
}

TEST_CASE("partial bijections form the powerset partial-unit monoid",
          "[groupoid]") {
  IpiMonoid gz2 = gsets(z2_groupoid());
  CHECK(gz2.monoid.n == 3);
  CHECK(gz2.members == std::vector<int>{0, 1, 2});
  CHECK(gz2.monoid.times(2, 2) == 1);  // {g}{g} = {e}
  CHECK(gz2.monoid.unit == 1);

  // Pair groupoid partial bijections match the symmetric inverse monoid on
  // two points through the graph-of-the-map bijection.
  SymmetricInverseMonoid i2 = symmetric_inverse_monoid(2);
  IpiMonoid gp2 = gsets(pair_groupoid(2));
  CHECK(gp2.monoid.n == 7);
  CHECK(i2.monoid.n == 7);
  std::vector<int> perm(7, -1);
  std::vector<char> hit(7, 0);
  for (int k = 0; k < 7; ++k) {
    int graph = 0;
    for (int i = 0; i < 2; ++i)
      if (i2.maps[k][i] >= 0) graph |= 1 << (i * 2 + i2.maps[k][i]);
    perm[k] = gp2.member_index[graph];
    REQUIRE(perm[k] >= 0);
    CHECK(!hit[perm[k]]);
    hit[perm[k]] = 1;
  }
  CHECK(perm[i2.monoid.unit] == gp2.monoid.unit);
  for (int a = 0; a < 7; ++a)
    for (int b = 0; b < 7; ++b) {
      CHECK(perm[i2.monoid.times(a, b)] == gp2.monoid.times(perm[a], perm[b]));
      CHECK(i2.monoid.leq(a, b) == gp2.monoid.leq(perm[a], perm[b]));
    }

  // On a discrete groupoid every subset of units is a partial bijection.
  IpiMonoid gd3 = gsets(discrete_groupoid(3));
  CHECK(gd3.monoid.n == 8);
  for (int a = 0; a < 8; ++a) CHECK(gd3.monoid.is_idempotent(a));
}

TEST_CASE("atom recovery rebuilds the groupoid from its powerset",
          "[groupoid]") {
  FinGroupoid z2 = z2_groupoid();
  CHECK(recover_groupoid_from_atoms(powerset_quantale(z2)) == z2);
  CHECK(recover_groupoid_from_atoms(z2_powerset_quantale()) == z2);

  std::vector<FinGroupoid> corpus;
  corpus.push_back(z2);
  corpus.push_back(z3_groupoid());
  corpus.push_back(z4_groupoid());
  corpus.push_back(klein_groupoid());
  corpus.push_back(pair_groupoid(2));
  corpus.push_back(discrete_groupoid(1));
  corpus.push_back(discrete_groupoid(4));
  corpus.push_back(disjoint_union_groupoid(z2, discrete_groupoid(2)));
  corpus.push_back(disjoint_union_groupoid(z2, z2_groupoid()));
  corpus.push_back(disjoint_union_groupoid(z3_groupoid(), discrete_groupoid(1)));
  for (const FinGroupoid& g : corpus) {
    FinGroupoid back = recover_groupoid_from_atoms(powerset_quantale(g));
    CHECK(back == g);
    CHECK(groupoid_isomorphic(back, g));
  }

  // The boolean frame is the powerset of a discrete groupoid.
  CHECK(recover_groupoid_from_atoms(frame_quantale(boolean_lattice(2))) ==
        discrete_groupoid(2));

  auto [code, detail] = error_of([] {
    recover_groupoid_from_atoms(fuzzy_powerset_quantale());
  });
  CHECK(code == "NotAtomicPointwise");
  CHECK(detail == "the product of atoms 1 and 1 is neither zero nor an atom");

  // A chain has a top that no join of atoms reaches.
  auto [code2, detail2] = error_of([] {
    recover_groupoid_from_atoms(frame_quantale(chain_lattice(3)));
  });
  CHECK(code2 == "NotAtomicPointwise");
  CHECK(detail2 == "element 2 is not the join of the atoms below it");
}

TEST_CASE("topology validation enforces the continuity of all maps",
          "[groupoid]") {
  FinGroupoid z2 = z2_groupoid();
  CHECK_NOTHROW(validate_topgroupoid(z2, discrete_topology(z2)));
  CHECK_NOTHROW(validate_topgroupoid(z2, {0, 3}));

  auto [code, detail] = error_of([&] { validate_topgroupoid(z2, {0, 1, 3}); });
  CHECK(code == "NotContinuous");
  CHECK(detail == "composition is discontinuous at the pair (1,1) for open 1");

  CHECK(error_of([&] { validate_topgroupoid(z2, {0, 1, 2}); }).first ==
        "NotATopology");  // missing the full set
  CHECK(error_of([&] { validate_topgroupoid(z2, {3}); }).first ==
        "NotATopology");  // missing the empty set
  CHECK(error_of([&] { validate_topgroupoid(z2, {0, 4, 7}); }).first ==
        "NotATopology");  // mentions a third arrow

  FinGroupoid pair2 = pair_groupoid(2);
  // unions of the two unit singletons are forced
  CHECK(error_of([&] {
          validate_topgroupoid(pair2, {0, 1, 8, 15});
        }).first == "NotATopology");
}

TEST_CASE("etale conditions never disagree over enumerated topologies",
          "[groupoid]") {
  FinGroupoid z2 = z2_groupoid();
  struct Row {
    FinGroupoid g;
    int topologies, validated, etale;
  };
  std::vector<Row> rows;
  rows.push_back({z2, 4, 2, 1});
  rows.push_back({discrete_groupoid(2), 4, 4, 4});
  rows.push_back({disjoint_union_groupoid(z2, discrete_groupoid(1)), 29, 10, 3});
  rows.push_back({z3_groupoid(), 29, 2, 1});
  rows.push_back({pair_groupoid(2), 355, 8, 2});
  rows.push_back({z4_groupoid(), 355, 3, 1});
  rows.push_back({klein_groupoid(), 355, 5, 1});
  rows.push_back({disjoint_union_groupoid(z2, z2), 355, 31, 6});

  for (const Row& row : rows) {
    std::vector<std::vector<Mask>> tops = all_topologies(row.g);
    CHECK(static_cast<int>(tops.size()) == row.topologies);
    int validated = 0, etale = 0;
    for (const auto& opens : tops) {
      FinTopGroupoid tg;
      try {
        tg = validate_topgroupoid(row.g, opens);
      } catch (const Error&) {
        continue;
      }
      ++validated;
      // A mixed verdict would throw EquivalenceBroken here.
      EtaleReport rep = check_etale_conditions(tg);
      if (rep.etale) ++etale;
      CHECK(rep.frobenius);
    }
    CHECK(validated == row.validated);
    CHECK(etale == row.etale);
  }

  SECTION("discrete topologies are etale with a full partial-bijection cover") {
    FinGroupoid pair2 = pair_groupoid(2);
    FinTopGroupoid tg = validate_topgroupoid(pair2, discrete_topology(pair2));
    EtaleReport rep = check_etale_conditions(tg);
    CHECK(rep.etale);
    CHECK(rep.units_open);
    CHECK(rep.dom_open);
    CHECK(rep.local_homeo);
    CHECK(rep.product_closed);
    CHECK(rep.ug_open);
    CHECK(rep.uui_open);
    CHECK(rep.gset_cover.size() == 7);  // one per partial bijection
    Mask acc = 0;
    for (Mask o : rep.gset_cover) acc |= o;
    CHECK(acc == tg.full());
  }
  SECTION("the indiscrete group fails every condition at once") {
    FinTopGroupoid tg = validate_topgroupoid(z2, {0, 3});
    EtaleReport rep = check_etale_conditions(tg);
    CHECK_FALSE(rep.units_open);
    CHECK_FALSE(rep.dom_open);
    CHECK_FALSE(rep.local_homeo);
    CHECK_FALSE(rep.product_closed);
    CHECK_FALSE(rep.ug_open);
    CHECK_FALSE(rep.uui_open);
    CHECK_FALSE(rep.etale);
  }
}

TEST_CASE("quantal topologies form inverse quantal frames", "[groupoid]") {
  FinGroupoid z2 = z2_groupoid();
  FinTopGroupoid disc = validate_topgroupoid(z2, discrete_topology(z2));
  CHECK(topology_quantale(disc) == powerset_quantale(z2));

  // The arrow space of the five-element inverse monoid carries all ten
  // downsets; its quantale of opens is the downset quantale itself.
  FinTopGroupoid s5 = five_arrow_space();
  CHECK(s5.opens.size() == 10);
  DownsetQuantale dq = downset_quantale(five_element());
  FinQuantale q5 = topology_quantale(s5);
  CHECK(q5 == dq.quantale);
  EtaleReport rep = check_etale_conditions(s5);
  CHECK(rep.etale);
  CHECK(rep.gset_cover.size() == 6);

  // The nine nonempty opens reproduce the hand-written nine-element table
  // entry for entry; the empty set sits below them as the extra bottom.
  FinQuantale nine = nine_ideal_quantale_golden();
  const std::vector<Mask>& gold = nine_ideal_golden_sets();
  std::vector<int> at(9, -1);
  for (int i = 0; i < 9; ++i)
    for (std::size_t j = 0; j < s5.opens.size(); ++j)
      if (s5.opens[j] == gold[i]) at[i] = static_cast<int>(j);
  for (int i = 0; i < 9; ++i) {
    REQUIRE(at[i] >= 0);
    CHECK(q5.star(at[i]) == at[nine.star(i)]);
    for (int j = 0; j < 9; ++j) {
      CHECK(q5.times(at[i], at[j]) == at[nine.times(i, j)]);
      CHECK(q5.leq(at[i], at[j]) == nine.leq(i, j));
    }
  }
  CHECK(q5.unit == at[3]);
  CHECK(s5.opens[0] == 0);

  SECTION("the unit set must be open") {
    FinTopGroupoid ind = validate_topgroupoid(z2, {0, 3});
    auto [code, detail] = error_of([&] { topology_quantale(ind); });
    CHECK(code == "NotQuantalTopology");
    CHECK(detail == "the unit set is not open");
  }
  SECTION("non-closed pointwise products are reported as a pair") {
    FinGroupoid z2u = disjoint_union_groupoid(z2, discrete_groupoid(1));
    FinTopGroupoid tg = validate_topgroupoid(z2u, {0, 2, 5, 7});
    CHECK(check_etale_conditions(tg).units_open);
    auto [code, detail] = error_of([&] { topology_quantale(tg); });
    CHECK(code == "NotQuantalTopology");
    CHECK(detail == "the pointwise product of opens 1 and 1 is not open");
  }
}

TEST_CASE("the groupoid of an inverse quantal frame is etale", "[groupoid]") {
  SECTION("powerset of a two-element group") {
    FinTopGroupoid tg = groupoid_of_quantale(z2_powerset_quantale());
    CHECK(tg.g.n == 3);
    CHECK(tg.g.units == std::vector<int>{0, 1});
    CHECK(tg.g.dom[2] == 1);  // the {g} arrow loops at the {e} unit
    CHECK(tg.g.cod[2] == 1);
    CHECK(tg.opens == std::vector<Mask>{0, 1, 3, 5, 7});
    IpiMonoid pu = ipi_monoid(z2_powerset_quantale());
    CHECK(topology_quantale(tg) == downset_quantale(pu.monoid).quantale);
  }
  SECTION("the nine-element quantale yields the five-element arrow monoid") {
    FinTopGroupoid tg = groupoid_of_quantale(nine_ideal_quantale_golden());
    CHECK(tg.g.n == 5);
    CHECK(tg.g.units == std::vector<int>{0, 1, 3});
    CHECK(tg.opens.size() == 10);
    // arrows multiply exactly as the five-element inverse monoid
    FinInverseSemigroup five = five_element();
    for (int x = 0; x < 5; ++x)
      for (int y = 0; y < 5; ++y)
        if (tg.g.composable(x, y))
          CHECK(tg.g.m(x, y) == five.times(x, y));
    CHECK(check_etale_conditions(tg).etale);
  }
  SECTION("a frame gives a space: every arrow is a unit") {
    FinTopGroupoid tg = groupoid_of_quantale(frame_quantale(boolean_lattice(2)));
    CHECK(tg.g.n == 4);
    CHECK(tg.g.units.size() == 4);
    CHECK(tg.opens.size() == 6);
  }
  SECTION("sixteen-element relation quantale") {
    FinTopGroupoid tg = groupoid_of_quantale(powerset_quantale(pair_groupoid(2)));
    CHECK(tg.g.n == 7);
    CHECK(tg.g.units.size() == 4);
    CHECK(tg.opens.size() == 26);
  }
  SECTION("rejections") {
    CHECK(error_of([] {
            groupoid_of_quantale(fuzzy_powerset_quantale());
          }).first == "NotIQF");
    CHECK(error_of([] {
            groupoid_of_quantale(unstable_support_chain_quantale());
          }).first == "NotIQF");
  }
}

TEST_CASE("round trips between groupoids and quantal frames", "[groupoid]") {
  // Recovering from the powerset is the identity on the corpus (checked in
  // the atom-recovery case); here the quantal side: the topology of the
  // groupoid of Q is the downset quantale of its partial units, and the
  // compatible-ideal completion of those partial units is Q again.
  std::vector<FinQuantale> frames;
  frames.push_back(z2_powerset_quantale());
  frames.push_back(z3_powerset_quantale());
  frames.push_back(nine_ideal_quantale_golden());
  frames.push_back(frame_quantale(boolean_lattice(2)));
  frames.push_back(powerset_quantale(pair_groupoid(2)));
  for (const FinQuantale& q : frames) {
    FinTopGroupoid tg = groupoid_of_quantale(q);
    IpiMonoid pu = ipi_monoid(q);
    CHECK(topology_quantale(tg) == downset_quantale(pu.monoid).quantale);
    EpsilonReport ep = epsilon(q);
    CHECK(ep.iso);
    CHECK(ep.envelope.quantale.size() == q.size());
  }
}

TEST_CASE("preimage maps of groupoid morphisms are lax but not always "
          "multiplicative", "[groupoid]") {
  FinGroupoid z2 = z2_groupoid();
  FinGroupoid pair2 = pair_groupoid(2);

  LaxMorphismReport id = check_lax_morphism(pair2, pair2, {0, 1, 2, 3});
  CHECK(id.lax);
  CHECK(id.multiplicative);

  // Collapsing the group to its unit: preimages of {g} multiply to nothing,
  // but the preimage of {g}{g} = {e} is everything.
  LaxMorphismReport col = check_lax_morphism(z2, z2, {0, 0});
  CHECK(col.lax);
  CHECK_FALSE(col.multiplicative);
  CHECK(col.witness_a == Mask{2});
  CHECK(col.witness_b == Mask{2});
  CHECK(col.witness_product == Mask{0});
  CHECK(col.witness_preimage == Mask{3});

  // The subgroup inclusion of the two-element into the four-element cyclic
  // group is lax and also strict somewhere.
  LaxMorphismReport sub = check_lax_morphism(z2, z4_groupoid(), {0, 2});
  CHECK(sub.lax);
  CHECK_FALSE(sub.multiplicative);
  CHECK(sub.witness_a == Mask{2});
  CHECK(sub.witness_b == Mask{2});

  SECTION("rejections") {
    CHECK(error_of([&] {
            check_lax_morphism(z2, z4_groupoid(), {0, 1});
          }).first == "NotAMorphism");
    CHECK(error_of([&] {
            check_lax_morphism(z2, z2, {1, 0});
          }).first == "NotAMorphism");
    CHECK(error_of([&] {
            check_lax_morphism(z2, z2, {0});
          }).first == "NotAMorphism");
  }
}
