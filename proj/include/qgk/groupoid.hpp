// groupoid.hpp --- finite groupoids, discrete and topological, and the
// bridges to quantales: the powerset quantale of a groupoid, its monoid of
// partial bijections, atom-level recovery of the groupoid, quantales of
// quantal topologies, the groupoid of partial units of an inverse quantal
// frame, the five equivalent etale characterizations, and the lax behaviour
// of preimage maps of groupoid morphisms.
//
// Composition is written diagrammatically: m(x, y) is defined exactly when
// cod(x) = dom(y), and then dom(m(x, y)) = dom(x) and cod(m(x, y)) = cod(y).
// Units are arrows; dom and cod take values in the unit arrows.

#ifndef QGK_GROUPOID_HPP_
#define QGK_GROUPOID_HPP_

#include <algorithm>
#include <array>
#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "qgk/base.hpp"
#include "qgk/invsemi.hpp"
#include "qgk/lattice.hpp"
#include "qgk/quantale.hpp"

namespace qgk {

struct FinGroupoid {
  int n = 0;                  // arrows
  std::vector<int> units;     // ascending arrow indices of the identities
  std::vector<char> is_unit;  // per-arrow membership flag for `units`
  std::vector<int> dom, cod;  // identity arrow at the source / target
  std::vector<int> comp;      // row-major n*n table, -1 where undefined
  std::vector<int> inv;

  int size() const { return n; }
  int d(int x) const { return dom[x]; }
  int r(int x) const { return cod[x]; }
  bool composable(int x, int y) const { return cod[x] == dom[y]; }
  int m(int x, int y) const { return comp[x * n + y]; }
  int i(int x) const { return inv[x]; }

  bool operator==(const FinGroupoid& o) const {
    return n == o.n && units == o.units && dom == o.dom && cod == o.cod &&
           comp == o.comp && inv == o.inv;
  }
};

// Validates the groupoid axioms over explicit tables. Composites are given
// as (x, y, m(x,y)) triples and must be declared for exactly the pairs with
// cod(x) = dom(y). The first broken axiom raises NotAGroupoid (typing),
// UnitFail, CompFail, AssocFail or InversionFail with a concrete witness;
// the two identities that follow from the axioms, an involutive inversion
// table and anti-multiplicativity of inversion, are asserted afterwards.
inline FinGroupoid validate_groupoid(int n, std::vector<int> units,
                                     std::vector<int> dom,
                                     std::vector<int> cod,
                                     const std::vector<std::array<int, 3>>& composites,
                                     std::vector<int> inv) {
  if (n <= 0) fail("NotAGroupoid", "the arrow carrier is empty");
  FinGroupoid g;
  g.n = n;
  std::sort(units.begin(), units.end());
  for (std::size_t i = 0; i + 1 < units.size(); ++i)
    if (units[i] == units[i + 1])
      fail("NotAGroupoid", cat("unit ", units[i], " is listed twice"));
  if (units.empty()) fail("NotAGroupoid", "the unit list is empty");
  g.is_unit.assign(n, 0);
  for (int u : units) {
    if (u < 0 || u >= n)
      fail("NotAGroupoid", cat("unit index ", u, " out of range"));
    g.is_unit[u] = 1;
  }
  g.units = std::move(units);
  if (static_cast<int>(dom.size()) != n || static_cast<int>(cod.size()) != n)
    fail("NotAGroupoid", "dom and cod must assign a unit to every arrow");
  for (int x = 0; x < n; ++x) {
    if (dom[x] < 0 || dom[x] >= n || !g.is_unit[dom[x]])
      fail("NotAGroupoid", cat("dom of arrow ", x, " is not a unit"));
    if (cod[x] < 0 || cod[x] >= n || !g.is_unit[cod[x]])
      fail("NotAGroupoid", cat("cod of arrow ", x, " is not a unit"));
  }
  g.dom = std::move(dom);
  g.cod = std::move(cod);
  if (static_cast<int>(inv.size()) != n)
    fail("NotAGroupoid", "inv must assign an arrow to every arrow");
  for (int x = 0; x < n; ++x)
    if (inv[x] < 0 || inv[x] >= n)
      fail("NotAGroupoid", cat("inv of arrow ", x, " is out of range"));
  g.inv = std::move(inv);

  for (int u : g.units)
    if (g.dom[u] != u || g.cod[u] != u)
      fail("UnitFail", cat("unit ", u, " is not its own dom and cod"));

  g.comp.assign(static_cast<std::size_t>(n) * n, -1);
  for (const auto& t : composites) {
    auto [x, y, z] = t;
    if (x < 0 || x >= n || y < 0 || y >= n || z < 0 || z >= n)
      fail("NotAGroupoid",
           cat("composite entry (", x, ",", y, ",", z, ") is out of range"));
    if (g.comp[x * n + y] >= 0)
      fail("NotAGroupoid", cat("two composites declared for (", x, ",", y, ")"));
    g.comp[x * n + y] = z;
  }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      int z = g.comp[x * n + y];
      if (g.composable(x, y) && z < 0)
        fail("CompFail", cat("the composable pair (", x, ",", y,
                             ") has no declared composite"));
      if (!g.composable(x, y) && z >= 0)
        fail("CompFail", cat("a composite is declared for the non-composable "
                             "pair (", x, ",", y, ")"));
      if (z >= 0 && (g.dom[z] != g.dom[x] || g.cod[z] != g.cod[y]))
        fail("CompFail", cat("the composite of (", x, ",", y,
                             ") breaks dom or cod bookkeeping"));
    }

  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (!g.composable(x, y)) continue;
      for (int z = 0; z < n; ++z) {
        if (!g.composable(y, z)) continue;
        if (g.m(g.m(x, y), z) != g.m(x, g.m(y, z)))
          fail("AssocFail", cat("(", x, ",", y, ",", z, ")"));
      }
    }

  for (int x = 0; x < n; ++x) {
    if (g.m(g.dom[x], x) != x)
      fail("UnitFail", cat("left unit law fails at arrow ", x));
    if (g.m(x, g.cod[x]) != x)
      fail("UnitFail", cat("right unit law fails at arrow ", x));
  }

  for (int x = 0; x < n; ++x) {
    int y = g.inv[x];
    if (!g.composable(x, y) || !g.composable(y, x))
      fail("InversionFail",
           cat("arrow ", x, " does not compose with its declared inverse"));
    if (g.m(x, y) != g.dom[x])
      fail("InversionFail",
           cat("arrow ", x, " times its inverse is not the dom unit"));
    if (g.m(y, x) != g.cod[x])
      fail("InversionFail",
           cat("the inverse of arrow ", x, " times it is not the cod unit"));
  }

  // Inverses in a category are unique, so these follow from the axioms.
  for (int x = 0; x < n; ++x) {
    require(g.inv[g.inv[x]] == x, cat("inversion is not involutive at ", x));
    require(g.dom[g.inv[x]] == g.cod[x] && g.cod[g.inv[x]] == g.dom[x],
            cat("inversion does not swap dom and cod at ", x));
  }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (g.composable(x, y))
        require(g.inv[g.m(x, y)] == g.m(g.inv[y], g.inv[x]),
                cat("inversion is not anti-multiplicative at (", x, ",", y, ")"));
  return g;
}

namespace detail {

// Pointwise operations on arrow subsets, the set-level shadow of the
// groupoid structure maps.
inline Mask pointwise_product(const FinGroupoid& g, Mask u, Mask v) {
  Mask out = 0;
  for (Mask mu = u; mu; mu &= mu - 1) {
    int x = std::countr_zero(mu);
    for (Mask mv = v; mv; mv &= mv - 1) {
      int y = std::countr_zero(mv);
      if (g.composable(x, y)) out |= mask_bit(g.m(x, y));
    }
  }
  return out;
}

inline Mask pointwise_inverse(const FinGroupoid& g, Mask u) {
  Mask out = 0;
  for (; u; u &= u - 1) out |= mask_bit(g.inv[std::countr_zero(u)]);
  return out;
}

inline Mask dom_image(const FinGroupoid& g, Mask u) {
  Mask out = 0;
  for (; u; u &= u - 1) out |= mask_bit(g.dom[std::countr_zero(u)]);
  return out;
}

inline Mask unit_mask(const FinGroupoid& g) {
  Mask out = 0;
  for (int u : g.units) out |= mask_bit(u);
  return out;
}

inline Mask full_mask(const FinGroupoid& g) {
  return g.n == 64 ? ~Mask{0} : mask_bit(g.n) - 1;
}

// True when no two arrows of u share a dom and no two share a cod, so that
// u is a partial bijection between unit sets.
inline bool is_gset(const FinGroupoid& g, Mask u) {
  Mask seen_dom = 0, seen_cod = 0;
  for (; u; u &= u - 1) {
    int x = std::countr_zero(u);
    if (mask_test(seen_dom, g.dom[x]) || mask_test(seen_cod, g.cod[x]))
      return false;
    seen_dom |= mask_bit(g.dom[x]);
    seen_cod |= mask_bit(g.cod[x]);
  }
  return true;
}

}  // namespace detail

inline constexpr int kPowersetCap = 10;

// The quantale of all arrow subsets: joins are unions, multiplication is the
// pointwise composite, the involution is pointwise inversion and the unit is
// the set of identity arrows. Lattice element indices coincide with subset
// masks. The construction is a theorem factory: the result is asserted to be
// an inverse quantal frame whose canonical support is the dom image.
inline FinQuantale powerset_quantale(const FinGroupoid& g,
                                     int cap = kPowersetCap) {
  if (g.n > cap)
    fail("CarrierTooLarge",
         cat("powerset of ", g.n, " arrows exceeds the cap ", cap));
  const int N = 1 << g.n;
  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < N; ++a) {
    int b = a;
    while (true) {
      pairs.emplace_back(a, b);
      if (b == N - 1) break;
      b = (b + 1) | a;
    }
  }
  FinSupLattice lat = build_lattice(N, pairs);

  std::vector<Mask> single(static_cast<std::size_t>(g.n) * g.n, 0);
  for (int x = 0; x < g.n; ++x)
    for (int y = 0; y < g.n; ++y)
      if (g.composable(x, y)) single[x * g.n + y] = mask_bit(g.m(x, y));
  std::vector<int> mult(static_cast<std::size_t>(N) * N, 0);
  std::vector<Mask> step(g.n);
  for (int u = 0; u < N; ++u) {
    for (int y = 0; y < g.n; ++y) {
      Mask acc = 0;
      for (Mask mu = static_cast<Mask>(u); mu; mu &= mu - 1)
        acc |= single[std::countr_zero(mu) * g.n + y];
      step[y] = acc;
    }
    // Peel the lowest bit of the right factor; products distribute over
    // unions, so each row fills in one pass.
    for (int v = 1; v < N; ++v)
      mult[u * N + v] = static_cast<int>(
          static_cast<Mask>(mult[u * N + (v & (v - 1))]) |
          step[std::countr_zero(static_cast<unsigned>(v))]);
  }
  std::vector<int> inv(N, 0);
  for (int u = 1; u < N; ++u)
    inv[u] = static_cast<int>(
        static_cast<Mask>(inv[u & (u - 1)]) |
        mask_bit(g.inv[std::countr_zero(static_cast<unsigned>(u))]));
  const int unit = static_cast<int>(detail::unit_mask(g));

  FinQuantale q = check_quantale_axioms(std::move(lat), std::move(mult),
                                        std::move(inv), unit);
  SupportMap s = candidate_support(q);
  require(s.stable, "the powerset support must be stable");
  for (int u = 0; u < N; ++u) {
    Mask d = detail::dom_image(g, static_cast<Mask>(u));
    require(static_cast<Mask>(s(u)) == d,
            cat("the support of subset ", u, " is not its dom image"));
    require(static_cast<Mask>(q.meet(q.unit, q.times(u, q.star(u)))) == d,
            cat("the unit part of subset ", u,
                " times its inverse is not the dom image"));
  }
  require(check_inverse_quantal_frame(q),
          "the powerset of a groupoid must be an inverse quantal frame");
  return q;
}

// The partial bijections of a groupoid, i.e. the arrow subsets on which both
// dom and cod are injective, as an inverse monoid under pointwise product.
// Built by direct enumeration and then asserted, member by member and entry
// by entry, to be the partial-unit monoid of the powerset quantale.
inline IpiMonoid gsets(const FinGroupoid& g, int cap = kPowersetCap) {
  if (g.n > cap)
    fail("CarrierTooLarge",
         cat("enumerating partial bijections over ", g.n,
             " arrows exceeds the cap ", cap));
  const int N = 1 << g.n;
  IpiMonoid out;
  out.member_index.assign(N, -1);
  for (int u = 0; u < N; ++u)
    if (detail::is_gset(g, static_cast<Mask>(u))) {
      out.member_index[u] = static_cast<int>(out.members.size());
      out.members.push_back(u);
    }
  const int m = static_cast<int>(out.members.size());
  std::vector<int> table(static_cast<std::size_t>(m) * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      Mask p = detail::pointwise_product(g, static_cast<Mask>(out.members[i]),
                                         static_cast<Mask>(out.members[j]));
      int idx = out.member_index[p];
      require(idx >= 0,
              cat("the product of partial bijections ", i, " and ", j,
                  " is not a partial bijection"));
      table[i * m + j] = idx;
    }
  int unit = out.member_index[detail::unit_mask(g)];
  require(unit >= 0, "the unit set is not a partial bijection");
  out.monoid = validate_inverse_semigroup(m, std::move(table), unit);
  for (int i = 0; i < m; ++i) {
    require(out.members[out.monoid.star(i)] ==
                static_cast<int>(detail::pointwise_inverse(
                    g, static_cast<Mask>(out.members[i]))),
            "the monoid inverse is not the pointwise inverse");
    for (int j = 0; j < m; ++j)
      require(out.monoid.leq(i, j) ==
                  ((out.members[i] & ~out.members[j]) == 0),
              "the natural order is not inclusion");
  }

  IpiMonoid viaq = ipi_monoid(powerset_quantale(g, cap));
  require(viaq.members == out.members,
          "partial bijections differ from the powerset partial units");
  require(viaq.monoid.mult == out.monoid.mult &&
              viaq.monoid.inv == out.monoid.inv &&
              viaq.monoid.unit == out.monoid.unit,
          "the partial-bijection monoid differs from the powerset "
          "partial-unit monoid");
  return out;
}

// Rebuilds a groupoid from the atoms of a quantale whose multiplication is
// pointwise at the atom level: every element must be the join of the atoms
// below it, atom products must be zero or atomic, and the unit part of
// a (a*) must be a single atom, which becomes dom(a). Composability is read
// off as "the product is nonzero"; full validation then confirms that this
// matches the unit bookkeeping.
inline FinGroupoid recover_groupoid_from_atoms(const FinQuantale& q) {
  std::vector<int> atoms;
  std::vector<int> atom_index(q.size(), -1);
  for (int x = 0; x < q.size(); ++x) {
    if (x == q.zero()) continue;
    bool minimal = true;
    for (int y = 0; y < q.size() && minimal; ++y)
      if (y != x && y != q.zero() && q.leq(y, x)) minimal = false;
    if (minimal) {
      atom_index[x] = static_cast<int>(atoms.size());
      atoms.push_back(x);
    }
  }
  if (atoms.empty())
    fail("NotAtomicPointwise", "the quantale has no atoms");
  for (int a = 0; a < q.size(); ++a) {
    int acc = q.zero();
    for (int x : atoms)
      if (q.leq(x, a)) acc = q.join(acc, x);
    if (acc != a)
      fail("NotAtomicPointwise",
           cat("element ", a, " is not the join of the atoms below it"));
  }
  const int n = static_cast<int>(atoms.size());
  std::vector<int> dom(n), cod(n), inv(n);
  std::vector<int> units;
  std::vector<std::array<int, 3>> composites;
  for (int i = 0; i < n; ++i) {
    int a = atoms[i];
    if (q.leq(a, q.unit)) units.push_back(i);
    int d = q.meet(q.unit, q.times(a, q.star(a)));
    int r = q.meet(q.unit, q.times(q.star(a), a));
    if (atom_index[d] < 0 || atom_index[r] < 0)
      fail("NotAtomicPointwise",
           cat("the unit part of atom ", i, " times its involute is not an "
               "atom"));
    dom[i] = atom_index[d];
    cod[i] = atom_index[r];
    // The involution permutes atoms because it is an order isomorphism.
    require(atom_index[q.star(a)] >= 0,
            cat("the involute of atom ", i, " is not an atom"));
    inv[i] = atom_index[q.star(a)];
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int p = q.times(atoms[i], atoms[j]);
      if (p == q.zero()) continue;
      if (atom_index[p] < 0)
        fail("NotAtomicPointwise",
             cat("the product of atoms ", i, " and ", j,
                 " is neither zero nor an atom"));
      composites.push_back({i, j, atom_index[p]});
    }
  return validate_groupoid(n, std::move(units), std::move(dom), std::move(cod),
                           composites, std::move(inv));
}

inline constexpr int kGroupoidIsoCap = 12;

namespace detail {

inline bool groupoid_iso_extend(const FinGroupoid& g, const FinGroupoid& h,
                                std::vector<int>& map, std::vector<char>& used,
                                int next) {
  if (next == g.n) return true;
  for (int c = 0; c < h.n; ++c) {
    if (used[c] || g.is_unit[next] != h.is_unit[c]) continue;
    bool ok = true;
    // Check every constraint whose participants are all decided.
    for (int a = 0; a <= next && ok; ++a) {
      int fa = a == next ? c : map[a];
      if (g.dom[a] <= next)
        ok = h.dom[fa] == (g.dom[a] == next ? c : map[g.dom[a]]);
      if (ok && g.cod[a] <= next)
        ok = h.cod[fa] == (g.cod[a] == next ? c : map[g.cod[a]]);
      if (ok && g.inv[a] <= next)
        ok = h.inv[fa] == (g.inv[a] == next ? c : map[g.inv[a]]);
      for (int b = 0; b <= next && ok; ++b) {
        int fb = b == next ? c : map[b];
        if (g.composable(a, b) != h.composable(fa, fb)) {
          ok = false;
          break;
        }
        if (g.composable(a, b) && g.m(a, b) <= next)
          ok = h.m(fa, fb) == (g.m(a, b) == next ? c : map[g.m(a, b)]);
      }
    }
    if (!ok) continue;
    map[next] = c;
    used[c] = 1;
    if (groupoid_iso_extend(g, h, map, used, next + 1)) return true;
    used[c] = 0;
    map[next] = -1;
  }
  return false;
}

}  // namespace detail

// Deterministic backtracking search for an arrow bijection preserving units,
// dom, cod, composition and inversion.
inline std::optional<std::vector<int>> groupoid_isomorphism(
    const FinGroupoid& g, const FinGroupoid& h) {
  if (g.n > kGroupoidIsoCap || h.n > kGroupoidIsoCap)
    fail("CarrierTooLarge",
         cat("isomorphism search capped at ", kGroupoidIsoCap, " arrows"));
  if (g.n != h.n || g.units.size() != h.units.size()) return std::nullopt;
  std::vector<int> map(g.n, -1);
  std::vector<char> used(h.n, 0);
  if (detail::groupoid_iso_extend(g, h, map, used, 0)) return map;
  return std::nullopt;
}

inline bool groupoid_isomorphic(const FinGroupoid& g, const FinGroupoid& h) {
  return groupoid_isomorphism(g, h).has_value();
}

// ---------------------------------------------------------------------------
// Topological groupoids.

struct FinTopGroupoid {
  FinGroupoid g;
  std::vector<Mask> opens;  // ascending by mask value; a finite topology

  bool is_open(Mask u) const {
    return std::binary_search(opens.begin(), opens.end(), u);
  }
  Mask full() const { return detail::full_mask(g); }
  Mask units() const { return detail::unit_mask(g); }
};

// Validates that `opens` is a topology on the arrow set and that all four
// structure maps are continuous: dom and cod against the subspace topology
// on the units, inversion as a self-map, and composition against the
// subspace topology on the composable pairs of the product space. Raises
// NotATopology or NotContinuous with a witness.
inline FinTopGroupoid validate_topgroupoid(FinGroupoid g,
                                           std::vector<Mask> opens) {
  if (g.n > 64)
    fail("CarrierTooLarge",
         cat("topologies are stored as 64-bit masks, got ", g.n, " arrows"));
  FinTopGroupoid tg;
  const Mask full = detail::full_mask(g);
  std::sort(opens.begin(), opens.end());
  opens.erase(std::unique(opens.begin(), opens.end()), opens.end());
  for (Mask u : opens)
    if (u & ~full)
      fail("NotATopology", "an open set mentions arrows outside the carrier");
  auto member = [&](Mask u) {
    return std::binary_search(opens.begin(), opens.end(), u);
  };
  if (!member(0)) fail("NotATopology", "the empty set is not open");
  if (!member(full)) fail("NotATopology", "the full arrow set is not open");
  const int t = static_cast<int>(opens.size());
  for (int i = 0; i < t; ++i)
    for (int j = i + 1; j < t; ++j) {
      if (!member(opens[i] | opens[j]))
        fail("NotATopology",
             cat("the union of opens ", i, " and ", j, " is not open"));
      if (!member(opens[i] & opens[j]))
        fail("NotATopology",
             cat("the intersection of opens ", i, " and ", j, " is not open"));
    }

  for (int k = 0; k < t; ++k) {
    Mask pre_d = 0, pre_r = 0;
    for (int x = 0; x < g.n; ++x) {
      if (mask_test(opens[k], g.dom[x])) pre_d |= mask_bit(x);
      if (mask_test(opens[k], g.cod[x])) pre_r |= mask_bit(x);
    }
    if (!member(pre_d))
      fail("NotContinuous",
           cat("the dom map pulls open ", k, " back to a non-open set"));
    if (!member(pre_r))
      fail("NotContinuous",
           cat("the cod map pulls open ", k, " back to a non-open set"));
    if (!member(detail::pointwise_inverse(g, opens[k])))
      fail("NotContinuous",
           cat("inversion pulls open ", k, " back to a non-open set"));
  }

  // Composition is continuous iff every composable pair landing in an open
  // set has a box neighborhood A x B whose composable part stays inside.
  for (int k = 0; k < t; ++k) {
    for (int x = 0; x < g.n; ++x)
      for (int y = 0; y < g.n; ++y) {
        if (!g.composable(x, y) || !mask_test(opens[k], g.m(x, y))) continue;
        bool found = false;
        for (int ai = 0; ai < t && !found; ++ai) {
          if (!mask_test(opens[ai], x)) continue;
          for (int bi = 0; bi < t && !found; ++bi) {
            if (!mask_test(opens[bi], y)) continue;
            bool inside = true;
            for (Mask ma = opens[ai]; ma && inside; ma &= ma - 1) {
              int a = std::countr_zero(ma);
              for (Mask mb = opens[bi]; mb && inside; mb &= mb - 1) {
                int b = std::countr_zero(mb);
                if (g.composable(a, b) &&
                    !mask_test(opens[k], g.m(a, b)))
                  inside = false;
              }
            }
            found = inside;
          }
        }
        if (!found)
          fail("NotContinuous",
               cat("composition is discontinuous at the pair (", x, ",", y,
                   ") for open ", k));
      }
  }
  tg.g = std::move(g);
  tg.opens = std::move(opens);
  return tg;
}

struct EtaleReport {
  bool units_open = false;      // the unit set is a member of the topology
  bool dom_open = false;        // units open and dom an open map
  bool local_homeo = false;     // dom restricts to homeomorphisms on a cover
  bool product_closed = false;  // units open, pointwise products of opens open
  bool ug_open = false;         // units open, U(full set) open for every U
  bool uui_open = false;        // units open, U(inverse of U) open for every U
  bool etale = false;           // the common verdict of the five conditions
  std::vector<Mask> gset_cover;   // the open partial-bijection sets
  bool frobenius = false;         // dom(U and dom-preimage V) = dom(U) and V
};

// Evaluates the five equivalent descriptions of an etale groupoid
// independently: units open with dom an open map; dom a local
// homeomorphism; units open with opens closed under pointwise products;
// units open with U(full) open for every open U; units open with U(inverse
// of U) open for every open U. A mixed verdict raises EquivalenceBroken.
// When the units are open, the open partial-bijection sets are asserted to
// cover the arrow space, and the set-level Frobenius identity for dom is
// checked over all opens.
inline EtaleReport check_etale_conditions(const FinTopGroupoid& tg) {
  const FinGroupoid& g = tg.g;
  const int t = static_cast<int>(tg.opens.size());
  const Mask u0 = tg.units();
  const Mask full = tg.full();
  EtaleReport rep;
  rep.units_open = tg.is_open(u0);

  // Opens of the unit subspace, and of image subspaces within it.
  std::unordered_set<Mask> unit_opens;
  for (Mask o : tg.opens) unit_opens.insert(o & u0);

  bool dom_open = true;
  for (Mask o : tg.opens)
    if (!unit_opens.count(detail::dom_image(g, o))) {
      dom_open = false;
      break;
    }
  rep.dom_open = rep.units_open && dom_open;

  for (Mask o : tg.opens)
    if (detail::is_gset(g, o) &&
        (detail::pointwise_product(g, o, detail::pointwise_inverse(g, o)) |
         u0) == u0 &&
        (detail::pointwise_product(g, detail::pointwise_inverse(g, o), o) |
         u0) == u0)
      rep.gset_cover.push_back(o);

  // A patch is an open set on which dom is injective, with open image, and
  // open as a map onto that image in the subspace topologies.
  auto patch_ok = [&](Mask u) {
    Mask seen = 0;
    for (Mask mu = u; mu; mu &= mu - 1) {
      int x = std::countr_zero(mu);
      if (mask_test(seen, g.dom[x])) return false;
      seen |= mask_bit(g.dom[x]);
    }
    Mask du = detail::dom_image(g, u);
    if (!unit_opens.count(du)) return false;
    std::unordered_set<Mask> rel;
    for (Mask o : tg.opens) rel.insert(o & du);
    for (Mask o : tg.opens)
      if (!rel.count(detail::dom_image(g, o & u))) return false;
    return true;
  };
  Mask covered = 0;
  // The open partial-bijection sets are the natural patches, so they are
  // tried first; any open set may serve.
  for (Mask o : rep.gset_cover) {
    if (covered == full) break;
    if ((o & ~covered) && patch_ok(o)) covered |= o;
  }
  for (Mask o : tg.opens) {
    if (covered == full) break;
    if ((o & ~covered) && patch_ok(o)) covered |= o;
  }
  rep.local_homeo = covered == full;

  bool closed = true;
  for (int i = 0; i < t && closed; ++i)
    for (int j = 0; j < t && closed; ++j)
      closed = tg.is_open(detail::pointwise_product(g, tg.opens[i], tg.opens[j]));
  rep.product_closed = rep.units_open && closed;

  bool ug = true, uui = true;
  for (Mask o : tg.opens) {
    if (!tg.is_open(detail::pointwise_product(g, o, full))) ug = false;
    if (!tg.is_open(
            detail::pointwise_product(g, o, detail::pointwise_inverse(g, o))))
      uui = false;
  }
  rep.ug_open = rep.units_open && ug;
  rep.uui_open = rep.units_open && uui;

  if (rep.dom_open != rep.local_homeo || rep.dom_open != rep.product_closed ||
      rep.dom_open != rep.ug_open || rep.dom_open != rep.uui_open)
    fail("EquivalenceBroken",
         cat("the five etale conditions disagree: ", rep.dom_open, " ",
             rep.local_homeo, " ", rep.product_closed, " ", rep.ug_open, " ",
             rep.uui_open));
  rep.etale = rep.dom_open;

  if (rep.units_open) {
    Mask acc = 0;
    for (Mask o : rep.gset_cover) acc |= o;
    require(acc == full,
            "with open units the open partial-bijection sets must cover");
  }

  rep.frobenius = true;
  for (Mask o : tg.opens)
    for (Mask vo : unit_opens) {
      Mask pre = 0;
      for (int x = 0; x < g.n; ++x)
        if (mask_test(vo, g.dom[x])) pre |= mask_bit(x);
      if (detail::dom_image(g, o & pre) != (detail::dom_image(g, o) & vo))
        rep.frobenius = false;
    }
  require(rep.frobenius, "the set-level Frobenius identity for dom failed");
  return rep;
}

// The quantale of a quantal topology: opens ordered by inclusion with the
// pointwise product, the unit set as multiplicative unit and pointwise
// inversion as involution. The unit set must be open and the opens closed
// under products; the result is asserted to be an inverse quantal frame.
// Lattice element i corresponds to tg.opens[i].
inline FinQuantale topology_quantale(const FinTopGroupoid& tg) {
  const FinGroupoid& g = tg.g;
  const Mask u0 = tg.units();
  if (!tg.is_open(u0))
    fail("NotQuantalTopology", "the unit set is not open");
  const int t = static_cast<int>(tg.opens.size());
  std::unordered_map<Mask, int> index;
  for (int i = 0; i < t; ++i) index[tg.opens[i]] = i;
  std::vector<int> mult(static_cast<std::size_t>(t) * t);
  for (int i = 0; i < t; ++i)
    for (int j = 0; j < t; ++j) {
      auto it = index.find(
          detail::pointwise_product(g, tg.opens[i], tg.opens[j]));
      if (it == index.end())
        fail("NotQuantalTopology",
             cat("the pointwise product of opens ", i, " and ", j,
                 " is not open"));
      mult[i * t + j] = it->second;
    }
  std::vector<int> inv(t);
  for (int i = 0; i < t; ++i) {
    auto it = index.find(detail::pointwise_inverse(g, tg.opens[i]));
    if (it == index.end())
      fail("NotQuantalTopology",
           cat("the pointwise inverse of open ", i, " is not open"));
    inv[i] = it->second;
  }
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < t; ++i)
    for (int j = 0; j < t; ++j)
      if ((tg.opens[i] & ~tg.opens[j]) == 0) pairs.emplace_back(i, j);
  FinQuantale q = check_quantale_axioms(build_lattice(t, pairs),
                                        std::move(mult), std::move(inv),
                                        index.at(u0));
  require(check_inverse_quantal_frame(q),
          "a quantal topology must form an inverse quantal frame");
  return q;
}

// The topological groupoid of an inverse quantal frame: arrows are the
// partial units, dom and cod are s s* and s* s, composition is the quantale
// product on matching units, and the topology is every downward closed set
// of arrows. Postconditions assert the etale conditions and that pointwise
// products of opens agree with the downset-quantale products.
inline FinTopGroupoid groupoid_of_quantale(
    const FinQuantale& q, std::size_t cap = kDefaultDownsetCap) {
  if (!check_inverse_quantal_frame(q))
    fail("NotIQF",
         "only an inverse quantal frame has a groupoid of partial units");
  IpiMonoid pu = ipi_monoid(q);
  const FinInverseSemigroup& s = pu.monoid;
  std::vector<int> units, dom(s.n), cod(s.n), inv(s.n);
  std::vector<std::array<int, 3>> composites;
  for (int x = 0; x < s.n; ++x) {
    if (s.is_idempotent(x)) units.push_back(x);
    dom[x] = s.times(x, s.star(x));
    cod[x] = s.times(s.star(x), x);
    inv[x] = s.star(x);
  }
  for (int x = 0; x < s.n; ++x)
    for (int y = 0; y < s.n; ++y)
      if (cod[x] == dom[y]) composites.push_back({x, y, s.times(x, y)});
  FinGroupoid g = validate_groupoid(s.n, std::move(units), std::move(dom),
                                    std::move(cod), composites,
                                    std::move(inv));

  DownsetQuantale dq = downset_quantale(s, cap);
  FinTopGroupoid tg = validate_topgroupoid(std::move(g), dq.sets);
  const int t = static_cast<int>(tg.opens.size());
  for (int i = 0; i < t; ++i)
    for (int j = 0; j < t; ++j)
      require(detail::pointwise_product(tg.g, tg.opens[i], tg.opens[j]) ==
                  dq.sets[dq.quantale.times(i, j)],
              cat("the pointwise product of opens ", i, " and ", j,
                  " differs from the downset product"));
  require(check_etale_conditions(tg).etale,
          "the groupoid of an inverse quantal frame must be etale");
  return tg;
}

struct LaxMorphismReport {
  bool lax = false;            // h*(A) h*(B) within h*(AB) for all pairs
  bool multiplicative = false; // equality for all pairs
  Mask witness_a = 0, witness_b = 0;  // first pair breaking equality
  Mask witness_product = 0;    // h*(A) h*(B) at the witness
  Mask witness_preimage = 0;   // h*(AB) at the witness
};

// Validates an arrow map as a groupoid morphism (units to units, commuting
// with dom and cod, preserving composites; preservation of inverses then
// follows) and measures its preimage map on the powerset quantales: the lax
// containment h*(A) h*(B) within h*(AB) must hold for every pair of subsets,
// while equality can fail; the first failing pair is reported.
inline LaxMorphismReport check_lax_morphism(const FinGroupoid& src,
                                            const FinGroupoid& dst,
                                            const std::vector<int>& f) {
  if (static_cast<int>(f.size()) != src.n)
    fail("NotAMorphism", "the arrow map must cover every arrow");
  for (int x = 0; x < src.n; ++x)
    if (f[x] < 0 || f[x] >= dst.n)
      fail("NotAMorphism", cat("arrow ", x, " is sent out of range"));
  for (int u : src.units)
    if (!dst.is_unit[f[u]])
      fail("NotAMorphism", cat("unit ", u, " is not sent to a unit"));
  for (int x = 0; x < src.n; ++x) {
    if (f[src.dom[x]] != dst.dom[f[x]])
      fail("NotAMorphism",
           cat("the map does not commute with dom at arrow ", x));
    if (f[src.cod[x]] != dst.cod[f[x]])
      fail("NotAMorphism",
           cat("the map does not commute with cod at arrow ", x));
  }
  for (int x = 0; x < src.n; ++x)
    for (int y = 0; y < src.n; ++y)
      if (src.composable(x, y) &&
          f[src.m(x, y)] != dst.m(f[x], f[y]))
        fail("NotAMorphism",
             cat("the composite of (", x, ",", y, ") is not preserved"));
  for (int x = 0; x < src.n; ++x)
    require(f[src.inv[x]] == dst.inv[f[x]],
            cat("a morphism must preserve the inverse of arrow ", x));

  if (dst.n > kPowersetCap)
    fail("CarrierTooLarge",
         cat("the preimage scan enumerates subsets of ", dst.n,
             " arrows, cap is ", kPowersetCap));
  const int N = 1 << dst.n;
  std::vector<Mask> fiber(dst.n, 0);
  for (int x = 0; x < src.n; ++x) fiber[f[x]] |= mask_bit(x);
  std::vector<Mask> pre(N, 0);
  for (int a = 1; a < N; ++a)
    pre[a] = pre[a & (a - 1)] |
             fiber[std::countr_zero(static_cast<unsigned>(a))];

  // Destination products of singletons, extended to subsets by peeling bits.
  std::vector<Mask> atom_step(static_cast<std::size_t>(N) * dst.n, 0);
  for (int a = 0; a < N; ++a)
    for (int y = 0; y < dst.n; ++y) {
      Mask acc = 0;
      for (Mask ma = static_cast<Mask>(a); ma; ma &= ma - 1) {
        int x = std::countr_zero(ma);
        if (dst.composable(x, y)) acc |= mask_bit(dst.m(x, y));
      }
      atom_step[static_cast<std::size_t>(a) * dst.n + y] = acc;
    }
  LaxMorphismReport rep;
  rep.lax = true;
  rep.multiplicative = true;
  for (int a = 0; a < N; ++a) {
    for (int b = 0; b < N; ++b) {
      Mask ab = 0;
      for (Mask mb = static_cast<Mask>(b); mb; mb &= mb - 1)
        ab |= atom_step[static_cast<std::size_t>(a) * dst.n +
                        std::countr_zero(mb)];
      Mask lhs = detail::pointwise_product(src, pre[a], pre[b]);
      Mask rhs = pre[ab];
      if (lhs & ~rhs) rep.lax = false;
      if (lhs != rhs && rep.multiplicative) {
        rep.multiplicative = false;
        rep.witness_a = static_cast<Mask>(a);
        rep.witness_b = static_cast<Mask>(b);
        rep.witness_product = lhs;
        rep.witness_preimage = rhs;
      }
    }
  }
  require(rep.lax,
          "the preimage map of a groupoid morphism must be lax "
          "multiplicative");
  return rep;
}

}  // namespace qgk

#endif  // QGK_GROUPOID_HPP_
