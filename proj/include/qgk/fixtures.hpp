// fixtures.hpp --- hand-written structures used as independent oracles.
//
// Every table here is spelled out literally (or assembled by an elementary
// rule stated next to it) so the tests can compare machinery output against
// data that never went through that machinery. The quantale fixtures cover
// each strict inclusion in the hierarchy: supported but not stably, stable
// quantal frame but not multiplicative, multiplicative but not inverse,
// inverse quantale but not a frame, and inverse quantal frames.

#ifndef QGK_FIXTURES_HPP_
#define QGK_FIXTURES_HPP_

#include <array>
#include <utility>
#include <vector>

#include "qgk/base.hpp"
#include "qgk/groupoid.hpp"
#include "qgk/lattice.hpp"
#include "qgk/quantale.hpp"

namespace qgk {

// Reflexive-transitive completion of a cover/generator list, for writing
// fixtures by their Hasse diagrams. The result still goes through full order
// validation downstream.
inline std::vector<std::pair<int, int>> order_closure(
    int n, const std::vector<std::pair<int, int>>& gens) {
  std::vector<std::vector<char>> leq(n, std::vector<char>(n, 0));
  for (int i = 0; i < n; ++i) leq[i][i] = 1;
  for (auto [a, b] : gens) leq[a][b] = 1;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (leq[i][k] && leq[k][j]) leq[i][j] = 1;
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (leq[i][j]) out.emplace_back(i, j);
  return out;
}

inline FinSupLattice chain_lattice(int n) {
  std::vector<std::pair<int, int>> covers;
  for (int i = 0; i + 1 < n; ++i) covers.emplace_back(i, i + 1);
  return build_lattice(n, order_closure(n, covers));
}

inline FinSupLattice boolean_lattice(int k) {
  const int n = 1 << k;
  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if ((a & ~b) == 0) pairs.emplace_back(a, b);
  return build_lattice(n, pairs);
}

// Three incomparable atoms between bottom and top; the smallest modular
// non-distributive lattice.
inline FinSupLattice diamond_lattice() {
  return build_lattice(5, order_closure(5, {{0, 1}, {0, 2}, {0, 3},
                                            {1, 4}, {2, 4}, {3, 4}}));
}

// 0 < x < z < top alongside an incomparable y; the smallest non-modular
// lattice. Indices: 0 bottom, 1 x, 2 z, 3 y, 4 top.
inline FinSupLattice pentagon_lattice() {
  return build_lattice(5, order_closure(5, {{0, 1}, {1, 2}, {2, 4},
                                            {0, 3}, {3, 4}}));
}

// Four-chain 0 < a < e < 1 with a*a = a and a*1 = 1. Its unique support
// sends 1 to e yet s(a1) = e is not below s(a) = a, so the support is not
// stable.
inline FinQuantale unstable_support_chain_quantale() {
  FinSupLattice lat = chain_lattice(4);
  // Indices: 0 bottom, 1 a, 2 e (unit), 3 top.
  std::vector<int> mult = {
      0, 0, 0, 0,
      0, 1, 1, 3,
      0, 1, 2, 3,
      0, 3, 3, 3,
  };
  std::vector<int> inv = {0, 1, 2, 3};
  return check_quantale_axioms(std::move(lat), std::move(mult), std::move(inv), 2);
}

// Powerset of a two-point set {u, v} with uu = u (the unit atom) and
// vv = {u, v}, extended to unions. A stable quantal frame that is not
// multiplicative and not inverse.
inline FinQuantale fuzzy_powerset_quantale() {
  FinSupLattice lat = boolean_lattice(2);
  // Indices are subsets as bitmasks: 0 = {}, 1 = {u}, 2 = {v}, 3 = {u,v}.
  std::vector<int> mult = {
      0, 0, 0, 0,
      0, 1, 2, 3,
      0, 2, 3, 3,
      0, 3, 3, 3,
  };
  std::vector<int> inv = {0, 1, 2, 3};
  return check_quantale_axioms(std::move(lat), std::move(mult), std::move(inv), 1);
}

// Down-closed subsets of the two-element idempotent ordered monoid 1 <= x
// with xx = x: the chain 0 < e < 1 with 1*1 = 1. Multiplicative but not an
// inverse quantale (its partial units join to e, not to the top).
inline FinQuantale idempotent_chain_quantale() {
  FinSupLattice lat = chain_lattice(3);
  std::vector<int> mult = {
      0, 0, 0,
      0, 1, 2,
      0, 2, 2,
  };
  std::vector<int> inv = {0, 1, 2};
  return check_quantale_axioms(std::move(lat), std::move(mult), std::move(inv), 1);
}

// Five elements 0 < aa < e < top next to an incomparable a with a^3 = a and
// a*top = top. Every element is a join of partial units and b <= bb*b
// throughout, yet no support exists at all: the only assignment allowed by
// the axioms breaks the join of a and aa.
inline FinQuantale no_support_pentagon_quantale() {
  FinSupLattice lat = pentagon_lattice();
  // Indices: 0 bottom, 1 aa, 2 e (unit), 3 a, 4 top.
  std::vector<int> mult = {
      0, 0, 0, 0, 0,
      0, 1, 1, 3, 4,
      0, 1, 2, 3, 4,
      0, 3, 3, 1, 4,
      0, 4, 4, 4, 4,
  };
  std::vector<int> inv = {0, 1, 2, 3, 4};
  return check_quantale_axioms(std::move(lat), std::move(mult), std::move(inv), 2);
}

// The five-element inverse monoid generated by a period-2 symmetry s and a
// subidentity f that restricts it, with zero. Indices: 0 zero, 1 f, 2 t = fs,
// 3 e (identity), 4 s. All elements are self-inverse; idempotents are
// {0, f, e}.
struct SemigroupTable {
  int n = 0;
  std::vector<int> mult;  // row-major
  int times(int a, int b) const { return mult[a * n + b]; }
};

inline SemigroupTable five_element_inverse_monoid() {
  SemigroupTable s;
  s.n = 5;
  s.mult = {
      0, 0, 0, 0, 0,
      0, 1, 2, 1, 2,
      0, 2, 1, 2, 1,
      0, 1, 2, 3, 4,
      0, 2, 1, 4, 3,
  };
  return s;
}

// The nine compatibly-closed downsets of the five-element inverse monoid
// above, as a literal multiplication table. Indices: 0 {0}, 1 f, 2 t, 3 e,
// 4 a = f v t, 5 s' = t v s, 6 b = e v a, 7 c = a v s', 8 top. The table is
// commutative; the involution is trivial; the unit is e.
inline FinQuantale nine_ideal_quantale_golden() {
  const std::vector<Mask> sets = {
      0b00001, 0b00011, 0b00101, 0b01011, 0b00111,
      0b10101, 0b01111, 0b10111, 0b11111,
  };
  const int n = 9;
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      if ((sets[i] & ~sets[k]) == 0) pairs.emplace_back(i, k);
  FinSupLattice lat = build_lattice(n, pairs);
  std::vector<int> mult = {
      0, 0, 0, 0, 0, 0, 0, 0, 0,
      0, 1, 2, 1, 4, 2, 4, 4, 4,
      0, 2, 1, 2, 4, 1, 4, 4, 4,
      0, 1, 2, 3, 4, 5, 6, 7, 8,
      0, 4, 4, 4, 4, 4, 4, 4, 4,
      0, 2, 1, 5, 4, 3, 7, 6, 8,
      0, 4, 4, 6, 4, 7, 6, 7, 8,
      0, 4, 4, 7, 4, 6, 7, 6, 8,
      0, 4, 4, 8, 4, 8, 8, 8, 8,
  };
  std::vector<int> inv = {0, 1, 2, 3, 4, 5, 6, 7, 8};
  return check_quantale_axioms(std::move(lat), std::move(mult), std::move(inv), 3);
}

inline const std::vector<Mask>& nine_ideal_golden_sets() {
  static const std::vector<Mask> sets = {
      0b00001, 0b00011, 0b00101, 0b01011, 0b00111,
      0b10101, 0b01111, 0b10111, 0b11111,
  };
  return sets;
}

// Collapsing the three elements above b = e v a yields a seven-element
// inverse quantale whose lattice is not distributive.
inline QuantaleQuotient seven_element_quotient() {
  FinQuantale nine = nine_ideal_quantale_golden();
  return quantale_quotient(nine, {{0}, {1}, {2}, {3}, {4}, {5}, {6, 7, 8}});
}

// Powerset of a finite group under pointwise product and inverse; the unit
// is the singleton of the group identity. An inverse quantal frame.
inline FinQuantale group_powerset_quantale(const SemigroupTable& group,
                                           const std::vector<int>& ginv) {
  const int g = group.n;
  require(g >= 1 && g <= 10, "group powerset fixture limited to 10 elements");
  int id = -1;
  for (int e = 0; e < g && id < 0; ++e) {
    bool unit = true;
    for (int x = 0; x < g; ++x)
      if (group.times(e, x) != x || group.times(x, e) != x) unit = false;
    if (unit) id = e;
  }
  require(id >= 0, "group table has no identity");
  for (int x = 0; x < g; ++x)
    require(group.times(x, ginv[x]) == id && group.times(ginv[x], x) == id,
            cat("inverse table wrong at ", x));
  const int n = 1 << g;
  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if ((a & ~b) == 0) pairs.emplace_back(a, b);
  FinSupLattice lat = build_lattice(n, pairs);
  std::vector<int> mult(static_cast<std::size_t>(n) * n, 0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      int prod = 0;
      for (int x = 0; x < g; ++x)
        if (a >> x & 1)
          for (int y = 0; y < g; ++y)
            if (b >> y & 1) prod |= 1 << group.times(x, y);
      mult[a * n + b] = prod;
    }
  std::vector<int> inv(n, 0);
  for (int a = 0; a < n; ++a) {
    int image = 0;
    for (int x = 0; x < g; ++x)
      if (a >> x & 1) image |= 1 << ginv[x];
    inv[a] = image;
  }
  return check_quantale_axioms(std::move(lat), std::move(mult), std::move(inv),
                               1 << id);
}

inline FinQuantale z2_powerset_quantale() {
  SemigroupTable z2;
  z2.n = 2;
  z2.mult = {0, 1, 1, 0};
  return group_powerset_quantale(z2, {0, 1});
}

inline FinQuantale z3_powerset_quantale() {
  SemigroupTable z3;
  z3.n = 3;
  z3.mult = {0, 1, 2, 1, 2, 0, 2, 0, 1};
  return group_powerset_quantale(z3, {0, 2, 1});
}

// ---------------------------------------------------------------------------
// Groupoid fixtures. All of them go through full validation, so a broken
// table here cannot silently seed a test.

inline SemigroupTable cyclic_group_table(int k) {
  SemigroupTable t;
  t.n = k;
  t.mult.resize(static_cast<std::size_t>(k) * k);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) t.mult[a * k + b] = (a + b) % k;
  return t;
}

inline SemigroupTable klein_group_table() {
  // Elements 1, a, b, ab with every non-identity element of order two.
  SemigroupTable t;
  t.n = 4;
  t.mult = {0, 1, 2, 3, 1, 0, 3, 2, 2, 3, 0, 1, 3, 2, 1, 0};
  return t;
}

// One-object groupoid from a group table: the identity is the unit arrow
// and every pair of arrows composes.
inline FinGroupoid group_groupoid(const SemigroupTable& group) {
  const int n = group.n;
  int id = -1;
  for (int e = 0; e < n && id < 0; ++e) {
    bool unit = true;
    for (int x = 0; x < n; ++x)
      if (group.times(e, x) != x || group.times(x, e) != x) unit = false;
    if (unit) id = e;
  }
  require(id >= 0, "group table has no identity");
  std::vector<int> inv(n, -1);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (group.times(x, y) == id && group.times(y, x) == id) inv[x] = y;
  for (int x = 0; x < n; ++x)
    require(inv[x] >= 0, cat("group table has no inverse for ", x));
  std::vector<std::array<int, 3>> comp;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) comp.push_back({x, y, group.times(x, y)});
  return validate_groupoid(n, {id}, std::vector<int>(n, id),
                           std::vector<int>(n, id), comp, std::move(inv));
}

inline FinGroupoid z2_groupoid() { return group_groupoid(cyclic_group_table(2)); }
inline FinGroupoid z3_groupoid() { return group_groupoid(cyclic_group_table(3)); }
inline FinGroupoid z4_groupoid() { return group_groupoid(cyclic_group_table(4)); }
inline FinGroupoid klein_groupoid() { return group_groupoid(klein_group_table()); }

// Pair groupoid on k objects: one arrow (i, j) from object i to object j,
// stored at index i*k + j, with (i, j)(j, l) = (i, l).
inline FinGroupoid pair_groupoid(int k) {
  const int n = k * k;
  std::vector<int> units, dom(n), cod(n), inv(n);
  for (int i = 0; i < k; ++i) units.push_back(i * k + i);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      dom[i * k + j] = i * k + i;
      cod[i * k + j] = j * k + j;
      inv[i * k + j] = j * k + i;
    }
  std::vector<std::array<int, 3>> comp;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      for (int l = 0; l < k; ++l)
        comp.push_back({i * k + j, j * k + l, i * k + l});
  return validate_groupoid(n, std::move(units), std::move(dom), std::move(cod),
                           comp, std::move(inv));
}

// Discrete groupoid: k objects and only their identity arrows.
inline FinGroupoid discrete_groupoid(int k) {
  std::vector<int> units(k), idx(k);
  for (int i = 0; i < k; ++i) units[i] = idx[i] = i;
  std::vector<std::array<int, 3>> comp;
  for (int i = 0; i < k; ++i) comp.push_back({i, i, i});
  return validate_groupoid(k, std::move(units), idx, idx, comp, idx);
}

// Disjoint union, with the arrows of `b` relabeled after those of `a`.
inline FinGroupoid disjoint_union_groupoid(const FinGroupoid& a,
                                           const FinGroupoid& b) {
  const int n = a.n + b.n;
  std::vector<int> units, dom(n), cod(n), inv(n);
  for (int u : a.units) units.push_back(u);
  for (int u : b.units) units.push_back(a.n + u);
  for (int x = 0; x < a.n; ++x) {
    dom[x] = a.dom[x];
    cod[x] = a.cod[x];
    inv[x] = a.inv[x];
  }
  for (int x = 0; x < b.n; ++x) {
    dom[a.n + x] = a.n + b.dom[x];
    cod[a.n + x] = a.n + b.cod[x];
    inv[a.n + x] = a.n + b.inv[x];
  }
  std::vector<std::array<int, 3>> comp;
  for (int x = 0; x < a.n; ++x)
    for (int y = 0; y < a.n; ++y)
      if (a.composable(x, y)) comp.push_back({x, y, a.m(x, y)});
  for (int x = 0; x < b.n; ++x)
    for (int y = 0; y < b.n; ++y)
      if (b.composable(x, y))
        comp.push_back({a.n + x, a.n + y, a.n + b.m(x, y)});
  return validate_groupoid(n, std::move(units), std::move(dom), std::move(cod),
                           comp, std::move(inv));
}

// The full powerset topology.
inline std::vector<Mask> discrete_topology(const FinGroupoid& g) {
  std::vector<Mask> opens;
  for (Mask u = 0; u < (Mask{1} << g.n); ++u) opens.push_back(u);
  return opens;
}

}  // namespace qgk

#endif  // QGK_FIXTURES_HPP_
