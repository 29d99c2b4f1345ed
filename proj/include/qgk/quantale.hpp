// quantale.hpp --- finite unital involutive quantales and their support theory.
//
// A FinQuantale couples a FinSupLattice with a multiplication table, an
// involution and a unit element. Everything downstream of the axiom check is
// exhaustive quantification at desk scale: supports and their stability
// conditions, partial units, the inverse-quantale tests, quantal frames, the
// inversion laws, quotients by congruences and homomorphism verdicts.
//
// Axiom checking exploits join-density of the join-irreducible elements: once
// bilinearity of the multiplication is established, associativity and the
// antihomomorphism law only need checking on irreducibles. Bilinearity itself
// is checked through the irreducible decomposition only when the underlying
// lattice is distributive; on non-distributive lattices that shortcut is
// unsound (a map can agree with its irreducible decomposition without
// preserving joins) and the direct cubic scan is used instead.

#ifndef QGK_QUANTALE_HPP_
#define QGK_QUANTALE_HPP_

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qgk/base.hpp"
#include "qgk/lattice.hpp"

namespace qgk {

struct FinQuantale {
  FinSupLattice lat;
  std::vector<int> mult;  // row-major n*n table
  std::vector<int> inv;
  int unit = 0;

  int size() const { return lat.size(); }
  int times(int a, int b) const { return mult[a * lat.size() + b]; }
  int star(int a) const { return inv[a]; }
  bool leq(int a, int b) const { return lat.leq(a, b); }
  int join(int a, int b) const { return lat.join(a, b); }
  int meet(int a, int b) const { return lat.meet(a, b); }
  int zero() const { return lat.bottom(); }
  int top() const { return lat.top(); }

  bool operator==(const FinQuantale& o) const {
    return lat == o.lat && mult == o.mult && inv == o.inv && unit == o.unit;
  }
};

namespace detail {

// Elements below x restricted to join-irreducibles, precomputed per element.
inline std::vector<std::vector<int>> irreducibles_below(const FinSupLattice& L) {
  std::vector<std::vector<int>> below(L.size());
  for (int x = 0; x < L.size(); ++x)
    for (int j : L.irreducibles())
      if (L.leq(j, x)) below[x].push_back(j);
  return below;
}

}  // namespace detail

// Validates the quantale laws over an already-validated lattice and returns
// the assembled structure. The first violated law raises AssocFail, UnitFail,
// JoinDistFail or InvolutionFail with a witness.
inline FinQuantale check_quantale_axioms(FinSupLattice lat,
                                         std::vector<int> mult,
                                         std::vector<int> inv, int unit) {
  const int n = lat.size();
  if (static_cast<int>(mult.size()) != n * n)
    fail("JoinDistFail", cat("multiplication table has ", mult.size(),
                             " entries, expected ", n * n));
  if (static_cast<int>(inv.size()) != n)
    fail("InvolutionFail", cat("involution has ", inv.size(),
                               " entries, expected ", n));
  if (unit < 0 || unit >= n) fail("UnitFail", cat("unit index ", unit, " out of range"));
  for (int v : mult)
    if (v < 0 || v >= n) fail("JoinDistFail", cat("table entry ", v, " out of range"));
  for (int v : inv)
    if (v < 0 || v >= n) fail("InvolutionFail", cat("entry ", v, " out of range"));

  auto at = [&](int a, int b) { return mult[a * n + b]; };

  for (int a = 0; a < n; ++a) {
    if (at(unit, a) != a)
      fail("UnitFail", cat("e·", a, " = ", at(unit, a), " instead of ", a));
    if (at(a, unit) != a)
      fail("UnitFail", cat(a, "·e = ", at(a, unit), " instead of ", a));
  }

  for (int a = 0; a < n; ++a)
    if (inv[inv[a]] != a)
      fail("InvolutionFail", cat("not an involution at ", a, ": a** = ", inv[inv[a]]));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (lat.leq(a, b) && !lat.leq(inv[a], inv[b]))
        fail("InvolutionFail", cat("not monotone on pair (", a, ",", b, ")"));

  // Join preservation in each slot. With a distributive lattice it suffices
  // that every product agrees with its expansion over the irreducibles below
  // the varying argument; primality of irreducibles then turns any binary
  // join into a matching index set on both sides. Without distributivity
  // that inference is invalid, so the quadratic-per-element scan runs instead.
  const int bot = lat.bottom();
  const bool distributive = check_frame(lat).is_frame;
  auto report_binary_witness = [&](bool left_slot) {
    for (int a = 0; a < n; ++a) {
      if (left_slot && at(a, bot) != bot)
        fail("JoinDistFail", cat(a, "·0 = ", at(a, bot), " instead of 0"));
      if (!left_slot && at(bot, a) != bot)
        fail("JoinDistFail", cat("0·", a, " = ", at(bot, a), " instead of 0"));
    }
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = b + 1; c < n; ++c) {
          if (left_slot && at(a, lat.join(b, c)) != lat.join(at(a, b), at(a, c)))
            fail("JoinDistFail",
                 cat(a, "·(", b, " v ", c, ") = ", at(a, lat.join(b, c)),
                     " but the join of the products is ",
                     lat.join(at(a, b), at(a, c))));
          if (!left_slot && at(lat.join(b, c), a) != lat.join(at(b, a), at(c, a)))
            fail("JoinDistFail",
                 cat("(", b, " v ", c, ")·", a, " = ", at(lat.join(b, c), a),
                     " but the join of the products is ",
                     lat.join(at(b, a), at(c, a))));
        }
  };
  if (distributive) {
    auto below = detail::irreducibles_below(lat);
    for (int a = 0; a < n; ++a)
      for (int x = 0; x < n; ++x) {
        int left = bot, right = bot;
        for (int j : below[x]) {
          left = lat.join(left, at(a, j));
          right = lat.join(right, at(j, a));
        }
        // A mismatch against the irreducible expansion implies some binary
        // join is broken; rerun the direct scan to name it.
        if (at(a, x) != left) report_binary_witness(true);
        if (at(x, a) != right) report_binary_witness(false);
      }
    for (int a = 0; a < n; ++a) {
      if (at(a, bot) != bot)
        fail("JoinDistFail", cat(a, "·0 = ", at(a, bot), " instead of 0"));
      if (at(bot, a) != bot)
        fail("JoinDistFail", cat("0·", a, " = ", at(bot, a), " instead of 0"));
    }
  } else {
    report_binary_witness(true);
    report_binary_witness(false);
  }

  // With bilinearity settled, products expand over irreducibles in both
  // arguments, so these two laws reduce to the irreducible generators.
  const auto& irr = lat.irreducibles();
  for (int j : irr)
    for (int k : irr)
      if (inv[at(j, k)] != at(inv[k], inv[j]))
        fail("InvolutionFail",
             cat("(", j, "·", k, ")* = ", inv[at(j, k)], " but k*·j* = ",
                 at(inv[k], inv[j])));
  for (int j : irr)
    for (int k : irr)
      for (int l : irr)
        if (at(at(j, k), l) != at(j, at(k, l)))
          fail("AssocFail",
               cat("(", j, "·", k, ")·", l, " = ", at(at(j, k), l), " but ",
                   j, "·(", k, "·", l, ") = ", at(j, at(k, l))));

  FinQuantale q{std::move(lat), std::move(mult), std::move(inv), unit};
  require(q.star(unit) == unit, "unit is not self adjoint");
  return q;
}

// A frame viewed as a quantale: multiplication is meet, the unit is the top,
// the involution is trivial.
inline FinQuantale frame_quantale(FinSupLattice lat) {
  FrameReport fr = check_frame(lat);
  if (!fr.is_frame)
    fail("JoinDistFail",
         cat("meet does not distribute over joins at (", fr.witness[0], ",",
             fr.witness[1], ",", fr.witness[2], ")"));
  const int n = lat.size();
  std::vector<int> mult(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) mult[a * n + b] = lat.meet(a, b);
  std::vector<int> inv(n);
  for (int a = 0; a < n; ++a) inv[a] = a;
  int top = lat.top();
  return check_quantale_axioms(std::move(lat), std::move(mult), std::move(inv), top);
}

struct SupportMap {
  std::vector<int> map;
  bool stable = false;

  int operator()(int a) const { return map[a]; }
};

// Validates the three support axioms plus join preservation for an explicit
// candidate self-map, and evaluates stability.
inline SupportMap validate_support(const FinQuantale& q,
                                   std::vector<int> map) {
  const int n = q.size();
  if (static_cast<int>(map.size()) != n)
    fail("NotASupport", "map size does not match the carrier");
  if (map[q.zero()] != q.zero())
    fail("NotASupport", cat("join preservation fails on the empty join: s(0) = ",
                            map[q.zero()]));
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (map[q.join(a, b)] != q.join(map[a], map[b]))
        fail("NotASupport",
             cat("join preservation fails on {", a, ",", b, "}"));
  for (int a = 0; a < n; ++a) {
    if (!q.leq(map[a], q.unit))
      fail("NotASupport", cat("s(", a, ") = ", map[a], " is not below the unit"));
    if (!q.leq(map[a], q.times(a, q.star(a))))
      fail("NotASupport", cat("s(", a, ") is not below ", a, "·", a, "*"));
    if (!q.leq(a, q.times(map[a], a)))
      fail("NotASupport", cat(a, " is not below s(", a, ")·", a));
  }
  SupportMap s{std::move(map), true};
  for (int a = 0; a < n; ++a)
    if (s(q.times(a, q.top())) != s(a)) {
      s.stable = false;
      break;
    }
  return s;
}

// The canonical candidate a -> e ^ aa*. When a stable support exists it is
// unique and equals this map, so failure here means no stable support exists.
inline SupportMap candidate_support(const FinQuantale& q) {
  std::vector<int> map(q.size());
  for (int a = 0; a < q.size(); ++a)
    map[a] = q.meet(q.unit, q.times(a, q.star(a)));
  return validate_support(q, std::move(map));
}

inline bool has_candidate_support(const FinQuantale& q) {
  try {
    candidate_support(q);
    return true;
  } catch (const Error& err) {
    if (err.code() == "NotASupport") return false;
    throw;
  }
}

namespace detail {

// Elements below the unit (the image of any support) and the right-sided
// elements a with a1 = a.
inline std::vector<int> subunit_elements(const FinQuantale& q) {
  std::vector<int> out;
  for (int a = 0; a < q.size(); ++a)
    if (q.leq(a, q.unit)) out.push_back(a);
  return out;
}

inline std::vector<int> right_sided_elements(const FinQuantale& q) {
  std::vector<int> out;
  for (int a = 0; a < q.size(); ++a)
    if (q.times(a, q.top()) == a) out.push_back(a);
  return out;
}

// The downsegment of the unit as a standalone lattice, with the index map
// back into Q.
inline std::pair<FinSupLattice, std::vector<int>> subunit_lattice(
    const FinQuantale& q) {
  std::vector<int> elems = subunit_elements(q);
  const int m = static_cast<int>(elems.size());
  FinPoset p;
  p.n = m;
  p.up = BitRows(m, m);
  p.down = BitRows(m, m);
  for (int i = 0; i < m; ++i)
    for (int k = 0; k < m; ++k)
      if (q.leq(elems[i], elems[k])) {
        p.up.set(i, k);
        p.down.set(k, i);
      }
  return {FinSupLattice(std::move(p)), std::move(elems)};
}

}  // namespace detail

// The eleven equivalent characterizations of a stable support, each evaluated
// independently; a mixed vector would falsify the equivalence and raises
// EquivalenceBroken.
struct StabilityReport {
  std::array<bool, 11> conditions{};
  bool stable = false;
};

inline StabilityReport stability_conditions_report(const FinQuantale& q,
                                                   const SupportMap& s) {
  const int n = q.size();
  const int e = q.unit;
  const int one = q.top();
  std::vector<int> sub = detail::subunit_elements(q);
  std::vector<int> rs = detail::right_sided_elements(q);
  StabilityReport rep;
  auto& c = rep.conditions;
  c.fill(true);

  for (int a = 0; a < n && (c[0] || c[1] || c[4]); ++a)
    for (int b = 0; b < n; ++b) {
      if (s(q.times(a, b)) != s(q.times(a, s(b)))) c[0] = false;
      if (!q.leq(s(q.times(a, b)), s(a))) c[1] = false;
      if (q.meet(q.times(a, one), b) != q.times(s(a), b)) c[4] = false;
    }
  for (int a = 0; a < n; ++a) {
    if (s(q.times(a, one)) != s(a)) c[2] = false;
    if (q.meet(q.times(a, one), e) != s(a)) c[3] = false;
  }
  // Condition 6: f -> f1 from the subunits to the right-sided elements is an
  // order isomorphism inverted by the support. The retraction half holds for
  // every support, so the content is that the support of f1 recovers f.
  for (int f : sub)
    if (s(q.times(f, one)) != f) c[5] = false;
  for (int a : rs)
    if (q.times(s(a), one) != a) c[5] = false;
  for (int a = 0; a < n && c[6]; ++a)
    for (int b = 0; b < n; ++b)
      if (q.leq(a, q.times(s(b), a)) != q.leq(s(a), s(b))) {
        c[6] = false;
        break;
      }
  for (int a = 0; a < n; ++a) {
    int acc = q.top();
    for (int b : sub)
      if (q.leq(a, q.times(b, a))) acc = q.meet(acc, b);
    if (acc != s(a)) c[7] = false;
  }
  for (int a = 0; a < n && c[8]; ++a)
    for (int b = 0; b < n; ++b)
      if (q.leq(s(a), q.times(b, one)) != q.leq(s(a), s(b))) {
        c[8] = false;
        break;
      }
  for (int a = 0; a < n; ++a) {
    int acc = q.zero();
    for (int b : sub)
      if (q.leq(b, q.times(a, one))) acc = q.join(acc, b);
    if (acc != s(a)) c[9] = false;
  }
  // Condition 11: (a, f) -> s(af) is a left action of Q on the subunits. The
  // bimorphism and unit laws hold for any support; associativity carries the
  // content.
  for (int a = 0; a < n && c[10]; ++a)
    for (int b = 0; b < n && c[10]; ++b)
      for (int f : sub)
        if (s(q.times(q.times(a, b), f)) != s(q.times(a, s(q.times(b, f))))) {
          c[10] = false;
          break;
        }

  bool any = false, all = true;
  for (bool v : c) {
    any = any || v;
    all = all && v;
  }
  if (any != all)
    fail("EquivalenceBroken",
         "the eleven stability conditions disagree on a verified support");
  rep.stable = all;
  require(rep.stable == s.stable, "stability flag disagrees with the report");
  return rep;
}

struct IdentityVerdict {
  std::string name;
  bool holds = true;
};

struct DerivedIdentityReport {
  std::vector<IdentityVerdict> identities;
  bool all_hold = true;
};

// Consequences every support satisfies: fifteen elementwise identities, the
// structural facts about the subunit locale and the right-sided elements, and
// (for stable supports only) the two strengthened laws.
inline DerivedIdentityReport derived_identities_report(const FinQuantale& q,
                                                       const SupportMap& s) {
  const int n = q.size();
  const int e = q.unit;
  const int one = q.top();
  DerivedIdentityReport rep;
  auto add = [&](std::string name, bool holds) {
    rep.identities.push_back({std::move(name), holds});
    rep.all_hold = rep.all_hold && holds;
  };
  auto forall = [&](auto&& pred) {
    for (int a = 0; a < n; ++a)
      if (!pred(a)) return false;
    return true;
  };
  auto forall2 = [&](auto&& pred) {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (!pred(a, b)) return false;
    return true;
  };

  add("fixes subunits", forall([&](int a) {
        return !q.leq(a, e) || s(a) == a;
      }));
  add("idempotent map", forall([&](int a) { return s(s(a)) == s(a); }));
  add("absorbs under a dominating support", forall2([&](int a, int b) {
        return !q.leq(s(a), s(b)) || q.times(s(b), a) == a;
      }));
  add("self absorption", forall([&](int a) { return q.times(s(a), a) == a; }));
  add("self adjoint values", forall([&](int a) { return q.star(s(a)) == s(a); }));
  add("right absorption through the adjoint",
      forall([&](int a) { return q.times(a, s(q.star(a))) == a; }));
  add("vanishes only at zero", forall([&](int a) {
        return (s(a) == q.zero()) == (a == q.zero());
      }));
  add("bounded by support of aa*", forall([&](int a) {
        return q.leq(s(a), s(q.times(a, q.star(a))));
      }));
  add("same right ideal as a", forall([&](int a) {
        return q.times(s(a), one) == q.times(a, one);
      }));
  add("right ideal of aa*", forall([&](int a) {
        return q.times(a, one) == q.times(q.times(a, q.star(a)), one);
      }));
  add("idempotent values", forall([&](int a) {
        return q.times(s(a), s(a)) == s(a);
      }));
  add("triple product bound", forall([&](int a) {
        return q.leq(a, q.times(q.times(a, q.star(a)), a));
      }));
  add("right-sided meet formula", forall2([&](int a, int b) {
        return q.times(s(q.times(a, one)), b) == q.meet(q.times(a, one), b);
      }));
  add("right-sided support meet", forall([&](int a) {
        return s(q.times(a, one)) == q.meet(q.times(a, one), e);
      }));
  add("meet bounded by mixed product", forall2([&](int a, int b) {
        return q.leq(s(q.meet(a, b)), q.times(a, q.star(b)));
      }));

  // Structural claims. The image of the support is exactly the downsegment
  // of the unit, which is a frame in which multiplication is meet and whose
  // elements are self-adjoint idempotents.
  std::vector<int> sub = detail::subunit_elements(q);
  {
    std::vector<char> in_image(n, 0);
    for (int a = 0; a < n; ++a) in_image[s(a)] = 1;
    bool same = true;
    for (int a = 0; a < n; ++a)
      if (in_image[a] != (q.leq(a, e) ? 1 : 0)) same = false;
    add("image is the downsegment of the unit", same);
  }
  {
    auto [sublat, elems] = detail::subunit_lattice(q);
    bool locale = check_frame(sublat).is_frame;
    bool mult_is_meet = true;
    for (int a : sub)
      for (int b : sub)
        if (q.times(a, b) != q.meet(a, b)) mult_is_meet = false;
    add("subunit part is a locale under multiplication", locale && mult_is_meet);
  }
  {
    bool proj = true;
    for (int a : sub)
      if (q.star(a) != a || q.times(a, a) != a) proj = false;
    add("subunits are projections", proj);
  }
  std::vector<int> rs = detail::right_sided_elements(q);
  {
    bool retract = true;
    for (int a : rs)
      if (q.times(s(a), one) != a) retract = false;
    add("support splits the right ideal map", retract);
  }
  {
    bool embed = true;
    for (int a : rs)
      for (int b : rs)
        if (q.leq(s(a), s(b)) != q.leq(a, b)) embed = false;
    add("order embedding on right-sided elements", embed);
  }
  {
    bool gelfand = true;
    for (int a : rs)
      if (q.times(q.times(a, q.star(a)), a) != a) gelfand = false;
    add("Gelfand condition on right-sided elements", gelfand);
  }

  if (s.stable) {
    add("stable support determined by its bounds", forall2([&](int a, int b) {
          bool hyp = q.leq(b, e) && q.leq(b, q.times(a, q.star(a))) &&
                     q.leq(a, q.times(b, a));
          return !hyp || b == s(a);
        }));
    add("subunit factors out of the support", forall2([&](int a, int b) {
          return !q.leq(a, e) || s(q.times(a, b)) == q.times(a, s(b));
        }));
  }
  return rep;
}

// Elements a with aa* <= e and a*a <= e; they form an involutive submonoid.
struct PartialUnitSet {
  std::vector<int> members;
  std::vector<char> is_member;
};

inline PartialUnitSet partial_units(const FinQuantale& q) {
  PartialUnitSet out;
  out.is_member.assign(q.size(), 0);
  for (int a = 0; a < q.size(); ++a)
    if (q.leq(q.times(a, q.star(a)), q.unit) &&
        q.leq(q.times(q.star(a), a), q.unit)) {
      out.members.push_back(a);
      out.is_member[a] = 1;
    }
  require(out.is_member[q.unit] == 1, "unit is not a partial unit");
  for (int a : out.members) {
    require(out.is_member[q.star(a)] == 1,
            cat("partial units not closed under involution at ", a));
    for (int b : out.members)
      require(out.is_member[q.times(a, b)] == 1,
              cat("partial units not closed under multiplication at (", a, ",",
                  b, ")"));
  }
  return out;
}

inline constexpr int kSupportSearchCap = 12;
inline std::vector<SupportMap> find_supports_exhaustive(
    const FinQuantale& q, int cap = kSupportSearchCap);

// Decides whether Q is an inverse quantale through two independent routes:
// supportedness plus a partial-unit cover of every element, and the triple
// product bound plus join preservation of the partial-unit support formula.
// The routes must agree; when they hold the formula is asserted to be the
// stable support and to coincide with the canonical candidate.
struct InverseQuantaleReport {
  bool inverse = false;
  int witness = -1;  // element that is not a join of partial units
};

inline InverseQuantaleReport check_inverse_quantale(const FinQuantale& q) {
  PartialUnitSet pu = partial_units(q);
  InverseQuantaleReport rep;
  bool join_of_units = true;
  for (int a = 0; a < q.size(); ++a) {
    int acc = q.zero();
    for (int b : pu.members)
      if (q.leq(b, a)) acc = q.join(acc, b);
    if (acc != a) {
      join_of_units = false;
      rep.witness = a;
      break;
    }
  }

  bool supported = has_candidate_support(q);
  if (!supported) {
    if (q.size() > kSupportSearchCap)
      fail("CarrierTooLarge",
           cat("cannot decide supportedness of ", q.size(),
               " elements without the canonical candidate"));
    supported = !find_supports_exhaustive(q, kSupportSearchCap).empty();
  }
  bool route1 = supported && join_of_units;

  bool triple = true;
  for (int a = 0; a < q.size(); ++a)
    if (!q.leq(a, q.times(q.times(a, q.star(a)), a))) triple = false;
  std::vector<int> formula(q.size());
  for (int a = 0; a < q.size(); ++a) {
    int acc = q.zero();
    for (int b : pu.members)
      if (q.leq(b, a)) acc = q.join(acc, q.times(b, q.star(b)));
    formula[a] = acc;
  }
  bool formula_join_preserving = formula[q.zero()] == q.zero();
  for (int a = 0; a < q.size() && formula_join_preserving; ++a)
    for (int b = a + 1; b < q.size(); ++b)
      if (formula[q.join(a, b)] != q.join(formula[a], formula[b])) {
        formula_join_preserving = false;
        break;
      }
  bool route2 = join_of_units && triple && formula_join_preserving;

  if (route1 != route2)
    fail("RouteDisagreement",
         cat("the supportedness route says ", route1,
             " but the support-formula route says ", route2));
  if (route1) {
    SupportMap from_formula = validate_support(q, formula);
    require(from_formula.stable, "an inverse quantale must be stably supported");
    require(from_formula.map == candidate_support(q).map,
            "the partial-unit support formula must agree with e ^ aa*");
  }
  rep.inverse = route1;
  if (rep.inverse) rep.witness = -1;
  return rep;
}

// Quantal frame whose support data is expressed by the two displayed
// inequalities; equivalent to the candidate support existing and being
// stable, which is asserted.
inline bool check_stable_quantal_frame(const FinQuantale& q) {
  bool verdict = check_frame(q.lat).is_frame;
  for (int a = 0; a < q.size() && verdict; ++a) {
    int d = q.meet(q.times(a, q.top()), q.unit);
    if (!q.leq(d, q.times(a, q.star(a)))) verdict = false;
    if (!q.leq(a, q.times(d, a))) verdict = false;
  }
  bool via_support = false;
  try {
    via_support = check_frame(q.lat).is_frame && candidate_support(q).stable;
  } catch (const Error& err) {
    if (err.code() != "NotASupport") throw;
  }
  require(verdict == via_support,
          "stable-quantal-frame inequalities disagree with the candidate support");
  return verdict;
}

// The two inversion laws of the groupoid correspondence, their lax variants,
// and the partial-unit cover condition, with the equivalences between them
// asserted for stable quantal frames.
struct InversionReport {
  bool exact_left = false, exact_right = false;
  bool lax_left = false, lax_right = false;
  bool ipi_join_is_top = false;
};

inline InversionReport check_inversion_laws(const FinQuantale& q) {
  const int e = q.unit;
  const int one = q.top();
  InversionReport rep;
  std::vector<int> left(q.size()), right(q.size());
  for (int a = 0; a < q.size(); ++a) {
    int accl = q.zero(), accr = q.zero();
    for (int x = 0; x < q.size(); ++x)
      for (int y = 0; y < q.size(); ++y) {
        if (q.leq(q.times(x, q.star(y)), a)) accl = q.join(accl, q.meet(x, y));
        if (q.leq(q.times(q.star(x), y), a)) accr = q.join(accr, q.meet(x, y));
      }
    left[a] = accl;
    right[a] = accr;
  }
  rep.exact_left = rep.exact_right = true;
  rep.lax_left = rep.lax_right = true;
  for (int a = 0; a < q.size(); ++a) {
    int le = q.times(q.meet(a, e), one);
    int re = q.times(one, q.meet(a, e));
    if (le != left[a]) rep.exact_left = false;
    if (!q.leq(le, left[a])) rep.lax_left = false;
    if (re != right[a]) rep.exact_right = false;
    if (!q.leq(re, right[a])) rep.lax_right = false;
  }
  PartialUnitSet pu = partial_units(q);
  int cover = q.zero();
  for (int b : pu.members) cover = q.join(cover, b);
  rep.ipi_join_is_top = cover == one;

  if (check_stable_quantal_frame(q)) {
    require(rep.exact_left == rep.lax_left && rep.exact_right == rep.lax_right,
            "exact and lax inversion laws disagree on a stable quantal frame");
  }
  if (check_frame(q.lat).is_frame)
    require((rep.lax_left && rep.lax_right) == rep.ipi_join_is_top,
            "lax inversion laws disagree with the partial-unit cover");
  return rep;
}

// Supported quantal frame whose top is a join of partial units. Consistency
// with the elementwise inverse-quantale check is asserted.
inline bool check_inverse_quantal_frame(const FinQuantale& q) {
  bool frame = check_frame(q.lat).is_frame;
  bool supported = has_candidate_support(q);
  bool cover = false;
  if (frame && supported) {
    PartialUnitSet pu = partial_units(q);
    int acc = q.zero();
    for (int b : pu.members) acc = q.join(acc, b);
    cover = acc == q.top();
  }
  bool verdict = frame && supported && cover;
  if (verdict) {
    require(candidate_support(q).stable,
            "an inverse quantal frame must be stably supported");
    require(check_inverse_quantale(q).inverse,
            "an inverse quantal frame must be an inverse quantale");
  }
  return verdict;
}

// Quotient by a partition: verified to be a congruence for binary joins,
// multiplication, involution and (when present) the candidate support, then
// rebuilt as a quantale with the induced tables.
struct QuantaleQuotient {
  FinQuantale quantale;
  std::vector<int> projection;  // element of Q -> class index
  std::vector<int> reps;        // class index -> least representative
};

inline QuantaleQuotient quantale_quotient(
    const FinQuantale& q, const std::vector<std::vector<int>>& classes) {
  const int n = q.size();
  std::vector<int> cls(n, -1);
  for (std::size_t c = 0; c < classes.size(); ++c)
    for (int x : classes[c]) {
      if (x < 0 || x >= n || cls[x] != -1)
        fail("NotACongruence", cat("classes do not partition the carrier at ", x));
      cls[x] = static_cast<int>(c);
    }
  for (int x = 0; x < n; ++x)
    if (cls[x] == -1)
      fail("NotACongruence", cat("element ", x, " is not covered by any class"));

  auto same = [&](int x, int y) { return cls[x] == cls[y]; };
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (!same(x, y)) continue;
      for (int z = 0; z < n; ++z) {
        if (!same(q.join(x, z), q.join(y, z)))
          fail("NotACongruence",
               cat("binary join breaks the congruence on (", x, ",", y,
                   ") joined with ", z));
        if (!same(q.times(x, z), q.times(y, z)))
          fail("NotACongruence",
               cat("right multiplication breaks the congruence on (", x, ",", y,
                   ") by ", z));
        if (!same(q.times(z, x), q.times(z, y)))
          fail("NotACongruence",
               cat("left multiplication breaks the congruence on (", x, ",", y,
                   ") by ", z));
      }
      if (!same(q.star(x), q.star(y)))
        fail("NotACongruence", cat("involution breaks the congruence on (", x,
                                   ",", y, ")"));
    }
  if (has_candidate_support(q)) {
    SupportMap s = candidate_support(q);
    for (int x = 0; x < n; ++x)
      for (int y = x + 1; y < n; ++y)
        if (same(x, y) && !same(s(x), s(y)))
          fail("NotACongruence",
               cat("support breaks the congruence on (", x, ",", y, ")"));
  }

  const int m = static_cast<int>(classes.size());
  std::vector<int> reps(m);
  for (int c = 0; c < m; ++c)
    reps[c] = *std::min_element(classes[c].begin(), classes[c].end());
  // Quotient order: [x] <= [y] iff joining a representative of y absorbs x.
  FinPoset order;
  order.n = m;
  order.up = BitRows(m, m);
  order.down = BitRows(m, m);
  for (int i = 0; i < m; ++i)
    for (int k = 0; k < m; ++k)
      if (same(q.join(reps[i], reps[k]), reps[k])) {
        order.up.set(i, k);
        order.down.set(k, i);
      }
  FinSupLattice lat = FinSupLattice(validate_partial_order(m, [&] {
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < m; ++i)
      for (int k = 0; k < m; ++k)
        if (order.up.test(i, k)) pairs.emplace_back(i, k);
    return pairs;
  }()));
  std::vector<int> mult(static_cast<std::size_t>(m) * m), inv(m);
  for (int i = 0; i < m; ++i) {
    inv[i] = cls[q.star(reps[i])];
    for (int k = 0; k < m; ++k)
      mult[i * m + k] = cls[q.times(reps[i], reps[k])];
  }
  QuantaleQuotient out;
  out.quantale =
      check_quantale_axioms(std::move(lat), std::move(mult), std::move(inv),
                            cls[q.unit]);
  out.projection = std::move(cls);
  out.reps = std::move(reps);
  return out;
}

// Verdict report for a map between quantales: which operations it preserves,
// plus the lax multiplicativity h(a)h(b) <= h(ab). For full homomorphisms
// into a stably supported target, support preservation is a theorem and is
// asserted rather than reported.
struct HomReport {
  bool join_preserving = false;
  bool mult_preserving = false;
  bool lax_mult = false;
  bool unital = false;
  bool involutive = false;
  bool full_homomorphism = false;
  bool support_preserved = false;
};

inline HomReport check_homomorphism(const FinQuantale& src,
                                    const FinQuantale& dst,
                                    const std::vector<int>& h,
                                    const SupportMap& src_support,
                                    const SupportMap& dst_support) {
  if (static_cast<int>(h.size()) != src.size())
    fail("PostconditionFailed", "homomorphism map has the wrong size");
  HomReport rep;
  rep.join_preserving = h[src.zero()] == dst.zero();
  for (int a = 0; a < src.size() && rep.join_preserving; ++a)
    for (int b = a + 1; b < src.size(); ++b)
      if (h[src.join(a, b)] != dst.join(h[a], h[b])) {
        rep.join_preserving = false;
        break;
      }
  rep.mult_preserving = true;
  rep.lax_mult = true;
  for (int a = 0; a < src.size(); ++a)
    for (int b = 0; b < src.size(); ++b) {
      int lhs = dst.times(h[a], h[b]);
      int rhs = h[src.times(a, b)];
      if (lhs != rhs) rep.mult_preserving = false;
      if (!dst.leq(lhs, rhs)) rep.lax_mult = false;
    }
  rep.unital = h[src.unit] == dst.unit;
  rep.involutive = true;
  for (int a = 0; a < src.size(); ++a)
    if (h[src.star(a)] != dst.star(h[a])) rep.involutive = false;
  rep.full_homomorphism = rep.join_preserving && rep.mult_preserving &&
                          rep.unital && rep.involutive;
  rep.support_preserved = true;
  for (int a = 0; a < src.size(); ++a)
    if (h[src_support(a)] != dst_support(h[a])) rep.support_preserved = false;
  if (rep.full_homomorphism && dst_support.stable)
    require(rep.support_preserved,
            "a homomorphism into a stably supported quantale must preserve "
            "the support");
  return rep;
}

// Every support of Q, found by assigning values on join-irreducibles and
// extending by joins; a join-preserving map is determined by those values,
// and the extension is verified rather than trusted, which keeps the search
// sound on non-distributive lattices.
inline std::vector<SupportMap> find_supports_exhaustive(
    const FinQuantale& q, int cap) {
  if (q.size() > cap)
    fail("CarrierTooLarge",
         cat("support search on ", q.size(), " elements exceeds the cap ", cap));
  const auto& irr = q.lat.irreducibles();
  const int k = static_cast<int>(irr.size());
  // Axioms 1 and 2 bound the value on each irreducible by e ^ jj*.
  std::vector<std::vector<int>> options(k);
  for (int i = 0; i < k; ++i) {
    int bound = q.meet(q.unit, q.times(irr[i], q.star(irr[i])));
    for (int v = 0; v < q.size(); ++v)
      if (q.leq(v, bound)) options[i].push_back(v);
  }
  std::vector<SupportMap> found;
  std::vector<int> choice(k, 0);
  std::vector<int> map(q.size());
  auto attempt = [&]() {
    for (int a = 0; a < q.size(); ++a) {
      int acc = q.zero();
      for (int i = 0; i < k; ++i)
        if (q.leq(irr[i], a)) acc = q.join(acc, choice[i]);
      map[a] = acc;
    }
    for (int i = 0; i < k; ++i)
      if (map[irr[i]] != choice[i]) return;
    try {
      found.push_back(validate_support(q, map));
    } catch (const Error& err) {
      if (err.code() != "NotASupport") throw;
    }
  };
  auto rec = [&](auto&& self, int depth) -> void {
    if (depth == k) {
      attempt();
      return;
    }
    for (int v : options[depth]) {
      choice[depth] = v;
      self(self, depth + 1);
    }
  };
  rec(rec, 0);
  return found;
}

// Unital involutive quantale isomorphism by backtracking over order-rank
// classes; used by the search rediscovery assertions and the round trips.
namespace detail {

struct IsoInvariant {
  int down_size, up_size, self_adjoint, idempotent, subunit;
  bool operator==(const IsoInvariant& o) const {
    return down_size == o.down_size && up_size == o.up_size &&
           self_adjoint == o.self_adjoint && idempotent == o.idempotent &&
           subunit == o.subunit;
  }
};

inline std::vector<IsoInvariant> iso_invariants(const FinQuantale& q) {
  std::vector<IsoInvariant> inv(q.size());
  for (int a = 0; a < q.size(); ++a) {
    int ds = 0, us = 0;
    for (int b = 0; b < q.size(); ++b) {
      if (q.leq(b, a)) ++ds;
      if (q.leq(a, b)) ++us;
    }
    inv[a] = {ds, us, q.star(a) == a ? 1 : 0, q.times(a, a) == a ? 1 : 0,
              q.leq(a, q.unit) ? 1 : 0};
  }
  return inv;
}

inline bool iso_extend(const FinQuantale& p, const FinQuantale& r,
                       std::vector<int>& map, std::vector<char>& used,
                       int next, const std::vector<IsoInvariant>& pi,
                       const std::vector<IsoInvariant>& ri) {
  if (next == p.size()) return true;
  for (int img = 0; img < r.size(); ++img) {
    if (used[img] || !(pi[next] == ri[img])) continue;
    if (next == p.unit && img != r.unit) continue;
    map[next] = img;
    used[img] = 1;
    bool ok = true;
    for (int b = 0; b <= next && ok; ++b) {
      if (p.leq(next, b) != r.leq(img, map[b])) ok = false;
      if (p.leq(b, next) != r.leq(map[b], img)) ok = false;
      // Products or stars landing on not-yet-assigned elements are deferred
      // to the full recheck after the map is complete.
      int ab = p.times(next, b), ba = p.times(b, next);
      if (ok && ab <= next && r.times(img, map[b]) != map[ab]) ok = false;
      if (ok && ba <= next && r.times(map[b], img) != map[ba]) ok = false;
    }
    int st = p.star(next);
    if (ok && st <= next && r.star(img) != map[st]) ok = false;
    if (ok && iso_extend(p, r, map, used, next + 1, pi, ri)) return true;
    used[img] = 0;
    map[next] = -1;
  }
  return false;
}

}  // namespace detail

inline std::optional<std::vector<int>> quantale_isomorphism(
    const FinQuantale& p, const FinQuantale& r) {
  if (p.size() != r.size()) return std::nullopt;
  auto pi = detail::iso_invariants(p);
  auto ri = detail::iso_invariants(r);
  std::vector<int> map(p.size(), -1);
  std::vector<char> used(r.size(), 0);
  if (!detail::iso_extend(p, r, map, used, 0, pi, ri)) return std::nullopt;
  // Deferred product and involution constraints are re-checked in full.
  for (int a = 0; a < p.size(); ++a) {
    if (r.star(map[a]) != map[p.star(a)]) return std::nullopt;
    for (int b = 0; b < p.size(); ++b)
      if (r.times(map[a], map[b]) != map[p.times(a, b)]) return std::nullopt;
  }
  return map;
}

inline bool quantale_isomorphic(const FinQuantale& p, const FinQuantale& r) {
  return quantale_isomorphism(p, r).has_value();
}

}  // namespace qgk

#endif  // QGK_QUANTALE_HPP_
