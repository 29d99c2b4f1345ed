// Finite inverse semigroups and monoids: validation through the commuting
// idempotent criterion, the natural order, compatibility and completeness,
// symmetric inverse monoids, the downset and enveloping quantales, and the
// unit and counit maps that relate them to stably supported quantales.
#ifndef QGK_INVSEMI_HPP_
#define QGK_INVSEMI_HPP_

#include <algorithm>
#include <map>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qgk/base.hpp"
#include "qgk/lattice.hpp"
#include "qgk/quantale.hpp"

namespace qgk {

struct FinInverseSemigroup {
  int n = 0;
  std::vector<int> mult;   // row-major n*n table
  std::vector<int> inv;    // the unique inverse of each element
  std::vector<char> idem;  // idempotent flags
  int unit = -1;           // -1 when there is no two-sided identity
  int least = -1;          // -1 when the natural order has no least element
  BitRows order;           // order.test(a, b) <=> a <= b in the natural order

  int size() const { return n; }
  int times(int a, int b) const { return mult[a * n + b]; }
  int star(int a) const { return inv[a]; }
  bool is_idempotent(int a) const { return idem[a] != 0; }
  bool leq(int a, int b) const { return order.test(a, b); }
};

// Validates associativity, regularity and commutation of idempotents, then
// derives the unique inverses, the idempotent structure and the natural
// order x <= y <=> x = (x x*) y. A declared unit of -1 means autodetect.
inline FinInverseSemigroup validate_inverse_semigroup(int n,
                                                      std::vector<int> mult,
                                                      int declared_unit = -1) {
  if (n <= 0) fail("AssocFail", "empty carrier");
  if (static_cast<int>(mult.size()) != n * n)
    fail("AssocFail", cat("multiplication table has ", mult.size(),
                          " entries, expected ", n * n));
  for (int v : mult)
    if (v < 0 || v >= n)
      fail("AssocFail", cat("table entry ", v, " out of range"));

  FinInverseSemigroup s;
  s.n = n;
  s.mult = std::move(mult);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        if (s.times(s.times(x, y), z) != s.times(x, s.times(y, z)))
          fail("AssocFail",
               cat("associativity fails on (", x, ",", y, ",", z, ")"));

  s.idem.assign(n, 0);
  for (int x = 0; x < n; ++x) s.idem[x] = s.times(x, x) == x;
  for (int x = 0; x < n; ++x) {
    bool regular = false;
    for (int y = 0; y < n && !regular; ++y)
      regular = s.times(s.times(x, y), x) == x;
    if (!regular) fail("NotRegular", cat("no inner inverse for ", x));
  }
  for (int e = 0; e < n; ++e)
    for (int f = e + 1; f < n; ++f)
      if (s.idem[e] && s.idem[f] && s.times(e, f) != s.times(f, e))
        fail("IdempotentsDontCommute",
             cat("idempotents ", e, " and ", f, " do not commute"));

  // Regularity with commuting idempotents forces a unique two-sided inverse.
  s.inv.assign(n, -1);
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y)
      if (s.times(s.times(x, y), x) == x && s.times(s.times(y, x), y) == y) {
        require(s.inv[x] < 0, cat("two distinct inverses for ", x));
        s.inv[x] = y;
      }
    require(s.inv[x] >= 0, cat("no two-sided inverse for ", x));
  }
  for (int x = 0; x < n; ++x) {
    require(s.inv[s.inv[x]] == x, cat("inversion is not involutive at ", x));
    for (int y = 0; y < n; ++y)
      require(s.inv[s.times(x, y)] == s.times(s.inv[y], s.inv[x]),
              cat("inversion is not an antihomomorphism on (", x, ",", y, ")"));
  }

  int found_unit = -1;
  for (int u = 0; u < n && found_unit < 0; ++u) {
    bool is_unit = true;
    for (int x = 0; x < n && is_unit; ++x)
      is_unit = s.times(u, x) == x && s.times(x, u) == x;
    if (is_unit) found_unit = u;
  }
  if (declared_unit >= 0) {
    if (declared_unit >= n)
      fail("UnitFail", cat("unit index ", declared_unit, " out of range"));
    if (declared_unit != found_unit)
      fail("UnitFail", cat(declared_unit, " is not a two-sided identity"));
  }
  s.unit = found_unit;

  s.order = BitRows(n, n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (s.times(s.times(x, s.inv[x]), y) == x) s.order.set(x, y);
  for (int x = 0; x < n; ++x)
    require(s.order.test(x, x), cat("natural order is not reflexive at ", x));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (x != y && s.order.test(x, y) && s.order.test(y, x))
        require(false, cat("natural order is not antisymmetric on (", x, ",",
                           y, ")"));
      if (s.order.test(x, y))
        for (int z = 0; z < n; ++z)
          if (s.order.test(y, z))
            require(s.order.test(x, z),
                    cat("natural order is not transitive on (", x, ",", y,
                        ",", z, ")"));
    }
  // The alternative description x = f y with f idempotent must agree.
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      bool by_idem = false;
      for (int f = 0; f < n && !by_idem; ++f)
        by_idem = s.idem[f] && s.times(f, y) == x;
      require(by_idem == s.order.test(x, y),
              cat("the two descriptions of the order disagree on (", x, ",",
                  y, ")"));
    }

  // The idempotents form a meet semilattice under multiplication.
  for (int e = 0; e < n; ++e)
    for (int f = 0; f < n; ++f)
      if (s.idem[e] && s.idem[f]) {
        int m = s.times(e, f);
        require(s.idem[m] == 1,
                cat("product of idempotents ", e, ",", f, " not idempotent"));
        require(s.order.test(m, e) && s.order.test(m, f),
                cat(m, " is not a lower bound of idempotents ", e, ",", f));
        for (int g = 0; g < n; ++g)
          if (s.idem[g] && s.order.test(g, e) && s.order.test(g, f))
            require(s.order.test(g, m),
                    cat("idempotent meet of ", e, ",", f, " misses ", g));
      }

  for (int x = 0; x < n; ++x) {
    bool is_least = true;
    for (int y = 0; y < n && is_least; ++y) is_least = s.order.test(x, y);
    if (is_least) {
      s.least = x;
      break;
    }
  }
  return s;
}

inline bool compatible(const FinInverseSemigroup& s, int a, int b) {
  return s.is_idempotent(s.times(a, s.star(b))) &&
         s.is_idempotent(s.times(s.star(a), b));
}

// Least upper bound of the listed elements when one exists. The empty list
// asks for a least element.
inline std::optional<int> join_in(const FinInverseSemigroup& s,
                                  const std::vector<int>& xs) {
  std::vector<int> ubs;
  for (int u = 0; u < s.n; ++u) {
    bool ok = true;
    for (int x : xs)
      if (!s.leq(x, u)) {
        ok = false;
        break;
      }
    if (ok) ubs.push_back(u);
  }
  for (int u : ubs) {
    bool lub = true;
    for (int v : ubs)
      if (!s.leq(u, v)) {
        lub = false;
        break;
      }
    if (lub) return u;
  }
  return std::nullopt;
}

// Restriction to a subset closed under multiplication and inversion,
// revalidated from scratch.
inline FinInverseSemigroup restrict_to(const FinInverseSemigroup& s,
                                       const std::vector<int>& members) {
  const int m = static_cast<int>(members.size());
  std::vector<int> back(s.n, -1);
  for (int i = 0; i < m; ++i) {
    require(members[i] >= 0 && members[i] < s.n && back[members[i]] < 0,
            "restriction members must be distinct carrier elements");
    back[members[i]] = i;
  }
  std::vector<int> table(m * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      int p = s.times(members[i], members[j]);
      require(back[p] >= 0, cat("restriction is not closed at (", members[i],
                                ",", members[j], ")"));
      table[i * m + j] = p >= 0 ? back[p] : -1;
    }
  for (int i = 0; i < m; ++i)
    require(back[s.star(members[i])] >= 0,
            cat("restriction is not closed under inversion at ", members[i]));
  return validate_inverse_semigroup(m, std::move(table));
}

inline std::vector<int> idempotent_elements(const FinInverseSemigroup& s) {
  std::vector<int> out;
  for (int x = 0; x < s.n; ++x)
    if (s.is_idempotent(x)) out.push_back(x);
  return out;
}

inline constexpr int kSubsetScanCap = 16;

namespace detail {

struct OrderMasks {
  std::vector<Mask> dn;    // dn[u]: elements below u
  std::vector<Mask> up;    // up[u]: elements above u
  std::vector<Mask> comp;  // comp[x]: elements compatible with x
};

inline OrderMasks order_masks(const FinInverseSemigroup& s) {
  if (s.n > 64)
    fail("CarrierTooLarge",
         cat("subset scans need at most 64 elements, got ", s.n));
  OrderMasks om;
  om.dn.assign(s.n, 0);
  om.up.assign(s.n, 0);
  om.comp.assign(s.n, 0);
  for (int a = 0; a < s.n; ++a)
    for (int b = 0; b < s.n; ++b) {
      if (s.leq(a, b)) {
        om.dn[b] |= mask_bit(a);
        om.up[a] |= mask_bit(b);
      }
      if (compatible(s, a, b)) om.comp[a] |= mask_bit(b);
    }
  return om;
}

inline int join_in_mask(const FinInverseSemigroup& s, const OrderMasks& om,
                        Mask m) {
  Mask ubs = 0;
  for (int u = 0; u < s.n; ++u)
    if ((m & ~om.dn[u]) == 0) ubs |= mask_bit(u);
  for (int u : mask_elems(ubs))
    if ((ubs & ~om.up[u]) == 0) return u;
  return -1;
}

// Direct check of the four distributivity conditions over every subset whose
// join exists: both one-sided image joins must exist and match the products.
inline bool distributive_direct(const FinInverseSemigroup& s) {
  if (s.n > kSubsetScanCap)
    fail("CarrierTooLarge",
         cat("direct distributivity scan capped at ", kSubsetScanCap,
             " elements, got ", s.n));
  OrderMasks om = order_masks(s);
  const Mask limit = Mask{1} << s.n;
  for (Mask m = 0; m < limit; ++m) {
    int j = join_in_mask(s, om, m);
    if (j < 0) continue;
    for (int a = 0; a < s.n; ++a) {
      Mask left = 0, right = 0;
      for (int x : mask_elems(m)) {
        left |= mask_bit(s.times(a, x));
        right |= mask_bit(s.times(x, a));
      }
      if (join_in_mask(s, om, left) != s.times(a, j)) return false;
      if (join_in_mask(s, om, right) != s.times(j, a)) return false;
    }
  }
  return true;
}

}  // namespace detail

// Distributivity of multiplication over all existing joins. Large carriers
// reduce to the idempotent part, which decides the question for the whole
// semigroup because both sides of the reduction hold or fail together.
inline bool check_infinitely_distributive(const FinInverseSemigroup& s) {
  if (s.n <= kSubsetScanCap) return detail::distributive_direct(s);
  FinInverseSemigroup e = restrict_to(s, idempotent_elements(s));
  if (e.n > kSubsetScanCap)
    fail("CarrierTooLarge",
         cat("distributivity needs at most ", kSubsetScanCap,
             " idempotents for a carrier of size ", s.n, ", got ", e.n));
  return detail::distributive_direct(e);
}

// Every compatible subset, the empty one included, must have a join. Large
// distributive carriers reduce to compatible pairs: the join of a compatible
// pair stays compatible with the remaining elements, so finite compatible
// joins assemble from binary ones.
inline bool check_complete(const FinInverseSemigroup& s) {
  if (s.n <= kSubsetScanCap) {
    detail::OrderMasks om = detail::order_masks(s);
    const Mask limit = Mask{1} << s.n;
    for (Mask m = 0; m < limit; ++m) {
      bool comp = true;
      for (int x : mask_elems(m))
        if ((m & ~om.comp[x]) != 0) {
          comp = false;
          break;
        }
      if (comp && detail::join_in_mask(s, om, m) < 0) return false;
    }
    return true;
  }
  if (!check_infinitely_distributive(s))
    fail("CarrierTooLarge",
         cat("completeness of a carrier of size ", s.n,
             " is only decided through the distributive pair reduction"));
  if (s.least < 0) return false;
  for (int a = 0; a < s.n; ++a)
    for (int b = a + 1; b < s.n; ++b)
      if (compatible(s, a, b) && !join_in(s, {a, b})) return false;
  return true;
}

namespace detail {

inline void ensure_acp(const FinInverseSemigroup& s, const char* who) {
  if (!check_complete(s) || !check_infinitely_distributive(s))
    fail("NotACP",
         cat(who, " needs a complete and infinitely distributive carrier"));
  require(s.least >= 0, "a complete carrier lost its least element");
  require(s.unit >= 0, "a complete carrier lost its unit");
}

}  // namespace detail

// Greatest lower bound of a nonempty subset, through the largest idempotent
// that equalizes it: f = join of {g idempotent : gx = gy for all x, y}, and
// the meet is f x for any member x.
inline int meet_of(const FinInverseSemigroup& s, const std::vector<int>& xs) {
  detail::ensure_acp(s, "the meet formula");
  if (xs.empty()) fail("NotACP", "the meet formula needs a nonempty subset");
  std::vector<int> eq;
  for (int g = 0; g < s.n; ++g) {
    if (!s.is_idempotent(g)) continue;
    bool equalizes = true;
    for (std::size_t i = 0; i + 1 < xs.size() && equalizes; ++i)
      equalizes = s.times(g, xs[i]) == s.times(g, xs[i + 1]);
    if (equalizes) eq.push_back(g);
  }
  std::optional<int> f = join_in(s, eq);
  require(f.has_value(), "the equalizing idempotents have no join");
  int z = s.times(*f, xs.front());
  for (int x : xs)
    require(s.leq(z, x), cat("the meet formula value is not below ", x));
  for (int w = 0; w < s.n; ++w) {
    bool lower = true;
    for (int x : xs)
      if (!s.leq(w, x)) {
        lower = false;
        break;
      }
    if (lower)
      require(s.leq(w, z), cat("the meet formula value misses the lower "
                               "bound ", w));
  }
  return z;
}

struct SymmetricInverseMonoid {
  FinInverseSemigroup monoid;
  std::vector<std::vector<int>> maps;  // images per point, -1 for undefined
};

inline constexpr int kSymmetricCap = 4;

// All partial injections on an n element set, composed left to right.
inline SymmetricInverseMonoid symmetric_inverse_monoid(
    int n, int cap = kSymmetricCap) {
  if (n < 0 || n > cap)
    fail("CarrierTooLarge",
         cat("symmetric inverse monoid capped at ", cap, " points, got ", n));
  SymmetricInverseMonoid out;
  std::vector<int> cur(n, -1);
  std::vector<char> used(n, 0);
  auto emit = [&](auto&& self, int i) -> void {
    if (i == n) {
      out.maps.push_back(cur);
      return;
    }
    cur[i] = -1;
    self(self, i + 1);
    for (int v = 0; v < n; ++v)
      if (!used[v]) {
        cur[i] = v;
        used[v] = 1;
        self(self, i + 1);
        used[v] = 0;
        cur[i] = -1;
      }
  };
  emit(emit, 0);
  const int m = static_cast<int>(out.maps.size());
  std::map<std::vector<int>, int> index;
  for (int i = 0; i < m; ++i) index.emplace(out.maps[i], i);
  std::vector<int> table(m * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      std::vector<int> c(n, -1);
      for (int p = 0; p < n; ++p) {
        int q = out.maps[i][p];
        c[p] = q < 0 ? -1 : out.maps[j][q];
      }
      table[i * m + j] = index.at(c);
    }
  out.monoid = validate_inverse_semigroup(m, std::move(table));
  std::vector<int> identity(n);
  for (int p = 0; p < n; ++p) identity[p] = p;
  require(out.monoid.unit == index.at(identity),
          "the identity map is not the unit");
  return out;
}

struct DownsetQuantale {
  FinQuantale quantale;
  std::vector<Mask> sets;      // quantale element -> subset of the carrier
  std::vector<int> principal;  // carrier element -> its downset element
  SupportMap support;          // the pointwise x x* image support
};

// All downsets of the natural order under pointwise product and inversion,
// with the idempotents as unit. The pointwise product of downsets is already
// downwards closed, so no closure step is involved.
inline DownsetQuantale downset_quantale(const FinInverseSemigroup& s,
                                        std::size_t cap = kDefaultDownsetCap) {
  if (s.n > 64)
    fail("CarrierTooLarge",
         cat("downset enumeration needs at most 64 elements, got ", s.n));
  FinPoset poset;
  poset.n = s.n;
  poset.up = BitRows(s.n, s.n);
  poset.down = BitRows(s.n, s.n);
  for (int a = 0; a < s.n; ++a)
    for (int b = 0; b < s.n; ++b)
      if (s.leq(a, b)) {
        poset.up.set(a, b);
        poset.down.set(b, a);
      }
  DownsetLattice dl = downset_lattice(poset, cap);
  const int m = static_cast<int>(dl.sets.size());

  auto lookup = [&](Mask w, const char* what) {
    auto it = dl.index.find(w);
    require(it != dl.index.end(), cat(what, " left the downset family"));
    return it->second;
  };
  std::vector<int> mult(m * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      Mask w = 0;
      for (int x : mask_elems(dl.sets[i]))
        for (int y : mask_elems(dl.sets[j])) w |= mask_bit(s.times(x, y));
      mult[i * m + j] = lookup(w, "a pointwise product");
    }
  std::vector<int> inv(m);
  for (int i = 0; i < m; ++i) {
    Mask w = 0;
    for (int x : mask_elems(dl.sets[i])) w |= mask_bit(s.star(x));
    inv[i] = lookup(w, "a pointwise inversion");
  }
  Mask idem_mask = 0;
  for (int x : idempotent_elements(s)) idem_mask |= mask_bit(x);
  int unit = lookup(idem_mask, "the idempotent part");

  DownsetQuantale out;
  out.quantale = check_quantale_axioms(std::move(dl.lattice), std::move(mult),
                                       std::move(inv), unit);
  out.sets = std::move(dl.sets);
  out.principal = std::move(dl.principal);

  std::vector<int> formula(m);
  for (int i = 0; i < m; ++i) {
    Mask w = 0;
    for (int x : mask_elems(out.sets[i]))
      w |= mask_bit(s.times(x, s.star(x)));
    formula[i] = lookup(w, "a pointwise domain image");
  }
  require(formula == candidate_support(out.quantale).map,
          "the pointwise support differs from the candidate support");
  out.support = validate_support(out.quantale, std::move(formula));
  require(out.support.stable, "the downset quantale support is not stable");
  require(check_inverse_quantale(out.quantale).inverse,
          "the downset quantale is not an inverse quantale");
  return out;
}

inline constexpr std::size_t kEnvelopeCap = std::size_t{1} << 16;

struct EnvelopingQuantale {
  FinQuantale quantale;
  std::vector<Mask> sets;      // quantale element -> subset of the carrier
  std::vector<int> principal;  // carrier element -> its downset element
  SupportMap support;
};

// The quantale of downsets closed under joins of compatible subsets, built
// by closing the principal downsets under binary unions followed by the
// compatible join closure. The full downset family is never materialized.
inline EnvelopingQuantale enveloping_quantale(const FinInverseSemigroup& s,
                                              std::size_t cap = kEnvelopeCap) {
  detail::ensure_acp(s, "the enveloping quantale");
  if (s.n > 64)
    fail("CarrierTooLarge",
         cat("the enveloping quantale needs at most 64 elements, got ", s.n));
  detail::OrderMasks om = detail::order_masks(s);
  std::vector<std::vector<int>> pair_join(s.n, std::vector<int>(s.n, -1));
  for (int a = 0; a < s.n; ++a)
    for (int b = 0; b < s.n; ++b)
      if (compatible(s, a, b)) {
        auto j = join_in(s, {a, b});
        require(j.has_value(), "a compatible pair lost its join");
        pair_join[a][b] = *j;
      }

  // Close a downset under joins of compatible subsets. Under distributivity
  // the binary fixed point reaches the join of every compatible subset.
  auto jclose = [&](Mask u) {
    bool grown = true;
    while (grown) {
      grown = false;
      for (int x : mask_elems(u))
        for (int y : mask_elems(u & om.comp[x])) {
          Mask b = mask_bit(pair_join[x][y]);
          if ((u & b) == 0) {
            u |= b;
            grown = true;
          }
        }
    }
    for (int x : mask_elems(u))
      require((om.dn[x] & ~u) == 0,
              "the compatible join closure is not downwards closed");
    return u;
  };

  std::vector<Mask> all;
  std::unordered_map<Mask, int> seen;
  auto add = [&](Mask w) {
    if (seen.emplace(w, 1).second) {
      all.push_back(w);
      if (all.size() > cap)
        fail("CarrierTooLarge",
             cat("more than ", cap, " compatibly closed downsets"));
    }
  };
  for (int x = 0; x < s.n; ++x) add(jclose(om.dn[x]));
  for (std::size_t fresh = 0; fresh < all.size();) {
    std::size_t mark = all.size();
    for (std::size_t i = 0; i < mark; ++i)
      for (std::size_t j = fresh; j < mark; ++j)
        add(jclose(all[i] | all[j]));
    fresh = mark;
  }
  std::sort(all.begin(), all.end());
  const int m = static_cast<int>(all.size());
  std::unordered_map<Mask, int> index;
  for (int i = 0; i < m; ++i) index.emplace(all[i], i);
  auto lookup = [&](Mask w, const char* what) {
    auto it = index.find(w);
    require(it != index.end(), cat(what, " left the closed downset family"));
    return it->second;
  };

  std::vector<std::pair<int, int>> leq_pairs;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if ((all[i] & ~all[j]) == 0) leq_pairs.emplace_back(i, j);
  FinSupLattice lat = build_lattice(m, leq_pairs);

  // The product of closed downsets needs one more closure pass; it stays
  // cheap because the pointwise product is assembled per left element.
  std::vector<std::vector<Mask>> left_products(
      s.n, std::vector<Mask>(m, 0));
  for (int x = 0; x < s.n; ++x)
    for (int j = 0; j < m; ++j) {
      Mask w = 0;
      for (int y : mask_elems(all[j])) w |= mask_bit(s.times(x, y));
      left_products[x][j] = w;
    }
  std::vector<int> mult(m * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      Mask w = 0;
      for (int x : mask_elems(all[i])) w |= left_products[x][j];
      mult[i * m + j] = lookup(jclose(w), "a pointwise product");
    }
  std::vector<int> inv(m);
  for (int i = 0; i < m; ++i) {
    Mask w = 0;
    for (int x : mask_elems(all[i])) w |= mask_bit(s.star(x));
    inv[i] = lookup(w, "a pointwise inversion");
  }
  Mask idem_mask = 0;
  for (int x : idempotent_elements(s)) idem_mask |= mask_bit(x);
  int unit = lookup(idem_mask, "the idempotent part");

  EnvelopingQuantale out;
  out.quantale = check_quantale_axioms(std::move(lat), std::move(mult),
                                       std::move(inv), unit);
  out.sets = std::move(all);
  out.principal.assign(s.n, -1);
  for (int x = 0; x < s.n; ++x)
    out.principal[x] = lookup(jclose(om.dn[x]), "a principal downset");

  std::vector<int> formula(m);
  for (int i = 0; i < m; ++i) {
    Mask w = 0;
    for (int x : mask_elems(out.sets[i]))
      w |= mask_bit(s.times(x, s.star(x)));
    formula[i] = lookup(jclose(w), "a pointwise domain image");
  }
  require(formula == candidate_support(out.quantale).map,
          "the pointwise support differs from the candidate support");
  out.support = validate_support(out.quantale, std::move(formula));
  require(out.support.stable, "the enveloping quantale support is not stable");
  require(check_inverse_quantale(out.quantale).inverse,
          "the enveloping quantale is not an inverse quantale");

  // Closure interacts with the downset quantale operations as a nucleus:
  // sampled over unions of up to two principal downsets.
  std::vector<Mask> sample;
  for (int x = 0; x < s.n && sample.size() < 32; ++x) sample.push_back(om.dn[x]);
  for (int x = 0; x < s.n && sample.size() < 64; ++x)
    for (int y = x + 1; y < s.n && sample.size() < 64; ++y)
      sample.push_back(om.dn[x] | om.dn[y]);
  auto pointwise_product = [&](Mask u, Mask v) {
    Mask w = 0;
    for (int x : mask_elems(u))
      for (int y : mask_elems(v)) w |= mask_bit(s.times(x, y));
    return w;
  };
  auto pointwise_star = [&](Mask u) {
    Mask w = 0;
    for (int x : mask_elems(u)) w |= mask_bit(s.star(x));
    return w;
  };
  auto pointwise_domain = [&](Mask u) {
    Mask w = 0;
    for (int x : mask_elems(u)) w |= mask_bit(s.times(x, s.star(x)));
    return w;
  };
  for (Mask u : sample) {
    Mask cu = jclose(u);
    require((pointwise_star(cu) & ~jclose(pointwise_star(u))) == 0,
            "the closure does not respect pointwise inversion");
    require((pointwise_domain(cu) & ~jclose(pointwise_domain(u))) == 0,
            "the closure does not respect the pointwise support");
    for (Mask v : sample) {
      Mask cv = jclose(v);
      require(((cu & cv) & ~jclose(u & v)) == 0,
              "the closure does not meet like a nucleus");
      require((pointwise_product(cu, cv) &
               ~jclose(pointwise_product(u, v))) == 0,
              "the closure does not multiply like a nucleus");
    }
  }
  return out;
}

struct EtaReport {
  EnvelopingQuantale envelope;
  std::vector<int> map;  // carrier element -> its principal downset
  bool iso = false;
};

// The embedding into the partial units of the enveloping quantale; the
// verdict records whether it is a bijection preserving product, unit,
// inversion and order in both directions.
inline EtaReport eta(const FinInverseSemigroup& s) {
  EtaReport out;
  out.envelope = enveloping_quantale(s);
  out.map = out.envelope.principal;
  const FinQuantale& q = out.envelope.quantale;
  PartialUnitSet units = partial_units(q);

  bool ok = static_cast<int>(units.members.size()) == s.n;
  std::vector<char> hit(q.size(), 0);
  for (int x = 0; x < s.n && ok; ++x) {
    int u = out.map[x];
    ok = units.is_member[u] && !hit[u];
    hit[u] = 1;
  }
  for (int x = 0; x < s.n && ok; ++x) {
    ok = q.star(out.map[x]) == out.map[s.star(x)];
    for (int y = 0; y < s.n && ok; ++y) {
      ok = q.times(out.map[x], out.map[y]) == out.map[s.times(x, y)] &&
           q.leq(out.map[x], out.map[y]) == s.leq(x, y);
    }
  }
  if (ok) ok = s.unit >= 0 && out.map[s.unit] == q.unit;
  out.iso = ok;
  return out;
}

struct IpiMonoid {
  FinInverseSemigroup monoid;
  std::vector<int> members;       // monoid element -> quantale element
  std::vector<int> member_index;  // quantale element -> monoid element or -1
};

// The partial units of a supported quantale as an inverse monoid. The
// natural order must match the quantale order and the idempotents must be
// exactly the elements below the unit.
inline IpiMonoid ipi_monoid(const FinQuantale& q) {
  bool supported = has_candidate_support(q);
  if (!supported && q.size() <= kSupportSearchCap)
    supported = !find_supports_exhaustive(q).empty();
  if (!supported)
    fail("NotASupport",
         "the partial units form an inverse monoid only over a supported "
         "quantale");
  PartialUnitSet units = partial_units(q);
  IpiMonoid out;
  out.members = units.members;
  out.member_index.assign(q.size(), -1);
  const int m = static_cast<int>(out.members.size());
  for (int i = 0; i < m; ++i) out.member_index[out.members[i]] = i;
  std::vector<int> table(m * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      int p = out.member_index[q.times(out.members[i], out.members[j])];
      require(p >= 0, "partial units are not closed under multiplication");
      table[i * m + j] = p;
    }
  out.monoid =
      validate_inverse_semigroup(m, std::move(table),
                                 out.member_index[q.unit]);
  for (int i = 0; i < m; ++i) {
    require(out.members[out.monoid.star(i)] == q.star(out.members[i]),
            "the monoid inverse differs from the quantale involution");
    require(out.monoid.is_idempotent(i) ==
                q.leq(out.members[i], q.unit),
            cat("idempotents of the partial units are not the subunits at ",
                out.members[i]));
    for (int j = 0; j < m; ++j)
      require(out.monoid.leq(i, j) ==
                  q.leq(out.members[i], out.members[j]),
              "the natural order differs from the quantale order");
  }
  return out;
}

struct EpsilonReport {
  IpiMonoid units;
  EnvelopingQuantale envelope;  // rebuilt from the partial units
  std::vector<int> map;         // envelope element -> its join
  bool iso = false;
};

// Rebuilds the enveloping quantale of the partial units and compares it to
// the original through the join map; the verdict records whether that map is
// a bijective homomorphism of unital involutive quantales.
inline EpsilonReport epsilon(const FinQuantale& q) {
  SupportMap support = candidate_support(q);
  if (!support.stable)
    fail("NotASupport", "the join comparison needs a stably supported "
                        "quantale");
  EpsilonReport out;
  out.units = ipi_monoid(q);
  out.envelope = enveloping_quantale(out.units.monoid);
  const FinQuantale& env = out.envelope.quantale;
  out.map.assign(env.size(), q.zero());
  for (int i = 0; i < env.size(); ++i) {
    int acc = q.zero();
    for (int x : mask_elems(out.envelope.sets[i]))
      acc = q.join(acc, out.units.members[x]);
    out.map[i] = acc;
  }
  std::vector<char> hit(q.size(), 0);
  bool bijective = env.size() == q.size();
  for (int i = 0; i < env.size() && bijective; ++i) {
    bijective = !hit[out.map[i]];
    hit[out.map[i]] = 1;
  }
  HomReport rep = check_homomorphism(env, q, out.map, out.envelope.support,
                                     support);
  out.iso = bijective && rep.full_homomorphism;
  return out;
}

struct ExtendedHom {
  DownsetQuantale domain;  // the downset quantale of the monoid
  std::vector<int> map;    // downset element -> its image join
};

// Unique join preserving extension of a monoid map into the partial units:
// a downset goes to the join of its images. The extension is checked to be a
// full homomorphism restricting to the original map on principal downsets.
inline ExtendedHom extend_hom(const FinInverseSemigroup& s,
                              const FinQuantale& q,
                              const std::vector<int>& h) {
  SupportMap support = candidate_support(q);
  if (!support.stable)
    fail("NotASupport",
         "the extension lands in a stably supported quantale");
  if (s.unit < 0) fail("NotAMonoidHom", "the domain is not a monoid");
  if (static_cast<int>(h.size()) != s.n)
    fail("NotAMonoidHom", cat("map has ", h.size(), " entries, expected ",
                              s.n));
  PartialUnitSet units = partial_units(q);
  for (int x = 0; x < s.n; ++x) {
    if (h[x] < 0 || h[x] >= q.size() || !units.is_member[h[x]])
      fail("NotAMonoidHom", cat("the image of ", x, " is not a partial unit"));
    for (int y = 0; y < s.n; ++y)
      if (h[s.times(x, y)] != q.times(h[x], h[y]))
        fail("NotAMonoidHom",
             cat("multiplication is not preserved on (", x, ",", y, ")"));
  }
  if (h[s.unit] != q.unit)
    fail("NotAMonoidHom", "the unit is not preserved");
  for (int x = 0; x < s.n; ++x)
    require(h[s.star(x)] == q.star(h[x]),
            cat("a monoid map must preserve the inverse of ", x));

  ExtendedHom out;
  out.domain = downset_quantale(s);
  const FinQuantale& dom = out.domain.quantale;
  out.map.assign(dom.size(), q.zero());
  for (int i = 0; i < dom.size(); ++i) {
    int acc = q.zero();
    for (int x : mask_elems(out.domain.sets[i])) acc = q.join(acc, h[x]);
    out.map[i] = acc;
  }
  for (int x = 0; x < s.n; ++x)
    require(out.map[out.domain.principal[x]] == h[x],
            cat("the extension does not restrict to the map at ", x));
  HomReport rep = check_homomorphism(dom, q, out.map, out.domain.support,
                                     support);
  require(rep.full_homomorphism, "the extension is not a full homomorphism");
  require(rep.support_preserved, "the extension does not preserve supports");
  return out;
}

}  // namespace qgk

#endif  // QGK_INVSEMI_HPP_
