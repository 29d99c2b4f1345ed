// tensor.hpp --- the tensor square of a stably supported quantale over its
// subunit part, represented by saturated bi-ideals.
//
// A bi-ideal is a relation on Q x Q that is down-closed and join-closed in
// each slot and saturated for middle shifts (bz, c) <-> (b, zc) by subunits
// z. These are exactly the elements of the tensor square that the checks
// need; the tensor lattice itself is never enumerated. The multiplication
// map mu sends a bi-ideal to the join of its pairwise products; mu_star is
// its right adjoint, and multiplicativity asks whether mu_star preserves
// joins.

#ifndef QGK_TENSOR_HPP_
#define QGK_TENSOR_HPP_

#include <utility>
#include <vector>

#include "qgk/base.hpp"
#include "qgk/quantale.hpp"

namespace qgk {

struct BiIdeal {
  int n = 0;
  std::vector<Mask> rows;  // rows[a] has bit b set iff the pair (a,b) is present

  bool contains(int a, int b) const { return mask_test(rows[a], b); }
  bool operator==(const BiIdeal& o) const { return n == o.n && rows == o.rows; }
  bool subset_of(const BiIdeal& o) const {
    for (int a = 0; a < n; ++a)
      if (rows[a] & ~o.rows[a]) return false;
    return true;
  }
};

namespace detail {

// Shared precomputation for the closure passes: the stability requirement
// makes the subunit part a genuine base for middle shifts.
struct TensorContext {
  const FinQuantale& q;
  std::vector<int> subunits;
  std::vector<Mask> down_mask;  // down_mask[x] = elements below x

  explicit TensorContext(const FinQuantale& quantale) : q(quantale) {
    if (q.size() > 64)
      fail("CarrierTooLarge",
           cat("tensor construction on ", q.size(), " elements exceeds 64"));
    if (!candidate_support(q).stable)
      fail("NotASupport",
           "the tensor square needs a stably supported quantale");
    subunits = subunit_elements(q);
    down_mask.assign(q.size(), 0);
    for (int x = 0; x < q.size(); ++x)
      for (int y = 0; y < q.size(); ++y)
        if (q.leq(y, x)) down_mask[x] |= mask_bit(y);
  }
};

inline Mask close_mask_under_joins(const FinSupLattice& lat, Mask m) {
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<int> elems = mask_elems(m);
    for (std::size_t i = 0; i < elems.size(); ++i)
      for (std::size_t j = i + 1; j < elems.size(); ++j) {
        int v = lat.join(elems[i], elems[j]);
        if (!mask_test(m, v)) {
          m |= mask_bit(v);
          grew = true;
        }
      }
  }
  return m;
}

// Both axes: every pair with a zero coordinate. The empty join in either
// slot forces them into every bi-ideal, but they need not be closed on
// their own, so this is only a starting point for the closure.
inline BiIdeal biideal_axes(const FinQuantale& q) {
  BiIdeal r;
  r.n = q.size();
  r.rows.assign(r.n, mask_bit(q.zero()));
  Mask full = 0;
  for (int b = 0; b < r.n; ++b) full |= mask_bit(b);
  r.rows[q.zero()] = full;
  return r;
}

}  // namespace detail

inline BiIdeal biideal_top(const FinQuantale& q) {
  BiIdeal r;
  r.n = q.size();
  Mask full = 0;
  for (int b = 0; b < r.n; ++b) full |= mask_bit(b);
  r.rows.assign(r.n, full);
  return r;
}

// Least saturated bi-ideal containing the seed pairs; fixed point of
// down-closure, per-slot join closure (binary joins plus the empty join,
// which contributes both axes) and middle shifts by subunits.
inline BiIdeal biideal_close(const FinQuantale& q,
                             const std::vector<std::pair<int, int>>& seed) {
  detail::TensorContext ctx(q);
  const int n = q.size();
  BiIdeal r = detail::biideal_axes(q);
  for (auto [a, b] : seed) {
    require(a >= 0 && a < n && b >= 0 && b < n, "seed pair out of range");
    r.rows[a] |= mask_bit(b);
  }
  bool changed = true;
  while (changed) {
    changed = false;
    BiIdeal before = r;
    // Down-closure: spread each present pair over the down-sets of both
    // coordinates.
    {
      std::vector<Mask> next(n, 0);
      for (int a = 0; a < n; ++a) {
        Mask expanded = 0;
        for (int b : mask_elems(r.rows[a])) expanded |= ctx.down_mask[b];
        for (int ap : mask_elems(ctx.down_mask[a])) next[ap] |= expanded;
      }
      r.rows = std::move(next);
    }
    // Join closure, second slot per row, then first slot per column.
    for (int a = 0; a < n; ++a)
      r.rows[a] = detail::close_mask_under_joins(q.lat, r.rows[a]);
    for (int b = 0; b < n; ++b) {
      Mask col = 0;
      for (int a = 0; a < n; ++a)
        if (mask_test(r.rows[a], b)) col |= mask_bit(a);
      col = detail::close_mask_under_joins(q.lat, col);
      for (int a : mask_elems(col)) r.rows[a] |= mask_bit(b);
    }
    // Middle shifts: from (x, zc) derive (xz, c), and from (bz, y) derive
    // (b, zy).
    for (int z : ctx.subunits) {
      for (int c = 0; c < n; ++c) {
        int y = q.times(z, c);
        for (int x = 0; x < n; ++x)
          if (mask_test(r.rows[x], y)) r.rows[q.times(x, z)] |= mask_bit(c);
      }
      for (int b = 0; b < n; ++b) {
        int x = q.times(b, z);
        for (int y : mask_elems(r.rows[x])) r.rows[b] |= mask_bit(q.times(z, y));
      }
    }
    changed = !(r == before);
  }
  return r;
}

// Bottom of the tensor square: the closure of the empty seed. The middle
// shifts can force pairs beyond the two axes, so this may be strictly
// larger than the axes alone; in a frame multiplied over itself every
// disjoint pair lands here.
inline BiIdeal biideal_bottom(const FinQuantale& q) {
  return biideal_close(q, {});
}

inline BiIdeal pure_tensor(const FinQuantale& q, int a, int b) {
  BiIdeal r = biideal_close(q, {{a, b}});
  require(r.contains(a, b), "pure tensor lost its seed pair");
  return r;
}

// Join of all pairwise products. The closure rules never change this value,
// so it equals the join over any seed generating the bi-ideal.
inline int mu(const FinQuantale& q, const BiIdeal& r) {
  require(r.n == q.size(), "bi-ideal carrier mismatch");
  int acc = q.zero();
  for (int a = 0; a < r.n; ++a)
    for (int b : mask_elems(r.rows[a])) acc = q.join(acc, q.times(a, b));
  return acc;
}

// Right adjoint of mu: all pairs with product below c. Saturation for the
// closure rules is a consequence of associativity and is asserted.
inline BiIdeal mu_star(const FinQuantale& q, int c) {
  detail::TensorContext ctx(q);
  BiIdeal r;
  r.n = q.size();
  r.rows.assign(r.n, 0);
  for (int a = 0; a < r.n; ++a)
    for (int b = 0; b < r.n; ++b)
      if (q.leq(q.times(a, b), c)) r.rows[a] |= mask_bit(b);
  std::vector<std::pair<int, int>> seed;
  for (int a = 0; a < r.n; ++a)
    for (int b : mask_elems(r.rows[a])) seed.emplace_back(a, b);
  require(biideal_close(q, seed) == r, "mu_star image is not saturated");
  return r;
}

inline int tensor_mu_of_seed(const FinQuantale& q,
                             const std::vector<std::pair<int, int>>& seed) {
  int acc = q.zero();
  for (auto [a, b] : seed) acc = q.join(acc, q.times(a, b));
  return acc;
}

struct MultiplicativityReport {
  bool multiplicative = true;
  int c = -1, d = -1;            // join whose mu_star image breaks
  std::pair<int, int> missing{-1, -1};  // pair in mu_star(c v d) not generated
};

// mu_star preserves joins iff its value on every binary join is the closed
// union of the values on the parts and its value on 0 is the bottom
// bi-ideal.
inline MultiplicativityReport check_multiplicative(const FinQuantale& q) {
  MultiplicativityReport rep;
  if (!(mu_star(q, q.zero()) == biideal_bottom(q))) {
    rep.multiplicative = false;
    rep.c = rep.d = q.zero();
    BiIdeal ms = mu_star(q, q.zero());
    BiIdeal bot = biideal_bottom(q);
    for (int a = 0; a < ms.n && rep.missing.first < 0; ++a)
      for (int b : mask_elems(ms.rows[a] & ~bot.rows[a])) {
        rep.missing = {a, b};
        break;
      }
    return rep;
  }
  std::vector<BiIdeal> ms;
  ms.reserve(q.size());
  for (int c = 0; c < q.size(); ++c) ms.push_back(mu_star(q, c));
  for (int c = 0; c < q.size(); ++c)
    for (int d = c + 1; d < q.size(); ++d) {
      const BiIdeal& target = ms[q.join(c, d)];
      std::vector<std::pair<int, int>> seed;
      for (int a = 0; a < q.size(); ++a) {
        for (int b : mask_elems(ms[c].rows[a])) seed.emplace_back(a, b);
        for (int b : mask_elems(ms[d].rows[a])) seed.emplace_back(a, b);
      }
      BiIdeal closed = biideal_close(q, seed);
      require(closed.subset_of(target),
              "closed union of mu_star images escapes mu_star of the join");
      if (!(closed == target)) {
        rep.multiplicative = false;
        rep.c = c;
        rep.d = d;
        for (int a = 0; a < q.size() && rep.missing.first < 0; ++a)
          for (int b : mask_elems(target.rows[a] & ~closed.rows[a])) {
            rep.missing = {a, b};
            break;
          }
        return rep;
      }
    }
  return rep;
}

// mu(R) <= c iff R is contained in mu_star(c), over a generated sample of
// bi-ideals: bottom, top, every pure tensor and every mu_star value.
inline bool check_adjunction(const FinQuantale& q) {
  std::vector<BiIdeal> sample;
  sample.push_back(biideal_bottom(q));
  sample.push_back(biideal_top(q));
  for (int a = 0; a < q.size(); ++a)
    for (int b = 0; b < q.size(); ++b) sample.push_back(pure_tensor(q, a, b));
  std::vector<BiIdeal> ms;
  for (int c = 0; c < q.size(); ++c) {
    ms.push_back(mu_star(q, c));
    sample.push_back(ms.back());
  }
  for (const BiIdeal& r : sample) {
    int value = mu(q, r);
    for (int c = 0; c < q.size(); ++c)
      if (q.leq(value, c) != r.subset_of(ms[c])) return false;
  }
  return true;
}

}  // namespace qgk

#endif  // QGK_TENSOR_HPP_
