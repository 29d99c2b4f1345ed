// lattice.hpp --- finite complete lattices of joins and the maps between them.
//
// A FinSupLattice is a finite partial order in which every subset has a least
// upper bound; since the carrier is finite this reduces to "every pair has a
// unique least upper bound and a bottom element exists", which is exactly what
// construction validates. Meets are never part of the input: they are derived
// from joins of lower bounds and memoized in a dense table next to the join
// table. Elements are indices 0..n-1 throughout.

#ifndef QGK_LATTICE_HPP_
#define QGK_LATTICE_HPP_

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qgk/base.hpp"

namespace qgk {

// Dense tables become quadratic in the carrier; this guard keeps desk-scale
// behavior honest instead of thrashing on inputs that were never meant to be
// materialized.
inline constexpr int kDenseTableGuard = 2048;

struct FinPoset {
  int n = 0;
  BitRows up;    // up.test(a, b)  <=>  a <= b
  BitRows down;  // down.test(a, b)  <=>  b <= a
};

// Validates reflexivity, antisymmetry and transitivity of an explicit
// relation. The witness in the error names the offending pair or triple.
inline FinPoset validate_partial_order(
    int n, const std::vector<std::pair<int, int>>& leq_pairs) {
  if (n <= 0) fail("NotAPartialOrder", "empty carrier");
  FinPoset p;
  p.n = n;
  p.up = BitRows(n, n);
  for (auto [a, b] : leq_pairs) {
    if (a < 0 || a >= n || b < 0 || b >= n)
      fail("NotAPartialOrder",
           cat("pair (", a, ",", b, ") out of range for carrier of size ", n));
    p.up.set(a, b);
  }
  for (int a = 0; a < n; ++a)
    if (!p.up.test(a, a))
      fail("NotAPartialOrder", cat("missing reflexive pair (", a, ",", a, ")"));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (a != b && p.up.test(a, b) && p.up.test(b, a))
        fail("NotAPartialOrder",
             cat("asymmetry violated: ", a, " <= ", b, " and ", b, " <= ", a));
    }
  // a <= b forces up-row(b) within up-row(a); a failure pinpoints a triple.
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (p.up.test(a, b) && !p.up.row_subset(b, a)) {
        for (int c = 0; c < n; ++c)
          if (p.up.test(b, c) && !p.up.test(a, c))
            fail("NotAPartialOrder",
                 cat("transitivity violated on (", a, ",", b, ",", c, ")"));
        fail("NotAPartialOrder", cat("transitivity violated at (", a, ",", b, ")"));
      }
  p.down = BitRows(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (p.up.test(a, b)) p.down.set(b, a);
  return p;
}

class FinSupLattice {
 public:
  FinSupLattice() = default;

  // Validates completeness on top of an already-validated partial order and
  // precomputes the join/meet tables.
  explicit FinSupLattice(FinPoset poset) : n_(poset.n), up_(std::move(poset.up)),
                                           down_(std::move(poset.down)) {
    if (n_ > kDenseTableGuard)
      fail("CarrierTooLarge",
           cat("lattice with ", n_, " elements exceeds the dense-table guard ",
               kDenseTableGuard));
    // Linear extension by rank: x before y whenever x < y. The least element
    // of an upper-bound set, if it exists, is its first member in this order.
    rank_order_.resize(n_);
    std::iota(rank_order_.begin(), rank_order_.end(), 0);
    std::vector<int> down_size(n_);
    for (int a = 0; a < n_; ++a) {
      int s = 0;
      for (int w = 0; w < down_.words(); ++w) s += popcount(down_.row(a)[w]);
      down_size[a] = s;
    }
    std::stable_sort(rank_order_.begin(), rank_order_.end(),
                     [&](int a, int b) { return down_size[a] < down_size[b]; });

    const int w = up_.words();
    std::vector<Mask> buf(w);
    join_.assign(static_cast<std::size_t>(n_) * n_, -1);
    for (int a = 0; a < n_; ++a)
      for (int b = a; b < n_; ++b) {
        for (int k = 0; k < w; ++k) buf[k] = up_.row(a)[k] & up_.row(b)[k];
        int least = first_in_rank_order(buf);
        if (least < 0 || !subset_of_row(buf, up_, least))
          fail("NotComplete",
               cat("the pair {", a, ",", b, "} has no unique least upper bound"));
        join_[a * n_ + b] = join_[b * n_ + a] = least;
      }
    // Bottom is the empty join; with all binary joins present a finite
    // lattice has one exactly when some element lies below everything.
    bottom_ = -1;
    for (int a = 0; a < n_; ++a) {
      bool least = true;
      for (int b = 0; b < n_ && least; ++b) least = up_.test(a, b);
      if (least) { bottom_ = a; break; }
    }
    if (bottom_ < 0) fail("NotComplete", "the empty subset {} has no join (no bottom element)");
    top_ = bottom_;
    for (int a = 0; a < n_; ++a) top_ = join(top_, a);

    // Meets exist automatically now (join of the lower bounds); a failure here
    // would contradict completeness, so it is a postcondition.
    meet_.assign(static_cast<std::size_t>(n_) * n_, -1);
    for (int a = 0; a < n_; ++a)
      for (int b = a; b < n_; ++b) {
        for (int k = 0; k < w; ++k) buf[k] = down_.row(a)[k] & down_.row(b)[k];
        int greatest = last_in_rank_order(buf);
        require(greatest >= 0 && subset_of_row(buf, down_, greatest),
                cat("derived meet missing for pair {", a, ",", b, "}"));
        meet_[a * n_ + b] = meet_[b * n_ + a] = greatest;
      }

    // x is join-irreducible exactly when the join of everything strictly
    // below x stays strictly below x.
    for (int x = 0; x < n_; ++x) {
      if (x == bottom_) continue;
      int acc = bottom_;
      for (int y = 0; y < n_; ++y)
        if (y != x && leq(y, x)) acc = join(acc, y);
      if (acc != x) irreducibles_.push_back(x);
    }
    // Join density of the irreducibles is a theorem for finite lattices.
    for (int a = 0; a < n_; ++a) {
      int acc = bottom_;
      for (int j : irreducibles_)
        if (leq(j, a)) acc = join(acc, j);
      require(acc == a, cat("join-irreducibles fail to generate element ", a));
    }
  }

  int size() const { return n_; }
  bool leq(int a, int b) const { return up_.test(a, b); }
  int join(int a, int b) const { return join_[a * n_ + b]; }
  int meet(int a, int b) const { return meet_[a * n_ + b]; }
  int bottom() const { return bottom_; }
  int top() const { return top_; }

  int join_all(const std::vector<int>& xs) const {
    int acc = bottom_;
    for (int x : xs) acc = join(acc, x);
    return acc;
  }
  int meet_all(const std::vector<int>& xs) const {
    int acc = top_;
    for (int x : xs) acc = meet(acc, x);
    return acc;
  }

  const std::vector<int>& irreducibles() const { return irreducibles_; }
  const BitRows& up_rows() const { return up_; }
  const BitRows& down_rows() const { return down_; }

  bool operator==(const FinSupLattice& o) const {
    if (n_ != o.n_) return false;
    for (int a = 0; a < n_; ++a)
      for (int b = 0; b < n_; ++b)
        if (leq(a, b) != o.leq(a, b)) return false;
    return true;
  }

 private:
  int first_in_rank_order(const std::vector<Mask>& set) const {
    for (int x : rank_order_)
      if ((set[x / 64] >> (x % 64)) & 1u) return x;
    return -1;
  }
  int last_in_rank_order(const std::vector<Mask>& set) const {
    for (auto it = rank_order_.rbegin(); it != rank_order_.rend(); ++it)
      if ((set[*it / 64] >> (*it % 64)) & 1u) return *it;
    return -1;
  }
  static bool subset_of_row(const std::vector<Mask>& set, const BitRows& rows,
                            int r) {
    const Mask* row = rows.row(r);
    for (std::size_t k = 0; k < set.size(); ++k)
      if (set[k] & ~row[k]) return false;
    return true;
  }

  int n_ = 0;
  int bottom_ = 0, top_ = 0;
  BitRows up_, down_;
  std::vector<int> rank_order_;
  std::vector<int> join_, meet_;
  std::vector<int> irreducibles_;
};

inline FinSupLattice build_lattice(
    int n, const std::vector<std::pair<int, int>>& leq_pairs) {
  return FinSupLattice(validate_partial_order(n, leq_pairs));
}

// Downset completion of a poset: every downward-closed subset, the empty set
// included, ordered by inclusion. Elements come out sorted by their bitmask
// value, which makes serialization and golden comparisons deterministic.
struct DownsetLattice {
  FinSupLattice lattice;
  std::vector<Mask> sets;        // element index -> subset of the poset
  std::vector<int> principal;    // poset element p -> index of its downset
  std::unordered_map<Mask, int> index;  // inverse of `sets`
};

inline constexpr std::size_t kDefaultDownsetCap = std::size_t{1} << 20;

inline DownsetLattice downset_lattice(const FinPoset& p,
                                      std::size_t cap = kDefaultDownsetCap) {
  if (p.n > 64)
    fail("CarrierTooLarge",
         cat("downset enumeration needs a poset of at most 64 elements, got ",
             p.n));
  std::vector<Mask> strict_down(p.n, 0);
  for (int a = 0; a < p.n; ++a)
    for (int b = 0; b < p.n; ++b)
      if (b != a && p.up.test(b, a)) strict_down[a] |= mask_bit(b);

  // Breadth-first growth by single minimal elements reaches every downset.
  std::vector<Mask> all;
  std::unordered_map<Mask, int> seen;
  all.push_back(0);
  seen.emplace(0, 0);
  for (std::size_t head = 0; head < all.size(); ++head) {
    Mask u = all[head];
    for (int q = 0; q < p.n; ++q) {
      if (mask_test(u, q)) continue;
      if ((strict_down[q] & ~u) != 0) continue;
      Mask v = u | mask_bit(q);
      if (seen.emplace(v, 1).second) {
        all.push_back(v);
        if (all.size() > cap)
          fail("CarrierTooLarge",
               cat("poset of size ", p.n, " has more than ", cap, " downsets"));
      }
    }
  }
  std::sort(all.begin(), all.end());

  DownsetLattice out;
  out.sets = all;
  for (std::size_t i = 0; i < all.size(); ++i)
    out.index.emplace(all[i], static_cast<int>(i));
  const int m = static_cast<int>(all.size());
  FinPoset order;
  order.n = m;
  order.up = BitRows(m, m);
  order.down = BitRows(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if ((all[i] & ~all[j]) == 0) { order.up.set(i, j); order.down.set(j, i); }
  out.lattice = FinSupLattice(std::move(order));
  out.principal.resize(p.n);
  for (int q = 0; q < p.n; ++q)
    out.principal[q] = out.index.at(strict_down[q] | mask_bit(q));
  return out;
}

// A monotone map between two lattices; construction rejects anything that
// fails x <= y => f(x) <= f(y).
struct MonotoneMap {
  FinSupLattice dom, cod;
  std::vector<int> map;

  MonotoneMap(FinSupLattice d, FinSupLattice c, std::vector<int> m)
      : dom(std::move(d)), cod(std::move(c)), map(std::move(m)) {
    if (static_cast<int>(map.size()) != dom.size())
      fail("NotMonotone", cat("map has ", map.size(), " entries for a domain of ",
                              dom.size(), " elements"));
    for (int v : map)
      if (v < 0 || v >= cod.size())
        fail("NotMonotone", cat("value ", v, " outside codomain"));
    for (int a = 0; a < dom.size(); ++a)
      for (int b = 0; b < dom.size(); ++b)
        if (dom.leq(a, b) && !cod.leq(map[a], map[b]))
          fail("NotMonotone",
               cat(a, " <= ", b, " but f(", a, ") = ", map[a], " is not below f(",
                   b, ") = ", map[b]));
  }

  int operator()(int x) const { return map[x]; }
};

// Witness for a join-preservation failure: either the empty join (bottom not
// sent to bottom) or a two-element subset.
inline void check_join_preserving(const MonotoneMap& f) {
  if (f(f.dom.bottom()) != f.cod.bottom())
    fail("NotJoinPreserving",
         cat("empty join: f(bottom) = ", f(f.dom.bottom()), " is not the bottom ",
             f.cod.bottom()));
  for (int a = 0; a < f.dom.size(); ++a)
    for (int b = a + 1; b < f.dom.size(); ++b)
      if (f(f.dom.join(a, b)) != f.cod.join(f(a), f(b)))
        fail("NotJoinPreserving",
             cat("subset {", a, ",", b, "}: f(", a, " v ", b, ") = ",
                 f(f.dom.join(a, b)), " but f(", a, ") v f(", b, ") = ",
                 f.cod.join(f(a), f(b))));
}

// Right adjoint of a join-preserving map: g(y) is the largest x with
// f(x) <= y. The defining equivalence f(x) <= y <=> x <= g(y) is re-checked
// exhaustively before returning.
inline MonotoneMap right_adjoint(const MonotoneMap& f) {
  check_join_preserving(f);
  std::vector<int> g(f.cod.size());
  for (int y = 0; y < f.cod.size(); ++y) {
    int acc = f.dom.bottom();
    for (int x = 0; x < f.dom.size(); ++x)
      if (f.cod.leq(f(x), y)) acc = f.dom.join(acc, x);
    g[y] = acc;
  }
  MonotoneMap adj(f.cod, f.dom, std::move(g));
  for (int x = 0; x < f.dom.size(); ++x)
    for (int y = 0; y < f.cod.size(); ++y)
      require(f.cod.leq(f(x), y) == f.dom.leq(x, adj(y)),
              cat("adjunction law fails at x = ", x, ", y = ", y));
  return adj;
}

// Closure operator on a lattice: monotone, inflationary, idempotent.
struct ClosureOp {
  FinSupLattice lat;
  std::vector<int> map;

  ClosureOp(FinSupLattice l, std::vector<int> m)
      : lat(std::move(l)), map(std::move(m)) {
    if (static_cast<int>(map.size()) != lat.size())
      fail("NotAClosure", "map size does not match the carrier");
    for (int x = 0; x < lat.size(); ++x) {
      if (map[x] < 0 || map[x] >= lat.size())
        fail("NotAClosure", cat("value ", map[x], " out of range"));
      if (!lat.leq(x, map[x]))
        fail("NotAClosure", cat("not inflationary at ", x));
    }
    for (int x = 0; x < lat.size(); ++x)
      if (map[map[x]] != map[x])
        fail("NotAClosure", cat("not idempotent at ", x));
    for (int x = 0; x < lat.size(); ++x)
      for (int y = 0; y < lat.size(); ++y)
        if (lat.leq(x, y) && !lat.leq(map[x], map[y]))
          fail("NotAClosure", cat("not monotone on pair (", x, ",", y, ")"));
  }

  int operator()(int x) const { return map[x]; }
};

// The fixed points of a closure operator form a complete lattice whose join
// is j(x v y); the surjection x -> j(x) preserves all joins onto it.
struct ClosureQuotient {
  FinSupLattice lattice;         // on the fixed points
  std::vector<int> fixed;        // quotient index -> original element
  std::vector<int> project;      // original element -> quotient index
};

inline ClosureQuotient closure_quotient(const ClosureOp& j) {
  ClosureQuotient out;
  for (int x = 0; x < j.lat.size(); ++x)
    if (j(x) == x) out.fixed.push_back(x);
  const int m = static_cast<int>(out.fixed.size());
  FinPoset order;
  order.n = m;
  order.up = BitRows(m, m);
  order.down = BitRows(m, m);
  for (int i = 0; i < m; ++i)
    for (int k = 0; k < m; ++k)
      if (j.lat.leq(out.fixed[i], out.fixed[k])) {
        order.up.set(i, k);
        order.down.set(k, i);
      }
  out.lattice = FinSupLattice(std::move(order));
  std::unordered_map<int, int> back;
  for (int i = 0; i < m; ++i) back.emplace(out.fixed[i], i);
  out.project.resize(j.lat.size());
  for (int x = 0; x < j.lat.size(); ++x) out.project[x] = back.at(j(x));
  // The projection must preserve joins: j(x v y) is the quotient join.
  for (int x = 0; x < j.lat.size(); ++x)
    for (int y = 0; y < j.lat.size(); ++y) {
      int lhs = out.project[j.lat.join(x, y)];
      int rhs = out.lattice.join(out.project[x], out.project[y]);
      require(lhs == rhs, cat("closure projection breaks the join of ", x,
                              " and ", y));
    }
  return out;
}

// Frame check: binary meets distribute over binary joins (the empty join
// distributes trivially, and finite folding extends this to all joins). A
// finite lattice satisfies this exactly when every join-irreducible p is
// join-prime, i.e. p <= a v b forces p <= a or p <= b; a prime failure
// (p, a, b) is itself a distributivity witness because an irreducible cannot
// be the join of the two strictly smaller elements p ^ a and p ^ b.
struct FrameReport {
  bool is_frame = true;
  std::array<int, 3> witness{-1, -1, -1};  // (a, b, c) with a^(bvc) != (a^b)v(a^c)
};

inline FrameReport check_frame(const FinSupLattice& L) {
  FrameReport rep;
  for (int p : L.irreducibles())
    for (int a = 0; a < L.size(); ++a)
      for (int b = a + 1; b < L.size(); ++b)
        if (L.leq(p, L.join(a, b)) && !L.leq(p, a) && !L.leq(p, b)) {
          rep.is_frame = false;
          rep.witness = {p, a, b};
          require(L.meet(p, L.join(a, b)) !=
                      L.join(L.meet(p, a), L.meet(p, b)),
                  "extracted frame witness does not violate distributivity");
          return rep;
        }
  return rep;
}

inline std::vector<int> join_irreducibles(const FinSupLattice& L) {
  return L.irreducibles();
}

// Injectivity of a finite-meet/all-join preserving map is decided by its
// restriction to any down-closed join-dense subset; both answers are computed
// and must coincide.
struct BasisInjectivityReport {
  bool injective_on_basis = false;
  bool injective = false;
};

inline BasisInjectivityReport check_basis_injectivity(
    const MonotoneMap& h, const std::vector<int>& basis) {
  const FinSupLattice& L = h.dom;
  std::vector<char> in_basis(L.size(), 0);
  for (int b : basis) {
    if (b < 0 || b >= L.size()) fail("BasisNotDownClosed", cat("element ", b, " out of range"));
    in_basis[b] = 1;
  }
  for (int b : basis)
    for (int x = 0; x < L.size(); ++x)
      if (L.leq(x, b) && !in_basis[x])
        fail("BasisNotDownClosed",
             cat(x, " lies below basis element ", b, " but is not in the basis"));
  for (int a = 0; a < L.size(); ++a) {
    int acc = L.bottom();
    for (int b : basis)
      if (L.leq(b, a)) acc = L.join(acc, b);
    if (acc != a)
      fail("BasisNotJoinDense", cat("element ", a, " is not a join of basis elements"));
  }
  check_join_preserving(h);
  for (int a = 0; a < L.size(); ++a)
    for (int b = a + 1; b < L.size(); ++b)
      if (h(L.meet(a, b)) != h.cod.meet(h(a), h(b)))
        fail("NotAFrameHomomorphism",
             cat("binary meet of ", a, " and ", b, " is not preserved"));

  BasisInjectivityReport rep;
  rep.injective_on_basis = true;
  for (std::size_t i = 0; i < basis.size() && rep.injective_on_basis; ++i)
    for (std::size_t k = i + 1; k < basis.size(); ++k)
      if (basis[i] != basis[k] && h(basis[i]) == h(basis[k])) {
        rep.injective_on_basis = false;
        break;
      }
  rep.injective = true;
  for (int a = 0; a < L.size() && rep.injective; ++a)
    for (int b = a + 1; b < L.size(); ++b)
      if (h(a) == h(b)) {
        rep.injective = false;
        break;
      }
  require(rep.injective_on_basis == rep.injective,
          "injectivity on a down-closed basis must decide global injectivity");
  return rep;
}

}  // namespace qgk

#endif  // QGK_LATTICE_HPP_
