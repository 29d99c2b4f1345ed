// JSON envelopes for the five structure kinds. Every serializer emits one
// {"kind": ...} object with deterministic field order and sorted set
// representations, so golden-file comparisons are byte-exact; every parser
// funnels shape problems into Malformed and hands algebraic problems to the
// validators of the owning module.

#ifndef QGK_IO_HPP_
#define QGK_IO_HPP_

#include <array>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qgk/base.hpp"
#include "qgk/groupoid.hpp"
#include "qgk/invsemi.hpp"
#include "qgk/lattice.hpp"
#include "qgk/quantale.hpp"

namespace qgk {

using Json = nlohmann::ordered_json;

namespace detail {

inline const Json& json_field(const Json& j, const char* name) {
  if (!j.is_object()) fail("Malformed", "expected a JSON object");
  auto it = j.find(name);
  if (it == j.end()) fail("Malformed", cat("missing field \"", name, "\""));
  return *it;
}

inline int json_int(const Json& j, const char* what) {
  if (!j.is_number_integer())
    fail("Malformed", cat(what, " must be an integer"));
  return j.get<int>();
}

inline std::vector<int> json_int_array(const Json& j, const char* what) {
  if (!j.is_array()) fail("Malformed", cat(what, " must be an array"));
  std::vector<int> out;
  out.reserve(j.size());
  for (const Json& v : j) out.push_back(json_int(v, what));
  return out;
}

// n rows of n integers, flattened row-major.
inline std::vector<int> json_table(const Json& j, int n, const char* what) {
  if (!j.is_array() || static_cast<int>(j.size()) != n)
    fail("Malformed", cat(what, " must be an array of ", n, " rows"));
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(n) * n);
  for (const Json& row : j) {
    std::vector<int> r = json_int_array(row, what);
    if (static_cast<int>(r.size()) != n)
      fail("Malformed", cat("every row of ", what, " must have ", n, " entries"));
    out.insert(out.end(), r.begin(), r.end());
  }
  return out;
}

inline Json table_json(const std::vector<int>& t, int n) {
  Json rows = Json::array();
  for (int a = 0; a < n; ++a) {
    Json row = Json::array();
    for (int b = 0; b < n; ++b) row.push_back(t[a * n + b]);
    rows.push_back(std::move(row));
  }
  return rows;
}

inline void expect_kind(const Json& j, const char* kind) {
  const Json& k = json_field(j, "kind");
  if (!k.is_string() || k.get<std::string>() != kind)
    fail("Malformed", cat("expected kind \"", kind, "\""));
}

}  // namespace detail

inline std::string structure_kind(const Json& j) {
  const Json& k = detail::json_field(j, "kind");
  if (!k.is_string()) fail("Malformed", "field \"kind\" must be a string");
  return k.get<std::string>();
}

// Lattices travel as the full order relation, reflexive pairs included, in
// lexicographic order; joins are implicit.
inline Json lattice_to_json(const FinSupLattice& L) {
  Json j;
  j["kind"] = "lattice";
  j["size"] = L.size();
  Json pairs = Json::array();
  for (int a = 0; a < L.size(); ++a)
    for (int b = 0; b < L.size(); ++b)
      if (L.leq(a, b)) pairs.push_back(Json::array({a, b}));
  j["leq"] = std::move(pairs);
  return j;
}

inline FinSupLattice lattice_from_json(const Json& j) {
  detail::expect_kind(j, "lattice");
  int n = detail::json_int(detail::json_field(j, "size"), "size");
  const Json& lp = detail::json_field(j, "leq");
  if (!lp.is_array()) fail("Malformed", "leq must be an array of pairs");
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(lp.size());
  for (const Json& p : lp) {
    if (!p.is_array() || p.size() != 2)
      fail("Malformed", "every leq entry must be a pair");
    pairs.emplace_back(detail::json_int(p[0], "leq entry"),
                       detail::json_int(p[1], "leq entry"));
    auto [a, b] = pairs.back();
    if (a < 0 || a >= n || b < 0 || b >= n)
      fail("Malformed", cat("leq entry (", a, ", ", b, ") out of range"));
  }
  return build_lattice(n, pairs);
}

inline Json quantale_to_json(const FinQuantale& q) {
  Json j;
  j["kind"] = "quantale";
  j["size"] = q.size();
  j["leq"] = lattice_to_json(q.lat)["leq"];
  j["mult"] = detail::table_json(q.mult, q.size());
  j["inv"] = q.inv;
  j["unit"] = q.unit;
  return j;
}

inline FinQuantale quantale_from_json(const Json& j) {
  detail::expect_kind(j, "quantale");
  Json lj;
  lj["kind"] = "lattice";
  lj["size"] = detail::json_field(j, "size");
  lj["leq"] = detail::json_field(j, "leq");
  FinSupLattice lat = lattice_from_json(lj);
  std::vector<int> mult =
      detail::json_table(detail::json_field(j, "mult"), lat.size(), "mult");
  std::vector<int> inv =
      detail::json_int_array(detail::json_field(j, "inv"), "inv");
  int unit = detail::json_int(detail::json_field(j, "unit"), "unit");
  for (int v : mult)
    if (v < 0 || v >= lat.size())
      fail("Malformed", cat("mult entry ", v, " out of range"));
  if (static_cast<int>(inv.size()) != lat.size())
    fail("Malformed", "inv must cover every element");
  for (int v : inv)
    if (v < 0 || v >= lat.size())
      fail("Malformed", cat("inv entry ", v, " out of range"));
  if (unit < 0 || unit >= lat.size())
    fail("Malformed", cat("unit ", unit, " out of range"));
  return check_quantale_axioms(std::move(lat), std::move(mult), std::move(inv),
                               unit);
}

inline Json invsemi_to_json(const FinInverseSemigroup& s) {
  Json j;
  j["kind"] = "invsemi";
  j["size"] = s.n;
  j["mult"] = detail::table_json(s.mult, s.n);
  if (s.unit >= 0) j["unit"] = s.unit;
  return j;
}

inline FinInverseSemigroup invsemi_from_json(const Json& j) {
  detail::expect_kind(j, "invsemi");
  int n = detail::json_int(detail::json_field(j, "size"), "size");
  if (n <= 0) fail("Malformed", "size must be positive");
  std::vector<int> mult =
      detail::json_table(detail::json_field(j, "mult"), n, "mult");
  for (int v : mult)
    if (v < 0 || v >= n) fail("Malformed", cat("mult entry ", v, " out of range"));
  int unit = -1;
  if (j.contains("unit")) unit = detail::json_int(j["unit"], "unit");
  if (unit >= n) fail("Malformed", cat("unit ", unit, " out of range"));
  return validate_inverse_semigroup(n, std::move(mult), unit);
}

inline Json groupoid_to_json(const FinGroupoid& g) {
  Json j;
  j["kind"] = "groupoid";
  j["arrows"] = g.n;
  j["units"] = g.units;
  j["dom"] = g.dom;
  j["cod"] = g.cod;
  Json comp = Json::array();
  for (int x = 0; x < g.n; ++x)
    for (int y = 0; y < g.n; ++y)
      if (g.composable(x, y)) comp.push_back(Json::array({x, y, g.m(x, y)}));
  j["comp"] = std::move(comp);
  j["inv"] = g.inv;
  return j;
}

inline FinGroupoid groupoid_from_json(const Json& j) {
  detail::expect_kind(j, "groupoid");
  int n = detail::json_int(detail::json_field(j, "arrows"), "arrows");
  std::vector<int> units =
      detail::json_int_array(detail::json_field(j, "units"), "units");
  std::vector<int> dom =
      detail::json_int_array(detail::json_field(j, "dom"), "dom");
  std::vector<int> cod =
      detail::json_int_array(detail::json_field(j, "cod"), "cod");
  std::vector<int> inv =
      detail::json_int_array(detail::json_field(j, "inv"), "inv");
  const Json& cj = detail::json_field(j, "comp");
  if (!cj.is_array()) fail("Malformed", "comp must be an array of triples");
  std::vector<std::array<int, 3>> comp;
  comp.reserve(cj.size());
  for (const Json& t : cj) {
    if (!t.is_array() || t.size() != 3)
      fail("Malformed", "every comp entry must be a triple");
    comp.push_back({detail::json_int(t[0], "comp entry"),
                    detail::json_int(t[1], "comp entry"),
                    detail::json_int(t[2], "comp entry")});
  }
  return validate_groupoid(n, std::move(units), std::move(dom), std::move(cod),
                           comp, std::move(inv));
}

inline Json topgroupoid_to_json(const FinTopGroupoid& tg) {
  Json j;
  j["kind"] = "topgroupoid";
  j["groupoid"] = groupoid_to_json(tg.g);
  Json opens = Json::array();
  for (Mask o : tg.opens) {
    Json s = Json::array();
    for (int x : mask_elems(o)) s.push_back(x);
    opens.push_back(std::move(s));
  }
  j["opens"] = std::move(opens);
  return j;
}

inline FinTopGroupoid topgroupoid_from_json(const Json& j) {
  detail::expect_kind(j, "topgroupoid");
  FinGroupoid g = groupoid_from_json(detail::json_field(j, "groupoid"));
  const Json& oj = detail::json_field(j, "opens");
  if (!oj.is_array()) fail("Malformed", "opens must be an array of sets");
  std::vector<Mask> opens;
  opens.reserve(oj.size());
  for (const Json& s : oj) {
    std::vector<int> elems = detail::json_int_array(s, "open set");
    Mask m = 0;
    for (int x : elems) {
      if (x < 0 || x >= 64) fail("Malformed", cat("open set entry ", x, " out of range"));
      m |= mask_bit(x);
    }
    opens.push_back(m);
  }
  return validate_topgroupoid(g, opens);
}

// File plumbing shared by the CLI and the golden tests. Parse errors carry
// the byte position reported by the JSON parser.
inline Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("Malformed", cat("cannot open ", path));
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    fail("Malformed", e.what());
  }
}

namespace detail {

inline bool is_leaf_array(const Json& j) {
  if (!j.is_array()) return false;
  for (const Json& e : j)
    if (e.is_array() || e.is_object()) return false;
  return true;
}

// Two-space indentation with arrays of scalars kept on one line, so table
// rows and index pairs stay readable and files stay small.
inline void dump_json_rec(const Json& j, int depth, std::string& out) {
  const std::string pad(2 * static_cast<std::size_t>(depth), ' ');
  const std::string inner(2 * static_cast<std::size_t>(depth + 1), ' ');
  if (j.is_object()) {
    if (j.empty()) {
      out += "{}";
      return;
    }
    out += "{\n";
    bool first = true;
    for (const auto& [key, value] : j.items()) {
      if (!first) out += ",\n";
      first = false;
      out += inner;
      out += Json(key).dump();
      out += ": ";
      dump_json_rec(value, depth + 1, out);
    }
    out += "\n";
    out += pad;
    out += "}";
  } else if (j.is_array() && !is_leaf_array(j)) {
    if (j.empty()) {
      out += "[]";
      return;
    }
    out += "[\n";
    bool first = true;
    for (const Json& e : j) {
      if (!first) out += ",\n";
      first = false;
      out += inner;
      dump_json_rec(e, depth + 1, out);
    }
    out += "\n";
    out += pad;
    out += "]";
  } else {
    out += j.dump();
  }
}

}  // namespace detail

inline std::string dump_json(const Json& j) {
  std::string out;
  detail::dump_json_rec(j, 0, out);
  out += "\n";
  return out;
}

inline void write_text_file(const std::string& path, const std::string& body) {
  std::ofstream out(path);
  if (!out) fail("Malformed", cat("cannot open ", path, " for writing"));
  out << body;
}

}  // namespace qgk

#endif  // QGK_IO_HPP_
