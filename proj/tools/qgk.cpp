// Command-line surface for the library: validate structure files and report
// where they sit in the quantale hierarchy, run the constructions between
// inverse semigroups, quantales and groupoids, verify the round trips,
// search for separating examples, and run the built-in fixture corpus.
//
// Exit codes: 0 all checks/expectations met, 1 a check failed, 2 malformed
// input (unparseable file, wrong kind, bad command line).

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <qgk/corpus.hpp>
#include <qgk/io.hpp>
#include <qgk/search.hpp>

namespace {

using qgk::cat;
using qgk::CorpusStructure;
using qgk::Error;
using qgk::FinGroupoid;
using qgk::FinInverseSemigroup;
using qgk::FinQuantale;
using qgk::FinSupLattice;
using qgk::FinTopGroupoid;
using qgk::Json;

bool g_json = false;
int g_cap = 0;  // 0 = library defaults; set by --cap or QGK_CAP

int int_cap(int fallback) { return g_cap > 0 ? g_cap : fallback; }
std::size_t size_cap(std::size_t fallback) {
  return g_cap > 0 ? static_cast<std::size_t>(g_cap) : fallback;
}

const char* yes_no(bool b) { return b ? "yes" : "no"; }

// A report is an ordered list of key/value rows; the text form prints one
// row per line and the JSON form is the same rows as an ordered object.
using Report = std::vector<std::pair<std::string, std::string>>;

void emit_report(const std::string& command, const std::string& kind,
                 const Report& rows, bool pass) {
  if (g_json) {
    Json j;
    j["command"] = command;
    if (!kind.empty()) j["kind"] = kind;
    Json body = Json::object();
    for (const auto& [k, v] : rows) body[k] = v;
    j["report"] = std::move(body);
    j["pass"] = pass;
    std::cout << qgk::dump_json(j);
  } else {
    for (const auto& [k, v] : rows) std::cout << k << ": " << v << "\n";
  }
}

// ---------------------------------------------------------------------------
// Structure parsing shared by the verbs.

std::string kind_of(const Json& j) { return qgk::structure_kind(j); }

CorpusStructure parse_structure(const Json& j, const std::string& kind) {
  if (kind == "lattice") return qgk::lattice_from_json(j);
  if (kind == "quantale") return qgk::quantale_from_json(j);
  if (kind == "invsemi") return qgk::invsemi_from_json(j);
  if (kind == "groupoid") return qgk::groupoid_from_json(j);
  if (kind == "topgroupoid") return qgk::topgroupoid_from_json(j);
  qgk::fail("Malformed", cat("unknown structure kind \"", kind, "\""));
}

Json structure_to_json(const CorpusStructure& st) {
  if (const auto* L = std::get_if<FinSupLattice>(&st))
    return qgk::lattice_to_json(*L);
  if (const auto* q = std::get_if<FinQuantale>(&st))
    return qgk::quantale_to_json(*q);
  if (const auto* s = std::get_if<FinInverseSemigroup>(&st))
    return qgk::invsemi_to_json(*s);
  if (const auto* g = std::get_if<FinGroupoid>(&st))
    return qgk::groupoid_to_json(*g);
  return qgk::topgroupoid_to_json(std::get<FinTopGroupoid>(st));
}

// ---------------------------------------------------------------------------
// check: hierarchy reports.

void describe_lattice(const FinSupLattice& L, Report& rows) {
  rows.push_back({"lattice", "yes"});
  rows.push_back({"size", cat(L.size())});
  qgk::FrameReport fr = qgk::check_frame(L);
  rows.push_back({"frame", fr.is_frame
                               ? std::string("yes")
                               : cat("no (meet fails to distribute at (",
                                     fr.witness[0], ", ", fr.witness[1], ", ",
                                     fr.witness[2], "))")});
  rows.push_back({"join-irreducibles", cat(L.irreducibles().size())});
}

void describe_quantale(const FinQuantale& q, Report& rows) {
  rows.push_back({"quantale", "yes"});
  rows.push_back({"size", cat(q.size())});
  rows.push_back({"unit", cat(q.unit)});

  bool candidate = qgk::has_candidate_support(q);
  std::optional<qgk::SupportMap> support;
  if (candidate) support = qgk::candidate_support(q);
  int count = -1;
  const int search_cap = int_cap(qgk::kSupportSearchCap);
  if (q.size() <= search_cap) {
    std::vector<qgk::SupportMap> all =
        qgk::find_supports_exhaustive(q, search_cap);
    count = static_cast<int>(all.size());
    if (!support && !all.empty()) support = all.front();
  }
  if (support)
    rows.push_back({"supported", count >= 0
                                     ? cat("yes (supports: ", count, ")")
                                     : std::string("yes (canonical candidate)")});
  else if (count == 0)
    rows.push_back({"supported", "no"});
  else
    rows.push_back({"supported", cat("unknown (carrier exceeds the exhaustive "
                                     "cap ", search_cap, ")")});
  bool stable = candidate && qgk::candidate_support(q).stable;
  rows.push_back({"stable support", yes_no(stable)});
  if (support) {
    qgk::StabilityReport st = qgk::stability_conditions_report(q, *support);
    int held = 0;
    for (bool c : st.conditions) held += c;
    rows.push_back({"stability conditions", cat(held, "/11")});
  }

  qgk::FrameReport fr = qgk::check_frame(q.lat);
  rows.push_back({"frame", fr.is_frame
                               ? std::string("yes")
                               : cat("no (meet fails to distribute at (",
                                     fr.witness[0], ", ", fr.witness[1], ", ",
                                     fr.witness[2], "))")});
  bool sqf = qgk::check_stable_quantal_frame(q);
  rows.push_back({"stable quantal frame", yes_no(sqf)});

  if (!sqf) {
    rows.push_back({"multiplicative", "n/a"});
  } else {
    qgk::MultiplicativityReport m = qgk::check_multiplicative(q);
    rows.push_back(
        {"multiplicative",
         m.multiplicative
             ? std::string("yes")
             : cat("no (the preimage of the join of ", m.c, " and ", m.d,
                   " misses the pair (", m.missing.first, ", ",
                   m.missing.second, "))")});
    rows.push_back({"tensor adjunction", yes_no(qgk::check_adjunction(q))});
  }

  qgk::PartialUnitSet pu = qgk::partial_units(q);
  rows.push_back({"partial units", cat(pu.members.size())});
  rows.push_back({"join of partial units is top",
                  yes_no(qgk::check_inversion_laws(q).ipi_join_is_top)});
  qgk::InverseQuantaleReport iq = qgk::check_inverse_quantale(q);
  rows.push_back({"inverse quantale",
                  iq.inverse ? std::string("yes")
                             : cat("no (element ", iq.witness,
                                   " is not a join of partial units)")});
  rows.push_back(
      {"inverse quantal frame", yes_no(qgk::check_inverse_quantal_frame(q))});
}

void describe_invsemi(const FinInverseSemigroup& s, Report& rows) {
  rows.push_back({"inverse semigroup", "yes"});
  rows.push_back({"size", cat(s.n)});
  rows.push_back({"monoid", s.unit >= 0 ? cat("yes (unit ", s.unit, ")")
                                        : std::string("no")});
  rows.push_back({"idempotents", cat(qgk::idempotent_elements(s).size())});
  bool complete = qgk::check_complete(s);
  bool distributive = qgk::check_infinitely_distributive(s);
  rows.push_back({"complete", yes_no(complete)});
  rows.push_back({"infinitely distributive", yes_no(distributive)});
  rows.push_back({"abstract complete pseudogroup",
                  yes_no(complete && distributive && s.unit >= 0)});
}

void describe_groupoid(const FinGroupoid& g, Report& rows) {
  rows.push_back({"groupoid", "yes"});
  rows.push_back({"arrows", cat(g.n)});
  rows.push_back({"units", cat(g.units.size())});
}

void describe_etale(const FinTopGroupoid& tg, Report& rows) {
  rows.push_back({"topological groupoid", "yes"});
  rows.push_back({"arrows", cat(tg.g.n)});
  rows.push_back({"units", cat(tg.g.units.size())});
  rows.push_back({"opens", cat(tg.opens.size())});
  qgk::EtaleReport er = qgk::check_etale_conditions(tg);
  rows.push_back({"units open", yes_no(er.units_open)});
  rows.push_back({"dom an open map", yes_no(er.dom_open)});
  rows.push_back({"dom a local homeomorphism", yes_no(er.local_homeo)});
  rows.push_back(
      {"opens closed under pointwise products", yes_no(er.product_closed)});
  rows.push_back({"U(full arrow set) open", yes_no(er.ug_open)});
  rows.push_back({"U(U inverse) open", yes_no(er.uui_open)});
  rows.push_back({"etale", yes_no(er.etale)});
  if (er.units_open) {
    rows.push_back({"open partial bijections", cat(er.gset_cover.size())});
    rows.push_back({"frobenius identity", yes_no(er.frobenius)});
  }
  std::string quantal = "yes";
  try {
    qgk::topology_quantale(tg);
  } catch (const Error& e) {
    if (e.code() != "NotQuantalTopology") throw;
    quantal = cat("no (", e.detail(), ")");
  }
  rows.push_back({"opens form a quantale", quantal});
}

void describe(const CorpusStructure& st, Report& rows) {
  if (const auto* L = std::get_if<FinSupLattice>(&st))
    describe_lattice(*L, rows);
  else if (const auto* q = std::get_if<FinQuantale>(&st))
    describe_quantale(*q, rows);
  else if (const auto* s = std::get_if<FinInverseSemigroup>(&st))
    describe_invsemi(*s, rows);
  else if (const auto* g = std::get_if<FinGroupoid>(&st))
    describe_groupoid(*g, rows);
  else
    describe_etale(std::get<FinTopGroupoid>(st), rows);
}

const char* validity_label(const std::string& kind) {
  if (kind == "lattice") return "lattice";
  if (kind == "quantale") return "quantale";
  if (kind == "invsemi") return "inverse semigroup";
  if (kind == "groupoid") return "groupoid";
  return "topological groupoid";
}

// Files may embed an "expected" object of check-name -> verdict pairs in the
// same vocabulary the corpus uses; mismatches flip the exit code to 1.
int run_expectations(const CorpusStructure& st, const Json& j, Report& rows) {
  if (!j.contains("expected")) return 0;
  const Json& e = j.at("expected");
  if (!e.is_object())
    qgk::fail("Malformed", "expected must be an object of check -> verdict");
  int failures = 0;
  for (const auto& [check, want] : e.items()) {
    if (!want.is_string())
      qgk::fail("Malformed", cat("expected verdict for \"", check,
                                 "\" must be a string"));
    std::string actual;
    try {
      actual = qgk::corpus_evaluate(st, check);
    } catch (const Error& err) {
      actual = cat("error ", err.code(), ": ", err.detail());
    }
    const std::string wanted = want.template get<std::string>();
    bool ok = actual == wanted;
    failures += !ok;
    rows.push_back({cat("expectation ", check),
                    ok ? cat("met (", actual, ")")
                       : cat("FAILED (expected \"", wanted, "\", got \"",
                             actual, "\")")});
  }
  return failures;
}

int cmd_check(const std::string& kind_arg, const std::string& path) {
  Json j = qgk::load_json_file(path);
  const std::string kind = kind_arg == "etale" ? "topgroupoid" : kind_arg;
  const std::string declared = kind_of(j);
  if (declared != kind)
    qgk::fail("Malformed",
              cat("expected a ", kind, " file, found kind \"", declared, "\""));
  Report rows;
  CorpusStructure st;
  try {
    st = parse_structure(j, kind);
  } catch (const Error& e) {
    if (e.code() == "Malformed") throw;
    rows.push_back(
        {validity_label(kind), cat("no (", e.code(), ": ", e.detail(), ")")});
    emit_report("check", kind, rows, false);
    return 1;
  }
  describe(st, rows);
  int failures = run_expectations(st, j, rows);
  emit_report("check", kind, rows, failures == 0);
  return failures == 0 ? 0 : 1;
}

// ---------------------------------------------------------------------------
// build: the constructions.

std::vector<std::vector<int>> parse_classes(const std::string& text, int n) {
  std::vector<std::vector<int>> classes;
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t semi = text.find(';', pos);
    if (semi == std::string::npos) semi = text.size();
    std::string part = text.substr(pos, semi - pos);
    std::vector<int> cls;
    std::size_t p = 0;
    while (p <= part.size()) {
      std::size_t comma = part.find(',', p);
      if (comma == std::string::npos) comma = part.size();
      std::string tok = part.substr(p, comma - p);
      if (!tok.empty()) {
        int value = 0;
        try {
          std::size_t used = 0;
          value = std::stoi(tok, &used);
          if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
          qgk::fail("Malformed", cat("class entry \"", tok,
                                     "\" is not an integer"));
        }
        if (value < 0 || value >= n)
          qgk::fail("Malformed",
                    cat("class entry ", value, " out of range for a carrier "
                        "of ", n, " elements"));
        if (seen[static_cast<std::size_t>(value)])
          qgk::fail("Malformed",
                    cat("element ", value, " appears in two classes"));
        seen[static_cast<std::size_t>(value)] = 1;
        cls.push_back(value);
      }
      if (comma == part.size()) break;
      p = comma + 1;
    }
    if (!cls.empty()) classes.push_back(std::move(cls));
    if (semi == text.size()) break;
    pos = semi + 1;
  }
  for (int x = 0; x < n; ++x)
    if (!seen[static_cast<std::size_t>(x)]) classes.push_back({x});
  // Canonical order: members ascending within a class, classes by least
  // member, so the result does not depend on how the classes were typed.
  for (std::vector<int>& cls : classes) std::sort(cls.begin(), cls.end());
  std::sort(classes.begin(), classes.end(),
            [](const std::vector<int>& a, const std::vector<int>& b) {
              return a.front() < b.front();
            });
  return classes;
}

std::string groupoid_dot(const FinGroupoid& g) {
  std::string out = "digraph groupoid {\n  rankdir=LR;\n";
  for (int u : g.units) out += cat("  n", u, " [shape=doublecircle];\n");
  for (int x = 0; x < g.n; ++x) {
    bool unit = false;
    for (int u : g.units) unit = unit || u == x;
    out += cat("  n", g.dom[x], " -> n", g.cod[x], " [label=\"", x, "\"",
               unit ? ", style=dashed" : "", "];\n");
  }
  out += "}\n";
  return out;
}

void expect_kind_for(const std::string& construction, const std::string& need,
                     const std::string& got) {
  if (need != got)
    qgk::fail("Malformed", cat("construction ", construction, " expects a ",
                               need, " file, found kind \"", got, "\""));
}

int cmd_build(const std::string& construction, const std::string& from,
              const std::string& out_path, const std::string& dot_path,
              const std::string& classes_arg) {
  if (!dot_path.empty() && construction != "GQ")
    qgk::fail("Malformed", "--dot applies only to the GQ construction");
  if (!classes_arg.empty() && construction != "quotient")
    qgk::fail("Malformed", "--classes applies only to the quotient "
                           "construction");
  Json j = qgk::load_json_file(from);
  const std::string declared = kind_of(j);
  Json out;
  if (construction == "L" || construction == "Lvee") {
    expect_kind_for(construction, "invsemi", declared);
    FinInverseSemigroup s = qgk::invsemi_from_json(j);
    FinQuantale q =
        construction == "L"
            ? qgk::downset_quantale(s, size_cap(qgk::kDefaultDownsetCap))
                  .quantale
            : qgk::enveloping_quantale(s, size_cap(qgk::kEnvelopeCap)).quantale;
    out = qgk::quantale_to_json(q);
  } else if (construction == "PG") {
    expect_kind_for(construction, "groupoid", declared);
    FinGroupoid g = qgk::groupoid_from_json(j);
    out = qgk::quantale_to_json(
        qgk::powerset_quantale(g, int_cap(qgk::kPowersetCap)));
  } else if (construction == "OG") {
    expect_kind_for(construction, "topgroupoid", declared);
    FinTopGroupoid tg = qgk::topgroupoid_from_json(j);
    out = qgk::quantale_to_json(qgk::topology_quantale(tg));
  } else if (construction == "GQ") {
    expect_kind_for(construction, "quantale", declared);
    FinQuantale q = qgk::quantale_from_json(j);
    FinTopGroupoid tg =
        qgk::groupoid_of_quantale(q, size_cap(qgk::kDefaultDownsetCap));
    if (!dot_path.empty()) qgk::write_text_file(dot_path, groupoid_dot(tg.g));
    out = qgk::topgroupoid_to_json(tg);
  } else if (construction == "ipi") {
    expect_kind_for(construction, "quantale", declared);
    FinQuantale q = qgk::quantale_from_json(j);
    out = qgk::invsemi_to_json(qgk::ipi_monoid(q).monoid);
  } else {
    expect_kind_for(construction, "quantale", declared);
    FinQuantale q = qgk::quantale_from_json(j);
    if (classes_arg.empty())
      qgk::fail("Malformed", "the quotient construction needs --classes");
    qgk::QuantaleQuotient quot =
        qgk::quantale_quotient(q, parse_classes(classes_arg, q.size()));
    out = qgk::quantale_to_json(quot.quantale);
  }
  std::string body = qgk::dump_json(out);
  if (out_path.empty())
    std::cout << body;
  else
    qgk::write_text_file(out_path, body);
  return 0;
}

// ---------------------------------------------------------------------------
// roundtrip: the duality verbs.

struct TripResult {
  std::string trip;
  bool pass = false;
  std::string detail;
};

TripResult trip_eta(const FinInverseSemigroup& s) {
  qgk::EtaReport r = qgk::eta(s);
  if (r.iso)
    return {"eta", true,
            cat("embedded onto the partial units of the ",
                r.envelope.quantale.size(), "-element envelope")};
  return {"eta", false,
          cat("the principal-downset map into the ",
              r.envelope.quantale.size(),
              "-element envelope is not an isomorphism onto the partial "
              "units")};
}

TripResult trip_epsilon(const FinQuantale& q) {
  qgk::EpsilonReport r = qgk::epsilon(q);
  if (r.iso)
    return {"epsilon", true,
            cat("envelope of the partial units rebuilt all ", q.size(),
                " elements isomorphically")};
  if (r.envelope.quantale.size() != q.size())
    return {"epsilon", false,
            cat("size mismatch ", r.envelope.quantale.size(), " vs ",
                q.size())};
  return {"epsilon", false, "the join map is not an isomorphism"};
}

TripResult trip_atoms(const FinQuantale& q) {
  FinGroupoid g = qgk::recover_groupoid_from_atoms(q);
  FinQuantale p = qgk::powerset_quantale(g, int_cap(qgk::kPowersetCap));
  // Arrow i of the recovered groupoid is the i-th atom in element order, and
  // powerset elements are indexed by arrow masks, so the canonical
  // comparison map is explicit: an element goes to the mask of atoms below
  // it.  It is an isomorphism exactly when the powerset round trip closes.
  std::vector<int> atoms;
  for (int x = 0; x < q.size(); ++x) {
    if (x == q.zero()) continue;
    bool minimal = true;
    for (int y = 0; y < q.size() && minimal; ++y)
      if (y != x && y != q.zero() && q.leq(y, x)) minimal = false;
    if (minimal) atoms.push_back(x);
  }
  if (q.size() != p.size())
    return {"atoms", false,
            cat("the powerset of the ", g.n,
                "-arrow recovered groupoid has ", p.size(), " elements vs ",
                q.size())};
  std::vector<int> map(static_cast<std::size_t>(q.size()), 0);
  std::vector<char> hit(static_cast<std::size_t>(p.size()), 0);
  bool ok = true;
  for (int x = 0; x < q.size() && ok; ++x) {
    int mask = 0;
    for (std::size_t i = 0; i < atoms.size(); ++i)
      if (q.leq(atoms[i], x)) mask |= 1 << i;
    map[static_cast<std::size_t>(x)] = mask;
    ok = !hit[static_cast<std::size_t>(mask)];
    hit[static_cast<std::size_t>(mask)] = 1;
  }
  if (ok && q.unit >= 0) ok = map[static_cast<std::size_t>(q.unit)] == p.unit;
  for (int a = 0; a < q.size() && ok; ++a) {
    ok = p.star(map[static_cast<std::size_t>(a)]) ==
         map[static_cast<std::size_t>(q.star(a))];
    for (int b = 0; b < q.size() && ok; ++b) {
      ok = p.leq(map[static_cast<std::size_t>(a)],
                 map[static_cast<std::size_t>(b)]) == q.leq(a, b) &&
           p.times(map[static_cast<std::size_t>(a)],
                   map[static_cast<std::size_t>(b)]) ==
               map[static_cast<std::size_t>(q.times(a, b))];
    }
  }
  if (ok)
    return {"atoms", true,
            cat("recovered a ", g.n, "-arrow groupoid whose powerset matches "
                "the quantale atom-for-atom")};
  return {"atoms", false,
          "the atom map into the recovered powerset is not an isomorphism"};
}

TripResult trip_groupoid(const FinGroupoid& g) {
  FinQuantale p = qgk::powerset_quantale(g, int_cap(qgk::kPowersetCap));
  if (!qgk::check_inverse_quantal_frame(p))
    return {"groupoid", false,
            "the powerset quantale is not an inverse quantal frame"};
  FinGroupoid back = qgk::recover_groupoid_from_atoms(p);
  if (back == g)
    return {"groupoid", true,
            cat("the ", p.size(),
                "-element powerset quantale recovered the groupoid exactly")};
  return {"groupoid", false,
          "the atoms of the powerset quantale rebuild a different groupoid"};
}

TripResult trip_topology(const FinTopGroupoid& tg) {
  qgk::EtaleReport er = qgk::check_etale_conditions(tg);
  if (!er.etale)
    return {"topology", false,
            "the topology is not etale, so the opens do not form an inverse "
            "quantal frame"};
  FinQuantale q = qgk::topology_quantale(tg);
  qgk::EpsilonReport r = qgk::epsilon(q);
  if (r.iso)
    return {"topology", true,
            cat("the ", q.size(), "-element quantale of opens is rebuilt "
                "isomorphically from its partial units")};
  return {"topology", false,
          cat("the quantale of opens is not recovered (envelope ",
              r.envelope.quantale.size(), " vs ", q.size(), ")")};
}

int cmd_roundtrip(const std::string& which, const std::string& path) {
  Json j = qgk::load_json_file(path);
  const std::string declared = kind_of(j);
  std::vector<std::string> trips;
  if (which == "auto") {
    if (declared == "invsemi")
      trips = {"eta"};
    else if (declared == "quantale")
      trips = {"epsilon", "atoms"};
    else if (declared == "groupoid")
      trips = {"groupoid"};
    else if (declared == "topgroupoid")
      trips = {"topology"};
    else
      qgk::fail("Malformed",
                cat("no round trip applies to kind \"", declared, "\""));
  } else {
    const std::string need = which == "eta"        ? "invsemi"
                             : which == "groupoid" ? "groupoid"
                             : which == "topology" ? "topgroupoid"
                                                   : "quantale";
    if (declared != need)
      qgk::fail("Malformed", cat("round trip ", which, " expects a ", need,
                                 " file, found kind \"", declared, "\""));
    trips = {which};
  }

  CorpusStructure st = parse_structure(j, declared);
  std::vector<TripResult> results;
  for (const std::string& trip : trips) {
    TripResult r;
    try {
      if (trip == "eta")
        r = trip_eta(std::get<FinInverseSemigroup>(st));
      else if (trip == "epsilon")
        r = trip_epsilon(std::get<FinQuantale>(st));
      else if (trip == "atoms")
        r = trip_atoms(std::get<FinQuantale>(st));
      else if (trip == "groupoid")
        r = trip_groupoid(std::get<FinGroupoid>(st));
      else
        r = trip_topology(std::get<FinTopGroupoid>(st));
    } catch (const Error& e) {
      if (e.code() == "Malformed") throw;
      r = {trip, false, cat("error ", e.code(), ": ", e.detail())};
    }
    results.push_back(std::move(r));
  }

  bool all = true;
  for (const TripResult& r : results) all = all && r.pass;
  if (g_json) {
    Json out;
    out["command"] = "roundtrip";
    out["kind"] = declared;
    Json arr = Json::array();
    for (const TripResult& r : results) {
      Json t;
      t["trip"] = r.trip;
      t["pass"] = r.pass;
      t["detail"] = r.detail;
      arr.push_back(std::move(t));
    }
    out["trips"] = std::move(arr);
    out["pass"] = all;
    std::cout << qgk::dump_json(out);
  } else {
    for (const TripResult& r : results) {
      std::cout << "trip: " << r.trip << "\n";
      std::cout << "verdict: " << (r.pass ? "PASS" : "FAIL") << "\n";
      std::cout << "detail: " << r.detail << "\n";
    }
  }
  return all ? 0 : 1;
}

// ---------------------------------------------------------------------------
// search: bounded enumeration for separating examples.

int cmd_search(const std::string& target_name, int max_size) {
  std::optional<qgk::SearchTarget> target =
      qgk::parse_search_target(target_name);
  if (!target)
    qgk::fail("Malformed", cat("unknown search target \"", target_name, "\""));
  std::vector<FinQuantale> found = qgk::search_quantales(*target, max_size);
  if (g_json) {
    Json out;
    out["command"] = "search";
    out["target"] = target_name;
    out["max_size"] = max_size;
    out["found"] = found.size();
    Json arr = Json::array();
    for (const FinQuantale& q : found) arr.push_back(qgk::quantale_to_json(q));
    out["witnesses"] = std::move(arr);
    std::cout << qgk::dump_json(out);
  } else {
    std::cout << "target: " << target_name << "\n";
    std::cout << "max size: " << max_size << "\n";
    std::cout << "found: " << found.size() << "\n";
    for (std::size_t i = 0; i < found.size(); ++i) {
      std::cout << "witness " << i + 1 << ": size " << found[i].size() << "\n";
      std::cout << qgk::dump_json(qgk::quantale_to_json(found[i]));
    }
  }
  return 0;
}

// ---------------------------------------------------------------------------
// corpus: the built-in fixtures plus the cross-module invariant sweeps.

qgk::CorpusFixtureResult identity_sweep() {
  qgk::CorpusFixtureResult r;
  r.name = "identity-suite";
  r.provenance = "enumeration";
  r.tags = {"invariant", "quantale", "support"};
  std::vector<qgk::NamedQuantale> pool = qgk::corpus_supported_quantales();
  int violations = 0;
  std::string first;
  for (const qgk::NamedQuantale& nq : pool) {
    qgk::SupportMap s;
    if (qgk::has_candidate_support(nq.q)) {
      s = qgk::candidate_support(nq.q);
    } else {
      std::vector<qgk::SupportMap> all = qgk::find_supports_exhaustive(nq.q);
      if (all.empty()) {
        ++violations;
        if (first.empty()) first = nq.name;
        continue;
      }
      s = all.front();
    }
    if (!qgk::derived_identities_report(nq.q, s).all_hold) {
      ++violations;
      if (first.empty()) first = nq.name;
    }
  }
  qgk::CorpusCheckResult c;
  c.check = cat("derived identities over ", pool.size(),
                " supported quantales");
  c.expected = "0 violations";
  c.actual = violations == 0 ? std::string("0 violations")
                             : cat(violations, " violations (first: ", first,
                                   ")");
  c.pass = violations == 0;
  r.pass = c.pass;
  r.checks.push_back(std::move(c));
  return r;
}

qgk::CorpusFixtureResult roundtrip_sweep() {
  qgk::CorpusFixtureResult r;
  r.name = "roundtrip-suite";
  r.provenance = "enumeration";
  r.tags = {"invariant", "groupoid"};
  int bad = 0, total = 0;
  for (const FinGroupoid& g : qgk::groupoid_corpus(3)) {
    ++total;
    FinQuantale p = qgk::powerset_quantale(g);
    if (!qgk::check_inverse_quantal_frame(p) ||
        !(qgk::recover_groupoid_from_atoms(p) == g))
      ++bad;
  }
  qgk::CorpusCheckResult c;
  c.check = cat("powerset and atom recovery over ", total,
                " labeled groupoids");
  c.expected = "0 failures";
  c.actual = bad == 0 ? std::string("0 failures") : cat(bad, " failures");
  c.pass = bad == 0;
  r.pass = c.pass;
  r.checks.push_back(std::move(c));
  return r;
}

bool has_tag(const std::vector<std::string>& tags, const std::string& tag) {
  for (const std::string& t : tags)
    if (t == tag) return true;
  return false;
}

int cmd_corpus(const std::string& filter, const std::string& corrupt,
               const std::string& out_dir) {
  std::vector<qgk::CorpusFixture> fixtures = qgk::corpus_fixtures();
  if (!corrupt.empty()) {
    bool found = false;
    for (qgk::CorpusFixture& f : fixtures)
      if (f.name == corrupt) {
        found = true;
        if (f.expected.empty())
          qgk::fail("UnknownFixture",
                    cat("fixture ", corrupt, " has no expectations to "
                        "corrupt"));
        f.expected.front().second += " [corrupted for the test mode]";
      }
    if (!found)
      qgk::fail("UnknownFixture", cat("no fixture named \"", corrupt, "\""));
  }

  std::vector<qgk::CorpusFixtureResult> results;
  for (const qgk::CorpusFixture& f : fixtures) {
    if (!filter.empty() && !has_tag(f.tags, filter)) continue;
    if (!out_dir.empty()) {
      Json body = structure_to_json(f.structure);
      Json expected = Json::object();
      for (const auto& [check, verdict] : f.expected) expected[check] = verdict;
      body["expected"] = std::move(expected);
      body["provenance"] = f.provenance;
      body["tags"] = f.tags;
      qgk::write_text_file(cat(out_dir, "/", f.name, ".json"),
                           qgk::dump_json(body));
    }
    results.push_back(qgk::run_fixture(f));
  }
  if (filter.empty() || filter == "invariant" || filter == "quantale" ||
      filter == "support")
    results.push_back(identity_sweep());
  if (filter.empty() || filter == "invariant" || filter == "groupoid")
    results.push_back(roundtrip_sweep());

  int passed = 0, failed = 0;
  for (const qgk::CorpusFixtureResult& r : results) (r.pass ? passed : failed)++;

  if (g_json) {
    Json out;
    out["command"] = "corpus";
    if (!filter.empty()) out["filter"] = filter;
    Json arr = Json::array();
    for (const qgk::CorpusFixtureResult& r : results) {
      Json f;
      f["name"] = r.name;
      f["provenance"] = r.provenance;
      f["tags"] = r.tags;
      Json checks = Json::array();
      for (const qgk::CorpusCheckResult& c : r.checks) {
        Json cj;
        cj["check"] = c.check;
        cj["expected"] = c.expected;
        cj["actual"] = c.actual;
        cj["pass"] = c.pass;
        checks.push_back(std::move(cj));
      }
      f["checks"] = std::move(checks);
      f["pass"] = r.pass;
      arr.push_back(std::move(f));
    }
    out["fixtures"] = std::move(arr);
    out["passed"] = passed;
    out["failed"] = failed;
    out["pass"] = failed == 0;
    std::cout << qgk::dump_json(out);
  } else {
    for (const qgk::CorpusFixtureResult& r : results) {
      std::cout << (r.pass ? "PASS " : "FAIL ") << r.name << " ("
                << r.provenance << ", " << r.checks.size() << " checks)\n";
      for (const qgk::CorpusCheckResult& c : r.checks)
        if (!c.pass)
          std::cout << "  " << c.check << ": expected \"" << c.expected
                    << "\", got \"" << c.actual << "\"\n";
    }
    std::cout << "fixtures: " << results.size() << " passed: " << passed
              << " failed: " << failed << "\n";
  }
  return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite supported quantales, inverse semigroups and etale "
               "groupoids: checks, constructions, round trips, search and "
               "the fixture corpus."};
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* sub) {
    sub->add_flag("--json", g_json, "machine-readable JSON report");
    sub->add_option("--cap", g_cap, "override the default size caps")
        ->envname("QGK_CAP");
  };

  std::string check_kind, check_file;
  CLI::App* check = app.add_subcommand(
      "check", "validate a structure file and report its hierarchy position");
  check->add_option("kind", check_kind, "structure kind")
      ->required()
      ->check(CLI::IsMember(
          {"lattice", "quantale", "invsemi", "groupoid", "etale",
           "topgroupoid"}));
  check->add_option("file", check_file, "path to the JSON file")->required();
  add_common(check);

  std::string build_cons, build_from, build_out, build_dot, build_classes;
  CLI::App* build = app.add_subcommand(
      "build", "run a construction and serialize the result");
  build->add_option("construction", build_cons, "construction to run")
      ->required()
      ->check(CLI::IsMember({"L", "Lvee", "PG", "OG", "GQ", "ipi",
                             "quotient"}));
  build->add_option("--from", build_from, "source structure file")->required();
  build->add_option("--out", build_out, "output path (default: stdout)");
  build->add_option("--dot", build_dot, "DOT arrow-graph path (GQ only)");
  build->add_option("--classes", build_classes,
                    "congruence classes for quotient, e.g. \"6,7,8\" "
                    "(unlisted elements stay singletons)");
  add_common(build);

  std::string trip_which = "auto", trip_file, trip_from;
  CLI::App* roundtrip = app.add_subcommand(
      "roundtrip", "run the duality round trips for a structure file");
  roundtrip
      ->add_option("trip", trip_which, "which round trip (default: auto)")
      ->check(CLI::IsMember(
          {"auto", "eta", "epsilon", "atoms", "groupoid", "topology"}));
  roundtrip->add_option("file", trip_file, "path to the JSON file");
  roundtrip->add_option("--from", trip_from, "source structure file");
  add_common(roundtrip);

  std::string search_target;
  int search_max = 0;
  CLI::App* search = app.add_subcommand(
      "search", "enumerate quantales separating the hierarchy levels");
  search->add_option("target", search_target, "separation target")
      ->required()
      ->check(CLI::IsMember({"non-stable-support", "stable-not-multiplicative",
                             "multiplicative-not-inverse",
                             "inverse-not-frame"}));
  search->add_option("--max", search_max, "maximum carrier size")->required();
  add_common(search);

  std::string corpus_filter, corpus_corrupt, corpus_out;
  CLI::App* corpus = app.add_subcommand(
      "corpus", "run the built-in fixtures and invariant sweeps");
  corpus->add_option("--filter", corpus_filter, "only fixtures with this tag");
  corpus->add_option("--corrupt", corpus_corrupt,
                     "corrupt the named fixture's first expectation "
                     "(test mode)");
  corpus->add_option("--out", corpus_out,
                     "also write each fixture file into this directory");
  add_common(corpus);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*check) return cmd_check(check_kind, check_file);
    if (*build)
      return cmd_build(build_cons, build_from, build_out, build_dot,
                       build_classes);
    if (*roundtrip) {
      std::string path = trip_file.empty() ? trip_from : trip_file;
      if (path.empty())
        qgk::fail("Malformed", "roundtrip needs a file argument or --from");
      return cmd_roundtrip(trip_which, path);
    }
    if (*search) return cmd_search(search_target, search_max);
    return cmd_corpus(corpus_filter, corpus_corrupt, corpus_out);
  } catch (const Error& e) {
    std::cerr << "error " << e.code() << ": " << e.detail() << "\n";
    return e.code() == "Malformed" ? 2 : 1;
  }
}
