#pragma once

// JSON documents: group descriptors, filtrations, inertia models, characters as
// multiplicity vectors against the computed table, local and global data, and the
// versioned corpus. Every parse error is an input_error naming the offending field.

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "wdcond/character_table.hpp"
#include "wdcond/cyclotomic.hpp"
#include "wdcond/error.hpp"
#include "wdcond/global_conductor.hpp"
#include "wdcond/group.hpp"
#include "wdcond/rational.hpp"
#include "wdcond/weil_deligne.hpp"

namespace wdcond::io {

using json = nlohmann::json;

inline constexpr int corpus_version = 1;

[[noreturn]] inline void bad(const std::string& path, const std::string& msg) {
  fail(ErrorKind::input_error, (path.empty() ? std::string("document") : path) + ": " + msg);
}

inline const json& field(const json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) bad(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) bad(path, "missing field \"" + key + "\"");
  return *it;
}

inline std::string child(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }
inline std::string child(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

inline std::int64_t as_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) bad(path, "expected an integer");
  return j.get<std::int64_t>();
}

inline std::int64_t int_field(const json& j, const std::string& key, const std::string& path) {
  return as_int(field(j, key, path), child(path, key));
}

inline Rational as_rational(const json& j, const std::string& path) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (!j.is_string()) bad(path, "expected an integer or a \"p/q\" string");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const Error& e) {
    bad(path, e.what());
  }
}

inline json to_json(const Rational& q) { return to_fraction_string(q); }

inline json to_json(const CycloNum& x) {
  json coeffs = json::array();
  for (const auto& c : x.coeffs()) coeffs.push_back(to_fraction_string(c));
  return {{"N", x.conductor()}, {"coeffs", coeffs}};
}

inline json to_json(const GroupSpec& s) {
  json j{{"kind", s.kind}};
  if (s.kind == "cyclic" || s.kind == "dihedral") j["n"] = s.n;
  if (s.kind == "elementary_abelian") {
    j["p"] = s.p;
    j["k"] = s.k;
  }
  if (s.kind == "heisenberg" || s.kind == "affine") j["p"] = s.p;
  if (s.kind == "direct_product") {
    j["factors"] = json::array();
    for (const auto& f : s.factors) j["factors"].push_back(to_json(f));
  }
  return j;
}

inline GroupSpec group_spec_from_json(const json& j, const std::string& path) {
  const json& kind_j = field(j, "kind", path);
  if (!kind_j.is_string()) bad(child(path, "kind"), "expected a string");
  const std::string kind = kind_j.get<std::string>();
  if (kind == "cyclic") return GroupSpec::cyclic(int_field(j, "n", path));
  if (kind == "dihedral") return GroupSpec::dihedral(int_field(j, "n", path));
  if (kind == "elementary_abelian") return GroupSpec::elementary_abelian(int_field(j, "p", path), int_field(j, "k", path));
  if (kind == "quaternion8") return GroupSpec::quaternion8();
  if (kind == "heisenberg") return GroupSpec::heisenberg(int_field(j, "p", path));
  if (kind == "affine") return GroupSpec::affine(int_field(j, "p", path));
  if (kind == "direct_product") {
    const json& fs = field(j, "factors", path);
    if (!fs.is_array() || fs.empty()) bad(child(path, "factors"), "expected a nonempty array");
    std::vector<GroupSpec> out;
    for (std::size_t i = 0; i < fs.size(); ++i) out.push_back(group_spec_from_json(fs[i], child(child(path, "factors"), i)));
    return GroupSpec::direct_product(std::move(out));
  }
  bad(child(path, "kind"), "unknown group kind \"" + kind + "\"");
}

/// Builds (or reuses) the group; construction errors are reported against the path.
inline GroupPtr group_from_json(const json& j, const std::string& path) {
  const GroupSpec spec = group_spec_from_json(j, path);
  try {
    return shared_group(spec);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::input_error) throw;
    fail(e.kind(), path + ": " + e.what());
  }
}

/// "G", "1", "center" or {"gens": [elements]}.
inline Subgroup subgroup_from_json(const GroupPtr& g, const json& j, const std::string& path) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "G") return whole_group(g);
    if (s == "1") return trivial_subgroup(g);
    if (s == "center") return center(g);
    bad(path, "unknown subgroup name \"" + s + "\" (expected G, 1, center or {\"gens\": [...]})");
  }
  const json& gens = field(j, "gens", path);
  if (!gens.is_array()) bad(child(path, "gens"), "expected an array of element indices");
  std::vector<Element> elems;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const auto x = as_int(gens[i], child(child(path, "gens"), i));
    if (x < 0 || x >= static_cast<std::int64_t>(g->order()))
      bad(child(child(path, "gens"), i), "element " + std::to_string(x) + " out of range for order " + std::to_string(g->order()));
    elems.push_back(static_cast<Element>(x));
  }
  return subgroup_generated(g, elems);
}

inline json to_json(const Subgroup& h) {
  if (h.is_whole()) return "G";
  if (h.is_trivial()) return "1";
  return {{"gens", h.elements()}};
}

/// {"group": spec, "chain": [subgroups]}; the chain is validated as a filtration.
inline Filtration filtration_from_json(const json& j, const std::string& path) {
  const GroupPtr g = group_from_json(field(j, "group", path), child(path, "group"));
  const json& chain = field(j, "chain", path);
  if (!chain.is_array() || chain.empty()) bad(child(path, "chain"), "expected a nonempty array");
  std::vector<Subgroup> subs;
  for (std::size_t i = 0; i < chain.size(); ++i) subs.push_back(subgroup_from_json(g, chain[i], child(child(path, "chain"), i)));
  try {
    return make_filtration(g, std::move(subs));
  } catch (const Error& e) {
    fail(e.kind(), child(path, "chain") + ": " + e.what());
  }
}

inline json to_json(const Filtration& f) {
  const auto& spec = f.parent()->spec();
  require(spec.has_value(), ErrorKind::invalid_argument, "only groups built from descriptors serialize");
  json chain = json::array();
  for (const auto& h : f.chain()) chain.push_back(to_json(h));
  return {{"group", to_json(*spec)}, {"chain", chain}};
}

/// Filtration document plus "p".
inline ModelPtr model_from_json(const json& j, const std::string& path) {
  Filtration f = filtration_from_json(j, path);
  const std::int64_t p = int_field(j, "p", path);
  try {
    return make_model(std::move(f), p);
  } catch (const Error& e) {
    fail(e.kind(), child(path, "p") + ": " + e.what());
  }
}

inline json to_json(const InertiaModel& m) {
  json j = to_json(m.filtration());
  j["p"] = m.residue_char();
  return j;
}

/// Multiplicities against the table ordering printed by `table`.
inline Character character_from_json(const GroupPtr& g, const json& j, const std::string& path) {
  const auto table = character_table(g);
  if (!j.is_array()) bad(path, "expected an array of multiplicities");
  if (j.size() != table->size())
    bad(path, "expected " + std::to_string(table->size()) + " multiplicities, got " + std::to_string(j.size()));
  std::vector<std::int64_t> mults;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto m = as_int(j[i], child(path, i));
    if (m < 0) bad(child(path, i), "multiplicity must be nonnegative");
    mults.push_back(m);
  }
  return table->combine(mults);
}

inline json to_json(const Character& chi) { return character_table(chi.group_ptr())->decompose(chi); }

inline AbVarDatum abvar_from_json(const ModelPtr& model, const json& j, const std::string& path) {
  const GroupPtr& g = model->group();
  const Character tau = character_from_json(g, field(j, "tau", path), child(path, "tau"));
  const Character sigma = character_from_json(g, field(j, "sigma", path), child(path, "sigma"));
  try {
    return AbVarDatum::make(model, tau, sigma);
  } catch (const Error& e) {
    fail(e.kind(), path + ": " + e.what());
  }
}

inline json to_json(const AbVarDatum& a) { return {{"tau", to_json(a.tau())}, {"sigma", to_json(a.sigma())}}; }

struct LocalDatum {
  ModelPtr model;
  AbVarDatum a;
  AbVarDatum b;
};

/// {"model": {...}, "A": {"tau", "sigma"}, "B": {...}}
inline LocalDatum local_datum_from_json(const json& j, const std::string& path = "") {
  ModelPtr model = model_from_json(field(j, "model", path), child(path, "model"));
  AbVarDatum a = abvar_from_json(model, field(j, "A", path), child(path, "A"));
  AbVarDatum b = abvar_from_json(model, field(j, "B", path), child(path, "B"));
  return {model, std::move(a), std::move(b)};
}

inline json to_json(const LocalDatum& d) { return {{"model", to_json(*d.model)}, {"A", to_json(d.a)}, {"B", to_json(d.b)}}; }

/// {"dimA", "dimB", "primes": [{"p", "mode": "summary", "v_A", "v_B", "deg_A", "deg_B", "deg_AB"}
///                             | {"p", "mode": "full", "model", "A", "B"}]}
inline GlobalDatum global_datum_from_json(const json& j, const std::string& path = "") {
  GlobalDatum d;
  d.dim_a = int_field(j, "dimA", path);
  d.dim_b = int_field(j, "dimB", path);
  if (d.dim_a < 1) bad(child(path, "dimA"), "must be positive");
  if (d.dim_b < 1) bad(child(path, "dimB"), "must be positive");
  const json& primes = field(j, "primes", path);
  if (!primes.is_array()) bad(child(path, "primes"), "expected an array");
  for (std::size_t i = 0; i < primes.size(); ++i) {
    const std::string at = child(child(path, "primes"), i);
    const json& rec = primes[i];
    PrimeRecord r;
    r.prime = int_field(rec, "p", at);
    if (r.prime < 2) bad(child(at, "p"), "prime labels must be >= 2");
    const json& mode = field(rec, "mode", at);
    if (mode == "summary") {
      PrimeSummary s;
      s.v_a = int_field(rec, "v_A", at);
      s.v_b = int_field(rec, "v_B", at);
      s.deg_a = int_field(rec, "deg_A", at);
      s.deg_b = int_field(rec, "deg_B", at);
      s.deg_ab = rec.contains("deg_AB") ? int_field(rec, "deg_AB", at) : -1;
      r.data = s;
    } else if (mode == "full") {
      LocalDatum l = local_datum_from_json(rec, at);
      r.data = PrimeLocal{std::move(l.a), std::move(l.b)};
    } else {
      bad(child(at, "mode"), "expected \"summary\" or \"full\"");
    }
    d.primes.push_back(std::move(r));
  }
  return d;
}

inline json to_json(const GlobalDatum& d) {
  json primes = json::array();
  for (const auto& rec : d.primes) {
    json r{{"p", rec.prime}};
    if (const auto* s = std::get_if<PrimeSummary>(&rec.data)) {
      r["mode"] = "summary";
      r["v_A"] = s->v_a;
      r["v_B"] = s->v_b;
      r["deg_A"] = s->deg_a;
      r["deg_B"] = s->deg_b;
      if (s->deg_ab >= 0) r["deg_AB"] = s->deg_ab;
    } else {
      const auto& l = std::get<PrimeLocal>(rec.data);
      r = json{{"p", rec.prime}, {"mode", "full"}, {"model", to_json(*l.a.model())}, {"A", to_json(l.a)}, {"B", to_json(l.b)}};
    }
    primes.push_back(std::move(r));
  }
  return {{"dimA", d.dim_a}, {"dimB", d.dim_b}, {"primes", primes}};
}

inline json to_json(const FactoredInteger& n) {
  json j = json::object();
  for (const auto& [p, e] : n.factors()) j[std::to_string(p)] = e;
  return j;
}

struct CorpusFiltration {
  std::string name;
  Filtration filtration;
};

struct CorpusModel {
  std::string name;
  ModelPtr model;
};

struct Corpus {
  int version = corpus_version;
  std::vector<CorpusFiltration> filtrations;
  std::vector<CorpusModel> models;
};

inline Corpus corpus_from_json(const json& j) {
  Corpus c;
  const json& v = field(j, "version", "");
  if (!v.is_number_integer() || v.get<int>() != corpus_version)
    bad("version", "unsupported corpus version " + v.dump() + " (expected " + std::to_string(corpus_version) + ")");
  auto name_of = [](const json& e, const std::string& at) {
    const json& n = field(e, "name", at);
    if (!n.is_string()) bad(child(at, "name"), "expected a string");
    return n.get<std::string>();
  };
  const json& fs = field(j, "filtrations", "");
  if (!fs.is_array()) bad("filtrations", "expected an array");
  for (std::size_t i = 0; i < fs.size(); ++i) {
    const std::string at = child("filtrations", i);
    c.filtrations.push_back({name_of(fs[i], at), filtration_from_json(fs[i], at)});
  }
  const json& ms = field(j, "models", "");
  if (!ms.is_array()) bad("models", "expected an array");
  for (std::size_t i = 0; i < ms.size(); ++i) {
    const std::string at = child("models", i);
    c.models.push_back({name_of(ms[i], at), model_from_json(ms[i], at)});
  }
  return c;
}

/// Reads and parses a JSON file; syntax errors carry the line and column.
inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::input_error, "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return json::parse(buf.str());
  } catch (const json::parse_error& e) {
    fail(ErrorKind::input_error, path + ": " + e.what());
  }
}

inline Corpus load_corpus(const std::string& path) { return corpus_from_json(read_json_file(path)); }

}  // namespace wdcond::io
