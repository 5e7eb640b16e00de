#pragma once

// Seeded property suites over the corpus. Each check yields an Outcome carrying
// both sides and a self-contained JSON description of its inputs, from which
// replay() recomputes the same sides.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "wdcond/filtration_conductor.hpp"
#include "wdcond/generators.hpp"
#include "wdcond/global_conductor.hpp"
#include "wdcond/io.hpp"
#include "wdcond/weil_deligne.hpp"

namespace wdcond::suites {

using json = io::json;

enum class Relation { eq, le, ge, even, gap };

inline std::string to_string(Relation r) {
  switch (r) {
    case Relation::eq: return "=";
    case Relation::le: return "<=";
    case Relation::ge: return ">=";
    case Relation::even: return "even";
    case Relation::gap: return "0 or >=";
  }
  return "?";
}

inline Relation relation_from_string(const std::string& s) {
  for (auto r : {Relation::eq, Relation::le, Relation::ge, Relation::even, Relation::gap})
    if (to_string(r) == s) return r;
  fail(ErrorKind::input_error, "relation: unknown relation \"" + s + "\"");
}

struct Outcome {
  std::string check;
  Relation relation = Relation::eq;
  Rational lhs, rhs;
  json inputs;

  bool ok() const {
    switch (relation) {
      case Relation::eq: return lhs == rhs;
      case Relation::le: return lhs <= rhs;
      case Relation::ge: return lhs >= rhs;
      case Relation::even: return is_integer(lhs) && to_int64(lhs) % 2 == 0;
      case Relation::gap: return lhs == 0 || lhs >= rhs;
    }
    return false;
  }
};

inline json counterexample(const std::string& suite, const Outcome& o) {
  return {{"type", "counterexample"}, {"version", io::corpus_version}, {"suite", suite},
          {"check", o.check},         {"relation", to_string(o.relation)}, {"inputs", o.inputs},
          {"lhs", io::to_json(o.lhs)}, {"rhs", io::to_json(o.rhs)}};
}

// ---------------------------------------------------------------------------
// Single checks on typed inputs.

namespace detail {

inline Outcome make(std::string check, Relation rel, Rational lhs, Rational rhs, json inputs) {
  return {std::move(check), rel, std::move(lhs), std::move(rhs), std::move(inputs)};
}

inline json pair_inputs(const Filtration& f, const Character& t1, const Character& t2) {
  return {{"filtration", io::to_json(f)}, {"tau1", io::to_json(t1)}, {"tau2", io::to_json(t2)}};
}

inline json wd_inputs(const AbVarDatum& a, const AbVarDatum& b) {
  return {{"model", io::to_json(*a.model())}, {"A", io::to_json(a)}, {"B", io::to_json(b)}};
}

inline json wdrep_to_json(const WDRep& rho) {
  json blocks = json::array();
  for (const auto& [n, sigma] : rho.blocks()) blocks.push_back({{"n", n}, {"sigma", io::to_json(sigma)}});
  return blocks;
}

inline WDRep wdrep_from_json(const ModelPtr& model, const json& j, const std::string& path) {
  if (!j.is_array()) io::bad(path, "expected an array of blocks");
  WDRep rho(model);
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string at = io::child(path, i);
    rho.add_block(io::character_from_json(model->group(), io::field(j[i], "sigma", at), io::child(at, "sigma")),
                  io::int_field(j[i], "n", at));
  }
  return rho;
}

}  // namespace detail

inline Outcome check_lemma25(const Filtration& f, std::size_t i, const Character& t1, const Character& t2) {
  const auto s = lemma_2_5_sides(t1, t2, f, i);
  json in = detail::pair_inputs(f, t1, t2);
  in["i"] = i;
  return detail::make("lemma25", Relation::eq, s.lhs, s.rhs, std::move(in));
}

/// a_i >= a_{i+1}
inline Outcome check_a_decreasing(const Filtration& f, std::size_t i, const Character& t) {
  json in{{"filtration", io::to_json(f)}, {"tau", io::to_json(t)}, {"i", i}};
  return detail::make("a_decreasing", Relation::ge, a_i(t, f, i), a_i(t, f, i + 1), std::move(in));
}

/// Delta^G >= Delta_0
inline Outcome check_delta_total(const Filtration& f, const Character& t1, const Character& t2) {
  return detail::make("delta_total", Relation::ge, delta_total(t1, t2, f), delta_i(t1, t2, f, 0),
                      detail::pair_inputs(f, t1, t2));
}

/// Delta_i >= 0. (Delta_i need not decrease in i: it can grow on passing to a smaller subgroup.)
inline Outcome check_delta_nonneg(const Filtration& f, std::size_t i, const Character& t1, const Character& t2) {
  json in = detail::pair_inputs(f, t1, t2);
  in["i"] = i;
  return detail::make("delta_nonneg", Relation::ge, delta_i(t1, t2, f, i), 0, std::move(in));
}

/// a(tau + sigma) = a(tau) + a(sigma)
inline Outcome check_additivity(const Filtration& f, const Character& t1, const Character& t2) {
  return detail::make("additivity", Relation::eq, conductor_exponent(t1 + t2, f),
                      conductor_exponent(t1, f) + conductor_exponent(t2, f), detail::pair_inputs(f, t1, t2));
}

inline Outcome check_lemma26(const Rational& m, const std::vector<Rational>& a, const std::vector<Rational>& b,
                             const std::vector<Rational>& d) {
  const auto s = lemma_2_6_sides(m, a, b, d);
  auto arr = [](const std::vector<Rational>& v) {
    json out = json::array();
    for (const auto& x : v) out.push_back(io::to_json(x));
    return out;
  };
  return detail::make("lemma26", Relation::ge, s.lhs, s.rhs,
                      {{"M", io::to_json(m)}, {"a", arr(a)}, {"b", arr(b)}, {"d", arr(d)}});
}

inline Outcome check_prop27(const Filtration& f, const Character& t1, const Character& t2) {
  const auto s = bound_symplectic(t1, t2, f);
  return detail::make("prop27", Relation::le, s.lhs, s.rhs, detail::pair_inputs(f, t1, t2));
}

inline Outcome check_prop210(const Filtration& f, std::int64_t p, const Character& t1, const Character& t2) {
  const auto s = bound_pgroup(t1, t2, f, p);
  json in = detail::pair_inputs(f, t1, t2);
  in["p"] = p;
  return detail::make("prop210", Relation::le, s.lhs, s.rhs, std::move(in));
}

/// |tau| - |tau^{G_i}| is even for symplectic tau.
inline Outcome check_lemma28(const Filtration& f, std::size_t i, const Character& t) {
  json in{{"filtration", io::to_json(f)}, {"i", i}, {"tau", io::to_json(t)}};
  return detail::make("lemma28", Relation::even, t.dim() - fixed_dim(t, f.at(i)), 0, std::move(in));
}

/// |tau| - |tau^{G_i}| in {0} or >= p-1 for rational tau on a p-group.
inline Outcome check_lemma211(const Filtration& f, std::size_t i, std::int64_t p, const Character& t) {
  require(f.parent()->is_p_group(p), ErrorKind::not_p_group, "lemma211 check needs a p-group");
  require(is_rational_charpoly(t), ErrorKind::not_rational, "lemma211 check needs a rational character");
  json in{{"filtration", io::to_json(f)}, {"i", i}, {"p", p}, {"tau", io::to_json(t)}};
  return detail::make("lemma211", Relation::gap, t.dim() - fixed_dim(t, f.at(i)), p - 1, std::move(in));
}

inline Outcome check_dual_fixed(const Filtration& f, std::size_t i, const Character& t) {
  json in{{"filtration", io::to_json(f)}, {"i", i}, {"tau", io::to_json(t)}};
  return detail::make("dual_fixed", Relation::eq, fixed_dim(t.dual(), f.at(i)), fixed_dim(t, f.at(i)), std::move(in));
}

/// a(sigma (x) sp(1)) = a(sigma)
inline Outcome check_lemma32(const ModelPtr& m, const Character& sigma) {
  json in{{"model", io::to_json(*m)}, {"sigma", io::to_json(sigma)}};
  return detail::make("lemma32", Relation::eq, artin_conductor(WDRep(m, {{sigma, 1}})),
                      conductor_exponent(sigma, m->filtration()), std::move(in));
}

/// a - Sw = sum over blocks of n a_0(sigma_n) + (n-1) |sigma_n^{G_0}|
inline Outcome check_artin_minus_swan(const WDRep& rho) {
  const auto& f = rho.model()->filtration();
  Rational tame = 0;
  for (const auto& [n, sigma] : rho.blocks()) tame += Rational(n * a_i(sigma, f, 0) + (n - 1) * fixed_dim(sigma, f.at(0)));
  json in{{"model", io::to_json(*rho.model())}, {"rho", detail::wdrep_to_json(rho)}};
  return detail::make("artin_minus_swan", Relation::eq, artin_conductor(rho) - swan_conductor(rho), tame, std::move(in));
}

/// a((sigma, n) (x) (1, m)) against nm a(sigma) + |sigma^{G_0}| (nm - min(n, m))
inline Outcome check_lemma33(const ModelPtr& m, const Character& sigma, std::int64_t n, std::int64_t k) {
  const WDRep prod = tensor(WDRep(m, {{sigma, n}}), WDRep(m, {{Character::trivial(m->group()), k}}));
  const Rational closed = Rational(n * k) * conductor_exponent(sigma, m->filtration()) +
                          Rational(fixed_dim(sigma, m->inertia()) * (n * k - std::min(n, k)));
  json in{{"model", io::to_json(*m)}, {"sigma", io::to_json(sigma)}, {"n", n}, {"m", k}};
  return detail::make("lemma33", Relation::eq, artin_conductor(prod), closed, std::move(in));
}

inline Outcome check_cg_sum(std::int64_t n, std::int64_t m) {
  const auto ks = clebsch_gordan(n, m);
  std::int64_t sum = 0;
  for (auto k : ks) sum += k;
  return detail::make("cg_sum", Relation::eq, sum, n * m, {{"n", n}, {"m", m}});
}

inline Outcome check_cg_len(std::int64_t n, std::int64_t m) {
  return detail::make("cg_len", Relation::eq, static_cast<std::int64_t>(clebsch_gordan(n, m).size()), std::min(n, m),
                      {{"n", n}, {"m", m}});
}

/// rho1 (x) rho2 = rho2 (x) rho1 as block multisets, and dimensions multiply.
inline Outcome check_tensor_commutes(const WDRep& r1, const WDRep& r2) {
  json in{{"model", io::to_json(*r1.model())}, {"rho1", detail::wdrep_to_json(r1)}, {"rho2", detail::wdrep_to_json(r2)}};
  return detail::make("tensor_commutes", Relation::eq, tensor(r1, r2) == tensor(r2, r1) ? 1 : 0, 1, std::move(in));
}

inline Outcome check_tensor_associates(const WDRep& r1, const WDRep& r2, const WDRep& r3) {
  json in{{"model", io::to_json(*r1.model())},
          {"rho1", detail::wdrep_to_json(r1)},
          {"rho2", detail::wdrep_to_json(r2)},
          {"rho3", detail::wdrep_to_json(r3)}};
  return detail::make("tensor_associates", Relation::eq, tensor(tensor(r1, r2), r3) == tensor(r1, tensor(r2, r3)) ? 1 : 0,
                      1, std::move(in));
}

inline Outcome check_tensor_dim(const WDRep& r1, const WDRep& r2) {
  json in{{"model", io::to_json(*r1.model())}, {"rho1", detail::wdrep_to_json(r1)}, {"rho2", detail::wdrep_to_json(r2)}};
  return detail::make("tensor_dim", Relation::eq, tensor(r1, r2).dim(), r1.dim() * r2.dim(), std::move(in));
}

inline Outcome check_thm34(const AbVarDatum& a, const AbVarDatum& b) {
  const auto s = semistable_equality(a, b);
  return detail::make("thm34", Relation::eq, s.lhs, s.rhs, detail::wd_inputs(a, b));
}

inline Outcome check_thm34_closed(const AbVarDatum& a, const AbVarDatum& b) {
  return detail::make("thm34_closed", Relation::eq, artin_conductor(tensor(a.rho(), b.rho())),
                      semistable_closed_form(a, b), detail::wd_inputs(a, b));
}

/// Good reduction: a(rho_A (x) rho_B) = dim rho_A a(rho_B).
inline Outcome check_good_reduction(const AbVarDatum& a, const AbVarDatum& b) {
  require(artin_conductor(a.rho()) == 0, ErrorKind::precondition, "A must have good reduction");
  return detail::make("good_reduction", Relation::eq, artin_conductor(tensor(a.rho(), b.rho())),
                      Rational(a.dim()) * artin_conductor(b.rho()), detail::wd_inputs(a, b));
}

inline Outcome check_thm35(const AbVarDatum& a, const AbVarDatum& b) {
  const auto s = swan_bound(a, b);
  return detail::make("thm35", Relation::le, s.lhs, s.rhs, detail::wd_inputs(a, b));
}

inline Outcome check_lemma36(const AbVarDatum& a, const AbVarDatum& b) {
  const auto s = tame_identity(a, b);
  return detail::make("lemma36", Relation::eq, s.lhs, s.rhs, detail::wd_inputs(a, b));
}

inline Outcome check_thm37(const AbVarDatum& a, const AbVarDatum& b) {
  const auto r = main_bound(a, b);
  return detail::make("thm37", Relation::le, r.sides.lhs, r.sides.rhs, detail::wd_inputs(a, b));
}

/// When min(a(rho_A), a(rho_B)) <= 1, a(rho_A (x) rho_B) equals the semistable-form value.
inline Outcome check_thm37_equality(const AbVarDatum& a, const AbVarDatum& b) {
  const auto r = main_bound(a, b);
  require(r.equality_value.has_value(), ErrorKind::precondition, "needs a(rho_A) <= 1 or a(rho_B) <= 1");
  return detail::make("thm37_equality", Relation::eq, r.sides.lhs, *r.equality_value, detail::wd_inputs(a, b));
}

inline Outcome check_cor38(const AbVarDatum& a, const AbVarDatum& b) {
  const auto r = simplified_bound(a, b);
  return detail::make("cor38", Relation::le, r.sides.lhs, r.sides.rhs, detail::wd_inputs(a, b));
}

/// The main bound is at least as strong as the simplified one once C_p >= 2.
inline Outcome check_main_vs_simplified(const AbVarDatum& a, const AbVarDatum& b) {
  return detail::make("main_vs_simplified", Relation::le, main_bound(a, b).sides.rhs, simplified_bound(a, b).sides.rhs,
                      detail::wd_inputs(a, b));
}

inline Outcome check_lemma39(const AbVarDatum& a) {
  json in{{"model", io::to_json(*a.model())}, {"A", io::to_json(a)}};
  return detail::make("lemma39", Relation::ge, degree_gap(a), 1, std::move(in));
}

/// Per prime: a(rho_A (x) rho_B) <= v_p of the Rankin–Selberg bound.
inline Outcome check_cor310(const GlobalDatum& d, std::int64_t prime) {
  const auto report = rankin_selberg_report(d);
  json in{{"datum", io::to_json(d)}, {"prime", prime}};
  for (const auto& c : report.checks)
    if (c.prime == prime) {
      require(c.local_exponent.has_value(), ErrorKind::precondition, "cor310 check needs full local data");
      return detail::make("cor310", Relation::le, *c.local_exponent, c.bound_exponent, std::move(in));
    }
  fail(ErrorKind::input_error, "prime: " + std::to_string(prime) + " not in the datum");
}

inline const PrimeLocal& local_at(const GlobalDatum& d, std::int64_t prime) {
  for (const auto& r : d.primes)
    if (r.prime == prime) {
      const auto* l = std::get_if<PrimeLocal>(&r.data);
      require(l != nullptr, ErrorKind::precondition, "check needs full local data at " + std::to_string(prime));
      return *l;
    }
  fail(ErrorKind::input_error, "prime: " + std::to_string(prime) + " not in the datum");
}

/// v_p of the global bound against the local simplified bound computed from the pair.
inline Outcome check_cor310_local(const GlobalDatum& d, std::int64_t prime) {
  const auto& l = local_at(d, prime);
  const FactoredInteger bound = rankin_selberg_report(d).bound;
  json in{{"datum", io::to_json(d)}, {"prime", prime}};
  return detail::make("cor310_local", Relation::eq, bound.exponent(prime), simplified_bound(l.a, l.b).sides.rhs,
                      std::move(in));
}

/// Per prime: a(rho_A (x) rho_A) <= v_p of N_A^{4 dim A - 2} / N_{A,2}.
inline Outcome check_cor311(const GlobalDatum& d, std::int64_t prime) {
  const auto& l = local_at(d, prime);
  json in{{"datum", io::to_json(d)}, {"prime", prime}};
  return detail::make("cor311", Relation::le, artin_conductor(tensor(l.a.rho(), l.a.rho())),
                      self_tensor_bound(d).exponent(prime), std::move(in));
}

/// Per prime: the Rankin–Selberg bound for (A, A) refines the self-tensor bound.
inline Outcome check_cor311_refined(const GlobalDatum& d, std::int64_t prime) {
  json in{{"datum", io::to_json(d)}, {"prime", prime}};
  return detail::make("cor311_refined", Relation::le, rankin_selberg_report(d.self_pair()).bound.exponent(prime),
                      self_tensor_bound(d).exponent(prime), std::move(in));
}

// ---------------------------------------------------------------------------
// Replay.

inline Outcome evaluate(const std::string& check, const json& in) {
  auto filtration = [&] { return io::filtration_from_json(io::field(in, "filtration", "inputs"), "inputs.filtration"); };
  auto character = [&](const Filtration& f, const char* key) {
    return io::character_from_json(f.parent(), io::field(in, key, "inputs"), std::string("inputs.") + key);
  };
  auto index = [&](const char* key) {
    const auto i = io::int_field(in, key, "inputs");
    if (i < 0) io::bad(std::string("inputs.") + key, "must be nonnegative");
    return static_cast<std::size_t>(i);
  };
  auto model = [&] { return io::model_from_json(io::field(in, "model", "inputs"), "inputs.model"); };
  auto model_char = [&](const ModelPtr& m, const char* key) {
    return io::character_from_json(m->group(), io::field(in, key, "inputs"), std::string("inputs.") + key);
  };
  auto wdrep = [&](const ModelPtr& m, const char* key) {
    return detail::wdrep_from_json(m, io::field(in, key, "inputs"), std::string("inputs.") + key);
  };
  auto rationals = [&](const char* key) {
    const json& arr = io::field(in, key, "inputs");
    if (!arr.is_array()) io::bad(std::string("inputs.") + key, "expected an array");
    std::vector<Rational> out;
    for (std::size_t i = 0; i < arr.size(); ++i) out.push_back(io::as_rational(arr[i], io::child(std::string("inputs.") + key, i)));
    return out;
  };
  auto global = [&] { return io::global_datum_from_json(io::field(in, "datum", "inputs"), "inputs.datum"); };

  if (check == "lemma25") {
    auto f = filtration();
    return check_lemma25(f, index("i"), character(f, "tau1"), character(f, "tau2"));
  }
  if (check == "a_decreasing") {
    auto f = filtration();
    return check_a_decreasing(f, index("i"), character(f, "tau"));
  }
  if (check == "delta_nonneg" || check == "delta_total" || check == "additivity" || check == "prop27") {
    auto f = filtration();
    auto t1 = character(f, "tau1");
    auto t2 = character(f, "tau2");
    if (check == "delta_nonneg") return check_delta_nonneg(f, index("i"), t1, t2);
    if (check == "delta_total") return check_delta_total(f, t1, t2);
    if (check == "additivity") return check_additivity(f, t1, t2);
    return check_prop27(f, t1, t2);
  }
  if (check == "prop210") {
    auto f = filtration();
    return check_prop210(f, io::int_field(in, "p", "inputs"), character(f, "tau1"), character(f, "tau2"));
  }
  if (check == "lemma26")
    return check_lemma26(io::as_rational(io::field(in, "M", "inputs"), "inputs.M"), rationals("a"), rationals("b"),
                         rationals("d"));
  if (check == "lemma28" || check == "dual_fixed") {
    auto f = filtration();
    const auto i = index("i");
    return check == "lemma28" ? check_lemma28(f, i, character(f, "tau")) : check_dual_fixed(f, i, character(f, "tau"));
  }
  if (check == "lemma211") {
    auto f = filtration();
    return check_lemma211(f, index("i"), io::int_field(in, "p", "inputs"), character(f, "tau"));
  }
  if (check == "lemma32") {
    auto m = model();
    return check_lemma32(m, model_char(m, "sigma"));
  }
  if (check == "lemma33") {
    auto m = model();
    return check_lemma33(m, model_char(m, "sigma"), io::int_field(in, "n", "inputs"), io::int_field(in, "m", "inputs"));
  }
  if (check == "artin_minus_swan") {
    auto m = model();
    return check_artin_minus_swan(wdrep(m, "rho"));
  }
  if (check == "cg_sum") return check_cg_sum(io::int_field(in, "n", "inputs"), io::int_field(in, "m", "inputs"));
  if (check == "cg_len") return check_cg_len(io::int_field(in, "n", "inputs"), io::int_field(in, "m", "inputs"));
  if (check == "tensor_commutes" || check == "tensor_dim" || check == "tensor_associates") {
    auto m = model();
    auto r1 = wdrep(m, "rho1");
    auto r2 = wdrep(m, "rho2");
    if (check == "tensor_commutes") return check_tensor_commutes(r1, r2);
    if (check == "tensor_dim") return check_tensor_dim(r1, r2);
    return check_tensor_associates(r1, r2, wdrep(m, "rho3"));
  }
  if (check == "lemma39") {
    auto m = model();
    return check_lemma39(io::abvar_from_json(m, io::field(in, "A", "inputs"), "inputs.A"));
  }
  static const std::map<std::string, Outcome (*)(const AbVarDatum&, const AbVarDatum&)> pair_checks{
      {"thm34", check_thm34},           {"thm34_closed", check_thm34_closed}, {"good_reduction", check_good_reduction},
      {"thm35", check_thm35},           {"lemma36", check_lemma36},           {"thm37", check_thm37},
      {"thm37_equality", check_thm37_equality}, {"cor38", check_cor38},     {"main_vs_simplified", check_main_vs_simplified}};
  if (auto it = pair_checks.find(check); it != pair_checks.end()) {
    const auto d = io::local_datum_from_json(in, "inputs");
    return it->second(d.a, d.b);
  }
  static const std::map<std::string, Outcome (*)(const GlobalDatum&, std::int64_t)> global_checks{
      {"cor310", check_cor310},
      {"cor310_local", check_cor310_local},
      {"cor311", check_cor311},
      {"cor311_refined", check_cor311_refined}};
  if (auto it = global_checks.find(check); it != global_checks.end())
    return it->second(global(), io::int_field(in, "prime", "inputs"));
  fail(ErrorKind::input_error, "check: unknown check \"" + check + "\"");
}

struct ReplayResult {
  Outcome outcome;
  bool ok = false;
  bool matches = false;  // recomputed sides equal the recorded ones
};

inline ReplayResult replay(const json& doc) {
  const json& check = io::field(doc, "check", "");
  if (!check.is_string()) io::bad("check", "expected a string");
  ReplayResult r{evaluate(check.get<std::string>(), io::field(doc, "inputs", "")), false, false};
  r.ok = r.outcome.ok();
  r.matches = r.outcome.lhs == io::as_rational(io::field(doc, "lhs", ""), "lhs") &&
              r.outcome.rhs == io::as_rational(io::field(doc, "rhs", ""), "rhs") &&
              to_string(r.outcome.relation) == io::field(doc, "relation", "").get<std::string>();
  return r;
}

// ---------------------------------------------------------------------------
// Suites.

struct SuiteOptions {
  std::uint64_t seed = 0;
  std::size_t seeds = 100;
  std::size_t workers = 0;  // 0: WDCOND_WORKERS or hardware concurrency
};

struct SuiteResult {
  std::string suite;
  std::size_t items = 0;
  std::size_t checks = 0;
  std::vector<Outcome> violations;

  bool pass() const { return violations.empty(); }

  json summary() const {
    return {{"type", "suite"}, {"suite", suite}, {"items", items}, {"checks", checks},
            {"violations", violations.size()}, {"pass", pass()}};
  }
};

inline std::size_t resolve_workers(std::size_t requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("WDCOND_WORKERS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<std::size_t>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs fn(0..n-1) across workers; results are kept in index order.
template <class Fn>
auto parallel_map(std::size_t n, std::size_t workers, Fn fn) -> std::vector<decltype(fn(std::size_t{}))> {
  std::vector<decltype(fn(std::size_t{}))> out(n);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) out[i] = fn(i);
  };
  workers = std::min(workers, std::max<std::size_t>(n, 1));
  if (workers <= 1) {
    work();
    return out;
  }
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  return out;
}

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) h = (h ^ c) * 0x100000001b3ULL;
  return h;
}

/// Deterministic per-item generator.
struct ItemRng {
  std::mt19937_64 rng;
  ItemRng(const std::string& suite, std::uint64_t base, std::size_t item)
      : rng(splitmix64(base ^ fnv1a(suite) ^ splitmix64(item))) {}
  std::uint64_t next() { return rng(); }
  std::int64_t below(std::int64_t n) { return static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(n)); }
};

inline constexpr std::int64_t char_budget = 12;

inline std::vector<const io::CorpusFiltration*> pgroup_filtrations(const io::Corpus& c) {
  std::vector<const io::CorpusFiltration*> out;
  for (const auto& f : c.filtrations)
    if (f.filtration.parent()->order() > 1 && nt::prime_divisors(static_cast<std::int64_t>(f.filtration.parent()->order())).size() == 1)
      out.push_back(&f);
  return out;
}

inline std::int64_t prime_of(const FiniteGroup& g) {
  return nt::prime_divisors(static_cast<std::int64_t>(g.order())).front();
}

/// Random datum tau (+) sigma (x) sp(2) on a model, with optional exact dimension
/// (padding tau with copies of the trivial character, which keeps it symplectic and rational).
inline AbVarDatum random_datum(const ModelPtr& m, ItemRng& rng, std::int64_t exact_dim = -1) {
  const GroupPtr& g = m->group();
  const std::int64_t cap = exact_dim < 0 ? 8 : exact_dim;
  Character tau = gen_symplectic_rational(g, rng.next(), rng.below(cap + 1));
  Character sigma = gen_rational(g, rng.next(), rng.below((cap - tau.dim()) / 2 + 1));
  if (rng.below(4) == 0) sigma = Character::zero(g);
  if (exact_dim >= 0) {
    const std::int64_t pad = exact_dim - tau.dim() - 2 * sigma.dim();
    tau = tau + Character::trivial(g).multiple(pad);
  }
  return AbVarDatum::make(m, tau, sigma);
}

inline AbVarDatum semistable_datum(const ModelPtr& m, std::int64_t tau_mult, std::int64_t sigma_mult) {
  const Character one = Character::trivial(m->group());
  return AbVarDatum::make(m, one.multiple(tau_mult), one.multiple(sigma_mult));
}

inline WDRep random_wdrep(const ModelPtr& m, ItemRng& rng) {
  WDRep rho(m);
  const std::int64_t blocks = 1 + rng.below(3);
  for (std::int64_t b = 0; b < blocks; ++b) rho.add_block(gen_character(m->group(), rng.next(), 6), 1 + rng.below(4));
  return rho;
}

}  // namespace detail

using ItemFn = std::function<std::vector<Outcome>(std::size_t, detail::ItemRng&)>;

inline SuiteResult run_items(const std::string& suite, std::size_t n, const SuiteOptions& opt, const ItemFn& fn) {
  auto results = parallel_map(n, resolve_workers(opt.workers), [&](std::size_t k) {
    detail::ItemRng rng(suite, opt.seed, k);
    try {
      return fn(k, rng);
    } catch (const Error& e) {
      Outcome o{suite + "_error", Relation::eq, 0, 1, {{"error", e.what()}, {"item", k}, {"seed", opt.seed}}};
      return std::vector<Outcome>{o};
    }
  });
  SuiteResult r{suite, n, 0, {}};
  for (auto& item : results)
    for (auto& o : item) {
      ++r.checks;
      if (!o.ok()) r.violations.push_back(std::move(o));
    }
  return r;
}

inline std::vector<std::string> suite_names() {
  return {"lemma25", "lemma26", "prop27",  "prop210", "lemma28", "lemma211", "lemma32", "lemma33",
          "thm34",   "thm35",   "lemma36", "thm37",   "cor38",   "lemma39",  "cor310",  "cor311"};
}

inline SuiteResult run_suite(const std::string& name, const io::Corpus& corpus, const SuiteOptions& opt) {
  using detail::ItemRng;
  const auto& fs = corpus.filtrations;
  const auto& ms = corpus.models;
  require(!fs.empty() && !ms.empty(), ErrorKind::input_error, "corpus needs filtrations and models");
  const auto pgroups = detail::pgroup_filtrations(corpus);
  const std::size_t n = opt.seeds;
  auto pick_f = [&](std::size_t k) -> const Filtration& { return fs[k % fs.size()].filtration; };
  auto pick_m = [&](std::size_t k) -> const ModelPtr& { return ms[k % ms.size()].model; };

  if (name == "lemma25")
    return run_items(name, n, opt, [&](std::size_t k, ItemRng& rng) {
      const Filtration& f = pick_f(k);
      const auto t1 = gen_character(f.parent(), rng.next(), detail::char_budget);
      const auto t2 = gen_character(f.parent(), rng.next(), detail::char_budget);
      const auto i = static_cast<std::size_t>(rng.below(static_cast<std::int64_t>(f.length())));
      std::vector<Outcome> out{check_lemma25(f, i, t1, t2), check_additivity(f, t1, t2), check_delta_total(f, t1, t2),
                               check_delta_nonneg(f, i, t1, t2)};
      if (i + 1 < f.length()) out.push_back(check_a_decreasing(f, i, t1));
      return out;
    });
  if (name == "lemma26")
    return run_items(name, n, opt, [&](std::size_t, ItemRng& rng) {
      static const Rational ms_[] = {Rational(1), Rational(2), Rational(3), Rational(3, 2), Rational(5, 2)};
      const Rational m = ms_[rng.below(5)];
      const std::int64_t len = 1 + rng.below(5);
      auto seq = [&] {
        std::vector<Rational> v;
        for (std::int64_t i = 0; i < len; ++i) v.push_back(rng.below(3) == 0 ? Rational(0) : m + rng.below(7));
        std::sort(v.rbegin(), v.rend());
        return v;
      };
      const auto a = seq(), b = seq();
      std::vector<Rational> d;
      for (std::int64_t i = 0; i < len; ++i) d.push_back(Rational(1 + rng.below(6)));
      return std::vector<Outcome>{check_lemma26(m, a, b, d)};
    });
  if (name == "prop27")
    return run_items(name, n, opt, [&](std::size_t k, ItemRng& rng) {
      const Filtration& f = pick_f(k);
      return std::vector<Outcome>{check_prop27(f, gen_symplectic(f.parent(), rng.next(), detail::char_budget),
                                               gen_symplectic(f.parent(), rng.next(), detail::char_budget))};
    });
  if (name == "prop210" || name == "lemma211") {
    require(!pgroups.empty(), ErrorKind::input_error, "corpus has no p-group filtrations");
    return run_items(name, n, opt, [&](std::size_t k, ItemRng& rng) {
      const Filtration& f = pgroups[k % pgroups.size()]->filtration;
      const std::int64_t p = detail::prime_of(*f.parent());
      const auto t1 = gen_rational(f.parent(), rng.next(), detail::char_budget);
      if (name == "prop210")
        return std::vector<Outcome>{check_prop210(f, p, t1, gen_rational(f.parent(), rng.next(), detail::char_budget))};
      std::vector<Outcome> out;
      for (std::size_t i = 0; i < f.length(); ++i) out.push_back(check_lemma211(f, i, p, t1));
      return out;
    });
  }
  if (name == "lemma28")
    return run_items(name, n, opt, [&](std::size_t k, ItemRng& rng) {
      const Filtration& f = pick_f(k);
      const auto t = gen_symplectic(f.parent(), rng.next(), detail::char_budget);
      const auto c = gen_character(f.parent(), rng.next(), detail::char_budget);
      std::vector<Outcome> out;
      for (std::size_t i = 0; i < f.length(); ++i) {
        out.push_back(check_lemma28(f, i, t));
        out.push_back(check_dual_fixed(f, i, c));
      }
      return out;
    });
  if (name == "lemma32")
    return run_items(name, n, opt, [&](std::size_t k, ItemRng& rng) {
      const ModelPtr& m = pick_m(k);
      const auto r1 = detail::random_wdrep(m, rng);
      const auto r2 = detail::random_wdrep(m, rng);
      const auto r3 = detail::random_wdrep(m, rng);
      return std::vector<Outcome>{check_lemma32(m, gen_character(m->group(), rng.next(), detail::char_budget)),
                                  check_artin_minus_swan(r1), check_tensor_commutes(r1, r2),
                                  check_tensor_associates(r1, r2, r3), check_tensor_dim(r1, r2)};
    });
  if (name == "lemma33")
    return run_items(name, n, opt, [&](std::size_t k, ItemRng& rng) {
      const ModelPtr& m = pick_m(k);
      const auto sigma = gen_character(m->group(), rng.next(), detail::char_budget);
      std::vector<Outcome> out;
      for (std::int64_t a = 1; a <= 12; ++a)
        for (std::int64_t b = 1; b <= 12; ++b) {
          out.push_back(check_lemma33(m, sigma, a, b));
          if (k == 0) {
            out.push_back(check_cg_sum(a, b));
            out.push_back(check_cg_len(a, b));
          }
        }
      return out;
    });
  if (name == "thm34")
    return run_items(name, n, opt, [&](std::size_t k, ItemRng& rng) {
      const ModelPtr& m = pick_m(k);
      const AbVarDatum a = detail::semistable_datum(m, 2 * rng.below(3), rng.below(4));
      const AbVarDatum b = detail::random_datum(m, rng);
      std::vector<Outcome> out{check_thm34(a, b), check_thm34_closed(a, b)};
      if (a.sigma().is_zero()) out.push_back(check_good_reduction(a, b));
      return out;
    });
  if (name == "thm35" || name == "lemma36" || name == "thm37" || name == "cor38" || name == "lemma39")
    return run_items(name, n, opt, [&](std::size_t k, ItemRng& rng) {
      const ModelPtr& m = pick_m(k);
      const AbVarDatum a = detail::random_datum(m, rng);
      const AbVarDatum b = detail::random_datum(m, rng);
      std::vector<Outcome> out;
      if (name == "thm35") out.push_back(check_thm35(a, b));
      if (name == "lemma36") {
        if (artin_conductor(a.rho()) > 1 && artin_conductor(b.rho()) > 1) out.push_back(check_lemma36(a, b));
      }
      if (name == "thm37") {
        const auto mb = main_bound(a, b);
        out.push_back(check_thm37(a, b));
        if (mb.equality_value) out.push_back(check_thm37_equality(a, b));
      }
      if (name == "cor38") {
        out.push_back(check_cor38(a, b));
        if (main_bound(a, b).c_p >= 2) out.push_back(check_main_vs_simplified(a, b));
      }
      if (name == "lemma39") {
        if (artin_conductor(a.rho()) > 0) out.push_back(check_lemma39(a));
        if (artin_conductor(b.rho()) > 0) out.push_back(check_lemma39(b));
      }
      return out;
    });
  if (name == "cor310" || name == "cor311") {
    std::map<std::int64_t, std::vector<ModelPtr>> by_prime;
    for (const auto& cm : ms) by_prime[cm.model->residue_char()].push_back(cm.model);
    std::vector<std::int64_t> primes;
    for (const auto& [p, v] : by_prime) primes.push_back(p);
    return run_items(name, n, opt, [&, by_prime, primes](std::size_t, ItemRng& rng) {
      GlobalDatum d;
      d.dim_a = 1 + rng.below(3);
      d.dim_b = 1 + rng.below(3);
      std::vector<std::int64_t> chosen = primes;
      std::shuffle(chosen.begin(), chosen.end(), rng.rng);
      chosen.resize(static_cast<std::size_t>(1 + rng.below(static_cast<std::int64_t>(chosen.size()))));
      std::sort(chosen.begin(), chosen.end());
      for (auto p : chosen) {
        const auto& candidates = by_prime.at(p);
        const ModelPtr& m = candidates[static_cast<std::size_t>(rng.below(static_cast<std::int64_t>(candidates.size())))];
        // synthetic filtrations may give fractional exponents; redraw until every
        // exponent the checks read is integral
        auto integral = [](const WDRep& r) { return is_integer(artin_conductor(r)); };
        std::optional<AbVarDatum> a, b;
        for (int attempt = 0; attempt < 64 && !a; ++attempt) {
          AbVarDatum x = detail::random_datum(m, rng, 2 * d.dim_a);
          AbVarDatum y = detail::random_datum(m, rng, 2 * d.dim_b);
          if (integral(x.rho()) && integral(y.rho()) && integral(tensor(x.rho(), y.rho())) &&
              integral(tensor(x.rho(), x.rho()))) {
            a = std::move(x);
            b = std::move(y);
          }
        }
        if (!a) {
          a = detail::semistable_datum(m, 2 * d.dim_a - 2 * (d.dim_a / 2), d.dim_a / 2);
          b = detail::semistable_datum(m, 2 * d.dim_b - 2 * (d.dim_b / 2), d.dim_b / 2);
        }
        d.primes.push_back({p, PrimeLocal{std::move(*a), std::move(*b)}});
      }
      std::vector<Outcome> out;
      for (auto p : chosen) {
        if (name == "cor310") {
          out.push_back(check_cor310(d, p));
          out.push_back(check_cor310_local(d, p));
        } else {
          out.push_back(check_cor311(d, p));
          out.push_back(check_cor311_refined(d, p));
        }
      }
      return out;
    });
  }
  fail(ErrorKind::input_error, "suite: unknown suite \"" + name + "\"");
}

}  // namespace wdcond::suites
