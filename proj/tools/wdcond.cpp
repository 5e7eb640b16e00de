// wdcond: conductor calculus and bound verification from the command line.
//
// Exit codes: 0 all checks hold, 1 a checked relation fails, 2 bad input.

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "wdcond/character_table.hpp"
#include "wdcond/global_conductor.hpp"
#include "wdcond/io.hpp"
#include "wdcond/sharpness.hpp"
#include "wdcond/suites.hpp"
#include "wdcond/weil_deligne.hpp"

#ifndef WDCOND_DATA_DIR
#define WDCOND_DATA_DIR "data"
#endif

namespace {

using namespace wdcond;
using json = io::json;

constexpr int exit_ok = 0;
constexpr int exit_violation = 1;
constexpr int exit_input = 2;

struct Common {
  std::string format = "human";
  bool machine() const { return format == "machine"; }
};

std::string q(const Rational& x) { return to_fraction_string(x); }

void emit(const Common& c, const json& j, const std::string& human) {
  if (c.machine()) {
    std::cout << j.dump() << '\n';
  } else {
    std::cout << human;
  }
}

int run_verify(const Common& c, const std::vector<std::string>& suites, std::size_t seeds, std::uint64_t seed,
               const std::string& corpus_path, std::size_t workers) {
  const io::Corpus corpus = io::load_corpus(corpus_path);
  std::vector<std::string> names = suites;
  if (names.empty() || (names.size() == 1 && names[0] == "all")) names = suites::suite_names();
  for (const auto& n : names) {
    const auto known = suites::suite_names();
    if (std::find(known.begin(), known.end(), n) == known.end())
      fail(ErrorKind::input_error, "--suite: unknown suite \"" + n + "\"");
  }
  bool all_pass = true;
  for (const auto& name : names) {
    const auto r = suites::run_suite(name, corpus, {seed, seeds, workers});
    all_pass = all_pass && r.pass();
    std::string human = name + ": " + std::to_string(r.checks) + " checks over " + std::to_string(r.items) + " items, " +
                        std::to_string(r.violations.size()) + " violations\n";
    emit(c, r.summary(), human);
    for (const auto& v : r.violations) {
      const json doc = suites::counterexample(name, v);
      emit(c, doc, "  counterexample: " + doc.dump() + "\n");
    }
  }
  return all_pass ? exit_ok : exit_violation;
}

int run_bound(const Common& c, const std::string& input) {
  const auto d = io::local_datum_from_json(io::read_json_file(input));
  const auto t = local_terms(d.a, d.b);
  const auto sw = swan_bound(d.a, d.b);
  const auto mb = main_bound(d.a, d.b);
  const auto sb = simplified_bound(d.a, d.b);
  const bool ok = sw.le() && mb.sides.le() && sb.sides.le();
  json j{{"type", "bound"},
         {"a_A", q(t.a_a)},
         {"a_B", q(t.a_b)},
         {"sw_A", q(t.sw_a)},
         {"sw_B", q(t.sw_b)},
         {"sw_AB", q(t.sw_ab)},
         {"rhs_thm35", q(sw.rhs)},
         {"lhs", q(mb.sides.lhs)},
         {"rhs_thm37", q(mb.sides.rhs)},
         {"rhs_cor38", q(sb.sides.rhs)},
         {"C_p", q(mb.c_p)},
         {"deg_terms",
          {{"deg_A", t.deg_a}, {"deg_B", t.deg_b}, {"deg_AB", t.deg_ab}, {"excess", t.degree_excess()}, {"delta_cor38", sb.delta}}},
         {"holds", ok}};
  std::string human = "a(rho_A) = " + to_display_string(t.a_a) + ", a(rho_B) = " + to_display_string(t.a_b) +
                      "\nSw(rho_A) = " + to_display_string(t.sw_a) + ", Sw(rho_B) = " + to_display_string(t.sw_b) +
                      "\ndeg A = " + std::to_string(t.deg_a) + ", deg B = " + std::to_string(t.deg_b) +
                      ", deg A⊠B = " + std::to_string(t.deg_ab) + "\nC_p = " + to_display_string(mb.c_p) +
                      "\nSwan:       " + to_display_string(sw.lhs) + " <= " + to_display_string(sw.rhs) +
                      "\nmain:       " + to_display_string(mb.sides.lhs) + " <= " + to_display_string(mb.sides.rhs) +
                      "\nsimplified: " + to_display_string(sb.sides.lhs) + " <= " + to_display_string(sb.sides.rhs) +
                      "\n" + (ok ? "holds\n" : "VIOLATED\n");
  emit(c, j, human);
  return ok ? exit_ok : exit_violation;
}

int run_global(const Common& c, const std::string& input) {
  const auto d = io::global_datum_from_json(io::read_json_file(input));
  const auto report = rankin_selberg_report(d);
  const auto self = self_tensor_bound(d);
  json checks = json::array();
  std::string human = "bound = " + report.bound.str() + "\nd(A,B) = " + report.d.str() + "\nself-tensor bound for A = " +
                      self.str() + "\n";
  for (const auto& ck : report.checks) {
    json e{{"p", ck.prime}, {"bound_exponent", ck.bound_exponent}, {"pass", ck.pass}};
    if (ck.local_exponent) e["local_exponent"] = *ck.local_exponent;
    checks.push_back(e);
    human += "  p = " + std::to_string(ck.prime) + ": bound exponent " + std::to_string(ck.bound_exponent);
    if (ck.local_exponent) human += ", a(rho_A (x) rho_B) = " + std::to_string(*ck.local_exponent);
    human += ck.pass ? "  pass\n" : "  FAIL\n";
  }
  json j{{"type", "global"},
         {"bound", io::to_json(report.bound)},
         {"d_term", io::to_json(report.d)},
         {"self_tensor_bound", io::to_json(self)},
         {"per_prime_check", checks},
         {"pass", report.all_pass()}};
  emit(c, j, human);
  return report.all_pass() ? exit_ok : exit_violation;
}

int run_sharpness(const Common& c, std::int64_t p, std::int64_t a, std::int64_t max_p) {
  std::vector<std::pair<std::int64_t, std::int64_t>> cases;
  if (max_p > 0) {
    for (std::int64_t r = 3; r <= max_p; ++r)
      if (nt::is_prime(r)) cases.emplace_back(r, smallest_valid_a(r));
  } else {
    require(p > 0, ErrorKind::input_error, "--p or --max-p is required");
    cases.emplace_back(p, a > 0 ? a : smallest_valid_a(p));
  }
  for (const auto& [pp, aa] : cases) validate_params(pp, aa);
  bool all = true;
  if (!c.machine()) std::cout << "   p    a  Sw_a  Sw_p  Sw_tensor  a_tensor  thm35_rhs  thm37_rhs  equal\n";
  for (const auto& [pp, aa] : cases) {
    const auto r = verify_sharpness({pp, aa});
    all = all && r.equal;
    json fails = r.failures;
    json j{{"type", "sharpness"}, {"p", pp},           {"a", aa},
           {"Sw_a", r.sw_a},       {"Sw_p", r.sw_p},   {"Sw_tensor", q(r.sw_tensor)},
           {"a_tensor", q(r.a_tensor)}, {"thm35_rhs", q(r.thm35_rhs)}, {"thm37_rhs", q(r.thm37_rhs)},
           {"C_p", q(r.c_p)},      {"equal", r.equal}, {"failures", fails}};
    char line[160];
    std::snprintf(line, sizeof line, "%4lld %4lld %5lld %5lld %10s %9s %10s %10s  %s\n", static_cast<long long>(pp),
                  static_cast<long long>(aa), static_cast<long long>(r.sw_a), static_cast<long long>(r.sw_p),
                  to_display_string(r.sw_tensor).c_str(), to_display_string(r.a_tensor).c_str(),
                  to_display_string(r.thm35_rhs).c_str(), to_display_string(r.thm37_rhs).c_str(),
                  r.equal ? "true" : "false");
    std::string human = line;
    for (const auto& f : r.failures) human += "       failed: " + f + "\n";
    emit(c, j, human);
  }
  return all ? exit_ok : exit_violation;
}

int run_table(const Common& c, const std::string& group_json, std::size_t cap) {
  json spec_j;
  try {
    spec_j = json::parse(group_json);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::input_error, std::string("--group: ") + e.what());
  }
  const GroupSpec spec = io::group_spec_from_json(spec_j, "group");
  const GroupPtr g = shared_group(spec, cap);
  const auto table = character_table(g);
  json classes = json::array();
  for (std::size_t k = 0; k < g->num_classes(); ++k)
    classes.push_back({{"rep", g->class_rep(k)}, {"size", g->class_size(k)}, {"order", g->element_order(g->class_rep(k))}});
  json chars = json::array();
  std::string human = spec.str() + ": order " + std::to_string(g->order()) + ", " + std::to_string(g->num_classes()) +
                      " classes\nclass reps:";
  for (std::size_t k = 0; k < g->num_classes(); ++k) human += " " + std::to_string(g->class_rep(k));
  human += "\nclass sizes:";
  for (std::size_t k = 0; k < g->num_classes(); ++k) human += " " + std::to_string(g->class_size(k));
  human += "\n";
  for (std::size_t i = 0; i < table->size(); ++i) {
    const Character& psi = (*table)[i];
    json values = json::array();
    human += "chi" + std::to_string(i) + " (dim " + std::to_string(psi.dim()) + ", indicator " +
             std::to_string(table->indicator(i)) + "):";
    for (std::size_t k = 0; k < g->num_classes(); ++k) {
      values.push_back(io::to_json(psi.on_class(k)));
      human += "  " + psi.on_class(k).str();
    }
    human += "\n";
    chars.push_back({{"index", i}, {"degree", psi.dim()}, {"indicator", table->indicator(i)}, {"values", values}});
  }
  json j{{"type", "table"}, {"group", io::to_json(spec)}, {"order", g->order()}, {"classes", classes}, {"characters", chars}};
  emit(c, j, human);
  return exit_ok;
}

int run_replay(const Common& c, const std::string& input) {
  const json doc = io::read_json_file(input);
  const auto r = suites::replay(doc);
  json j{{"type", "replay"},
         {"check", r.outcome.check},
         {"relation", suites::to_string(r.outcome.relation)},
         {"lhs", q(r.outcome.lhs)},
         {"rhs", q(r.outcome.rhs)},
         {"holds", r.ok},
         {"matches_record", r.matches}};
  emit(c, j,
       r.outcome.check + ": " + to_display_string(r.outcome.lhs) + " " + suites::to_string(r.outcome.relation) + " " +
           to_display_string(r.outcome.rhs) + (r.ok ? "  holds" : "  VIOLATED") +
           (r.matches ? "  (matches record)\n" : "  (differs from record)\n"));
  return r.ok ? exit_ok : exit_violation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Artin/Swan conductors of filtrations and Weil–Deligne data, with tensor-product bound checks"};
  app.require_subcommand(1);
  Common common;
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", common.format, "human or machine (JSON lines)")
        ->check(CLI::IsMember({"human", "machine"}));
  };

  auto* verify = app.add_subcommand("verify", "run seeded property suites over the corpus");
  std::vector<std::string> suite_sel;
  std::size_t seeds = 100, workers = 0;
  std::uint64_t seed = 0;
  std::string corpus = std::string(WDCOND_DATA_DIR) + "/corpus.json";
  verify->add_option("--suite", suite_sel, "suite name (repeatable) or all");
  verify->add_option("--seeds", seeds, "items per suite");
  verify->add_option("--seed", seed, "base seed");
  verify->add_option("--corpus", corpus, "corpus file");
  verify->add_option("--workers", workers, "worker threads (default WDCOND_WORKERS or hardware)");
  add_format(verify);

  std::string input;
  auto* bound = app.add_subcommand("bound", "local tensor-product bounds for one pair");
  bound->add_option("--input", input, "local-datum document")->required();
  add_format(bound);

  auto* global = app.add_subcommand("global", "Rankin–Selberg conductor bound from per-prime data");
  global->add_option("--input", input, "global-datum document")->required();
  add_format(global);

  auto* sharp = app.add_subcommand("sharpness", "verify the sharp family y^2 = x^p - alpha");
  std::int64_t p = 0, a = 0, max_p = 0;
  sharp->add_option("--p", p, "odd prime");
  sharp->add_option("--a", a, "unit with a^(p-1) != 1 mod p^2 (default: smallest valid)");
  sharp->add_option("--max-p", max_p, "sweep all odd primes up to this bound");
  add_format(sharp);

  auto* table = app.add_subcommand("table", "print a character table");
  std::string group_json;
  std::size_t cap = default_order_cap;
  table->add_option("--group", group_json, R"(group descriptor, e.g. '{"kind": "affine", "p": 5}')")->required();
  table->add_option("--cap", cap, "order cap");
  add_format(table);

  auto* replay = app.add_subcommand("replay", "recompute a counterexample document");
  replay->add_option("--input", input, "counterexample document")->required();
  add_format(replay);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? exit_ok : exit_input;
  }

  try {
    if (*verify) return run_verify(common, suite_sel, seeds, seed, corpus, workers);
    if (*bound) return run_bound(common, input);
    if (*global) return run_global(common, input);
    if (*sharp) return run_sharpness(common, p, a, max_p);
    if (*table) return run_table(common, group_json, cap);
    if (*replay) return run_replay(common, input);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_input;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_input;
  }
  return exit_input;
}
