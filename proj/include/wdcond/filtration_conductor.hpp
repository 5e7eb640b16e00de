#pragma once

// Conductor exponents attached to a finite group filtration G_0 >= G_1 >= ...:
//   a_i(tau)        = |tau| - |tau^{G_i}|
//   Delta_i(tau,s)  = |(tau (x) s)^{G_i}| - |tau^{G_i}| |s^{G_i}|
//   a(tau)          = sum_i a_i(tau) / [G_0 : G_i]
// together with the tensor-product inequalities for symplectic characters and
// for rational characters of p-groups.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "wdcond/character.hpp"
#include "wdcond/character_table.hpp"
#include "wdcond/error.hpp"
#include "wdcond/group.hpp"
#include "wdcond/rational.hpp"

namespace wdcond {

struct ConductorReport {
  std::vector<std::int64_t> a_i;
  std::vector<std::int64_t> indices;  // [G_0 : G_i]
  Rational total;
  std::vector<std::int64_t> delta_i;  // only with a second character
  std::optional<Rational> delta_total;
};

/// Lhs/rhs of a checked relation.
struct Sides {
  Rational lhs;
  Rational rhs;

  bool le() const { return lhs <= rhs; }
  bool eq() const { return lhs == rhs; }
};

namespace detail {

inline void check_on(const ClassFunction& tau, const Filtration& f) {
  require(tau.group().id() == f.parent()->id(), ErrorKind::model_mismatch, "character and filtration on different groups");
}

}  // namespace detail

inline std::int64_t a_i(const Character& tau, const Filtration& f, std::size_t i) {
  detail::check_on(tau, f);
  return tau.dim() - fixed_dim(tau, f.at(i));
}

inline std::int64_t delta_i(const Character& tau, const Character& sigma, const Filtration& f, std::size_t i) {
  detail::check_on(tau, f);
  detail::check_on(sigma, f);
  const Subgroup& h = f.at(i);
  return fixed_dim(tau * sigma, h) - fixed_dim(tau, h) * fixed_dim(sigma, h);
}

inline ConductorReport conductor(const Character& tau, const Filtration& f) {
  detail::check_on(tau, f);
  ConductorReport report;
  report.total = 0;
  for (std::size_t i = 0; i < f.length(); ++i) {
    report.a_i.push_back(a_i(tau, f, i));
    report.indices.push_back(f.index(i));
    report.total += Rational(report.a_i.back(), report.indices.back());
  }
  return report;
}

inline ConductorReport conductor(const Character& tau, const Character& sigma, const Filtration& f) {
  ConductorReport report = conductor(tau, f);
  Rational total = 0;
  for (std::size_t i = 0; i < f.length(); ++i) {
    report.delta_i.push_back(delta_i(tau, sigma, f, i));
    total += Rational(report.delta_i.back(), report.indices[i]);
  }
  report.delta_total = total;
  return report;
}

inline Rational conductor_exponent(const Character& tau, const Filtration& f) { return conductor(tau, f).total; }

/// Delta(tau, sigma) = sum_i Delta_i / [G_0 : G_i]
inline Rational delta_total(const Character& tau, const Character& sigma, const Filtration& f) {
  return *conductor(tau, sigma, f).delta_total;
}

/// Wild part: sum over i >= 1 of a_i / [G_0 : G_i], i.e. a(tau) - a_0(tau).
inline Rational swan_exponent(const Character& tau, const Filtration& f) {
  detail::check_on(tau, f);
  Rational total = 0;
  for (std::size_t i = 1; i < f.length(); ++i) total += Rational(a_i(tau, f, i), f.index(i));
  return total;
}

/// lhs = |t1| a_i(t2) + |t2| a_i(t1) - a_i(t1 (x) t2); rhs = a_i(t1) a_i(t2) + Delta_i(t1, t2).
inline Sides lemma_2_5_sides(const Character& t1, const Character& t2, const Filtration& f, std::size_t i) {
  const std::int64_t a1 = a_i(t1, f, i);
  const std::int64_t a2 = a_i(t2, f, i);
  const std::int64_t lhs = t1.dim() * a2 + t2.dim() * a1 - a_i(t1 * t2, f, i);
  const std::int64_t rhs = a1 * a2 + delta_i(t1, t2, f, i);
  return {Rational(lhs), Rational(rhs)};
}

/// lhs = sum a_i b_i / d_i, rhs = M min(sum a_i/d_i, sum b_i/d_i).
inline Sides lemma_2_6_sides(const Rational& m, const std::vector<Rational>& a, const std::vector<Rational>& b,
                             const std::vector<Rational>& d) {
  require(m > 0, ErrorKind::precondition, "M must be positive");
  require(a.size() == b.size() && a.size() == d.size(), ErrorKind::precondition, "sequences must have equal length");
  auto admissible = [&](const std::vector<Rational>& s, const char* name) {
    for (std::size_t i = 0; i < s.size(); ++i) {
      require(s[i] == 0 || s[i] >= m, ErrorKind::precondition,
              std::string(name) + " has a value in (0, M) at position " + std::to_string(i));
      require(i == 0 || s[i] <= s[i - 1], ErrorKind::precondition,
              std::string(name) + " is not decreasing at position " + std::to_string(i));
    }
  };
  admissible(a, "a");
  admissible(b, "b");
  Rational lhs = 0, sa = 0, sb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    require(d[i] > 0, ErrorKind::precondition, "d must be positive");
    lhs += a[i] * b[i] / d[i];
    sa += a[i] / d[i];
    sb += b[i] / d[i];
  }
  return {lhs, m * std::min(sa, sb)};
}

namespace detail {

/// lhs = a(t1 (x) t2); rhs = |t1| a(t2) + |t2| a(t1) - c min(a(t1), a(t2)) - Delta(t1, t2).
inline Sides tensor_bound_sides(const Character& t1, const Character& t2, const Filtration& f, const Rational& c) {
  const Rational a1 = conductor_exponent(t1, f);
  const Rational a2 = conductor_exponent(t2, f);
  const Rational lhs = conductor_exponent(t1 * t2, f);
  const Rational rhs = Rational(t1.dim()) * a2 + Rational(t2.dim()) * a1 - c * std::min(a1, a2) - delta_total(t1, t2, f);
  return {lhs, rhs};
}

}  // namespace detail

/// Both characters symplectic; contract lhs <= rhs.
inline Sides bound_symplectic(const Character& t1, const Character& t2, const Filtration& f) {
  require(is_symplectic(t1) && is_symplectic(t2), ErrorKind::not_symplectic, "bound_symplectic needs symplectic characters");
  return detail::tensor_bound_sides(t1, t2, f, 2);
}

/// G_0 a p-group and both characters with rational characteristic polynomials; contract lhs <= rhs.
inline Sides bound_pgroup(const Character& t1, const Character& t2, const Filtration& f, std::int64_t p) {
  require(nt::is_prime(p), ErrorKind::not_prime, "bound_pgroup needs a prime p");
  require(f.parent()->is_p_group(p), ErrorKind::not_p_group, "G_0 is not a " + std::to_string(p) + "-group");
  require(is_rational_charpoly(t1) && is_rational_charpoly(t2), ErrorKind::not_rational,
          "bound_pgroup needs rational characteristic polynomials");
  return detail::tensor_bound_sides(t1, t2, f, Rational(p - 1));
}

/// Unchecked forms, used when replaying counterexamples.
inline Sides symplectic_bound_sides(const Character& t1, const Character& t2, const Filtration& f) {
  return detail::tensor_bound_sides(t1, t2, f, 2);
}

inline Sides pgroup_bound_sides(const Character& t1, const Character& t2, const Filtration& f, std::int64_t p) {
  return detail::tensor_bound_sides(t1, t2, f, Rational(p - 1));
}

}  // namespace wdcond
