#pragma once

// The Jacobians J_alpha of y^2 = x^p - alpha over Q_p (p odd), alpha in {a, p} with a
// a unit satisfying a^{p-1} != 1 mod p^2. Their Swan conductors come from the
// discriminant of x^p - alpha; the pair (J_a, J_p) attains both local tensor bounds.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wdcond/error.hpp"
#include "wdcond/filtration_conductor.hpp"
#include "wdcond/numtheory.hpp"
#include "wdcond/rational.hpp"
#include "wdcond/weil_deligne.hpp"

namespace wdcond {

struct FamilyParams {
  std::int64_t p = 0;
  std::int64_t a = 0;
};

/// True when a is a unit mod p with a^{p-1} != 1 mod p^2.
inline bool is_valid_unit(std::int64_t p, std::int64_t a) {
  if (nt::mod(a, p) == 0) return false;
  const auto p2 = static_cast<std::uint64_t>(p * p);
  return nt::pow_mod(static_cast<std::uint64_t>(nt::mod(a, p * p)), static_cast<std::uint64_t>(p - 1), p2) != 1;
}

inline void require_odd_prime(std::int64_t p) {
  require(nt::is_prime(p), ErrorKind::not_prime, std::to_string(p) + " is not prime");
  require(p != 2, ErrorKind::invalid_argument, "the family needs an odd prime");
}

inline FamilyParams validate_params(std::int64_t p, std::int64_t a) {
  require_odd_prime(p);
  require(nt::mod(a, p) != 0, ErrorKind::invalid_unit, std::to_string(a) + " is not a unit mod " + std::to_string(p));
  require(is_valid_unit(p, a), ErrorKind::invalid_unit,
          std::to_string(a) + "^" + std::to_string(p - 1) + " = 1 mod " + std::to_string(p) + "^2");
  return {p, a};
}

inline std::int64_t smallest_valid_a(std::int64_t p) {
  require_odd_prime(p);
  for (std::int64_t a = 2;; ++a)
    if (is_valid_unit(p, a)) return a;
}

namespace detail {

/// Determinant of an integer matrix by fraction-free (Bareiss) elimination.
inline BigInt bareiss_det(std::vector<std::vector<BigInt>> m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  BigInt sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && m[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(m[k], m[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

/// Resultant of polynomials given by coefficients, highest degree first.
inline BigInt resultant(const std::vector<BigInt>& f, const std::vector<BigInt>& g) {
  const std::size_t n = f.size() - 1, m = g.size() - 1, size = n + m;
  std::vector<std::vector<BigInt>> s(size, std::vector<BigInt>(size, 0));
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t j = 0; j <= n; ++j) s[r][r + j] = f[j];
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t j = 0; j <= m; ++j) s[m + r][r + j] = g[j];
  return bareiss_det(std::move(s));
}

inline std::int64_t valuation(BigInt x, std::int64_t p) {
  require(x != 0, ErrorKind::invalid_argument, "valuation of zero");
  std::int64_t v = 0;
  while (x % p == 0) {
    x /= p;
    ++v;
  }
  return v;
}

}  // namespace detail

/// Discriminant of x^p - alpha from the Sylvester resultant of f and f'.
inline BigInt discriminant(std::int64_t p, std::int64_t alpha) {
  require(alpha != 0, ErrorKind::invalid_argument, "alpha must be nonzero");
  std::vector<BigInt> f(static_cast<std::size_t>(p) + 1, 0), df(static_cast<std::size_t>(p), 0);
  f.front() = 1;
  f.back() = -alpha;
  df.front() = p;
  const BigInt res = detail::resultant(f, df);
  // disc = (-1)^{n(n-1)/2} res(f, f') / lc(f), lc(f) = 1
  return (p * (p - 1) / 2) % 2 == 0 ? res : BigInt(-res);
}

inline std::int64_t disc_valuation(std::int64_t p, std::int64_t alpha) {
  return detail::valuation(discriminant(p, alpha), p);
}

/// Sw = v(disc) - [K:Q_p] + f for the totally ramified degree-p extension.
inline std::int64_t swan_jacobian(const FamilyParams& params, std::int64_t alpha) {
  require(alpha == params.a || alpha == params.p, ErrorKind::invalid_argument, "alpha must be a or p");
  return disc_valuation(params.p, alpha) - params.p + 1;
}

/// Index of the (p-1)-dimensional irreducible of affine(p).
inline std::size_t affine_big_irreducible(const CharacterTable& table, std::int64_t p) {
  for (std::size_t i = 0; i < table.size(); ++i)
    if (table[i].dim() == p - 1) return i;
  fail(ErrorKind::invalid_argument, "affine group has no irreducible of dimension p - 1");
}

/// Model for rho_{J_alpha}: G_0 = affine(p), G_1 = ... = G_u = C_p, G_{u+1} = 1,
/// u = Sw(J_alpha), carrying the (p-1)-dimensional irreducible.
struct SingleModel {
  ModelPtr model;
  Character rep;
  std::int64_t u = 0;
};

inline SingleModel filtration_model_single(const FamilyParams& params, std::int64_t alpha) {
  const std::int64_t p = params.p;
  const auto g = shared_group(GroupSpec::affine(p));
  const Subgroup translations = subgroup_generated(g, {1});
  const std::int64_t u = swan_jacobian(params, alpha);
  std::vector<Subgroup> chain{whole_group(g)};
  for (std::int64_t i = 0; i < u; ++i) chain.push_back(translations);
  const auto table = character_table(g);
  return {make_model(make_filtration(g, std::move(chain)), p), (*table)[affine_big_irreducible(*table, p)], u};
}

/// Characters of an elementary abelian wild group F_p^rank with their Swan slopes.
/// The slope depends only on the line a character spans; trivial characters carry
/// slope 0 and are only counted.
class BreakRep {
 public:
  using Vec = std::vector<std::int64_t>;

  BreakRep(std::int64_t p, std::size_t rank) : p_(p), rank_(rank) {
    require(rank == 1 || rank == 2, ErrorKind::invalid_argument, "wild group rank must be 1 or 2");
  }

  /// Declares the slope on the line through v.
  void set_line_break(const Vec& v, const Rational& b) {
    require(b > 0, ErrorKind::invalid_argument, "nontrivial characters have positive slope");
    lines_[line_of(v)] = b;
  }

  std::optional<Rational> line_break(const Vec& v) const {
    auto it = lines_.find(line_of(v));
    if (it == lines_.end()) return std::nullopt;
    return it->second;
  }

  void add(const Vec& v) {
    if (is_zero(v)) {
      ++trivial_;
      return;
    }
    require(line_break(v).has_value(), ErrorKind::invalid_argument, "no slope declared for this character");
    chars_.push_back(reduce(v));
  }

  std::int64_t prime() const { return p_; }
  std::size_t rank() const { return rank_; }
  const std::vector<Vec>& characters() const { return chars_; }
  std::int64_t trivial_count() const { return trivial_; }
  std::int64_t dim() const { return static_cast<std::int64_t>(chars_.size()) + trivial_; }

  Rational break_of(const Vec& v) const {
    if (is_zero(v)) return 0;
    auto b = line_break(v);
    require(b.has_value(), ErrorKind::invalid_argument, "no slope declared for this character");
    return *b;
  }

  /// Pointwise products; a product off every declared line gets the larger of two
  /// distinct slopes.
  friend BreakRep tensor(const BreakRep& x, const BreakRep& y) {
    require(x.p_ == y.p_ && x.rank_ == y.rank_, ErrorKind::model_mismatch, "break reps on different wild groups");
    BreakRep out(x.p_, x.rank_);
    out.lines_ = x.lines_;
    for (const auto& [l, b] : y.lines_) out.lines_[l] = b;
    auto all = [](const BreakRep& r) {
      std::vector<Vec> v = r.chars_;
      for (std::int64_t i = 0; i < r.trivial_; ++i) v.emplace_back(r.rank_, 0);
      return v;
    };
    for (const auto& u : all(x))
      for (const auto& w : all(y)) {
        Vec s(x.rank_);
        for (std::size_t k = 0; k < x.rank_; ++k) s[k] = u[k] + w[k];
        if (!out.is_zero(s) && !out.line_break(s)) {
          const Rational bu = x.break_of(u), bw = y.break_of(w);
          require(bu != bw, ErrorKind::precondition, "slope of a product of equal-slope characters is undetermined");
          out.lines_[out.line_of(s)] = std::max(bu, bw);
        }
        out.add(s);
      }
    return out;
  }

 private:
  Vec reduce(const Vec& v) const {
    require(v.size() == rank_, ErrorKind::invalid_argument, "character vector has the wrong length");
    Vec r(rank_);
    for (std::size_t k = 0; k < rank_; ++k) r[k] = nt::mod(v[k], p_);
    return r;
  }

  bool is_zero(const Vec& v) const {
    const Vec r = reduce(v);
    return std::all_of(r.begin(), r.end(), [](std::int64_t c) { return c == 0; });
  }

  /// Scales v so that its first nonzero coordinate is 1.
  Vec line_of(const Vec& v) const {
    Vec r = reduce(v);
    auto lead = std::find_if(r.begin(), r.end(), [](std::int64_t c) { return c != 0; });
    require(lead != r.end(), ErrorKind::invalid_argument, "the trivial character spans no line");
    const auto inv = static_cast<std::int64_t>(nt::inv_mod(static_cast<std::uint64_t>(*lead), static_cast<std::uint64_t>(p_)));
    for (auto& c : r) c = nt::mod(c * inv, p_);
    return r;
  }

  std::int64_t p_;
  std::size_t rank_;
  std::map<Vec, Rational> lines_;
  std::vector<Vec> chars_;
  std::int64_t trivial_ = 0;
};

inline Rational swan_break(const BreakRep& rep) {
  Rational total = 0;
  for (const auto& v : rep.characters()) total += rep.break_of(v);
  return total;
}

/// Restrictions of rho_{J_a}, rho_{J_p} to the wild group F_p x F_p: chi_a^i with slope
/// 1/(p-1) and chi_p^j with slope p/(p-1), i, j = 1..p-1.
struct JointBreakModel {
  BreakRep ja;
  BreakRep jp;
};

inline JointBreakModel joint_break_model(const FamilyParams& params) {
  const std::int64_t p = params.p;
  JointBreakModel out{BreakRep(p, 2), BreakRep(p, 2)};
  out.ja.set_line_break({1, 0}, Rational(1, p - 1));
  out.jp.set_line_break({0, 1}, Rational(p, p - 1));
  for (std::int64_t i = 1; i < p; ++i) {
    out.ja.add({i, 0});
    out.jp.add({0, i});
  }
  return out;
}

struct SharpnessReport {
  FamilyParams params;
  std::int64_t disc_v_a = 0, disc_v_p = 0;
  std::int64_t sw_a = 0, sw_p = 0;                    // discriminant path
  Rational sw_a_filtration, sw_p_filtration;        // filtration path
  Rational sw_a_break, sw_p_break;                  // break path
  Rational a_a, a_p;
  std::int64_t deg_a = 0, deg_p = 0, deg_tensor = 0;
  std::int64_t dim = 0;
  Rational sw_tensor, a_tensor;
  Rational thm35_rhs, thm37_rhs, c_p;
  bool equal = false;
  std::vector<std::string> failures;
};

inline SharpnessReport verify_sharpness(const FamilyParams& given) {
  const FamilyParams params = validate_params(given.p, given.a);
  const std::int64_t p = params.p;
  SharpnessReport r;
  r.params = params;
  r.disc_v_a = disc_valuation(p, params.a);
  r.disc_v_p = disc_valuation(p, p);
  r.sw_a = swan_jacobian(params, params.a);
  r.sw_p = swan_jacobian(params, p);

  const SingleModel ma = filtration_model_single(params, params.a);
  const SingleModel mp = filtration_model_single(params, p);
  const WDRep rho_a(ma.model, {{ma.rep, 1}});
  const WDRep rho_p(mp.model, {{mp.rep, 1}});
  r.sw_a_filtration = swan_conductor(rho_a);
  r.sw_p_filtration = swan_conductor(rho_p);
  r.a_a = artin_conductor(rho_a);
  r.a_p = artin_conductor(rho_p);
  r.deg_a = degree(rho_a);
  r.deg_p = degree(rho_p);
  r.dim = rho_a.dim();

  const JointBreakModel joint = joint_break_model(params);
  r.sw_a_break = swan_break(joint.ja);
  r.sw_p_break = swan_break(joint.jp);
  const BreakRep prod = tensor(joint.ja, joint.jp);
  r.sw_tensor = swan_break(prod);
  // G_0-invariants sit inside the G_1-invariants, which are the trivial characters.
  require(prod.trivial_count() == 0, ErrorKind::precondition, "tensor has wild-trivial part; tame term undetermined");
  r.deg_tensor = 0;
  r.a_tensor = Rational(prod.dim() - r.deg_tensor) + r.sw_tensor;

  const Rational sw_min = std::min(r.sw_a_break, r.sw_p_break);
  r.thm35_rhs = Rational(r.dim) * r.sw_p_break + Rational(r.dim) * r.sw_a_break - Rational(swan_coefficient(p)) * sw_min;
  r.c_p = Rational(std::min({swan_coefficient(p), r.dim - r.deg_a, r.dim - r.deg_p}));
  r.thm37_rhs = Rational(r.dim) * r.a_p + Rational(r.dim) * r.a_a - r.c_p * std::min(r.a_a, r.a_p) -
                Rational(r.deg_tensor - r.deg_a * r.deg_p);

  auto check = [&](bool ok, const std::string& what) {
    if (!ok) r.failures.push_back(what);
  };
  check(r.sw_a == 1, "Sw(J_a) = 1");
  check(r.sw_p == p, "Sw(J_p) = p");
  check(r.disc_v_a == p && r.disc_v_p == 2 * p - 1, "v_p(disc) = p + (p-1) v_p(alpha)");
  check(r.sw_a_filtration == r.sw_a && r.sw_p_filtration == r.sw_p, "filtration Swan = discriminant Swan");
  check(r.sw_a_break == r.sw_a && r.sw_p_break == r.sw_p, "break Swan = discriminant Swan");
  check(r.a_a == Rational(p - 1 + r.sw_a) && r.a_p == Rational(p - 1 + r.sw_p), "a(J_alpha) = (p-1) + Sw(J_alpha)");
  check(r.deg_a == 0 && r.deg_p == 0, "degree terms vanish");
  check(r.sw_tensor == Rational(p * (p - 1)), "Sw(tensor) = p(p-1)");
  check(r.a_tensor == Rational((2 * p - 1) * (p - 1)), "a(tensor) = (2p-1)(p-1)");
  check(r.sw_tensor == r.thm35_rhs, "Swan bound attained");
  check(r.a_tensor == r.thm37_rhs, "main bound attained");
  r.equal = r.failures.empty();
  return r;
}

}  // namespace wdcond
