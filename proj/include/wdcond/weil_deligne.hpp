#pragma once

// Weil–Deligne block data  rho = (+)_n sigma_n (x) sp(n)  over a finite model of
// inertia, with Artin/Swan conductors, L-polynomial degrees, tensor products via
// sp(n) (x) sp(m) = (+)_i sp(n+m+1-2i), and the local tensor-product bounds for
// data shaped like abelian varieties, rho = tau (+) sigma (x) sp(2).
//
// Unramified twists are invisible here: they restrict trivially to G_0 and so
// change none of a, Sw, deg.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "wdcond/character.hpp"
#include "wdcond/character_table.hpp"
#include "wdcond/error.hpp"
#include "wdcond/filtration_conductor.hpp"
#include "wdcond/group.hpp"
#include "wdcond/numtheory.hpp"

namespace wdcond {

/// Finite quotient of inertia with its lower-numbering ramification groups.
class InertiaModel {
 public:
  InertiaModel(Filtration filtration, std::int64_t p) : filtration_(std::move(filtration)), p_(p) {
    require(nt::is_prime(p_), ErrorKind::not_prime, "residue characteristic must be prime");
    const Subgroup& wild = filtration_.length() > 1 ? filtration_.at(1) : filtration_.at(0);
    require(nt::log_exact(static_cast<std::int64_t>(wild.order()), p_) >= 0, ErrorKind::not_p_group,
            "wild inertia G_1 must be a " + std::to_string(p_) + "-group");
  }

  const GroupPtr& group() const { return filtration_.parent(); }
  const Filtration& filtration() const { return filtration_; }
  std::int64_t residue_char() const { return p_; }
  const Subgroup& inertia() const { return filtration_.at(0); }

  friend bool operator==(const InertiaModel& a, const InertiaModel& b) {
    return a.p_ == b.p_ && a.filtration_.chain() == b.filtration_.chain();
  }

 private:
  Filtration filtration_;
  std::int64_t p_;
};

using ModelPtr = std::shared_ptr<const InertiaModel>;

inline ModelPtr make_model(Filtration filtration, std::int64_t p) {
  return std::make_shared<const InertiaModel>(std::move(filtration), p);
}

/// sp(n) (x) sp(m) = (+)_{i=1}^{min(n,m)} sp(n+m+1-2i), up to unramified twists.
inline std::vector<std::int64_t> clebsch_gordan(std::int64_t n, std::int64_t m) {
  require(n >= 1 && m >= 1, ErrorKind::invalid_argument, "sp(n) needs n >= 1");
  std::vector<std::int64_t> out;
  for (std::int64_t i = 1; i <= std::min(n, m); ++i) out.push_back(n + m + 1 - 2 * i);
  return out;
}

/// Frobenius-semisimple Weil–Deligne representation as its block multiset.
class WDRep {
 public:
  explicit WDRep(ModelPtr model) : model_(std::move(model)) {}

  WDRep(ModelPtr model, const std::vector<std::pair<Character, std::int64_t>>& blocks) : model_(std::move(model)) {
    for (const auto& [sigma, n] : blocks) add_block(sigma, n);
  }

  /// Adds sigma (x) sp(n).
  void add_block(const Character& sigma, std::int64_t n) {
    require(n >= 1, ErrorKind::invalid_argument, "sp(n) needs n >= 1");
    require(sigma.group().id() == model_->group()->id(), ErrorKind::model_mismatch, "block character on a different group");
    if (sigma.is_zero()) return;
    auto it = blocks_.find(n);
    if (it == blocks_.end()) {
      blocks_.emplace(n, sigma);
    } else {
      it->second = it->second + sigma;
    }
  }

  const ModelPtr& model() const { return model_; }
  /// n -> sigma_n, zero blocks omitted.
  const std::map<std::int64_t, Character>& blocks() const { return blocks_; }

  std::int64_t dim() const {
    std::int64_t d = 0;
    for (const auto& [n, sigma] : blocks_) d += n * sigma.dim();
    return d;
  }

  friend bool operator==(const WDRep& a, const WDRep& b) {
    return *a.model_ == *b.model_ && a.blocks_ == b.blocks_;
  }

 private:
  ModelPtr model_;
  std::map<std::int64_t, Character> blocks_;
};

inline WDRep direct_sum(const WDRep& a, const WDRep& b) {
  require(*a.model() == *b.model(), ErrorKind::model_mismatch, "direct sum across different inertia models");
  WDRep out = a;
  for (const auto& [n, sigma] : b.blocks()) out.add_block(sigma, n);
  return out;
}

/// sum over blocks of n a(sigma_n) + (n-1) |sigma_n^{G_0}|
inline Rational artin_conductor(const WDRep& rho) {
  const auto& f = rho.model()->filtration();
  Rational total = 0;
  for (const auto& [n, sigma] : rho.blocks())
    total += Rational(n) * conductor_exponent(sigma, f) + Rational((n - 1) * fixed_dim(sigma, f.at(0)));
  return total;
}

/// sum over blocks of n Sw(sigma_n)
inline Rational swan_conductor(const WDRep& rho) {
  const auto& f = rho.model()->filtration();
  Rational total = 0;
  for (const auto& [n, sigma] : rho.blocks()) total += Rational(n) * swan_exponent(sigma, f);
  return total;
}

/// L-polynomial degree: one fixed-space contribution per sp block.
inline std::int64_t degree(const WDRep& rho) {
  std::int64_t d = 0;
  for (const auto& [n, sigma] : rho.blocks()) d += fixed_dim(sigma, rho.model()->inertia());
  return d;
}

inline WDRep tensor(const WDRep& a, const WDRep& b) {
  require(*a.model() == *b.model(), ErrorKind::model_mismatch, "tensor product across different inertia models");
  WDRep out(a.model());
  for (const auto& [n, s1] : a.blocks())
    for (const auto& [m, s2] : b.blocks()) {
      const Character prod = s1 * s2;
      for (auto k : clebsch_gordan(n, m)) out.add_block(prod, k);
    }
  return out;
}

/// rho = tau (+) sigma (x) sp(2), tau symplectic and sigma self-dual on G_0, with
/// tau (+) sigma (+) sigma having rational characteristic polynomials.
class AbVarDatum {
 public:
  static AbVarDatum make(ModelPtr model, Character tau, Character sigma) {
    require(tau.group().id() == model->group()->id() && sigma.group().id() == model->group()->id(),
            ErrorKind::model_mismatch, "abelian-variety datum on a different group");
    require(is_symplectic(tau), ErrorKind::not_symplectic, "tau must be symplectic on G_0");
    require(sigma.dual() == sigma, ErrorKind::invalid_argument, "sigma must be self-dual");
    require(is_rational_charpoly(tau + sigma + sigma), ErrorKind::not_rational,
            "tau + 2 sigma must have rational characteristic polynomials");
    return AbVarDatum(std::move(model), std::move(tau), std::move(sigma));
  }

  const ModelPtr& model() const { return model_; }
  const Character& tau() const { return tau_; }
  const Character& sigma() const { return sigma_; }
  const WDRep& rho() const { return rho_; }
  std::int64_t dim() const { return rho_.dim(); }

  /// tau = m 1 and sigma = n 1 on G_0.
  bool is_semistable() const {
    const auto& g0 = model_->inertia();
    return fixed_dim(tau_, g0) == tau_.dim() && fixed_dim(sigma_, g0) == sigma_.dim();
  }

 private:
  AbVarDatum(ModelPtr model, Character tau, Character sigma)
      : model_(std::move(model)), tau_(std::move(tau)), sigma_(std::move(sigma)), rho_(model_) {
    rho_.add_block(tau_, 1);
    rho_.add_block(sigma_, 2);
  }

  ModelPtr model_;
  Character tau_;
  Character sigma_;
  WDRep rho_;
};

/// Every quantity entering the local bounds for one pair.
struct LocalPairTerms {
  std::int64_t dim_a = 0, dim_b = 0;
  Rational a_a, a_b, sw_a, sw_b;
  std::int64_t deg_a = 0, deg_b = 0, deg_ab = 0;
  Rational a_ab, sw_ab;
  std::int64_t dim_ab = 0;
  std::int64_t p = 0;

  std::int64_t degree_excess() const { return deg_ab - deg_a * deg_b; }
};

inline LocalPairTerms local_terms(const AbVarDatum& a, const AbVarDatum& b) {
  require(*a.model() == *b.model(), ErrorKind::model_mismatch, "local pair on different inertia models");
  LocalPairTerms t;
  const WDRep ab = tensor(a.rho(), b.rho());
  t.dim_a = a.dim();
  t.dim_b = b.dim();
  t.a_a = artin_conductor(a.rho());
  t.a_b = artin_conductor(b.rho());
  t.sw_a = swan_conductor(a.rho());
  t.sw_b = swan_conductor(b.rho());
  t.deg_a = degree(a.rho());
  t.deg_b = degree(b.rho());
  t.deg_ab = degree(ab);
  t.a_ab = artin_conductor(ab);
  t.sw_ab = swan_conductor(ab);
  t.dim_ab = ab.dim();
  t.p = a.model()->residue_char();
  return t;
}

/// A semistable; lhs = a(rho_A (x) rho_B),
/// rhs = |rho_A| a(rho_B) + deg(B) a(rho_A) - (deg(A⊠B) - deg(A) deg(B)); contract lhs = rhs.
inline Sides semistable_equality(const AbVarDatum& a, const AbVarDatum& b) {
  require(a.is_semistable(), ErrorKind::not_semistable, "A must restrict to 1^m + sp(2)^n on inertia");
  const auto t = local_terms(a, b);
  return {t.a_ab, Rational(t.dim_a) * t.a_b + Rational(t.deg_b) * t.a_a - Rational(t.degree_excess())};
}

/// Same equality assembled without forming the tensor product:
/// a(rho_A (x) rho_B) = n |tau_B^{G_0}| + |rho_A| a(rho_B) for A = m 1 + n sp(2).
inline Rational semistable_closed_form(const AbVarDatum& a, const AbVarDatum& b) {
  require(a.is_semistable(), ErrorKind::not_semistable, "A must restrict to 1^m + sp(2)^n on inertia");
  const std::int64_t n = a.sigma().dim();
  return Rational(n * fixed_dim(b.tau(), b.model()->inertia())) + Rational(a.dim()) * artin_conductor(b.rho());
}

inline std::int64_t swan_coefficient(std::int64_t p) { return std::max<std::int64_t>(2, p - 1); }

/// lhs = Sw(rho_A (x) rho_B); rhs = |rho_A| Sw_B + |rho_B| Sw_A - max{2,p-1} min{Sw_A, Sw_B}.
inline Sides swan_bound(const AbVarDatum& a, const AbVarDatum& b) {
  const auto t = local_terms(a, b);
  return {t.sw_ab, Rational(t.dim_a) * t.sw_b + Rational(t.dim_b) * t.sw_a -
                       Rational(swan_coefficient(t.p)) * std::min(t.sw_a, t.sw_b)};
}

/// Codimension of the G_0-invariants of rho_A (x) rho_B against the four-term expansion.
inline Sides tame_identity_sides(const AbVarDatum& a, const AbVarDatum& b) {
  const auto t = local_terms(a, b);
  const std::int64_t qa = t.dim_a - t.deg_a;
  const std::int64_t qb = t.dim_b - t.deg_b;
  const std::int64_t lhs = t.dim_ab - t.deg_ab;
  const std::int64_t rhs = t.dim_a * qb + t.dim_b * qa - qa * qb - t.degree_excess();
  return {Rational(lhs), Rational(rhs)};
}

inline Sides tame_identity(const AbVarDatum& a, const AbVarDatum& b) {
  require(artin_conductor(a.rho()) > 1 && artin_conductor(b.rho()) > 1, ErrorKind::precondition,
          "tame identity needs a(rho_A) > 1 and a(rho_B) > 1");
  return tame_identity_sides(a, b);
}

struct MainBound {
  Sides sides;
  Rational c_p;
  /// When a(rho_A) <= 1 (or a(rho_B) <= 1) the bound is attained by the semistable formula.
  std::optional<Rational> equality_value;
};

inline Rational c_p_constant(const LocalPairTerms& t) {
  return Rational(std::min({swan_coefficient(t.p), t.dim_a - t.deg_a, t.dim_b - t.deg_b}));
}

inline MainBound main_bound(const AbVarDatum& a, const AbVarDatum& b) {
  const auto t = local_terms(a, b);
  MainBound out;
  out.c_p = c_p_constant(t);
  out.sides = {t.a_ab, Rational(t.dim_a) * t.a_b + Rational(t.dim_b) * t.a_a - out.c_p * std::min(t.a_a, t.a_b) -
                           Rational(t.degree_excess())};
  if (t.a_a <= 1) {
    out.equality_value = Rational(t.dim_a) * t.a_b + Rational(t.deg_b) * t.a_a - Rational(t.degree_excess());
  } else if (t.a_b <= 1) {
    out.equality_value = Rational(t.dim_b) * t.a_a + Rational(t.deg_a) * t.a_b - Rational(t.degree_excess());
  }
  return out;
}

struct SimplifiedBound {
  Sides sides;
  std::int64_t delta = 0;
};

inline std::int64_t simplified_delta(const LocalPairTerms& t) {
  return t.a_a * t.a_b > 1 ? t.degree_excess() : 0;
}

/// Coefficient 2 and Delta(A,B) = deg(A⊠B) - deg(A)deg(B) only when a(rho_A) a(rho_B) > 1.
inline SimplifiedBound simplified_bound(const AbVarDatum& a, const AbVarDatum& b) {
  const auto t = local_terms(a, b);
  SimplifiedBound out;
  out.delta = simplified_delta(t);
  out.sides = {t.a_ab, Rational(t.dim_a) * t.a_b + Rational(t.dim_b) * t.a_a - 2 * std::min(t.a_a, t.a_b) -
                           Rational(out.delta)};
  return out;
}

/// deg(rho_A (x) rho_A) - deg(rho_A)^2; at least 1 whenever a(rho_A) > 0.
inline std::int64_t degree_gap(const AbVarDatum& a) {
  const std::int64_t d = degree(a.rho());
  return degree(tensor(a.rho(), a.rho())) - d * d;
}

}  // namespace wdcond
