#pragma once

// Class functions and characters of a finite group; every conductor quantity
// in this library is an average of such functions over a subgroup.

#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "wdcond/cyclotomic.hpp"
#include "wdcond/error.hpp"
#include "wdcond/group.hpp"

namespace wdcond {

/// One value per conjugacy class, all held in a common cyclotomic field.
class ClassFunction {
 public:
  ClassFunction(GroupPtr group, std::vector<CycloNum> values) : group_(std::move(group)), values_(std::move(values)) {
    require(values_.size() == group_->num_classes(), ErrorKind::invalid_argument,
            "class function needs one value per conjugacy class");
    normalize_field();
  }

  static ClassFunction constant(const GroupPtr& g, const Rational& q) {
    return ClassFunction(g, std::vector<CycloNum>(g->num_classes(), CycloNum(q)));
  }

  const GroupPtr& group_ptr() const { return group_; }
  const FiniteGroup& group() const { return *group_; }
  const std::vector<CycloNum>& values() const { return values_; }
  const CycloNum& on_class(std::size_t c) const { return values_[c]; }
  const CycloNum& operator()(Element g) const { return values_[group_->class_of(g)]; }
  int field_conductor() const { return field_; }

  /// Value at the identity.
  const CycloNum& degree() const { return values_[group_->identity_class()]; }

  /// g -> f(g^{-1})
  ClassFunction dual() const {
    std::vector<CycloNum> out(values_.size());
    for (std::size_t c = 0; c < values_.size(); ++c) out[c] = values_[group_->inverse_class(c)];
    return ClassFunction(group_, std::move(out));
  }

  /// g -> conj(f(g))
  ClassFunction complex_conjugate() const {
    std::vector<CycloNum> out;
    out.reserve(values_.size());
    for (const auto& v : values_) out.push_back(v.conj());
    return ClassFunction(group_, std::move(out));
  }

  /// g -> f(g^k); for a character and k prime to |G| this is a Galois conjugate.
  ClassFunction power_twist(std::int64_t k) const {
    std::vector<CycloNum> out(values_.size());
    for (std::size_t c = 0; c < values_.size(); ++c) out[c] = values_[group_->power_class(c, k)];
    return ClassFunction(group_, std::move(out));
  }

  ClassFunction scaled(const Rational& q) const {
    std::vector<CycloNum> out;
    out.reserve(values_.size());
    for (const auto& v : values_) out.push_back(v.scaled(q));
    return ClassFunction(group_, std::move(out));
  }

  friend ClassFunction operator+(const ClassFunction& a, const ClassFunction& b) {
    a.check_same_group(b);
    std::vector<CycloNum> out(a.values_.size());
    for (std::size_t c = 0; c < out.size(); ++c) out[c] = a.values_[c] + b.values_[c];
    return ClassFunction(a.group_, std::move(out));
  }

  friend ClassFunction operator-(const ClassFunction& a, const ClassFunction& b) {
    a.check_same_group(b);
    std::vector<CycloNum> out(a.values_.size());
    for (std::size_t c = 0; c < out.size(); ++c) out[c] = a.values_[c] - b.values_[c];
    return ClassFunction(a.group_, std::move(out));
  }

  /// Pointwise product (tensor product of representations).
  friend ClassFunction operator*(const ClassFunction& a, const ClassFunction& b) {
    a.check_same_group(b);
    std::vector<CycloNum> out(a.values_.size());
    for (std::size_t c = 0; c < out.size(); ++c) out[c] = a.values_[c] * b.values_[c];
    return ClassFunction(a.group_, std::move(out));
  }

  friend bool operator==(const ClassFunction& a, const ClassFunction& b) {
    return a.group_->id() == b.group_->id() && a.values_ == b.values_;
  }

  void check_same_group(const ClassFunction& other) const {
    require(group_->id() == other.group_->id(), ErrorKind::model_mismatch, "class functions live on different groups");
  }

 private:
  void normalize_field() {
    int n = static_cast<int>(group_->exponent());
    for (const auto& v : values_) n = std::lcm(n, v.conductor());
    field_ = n;
    for (auto& v : values_)
      if (v.conductor() != n) v = v.promote(n);
  }

  GroupPtr group_;
  std::vector<CycloNum> values_;
  int field_ = 1;
};

/// (1/|H|) sum_{h in H} f(h) conj(g(h)), exact in Q(zeta_N).
inline CycloNum inner_product_value(const ClassFunction& f, const ClassFunction& g, const Subgroup& h) {
  f.check_same_group(g);
  require(h.parent()->id() == f.group().id(), ErrorKind::model_mismatch, "subgroup of a different group");
  CycloNum acc = CycloNum::zero(std::lcm(f.field_conductor(), g.field_conductor()));
  const auto& counts = h.class_counts();
  for (std::size_t c = 0; c < counts.size(); ++c) {
    if (counts[c] == 0) continue;
    acc += (f.on_class(c) * g.on_class(c).conj()).scaled(Rational(counts[c]));
  }
  return acc.scaled(Rational(1, static_cast<std::int64_t>(h.order())));
}

/// <f, g>_H as an exact rational; throws NonRational for class functions whose
/// product average leaves Q.
inline Rational inner_product(const ClassFunction& f, const ClassFunction& g, const Subgroup& h) {
  return inner_product_value(f, g, h).rational_value();
}

inline Rational inner_product(const ClassFunction& f, const ClassFunction& g) {
  return inner_product(f, g, whole_group(f.group_ptr()));
}

/// (1/|H|) sum_{h in H} f(h).
inline CycloNum average_over(const ClassFunction& f, const Subgroup& h) {
  require(h.parent()->id() == f.group().id(), ErrorKind::model_mismatch, "subgroup of a different group");
  CycloNum acc = CycloNum::zero(f.field_conductor());
  const auto& counts = h.class_counts();
  for (std::size_t c = 0; c < counts.size(); ++c)
    if (counts[c] != 0) acc += f.on_class(c).scaled(Rational(counts[c]));
  return acc.scaled(Rational(1, static_cast<std::int64_t>(h.order())));
}

/// dim of the H-fixed space, <Res_H f, 1>_H; NonCharacter unless a nonnegative integer.
inline std::int64_t fixed_dim(const ClassFunction& f, const Subgroup& h) {
  const CycloNum avg = average_over(f, h);
  require(avg.is_rational() && is_integer(avg.rational_value()) && avg.rational_value() >= 0,
          ErrorKind::non_character, "fixed-space average " + avg.str() + " is not a nonnegative integer");
  return to_int64(avg.rational_value());
}

/// Re-indexes f to the conjugacy classes of H viewed as a group.
inline ClassFunction restrict_to(const ClassFunction& f, const Subgroup& h) {
  const GroupPtr sub = h.as_group();
  std::vector<CycloNum> values(sub->num_classes());
  for (std::size_t c = 0; c < sub->num_classes(); ++c) values[c] = f(h.elements()[sub->class_rep(c)]);
  return ClassFunction(sub, std::move(values));
}

/// A class function known to be the character of a genuine (possibly zero) representation.
class Character {
 public:
  const ClassFunction& function() const { return f_; }
  operator const ClassFunction&() const { return f_; }  // NOLINT: characters are class functions

  const GroupPtr& group_ptr() const { return f_.group_ptr(); }
  const FiniteGroup& group() const { return f_.group(); }
  const CycloNum& operator()(Element g) const { return f_(g); }
  const CycloNum& on_class(std::size_t c) const { return f_.on_class(c); }

  /// |tau|
  std::int64_t dim() const { return to_int64(f_.degree().rational_value()); }
  bool is_zero() const { return dim() == 0; }

  Character dual() const { return Character(f_.dual()); }
  Character galois_conjugate(std::int64_t k) const { return Character(f_.power_twist(k)); }
  Character multiple(std::int64_t m) const {
    require(m >= 0, ErrorKind::invalid_argument, "character multiples must be nonnegative");
    return Character(f_.scaled(Rational(m)));
  }

  friend Character operator+(const Character& a, const Character& b) { return Character(a.f_ + b.f_); }
  friend Character operator*(const Character& a, const Character& b) { return Character(a.f_ * b.f_); }
  friend bool operator==(const Character& a, const Character& b) { return a.f_ == b.f_; }

  static Character zero(const GroupPtr& g) { return Character(ClassFunction::constant(g, 0)); }
  static Character trivial(const GroupPtr& g) { return Character(ClassFunction::constant(g, 1)); }

  static Character regular(const GroupPtr& g) {
    std::vector<CycloNum> values(g->num_classes(), CycloNum(0));
    values[g->identity_class()] = CycloNum(static_cast<std::int64_t>(g->order()));
    return Character(ClassFunction(g, std::move(values)));
  }

  /// Permutation character of G acting on left cosets of H.
  static Character permutation(const Subgroup& h) {
    const auto& g = *h.parent();
    std::vector<CycloNum> values(g.num_classes());
    for (std::size_t c = 0; c < g.num_classes(); ++c) {
      // #fixed cosets of x = |C_G(x)| |C ∩ H| / |H|
      const std::int64_t centralizer = static_cast<std::int64_t>(g.order() / g.class_size(c));
      values[c] = CycloNum(Rational(centralizer * h.class_counts()[c], static_cast<std::int64_t>(h.order())));
    }
    return Character(ClassFunction(h.parent(), std::move(values)));
  }

  /// Trusts the caller; use only for functions that are characters by construction.
  static Character assume(ClassFunction f) { return Character(std::move(f)); }

 private:
  explicit Character(ClassFunction f) : f_(std::move(f)) {}
  ClassFunction f_;
};

inline std::int64_t fixed_dim(const Character& chi, const Subgroup& h) { return fixed_dim(chi.function(), h); }

inline Character restrict_to(const Character& chi, const Subgroup& h) {
  return Character::assume(restrict_to(chi.function(), h));
}

/// (1/|G|) sum_g psi(g^2), as a rational; the caller checks irreducibility.
inline Rational indicator_average(const ClassFunction& psi) {
  const auto& g = psi.group();
  CycloNum acc = CycloNum::zero(psi.field_conductor());
  for (std::size_t c = 0; c < g.num_classes(); ++c)
    acc += psi.on_class(g.power_class(c, 2)).scaled(Rational(static_cast<std::int64_t>(g.class_size(c))));
  return acc.scaled(Rational(1, static_cast<std::int64_t>(g.order()))).rational_value();
}

/// Frobenius–Schur indicator of an irreducible character: -1, 0 or +1.
inline int frobenius_schur(const Character& psi) {
  require(inner_product(psi, psi) == 1, ErrorKind::not_irreducible, "Frobenius-Schur indicator needs an irreducible");
  return static_cast<int>(to_int64(indicator_average(psi)));
}

/// chi(g^k) = chi(g) for all g and all k prime to ord(g). Power sums of the
/// eigenvalues of tau(g) are the values chi(g^j), so by Newton's identities this
/// is the same as every characteristic polynomial having rational coefficients.
inline bool is_rational_charpoly(const ClassFunction& chi) {
  const auto& g = chi.group();
  for (std::size_t c = 0; c < g.num_classes(); ++c) {
    const std::int64_t ord = g.element_order(g.class_rep(c));
    for (std::int64_t k = 2; k < ord; ++k)
      if (std::gcd(k, ord) == 1 && !(chi.on_class(g.power_class(c, k)) == chi.on_class(c))) return false;
  }
  return true;
}

}  // namespace wdcond
