#pragma once

// Exact arithmetic in cyclotomic fields Q(zeta_N), power basis modulo Phi_N.

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <ostream>
#include <string>
#include <vector>

#include "wdcond/error.hpp"
#include "wdcond/numtheory.hpp"
#include "wdcond/rational.hpp"

namespace wdcond {

namespace detail {

using IntPoly = std::vector<std::int64_t>;  // low degree first

inline IntPoly exact_divide(IntPoly num, const IntPoly& den) {
  // den is monic
  const std::size_t dd = den.size() - 1;
  IntPoly quot(num.size() - dd, 0);
  for (std::size_t i = num.size(); i-- > dd;) {
    const std::int64_t c = num[i];
    quot[i - dd] = c;
    if (c == 0) continue;
    for (std::size_t k = 0; k <= dd; ++k) num[i - dd + k] -= c * den[k];
  }
  for (std::size_t k = 0; k < dd; ++k)
    require(num[k] == 0, ErrorKind::invalid_argument, "inexact cyclotomic division");
  return quot;
}

inline std::shared_ptr<const IntPoly> cyclotomic_polynomial(int n) {
  static std::mutex mutex;
  static std::map<int, std::shared_ptr<const IntPoly>> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(n); it != cache.end()) return it->second;
  }
  IntPoly poly(static_cast<std::size_t>(n) + 1, 0);
  poly[0] = -1;
  poly[static_cast<std::size_t>(n)] = 1;
  for (int d = 1; d < n; ++d)
    if (n % d == 0) poly = exact_divide(poly, *cyclotomic_polynomial(d));
  auto shared = std::make_shared<const IntPoly>(std::move(poly));
  std::lock_guard lock(mutex);
  return cache.emplace(n, shared).first->second;
}

}  // namespace detail

/// Element of Q(zeta_N) stored as coordinates in 1, zeta, ..., zeta^{phi(N)-1}.
class CycloNum {
 public:
  CycloNum() : n_(1), coeffs_(1) {}
  CycloNum(const Rational& q) : n_(1), coeffs_{q} {}  // NOLINT: implicit by intent
  CycloNum(std::int64_t q) : n_(1), coeffs_{Rational(q)} {}  // NOLINT

  /// Zero of Q(zeta_N).
  static CycloNum zero(int n) { return from_exponents(n, {}); }

  static CycloNum rational(int n, const Rational& q) {
    CycloNum x = zero(n);
    x.coeffs_[0] = q;
    return x;
  }

  /// zeta_N^k.
  static CycloNum zeta(int n, std::int64_t k) {
    std::vector<Rational> raw(static_cast<std::size_t>(n));
    raw[static_cast<std::size_t>(nt::mod(k, n))] = 1;
    return from_exponents(n, std::move(raw));
  }

  /// Sum of raw[k] * zeta_N^k over any k (exponents taken mod N).
  static CycloNum from_exponents(int n, std::vector<Rational> raw) {
    require(n >= 1, ErrorKind::invalid_argument, "cyclotomic conductor must be positive");
    CycloNum x;
    x.n_ = n;
    x.coeffs_ = reduce(n, std::move(raw));
    return x;
  }

  /// Coordinates already in the power basis; length must be phi(N).
  static CycloNum from_coeffs(int n, std::vector<Rational> coeffs) {
    require(n >= 1, ErrorKind::invalid_argument, "cyclotomic conductor must be positive");
    require(coeffs.size() == static_cast<std::size_t>(nt::totient(n)), ErrorKind::input_error,
            "coefficient vector length must equal phi(N)");
    CycloNum x;
    x.n_ = n;
    x.coeffs_ = std::move(coeffs);
    return x;
  }

  int conductor() const { return n_; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }

  bool is_zero() const {
    for (const auto& c : coeffs_)
      if (c != 0) return false;
    return true;
  }

  bool is_rational() const {
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
      if (coeffs_[i] != 0) return false;
    return true;
  }

  Rational rational_value() const {
    require(is_rational(), ErrorKind::non_rational, "cyclotomic number " + str() + " is not rational");
    return coeffs_[0];
  }

  /// Re-express in Q(zeta_M); N must divide M.
  CycloNum promote(int m) const {
    if (m == n_) return *this;
    require(m % n_ == 0, ErrorKind::invalid_argument, "promotion target must be a multiple of N");
    const std::int64_t step = m / n_;
    std::vector<Rational> raw(static_cast<std::size_t>(m));
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
      raw[i * static_cast<std::size_t>(step)] = coeffs_[i];
    return from_exponents(m, std::move(raw));
  }

  /// zeta -> zeta^k, gcd(k, N) = 1.
  CycloNum galois(std::int64_t k) const {
    require(std::gcd(nt::mod(k, n_), static_cast<std::int64_t>(n_)) == 1 || n_ == 1,
            ErrorKind::invalid_argument, "Galois exponent must be coprime to the conductor");
    if (n_ <= 2) return *this;
    std::vector<Rational> raw(static_cast<std::size_t>(n_));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (coeffs_[i] == 0) continue;
      raw[static_cast<std::size_t>(nt::mod(static_cast<std::int64_t>(i) * k, n_))] += coeffs_[i];
    }
    return from_exponents(n_, std::move(raw));
  }

  /// Complex conjugation.
  CycloNum conj() const { return galois(-1); }

  /// Product of all Galois conjugates; a rational number.
  Rational norm() const {
    CycloNum prod = *this;
    for (std::int64_t k = 2; k < n_; ++k)
      if (std::gcd(k, static_cast<std::int64_t>(n_)) == 1) prod = prod * galois(k);
    return prod.rational_value();
  }

  CycloNum inverse() const {
    require(!is_zero(), ErrorKind::invalid_argument, "division by zero in Q(zeta_N)");
    CycloNum others = CycloNum::rational(n_, 1);
    for (std::int64_t k = 2; k < n_; ++k)
      if (std::gcd(k, static_cast<std::int64_t>(n_)) == 1) others = others * galois(k);
    const Rational n = (others * *this).rational_value();
    return others * CycloNum(Rational(1) / n);
  }

  friend CycloNum operator+(const CycloNum& x, const CycloNum& y) {
    if (x.n_ != y.n_) {
      const int m = std::lcm(x.n_, y.n_);
      return x.promote(m) + y.promote(m);
    }
    CycloNum r = x;
    for (std::size_t i = 0; i < r.coeffs_.size(); ++i) r.coeffs_[i] += y.coeffs_[i];
    return r;
  }

  CycloNum operator-() const {
    CycloNum r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
  }

  friend CycloNum operator-(const CycloNum& x, const CycloNum& y) { return x + (-y); }

  friend CycloNum operator*(const CycloNum& x, const CycloNum& y) {
    if (x.n_ != y.n_) {
      if (y.n_ == 1) return x.scaled(y.coeffs_[0]);
      if (x.n_ == 1) return y.scaled(x.coeffs_[0]);
      const int m = std::lcm(x.n_, y.n_);
      return x.promote(m) * y.promote(m);
    }
    const std::size_t phi = x.coeffs_.size();
    if (phi == 1) return CycloNum::rational(x.n_, x.coeffs_[0] * y.coeffs_[0]);
    std::vector<Rational> raw(2 * phi - 1);
    for (std::size_t i = 0; i < phi; ++i) {
      if (x.coeffs_[i] == 0) continue;
      for (std::size_t j = 0; j < phi; ++j) {
        if (y.coeffs_[j] == 0) continue;
        raw[i + j] += x.coeffs_[i] * y.coeffs_[j];
      }
    }
    CycloNum r;
    r.n_ = x.n_;
    r.coeffs_ = reduce(x.n_, std::move(raw));
    return r;
  }

  friend CycloNum operator/(const CycloNum& x, const CycloNum& y) { return x * y.inverse(); }

  CycloNum& operator+=(const CycloNum& y) { return *this = *this + y; }
  CycloNum& operator-=(const CycloNum& y) { return *this = *this - y; }
  CycloNum& operator*=(const CycloNum& y) { return *this = *this * y; }

  CycloNum scaled(const Rational& q) const {
    CycloNum r = *this;
    for (auto& c : r.coeffs_) c *= q;
    return r;
  }

  friend bool operator==(const CycloNum& x, const CycloNum& y) {
    if (x.n_ != y.n_) {
      const int m = std::lcm(x.n_, y.n_);
      return x.promote(m).coeffs_ == y.promote(m).coeffs_;
    }
    return x.coeffs_ == y.coeffs_;
  }

  /// e.g. "1 + 2*z5^2 - 1/3*z5^3"; z<N> denotes a primitive N-th root of unity.
  std::string str() const {
    std::string out;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      const Rational& c = coeffs_[i];
      if (c == 0) continue;
      const bool negative = c < 0;
      const Rational mag = negative ? Rational(-c) : c;
      if (out.empty()) {
        if (negative) out += "-";
      } else {
        out += negative ? " - " : " + ";
      }
      const std::string zeta_part =
          i == 0 ? "" : "z" + std::to_string(n_) + (i == 1 ? "" : "^" + std::to_string(i));
      if (i == 0) {
        out += to_display_string(mag);
      } else if (mag == 1) {
        out += zeta_part;
      } else {
        out += to_display_string(mag) + "*" + zeta_part;
      }
    }
    return out.empty() ? "0" : out;
  }

  friend std::ostream& operator<<(std::ostream& os, const CycloNum& x) { return os << x.str(); }

 private:
  static std::vector<Rational> reduce(int n, std::vector<Rational> raw) {
    const auto phi_poly = detail::cyclotomic_polynomial(n);
    const std::size_t phi = phi_poly->size() - 1;
    if (raw.size() > static_cast<std::size_t>(n)) {
      for (std::size_t i = static_cast<std::size_t>(n); i < raw.size(); ++i)
        raw[i % static_cast<std::size_t>(n)] += raw[i];
      raw.resize(static_cast<std::size_t>(n));
    }
    if (raw.size() < phi) raw.resize(phi);
    for (std::size_t d = raw.size(); d-- > phi;) {
      if (raw[d] == 0) continue;
      const Rational c = raw[d];
      for (std::size_t k = 0; k < phi; ++k) {
        const std::int64_t pk = (*phi_poly)[k];
        if (pk != 0) raw[d - phi + k] -= c * pk;
      }
      raw[d] = 0;
    }
    raw.resize(phi);
    return raw;
  }

  int n_;
  std::vector<Rational> coeffs_;
};

}  // namespace wdcond
