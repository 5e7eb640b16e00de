#pragma once

// Local-to-global conductor bookkeeping over a finite set of abstract primes.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "wdcond/error.hpp"
#include "wdcond/rational.hpp"
#include "wdcond/weil_deligne.hpp"

namespace wdcond {

/// Prime -> exponent; only positive exponents are stored.
class FactoredInteger {
 public:
  FactoredInteger() = default;

  explicit FactoredInteger(const std::map<std::int64_t, std::int64_t>& factors) {
    for (const auto& [p, e] : factors) set(p, e);
  }

  static FactoredInteger of(std::int64_t n) {
    require(n >= 1, ErrorKind::invalid_argument, "only positive integers factor");
    FactoredInteger out;
    for (std::int64_t d = 2; d * d <= n; ++d)
      while (n % d == 0) {
        ++out.factors_[d];
        n /= d;
      }
    if (n > 1) ++out.factors_[n];
    return out;
  }

  static FactoredInteger prime_power(std::int64_t p, std::int64_t e) {
    FactoredInteger out;
    out.set(p, e);
    return out;
  }

  std::int64_t exponent(std::int64_t p) const {
    auto it = factors_.find(p);
    return it == factors_.end() ? 0 : it->second;
  }

  const std::map<std::int64_t, std::int64_t>& factors() const { return factors_; }
  bool is_one() const { return factors_.empty(); }

  BigInt value() const {
    BigInt out = 1;
    for (const auto& [p, e] : factors_)
      for (std::int64_t i = 0; i < e; ++i) out *= p;
    return out;
  }

  FactoredInteger pow(std::int64_t k) const {
    require(k >= 0, ErrorKind::invalid_argument, "negative power of a factored integer");
    FactoredInteger out;
    for (const auto& [p, e] : factors_) out.set(p, e * k);
    return out;
  }

  friend FactoredInteger operator*(const FactoredInteger& a, const FactoredInteger& b) {
    FactoredInteger out = a;
    for (const auto& [p, e] : b.factors_) out.set(p, out.exponent(p) + e);
    return out;
  }

  friend FactoredInteger gcd(const FactoredInteger& a, const FactoredInteger& b) {
    FactoredInteger out;
    for (const auto& [p, e] : a.factors_) out.set(p, std::min(e, b.exponent(p)));
    return out;
  }

  friend FactoredInteger lcm(const FactoredInteger& a, const FactoredInteger& b) {
    FactoredInteger out = a;
    for (const auto& [p, e] : b.factors_) out.set(p, std::max(e, a.exponent(p)));
    return out;
  }

  /// a | b
  friend bool divides(const FactoredInteger& a, const FactoredInteger& b) {
    return std::all_of(a.factors_.begin(), a.factors_.end(),
                       [&](const auto& pe) { return pe.second <= b.exponent(pe.first); });
  }

  /// a / b; InconsistentInput unless b | a.
  friend FactoredInteger operator/(const FactoredInteger& a, const FactoredInteger& b) {
    require(divides(b, a), ErrorKind::inconsistent_input, "division " + a.str() + " / " + b.str() + " is not exact");
    FactoredInteger out = a;
    for (const auto& [p, e] : b.factors_) out.set(p, a.exponent(p) - e);
    return out;
  }

  friend bool operator==(const FactoredInteger&, const FactoredInteger&) = default;

  /// "2^3 * 5", "1" for the empty product.
  std::string str() const {
    if (factors_.empty()) return "1";
    std::string out;
    for (const auto& [p, e] : factors_) {
      if (!out.empty()) out += " * ";
      out += std::to_string(p) + (e == 1 ? "" : "^" + std::to_string(e));
    }
    return out;
  }

 private:
  void set(std::int64_t p, std::int64_t e) {
    require(p >= 2, ErrorKind::invalid_argument, "prime labels must be >= 2");
    require(e >= 0, ErrorKind::negative_exponent, "negative exponent at " + std::to_string(p));
    if (e == 0) {
      factors_.erase(p);
    } else {
      factors_[p] = e;
    }
  }

  std::map<std::int64_t, std::int64_t> factors_;
};

/// Published local invariants at one prime.
struct PrimeSummary {
  std::int64_t v_a = 0, v_b = 0;
  std::int64_t deg_a = 0, deg_b = 0, deg_ab = 0;
};

/// Full inertia-level data at one prime.
struct PrimeLocal {
  AbVarDatum a;
  AbVarDatum b;
};

struct PrimeRecord {
  std::int64_t prime = 0;
  std::variant<PrimeSummary, PrimeLocal> data;
};

struct GlobalDatum {
  std::int64_t dim_a = 0;
  std::int64_t dim_b = 0;
  std::vector<PrimeRecord> primes;

  /// The datum for A ⊠ A: B replaced by A everywhere.
  GlobalDatum self_pair() const {
    GlobalDatum out{dim_a, dim_a, {}};
    for (const auto& rec : primes) {
      if (const auto* s = std::get_if<PrimeSummary>(&rec.data)) {
        out.primes.push_back({rec.prime, PrimeSummary{s->v_a, s->v_a, s->deg_a, s->deg_a, -1}});
      } else {
        const auto& l = std::get<PrimeLocal>(rec.data);
        out.primes.push_back({rec.prime, PrimeLocal{l.a, l.a}});
      }
    }
    return out;
  }
};

struct ResolvedPrime {
  std::int64_t prime = 0;
  PrimeSummary summary;
  bool has_deg_ab = true;
  std::optional<std::int64_t> local_exponent;  // a(rho_A (x) rho_B), full mode only
};

namespace detail {

inline std::int64_t integral_exponent(const Rational& a, std::int64_t prime, const char* which) {
  require(is_integer(a), ErrorKind::inconsistent_input,
          std::string("local conductor exponent of ") + which + " at " + std::to_string(prime) + " is " +
              to_display_string(a) + ", not an integer");
  return to_int64(a);
}

}  // namespace detail

/// Reduces every record to summary form, computing local invariants for full records.
inline std::vector<ResolvedPrime> resolve(const GlobalDatum& datum) {
  require(datum.dim_a >= 1 && datum.dim_b >= 1, ErrorKind::input_error, "dimensions must be positive");
  std::set<std::int64_t> seen;
  std::vector<ResolvedPrime> out;
  for (const auto& rec : datum.primes) {
    require(rec.prime >= 2, ErrorKind::input_error, "prime labels must be >= 2");
    require(seen.insert(rec.prime).second, ErrorKind::input_error, "prime " + std::to_string(rec.prime) + " listed twice");
    ResolvedPrime r;
    r.prime = rec.prime;
    if (const auto* s = std::get_if<PrimeSummary>(&rec.data)) {
      r.summary = *s;
      r.has_deg_ab = s->deg_ab >= 0;
      require(s->v_a >= 0 && s->v_b >= 0, ErrorKind::input_error, "valuations must be nonnegative");
      require(s->deg_a >= 0 && s->deg_a <= 2 * datum.dim_a && s->deg_b >= 0 && s->deg_b <= 2 * datum.dim_b,
              ErrorKind::input_error, "degrees must lie in [0, 2 dim] at " + std::to_string(rec.prime));
      require(!r.has_deg_ab || s->deg_ab <= 4 * datum.dim_a * datum.dim_b, ErrorKind::input_error,
              "deg(A⊠B) exceeds 4 dim A dim B at " + std::to_string(rec.prime));
    } else {
      const auto& l = std::get<PrimeLocal>(rec.data);
      require(l.a.dim() == 2 * datum.dim_a && l.b.dim() == 2 * datum.dim_b, ErrorKind::inconsistent_input,
              "local representation dimensions must be 2 dim at " + std::to_string(rec.prime));
      const auto t = local_terms(l.a, l.b);
      r.summary.v_a = detail::integral_exponent(t.a_a, rec.prime, "A");
      r.summary.v_b = detail::integral_exponent(t.a_b, rec.prime, "B");
      r.summary.deg_a = t.deg_a;
      r.summary.deg_b = t.deg_b;
      r.summary.deg_ab = t.deg_ab;
      r.local_exponent = detail::integral_exponent(t.a_ab, rec.prime, "A⊠B");
    }
    out.push_back(r);
  }
  return out;
}

inline FactoredInteger conductor_a(const std::vector<ResolvedPrime>& rs) {
  std::map<std::int64_t, std::int64_t> f;
  for (const auto& r : rs) f[r.prime] = r.summary.v_a;
  return FactoredInteger(f);
}

inline FactoredInteger conductor_b(const std::vector<ResolvedPrime>& rs) {
  std::map<std::int64_t, std::int64_t> f;
  for (const auto& r : rs) f[r.prime] = r.summary.v_b;
  return FactoredInteger(f);
}

inline FactoredInteger d_term(const std::vector<ResolvedPrime>& rs) {
  std::map<std::int64_t, std::int64_t> f;
  for (const auto& r : rs) {
    if (r.summary.v_a * r.summary.v_b <= 1) continue;
    require(r.has_deg_ab, ErrorKind::input_error, "deg(A⊠B) missing at " + std::to_string(r.prime));
    const std::int64_t e = r.summary.deg_ab - r.summary.deg_a * r.summary.deg_b;
    require(e >= 0, ErrorKind::negative_exponent,
            "deg(A⊠B) - deg(A)deg(B) = " + std::to_string(e) + " < 0 at " + std::to_string(r.prime));
    f[r.prime] = e;
  }
  return FactoredInteger(f);
}

/// Product over primes with v(N_A) v(N_B) > 1 of p^{deg(A⊠B) - deg(A) deg(B)}.
inline FactoredInteger d_term(const GlobalDatum& datum) { return d_term(resolve(datum)); }

struct PrimeCheck {
  std::int64_t prime = 0;
  std::int64_t bound_exponent = 0;
  std::optional<std::int64_t> local_exponent;
  bool pass = true;
};

struct RankinSelbergReport {
  FactoredInteger bound;
  FactoredInteger d;
  std::vector<PrimeCheck> checks;

  bool all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const PrimeCheck& c) { return c.pass; });
  }
};

/// N_A^{2 dim B} N_B^{2 dim A} / (d(A,B) gcd(N_A, N_B)^2), with per-prime checks of
/// a(rho_A (x) rho_B) against it wherever full local data is given.
inline RankinSelbergReport rankin_selberg_report(const GlobalDatum& datum) {
  const auto rs = resolve(datum);
  const FactoredInteger na = conductor_a(rs);
  const FactoredInteger nb = conductor_b(rs);
  RankinSelbergReport out;
  out.d = d_term(rs);
  out.bound = (na.pow(2 * datum.dim_b) * nb.pow(2 * datum.dim_a)) / (out.d * gcd(na, nb).pow(2));
  for (const auto& r : rs) {
    PrimeCheck c{r.prime, out.bound.exponent(r.prime), r.local_exponent, true};
    if (r.local_exponent) c.pass = *r.local_exponent <= c.bound_exponent;
    out.checks.push_back(c);
  }
  return out;
}

/// As rankin_selberg_report, but InconsistentInput when any local exponent exceeds the bound.
inline FactoredInteger rankin_selberg_bound(const GlobalDatum& datum) {
  auto report = rankin_selberg_report(datum);
  for (const auto& c : report.checks)
    require(c.pass, ErrorKind::inconsistent_input,
            "a(rho_A (x) rho_B) = " + std::to_string(*c.local_exponent) + " exceeds the bound exponent " +
                std::to_string(c.bound_exponent) + " at " + std::to_string(c.prime));
  return report.bound;
}

/// N_A^{4 dim A - 2} / N_{A,2}, N_{A,2} the product of primes with v(N_A) >= 2.
inline FactoredInteger self_tensor_bound(const GlobalDatum& datum) {
  const auto rs = resolve(datum.self_pair());
  std::map<std::int64_t, std::int64_t> n2;
  for (const auto& r : rs)
    if (r.summary.v_a >= 2) n2[r.prime] = 1;
  return conductor_a(rs).pow(4 * datum.dim_a - 2) / FactoredInteger(n2);
}

}  // namespace wdcond
