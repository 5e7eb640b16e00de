#pragma once

// Irreducible characters by the class-algebra eigenvector method: simultaneous
// eigenvectors of the class multiplication matrices over F_q, q = 1 mod exp(G),
// lifted to exact cyclotomic values through a fixed root-of-unity
// correspondence.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <string>
#include <vector>

#include "wdcond/character.hpp"
#include "wdcond/cyclotomic.hpp"
#include "wdcond/error.hpp"
#include "wdcond/group.hpp"
#include "wdcond/numtheory.hpp"

namespace wdcond {

namespace detail {

using ModVec = std::vector<std::uint64_t>;
using ModMat = std::vector<ModVec>;

/// Reduced row echelon form in place; returns pivot columns.
inline std::vector<std::size_t> rref_mod(ModMat& rows, std::uint64_t q) {
  std::vector<std::size_t> pivots;
  if (rows.empty()) return pivots;
  const std::size_t cols = rows.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t sel = r;
    while (sel < rows.size() && rows[sel][c] == 0) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[r], rows[sel]);
    const std::uint64_t inv = nt::inv_mod(rows[r][c], q);
    for (auto& x : rows[r]) x = nt::mul_mod(x, inv, q);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      const std::uint64_t f = rows[i][c];
      for (std::size_t k = 0; k < cols; ++k)
        rows[i][k] = (rows[i][k] + q - nt::mul_mod(f, rows[r][k], q)) % q;
    }
    pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  return pivots;
}

/// Basis of {x : A x = 0}.
inline ModMat nullspace_mod(ModMat a, std::uint64_t q) {
  const std::size_t cols = a.empty() ? 0 : a.front().size();
  const auto pivots = rref_mod(a, q);
  std::vector<char> is_pivot(cols, 0);
  for (auto p : pivots) is_pivot[p] = 1;
  ModMat basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    ModVec v(cols, 0);
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = (q - a[i][free]) % q;
    basis.push_back(std::move(v));
  }
  return basis;
}

struct TableAttempt {
  bool ok = false;
  std::string why;
  std::vector<ModVec> omegas;              // central character values per irreducible
  std::vector<std::int64_t> degrees;
  std::vector<std::vector<CycloNum>> values;
};

inline TableAttempt dixon_attempt(const FiniteGroup& g, std::uint64_t q) {
  TableAttempt out;
  const std::size_t r = g.num_classes();
  const auto order = static_cast<std::int64_t>(g.order());
  const auto e = static_cast<std::uint64_t>(g.exponent());

  // M_j[k][l] = #{x in C_j : x^{-1} z_l in C_k}, z_l the representative of C_l
  std::vector<ModMat> mats(r, ModMat(r, ModVec(r, 0)));
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t l = 0; l < r; ++l) {
      const Element z = g.class_rep(l);
      for (Element x : g.conjugacy_class(j)) ++mats[j][g.class_of(g.mul(g.inverse(x), z))][l];
    }
  for (auto& m : mats)
    for (auto& row : m)
      for (auto& x : row) x %= q;

  // subspaces as RREF row bases
  std::vector<ModMat> spaces;
  {
    ModMat id(r, ModVec(r, 0));
    for (std::size_t i = 0; i < r; ++i) id[i][i] = 1;
    spaces.push_back(std::move(id));
  }
  for (std::size_t j = 1; j < r; ++j) {
    std::vector<ModMat> next;
    for (auto& space : spaces) {
      const std::size_t d = space.size();
      if (d == 1) {
        next.push_back(space);
        continue;
      }
      const auto pivots = rref_mod(space, q);
      // restricted action: A[k][i] = (M_j b_i)[pivot_k]
      ModMat images(d, ModVec(r, 0));
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t row = 0; row < r; ++row) {
          std::uint64_t acc = 0;
          for (std::size_t col = 0; col < r; ++col)
            if (space[i][col] != 0) acc = (acc + nt::mul_mod(mats[j][row][col], space[i][col], q)) % q;
          images[i][row] = acc;
        }
      ModMat a(d, ModVec(d, 0));
      for (std::size_t k = 0; k < d; ++k)
        for (std::size_t i = 0; i < d; ++i) a[k][i] = images[i][pivots[k]];
      std::size_t found = 0;
      for (std::uint64_t lambda = 0; lambda < q && found < d; ++lambda) {
        ModMat shifted = a;
        for (std::size_t k = 0; k < d; ++k) shifted[k][k] = (shifted[k][k] + q - lambda) % q;
        const ModMat kernel = nullspace_mod(std::move(shifted), q);
        if (kernel.empty()) continue;
        ModMat eig;
        for (const auto& x : kernel) {
          ModVec v(r, 0);
          for (std::size_t i = 0; i < d; ++i)
            if (x[i] != 0)
              for (std::size_t col = 0; col < r; ++col)
                v[col] = (v[col] + nt::mul_mod(x[i], space[i][col], q)) % q;
          eig.push_back(std::move(v));
        }
        found += eig.size();
        next.push_back(std::move(eig));
      }
      if (found != d) {
        out.why = "class algebra not diagonalizable over F_" + std::to_string(q);
        return out;
      }
    }
    spaces = std::move(next);
  }
  for (const auto& s : spaces)
    if (s.size() != 1) {
      out.why = "common eigenspaces did not split over F_" + std::to_string(q);
      return out;
    }
  if (spaces.size() != r) {
    out.why = "wrong number of common eigenvectors";
    return out;
  }

  const std::uint64_t root = nt::pow_mod(nt::primitive_root(q), (q - 1) / e, q);  // <-> zeta_e
  const auto max_degree = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(order)));
  for (const auto& s : spaces) {
    ModVec w = s.front();
    if (w[0] == 0) {
      out.why = "eigenvector vanishes at the identity class";
      return out;
    }
    const std::uint64_t inv0 = nt::inv_mod(w[0], q);
    for (auto& x : w) x = nt::mul_mod(x, inv0, q);
    // |G| / deg^2 = sum_j w_j w_{j*} / h_j
    std::uint64_t s_sum = 0;
    for (std::size_t c = 0; c < r; ++c) {
      const std::uint64_t term = nt::mul_mod(nt::mul_mod(w[c], w[g.inverse_class(c)], q),
                                             nt::inv_mod(g.class_size(c) % q, q), q);
      s_sum = (s_sum + term) % q;
    }
    if (s_sum == 0) {
      out.why = "degenerate norm";
      return out;
    }
    const std::uint64_t deg_sq = nt::mul_mod(static_cast<std::uint64_t>(order) % q, nt::inv_mod(s_sum, q), q);
    std::int64_t degree = 0;
    for (std::int64_t d = 1; d <= max_degree; ++d) {
      if (order % d == 0 && static_cast<std::uint64_t>(d * d) % q == deg_sq) {
        if (degree != 0) {
          out.why = "ambiguous degree";
          return out;
        }
        degree = d;
      }
    }
    if (degree == 0) {
      out.why = "no admissible degree";
      return out;
    }
    ModVec chi_mod(r);
    for (std::size_t c = 0; c < r; ++c)
      chi_mod[c] = nt::mul_mod(nt::mul_mod(static_cast<std::uint64_t>(degree) % q, w[c], q),
                               nt::inv_mod(g.class_size(c) % q, q), q);
    std::vector<CycloNum> lifted(r);
    for (std::size_t c = 0; c < r; ++c) {
      const auto ord = static_cast<std::uint64_t>(g.element_order(g.class_rep(c)));
      const std::uint64_t zo = nt::pow_mod(root, e / ord, q);  // <-> zeta_ord
      const std::uint64_t inv_ord = nt::inv_mod(ord % q, q);
      std::vector<Rational> raw(static_cast<std::size_t>(e));
      std::int64_t total = 0;
      for (std::uint64_t k = 0; k < ord; ++k) {
        std::uint64_t acc = 0;
        for (std::uint64_t l = 0; l < ord; ++l) {
          const std::uint64_t val = chi_mod[g.power_class(c, static_cast<std::int64_t>(l))];
          const std::uint64_t twist = nt::pow_mod(zo, (ord - (k * l) % ord) % ord, q);
          acc = (acc + nt::mul_mod(val, twist, q)) % q;
        }
        const std::uint64_t m = nt::mul_mod(acc, inv_ord, q);
        if (m > static_cast<std::uint64_t>(degree)) {
          out.why = "eigenvalue multiplicity out of range while lifting";
          return out;
        }
        total += static_cast<std::int64_t>(m);
        raw[static_cast<std::size_t>(k * (e / ord))] = Rational(static_cast<std::int64_t>(m));
      }
      if (total != degree) {
        out.why = "eigenvalue multiplicities do not sum to the degree";
        return out;
      }
      lifted[c] = CycloNum::from_exponents(static_cast<int>(e), std::move(raw));
    }
    out.omegas.push_back(std::move(w));
    out.degrees.push_back(degree);
    out.values.push_back(std::move(lifted));
  }
  out.ok = true;
  return out;
}

}  // namespace detail

class CharacterTable {
 public:
  explicit CharacterTable(GroupPtr group) : group_(std::move(group)) { compute(); }

  const GroupPtr& group_ptr() const { return group_; }
  const FiniteGroup& group() const { return *group_; }
  std::size_t size() const { return irreducibles_.size(); }
  const std::vector<Character>& irreducibles() const { return irreducibles_; }
  const Character& operator[](std::size_t i) const { return irreducibles_.at(i); }
  /// The prime used for the modular computation.
  std::uint64_t modulus() const { return modulus_; }

  int indicator(std::size_t i) const { return indicators_.at(i); }
  std::size_t dual_index(std::size_t i) const { return dual_.at(i); }
  std::size_t trivial_index() const { return 0; }

  /// Index of the Galois conjugate psi_i^{(k)}, k prime to exp(G).
  std::size_t galois_index(std::size_t i, std::int64_t k) const {
    const auto e = group_->exponent();
    const auto key = nt::mod(k, e);
    require(std::gcd(key, e) == 1, ErrorKind::invalid_argument, "Galois exponent must be prime to exp(G)");
    return galois_perm_.at(static_cast<std::size_t>(key)).at(i);
  }

  /// Galois orbits of irreducibles, each sorted, ordered by smallest member.
  const std::vector<std::vector<std::size_t>>& galois_orbits() const { return orbits_; }

  /// <chi, psi_i>_G for every i; NonCharacter unless all are nonnegative integers.
  std::vector<std::int64_t> decompose(const ClassFunction& chi) const {
    require(chi.group().id() == group_->id(), ErrorKind::model_mismatch, "class function of a different group");
    const auto& g = *group_;
    std::vector<std::int64_t> out(size());
    for (std::size_t i = 0; i < size(); ++i) {
      CycloNum acc = CycloNum::zero(std::lcm(chi.field_conductor(), irreducibles_[i].function().field_conductor()));
      for (std::size_t c = 0; c < g.num_classes(); ++c)
        acc += (chi.on_class(c) * irreducibles_[i].on_class(g.inverse_class(c)))
                   .scaled(Rational(static_cast<std::int64_t>(g.class_size(c))));
      const CycloNum m = acc.scaled(Rational(1, static_cast<std::int64_t>(g.order())));
      require(m.is_rational() && is_integer(m.rational_value()) && m.rational_value() >= 0, ErrorKind::non_character,
              "multiplicity " + m.str() + " of irreducible " + std::to_string(i) + " is not a nonnegative integer");
      out[i] = to_int64(m.rational_value());
    }
    return out;
  }

  /// sum m_i psi_i
  Character combine(const std::vector<std::int64_t>& mults) const {
    require(mults.size() == size(), ErrorKind::input_error,
            "multiplicity vector has length " + std::to_string(mults.size()) + ", expected " + std::to_string(size()));
    Character out = Character::zero(group_);
    for (std::size_t i = 0; i < mults.size(); ++i) {
      require(mults[i] >= 0, ErrorKind::input_error, "multiplicities must be nonnegative");
      if (mults[i] > 0) out = out + irreducibles_[i].multiple(mults[i]);
    }
    return out;
  }

  /// Validates that f is a character.
  Character checked(const ClassFunction& f) const { return combine(decompose(f)); }

 private:
  void compute() {
    const auto& g = *group_;
    const auto e = static_cast<std::uint64_t>(g.exponent());
    const auto order = static_cast<std::uint64_t>(g.order());
    detail::TableAttempt attempt;
    std::string reasons;
    std::uint64_t q = e + 1;
    int tries = 0;
    while (tries < 16) {
      if (nt::is_prime(static_cast<std::int64_t>(q)) && q * q > 4 * order) {
        attempt = detail::dixon_attempt(g, q);
        ++tries;
        if (attempt.ok) break;
        reasons += " q=" + std::to_string(q) + ": " + attempt.why + ";";
      }
      q += e;
    }
    require(attempt.ok, ErrorKind::lifting_failed, "character table computation failed:" + reasons);
    modulus_ = q;

    const std::size_t r = g.num_classes();
    std::vector<std::size_t> perm(r);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    auto is_trivial = [&](std::size_t i) {
      return std::all_of(attempt.values[i].begin(), attempt.values[i].end(),
                         [](const CycloNum& v) { return v == CycloNum(1); });
    };
    std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
      if (attempt.degrees[a] != attempt.degrees[b]) return attempt.degrees[a] < attempt.degrees[b];
      const bool ta = is_trivial(a), tb = is_trivial(b);
      if (ta != tb) return ta;
      return attempt.omegas[a] < attempt.omegas[b];
    });
    for (auto i : perm)
      irreducibles_.push_back(Character::assume(ClassFunction(group_, attempt.values[i])));
    verify_orthogonality();

    const auto ei = static_cast<std::int64_t>(e);
    auto find = [&](const Character& chi) {
      for (std::size_t j = 0; j < r; ++j)
        if (irreducibles_[j] == chi) return j;
      fail(ErrorKind::lifting_failed, "Galois conjugate missing from the table");
    };
    galois_perm_.assign(static_cast<std::size_t>(ei), {});
    for (std::int64_t k = 1; k <= ei; ++k) {
      const auto key = nt::mod(k, ei);
      if (std::gcd(key, ei) != 1 || !galois_perm_[static_cast<std::size_t>(key)].empty()) continue;
      auto& perm_k = galois_perm_[static_cast<std::size_t>(key)];
      for (std::size_t i = 0; i < r; ++i) perm_k.push_back(find(irreducibles_[i].galois_conjugate(k)));
    }
    for (std::size_t i = 0; i < r; ++i) {
      dual_.push_back(galois_perm_[static_cast<std::size_t>(nt::mod(-1, ei))][i]);
      indicators_.push_back(static_cast<int>(to_int64(indicator_average(irreducibles_[i]))));
    }
    std::vector<char> seen(r, 0);
    for (std::size_t i = 0; i < r; ++i) {
      if (seen[i]) continue;
      std::vector<std::size_t> orbit;
      for (std::size_t key = 0; key < galois_perm_.size(); ++key) {
        if (galois_perm_[key].empty()) continue;
        const std::size_t j = galois_perm_[key][i];
        if (!seen[j]) {
          seen[j] = 1;
          orbit.push_back(j);
        }
      }
      std::sort(orbit.begin(), orbit.end());
      orbits_.push_back(std::move(orbit));
    }
  }

  void verify_orthogonality() const {
    const auto& g = *group_;
    const std::size_t r = irreducibles_.size();
    std::int64_t sum_sq = 0;
    for (const auto& psi : irreducibles_) sum_sq += psi.dim() * psi.dim();
    require(sum_sq == static_cast<std::int64_t>(g.order()), ErrorKind::lifting_failed, "sum of squared degrees != |G|");
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = i; j < r; ++j) {
        CycloNum acc = CycloNum::zero(static_cast<int>(g.exponent()));
        for (std::size_t c = 0; c < g.num_classes(); ++c)
          acc += (irreducibles_[i].on_class(c) * irreducibles_[j].on_class(g.inverse_class(c)))
                     .scaled(Rational(static_cast<std::int64_t>(g.class_size(c))));
        const CycloNum expected = CycloNum(static_cast<std::int64_t>(i == j ? g.order() : 0));
        require(acc == expected, ErrorKind::lifting_failed, "lifted table fails row orthogonality");
      }
  }

  GroupPtr group_;
  std::uint64_t modulus_ = 0;
  std::vector<Character> irreducibles_;
  std::vector<int> indicators_;
  std::vector<std::size_t> dual_;
  std::vector<std::vector<std::size_t>> galois_perm_;  // indexed by k mod exp(G)
  std::vector<std::vector<std::size_t>> orbits_;
};

using TablePtr = std::shared_ptr<const CharacterTable>;

/// Computed once per group; concurrent callers may race to compute but only the
/// first insert is kept.
inline TablePtr character_table(const GroupPtr& g) {
  static std::mutex mutex;
  static std::map<std::uint64_t, TablePtr> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(g->id()); it != cache.end()) return it->second;
  }
  auto table = std::make_shared<const CharacterTable>(g);
  std::lock_guard lock(mutex);
  return cache.emplace(g->id(), std::move(table)).first->second;
}

/// Admits a non-degenerate invariant alternating form: indicator +1 irreducibles
/// occur with even multiplicity, indicator 0 ones as often as their duals.
inline bool is_symplectic(const ClassFunction& chi) {
  const auto table = character_table(chi.group_ptr());
  const auto mults = table->decompose(chi);
  for (std::size_t i = 0; i < mults.size(); ++i) {
    switch (table->indicator(i)) {
      case 1:
        if (mults[i] % 2 != 0) return false;
        break;
      case 0:
        if (mults[i] != mults[table->dual_index(i)]) return false;
        break;
      default:
        break;
    }
  }
  return true;
}

}  // namespace wdcond
