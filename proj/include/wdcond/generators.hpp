#pragma once

// Seeded random characters for the property suites. All draws go through
// mt19937_64 with plain modular reduction so that sequences are identical on
// every platform.

#include <cstdint>
#include <random>
#include <vector>

#include "wdcond/character_table.hpp"

namespace wdcond {

namespace detail {

struct Atom {
  std::vector<std::int64_t> mults;
  std::int64_t dim = 0;
};

inline std::vector<std::int64_t> random_combination(const CharacterTable& table, const std::vector<Atom>& atoms,
                                                    std::uint64_t seed, std::int64_t budget, bool allow_zero) {
  std::mt19937_64 rng(seed);
  std::vector<std::int64_t> mults(table.size(), 0);
  if (atoms.empty() || budget <= 0) return mults;
  std::int64_t remaining = budget;
  const auto attempts = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(budget + 1));
  for (std::int64_t t = 0; t < attempts; ++t) {
    const Atom& atom = atoms[rng() % atoms.size()];
    if (atom.dim > remaining) continue;
    for (std::size_t i = 0; i < mults.size(); ++i) mults[i] += atom.mults[i];
    remaining -= atom.dim;
  }
  if (!allow_zero && remaining == budget) {
    const Atom* smallest = nullptr;
    for (const auto& atom : atoms)
      if (atom.dim <= budget && (smallest == nullptr || atom.dim < smallest->dim)) smallest = &atom;
    if (smallest != nullptr) mults = smallest->mults;
  }
  return mults;
}

inline std::vector<Atom> irreducible_atoms(const CharacterTable& table) {
  std::vector<Atom> atoms;
  for (std::size_t i = 0; i < table.size(); ++i) {
    Atom a{std::vector<std::int64_t>(table.size(), 0), table[i].dim()};
    a.mults[i] = 1;
    atoms.push_back(std::move(a));
  }
  return atoms;
}

inline std::vector<Atom> symplectic_atoms(const CharacterTable& table) {
  std::vector<Atom> atoms;
  for (std::size_t i = 0; i < table.size(); ++i) {
    Atom a{std::vector<std::int64_t>(table.size(), 0), 0};
    const std::int64_t d = table[i].dim();
    switch (table.indicator(i)) {
      case -1:
        a.mults[i] = 1;
        a.dim = d;
        break;
      case 0:
        if (table.dual_index(i) < i) continue;
        a.mults[i] = 1;
        a.mults[table.dual_index(i)] = 1;
        a.dim = 2 * d;
        break;
      default:
        a.mults[i] = 2;
        a.dim = 2 * d;
        break;
    }
    atoms.push_back(std::move(a));
  }
  return atoms;
}

/// Galois-orbit sums, optionally doubled where needed to stay symplectic.
inline std::vector<Atom> orbit_atoms(const CharacterTable& table, bool symplectic) {
  std::vector<Atom> atoms;
  for (const auto& orbit : table.galois_orbits()) {
    Atom a{std::vector<std::int64_t>(table.size(), 0), 0};
    // the indicator is constant on a Galois orbit
    const std::int64_t mult = symplectic && table.indicator(orbit.front()) == 1 ? 2 : 1;
    for (auto i : orbit) {
      a.mults[i] = mult;
      a.dim += mult * table[i].dim();
    }
    atoms.push_back(std::move(a));
  }
  return atoms;
}

}  // namespace detail

/// Random nonnegative combination of irreducibles with total dimension <= budget.
inline Character gen_character(const GroupPtr& g, std::uint64_t seed, std::int64_t budget) {
  const auto table = character_table(g);
  return table->combine(detail::random_combination(*table, detail::irreducible_atoms(*table), seed, budget, true));
}

inline Character gen_symplectic(const GroupPtr& g, std::uint64_t seed, std::int64_t budget) {
  const auto table = character_table(g);
  return table->combine(detail::random_combination(*table, detail::symplectic_atoms(*table), seed, budget, false));
}

inline Character gen_rational(const GroupPtr& g, std::uint64_t seed, std::int64_t budget) {
  const auto table = character_table(g);
  return table->combine(detail::random_combination(*table, detail::orbit_atoms(*table, false), seed, budget, false));
}

/// Both symplectic and rational-valued.
inline Character gen_symplectic_rational(const GroupPtr& g, std::uint64_t seed, std::int64_t budget) {
  const auto table = character_table(g);
  return table->combine(detail::random_combination(*table, detail::orbit_atoms(*table, true), seed, budget, false));
}

}  // namespace wdcond
