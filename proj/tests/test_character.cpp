#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <set>

#include "oracles.hpp"
#include "wdcond/character.hpp"
#include "wdcond/character_table.hpp"
#include "wdcond/generators.hpp"

using namespace wdcond;

namespace {

GroupPtr q8() { return shared_group(GroupSpec::quaternion8()); }
Character chi2() { return (*character_table(q8()))[4]; }

/// Character from values on elements, read off at class representatives.
ClassFunction from_elements(const GroupPtr& g, const std::function<CycloNum(Element)>& f) {
  std::vector<CycloNum> v;
  for (std::size_t c = 0; c < g->num_classes(); ++c) v.push_back(f(g->class_rep(c)));
  return ClassFunction(g, v);
}

bool table_contains(const CharacterTable& t, const ClassFunction& f) {
  for (std::size_t i = 0; i < t.size(); ++i)
    if (t[i].function() == f) return true;
  return false;
}

std::vector<Subgroup> cyclic_subgroups(const GroupPtr& g) {
  std::vector<Subgroup> out{whole_group(g)};
  std::set<std::vector<Element>> seen;
  for (Element x = 0; x < g->order(); ++x) {
    auto h = subgroup_generated(g, {x});
    if (seen.insert(h.elements()).second) out.push_back(h);
  }
  return out;
}

std::vector<GroupSpec> table_specs() {
  return {GroupSpec::cyclic(1),    GroupSpec::cyclic(7),        GroupSpec::cyclic(12),
          GroupSpec::affine(3),    GroupSpec::affine(5),        GroupSpec::affine(7),
          GroupSpec::quaternion8(), GroupSpec::dihedral(4),     GroupSpec::dihedral(5),
          GroupSpec::heisenberg(3), GroupSpec::elementary_abelian(3, 2),
          GroupSpec::direct_product({GroupSpec::cyclic(3), GroupSpec::quaternion8()})};
}

}  // namespace

TEST(InnerProduct, Examples) {
  const auto c2 = shared_group(GroupSpec::cyclic(2));
  EXPECT_EQ(inner_product(Character::regular(c2), Character::trivial(c2)), Rational(1));
  EXPECT_EQ(inner_product(chi2(), chi2()), Rational(1));
  for (const auto& h : cyclic_subgroups(q8()))
    EXPECT_EQ(inner_product(Character::trivial(q8()), Character::trivial(q8()), h), Rational(1));
}

TEST(FixedDim, Examples) {
  const auto c2 = shared_group(GroupSpec::cyclic(2));
  EXPECT_EQ(fixed_dim(Character::regular(c2), whole_group(c2)), 1);
  EXPECT_EQ(fixed_dim(chi2(), center(q8())), 0);
  for (const auto& chi : {chi2(), Character::regular(q8()), Character::trivial(q8())})
    EXPECT_EQ(fixed_dim(chi, trivial_subgroup(q8())), chi.dim());
}

TEST(FixedDim, RejectsNonCharacters) {
  const auto c2 = shared_group(GroupSpec::cyclic(2));
  const ClassFunction half = ClassFunction::constant(c2, Rational(1, 2));
  try {
    fixed_dim(half, whole_group(c2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::non_character);
  }
  EXPECT_THROW(character_table(c2)->decompose(half), Error);
}

TEST(Operations, TensorDualRestrict) {
  const auto g = q8();
  const auto one = Character::trivial(g);
  EXPECT_EQ(chi2() * one, chi2());
  for (std::size_t i = 0; i < character_table(g)->size(); ++i) {
    const Character& psi = (*character_table(g))[i];
    EXPECT_EQ(psi.dual().dual(), psi);
  }
  const Character sq = chi2() * chi2();
  for (std::size_t c = 0; c < g->num_classes(); ++c) {
    const Element x = g->class_rep(c);
    EXPECT_EQ(sq.on_class(c), CycloNum(x == 0 || x == 4 ? 4 : 0));
  }
  const auto res = restrict_to(chi2(), center(g));
  EXPECT_EQ(res.group().order(), 2u);
  EXPECT_EQ(res.dim(), 2);
}

TEST(CharacterTable, KnownDimensionMultisets) {
  auto dims = [](const GroupSpec& s) {
    std::vector<std::int64_t> d;
    const auto t = character_table(shared_group(s));
    for (std::size_t i = 0; i < t->size(); ++i) d.push_back((*t)[i].dim());
    std::sort(d.begin(), d.end());
    return d;
  };
  EXPECT_EQ(dims(GroupSpec::affine(3)), (std::vector<std::int64_t>{1, 1, 2}));
  EXPECT_EQ(dims(GroupSpec::quaternion8()), (std::vector<std::int64_t>{1, 1, 1, 1, 2}));
  EXPECT_EQ(dims(GroupSpec::dihedral(4)), (std::vector<std::int64_t>{1, 1, 1, 1, 2}));
  EXPECT_EQ(dims(GroupSpec::affine(5)), (std::vector<std::int64_t>{1, 1, 1, 1, 4}));
  EXPECT_EQ(dims(GroupSpec::heisenberg(3)), (std::vector<std::int64_t>{1, 1, 1, 1, 1, 1, 1, 1, 1, 3, 3}));
  EXPECT_EQ(dims(GroupSpec::dihedral(5)), (std::vector<std::int64_t>{1, 1, 2, 2}));
}

TEST(CharacterTable, CyclicGroupsAreHomsFromTheGenerator) {
  for (int n = 1; n <= 12; ++n) {
    const auto g = shared_group(GroupSpec::cyclic(n));
    const auto t = character_table(g);
    ASSERT_EQ(t->size(), static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k)
      EXPECT_TRUE(table_contains(*t, from_elements(g, [&](Element x) { return CycloNum::zeta(n, static_cast<std::int64_t>(x) * k); })))
          << "C_" << n << " character " << k;
  }
}

TEST(CharacterTable, RowAndColumnOrthogonality) {
  for (const auto& spec : table_specs()) {
    const auto g = shared_group(spec);
    const auto t = character_table(g);
    ASSERT_EQ(t->size(), g->num_classes()) << spec.str();
    std::int64_t sum_sq = 0;
    for (std::size_t i = 0; i < t->size(); ++i) {
      sum_sq += (*t)[i].dim() * (*t)[i].dim();
      for (std::size_t j = 0; j < t->size(); ++j) EXPECT_EQ(inner_product((*t)[i], (*t)[j]), Rational(i == j ? 1 : 0));
    }
    EXPECT_EQ(sum_sq, static_cast<std::int64_t>(g->order()));
    for (std::size_t a = 0; a < g->num_classes(); ++a)
      for (std::size_t b = 0; b < g->num_classes(); ++b) {
        CycloNum s(0);
        for (std::size_t i = 0; i < t->size(); ++i) s += (*t)[i].on_class(a) * (*t)[i].on_class(b).conj();
        const auto centralizer = static_cast<std::int64_t>(g->order() / g->class_size(a));
        EXPECT_EQ(s, CycloNum(a == b ? centralizer : 0)) << spec.str();
      }
    EXPECT_EQ(t->trivial_index(), 0u);
    EXPECT_EQ((*t)[0], Character::trivial(g));
  }
}

TEST(MatrixOracle, SymmetricGroupS3) {
  const auto g = shared_group(GroupSpec::affine(3));
  const auto perm = oracle::affine_permutation_rep(*g, 3);
  ASSERT_TRUE(perm.is_homomorphism());
  const auto all = oracle::all_elements(*g);
  // P = 1 + V with V irreducible: one invariant line, and End_G(P) two-dimensional
  EXPECT_EQ(perm.fixed_dim(all), 1u);
  EXPECT_EQ((perm * perm).fixed_dim(all), 2u);
  const auto sign = oracle::linear_rep(*g, [](Element e) { return CycloNum(e / 3 == 0 ? 1 : -1); });
  ASSERT_TRUE(sign.is_homomorphism());
  const auto t = character_table(g);
  EXPECT_TRUE(table_contains(*t, from_elements(g, [&](Element x) { return sign.character(x); })));
  EXPECT_TRUE(table_contains(*t, from_elements(g, [&](Element x) { return perm.character(x) - CycloNum(1); })));
  // fixed dimensions on every subgroup agree with projector ranks
  std::size_t std_idx = 0;
  while ((*t)[std_idx].dim() != 2) ++std_idx;
  const Character p_char = Character::trivial(g) + (*t)[std_idx];
  for (const auto& h : cyclic_subgroups(g)) EXPECT_EQ(static_cast<std::size_t>(fixed_dim(p_char, h)), perm.fixed_dim(h.elements()));
}

TEST(MatrixOracle, Quaternion8) {
  const auto g = q8();
  const auto rho = oracle::quaternion_rep(*g);
  ASSERT_TRUE(rho.is_homomorphism());
  oracle::MatrixRep dual{g.get(), {}};
  for (Element x = 0; x < g->order(); ++x) {
    const auto& m = rho.images[g->inverse(x)];
    dual.images.push_back({{m[0][0], m[1][0]}, {m[0][1], m[1][1]}});
  }
  ASSERT_TRUE(dual.is_homomorphism());
  const auto all = oracle::all_elements(*g);
  EXPECT_EQ((rho * dual).fixed_dim(all), 1u);  // irreducible
  EXPECT_EQ((rho * rho).fixed_dim(all), 1u);   // invariant alternating form exists
  const auto t = character_table(g);
  EXPECT_EQ(from_elements(g, [&](Element x) { return rho.character(x); }), chi2().function());
  for (int si : {1, -1})
    for (int sj : {1, -1}) {
      const std::int64_t sgn[4] = {1, si, sj, si * sj};
      EXPECT_TRUE(table_contains(*t, from_elements(g, [&](Element x) { return CycloNum(sgn[x % 4]); })));
    }
  for (const auto& h : cyclic_subgroups(g)) {
    EXPECT_EQ(static_cast<std::size_t>(fixed_dim(chi2(), h)), rho.fixed_dim(h.elements()));
    EXPECT_EQ(static_cast<std::size_t>(fixed_dim(chi2() * chi2(), h)), (rho * rho).fixed_dim(h.elements()));
    EXPECT_EQ(static_cast<std::size_t>(fixed_dim(chi2() + chi2() * chi2(), h)), (rho + rho * rho).fixed_dim(h.elements()));
  }
}

TEST(FrobeniusSchur, Examples) {
  EXPECT_EQ(frobenius_schur(chi2()), -1);
  EXPECT_EQ(frobenius_schur(Character::trivial(q8())), 1);
  const auto c4 = shared_group(GroupSpec::cyclic(4));
  const auto t = character_table(c4);
  for (std::size_t i = 0; i < t->size(); ++i)
    if ((*t)[i](1) == CycloNum::zeta(4, 1)) EXPECT_EQ(frobenius_schur((*t)[i]), 0);
  EXPECT_THROW(frobenius_schur(chi2() + chi2()), Error);
}

TEST(Symplectic, Examples) {
  EXPECT_TRUE(is_symplectic(chi2()));
  EXPECT_FALSE(is_symplectic(Character::trivial(q8())));
  EXPECT_TRUE(is_symplectic(Character::trivial(q8()).multiple(2)));
  for (const auto& spec : table_specs()) {
    const auto g = shared_group(spec);
    const auto t = character_table(g);
    for (std::size_t i = 0; i < t->size(); ++i) EXPECT_TRUE(is_symplectic((*t)[i] + (*t)[i].dual())) << spec.str();
  }
}

TEST(Rationality, Examples) {
  const auto q = q8();
  EXPECT_TRUE(is_rational_charpoly(Character::regular(q)));
  const auto c3 = shared_group(GroupSpec::cyclic(3));
  const auto t3 = character_table(c3);
  EXPECT_FALSE(is_rational_charpoly((*t3)[1]));
  EXPECT_TRUE(is_rational_charpoly((*t3)[1] + (*t3)[2]));
  const auto c9 = shared_group(GroupSpec::cyclic(9));
  const auto t9 = character_table(c9);
  for (const auto& orbit : t9->galois_orbits()) {
    std::vector<std::int64_t> m(t9->size(), 0);
    for (auto i : orbit) m[i] = 1;
    EXPECT_TRUE(is_rational_charpoly(t9->combine(m)));
    if (orbit.size() > 1) {
      std::vector<std::int64_t> one(t9->size(), 0);
      one[orbit[0]] = 1;
      EXPECT_FALSE(is_rational_charpoly(t9->combine(one)));
    }
  }
}

TEST(Generators, PostconditionsAndDeterminism) {
  for (const auto& spec : table_specs()) {
    const auto g = shared_group(spec);
    for (std::uint64_t s = 0; s < 30; ++s) {
      const auto sp = gen_symplectic(g, s, 8);
      EXPECT_TRUE(is_symplectic(sp));
      EXPECT_LE(sp.dim(), 8);
      const auto ra = gen_rational(g, s, 27);
      EXPECT_TRUE(is_rational_charpoly(ra));
      EXPECT_LE(ra.dim(), 27);
      const auto both = gen_symplectic_rational(g, s, 12);
      EXPECT_TRUE(is_symplectic(both) && is_rational_charpoly(both));
      EXPECT_EQ(gen_character(g, s, 10), gen_character(g, s, 10));
      EXPECT_LE(gen_character(g, s, 10).dim(), 10);
    }
  }
}

TEST(Generators, CyclicTwoSampleSpace) {
  const auto c2 = shared_group(GroupSpec::cyclic(2));
  const auto t = character_table(c2);
  const std::set<std::vector<std::int64_t>> space{{0, 0}, {1, 0}, {0, 1}, {1, 1}, {2, 0}, {0, 2}};
  std::set<std::vector<std::int64_t>> seen;
  for (std::uint64_t s = 0; s < 300; ++s) {
    const auto m = t->decompose(gen_character(c2, s, 2));
    EXPECT_TRUE(space.count(m)) << m[0] << "," << m[1];
    seen.insert(m);
  }
  EXPECT_EQ(seen, space);
}

TEST(Properties, FixedDimIsAdditiveAndDualInvariant) {
  for (const auto& spec : table_specs()) {
    const auto g = shared_group(spec);
    const auto subs = cyclic_subgroups(g);
    for (std::uint64_t s = 0; s < 10; ++s) {
      const auto a = gen_character(g, 2 * s, 10), b = gen_character(g, 2 * s + 1, 10);
      for (const auto& h : subs) {
        EXPECT_EQ(fixed_dim(a + b, h), fixed_dim(a, h) + fixed_dim(b, h));
        EXPECT_EQ(fixed_dim(a.dual(), h), fixed_dim(a, h));
      }
    }
  }
}

TEST(Properties, SymplecticCodimensionIsEven) {
  for (const auto& spec : table_specs()) {
    const auto g = shared_group(spec);
    const auto subs = cyclic_subgroups(g);
    for (std::uint64_t s = 0; s < 20; ++s) {
      const auto tau = gen_symplectic(g, s, 12);
      for (const auto& h : subs) EXPECT_EQ((tau.dim() - fixed_dim(tau, h)) % 2, 0) << spec.str();
    }
  }
}

TEST(Properties, RationalCodimensionGapOnPGroups) {
  for (const auto& spec : {GroupSpec::cyclic(4), GroupSpec::cyclic(8), GroupSpec::cyclic(9), GroupSpec::cyclic(25),
                           GroupSpec::quaternion8(), GroupSpec::dihedral(4), GroupSpec::heisenberg(3),
                           GroupSpec::elementary_abelian(3, 2), GroupSpec::elementary_abelian(5, 2)}) {
    const auto g = shared_group(spec);
    const std::int64_t p = nt::prime_divisors(static_cast<std::int64_t>(g->order())).front();
    for (std::uint64_t s = 0; s < 30; ++s) {
      const auto tau = gen_rational(g, s, 27);
      for (const auto& h : cyclic_subgroups(g)) {
        const auto gap = tau.dim() - fixed_dim(tau, h);
        EXPECT_TRUE(gap == 0 || gap >= p - 1) << spec.str() << " gap " << gap;
      }
    }
  }
}

TEST(CharacterTable, Decomposition) {
  const auto g = shared_group(GroupSpec::affine(5));
  const auto t = character_table(g);
  const auto reg = t->decompose(Character::regular(g));
  for (std::size_t i = 0; i < t->size(); ++i) EXPECT_EQ(reg[i], (*t)[i].dim());
  EXPECT_THROW(t->combine({1, 2}), Error);
  EXPECT_THROW(t->combine({1, 0, 0, 0, -1}), Error);
  const auto perm = Character::permutation(subgroup_generated(g, {5}));
  EXPECT_EQ(perm.dim(), 5);
  EXPECT_EQ(fixed_dim(perm, whole_group(g)), 1);
}
