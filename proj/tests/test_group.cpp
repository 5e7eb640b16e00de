#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "wdcond/group.hpp"

using namespace wdcond;

namespace {

std::vector<GroupSpec> sample_specs() {
  return {GroupSpec::cyclic(1),          GroupSpec::cyclic(4),     GroupSpec::cyclic(12),
          GroupSpec::dihedral(4),        GroupSpec::dihedral(5),   GroupSpec::quaternion8(),
          GroupSpec::heisenberg(3),      GroupSpec::heisenberg(5), GroupSpec::affine(3),
          GroupSpec::affine(7),          GroupSpec::elementary_abelian(3, 2),
          GroupSpec::direct_product({GroupSpec::cyclic(2), GroupSpec::affine(3)})};
}

void expect_kind(ErrorKind kind, const std::function<void()>& f) {
  try {
    f();
    ADD_FAILURE() << "expected " << to_string(kind);
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), kind) << e.what();
  }
}

}  // namespace

TEST(BuildGroup, Affine3HasOrderSixAndThreeClasses) {
  const auto g = build_group(GroupSpec::affine(3));
  EXPECT_EQ(g->order(), 6u);
  EXPECT_EQ(g->num_classes(), 3u);
  EXPECT_EQ(oracle::brute_classes(*g).size(), 3u);
}

TEST(BuildGroup, TrivialGroup) {
  const auto g = build_group(GroupSpec::cyclic(1));
  EXPECT_EQ(g->order(), 1u);
  EXPECT_EQ(g->exponent(), 1);
  EXPECT_EQ(g->num_classes(), 1u);
}

TEST(BuildGroup, Quaternion8) {
  const auto g = build_group(GroupSpec::quaternion8());
  EXPECT_EQ(g->order(), 8u);
  EXPECT_EQ(g->num_classes(), 5u);
  EXPECT_EQ(g->exponent(), 4);
  EXPECT_EQ(oracle::brute_classes(*g).size(), 5u);
}

TEST(BuildGroup, OrdersAndExponents) {
  EXPECT_EQ(build_group(GroupSpec::affine(7))->order(), 42u);
  const auto h5 = build_group(GroupSpec::heisenberg(5));
  EXPECT_EQ(h5->order(), 125u);
  EXPECT_EQ(h5->exponent(), 5);
  EXPECT_EQ(build_group(GroupSpec::heisenberg(3))->exponent(), 3);
  EXPECT_EQ(build_group(GroupSpec::elementary_abelian(2, 3))->exponent(), 2);
  EXPECT_EQ(build_group(GroupSpec::dihedral(6))->order(), 12u);
}

TEST(BuildGroup, Errors) {
  expect_kind(ErrorKind::not_prime, [] { build_group(GroupSpec::affine(6)); });
  expect_kind(ErrorKind::not_prime, [] { build_group(GroupSpec::heisenberg(4)); });
  expect_kind(ErrorKind::not_prime, [] { build_group(GroupSpec::elementary_abelian(9, 2)); });
  expect_kind(ErrorKind::order_cap_exceeded, [] { build_group(GroupSpec::cyclic(5000)); });
  expect_kind(ErrorKind::order_cap_exceeded, [] { build_group(GroupSpec::affine(53), 100); });
  expect_kind(ErrorKind::input_error, [] { build_group(GroupSpec{"sporadic", 0, 0, 0, {}}); });
}

TEST(BuildGroup, ClassesMatchBruteForceConjugation) {
  for (const auto& spec : sample_specs()) {
    const auto g = build_group(spec);
    std::set<std::set<Element>> ours;
    for (const auto& c : g->classes()) ours.insert(std::set<Element>(c.begin(), c.end()));
    EXPECT_EQ(ours, oracle::brute_classes(*g)) << spec.str();
    EXPECT_EQ(g->class_rep(g->identity_class()), g->identity());
  }
}

TEST(BuildGroup, AssociativityIdentityInverse) {
  for (const auto& spec : sample_specs()) {
    const auto g = build_group(spec);
    const auto n = static_cast<Element>(g->order());
    for (Element a = 0; a < n; ++a) {
      EXPECT_EQ(g->mul(a, g->identity()), a);
      EXPECT_EQ(g->mul(g->identity(), a), a);
      EXPECT_EQ(g->mul(a, g->inverse(a)), g->identity());
      for (Element b = 0; b < n; ++b)
        for (Element c = 0; c < n; ++c) ASSERT_EQ(g->mul(g->mul(a, b), c), g->mul(a, g->mul(b, c))) << spec.str();
    }
    EXPECT_EQ(static_cast<std::int64_t>(g->order()) % g->exponent(), 0) << spec.str();
  }
}

TEST(BuildGroup, FromTableRejectsNonAssociativeTables) {
  // x*y = x - y mod 3 has a two-sided identity only on the right
  std::vector<Element> table(9);
  for (Element x = 0; x < 3; ++x)
    for (Element y = 0; y < 3; ++y) table[x * 3 + y] = (x + 3 - y) % 3;
  EXPECT_THROW(FiniteGroup::from_table(table), Error);
}

TEST(Subgroup, Generated) {
  const auto q8 = build_group(GroupSpec::quaternion8());
  const auto z = subgroup_generated(q8, {4});
  EXPECT_EQ(z.order(), 2u);
  EXPECT_EQ(z, center(q8));
  EXPECT_TRUE(subgroup_generated(q8, {}).is_trivial());
  EXPECT_TRUE(subgroup_generated(q8, oracle::all_elements(*q8)).is_whole());
  EXPECT_EQ(subgroup_generated(q8, {1, 2}).order(), 8u);
  EXPECT_THROW(subgroup_generated(q8, {8}), Error);
}

TEST(Subgroup, AffineHasOneNormalSubgroupOfOrderP) {
  for (std::int64_t p : {3, 5, 7}) {
    const auto g = build_group(GroupSpec::affine(p));
    std::set<std::vector<Element>> order_p;
    for (Element x = 0; x < g->order(); ++x) {
      const auto h = subgroup_generated(g, {x});
      if (static_cast<std::int64_t>(h.order()) == p) order_p.insert(h.elements());
    }
    ASSERT_EQ(order_p.size(), 1u) << p;
    EXPECT_TRUE(Subgroup(g, *order_p.begin()).is_normal());
  }
}

TEST(Subgroup, NonNormalExample) {
  const auto d4 = build_group(GroupSpec::dihedral(4));
  EXPECT_FALSE(subgroup_generated(d4, {4}).is_normal());
  EXPECT_TRUE(subgroup_generated(d4, {1}).is_normal());
}

TEST(Filtration, Construction) {
  const auto q8 = build_group(GroupSpec::quaternion8());
  const auto f = make_filtration(q8, {whole_group(q8), center(q8), trivial_subgroup(q8)});
  EXPECT_EQ(f.length(), 3u);
  const auto g = make_filtration(q8, {whole_group(q8), center(q8)});
  EXPECT_EQ(g.length(), 3u);  // trivial subgroup appended
  const auto cp = build_group(GroupSpec::cyclic(5));
  EXPECT_EQ(make_filtration(cp, {whole_group(cp)}).length(), 2u);
  EXPECT_EQ(make_filtration(cp, {whole_group(cp), trivial_subgroup(cp)}).length(), 2u);
}

TEST(Filtration, Errors) {
  const auto q8 = build_group(GroupSpec::quaternion8());
  expect_kind(ErrorKind::bad_chain_start, [&] { make_filtration(q8, {center(q8), whole_group(q8)}); });
  expect_kind(ErrorKind::not_descending,
              [&] { make_filtration(q8, {whole_group(q8), center(q8), subgroup_generated(q8, {1})}); });
  expect_kind(ErrorKind::invalid_argument, [&] { make_filtration(q8, {}); });
  const auto f = make_filtration(q8, {whole_group(q8), center(q8)});
  expect_kind(ErrorKind::index_out_of_range, [&] { f.at(3); });
}

TEST(Filtration, NonNormalStepsAreAccepted) {
  const auto d4 = build_group(GroupSpec::dihedral(4));
  const auto f = make_filtration(d4, {whole_group(d4), subgroup_generated(d4, {2, 4}), subgroup_generated(d4, {4})});
  EXPECT_FALSE(f.at(2).is_normal());
  EXPECT_EQ(f.index(2), 4);
}

TEST(Filtration, LagrangeIndices) {
  for (const auto& spec : sample_specs()) {
    const auto g = build_group(spec);
    std::vector<Subgroup> chain{whole_group(g)};
    // descending chain through successive cyclic subgroups
    for (Element x = g->order() - 1; x > 0; --x) {
      auto h = subgroup_generated(g, {x});
      if (h.is_subset_of(chain.back()) && h.order() < chain.back().order()) chain.push_back(h);
    }
    const auto f = make_filtration(g, chain);
    for (std::size_t i = 0; i < f.length(); ++i)
      EXPECT_EQ(static_cast<std::size_t>(f.index(i)) * f.at(i).order(), g->order());
  }
}

TEST(PowerMap, Examples) {
  const auto c4 = build_group(GroupSpec::cyclic(4));
  EXPECT_EQ(c4->element_order(power_map(*c4, 1, 2)), 2);
  const auto q8 = build_group(GroupSpec::quaternion8());
  for (std::int64_t k : {-7, -1, 0, 3, 100}) EXPECT_EQ(power_map(*q8, q8->identity(), k), q8->identity());
  EXPECT_EQ(power_map(*q8, 1, -1), 5u);  // i^{-1} = -i
  EXPECT_EQ(power_map(*q8, 1, 2), 4u);   // i^2 = -1
}

TEST(PowerMap, AgreesWithRepeatedMultiplication) {
  std::mt19937_64 rng(7);
  for (const auto& spec : sample_specs()) {
    const auto g = build_group(spec);
    for (int t = 0; t < 50; ++t) {
      const auto x = static_cast<Element>(rng() % g->order());
      const auto k = static_cast<std::int64_t>(rng() % 41) - 20;
      Element expect = g->identity();
      const Element step = k >= 0 ? x : g->inverse(x);
      for (std::int64_t i = 0; i < (k >= 0 ? k : -k); ++i) expect = g->mul(expect, step);
      EXPECT_EQ(power_map(*g, x, k), expect);
    }
  }
}

TEST(SharedGroup, ReusesEqualSpecs) {
  EXPECT_EQ(shared_group(GroupSpec::affine(5)).get(), shared_group(GroupSpec::affine(5)).get());
  EXPECT_NE(shared_group(GroupSpec::affine(5)).get(), build_group(GroupSpec::affine(5)).get());
}
