#include <gtest/gtest.h>

#include <random>

#include "wdcond/global_conductor.hpp"

using namespace wdcond;

namespace {

template <class F>
ErrorKind kind_of(F f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::invalid_argument;
}

PrimeRecord summary(std::int64_t p, std::int64_t va, std::int64_t vb, std::int64_t da, std::int64_t db, std::int64_t dab) {
  return {p, PrimeSummary{va, vb, da, db, dab}};
}

FactoredInteger random_factored(std::mt19937_64& rng) {
  static const std::int64_t primes[] = {2, 3, 5, 7, 11};
  std::map<std::int64_t, std::int64_t> f;
  for (auto p : primes) f[p] = static_cast<std::int64_t>(rng() % 4);
  return FactoredInteger(f);
}

ModelPtr q8_integral() {
  const auto g = shared_group(GroupSpec::quaternion8());
  return make_model(make_filtration(g, {whole_group(g), whole_group(g), trivial_subgroup(g)}), 2);
}

}  // namespace

TEST(FactoredInteger, Basics) {
  const auto n = FactoredInteger::of(360);
  EXPECT_EQ(n.exponent(2), 3);
  EXPECT_EQ(n.exponent(3), 2);
  EXPECT_EQ(n.exponent(5), 1);
  EXPECT_EQ(n.exponent(7), 0);
  EXPECT_EQ(n.value(), BigInt(360));
  EXPECT_TRUE(FactoredInteger::of(1).is_one());
  EXPECT_EQ(FactoredInteger::prime_power(7, 0), FactoredInteger::of(1));
  EXPECT_EQ(FactoredInteger::of(12).str(), "2^2 * 3");
  EXPECT_THROW(FactoredInteger::of(0), Error);
  EXPECT_EQ(kind_of([] { FactoredInteger::of(4) / FactoredInteger::of(3); }), ErrorKind::inconsistent_input);
}

TEST(FactoredInteger, LatticeIdentities) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 200; ++t) {
    const auto a = random_factored(rng), b = random_factored(rng), c = random_factored(rng);
    EXPECT_EQ((a * b).value(), a.value() * b.value());
    EXPECT_EQ(gcd(a, b) * lcm(a, b), a * b);
    EXPECT_EQ(gcd(a, gcd(b, c)), gcd(gcd(a, b), c));
    EXPECT_TRUE(divides(gcd(a, b), a));
    EXPECT_TRUE(divides(a, a * b));
    EXPECT_EQ((a * b) / b, a);
    EXPECT_EQ(divides(a * b, a), b.is_one());
    for (std::int64_t p : {2, 3, 5, 7, 11}) {
      EXPECT_EQ(gcd(a, b).exponent(p), std::min(a.exponent(p), b.exponent(p)));
      EXPECT_EQ(a.pow(3).exponent(p), 3 * a.exponent(p));
    }
  }
}

TEST(DTerm, Examples) {
  EXPECT_TRUE(d_term(GlobalDatum{1, 1, {}}).is_one());
  EXPECT_TRUE(d_term(GlobalDatum{1, 1, {summary(5, 0, 0, 2, 2, 4)}}).is_one());
  EXPECT_EQ(d_term(GlobalDatum{1, 1, {summary(7, 2, 2, 1, 1, 2)}}), FactoredInteger::of(7));
  EXPECT_TRUE(d_term(GlobalDatum{1, 1, {summary(7, 1, 1, 1, 1, 3)}}).is_one());
  EXPECT_EQ(kind_of([] { d_term(GlobalDatum{1, 1, {summary(3, 2, 2, 2, 2, 1)}}); }), ErrorKind::negative_exponent);
  EXPECT_EQ(kind_of([] { d_term(GlobalDatum{1, 1, {summary(3, 2, 2, 1, 1, -1)}}); }), ErrorKind::input_error);
}

TEST(RankinSelberg, Examples) {
  EXPECT_TRUE(rankin_selberg_bound(GlobalDatum{2, 3, {summary(2, 0, 0, 4, 6, 24)}}).is_one());
  // A = B an elliptic curve with squarefree conductor 3 * 5 * 11
  GlobalDatum e{1, 1, {summary(3, 1, 1, 1, 1, 2), summary(5, 1, 1, 1, 1, 2), summary(11, 1, 1, 1, 1, 2)}};
  EXPECT_EQ(rankin_selberg_bound(e), FactoredInteger::of(165).pow(2));
  GlobalDatum self{1, 1, {summary(3, 1, 0, 1, 2, -1), summary(5, 1, 0, 1, 2, -1), summary(11, 1, 0, 1, 2, -1)}};
  EXPECT_EQ(self_tensor_bound(self), FactoredInteger::of(165).pow(2));
  EXPECT_TRUE(self_tensor_bound(GlobalDatum{3, 1, {}}).is_one());
  // additive reduction: v = 2 drops one power
  GlobalDatum additive{1, 1, {summary(7, 2, 0, 0, 2, -1)}};
  EXPECT_EQ(self_tensor_bound(additive), FactoredInteger::prime_power(7, 3));
}

TEST(RankinSelberg, BoundExponentFormula) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 200; ++t) {
    const std::int64_t da = 1 + static_cast<std::int64_t>(rng() % 3), db = 1 + static_cast<std::int64_t>(rng() % 3);
    const std::int64_t va = static_cast<std::int64_t>(rng() % 5), vb = static_cast<std::int64_t>(rng() % 5);
    const std::int64_t ga = static_cast<std::int64_t>(rng() % (2 * da + 1)), gb = static_cast<std::int64_t>(rng() % (2 * db + 1));
    const std::int64_t gab = std::min(ga * gb + static_cast<std::int64_t>(rng() % 3), 4 * da * db);
    const GlobalDatum d{da, db, {summary(13, va, vb, ga, gb, gab)}};
    const std::int64_t expect = 2 * db * va + 2 * da * vb - (va * vb > 1 ? gab - ga * gb : 0) - 2 * std::min(va, vb);
    if (expect < 0) {
      EXPECT_EQ(kind_of([&] { rankin_selberg_bound(d); }), ErrorKind::inconsistent_input);
    } else {
      EXPECT_EQ(rankin_selberg_bound(d).exponent(13), expect);
    }
  }
}

TEST(RankinSelberg, FullModeChecksEachPrime) {
  const auto m = q8_integral();
  const auto g = m->group();
  const auto chi2 = (*character_table(g))[4];
  const auto a = AbVarDatum::make(m, chi2, Character::zero(g));
  const auto b = AbVarDatum::make(m, Character::zero(g), Character::trivial(g));
  EXPECT_EQ(artin_conductor(a.rho()), Rational(4));
  GlobalDatum d{1, 1, {{2, PrimeLocal{a, b}}, summary(3, 1, 1, 1, 1, 2)}};
  const auto report = rankin_selberg_report(d);
  ASSERT_TRUE(report.all_pass());
  ASSERT_EQ(report.checks.size(), 2u);
  EXPECT_EQ(*report.checks[0].local_exponent, 8);
  EXPECT_EQ(report.checks[0].bound_exponent, 8);
  EXPECT_FALSE(report.checks[1].local_exponent.has_value());
  EXPECT_EQ(report.bound, FactoredInteger::prime_power(2, 8) * FactoredInteger::prime_power(3, 2));
  EXPECT_EQ(self_tensor_bound(d), FactoredInteger::prime_power(2, 7) * FactoredInteger::prime_power(3, 2));
}

TEST(RankinSelberg, InputErrors) {
  EXPECT_EQ(kind_of([] { rankin_selberg_bound(GlobalDatum{1, 1, {summary(3, 1, 1, 1, 1, 2), summary(3, 1, 1, 1, 1, 2)}}); }),
            ErrorKind::input_error);
  EXPECT_EQ(kind_of([] { rankin_selberg_bound(GlobalDatum{0, 1, {}}); }), ErrorKind::input_error);
  EXPECT_EQ(kind_of([] { rankin_selberg_bound(GlobalDatum{1, 1, {summary(3, 1, 1, 3, 1, 2)}}); }), ErrorKind::input_error);
  const auto g = shared_group(GroupSpec::quaternion8());
  const auto m = make_model(make_filtration(g, {whole_group(g), center(g), trivial_subgroup(g)}), 2);
  const auto half = AbVarDatum::make(m, (*character_table(g))[4], Character::zero(g));  // a = 5/2
  EXPECT_EQ(kind_of([&] { rankin_selberg_bound(GlobalDatum{1, 1, {{2, PrimeLocal{half, half}}}}); }),
            ErrorKind::inconsistent_input);
  const auto wrong_dim = AbVarDatum::make(m, Character::zero(g), Character::trivial(g).multiple(2));
  EXPECT_EQ(kind_of([&] { rankin_selberg_bound(GlobalDatum{1, 1, {{2, PrimeLocal{wrong_dim, wrong_dim}}}}); }),
            ErrorKind::inconsistent_input);
}
