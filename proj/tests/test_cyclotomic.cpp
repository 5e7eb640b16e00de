#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "oracles.hpp"
#include "wdcond/cyclotomic.hpp"

using namespace wdcond;

namespace {

CycloNum z(int n, std::int64_t k) { return CycloNum::zeta(n, k); }

CycloNum random_element(std::mt19937_64& rng, int n) {
  std::vector<Rational> raw(static_cast<std::size_t>(n));
  for (auto& c : raw) c = Rational(static_cast<std::int64_t>(rng() % 11) - 5, static_cast<std::int64_t>(1 + rng() % 4));
  return CycloNum::from_exponents(n, raw);
}

}  // namespace

TEST(Cyclo, MinimalPolynomialIdentities) {
  EXPECT_EQ(z(3, 1) + z(3, 2), CycloNum(-1));
  EXPECT_EQ(z(4, 1) * z(4, 1), CycloNum(-1));
  EXPECT_EQ(z(5, 1) + z(5, 2) + z(5, 3) + z(5, 4), CycloNum(-1));
}

TEST(Cyclo, ProductAgainstExpansionOracle) {
  const CycloNum x = (CycloNum(1) + z(5, 1)) * (CycloNum(1) + z(5, 4));
  // expansion: 1 + z + z^4 + z^5 = 2 + z + z^4
  const CycloNum expanded = CycloNum::from_exponents(5, {Rational(2), Rational(1), Rational(0), Rational(0), Rational(1)});
  EXPECT_EQ(x, expanded);
  EXPECT_TRUE(oracle::close(oracle::embed(x), oracle::embed(CycloNum(2)) + oracle::embed(z(5, 1)) + oracle::embed(z(5, 4))));
  // canonical: the power basis has length phi(5) = 4
  EXPECT_EQ(x.coeffs().size(), 4u);
}

TEST(Cyclo, GaloisAction) {
  EXPECT_EQ(z(5, 1).galois(2), z(5, 2));
  for (std::int64_t k : {1, 2, 3, 4}) EXPECT_EQ(CycloNum::rational(5, Rational(3, 7)).galois(k), CycloNum(Rational(3, 7)));
  EXPECT_EQ((z(3, 1) + z(3, 2)).galois(2), CycloNum(-1));
  EXPECT_THROW(z(6, 1).galois(3), Error);
  EXPECT_THROW(z(4, 1).galois(2), Error);
}

TEST(Cyclo, IsRational) {
  EXPECT_TRUE((z(3, 1) + z(3, 2)).is_rational());
  EXPECT_FALSE(z(8, 1).is_rational());
  EXPECT_TRUE((z(5, 1) + z(5, 2) + z(5, 3) + z(5, 4)).is_rational());
  EXPECT_TRUE((z(8, 1) + z(8, 7) - z(8, 1) - z(8, 7)).is_rational());
}

TEST(Cyclo, FieldAxiomsOnRandomTriples) {
  std::mt19937_64 rng(11);
  for (int n : {1, 3, 4, 5, 8, 9, 12}) {
    for (int t = 0; t < 20; ++t) {
      const CycloNum a = random_element(rng, n), b = random_element(rng, n), c = random_element(rng, n);
      EXPECT_EQ((a + b) + c, a + (b + c));
      EXPECT_EQ((a * b) * c, a * (b * c));
      EXPECT_EQ(a * (b + c), a * b + a * c);
      EXPECT_EQ(a + b, b + a);
      EXPECT_EQ(a * b, b * a);
      EXPECT_EQ(a - a, CycloNum(0));
      if (!a.is_zero()) EXPECT_EQ(a * a.inverse(), CycloNum(1));
      EXPECT_TRUE(oracle::close(oracle::embed(a * b), oracle::embed(a) * oracle::embed(b), 1e-6L));
      EXPECT_TRUE(oracle::close(oracle::embed(a + b), oracle::embed(a) + oracle::embed(b), 1e-6L));
    }
  }
}

TEST(Cyclo, GaloisIsAFieldAutomorphism) {
  std::mt19937_64 rng(12);
  for (int n : {5, 7, 8, 9, 12}) {
    for (std::int64_t k = 1; k < n; ++k) {
      if (std::gcd(k, static_cast<std::int64_t>(n)) != 1) continue;
      const CycloNum a = random_element(rng, n), b = random_element(rng, n);
      EXPECT_EQ((a + b).galois(k), a.galois(k) + b.galois(k));
      EXPECT_EQ((a * b).galois(k), a.galois(k) * b.galois(k));
    }
  }
}

TEST(Cyclo, TraceOfPrimitiveRootIsMinusOne) {
  for (int p : {2, 3, 5, 7, 11, 13}) {
    CycloNum trace(0);
    for (std::int64_t k = 1; k < p; ++k) trace += z(p, 1).galois(k);
    EXPECT_EQ(trace, CycloNum(-1)) << p;
  }
}

TEST(Cyclo, MixedConductorsPromoteToLcm) {
  const CycloNum s = z(3, 1) + z(4, 1);
  EXPECT_EQ(s.conductor(), 12);
  EXPECT_TRUE(oracle::close(oracle::embed(s), oracle::embed(z(3, 1)) + oracle::embed(z(4, 1))));
  EXPECT_EQ(z(6, 2), z(3, 1));
}

TEST(Cyclo, NormAndConjugation) {
  EXPECT_EQ((CycloNum(1) - z(5, 1)).norm(), Rational(5));
  EXPECT_EQ(z(4, 1).conj(), z(4, 3));
  std::mt19937_64 rng(13);
  const CycloNum a = random_element(rng, 7);
  EXPECT_TRUE(oracle::close(oracle::embed(a.conj()), std::conj(oracle::embed(a)), 1e-6L));
}

TEST(Cyclo, Rendering) {
  EXPECT_EQ(CycloNum(-1).str(), "-1");
  EXPECT_EQ(CycloNum(0).str(), "0");
  EXPECT_NE(z(5, 2).str().find("z5"), std::string::npos);
}
