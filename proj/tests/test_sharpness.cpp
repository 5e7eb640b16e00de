#include <gtest/gtest.h>

#include <chrono>

#include "oracles.hpp"
#include "wdcond/sharpness.hpp"

using namespace wdcond;

namespace {

template <class F>
ErrorKind kind_of(F f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::input_error;
}

const std::int64_t kPrimes[] = {3, 5, 7, 11, 13};

}  // namespace

TEST(FamilyParams, Validation) {
  EXPECT_EQ(validate_params(3, 2).a, 2);
  EXPECT_EQ(kind_of([] { validate_params(5, 7); }), ErrorKind::invalid_unit);
  EXPECT_EQ(kind_of([] { validate_params(3, 3); }), ErrorKind::invalid_unit);
  EXPECT_EQ(kind_of([] { validate_params(3, 8); }), ErrorKind::invalid_unit);
  EXPECT_EQ(kind_of([] { validate_params(9, 2); }), ErrorKind::not_prime);
  EXPECT_EQ(kind_of([] { validate_params(2, 3); }), ErrorKind::invalid_argument);
  for (auto p : kPrimes) EXPECT_EQ(smallest_valid_a(p), 2);
  // brute force: a is valid iff a^(p-1) != 1 mod p^2 and p does not divide a
  for (auto p : kPrimes)
    for (std::int64_t a = -30; a <= 30; ++a) {
      BigInt x = 1;
      for (std::int64_t k = 0; k < p - 1; ++k) x = (x * a) % (p * p);
      const bool valid = a % p != 0 && ((x % (p * p)) + p * p) % (p * p) != 1;
      EXPECT_EQ(is_valid_unit(p, a), valid) << p << " " << a;
    }
}

TEST(Discriminant, ClosedFormOracle) {
  EXPECT_EQ(discriminant(3, 2), BigInt(-108));
  for (std::int64_t n : {2, 3, 4, 5, 7, 11, 13})
    for (std::int64_t alpha : {1, 2, -3, 5, 12, 13, 49})
      EXPECT_EQ(discriminant(n, alpha), oracle::disc_closed_form(n, alpha)) << n << " " << alpha;
}

TEST(Discriminant, Valuations) {
  EXPECT_EQ(disc_valuation(3, 2), 3);
  EXPECT_EQ(disc_valuation(3, 3), 5);
  EXPECT_EQ(disc_valuation(5, 5), 9);
  for (auto p : kPrimes)
    for (std::int64_t alpha : {std::int64_t{2}, p, p * p, 3 * p, p + 1}) {
      EXPECT_EQ(disc_valuation(p, alpha), oracle::vp(oracle::disc_closed_form(p, alpha), p));
      EXPECT_EQ(disc_valuation(p, alpha), p + (p - 1) * oracle::vp(BigInt(alpha), p));
    }
}

TEST(SwanJacobian, Examples) {
  EXPECT_EQ(swan_jacobian(validate_params(3, 2), 2), 1);
  EXPECT_EQ(swan_jacobian(validate_params(3, 2), 3), 3);
  EXPECT_EQ(swan_jacobian(validate_params(11, 2), 11), 11);
  EXPECT_THROW(swan_jacobian(validate_params(3, 2), 5), Error);
}

TEST(FiltrationModel, SwanMatchesDiscriminant) {
  for (auto p : kPrimes) {
    const auto params = validate_params(p, smallest_valid_a(p));
    for (std::int64_t alpha : {params.a, p}) {
      const auto m = filtration_model_single(params, alpha);
      EXPECT_EQ(m.rep.dim(), p - 1);
      EXPECT_TRUE(m.model->filtration().at(1).is_normal());
      const WDRep rho(m.model, {{m.rep, 1}});
      EXPECT_EQ(swan_conductor(rho), Rational(swan_jacobian(params, alpha)));
      EXPECT_EQ(artin_conductor(rho), Rational(p - 1 + swan_jacobian(params, alpha)));
      EXPECT_EQ(degree(rho), 0);
    }
  }
}

TEST(BreakRep, SlopesAndProducts) {
  BreakRep x(5, 2), y(5, 2);
  x.set_line_break({1, 0}, Rational(1, 4));
  y.set_line_break({0, 1}, Rational(5, 4));
  x.add({2, 0});
  x.add({0, 0});
  y.add({0, 3});
  EXPECT_EQ(x.break_of({3, 0}), Rational(1, 4));
  EXPECT_EQ(x.trivial_count(), 1);
  const auto t = tensor(x, y);
  EXPECT_EQ(t.dim(), 2);
  EXPECT_EQ(swan_break(t), Rational(5, 4) + Rational(5, 4));
  EXPECT_THROW(x.add({0, 1}), Error);
  EXPECT_THROW(x.set_line_break({1, 1}, Rational(0)), Error);
  BreakRep u(3, 2), v(3, 2);
  u.set_line_break({1, 0}, Rational(1));
  v.set_line_break({0, 1}, Rational(1));
  u.add({1, 0});
  v.add({0, 1});
  EXPECT_EQ(kind_of([&] { tensor(u, v); }), ErrorKind::precondition);
  EXPECT_THROW(BreakRep(3, 3), Error);
}

TEST(JointModel, IndividualSwanConductors) {
  for (auto p : kPrimes) {
    const auto j = joint_break_model(validate_params(p, 2));
    EXPECT_EQ(swan_break(j.ja), Rational(1));
    EXPECT_EQ(swan_break(j.jp), Rational(p));
    const auto prod = tensor(j.ja, j.jp);
    EXPECT_EQ(prod.dim(), (p - 1) * (p - 1));
    EXPECT_EQ(prod.trivial_count(), 0);
    EXPECT_EQ(swan_break(prod), Rational(p * (p - 1)));
  }
}

TEST(Sharpness, AllFivePrimes) {
  const auto start = std::chrono::steady_clock::now();
  for (auto p : kPrimes) {
    const auto r = verify_sharpness({p, smallest_valid_a(p)});
    EXPECT_TRUE(r.equal) << "p = " << p << " first failure: " << (r.failures.empty() ? "" : r.failures.front());
    EXPECT_EQ(r.sw_a, 1);
    EXPECT_EQ(r.sw_p, p);
    EXPECT_EQ(r.sw_tensor, Rational(p * (p - 1)));
    EXPECT_EQ(r.a_tensor, Rational((2 * p - 1) * (p - 1)));
    EXPECT_EQ(r.thm35_rhs, r.sw_tensor);
    EXPECT_EQ(r.thm37_rhs, r.a_tensor);
  }
  EXPECT_EQ(verify_sharpness({3, 2}).a_tensor, Rational(10));
  EXPECT_LT(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(), 5.0);
}

TEST(Sharpness, OtherValidUnits) {
  for (std::int64_t a : {5, 7, -2}) {
    const auto r = verify_sharpness({3, a});
    EXPECT_TRUE(r.equal) << a;
  }
  EXPECT_EQ(kind_of([] { verify_sharpness({3, 8}); }), ErrorKind::invalid_unit);
}
