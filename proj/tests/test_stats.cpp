#include <doctest.h>

#include <cmath>
#include <vector>

#include "ccov/error.hpp"
#include "ccov/rng.hpp"
#include "ccov/stats.hpp"
#include "oracles.hpp"

using namespace ccov;

TEST_CASE("paired_t_test: hand case d = (1,2,3)") {
  const std::vector<Real> a{1, 2, 3};
  const std::vector<Real> b{0, 0, 0};
  const TTestResult res = paired_t_test(a, b);
  CHECK(res.df == 2);
  CHECK(res.statistic == doctest::Approx(3.4641016151377544).epsilon(1e-12));
  CHECK(res.p_value == doctest::Approx(0.0742).epsilon(2e-3));
  CHECK(res.p_value == doctest::Approx(oracle::t_test_p_value(res.statistic, res.df)).epsilon(1e-9));
  CHECK(!res.degenerate);
}

TEST_CASE("paired_t_test: degenerate all-zero differences report 0 & 0") {
  const std::vector<Real> a{0.5, 0.25, 1.0, 0.125};
  const TTestResult res = paired_t_test(a, a);
  CHECK(res.degenerate);
  CHECK(res.statistic == 0.0);
  CHECK(res.p_value == 0.0);
}

TEST_CASE("paired_t_test: swapping the arguments negates the statistic") {
  const std::vector<Real> a{1.2, 0.4, 0.9, 2.2, 1.7};
  const std::vector<Real> b{0.8, 0.5, 1.4, 1.1, 0.6};
  const TTestResult ab = paired_t_test(a, b);
  const TTestResult ba = paired_t_test(b, a);
  CHECK(ab.statistic == doctest::Approx(-ba.statistic).epsilon(1e-12));
  CHECK(ab.p_value == doctest::Approx(ba.p_value).epsilon(1e-12));
}

TEST_CASE("paired_t_test: shift and scale invariance") {
  SplitMix64 rng(8);
  std::vector<Real> a, b, a_shift, b_shift, a_scaled, b_scaled;
  for (int i = 0; i < 12; ++i) {
    a.push_back(rng.next_gaussian());
    b.push_back(rng.next_gaussian());
    a_shift.push_back(a.back() + 5.25);
    b_shift.push_back(b.back() + 5.25);
    a_scaled.push_back(a.back() * 3.5);
    b_scaled.push_back(b.back() * 3.5);
  }
  CHECK(paired_t_test(a, b).statistic ==
        doctest::Approx(paired_t_test(a_shift, b_shift).statistic).epsilon(1e-9));
  CHECK(paired_t_test(a, b).statistic ==
        doctest::Approx(paired_t_test(a_scaled, b_scaled).statistic).epsilon(1e-9));
}

TEST_CASE("paired_t_test: p-values match the quadrature oracle") {
  SplitMix64 rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + rng.next_below(39);
    std::vector<Real> a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = rng.next_gaussian() + 0.3;
      b[i] = rng.next_gaussian();
    }
    const TTestResult res = paired_t_test(a, b);
    if (res.degenerate) continue;
    const Real expect = oracle::t_test_p_value(res.statistic, res.df);
    CHECK(std::abs(res.p_value - expect) < 1e-6);
  }
}

TEST_CASE("paired_t_test: errors") {
  CHECK_THROWS_WITH_AS(paired_t_test(std::vector<Real>{1, 2}, std::vector<Real>{1}),
                       doctest::Contains("LengthMismatch"), Error);
  CHECK_THROWS_WITH_AS(paired_t_test(std::vector<Real>{1}, std::vector<Real>{2}),
                       doctest::Contains("TooFewSamples"), Error);
}

TEST_CASE("regularized_incomplete_beta: boundary and known values") {
  CHECK(regularized_incomplete_beta(0.0, 2.0, 3.0) == 0.0);
  CHECK(regularized_incomplete_beta(1.0, 2.0, 3.0) == 1.0);
  CHECK(regularized_incomplete_beta(0.5, 1.0, 1.0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(regularized_incomplete_beta(0.3, 2.0, 3.0) == doctest::Approx(0.3483).epsilon(2e-4));
  CHECK(regularized_incomplete_beta(0.3, 2.0, 3.0) ==
        doctest::Approx(oracle::incomplete_beta_quadrature(0.3, 2.0, 3.0)).epsilon(1e-12));
  CHECK_THROWS_WITH_AS(regularized_incomplete_beta(-0.1, 1, 1), doctest::Contains("DomainError"),
                       Error);
  CHECK_THROWS_WITH_AS(regularized_incomplete_beta(0.5, 0, 1), doctest::Contains("DomainError"),
                       Error);
}

TEST_CASE("regularized_incomplete_beta: quadrature oracle on random triples") {
  SplitMix64 rng(4242);
  for (int trial = 0; trial < 100; ++trial) {
    const Real x = 0.001 + 0.998 * rng.next_double();
    const Real a = 0.5 + 11.5 * rng.next_double();
    const Real b = 0.5 + 11.5 * rng.next_double();
    const Real got = regularized_incomplete_beta(x, a, b);
    const Real expect = oracle::incomplete_beta_quadrature(x, a, b);
    CHECK(std::abs(got - expect) < 1e-10);
  }
}

TEST_CASE("regularized_incomplete_beta: symmetry and monotonicity") {
  SplitMix64 rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    const Real a = 0.5 + 9.5 * rng.next_double();
    const Real b = 0.5 + 9.5 * rng.next_double();
    const Real x = rng.next_double();
    CHECK(std::abs(regularized_incomplete_beta(x, a, b) +
                   regularized_incomplete_beta(1.0 - x, b, a) - 1.0) < 1e-10);
  }
  Real prev = 0.0;
  for (Real x = 0.0; x <= 1.0000001; x += 0.02) {
    const Real v = regularized_incomplete_beta(std::min(x, 1.0), 2.5, 1.5);
    CHECK(v >= prev - 1e-12);
    prev = v;
  }
}

TEST_CASE("linear_regression: exact fit, constant ys, oracle agreement") {
  std::vector<Real> xs{1, 2, 3, 4}, ys{3, 5, 7, 9};  // y = 2x + 1
  const RegressionResult fit = linear_regression(xs, ys);
  CHECK(fit.slope == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(fit.intercept == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));

  const RegressionResult flat = linear_regression(xs, std::vector<Real>{4, 4, 4, 4});
  CHECK(flat.r_squared == 0.0);
  CHECK(flat.slope == doctest::Approx(0.0));

  SplitMix64 rng(12);
  std::vector<Real> rx, ry;
  for (int i = 0; i < 20; ++i) {
    rx.push_back(rng.next_gaussian() * 2.0);
    ry.push_back(1.5 * rx.back() - 0.75 + rng.next_gaussian());
  }
  const RegressionResult got = linear_regression(rx, ry);
  Real slope, intercept;
  oracle::normal_equation_fit(rx, ry, slope, intercept);
  CHECK(std::abs(got.slope - slope) < 1e-9);
  CHECK(std::abs(got.intercept - intercept) < 1e-9);

  // R^2 equals the squared Pearson correlation
  Real mx = 0, my = 0;
  for (std::size_t i = 0; i < rx.size(); ++i) { mx += rx[i]; my += ry[i]; }
  mx /= static_cast<Real>(rx.size());
  my /= static_cast<Real>(ry.size());
  Real sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  CHECK(got.r_squared == doctest::Approx(sxy * sxy / (sxx * syy)).epsilon(1e-9));
}

TEST_CASE("linear_regression: errors") {
  CHECK_THROWS_WITH_AS(linear_regression(std::vector<Real>{1, 1, 1}, std::vector<Real>{1, 2, 3}),
                       doctest::Contains("DegenerateX"), Error);
  CHECK_THROWS_WITH_AS(linear_regression(std::vector<Real>{1, 2}, std::vector<Real>{1}),
                       doctest::Contains("LengthMismatch"), Error);
  CHECK_THROWS_WITH_AS(linear_regression(std::vector<Real>{1}, std::vector<Real>{1}),
                       doctest::Contains("TooFewSamples"), Error);
}
