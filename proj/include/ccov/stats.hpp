#pragma once

#include <span>

#include "ccov/types.hpp"

namespace ccov {

struct TTestResult {
  Real statistic = 0.0;
  Real p_value = 0.0;
  int df = 0;
  bool degenerate = false;  // every pairwise difference was exactly zero
};

struct RegressionResult {
  Real slope = 0.0;
  Real intercept = 0.0;
  Real r_squared = 0.0;
};

/// Two-sided paired t-test of a - b against zero mean, sample stddev with
/// n-1 denominator, df = n-1. All-zero differences are reported as the
/// degenerate (0, 0) result rather than an error. If the differences are a
/// nonzero constant the statistic is +/-infinity and p is 0.
TTestResult paired_t_test(std::span<const Real> a, std::span<const Real> b);

/// I_x(a, b) by Lentz's continued fraction, switching to the symmetric form
/// 1 - I_{1-x}(b, a) when x > (a+1)/(a+b+2). Absolute error below 1e-10.
Real regularized_incomplete_beta(Real x, Real a, Real b);

/// Ordinary least squares of ys on xs. R^2 = 1 - SS_res/SS_tot, defined as 0
/// when ys is constant.
RegressionResult linear_regression(std::span<const Real> xs, std::span<const Real> ys);

}  // namespace ccov
