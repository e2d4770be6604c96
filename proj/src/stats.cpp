#include "ccov/stats.hpp"

#include <algorithm>
#include <cmath>

#include "ccov/error.hpp"

namespace ccov {

namespace {

// Modified Lentz evaluation of the continued fraction for I_x(a,b).
Real beta_continued_fraction(Real x, Real a, Real b) {
  constexpr Real tiny = 1e-300;
  constexpr Real eps = 1e-15;
  constexpr int max_iterations = 500;

  const Real qab = a + b;
  const Real qap = a + 1.0;
  const Real qam = a - 1.0;
  Real c = 1.0;
  Real d = 1.0 - qab * x / qap;
  if (std::abs(d) < tiny) d = tiny;
  d = 1.0 / d;
  Real h = d;
  for (int m = 1; m <= max_iterations; ++m) {
    const Real m_real = static_cast<Real>(m);
    const Real m2 = 2.0 * m_real;
    // even step
    Real aa = m_real * (b - m_real) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    h *= d * c;
    // odd step
    aa = -(a + m_real) * (qab + m_real) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const Real del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < eps) break;
  }
  return h;
}

}  // namespace

Real regularized_incomplete_beta(Real x, Real a, Real b) {
  if (!(x >= 0.0 && x <= 1.0) || !(a > 0.0) || !(b > 0.0))
    raise(Errc::domain_error, "incomplete beta needs x in [0,1] and a, b > 0");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;

  // The prefactor x^a (1-x)^b / (a B(a,b)) is symmetric under (x,a) <-> (1-x,b)
  // up to the leading 1/a vs 1/b, so one exp serves both branches.
  const Real front = std::exp(std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                              a * std::log(x) + b * std::log1p(-x));
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_continued_fraction(x, a, b) / a;
  return 1.0 - front * beta_continued_fraction(1.0 - x, b, a) / b;
}

TTestResult paired_t_test(std::span<const Real> a, std::span<const Real> b) {
  if (a.size() != b.size())
    raise(Errc::length_mismatch, "paired samples have sizes " + std::to_string(a.size()) +
                                     " and " + std::to_string(b.size()));
  const std::size_t n = a.size();
  if (n < 2) raise(Errc::too_few_samples, "paired t-test needs n >= 2");

  Real mean = 0.0;
  bool all_zero = true;
  for (std::size_t i = 0; i < n; ++i) {
    const Real d = a[i] - b[i];
    if (d != 0.0) all_zero = false;
    mean += d;
  }
  mean /= static_cast<Real>(n);

  TTestResult result;
  result.df = static_cast<int>(n) - 1;
  if (all_zero) {
    result.degenerate = true;  // reported as "0 & 0"
    return result;
  }

  Real ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Real d = (a[i] - b[i]) - mean;
    ss += d * d;
  }
  const Real stddev = std::sqrt(ss / static_cast<Real>(n - 1));
  result.statistic = mean / (stddev / std::sqrt(static_cast<Real>(n)));
  if (!std::isfinite(result.statistic)) {
    // constant nonzero differences: infinite evidence against zero mean
    result.p_value = 0.0;
    return result;
  }
  const Real df = static_cast<Real>(result.df);
  const Real x = df / (df + result.statistic * result.statistic);
  result.p_value = regularized_incomplete_beta(x, df / 2.0, 0.5);
  return result;
}

RegressionResult linear_regression(std::span<const Real> xs, std::span<const Real> ys) {
  if (xs.size() != ys.size())
    raise(Errc::length_mismatch, "regression inputs have sizes " + std::to_string(xs.size()) +
                                     " and " + std::to_string(ys.size()));
  const std::size_t n = xs.size();
  if (n < 2) raise(Errc::too_few_samples, "regression needs n >= 2");

  Real x_mean = 0.0, y_mean = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    x_mean += xs[i];
    y_mean += ys[i];
  }
  x_mean /= static_cast<Real>(n);
  y_mean /= static_cast<Real>(n);

  Real sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Real dx = xs[i] - x_mean;
    const Real dy = ys[i] - y_mean;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) raise(Errc::degenerate_x, "all x values are equal");

  RegressionResult result;
  result.slope = sxy / sxx;
  result.intercept = y_mean - result.slope * x_mean;
  if (syy == 0.0) {
    result.r_squared = 0.0;  // constant ys: R^2 defined as 0
    return result;
  }
  Real ss_res = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Real resid = ys[i] - (result.intercept + result.slope * xs[i]);
    ss_res += resid * resid;
  }
  result.r_squared = std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
  return result;
}

}  // namespace ccov
